mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fiblab::cat::{grothendieck_cat, hom_tensor_check, tensor_functors, yoneda_check, Variance, YonedaInput, YonedaMode};
use fiblab::fib::{self, Mode, Side, Variant};
use fiblab::io::{space_to_json, sset_to_json};
use fiblab::oracle::{betti, contractible_evidence, Tier};
use fiblab::poset::{classify, factorize, MonotoneMap};
use fiblab::sspace::{diagonal, is_discrete, level_set, FinSimplicialSpace, SliceSide};
use fiblab::straighten::{fiber_equivalence_report, mapping_decomposition_check, straighten, straighten_left};
use fiblab::suite::{self, Seeds};
use fiblab::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use input::{base_dimension, build_map, decode, load, CategorySpec, FunctorSpec, MapSpec, SetSpec, SpaceSpec};
use report::Report;

#[derive(Parser)]
#[command(name = "fiblab", version, about = "Exact and bounded checks on finite simplicial spaces and categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON file, inline JSON, or a standard object name such as F(2).
    #[arg(long)]
    input: Option<String>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Seed for randomized corpora; echoed in the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Bound for Kan and homology evidence.
    #[arg(long, default_value_t = 2)]
    bound: usize,
    /// Highest level inspected; defaults to one past the top cell.
    #[arg(long)]
    levels: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Bounded,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Exact => Mode::ExactDiscrete,
            ModeArg::Bounded => Mode::BoundedEvidence,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Zeroth,
    Adjacent,
}

#[derive(Clone, Copy, ValueEnum)]
enum SliceArg {
    Under,
    Over,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum YonedaArg {
    HomFunctor,
    TensorFunctor,
    HomFibered,
    TensorFibered,
}

#[derive(Subcommand)]
enum Command {
    /// Split a monotone map into its right convex surjection and injection.
    Factorize {
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether a monotone map is a right convex surjection or injection.
    Classify {
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Build an object and print its presentation.
    Build(Common),
    /// Left or right fibration check of a map.
    CheckFibration {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "zeroth")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Segal condition for a space.
    Segal {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Under- or over-space at a vertex.
    Slice {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "under")]
        side: SliceArg,
        #[arg(long)]
        vertex: String,
    },
    /// Straighten a fibration over F(n) into a chain of fibers.
    Straighten {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Compare the fiber over every simplex of F(n) with the fiber over its last vertex.
    Fibers(Common),
    /// One of the four Yoneda bijections at every object.
    Yoneda {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: YonedaArg,
        /// Restrict to one object.
        #[arg(long)]
        object: Option<String>,
    },
    /// Tensor product of a presheaf and a functor, with the hom-tensor adjunction.
    Tensor(Common),
    /// Cofinality evidence for a map of spaces.
    TheoremA(Common),
    /// Search the cocone space of a diagram for an initial vertex.
    Colimit(Common),
    /// Both sides of the restriction of maps over F(n) to chains of fibers.
    DecomposeMap {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        l_max: usize,
    },
    /// Rational Betti numbers and contractibility evidence.
    Homology(Common),
    /// Rerun the full acceptance battery.
    ReportSuite {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated row numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("FIBLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Factorize { json, .. } | Command::Classify { json, .. } | Command::ReportSuite { json, .. } => *json,
        Command::Build(c) | Command::Fibers(c) | Command::Tensor(c) | Command::TheoremA(c) | Command::Colimit(c) | Command::Homology(c) => c.json,
        Command::CheckFibration { common, .. }
        | Command::Segal { common, .. }
        | Command::Slice { common, .. }
        | Command::Straighten { common, .. }
        | Command::Yoneda { common, .. }
        | Command::DecomposeMap { common, .. } => common.json,
    };
    match execute(cli.command) {
        Ok(report) => {
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(report.render(json).as_bytes());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn required(c: &Common) -> Result<Value> {
    load(c.input.as_deref().ok_or_else(|| Error::Parse("--input is required".into()))?)
}

fn map_input(c: &Common) -> Result<MapSpec> {
    decode(&required(c)?, "map")
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Factorize { map, .. } => {
            let f: MonotoneMap = decode(&load(&map)?, "monotone map")?;
            let (p, i) = factorize(&f);
            let mut r = Report::new("factorize", Tier::Exact);
            r.line(format!("f   = {f}"));
            r.line(format!("p_f = {p}"));
            r.line(format!("i_f = {i}"));
            r.body(json!({ "map": f, "p": p, "i": i }));
            Ok(r)
        }
        Command::Classify { map, .. } => {
            let f: MonotoneMap = decode(&load(&map)?, "monotone map")?;
            let c = classify(&f);
            let mut r = Report::new("classify", Tier::Exact);
            r.line(format!("{f}: right convex surjection {}, right convex injection {}", c.is_right_convex_surjection, c.is_right_convex_injection));
            r.body(json!({ "map": f, "classification": c }));
            Ok(r)
        }
        Command::Build(c) => build(&c),
        Command::CheckFibration { common, side, variant, mode } => {
            let spec = map_input(&common)?;
            let levels = common.levels.unwrap_or(3);
            let p = build_map(&spec, levels, common.bound)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let variant = match variant {
                VariantArg::Zeroth => Variant::Zeroth,
                VariantArg::Adjacent => Variant::Adjacent,
            };
            let levels = common.levels.unwrap_or_else(|| fib::default_levels(&p));
            let rep = fib::fibration_check(&p, side, variant, mode.mode(), levels, common.bound)?;
            let mut r = Report::new("check-fibration", tier(mode.mode()));
            r.fibration(&rep, common.bound);
            let first_bad = rep.per_level.iter().find(|row| !row.pass);
            if let (Mode::ExactDiscrete, Some(row)) = (mode.mode(), first_bad) {
                let sq = fib::discrete_square(&p, row.level, side, variant);
                let (y, x) = (&p.source, &p.target);
                let mut lhs: Vec<String> = sq.lhs.iter().map(|s| fib::label(y, s)).collect();
                let mut rhs: Vec<String> = sq.rhs.iter().map(|(a, b)| format!("({},{})", fib::label(y, a), fib::label(x, b))).collect();
                lhs.sort();
                rhs.sort();
                r.line(format!("level {} source simplices: {}", row.level, lhs.join(" ")));
                r.line(format!("level {} pullback pairs:   {}", row.level, rhs.join(" ")));
                if let Value::Object(m) = &mut r.report {
                    m.insert("square".into(), json!({ "level": row.level, "lhs": lhs, "rhs": rhs }));
                }
            }
            r.seed = common.seed;
            Ok(r)
        }
        Command::Segal { common, mode } => {
            let x: SpaceSpec = decode(&required(&common)?, "space")?;
            let x = x.build()?;
            let levels = common.levels.unwrap_or(3);
            let rep = fib::segal_check(&x, mode.mode(), levels, common.bound)?;
            let mut r = Report::new("segal", tier(mode.mode()));
            r.fibration(&rep, common.bound);
            r.seed = common.seed;
            Ok(r)
        }
        Command::Slice { common, side, vertex } => {
            let w: SpaceSpec = decode(&required(&common)?, "space")?;
            let w = w.build()?;
            let v = fiblab::io::find_vertex(&w, &vertex)?;
            let levels = common.levels.unwrap_or(3);
            let l = if is_discrete(&w) { 0 } else { common.bound + 1 };
            let side = match side {
                SliceArg::Under => SliceSide::Under,
                SliceArg::Over => SliceSide::Over,
            };
            let (real, proj) = fib::slice_space(&w, v, side, levels, l)?;
            let t = if is_discrete(&w) { Tier::Exact } else { Tier::Bounded };
            let mut r = Report::new("slice", t);
            let top = fib::level_cap(&proj, levels);
            let sizes: Vec<usize> = (0..=top).map(|m| level_set(&real.space, m).len()).collect();
            r.line(format!("levels 0..={top}: {sizes:?} simplices"));
            if !real.within_range() {
                r.warn(format!("the slice is only known through level {top}"));
            }
            r.body(json!({ "level_sizes": sizes, "space": space_to_json(&real.space, top) }));
            r.seed = common.seed;
            Ok(r)
        }
        Command::Straighten { common, side } => {
            let spec = map_input(&common)?;
            let p = build_map(&spec, 3, common.bound)?;
            let n = base_dimension(&p)?;
            let st = match side {
                SideArg::Right => straighten(&p, n)?,
                SideArg::Left => straighten_left(&p, n)?,
            };
            let s = st.summary();
            let mut r = Report::new("straighten", Tier::Exact);
            r.line(format!("chain of fibers R/0…i for i = 0..={n}: {:?}", s.chain));
            r.line(format!(
                "functorial {}, identity on fibers {}, comparison bijective {}, commutes {}",
                s.checks.functorial, s.checks.identity_on_fibers, s.checks.comparison_bijective, s.checks.commutes
            ));
            r.pass = s.checks.all();
            r.body(serde_json::to_value(&s).expect("plain data"));
            r.seed = common.seed;
            Ok(r)
        }
        Command::Fibers(common) => {
            let spec = map_input(&common)?;
            let p = build_map(&spec, 3, common.bound)?;
            let n = base_dimension(&p)?;
            let rep = fiber_equivalence_report(&p, n, common.levels.unwrap_or(n))?;
            let t = if rep.rows.iter().all(|row| row.tier == Tier::Exact) { Tier::Exact } else { Tier::Bounded };
            let mut r = Report::new("fibers", t);
            for row in &rep.rows {
                r.line(format!("{:>8}: fiber {} vs end fiber {} [{}] {:?}", row.simplex, row.fiber, row.end_fiber, mark(row.equivalent), row.tier));
            }
            r.pass = rep.all_equivalent;
            r.body(serde_json::to_value(&rep).expect("plain data"));
            r.seed = common.seed;
            Ok(r)
        }
        Command::Yoneda { common, mode, object } => yoneda(&common, mode, object.as_deref()),
        Command::Tensor(common) => tensor(&common),
        Command::TheoremA(common) => {
            let spec = map_input(&common)?;
            let levels = common.levels.unwrap_or(2);
            let p = build_map(&spec, levels, common.bound)?;
            let rep = fib::cofinal_evidence(&p, levels, common.bound)?;
            let mut r = Report::new("theorem-a", rep.tier);
            for e in &rep.per_vertex {
                r.line(format!("vertex {}: {} cells, contractible {} ({:?}: {})", e.vertex, e.fiber_cells, e.verdict.value, e.verdict.tier, e.verdict.reason));
            }
            r.line(format!("cofinal: {}", rep.cofinal));
            if rep.tier == Tier::Bounded {
                r.warn(format!("contractibility is checked through degree {}", common.bound));
            }
            r.pass = rep.cofinal;
            r.body(serde_json::to_value(&rep).expect("plain data"));
            r.seed = common.seed;
            Ok(r)
        }
        Command::Colimit(common) => {
            let spec = map_input(&common)?;
            let levels = common.levels.unwrap_or(3);
            let p = build_map(&spec, levels, common.bound)?;
            let rep = fib::colimit_evidence(&p, levels, common.bound + 1, common.bound)?;
            let mut r = Report::new("colimit", rep.tier);
            match (&rep.vertex, &rep.cocone) {
                (Some(v), Some(c)) => r.line(format!("colimit at {v} via cocone {c} ({} candidates)", rep.candidates)),
                _ => r.line(format!("no initial cocone among {} candidates", rep.candidates)),
            }
            if rep.tier == Tier::Bounded {
                r.warn(format!("initiality is checked with Kan bound {}", common.bound));
            }
            r.pass = rep.has_colimit;
            r.body(serde_json::to_value(&rep).expect("plain data"));
            r.seed = common.seed;
            Ok(r)
        }
        Command::DecomposeMap { common, l_max } => {
            #[derive(Deserialize)]
            struct Pair {
                r: MapSpec,
                w: MapSpec,
            }
            let pair: Pair = decode(&required(&common)?, "pair of fibrations")?;
            let rp = build_map(&pair.r, 3, common.bound)?;
            let wp = build_map(&pair.w, 3, common.bound)?;
            let n = base_dimension(&rp)?;
            let rep = mapping_decomposition_check(&rp, &wp, n, l_max)?;
            let mut r = Report::new("decompose-map", Tier::Exact);
            for row in &rep.per_level {
                r.line(format!("l = {}: maps over F({n}) {} vs fiberwise {} [{}]", row.l, row.lhs, row.rhs, mark(row.lhs == row.rhs)));
            }
            r.line(format!("maps of fiber chains: {}", rep.iterated));
            r.pass = rep.pass;
            r.body(serde_json::to_value(&rep).expect("plain data"));
            r.seed = common.seed;
            Ok(r)
        }
        Command::Homology(common) => homology(&common),
        Command::ReportSuite { seed, only, .. } => {
            let seeds = seed.map_or_else(Seeds::default, Seeds::uniform);
            if let Some(bad) = only.iter().find(|&&i| i == 0 || i > suite::NAMES.len()) {
                return Err(Error::Parse(format!("no suite row {bad}")));
            }
            let rep = suite::run(seeds, &only);
            let mut r = Report::new("report-suite", Tier::Exact);
            r.line(format!(
                "seeds: yoneda {}, under {}, presheaves {}, decomposition {}, posets {}, complexes {}",
                seeds.yoneda, seeds.under, seeds.presheaves, seeds.decomposition, seeds.posets, seeds.complexes
            ));
            for row in &rep.rows {
                r.line(format!("{:>2} {} {} [{:?}]: {}", row.index, if row.pass { "PASS" } else { "FAIL" }, row.name, row.tier, row.detail));
            }
            if rep.rows.iter().any(|row| row.tier == Tier::Bounded) {
                r.tier = Tier::Bounded;
            }
            r.pass = rep.pass;
            r.seed = seed;
            r.body(serde_json::to_value(&rep).expect("plain data"));
            Ok(r)
        }
    }
}

fn tier(mode: Mode) -> Tier {
    match mode {
        Mode::ExactDiscrete => Tier::Exact,
        Mode::BoundedEvidence => Tier::Bounded,
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn level_sizes(x: &FinSimplicialSpace, top: usize) -> Vec<usize> {
    (0..=top).map(|m| level_set(x, m).len()).collect()
}

fn build(c: &Common) -> Result<Report> {
    let v = required(c)?;
    let mut r = Report::new("build", Tier::Exact);
    r.seed = c.seed;
    // simplicial sets first, so that delta(2) is not read as a discrete space
    if let Ok(spec) = decode::<SetSpec>(&v, "simplicial set") {
        if let Ok(s) = spec.build() {
            let counts: Vec<usize> = (0..=s.top_degree(0)).map(|d| s.cells().iter().filter(|cell| cell.deg[0] == d).count()).collect();
            r.line(format!("simplicial set: nondegenerate cells by dimension {counts:?}, exact {}", s.is_exact()));
            if !s.is_exact() {
                r.tier = Tier::Bounded;
                r.warn(format!("presented only through dimension {}", s.trusted(0).unwrap_or(0)));
            }
            r.body(serde_json::to_value(sset_to_json(&s)).expect("plain data"));
            return Ok(r);
        }
    }
    let x = decode::<SpaceSpec>(&v, "space")?.build()?;
    let top = c.levels.unwrap_or_else(|| x.trusted(0).unwrap_or(x.top_degree(0) + 1));
    let top = x.trusted(0).map_or(top, |t| t.min(top));
    let sizes = level_sizes(&x, top);
    r.line(format!("simplicial space: level sizes {sizes:?}, discrete {}", is_discrete(&x)));
    if !x.is_exact() {
        r.tier = Tier::Bounded;
        r.warn(format!("presented only through level {}", x.trusted(0).map_or("all".to_string(), |t| t.to_string())));
    }
    r.body(serde_json::to_value(space_to_json(&x, top)).expect("plain data"));
    Ok(r)
}

#[derive(Deserialize, Default)]
struct CategoryInput {
    category: Option<CategorySpec>,
    functor: Option<FunctorSpec>,
    presheaf: Option<FunctorSpec>,
    s: Option<usize>,
}

fn category_input(c: &Common) -> Result<CategoryInput> {
    match &c.input {
        None => Ok(CategoryInput::default()),
        Some(text) => {
            let v = load(text)?;
            match v {
                Value::String(_) => Ok(CategoryInput { category: Some(decode(&v, "category")?), ..Default::default() }),
                _ => decode(&v, "category input"),
            }
        }
    }
}

fn yoneda(c: &Common, mode: YonedaArg, object: Option<&str>) -> Result<Report> {
    let inp = category_input(c)?;
    let base = inp.category.unwrap_or(CategorySpec::Named("terminal".into())).build()?;
    let first = base.object_name(0).to_string();
    let (mode, variance, default) = match mode {
        YonedaArg::HomFunctor => (YonedaMode::HomFunctor, Variance::Covariant, format!("hom_from:{first}")),
        YonedaArg::TensorFunctor => (YonedaMode::TensorFunctor, Variance::Contravariant, format!("hom_to:{first}")),
        YonedaArg::HomFibered => (YonedaMode::HomFibered, Variance::Contravariant, format!("hom_to:{first}")),
        YonedaArg::TensorFibered => (YonedaMode::TensorFibered, Variance::Contravariant, format!("hom_to:{first}")),
    };
    let fun = inp.functor.or(inp.presheaf).unwrap_or(FunctorSpec::Named(default)).build(&base, variance)?;
    let fibered = grothendieck_cat(&fun);
    let objects: Vec<usize> = match object {
        Some(name) => vec![base.object(name).ok_or_else(|| Error::Parse(format!("no object {name}")))?],
        None => (0..base.object_count()).collect(),
    };
    let mut r = Report::new("yoneda", Tier::Exact);
    r.seed = c.seed;
    let mut rows = Vec::new();
    for o in objects {
        let input = match mode {
            YonedaMode::HomFunctor | YonedaMode::TensorFunctor => YonedaInput::Functor(&fun),
            _ => YonedaInput::Fibered(&fibered),
        };
        let rep = yoneda_check(mode, input, o)?;
        r.line(format!("object {}: {} vs {} [{}]", rep.object, rep.lhs, rep.rhs, mark(rep.bijection)));
        r.pass &= rep.bijection;
        rows.push(rep);
    }
    r.body(serde_json::to_value(&rows).expect("plain data"));
    Ok(r)
}

fn tensor(c: &Common) -> Result<Report> {
    let inp = category_input(c)?;
    let base = inp.category.unwrap_or(CategorySpec::Named("terminal".into())).build()?;
    let first = base.object_name(0).to_string();
    let p = inp.presheaf.unwrap_or(FunctorSpec::Named(format!("hom_to:{first}"))).build(&base, Variance::Contravariant)?;
    let f = inp.functor.unwrap_or(FunctorSpec::Named(format!("hom_from:{first}"))).build(&base, Variance::Covariant)?;
    let t = tensor_functors(&p, &f)?;
    let s = inp.s.unwrap_or(2);
    let adj = hom_tensor_check(&p, &f, s)?;
    let mut r = Report::new("tensor", Tier::Exact);
    r.seed = c.seed;
    r.line(format!("P ⊗ F has {} elements", t.len()));
    r.line(format!("Nat(P, Hom(F(-), S)) {} vs Hom(P ⊗ F, S) {} with |S| = {s} [{}]", adj.lhs, adj.rhs, mark(adj.bijection)));
    r.pass = adj.bijection;
    r.body(json!({ "tensor_size": t.len(), "s": s, "adjunction": adj }));
    Ok(r)
}

fn homology(c: &Common) -> Result<Report> {
    let v = required(c)?;
    let k = c.bound;
    let s = match decode::<SetSpec>(&v, "simplicial set").and_then(|spec| spec.build()) {
        Ok(s) => s,
        Err(_) => {
            let x = decode::<SpaceSpec>(&v, "space")?.build()?;
            std::sync::Arc::new(diagonal(&x, c.levels.unwrap_or(k + 1).max(k + 1)))
        }
    };
    let b = betti(&s, k);
    let euler: i64 = b.values.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    let verdict = contractible_evidence(&s, k);
    let bounded = b.bounded || verdict.tier == Tier::Bounded;
    let mut r = Report::new("homology", if bounded { Tier::Bounded } else { Tier::Exact });
    r.seed = c.seed;
    r.line(format!("betti through degree {k}: {:?}", b.values));
    r.line(format!("alternating sum {euler}"));
    r.line(format!("contractible: {} ({:?}: {})", verdict.value, verdict.tier, verdict.reason));
    if b.bounded {
        r.warn(format!("the presentation stops below degree {}", k + 1));
    }
    if verdict.tier == Tier::Bounded {
        r.warn(format!("contractibility is checked through degree {k} only"));
    }
    r.body(json!({ "betti": b, "euler": euler, "contractible": verdict }));
    Ok(r)
}
