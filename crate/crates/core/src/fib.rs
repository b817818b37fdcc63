//! Fibration, Segal, slice, initial-object, cocone and cofinality checks.
//!
//! Every verdict carries its tier. On discrete spaces the homotopy pullback
//! conditions become bijections of level sets and are decided exactly; on
//! other inputs the comparison maps go through the bounded Kan checker.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exp::{describe, Exponential};
use crate::ez::{Morphism, Simp};
use crate::limits::{product, pullback, pushout};
use crate::oracle::{contractible_evidence, Tier, Verdict};
use crate::sset::kan_check;
use crate::sspace::{
    self, boundary_inclusion, diagonal, f, is_discrete, level, level_map, level_operator, level_set, map_space,
    spine_inclusion, Bisimplex, FinSimplicialSpace, Realization, SSpaceMap, SliceSide,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Left,
    Right,
    Reedy,
    Segal,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ExactDiscrete,
    BoundedEvidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Zeroth,
    Adjacent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub claim: Claim,
    pub mode: Mode,
    pub verdict: bool,
    pub per_level: Vec<LevelRow>,
    pub counterexample: Option<String>,
}

impl FibrationReport {
    fn new(claim: Claim, mode: Mode) -> Self {
        FibrationReport { claim, mode, verdict: true, per_level: Vec::new(), counterexample: None }
    }

    fn push(&mut self, row: LevelRow, witness: impl FnOnce() -> Option<String>) {
        if !row.pass {
            self.verdict = false;
            if self.counterexample.is_none() {
                self.counterexample = witness();
            }
        }
        self.per_level.push(row);
    }
}

/// Name of a level simplex: its cell name when nondegenerate, else its vertex word.
pub fn label(x: &FinSimplicialSpace, s: &Bisimplex) -> String {
    if s.is_nondegenerate() {
        x.cell(s.cell).name.clone()
    } else {
        describe(x, s)
    }
}

/// Highest level that both ends of `p` present completely, capped at `want`.
pub fn level_cap(p: &SSpaceMap, want: usize) -> usize {
    [p.source.trusted(0), p.target.trusted(0)].into_iter().flatten().fold(want, usize::min)
}

/// A sensible level range for exact checks: one past the top cell.
pub fn default_levels(p: &SSpaceMap) -> usize {
    let top = p.source.top_degree(0).max(p.target.top_degree(0)) + 1;
    level_cap(p, top.max(2))
}

/// The elements on both sides of `Y_n → X_n ×_{X_k} Y_k` for discrete spaces.
pub struct DiscreteSquare {
    pub lhs: Vec<Bisimplex>,
    pub rhs: Vec<(Bisimplex, Bisimplex)>,
    pub image: Vec<(Bisimplex, Bisimplex)>,
}

fn restriction(n: usize, side: Side, variant: Variant) -> Vec<usize> {
    match (side, variant) {
        (Side::Left, Variant::Zeroth) => vec![0],
        (Side::Right, Variant::Zeroth) => vec![n],
        (Side::Left, Variant::Adjacent) => (0..n).collect(),
        (Side::Right, Variant::Adjacent) => (1..=n).collect(),
    }
}

/// Pairs are written `(y, x)` with `y ∈ Y_k` and `x ∈ X_n`.
pub fn discrete_square(p: &SSpaceMap, n: usize, side: Side, variant: Variant) -> DiscreteSquare {
    let theta = restriction(n, side, variant);
    let (y, x) = (&p.source, &p.target);
    let lhs = level_set(y, n);
    let small = level_set(y, theta.len() - 1);
    let mut over: HashMap<Bisimplex, Vec<Bisimplex>> = HashMap::new();
    for s in &small {
        over.entry(p.apply(s)).or_default().push(*s);
    }
    let mut rhs = Vec::new();
    for t in level_set(x, n) {
        if let Some(ys) = over.get(&x.act(&t, 0, &theta)) {
            rhs.extend(ys.iter().map(|&s| (s, t)));
        }
    }
    let image = lhs.iter().map(|s| (y.act(s, 0, &theta), p.apply(s))).collect();
    DiscreteSquare { lhs, rhs, image }
}

pub fn fibration_check(p: &SSpaceMap, side: Side, variant: Variant, mode: Mode, levels: usize, bound: usize) -> Result<FibrationReport> {
    let claim = match side {
        Side::Left => Claim::Left,
        Side::Right => Claim::Right,
    };
    let mut report = FibrationReport::new(claim, mode);
    let top = level_cap(p, levels);
    match mode {
        Mode::ExactDiscrete => {
            if !is_discrete(&p.source) || !is_discrete(&p.target) {
                return Err(Error::Precondition("exact mode needs discrete source and target".into()));
            }
            let rows: Vec<(LevelRow, Option<String>)> = (1..=top)
                .into_par_iter()
                .map(|n| {
                    let sq = discrete_square(p, n, side, variant);
                    let distinct: HashSet<_> = sq.image.iter().collect();
                    let pass = distinct.len() == sq.lhs.len() && sq.lhs.len() == sq.rhs.len();
                    let witness = (!pass).then(|| square_witness(p, n, &sq));
                    (LevelRow { level: n, lhs: sq.lhs.len(), rhs: sq.rhs.len(), pass }, witness)
                })
                .collect();
            for (row, w) in rows {
                report.push(row, || w);
            }
        }
        Mode::BoundedEvidence => {
            for n in 1..=top {
                let theta = restriction(n, side, variant);
                let k = theta.len() - 1;
                let (yn, xn, yk, xk) = (level(&p.source, n), level(&p.target, n), level(&p.source, k), level(&p.target, k));
                let a = level_operator(&p.target, &xn, &xk, &theta);
                let b = level_map(p, &yk, &xk);
                let pb = pullback(&a, &b)?;
                let cmp = pb.universal(&level_map(p, &yn, &xn), &level_operator(&p.source, &yn, &yk, &theta))?;
                let kan = kan_check(&cmp, bound)?;
                let row = LevelRow {
                    level: n,
                    lhs: yn.complex.len(),
                    rhs: pb.complex.len(),
                    pass: kan.trivial_fibration_up_to_bound,
                };
                report.push(row, || kan.failures.first().cloned());
            }
        }
    }
    Ok(report)
}

fn square_witness(p: &SSpaceMap, n: usize, sq: &DiscreteSquare) -> String {
    let (y, x) = (&p.source, &p.target);
    let pair = |(a, b): &(Bisimplex, Bisimplex)| format!("({}, {})", label(y, a), label(x, b));
    let mut seen = HashMap::new();
    for (s, img) in sq.lhs.iter().zip(&sq.image) {
        if let Some(prev) = seen.insert(img, s) {
            return format!("level {n}: {} and {} both map to {}", label(y, prev), label(y, s), pair(img));
        }
    }
    let hit: HashSet<_> = sq.image.iter().collect();
    let missing: Vec<String> = sq.rhs.iter().filter(|q| !hit.contains(q)).map(pair).collect();
    format!("level {n}: {} vs {}; nothing maps to {}", sq.lhs.len(), sq.rhs.len(), missing.join(", "))
}

/// Matching maps `Map(F(n),Y) → Map(∂F(n),Y) ×_{Map(∂F(n),X)} Map(F(n),X)`
/// checked as Kan fibrations, or trivial ones when `trivial` is set.
pub fn reedy_bounded(p: &SSpaceMap, bound: usize, levels: usize, trivial: bool) -> Result<FibrationReport> {
    if bound == 0 {
        return Err(Error::Domain("bound must be at least 1".into()));
    }
    let claim = if trivial { Claim::Trivial } else { Claim::Reedy };
    let mut report = FibrationReport::new(claim, Mode::BoundedEvidence);
    let l = bound + 1;
    for n in 0..=level_cap(p, levels) {
        let i = boundary_inclusion(n);
        let (fy, by) = (map_space(&i.target, &p.source, l, None)?, map_space(&i.source, &p.source, l, None)?);
        let (fx, bx) = (map_space(&i.target, &p.target, l, None)?, map_space(&i.source, &p.target, l, None)?);
        let a = by.postcompose(&bx, p);
        let b = fx.restrict(&bx, &i);
        let pb = pullback(&a, &b)?;
        let cmp = pb.universal(&fy.restrict(&by, &i), &fy.postcompose(&fx, p))?;
        let kan = kan_check(&cmp, bound)?;
        let pass = if trivial { kan.trivial_fibration_up_to_bound } else { kan.fibration_up_to_bound };
        let row = LevelRow { level: n, lhs: fy.complex.len(), rhs: pb.complex.len(), pass };
        report.push(row, || kan.failures.first().map(|w| format!("level {n}: {w}")));
    }
    Ok(report)
}

/// Segal maps `X_n → X_1 ×_{X_0} … ×_{X_0} X_1` for `2 ≤ n ≤ levels`.
pub fn segal_check(x: &Arc<FinSimplicialSpace>, mode: Mode, levels: usize, bound: usize) -> Result<FibrationReport> {
    let mut report = FibrationReport::new(Claim::Segal, mode);
    let top = x.trusted(0).map_or(levels, |t| t.min(levels));
    match mode {
        Mode::ExactDiscrete => {
            if !is_discrete(x) {
                return Err(Error::Precondition("exact mode needs a discrete space".into()));
            }
            let edges = level_set(x, 1);
            let ends = |e: &Bisimplex| (x.act(e, 0, &[0]), x.act(e, 0, &[1]));
            for n in 2..=top {
                let lhs = level_set(x, n);
                let spine = |s: &Bisimplex| -> Vec<Bisimplex> { (0..n).map(|i| x.act(s, 0, &[i, i + 1])).collect() };
                let image: HashSet<Vec<Bisimplex>> = lhs.iter().map(spine).collect();
                let mut tuples: Vec<Vec<Bisimplex>> = edges.iter().map(|e| vec![*e]).collect();
                for _ in 1..n {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            let end = ends(t.last().unwrap()).1;
                            edges.iter().filter(move |e| ends(e).0 == end).map(move |e| {
                                let mut u = t.clone();
                                u.push(*e);
                                u
                            })
                        })
                        .collect();
                }
                let pass = image.len() == lhs.len() && lhs.len() == tuples.len();
                let row = LevelRow { level: n, lhs: lhs.len(), rhs: tuples.len(), pass };
                report.push(row, || {
                    let words = |t: &Vec<Bisimplex>| t.iter().map(|e| label(x, e)).collect::<Vec<_>>().join(",");
                    match tuples.iter().find(|t| !image.contains(*t)) {
                        Some(t) => Some(format!("level {n}: composable ({}) has no filler", words(t))),
                        None => Some(format!("level {n}: two simplices share a spine")),
                    }
                });
            }
        }
        Mode::BoundedEvidence => {
            let terminal = Morphism::constant(x.clone(), f(0), 0);
            let reedy = reedy_bounded(&terminal, bound, top, false)?;
            if !reedy.verdict {
                report.verdict = false;
                report.counterexample = reedy.counterexample.map(|w| format!("not Reedy fibrant: {w}"));
            }
            for n in 2..=top {
                let i = spine_inclusion(n)?;
                let full = map_space(&i.target, x, bound + 1, None)?;
                let spine = map_space(&i.source, x, bound + 1, None)?;
                let kan = kan_check(&full.restrict(&spine, &i), bound)?;
                let row = LevelRow {
                    level: n,
                    lhs: full.complex.len(),
                    rhs: spine.complex.len(),
                    pass: kan.trivial_fibration_up_to_bound,
                };
                report.push(row, || kan.failures.first().map(|w| format!("level {n}: {w}")));
            }
        }
    }
    Ok(report)
}

/// `W_{x/}` or `W_{/x}` in levels `≤ m` with its projection to `W`.
pub fn slice_space(w: &Arc<FinSimplicialSpace>, x: u32, side: SliceSide, m: usize, l: usize) -> Result<(Realization, SSpaceMap)> {
    sspace::slice(w, x, side, m, l)
}

fn levelwise_bijection(p: &SSpaceMap, levels: usize) -> FibrationReport {
    let mut report = FibrationReport::new(Claim::Trivial, Mode::ExactDiscrete);
    for n in 0..=level_cap(p, levels) {
        let src = level_set(&p.source, n);
        let tgt = level_set(&p.target, n);
        let image: HashSet<Bisimplex> = src.iter().map(|s| p.apply(s)).collect();
        let pass = image.len() == src.len() && src.len() == tgt.len();
        report.push(LevelRow { level: n, lhs: src.len(), rhs: tgt.len(), pass }, || {
            let miss = tgt.iter().find(|t| !image.contains(t));
            Some(match miss {
                Some(t) => format!("level {n}: {} is not hit", label(&p.target, t)),
                None => format!("level {n}: the projection is not injective"),
            })
        });
    }
    report
}

/// Whether the projection `X_{x/} → X` is a trivial Reedy fibration.
pub fn initial_object_check(x: &Arc<FinSimplicialSpace>, v: u32, mode: Mode, levels: usize, bound: usize) -> Result<FibrationReport> {
    let l = if mode == Mode::ExactDiscrete { 0 } else { bound + 1 };
    let (_, proj) = slice_space(x, v, SliceSide::Under, levels, l)?;
    match mode {
        Mode::ExactDiscrete => {
            if !is_discrete(x) {
                return Err(Error::Precondition("exact mode needs a discrete space".into()));
            }
            Ok(levelwise_bijection(&proj, levels))
        }
        Mode::BoundedEvidence => reedy_bounded(&proj, bound, levels, true),
    }
}

/// The cone `F(1) × K ⊔_{{1}×K} F(0)` with the cone point as vertex 0,
/// and the cells of `{0} × K` keyed by the `K`-cell they come from.
pub struct Cone {
    pub complex: Arc<FinSimplicialSpace>,
    pub base_cells: HashMap<u32, u32>,
}

pub fn cone(k: &Arc<FinSimplicialSpace>) -> Result<Cone> {
    let f1 = f(1);
    let prod = product(&f1, k);
    let at = |v: u32| -> Result<Morphism<2>> {
        let assign = k.cells().iter().enumerate().map(|(c, cell)| {
            let s = k.simp(c as u32);
            prod.pair(&f1.point(v, cell.deg), &s).expect("pairs exist")
        });
        Morphism::new(k.clone(), prod.complex.clone(), assign.collect())
    };
    let end = at(1)?;
    let apex = Morphism::constant(k.clone(), f(0), 0);
    let po = pushout(&end, &apex)?;
    let start = at(0)?;
    let base_cells = start
        .assign
        .iter()
        .enumerate()
        .map(|(c, z)| (po.from_left.assign[z.cell as usize].cell, c as u32))
        .collect();
    Ok(Cone { complex: po.complex, base_cells })
}

/// `X_{p/}` for a diagram `p: K → X` with its projection to `X`.
pub fn cocone_space(p: &SSpaceMap, m: usize, l: usize) -> Result<(Realization, SSpaceMap)> {
    let c = cone(&p.source)?;
    let x = p.target.clone();
    let yd = is_discrete(&x);
    let m = match x.trusted(0) {
        Some(t) => m.min(t.saturating_sub(c.complex.top_degree(0))),
        None => m,
    };
    let keyed = c.base_cells;
    let diagram = p.clone();
    let pin = Box::new(move |s: &Bisimplex| {
        keyed.get(&s.cell).map(|&kc| diagram.apply(&Simp { cell: kc, deg: s.deg, degen: s.degen }))
    });
    let exp = Exponential::new(c.complex, x, [m, if yd { 0 } else { l }]).with_pin(pin);
    let realized = if yd { exp.realize([m, 0], [false, true])? } else { exp.realize([m, l], [false, false])? };
    let r = Realization { space: Arc::new(realized.complex.clone()), exp, realized };
    let proj = r.eval_vertex_map(0);
    Ok((r, proj))
}

#[derive(Clone, Debug, Serialize)]
pub struct ColimitReport {
    pub has_colimit: bool,
    pub tier: Tier,
    pub vertex: Option<String>,
    pub cocone: Option<String>,
    pub candidates: usize,
}

/// Searches `X_{p/}` for an initial vertex, in level-0 cell order.
pub fn colimit_evidence(p: &SSpaceMap, m: usize, l: usize, bound: usize) -> Result<ColimitReport> {
    let (r, proj) = cocone_space(p, m, l)?;
    let z = r.space.clone();
    let mode = if is_discrete(&z) { Mode::ExactDiscrete } else { Mode::BoundedEvidence };
    let tier = if mode == Mode::ExactDiscrete { Tier::Exact } else { Tier::Bounded };
    let verts = z.ids_of_degree([0, 0]);
    let levels = z.trusted(0).unwrap_or(m).saturating_sub(1).max(1);
    for &v in &verts {
        if initial_object_check(&z, v, mode, levels, bound)?.verdict {
            let img = proj.apply(&z.simp(v));
            return Ok(ColimitReport {
                has_colimit: true,
                tier,
                vertex: Some(label(&p.target, &img)),
                cocone: Some(z.cell(v).name.clone()),
                candidates: verts.len(),
            });
        }
    }
    Ok(ColimitReport { has_colimit: false, tier, vertex: None, cocone: None, candidates: verts.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexEvidence {
    pub vertex: String,
    pub fiber_cells: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinalReport {
    pub cofinal: bool,
    pub tier: Tier,
    pub per_vertex: Vec<VertexEvidence>,
}

/// For each vertex `y` of `Y`, contractibility evidence for the diagonal of `Y_{y/} ×_Y X`.
pub fn cofinal_evidence(fm: &SSpaceMap, m: usize, k_max: usize) -> Result<CofinalReport> {
    let y = &fm.target;
    let mut per_vertex = Vec::new();
    for v in y.ids_of_degree([0, 0]) {
        let l = if is_discrete(y) { 0 } else { k_max + 1 };
        let (_, proj) = slice_space(y, v, SliceSide::Under, m, l)?;
        let pb = pullback(&proj, fm)?;
        let diag = diagonal(&pb.complex, m.max(k_max + 1));
        let verdict = contractible_evidence(&diag, k_max);
        per_vertex.push(VertexEvidence { vertex: y.cell(v).name.clone(), fiber_cells: diag.len(), verdict });
    }
    let cofinal = per_vertex.iter().all(|e| e.verdict.value);
    let tier = if per_vertex.iter().any(|e| !e.verdict.value && e.verdict.tier == Tier::Exact)
        || per_vertex.iter().all(|e| e.verdict.tier == Tier::Exact)
    {
        Tier::Exact
    } else {
        Tier::Bounded
    };
    Ok(CofinalReport { cofinal, tier, per_vertex })
}

#[derive(Clone, Debug, Serialize)]
pub struct Span {
    pub edge: String,
    pub source: String,
    pub target: String,
    pub fiber_edge: usize,
    pub fiber_source: usize,
    pub fiber_target: usize,
    pub source_leg_bijective: bool,
    pub target_leg_bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanProfile {
    pub spans: Vec<Span>,
    pub also_right: bool,
}

/// For each nondegenerate edge `e: i → j` of the base, the span of fibers
/// `L_i ← L_e → L_j` of a discrete map `L → X`.
pub fn span_profile(lp: &SSpaceMap) -> Result<SpanProfile> {
    if !is_discrete(&lp.source) || !is_discrete(&lp.target) {
        return Err(Error::Precondition("span profiles need discrete spaces".into()));
    }
    let (l, x) = (&lp.source, &lp.target);
    let fiber = |s: &Bisimplex| -> Vec<Bisimplex> {
        level_set(l, s.deg[0] as usize).into_iter().filter(|t| lp.apply(t) == *s).collect()
    };
    let bij = |from: &[Bisimplex], to: &[Bisimplex], vertex: usize| {
        let img: HashSet<Bisimplex> = from.iter().map(|t| l.act(t, 0, &[vertex])).collect();
        img.len() == from.len() && from.len() == to.len()
    };
    let mut spans = Vec::new();
    for e in x.ids_of_degree([1, 0]) {
        let es = x.simp(e);
        let (s, t) = (x.act(&es, 0, &[0]), x.act(&es, 0, &[1]));
        let (fe, fs, ft) = (fiber(&es), fiber(&s), fiber(&t));
        spans.push(Span {
            edge: x.cell(e).name.clone(),
            source: label(x, &s),
            target: label(x, &t),
            fiber_edge: fe.len(),
            fiber_source: fs.len(),
            fiber_target: ft.len(),
            source_leg_bijective: bij(&fe, &fs, 0),
            target_leg_bijective: bij(&fe, &ft, 1),
        });
    }
    let also_right = spans.iter().all(|s| s.target_leg_bijective);
    Ok(SpanProfile { spans, also_right })
}

/// Reverses both directions of a space.
pub fn opposite_space(x: &FinSimplicialSpace) -> Arc<FinSimplicialSpace> {
    Arc::new(sspace::opposite(&sspace::opposite(x, 0), 1))
}

pub fn opposite_space_map(p: &SSpaceMap) -> SSpaceMap {
    let (src, tgt) = (opposite_space(&p.source), opposite_space(&p.target));
    let once = sspace::opposite_map(p, &src, &tgt, 0);
    sspace::opposite_map(&once, &src, &tgt, 1)
}

/// Left verdicts of `p` pulled back along each level simplex `F(n) → X`, `n ≤ levels`.
pub fn local_verdicts(p: &SSpaceMap, levels: usize) -> Result<Vec<(String, bool)>> {
    let x = &p.target;
    let mut out = Vec::new();
    for n in 0..=level_cap(p, levels) {
        for s in level_set(x, n) {
            let sigma = sspace::simplex_map(x, &s);
            let pb = pullback(&sigma, p)?;
            let q = pb.proj_left();
            let r = fibration_check(&q, Side::Left, Variant::Zeroth, Mode::ExactDiscrete, default_levels(&q), 1)?;
            out.push((label(x, &s), r.verdict));
        }
    }
    Ok(out)
}

/// Maps `F(0) → X` hitting each vertex, for tests of composites.
pub fn vertex_maps(x: &Arc<FinSimplicialSpace>) -> Vec<SSpaceMap> {
    x.ids_of_degree([0, 0]).into_iter().map(|v| sspace::simplex_map(x, &x.simp(v))).collect()
}

/// The identity of a space, as a map.
pub fn identity(x: &Arc<FinSimplicialSpace>) -> SSpaceMap {
    Morphism::identity(x.clone())
}

pub fn left_exact(p: &SSpaceMap) -> Result<bool> {
    Ok(fibration_check(p, Side::Left, Variant::Zeroth, Mode::ExactDiscrete, default_levels(p), 1)?.verdict)
}

pub fn right_exact(p: &SSpaceMap) -> Result<bool> {
    Ok(fibration_check(p, Side::Right, Variant::Zeroth, Mode::ExactDiscrete, default_levels(p), 1)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sspace::{constant, discrete, g};
    use crate::sset;

    fn g2_under() -> (Realization, SSpaceMap) {
        let g2 = g(2).unwrap();
        let v0 = g2.find("0").unwrap();
        slice_space(&g2, v0, SliceSide::Under, 3, 0).unwrap()
    }

    #[test]
    fn g2_counterexample() {
        let (_, proj) = g2_under();
        let r = fibration_check(&proj, Side::Left, Variant::Zeroth, Mode::ExactDiscrete, 1, 1).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.per_level[0], LevelRow { level: 1, lhs: 3, rhs: 4, pass: false });
        let sq = discrete_square(&proj, 1, Side::Left, Variant::Zeroth);
        let mut names: Vec<(String, String)> =
            sq.rhs.iter().map(|(a, b)| (label(&proj.source, a), label(&proj.target, b))).collect();
        names.sort();
        let want = [("00", "00"), ("00", "01"), ("01", "11"), ("01", "12")];
        assert_eq!(names, want.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn identities_are_fibrations() {
        for x in [f(2), g(2).unwrap(), discrete(&sset::j_truncated(1, 3))] {
            let id = identity(&x);
            for side in [Side::Left, Side::Right] {
                for variant in [Variant::Zeroth, Variant::Adjacent] {
                    let r = fibration_check(&id, side, variant, Mode::ExactDiscrete, 3, 1).unwrap();
                    assert!(r.verdict);
                }
            }
        }
        let c = constant(&sset::delta(1));
        let r = fibration_check(&identity(&c), Side::Left, Variant::Zeroth, Mode::BoundedEvidence, 1, 2).unwrap();
        assert!(r.verdict);
        assert!(fibration_check(&identity(&c), Side::Left, Variant::Zeroth, Mode::ExactDiscrete, 1, 1).is_err());
    }

    #[test]
    fn segal() {
        for n in 0..4 {
            assert!(segal_check(&f(n), Mode::ExactDiscrete, 4, 1).unwrap().verdict);
        }
        let r = segal_check(&g(2).unwrap(), Mode::ExactDiscrete, 3, 1).unwrap();
        assert!(!r.verdict);
        assert!(r.counterexample.unwrap().contains("(01,12)"));
    }

    #[test]
    fn reedy() {
        let id = identity(&f(2));
        assert!(reedy_bounded(&id, 1, 2, false).unwrap().verdict);
        let to_point = Morphism::constant(f(2), f(0), 0);
        assert!(reedy_bounded(&to_point, 1, 2, false).unwrap().verdict);
        let c = constant(&sset::delta(1));
        let r = reedy_bounded(&Morphism::constant(c, f(0), 0), 2, 0, false).unwrap();
        assert!(!r.verdict);
    }

    #[test]
    fn initial_objects() {
        let f2 = f(2);
        assert!(initial_object_check(&f2, 0, Mode::ExactDiscrete, 2, 1).unwrap().verdict);
        assert!(!initial_object_check(&f2, 1, Mode::ExactDiscrete, 2, 1).unwrap().verdict);
        assert!(initial_object_check(&f(0), 0, Mode::ExactDiscrete, 2, 1).unwrap().verdict);
    }

    #[test]
    fn cocones() {
        let f2 = f(2);
        let pt = sspace::simplex_map(&f2, &f2.simp(1));
        let (r, _) = cocone_space(&pt, 2, 0).unwrap();
        let (s, _) = slice_space(&f2, 1, SliceSide::Under, 2, 0).unwrap();
        assert!(crate::hom::isomorphic(&r.space, &s.space));
        let empty = Morphism::new(discrete(&sset::empty()), f2.clone(), vec![]).unwrap();
        let (r, _) = cocone_space(&empty, 2, 0).unwrap();
        assert!(crate::hom::isomorphic(&r.space, &f2));
        let rep = colimit_evidence(&identity(&f2), 2, 0, 1).unwrap();
        assert!(rep.has_colimit);
        assert_eq!(rep.vertex.as_deref(), Some("2"));
        let rep = colimit_evidence(&identity(&g(2).unwrap()), 2, 0, 1).unwrap();
        assert!(!rep.has_colimit);
    }

    #[test]
    fn cofinality() {
        let f1 = f(1);
        let at = |v: u32| sspace::simplex_map(&f1, &f1.simp(v));
        assert!(cofinal_evidence(&at(1), 2, 2).unwrap().cofinal);
        let r = cofinal_evidence(&at(0), 2, 2).unwrap();
        assert!(!r.cofinal);
        assert_eq!(r.tier, Tier::Exact);
        assert!(cofinal_evidence(&identity(&f1), 2, 2).unwrap().cofinal);
    }

    #[test]
    fn spans() {
        let p = span_profile(&identity(&f(1))).unwrap();
        assert!(p.also_right);
        assert_eq!(p.spans.len(), 1);
    }

    #[test]
    fn duality_and_locality() {
        let (_, proj) = g2_under();
        let op = opposite_space_map(&proj);
        op.validate().unwrap();
        assert_eq!(left_exact(&proj).unwrap(), right_exact(&op).unwrap());
        let local = local_verdicts(&proj, 1).unwrap();
        assert_eq!(local.iter().all(|(_, v)| *v), left_exact(&proj).unwrap());
    }
}
