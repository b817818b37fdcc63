//! Request payloads: spaces, maps, categories and functors, each either
//! spelled out in JSON or named.

use std::sync::Arc;

use fiblab::cat::{nerve, CategoryJson, FinCategory, FunctorJson, SetFunctor, SliceSide, Variance};
use fiblab::fib;
use fiblab::io::{find_vertex, parse_bisimplex, space_map_from_json, MapJson, SetInput, SpaceInput};
use fiblab::sset::FinSimplicialSet;
use fiblab::sspace::{self, discrete, is_discrete, FinSimplicialSpace, SSpaceMap};
use fiblab::straighten::{chain_functor, grothendieck_fibration};
use fiblab::{Error, Result};
use serde::Deserialize;
use serde_json::Value;

/// `--input` text: inline JSON, a path to a JSON file, or a bare object name.
pub fn load(text: &str) -> Result<Value> {
    let t = text.trim();
    if t.starts_with(['{', '[', '"']) {
        return parse(t, "inline input");
    }
    match std::fs::read_to_string(t) {
        Ok(body) => parse(&body, t),
        Err(_) if !t.contains(['/', '\\']) && !t.ends_with(".json") => Ok(Value::String(t.to_string())),
        Err(e) => Err(Error::Parse(format!("{t}: {e}"))),
    }
}

fn parse(body: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(body).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

pub fn decode<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CategorySpec {
    Named(String),
    Table(CategoryJson),
}

impl CategorySpec {
    /// Names: `terminal`, `iso`, `[n]` or `chain(n)`.
    pub fn build(&self) -> Result<Arc<FinCategory>> {
        let c = match self {
            CategorySpec::Table(j) => FinCategory::from_json(j)?,
            CategorySpec::Named(s) => {
                let s = s.trim();
                let chain = s
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .or_else(|| s.strip_prefix("chain(").and_then(|r| r.strip_suffix(')')));
                match (s, chain.map(str::parse::<usize>)) {
                    ("terminal", _) => FinCategory::terminal(),
                    ("iso", _) => FinCategory::iso_pair(),
                    (_, Some(Ok(n))) => FinCategory::chain(n),
                    _ => return Err(Error::Parse(format!("unknown category {s}"))),
                }
            }
        };
        Ok(Arc::new(c))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FunctorSpec {
    /// `hom_from:<object>`, `hom_to:<object>` or `point` (the terminal presheaf).
    Named(String),
    Table(FunctorJson),
}

impl FunctorSpec {
    pub fn build(&self, base: &Arc<FinCategory>, variance: Variance) -> Result<SetFunctor> {
        let obj = |name: &str| base.object(name).ok_or_else(|| Error::Parse(format!("no object {name}")));
        let f = match self {
            FunctorSpec::Table(j) => SetFunctor::from_json(base.clone(), j)?,
            FunctorSpec::Named(s) if s == "point" => SetFunctor::constant(base.clone(), variance, &["*"]),
            FunctorSpec::Named(s) => match s.split_once(':') {
                Some(("hom_from", o)) => SetFunctor::hom_from(base.clone(), obj(o)?),
                Some(("hom_to", o)) => SetFunctor::hom_to(base.clone(), obj(o)?),
                _ => return Err(Error::Parse(format!("unknown functor {s}"))),
            },
        };
        if f.variance != variance {
            return Err(Error::Precondition(format!("expected a {variance:?} functor").to_lowercase()));
        }
        Ok(f)
    }
}

/// A presheaf or copresheaf on `[n]` given by value-set sizes and the maps
/// between consecutive objects.
#[derive(Clone, Debug, Deserialize)]
pub struct ChainSpec {
    pub n: usize,
    #[serde(default = "contravariant")]
    pub variance: Variance,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

fn contravariant() -> Variance {
    Variance::Contravariant
}

impl ChainSpec {
    pub fn build(&self) -> Result<SetFunctor> {
        chain_functor(self.n, self.variance, &self.sizes, &self.maps)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SpaceSpec {
    Nerve { nerve: CategorySpec, dim: Option<usize> },
    Object(SpaceInput),
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Arc<FinSimplicialSpace>> {
        match self {
            SpaceSpec::Nerve { nerve: c, dim } => {
                let c = c.build()?;
                Ok(discrete(&nerve(&c, dim.unwrap_or(c.object_count().max(2))).complex))
            }
            SpaceSpec::Object(o) => o.build(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Nerve { nerve: CategorySpec, dim: Option<usize> },
    Object(SetInput),
}

impl SetSpec {
    pub fn build(&self) -> Result<Arc<FinSimplicialSet>> {
        match self {
            SetSpec::Nerve { nerve: c, dim } => {
                let c = c.build()?;
                Ok(nerve(&c, dim.unwrap_or(c.object_count().max(2))).complex)
            }
            SetSpec::Object(o) => o.build(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    /// The projection `W_{x/} → W` or `W_{/x} → W`.
    Slice { space: SpaceSpec, vertex: String, side: SliceSide, levels: Option<usize> },
    /// `F(n) → X` picking out a level simplex.
    Simplex { space: SpaceSpec, simplex: String },
    Identity { space: SpaceSpec },
    Explicit { source: SpaceSpec, target: SpaceSpec, assign: MapJson },
    /// The fibration of elements of a functor on `[n]`.
    Grothendieck(ChainSpec),
}

/// Slice realizations use `levels` levels and, for non-discrete spaces,
/// space dimensions one past `bound`.
pub fn build_map(spec: &MapSpec, levels: usize, bound: usize) -> Result<SSpaceMap> {
    match spec {
        MapSpec::Slice { space, vertex, side, levels: m } => {
            let w = space.build()?;
            let v = find_vertex(&w, vertex)?;
            let side = match side {
                SliceSide::Under => sspace::SliceSide::Under,
                SliceSide::Over => sspace::SliceSide::Over,
            };
            let l = if is_discrete(&w) { 0 } else { bound + 1 };
            Ok(fib::slice_space(&w, v, side, m.unwrap_or(levels), l)?.1)
        }
        MapSpec::Simplex { space, simplex } => {
            let x = space.build()?;
            let s = parse_bisimplex(&x, simplex)?;
            if s.deg[1] != 0 {
                return Err(Error::Domain(format!("{simplex} is not a level simplex")));
            }
            Ok(sspace::simplex_map(&x, &s))
        }
        MapSpec::Identity { space } => Ok(fib::identity(&space.build()?)),
        MapSpec::Explicit { source, target, assign } => space_map_from_json(&source.build()?, &target.build()?, assign),
        MapSpec::Grothendieck(c) => Ok(grothendieck_fibration(&c.build()?)?.projection),
    }
}

/// `n` with target `F(n)`, read off the top cell of a discrete simplex.
pub fn base_dimension(p: &SSpaceMap) -> Result<usize> {
    let t = &p.target;
    let n = t.top_degree(0);
    let tops = t.cells().iter().filter(|c| c.deg[0] == n).count();
    if !is_discrete(t) || tops != 1 || t.cells().len() != (1usize << (n + 1)) - 1 {
        return Err(Error::Precondition("the map must land in F(n)".into()));
    }
    Ok(n)
}
