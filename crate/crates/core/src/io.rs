//! JSON forms of simplicial sets, simplicial spaces and maps, and the short
//! names accepted for standard objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ez::{degen_values, face_values, Complex, Morphism, Simp};
use crate::sset::{self, parse_simplex, FinSimplicialSet, SSetMap, StandardKind};
use crate::sspace::{self, level, level_operator, Bisimplex, FinSimplicialSpace, SSpaceMap, StandardSpace};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub dim: usize,
    pub id: String,
    #[serde(default)]
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    #[serde(default)]
    pub dim_bound: Option<usize>,
    pub cells: Vec<CellJson>,
    #[serde(default = "yes")]
    pub exact: bool,
}

fn yes() -> bool {
    true
}

pub fn sset_to_json(x: &FinSimplicialSet) -> SSetJson {
    let cells = x
        .cells()
        .iter()
        .map(|c| CellJson { dim: c.deg[0], id: c.name.clone(), faces: c.faces[0].iter().map(|f| x.name_of(f)).collect() })
        .collect();
    SSetJson { dim_bound: Some(x.trusted(0).unwrap_or(x.top_degree(0))), cells, exact: x.is_exact() }
}

pub fn sset_from_json(j: &SSetJson) -> Result<FinSimplicialSet> {
    let bound = if j.exact { None } else { Some(j.dim_bound.ok_or_else(|| parse_err("inexact set without dim_bound"))?) };
    let mut cells: Vec<&CellJson> = j.cells.iter().collect();
    cells.sort_by_key(|c| c.dim);
    let mut x = Complex::new([bound]);
    for c in cells {
        let faces = c
            .faces
            .iter()
            .map(|f| parse_simplex(&x, f).map_err(|e| parse_err(format!("cell {}: {e}", c.id))))
            .collect::<Result<Vec<_>>>()?;
        x.add_cell(c.id.clone(), [c.dim], [faces])?;
    }
    x.validate()?;
    Ok(x)
}

/// A map given by the image of every cell of its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub assign: BTreeMap<String, String>,
}

pub fn sset_map_to_json(p: &SSetMap) -> MapJson {
    let assign = p.source.cells().iter().zip(&p.assign).map(|(c, y)| (c.name.clone(), p.target.name_of(y))).collect();
    MapJson { assign }
}

pub fn sset_map_from_json(src: &Arc<FinSimplicialSet>, tgt: &Arc<FinSimplicialSet>, j: &MapJson) -> Result<SSetMap> {
    let assign = src
        .cells()
        .iter()
        .map(|c| {
            let r = j.assign.get(&c.name).ok_or_else(|| parse_err(format!("no image for {}", c.name)))?;
            parse_simplex(tgt, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(src.clone(), tgt.clone(), assign)
}

/// Levels `X_0 … X_M` with `face[m][i]: X_m → X_{m-1}` and `degeneracy[m][i]: X_m → X_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub level_bound: usize,
    pub levels: Vec<SSetJson>,
    pub face: Vec<Vec<MapJson>>,
    pub degeneracy: Vec<Vec<MapJson>>,
    #[serde(default = "yes")]
    pub exact: bool,
}

pub fn space_to_json(x: &FinSimplicialSpace, level_bound: usize) -> SpaceJson {
    let levels: Vec<_> = (0..=level_bound).map(|m| level(x, m)).collect();
    let face = (0..=level_bound)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m).map(|i| sset_map_to_json(&level_operator(x, &levels[m], &levels[m - 1], &face_values(m, i)))).collect()
        })
        .collect();
    let degeneracy = (0..level_bound)
        .map(|m| (0..=m).map(|i| sset_map_to_json(&level_operator(x, &levels[m], &levels[m + 1], &degen_values(m, i)))).collect())
        .collect();
    let exact = x.trusted(0).is_none() && level_bound >= x.top_degree(0) && x.trusted(1).is_none();
    SpaceJson { level_bound, levels: levels.iter().map(|l| sset_to_json(&l.complex)).collect(), face, degeneracy, exact }
}

/// Rebuilds the bisimplicial presentation: a level cell `c` is degenerate
/// exactly when `c = s_i d_i c` for some `i`.
pub fn space_from_json(j: &SpaceJson) -> Result<FinSimplicialSpace> {
    let m_top = j.level_bound;
    if j.levels.len() != m_top + 1 {
        return Err(parse_err(format!("{} levels for level_bound {m_top}", j.levels.len())));
    }
    let levels: Vec<Arc<FinSimplicialSet>> = j.levels.iter().map(|l| sset_from_json(l).map(Arc::new)).collect::<Result<_>>()?;
    let mut faces: Vec<Vec<SSetMap>> = vec![Vec::new()];
    for m in 1..=m_top {
        let row = j.face.get(m).ok_or_else(|| parse_err(format!("no face maps out of level {m}")))?;
        if row.len() != m + 1 {
            return Err(parse_err(format!("level {m} needs {} face maps", m + 1)));
        }
        faces.push(row.iter().map(|f| sset_map_from_json(&levels[m], &levels[m - 1], f)).collect::<Result<_>>()?);
    }
    let mut degens: Vec<Vec<SSetMap>> = Vec::new();
    for m in 0..m_top {
        let row = j.degeneracy.get(m).ok_or_else(|| parse_err(format!("no degeneracy maps out of level {m}")))?;
        if row.len() != m + 1 {
            return Err(parse_err(format!("level {m} needs {} degeneracy maps", m + 1)));
        }
        degens.push(row.iter().map(|s| sset_map_from_json(&levels[m], &levels[m + 1], s)).collect::<Result<_>>()?);
    }
    let space_bound = levels.iter().filter_map(|l| l.trusted(0)).min();
    let mut x: FinSimplicialSpace = Complex::new([if j.exact { None } else { Some(m_top) }, space_bound]);
    let mut images: Vec<Vec<Bisimplex>> = Vec::new();
    let lift = |x: &FinSimplicialSpace, img: &[Bisimplex], s: &Simp<1>| -> Bisimplex {
        x.degenerate_by(&img[s.cell as usize], 1, s.degen[0], s.deg[0] as usize)
    };
    for m in 0..=m_top {
        let lm = &levels[m];
        let mut img: Vec<Bisimplex> = Vec::with_capacity(lm.len());
        for (id, c) in lm.cells().iter().enumerate() {
            let cs = lm.simp(id as u32);
            let degenerate = (0..m).find_map(|i| {
                let y = faces[m][i].apply(&cs);
                (degens[m - 1][i].apply(&y) == cs).then_some((i, y))
            });
            let b = match degenerate {
                Some((i, y)) => x.degeneracy(&lift(&x, &images[m - 1], &y), 0, i),
                None => {
                    let f0 = if m == 0 {
                        Vec::new()
                    } else {
                        (0..=m).map(|i| lift(&x, &images[m - 1], &faces[m][i].apply(&cs))).collect()
                    };
                    let f1 = c.faces[0].iter().map(|f| lift(&x, &img, f)).collect();
                    let name = if x.find(&c.name).is_some() { format!("{}@{m}", c.name) } else { c.name.clone() };
                    let cell = x.add_cell(name, [m, c.deg[0]], [f0, f1])?;
                    x.simp(cell)
                }
            };
            img.push(b);
        }
        images.push(img);
    }
    x.validate()?;
    // the given structure maps must agree with the rebuilt presentation
    for m in 0..=m_top {
        for (id, _) in levels[m].cells().iter().enumerate() {
            let cs = levels[m].simp(id as u32);
            let b = images[m][id];
            for i in 0..faces[m].len() {
                if x.face(&b, 0, i) != lift(&x, &images[m - 1], &faces[m][i].apply(&cs)) {
                    return Err(parse_err(format!("face {i} out of level {m} breaks the simplicial identities")));
                }
            }
            if m < m_top {
                for i in 0..=m {
                    if x.degeneracy(&b, 0, i) != lift(&x, &images[m + 1], &degens[m][i].apply(&cs)) {
                        return Err(parse_err(format!("degeneracy {i} out of level {m} breaks the simplicial identities")));
                    }
                }
            }
        }
    }
    Ok(x)
}

/// Parses `"id"` or a cell name followed by `~s…` (level direction) and/or
/// `^s…` (space direction) degeneracy words.
pub fn parse_bisimplex(x: &FinSimplicialSpace, text: &str) -> Result<Bisimplex> {
    if let Some(c) = x.find(text) {
        return Ok(x.simp(c));
    }
    let cut = text.find(['~', '^']).ok_or_else(|| parse_err(format!("unknown cell {text}")))?;
    let (base, mut rest) = text.split_at(cut);
    let c = x.find(base).ok_or_else(|| parse_err(format!("unknown cell {base}")))?;
    let mut s = x.simp(c);
    while !rest.is_empty() {
        let dir = if rest.starts_with('~') { 0 } else { 1 };
        let body = &rest[1..];
        let end = body.find(['~', '^']).unwrap_or(body.len());
        let word = sset::parse_word(&body[..end]).ok_or_else(|| parse_err(format!("bad degeneracy word in {text}")))?;
        let k = s.deg[dir] as usize + word.len();
        if word.iter().any(|&j| j >= k) {
            return Err(parse_err(format!("degeneracy index out of range in {text}")));
        }
        s = x.degenerate_by(&s, dir, crate::ez::word_mask(&word)?, k);
        rest = &body[end..];
    }
    Ok(s)
}

pub fn space_map_to_json(p: &SSpaceMap) -> MapJson {
    let assign = p.source.cells().iter().zip(&p.assign).map(|(c, y)| (c.name.clone(), p.target.name_of(y))).collect();
    MapJson { assign }
}

pub fn space_map_from_json(src: &Arc<FinSimplicialSpace>, tgt: &Arc<FinSimplicialSpace>, j: &MapJson) -> Result<SSpaceMap> {
    let assign = src
        .cells()
        .iter()
        .map(|c| {
            let r = j.assign.get(&c.name).ok_or_else(|| parse_err(format!("no image for {}", c.name)))?;
            parse_bisimplex(tgt, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(src.clone(), tgt.clone(), assign)
}

fn args(text: &str, head: &str) -> Option<Vec<usize>> {
    let inner = text.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// `delta(n)`, `boundary(n)`, `horn(n,i)`, `J(l)@T`.
pub fn named_sset(text: &str) -> Result<Arc<FinSimplicialSet>> {
    let t = text.trim();
    let kind = if let Some([n]) = args(t, "delta").as_deref() {
        StandardKind::Delta(*n)
    } else if let Some([n]) = args(t, "boundary").as_deref() {
        StandardKind::Boundary(*n)
    } else if let Some([n, i]) = args(t, "horn").as_deref() {
        StandardKind::Horn(*n, *i)
    } else if let Some((j, bound)) = t.split_once('@') {
        match (args(j, "J").as_deref(), bound.parse()) {
            (Some([l]), Ok(b)) => StandardKind::JTruncated(*l, b),
            _ => return Err(parse_err(format!("unknown object {t}"))),
        }
    } else {
        return Err(parse_err(format!("unknown object {t}")));
    };
    sset::build_standard(&kind)
}

/// `F(n)`, `dF(n)`, `L(n,l)`, `E(n)@T`, `G(n)`, or `disc:<set>` / `const:<set>`
/// for a named simplicial set.
pub fn named_space(text: &str) -> Result<Arc<FinSimplicialSpace>> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("disc:") {
        return Ok(sspace::discrete(&*named_sset(rest)?));
    }
    if let Some(rest) = t.strip_prefix("const:") {
        return Ok(sspace::constant(&*named_sset(rest)?));
    }
    let kind = if let Some([n]) = args(t, "F").as_deref() {
        StandardSpace::F(*n)
    } else if let Some([n]) = args(t, "dF").as_deref() {
        StandardSpace::BoundaryF(*n)
    } else if let Some([n, l]) = args(t, "L").as_deref() {
        StandardSpace::L(*n, *l)
    } else if let Some([n]) = args(t, "G").as_deref() {
        StandardSpace::G(*n)
    } else if let Some((e, bound)) = t.split_once('@') {
        match (args(e, "E").as_deref(), bound.parse()) {
            (Some([n]), Ok(b)) => StandardSpace::E(*n, b),
            _ => return Err(parse_err(format!("unknown space {t}"))),
        }
    } else {
        return Err(parse_err(format!("unknown space {t}")));
    };
    sspace::build_standard_space(&kind)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceInput {
    Named(String),
    Levels(Box<SpaceJson>),
    Set(SSetJson),
}

impl SpaceInput {
    /// Plain simplicial sets are read as discrete spaces.
    pub fn build(&self) -> Result<Arc<FinSimplicialSpace>> {
        match self {
            SpaceInput::Named(s) => named_space(s),
            SpaceInput::Levels(j) => Ok(Arc::new(space_from_json(j)?)),
            SpaceInput::Set(j) => Ok(sspace::discrete(&sset_from_json(j)?)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetInput {
    Named(String),
    Set(SSetJson),
}

impl SetInput {
    pub fn build(&self) -> Result<Arc<FinSimplicialSet>> {
        match self {
            SetInput::Named(s) => named_sset(s),
            SetInput::Set(j) => Ok(Arc::new(sset_from_json(j)?)),
        }
    }
}

pub fn find_vertex(x: &FinSimplicialSpace, name: &str) -> Result<u32> {
    x.find(name)
        .filter(|&v| x.cell(v).deg == [0, 0])
        .ok_or_else(|| parse_err(format!("no vertex named {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::isomorphic;
    use crate::sspace::{constant, f, g};

    #[test]
    fn sets_round_trip() {
        for x in [sset::delta(2), sset::boundary(3), sset::j_truncated(1, 3), sset::horn(2, 1).unwrap()] {
            let j = sset_to_json(&x);
            let text = serde_json::to_string(&j).unwrap();
            let back = sset_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert!(back.same_presentation(&x));
            assert_eq!(back.is_exact(), x.is_exact());
        }
    }

    #[test]
    fn degenerate_references() {
        let d = sset::delta(1);
        let name = d.cell(2).name.clone();
        let s = parse_simplex(&d, &format!("{name}.s1s0")).unwrap();
        assert_eq!(s.deg, [3]);
        assert!(parse_simplex(&d, &format!("{name}.s0s1")).is_err());
    }

    #[test]
    fn spaces_round_trip() {
        for (x, m) in [(f(2), 3), (g(2).unwrap(), 3), (constant(&sset::delta(1)), 2), (named_space("E(1)@3").unwrap(), 3)] {
            let j = space_to_json(&x, m);
            let back = Arc::new(space_from_json(&j).unwrap());
            assert!(isomorphic(&back, &x), "round trip of a space with {} cells", x.len());
        }
    }

    #[test]
    fn bad_structure_maps_are_rejected() {
        let mut j = space_to_json(&f(1), 2);
        let first = j.face[1][0].assign.keys().next().unwrap().clone();
        let other = j.levels[0].cells[1].id.clone();
        let current = j.face[1][0].assign[&first].clone();
        let swap = if current == other { j.levels[0].cells[0].id.clone() } else { other };
        j.face[1][0].assign.insert(first, swap);
        assert!(space_from_json(&j).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(named_space("F(2)").unwrap().len(), f(2).len());
        assert!(named_space("G(3)").is_ok());
        assert!(named_space("E(1)@4").is_ok());
        assert!(named_space("disc:horn(2,0)").is_ok());
        assert!(named_space("F(x)").is_err());
        assert!(named_sset("J(1)@3").is_ok());
        let g2 = g(2).unwrap();
        let e = parse_bisimplex(&g2, "01~s0").unwrap();
        assert_eq!(e.deg, [2, 0]);
        let m = space_map_to_json(&Morphism::identity(g2.clone()));
        assert_eq!(space_map_from_json(&g2, &g2, &m).unwrap().assign, Morphism::identity(g2).assign);
    }
}
