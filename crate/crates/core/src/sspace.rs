//! Truncated simplicial spaces, stored as bisimplicial presentations.
//!
//! Direction 0 is the level direction (`X_0, X_1, …`), direction 1 the space
//! direction. Level spaces, rows and the diagonal are derived views.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::exp::{ExpElem, Exponential};
use crate::ez::{masks_with, Complex, Morphism, Simp};
use crate::limits::pushout;
use crate::poset::MonotoneMap;
use crate::realize::{realize, Presheaf, Realized};
use crate::rep::Rep;
use crate::sset::{self, FinSimplicialSet, Simplex};

pub type FinSimplicialSpace = Complex<2>;
pub type SSpaceMap = Morphism<2>;
pub type Bisimplex = Simp<2>;

/// A vertex of the level-0 space.
#[derive(Clone, Debug)]
pub struct PointedSpace {
    pub base: Arc<FinSimplicialSpace>,
    pub point: u32,
}

impl PointedSpace {
    pub fn new(base: Arc<FinSimplicialSpace>, point: u32) -> Result<Self> {
        if point as usize >= base.len() || base.cell(point).deg != [0, 0] {
            return Err(domain!("point must be a vertex of the level-0 space"));
        }
        Ok(PointedSpace { base, point })
    }
}

pub fn lift_simplex(s: &Simplex, dir: usize) -> Bisimplex {
    let mut deg = [0u8; 2];
    let mut degen = [0u32; 2];
    deg[dir] = s.deg[0];
    degen[dir] = s.degen[0];
    Simp { cell: s.cell, deg, degen }
}

fn embed_in(s: &FinSimplicialSet, dir: usize) -> Arc<FinSimplicialSpace> {
    let mut bound = [None, None];
    bound[dir] = s.trusted(0);
    let mut x = Complex::new(bound);
    for c in s.cells() {
        let mut deg = [0, 0];
        deg[dir] = c.deg[0];
        let mut faces: [Vec<Bisimplex>; 2] = [Vec::new(), Vec::new()];
        faces[dir] = c.faces[0].iter().map(|f| lift_simplex(f, dir)).collect();
        x.add_cell(c.name.clone(), deg, faces).expect("embedding keeps faces valid");
    }
    Arc::new(x)
}

/// The discrete space with level `m` the set `S_m`.
pub fn discrete(s: &FinSimplicialSet) -> Arc<FinSimplicialSpace> {
    embed_in(s, 0)
}

/// The constant space with every level equal to `K`.
pub fn constant(k: &FinSimplicialSet) -> Arc<FinSimplicialSpace> {
    embed_in(k, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    Discrete,
    Constant,
}

pub fn embed(kind: Embedding, s: &FinSimplicialSet) -> Arc<FinSimplicialSpace> {
    match kind {
        Embedding::Discrete => discrete(s),
        Embedding::Constant => constant(s),
    }
}

/// Discrete with complete vertical direction and all cells in space degree 0.
pub fn is_discrete(x: &FinSimplicialSpace) -> bool {
    x.trusted(1).is_none() && x.cells().iter().all(|c| c.deg[1] == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardSpace {
    F(usize),
    BoundaryF(usize),
    /// `F(n)` without its `l`-th face.
    L(usize, usize),
    /// `E(n)` presented up to level `t`.
    E(usize, usize),
    G(usize),
}

pub fn build_standard_space(kind: &StandardSpace) -> Result<Arc<FinSimplicialSpace>> {
    match *kind {
        StandardSpace::F(n) => Ok(f(n)),
        StandardSpace::BoundaryF(n) => Ok(discrete(&sset::boundary(n))),
        StandardSpace::L(n, l) => Ok(discrete(&*sset::horn(n, l)?)),
        StandardSpace::E(n, t) => Ok(discrete(&sset::j_truncated(n, t))),
        StandardSpace::G(n) => g(n),
    }
}

pub fn f(n: usize) -> Arc<FinSimplicialSpace> {
    discrete(&sset::delta(n))
}

/// The simplex of `F(n)` at level `m` given by `f: [m] → [n]`.
pub fn f_simplex(n: usize, map: &MonotoneMap) -> Result<Bisimplex> {
    if map.target_size() != n {
        return Err(domain!("{map} is not a simplex of F({n})"));
    }
    let r = sset::delta_rep(n);
    let s = r.simp(&[map.values().to_vec()]).expect("monotone");
    Ok(lift_simplex(&s, 0))
}

/// The monotone map standing for a level simplex of `F(n)`.
pub fn f_map(n: usize, s: &Bisimplex) -> MonotoneMap {
    let r = sset::delta_rep(n);
    let base = Simp { cell: s.cell, deg: [s.deg[0]], degen: [s.degen[0]] };
    MonotoneMap::from_values_unchecked(n, r.seqs(&base)[0].clone())
}

/// `F(1) ⊔_{F(0)} … ⊔_{F(0)} F(1)` with `n` copies of `F(1)`.
pub fn g(n: usize) -> Result<Arc<FinSimplicialSpace>> {
    if n < 2 {
        return Err(domain!("G(n) needs n ≥ 2"));
    }
    let f0 = f(0);
    let f1 = f(1);
    let start = Morphism::new_unchecked(f0.clone(), f1.clone(), vec![f1.simp(0)]);
    let mut acc = f1.clone();
    let mut last = 1u32;
    for _ in 1..n {
        let end = Morphism::new_unchecked(f0.clone(), acc.clone(), vec![acc.simp(last)]);
        let po = pushout(&start, &end)?;
        last = po.from_left.assign[1].cell;
        acc = po.complex;
    }
    let mut vertex_no = HashMap::new();
    for (id, c) in acc.cells().iter().enumerate() {
        if c.deg == [0, 0] {
            let k = vertex_no.len();
            vertex_no.insert(id as u32, k);
        }
    }
    let named = acc.renamed(|id, c| {
        if c.deg == [0, 0] {
            vertex_no[&id].to_string()
        } else {
            format!("{}{}", vertex_no[&c.faces[0][1].cell], vertex_no[&c.faces[0][0].cell])
        }
    });
    Ok(Arc::new(named))
}

pub fn e(n: usize, t: usize) -> Arc<FinSimplicialSpace> {
    discrete(&sset::j_truncated(n, t))
}

/// `Δ[n] ⊠ Δ[l]`, the space representing bidegree `(n, l)`.
pub fn rep(n: usize, l: usize) -> Rep<2> {
    Rep::new([n, l])
}

/// `F(n) × Δ[l]`-style generator with the `J[l]` factor cut at `t`.
pub fn t_cell(n: usize, l: usize, t: usize) -> Arc<FinSimplicialSpace> {
    let a = discrete(&sset::delta(n));
    let b = constant(&sset::j_truncated(l, t));
    crate::limits::product(&a, &b).complex
}

/// The simplicial set `n ↦ (X_n)_0`.
pub fn first_row(x: &FinSimplicialSpace) -> FinSimplicialSet {
    let mut out = Complex::new([x.trusted(0)]);
    let mut remap = HashMap::new();
    for (id, c) in x.cells().iter().enumerate() {
        if c.deg[1] != 0 {
            continue;
        }
        let faces = c.faces[0]
            .iter()
            .map(|s| Simp { cell: remap[&s.cell], deg: [s.deg[0]], degen: [s.degen[0]] })
            .collect();
        let nid = out.add_cell(c.name.clone(), [c.deg[0]], [faces]).expect("row of a valid space");
        remap.insert(id as u32, nid);
    }
    out
}

/// The level space `X_m` with its cells indexed by `(cell, level mask)`.
#[derive(Clone, Debug)]
pub struct Level {
    pub m: usize,
    pub complex: Arc<FinSimplicialSet>,
    pub cells: Vec<(u32, u32)>,
    lookup: HashMap<(u32, u32), u32>,
}

impl Level {
    pub fn to_level(&self, x: &Bisimplex) -> Option<Simplex> {
        debug_assert_eq!(x.deg[0] as usize, self.m);
        let cell = *self.lookup.get(&(x.cell, x.degen[0]))?;
        Some(Simp { cell, deg: [x.deg[1]], degen: [x.degen[1]] })
    }

    pub fn from_level(&self, s: &Simplex) -> Bisimplex {
        let (cell, mask) = self.cells[s.cell as usize];
        Simp { cell, deg: [self.m as u8, s.deg[0]], degen: [mask, s.degen[0]] }
    }
}

pub fn level(x: &FinSimplicialSpace, m: usize) -> Level {
    let mut entries: Vec<(usize, u32, u32)> = Vec::new();
    for (id, c) in x.cells().iter().enumerate() {
        if c.deg[0] > m {
            continue;
        }
        for mask in masks_with(m, m - c.deg[0]) {
            entries.push((c.deg[1], id as u32, mask));
        }
    }
    entries.sort();
    let mut out = Complex::new([x.trusted(1)]);
    let mut lookup = HashMap::new();
    let mut cells = Vec::new();
    for (l, c, mask) in entries {
        let full = Simp { cell: c, deg: [m as u8, l as u8], degen: [mask, 0] };
        let mut faces = Vec::new();
        if l > 0 {
            for i in 0..=l {
                let y = x.face(&full, 1, i);
                let id = lookup[&(y.cell, y.degen[0])];
                faces.push(Simp { cell: id, deg: [y.deg[1]], degen: [y.degen[1]] });
            }
        }
        let id = out.add_cell(x.name_of(&full), [l], [faces]).expect("level of a valid space");
        lookup.insert((c, mask), id);
        cells.push((c, mask));
    }
    Level { m, complex: Arc::new(out), cells, lookup }
}

/// The map `X_m → Y_m` induced by `p`.
pub fn level_map(p: &SSpaceMap, src: &Level, tgt: &Level) -> Morphism<1> {
    let assign = (0..src.complex.len() as u32)
        .map(|c| {
            let s = src.complex.simp(c);
            tgt.to_level(&p.apply(&src.from_level(&s))).expect("levels match")
        })
        .collect();
    Morphism::new_unchecked(src.complex.clone(), tgt.complex.clone(), assign)
}

/// The map `X_m → X_k` induced by `θ: [k] → [m]`.
pub fn level_operator(x: &FinSimplicialSpace, src: &Level, tgt: &Level, theta: &[usize]) -> Morphism<1> {
    let assign = (0..src.complex.len() as u32)
        .map(|c| {
            let s = src.complex.simp(c);
            tgt.to_level(&x.act(&src.from_level(&s), 0, theta)).expect("levels match")
        })
        .collect();
    Morphism::new_unchecked(src.complex.clone(), tgt.complex.clone(), assign)
}

/// Elements of a discrete level: all simplices of bidegree `(m, 0)`.
pub fn level_set(x: &FinSimplicialSpace, m: usize) -> Vec<Bisimplex> {
    x.simplices([m, 0])
}

struct Diagonal<'a>(&'a FinSimplicialSpace);

impl Presheaf<1> for Diagonal<'_> {
    type Elem = Bisimplex;

    fn elements(&self, deg: [usize; 1]) -> Vec<Bisimplex> {
        self.0.simplices([deg[0], deg[0]])
    }

    fn act(&self, e: &Bisimplex, _: usize, theta: &[usize]) -> Bisimplex {
        let h = self.0.act(e, 0, theta);
        self.0.act(&h, 1, theta)
    }

    fn name(&self, e: &Bisimplex) -> String {
        self.0.name_of(e)
    }
}

/// `n ↦ X_{n,n}` up to dimension `max`.
pub fn diagonal(x: &FinSimplicialSpace, max: usize) -> FinSimplicialSet {
    diagonal_realized(x, max).complex
}

pub fn diagonal_realized(x: &FinSimplicialSpace, max: usize) -> Realized<1, Bisimplex> {
    let exact = x.is_exact() && max >= x.top_degree(0) + x.top_degree(1);
    let mut r = realize(&Diagonal(x), [max], [exact]).expect("diagonal of a valid space");
    if !exact {
        let t = [0, 1].iter().filter_map(|&d| x.trusted(d)).min().unwrap_or(max).min(max);
        r.complex.set_bound([Some(t)]);
    }
    r
}

/// The diagonal of a map, on diagonals realized to the same dimension.
pub fn diagonal_map(
    p: &SSpaceMap,
    src: &Realized<1, Bisimplex>,
    tgt: &Realized<1, Bisimplex>,
) -> Morphism<1> {
    let assign = src.elems.iter().map(|e| tgt.nf[&p.apply(e)]).collect();
    Morphism::new_unchecked(Arc::new(src.complex.clone()), Arc::new(tgt.complex.clone()), assign)
}

fn reverse_mask(mask: u32, k: usize) -> u32 {
    (0..k).filter(|j| mask >> j & 1 == 1).fold(0, |m, j| m | 1 << (k - 1 - j))
}

fn reverse_simp<const D: usize>(s: &Simp<D>, dir: usize) -> Simp<D> {
    let mut out = *s;
    out.degen[dir] = reverse_mask(s.degen[dir], s.deg[dir] as usize);
    out
}

/// Precomposition with the order-reversing involution in direction `dir`.
pub fn opposite<const D: usize>(x: &Complex<D>, dir: usize) -> Complex<D> {
    let mut out = Complex::new(x.bound());
    for c in x.cells() {
        let mut faces = c.faces.clone();
        faces[dir] = c.faces[dir].iter().rev().map(|s| reverse_simp(s, dir)).collect();
        out.add_cell(c.name.clone(), c.deg, faces).expect("opposite of a valid object");
    }
    out
}

pub fn opposite_map<const D: usize>(
    p: &Morphism<D>,
    src: &Arc<Complex<D>>,
    tgt: &Arc<Complex<D>>,
    dir: usize,
) -> Morphism<D> {
    let assign = p.assign.iter().map(|s| reverse_simp(s, dir)).collect();
    Morphism::new_unchecked(src.clone(), tgt.clone(), assign)
}

/// A realized function space together with the data to read it back.
pub struct Realization {
    pub space: Arc<FinSimplicialSpace>,
    pub exp: Exponential<2>,
    pub realized: Realized<2, ExpElem<2>>,
}

impl Realization {
    pub fn within_range(&self) -> bool {
        !self.exp.hit_bound()
    }

    /// The map to `Y` evaluating at a vertex of the exponent.
    pub fn eval_vertex_map(&self, v: u32) -> SSpaceMap {
        let assign = self.realized.elems.iter().map(|e| self.exp.eval_vertex(e, v)).collect();
        Morphism::new_unchecked(self.space.clone(), self.exp.target.clone(), assign)
    }
}

fn level_cap(y: &FinSimplicialSpace, x: &FinSimplicialSpace, m: usize) -> (usize, bool) {
    match y.trusted(0) {
        Some(t) => {
            let cap = t.saturating_sub(x.top_degree(0));
            (m.min(cap), m <= cap && t >= x.top_degree(0))
        }
        None => (m, true),
    }
}

fn realize_exp(e: Exponential<2>, m: usize, l: usize, y_discrete: bool) -> Result<Realization> {
    let realized = if y_discrete { e.realize([m, 0], [false, true])? } else { e.realize([m, l], [false, false])? };
    Ok(Realization { space: Arc::new(realized.complex.clone()), exp: e, realized })
}

/// `Y^X` in levels `≤ m` and space degrees `≤ l`. When `Y` is discrete so is
/// `Y^X`, and only space degree 0 is computed.
pub fn exponential(y: &Arc<FinSimplicialSpace>, x: &Arc<FinSimplicialSpace>, m: usize, l: usize) -> Result<Realization> {
    let yd = is_discrete(y);
    let (m, _) = level_cap(y, x, m);
    let e = Exponential::new(x.clone(), y.clone(), [m, if yd { 0 } else { l }]);
    realize_exp(e, m, l, yd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceSide {
    Under,
    Over,
}

/// `W_{x/}` (maps `F(1) → W` starting at `x`) or `W_{/x}` (ending at `x`),
/// with the projection to `W` evaluating at the free end.
pub fn slice(w: &Arc<FinSimplicialSpace>, x: u32, side: SliceSide, m: usize, l: usize) -> Result<(Realization, SSpaceMap)> {
    PointedSpace::new(w.clone(), x)?;
    let f1 = f(1);
    let (pinned, free) = match side {
        SliceSide::Under => (0u32, 1u32),
        SliceSide::Over => (1, 0),
    };
    let yd = is_discrete(w);
    let (m, _) = level_cap(w, &f1, m);
    let target = w.clone();
    let pin = Box::new(move |s: &Bisimplex| {
        if s.cell == pinned {
            Some(target.point(x, s.degree()))
        } else {
            None
        }
    });
    let e = Exponential::new(f1, w.clone(), [m, if yd { 0 } else { l }]).with_pin(pin);
    let r = realize_exp(e, m, l, yd)?;
    let proj = r.eval_vertex_map(free);
    Ok((r, proj))
}

/// `Map(A, B)` with its elements: `l`-simplices are maps `A × Δ[l] → B`,
/// optionally only those over `X` for structure maps `A → X`, `B → X`.
pub struct MapSpace {
    pub complex: Arc<FinSimplicialSet>,
    pub exp: Exponential<2>,
    pub realized: Realized<1, ExpElem<2>>,
}

impl MapSpace {
    pub fn within_range(&self) -> bool {
        !self.exp.hit_bound()
    }

    fn elem(&self, s: &Simplex) -> ExpElem<2> {
        crate::realize::element_of(&SpaceRow(&self.exp), &self.realized.elems, s)
    }

    fn induced(&self, to: &MapSpace, f: impl Fn(&ExpElem<2>) -> ExpElem<2>) -> Morphism<1> {
        let assign = self
            .realized
            .elems
            .iter()
            .map(|e| to.realized.nf[&f(e)])
            .collect();
        Morphism::new_unchecked(self.complex.clone(), to.complex.clone(), assign)
    }

    /// Restriction along `i: A' → A`, into `to = Map(A', B)`.
    pub fn restrict(&self, to: &MapSpace, i: &SSpaceMap) -> Morphism<1> {
        self.induced(to, |e| {
            let deg = e.deg.map(|k| k as usize);
            let (small, big) = (to.exp.product_at(deg), self.exp.product_at(deg));
            let assign = small
                .parts
                .iter()
                .map(|(a, r)| self.exp.value_at(&e.assign, &big.pair(&i.apply(a), r).expect("pairs exist")))
                .collect();
            ExpElem { deg: e.deg, assign }
        })
    }

    /// Composition with `q: B → B'`, into `to = Map(A, B')`.
    pub fn postcompose(&self, to: &MapSpace, q: &SSpaceMap) -> Morphism<1> {
        self.induced(to, |e| ExpElem { deg: e.deg, assign: e.assign.iter().map(|s| q.apply(s)).collect() })
    }

    pub fn vertex_elems(&self) -> Vec<ExpElem<2>> {
        self.complex.ids_of_degree([0]).into_iter().map(|c| self.elem(&self.complex.simp(c))).collect()
    }
}

/// `Map(A, B)` in simplicial degrees `≤ l`. When `B` is discrete every
/// simplicial degree is computed but the result is declared complete.
pub fn map_space(
    a: &Arc<FinSimplicialSpace>,
    b: &Arc<FinSimplicialSpace>,
    l: usize,
    base: Option<(&SSpaceMap, &SSpaceMap)>,
) -> Result<MapSpace> {
    let mut exp = Exponential::new(a.clone(), b.clone(), [0, l]);
    if let Some((pa, pb)) = base {
        exp = exp.over(pa.clone(), pb.clone());
    }
    let realized = realize(&SpaceRow(&exp), [l], [is_discrete(b)])?;
    Ok(MapSpace { complex: Arc::new(realized.complex.clone()), exp, realized })
}

struct SpaceRow<'a>(&'a Exponential<2>);

impl Presheaf<1> for SpaceRow<'_> {
    type Elem = ExpElem<2>;

    fn elements(&self, deg: [usize; 1]) -> Vec<ExpElem<2>> {
        self.0.elements([0, deg[0]])
    }

    fn act(&self, e: &ExpElem<2>, _: usize, theta: &[usize]) -> ExpElem<2> {
        self.0.act(e, 1, theta)
    }

    fn name(&self, e: &ExpElem<2>) -> String {
        self.0.name(e)
    }
}

/// The map `F(n) → X` picking out a level simplex of bidegree `(n, 0)`.
pub fn simplex_map(x: &Arc<FinSimplicialSpace>, s: &Bisimplex) -> SSpaceMap {
    let n = s.deg[0] as usize;
    let r = sset::delta_rep(n);
    let fx = f(n);
    let assign = (0..fx.len() as u32)
        .map(|c| x.act(s, 0, &crate::rep::vertex_list(r.subset(c)[0])))
        .collect();
    Morphism::new_unchecked(fx, x.clone(), assign)
}

/// The spine inclusion `G(n) → F(n)`.
pub fn spine_inclusion(n: usize) -> Result<SSpaceMap> {
    let gn = g(n)?;
    let target = f(n);
    let assign = gn
        .cells()
        .iter()
        .map(|c| {
            let vs: Vec<usize> = c.name.chars().map(|ch| ch.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
            let map = MonotoneMap::new(vs.len() - 1, n, vs).ok()?;
            f_simplex(n, &map).ok()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| domain!("spine inclusion needs n ≤ 9"))?;
    Morphism::new(gn, target, assign)
}

/// The boundary inclusion `∂F(n) → F(n)`.
pub fn boundary_inclusion(n: usize) -> SSpaceMap {
    let r = sset::boundary_rep(n);
    let full = sset::delta_rep(n);
    let inc = r.inclusion_into(&full);
    let assign = inc.assign.iter().map(|s| lift_simplex(s, 0)).collect();
    Morphism::new_unchecked(discrete(&r.complex), f(n), assign)
}

/// `X_{/f}`: the part of the level space `X_m` lying over `f: [m] → [n]`.
pub fn fiber_over(p: &SSpaceMap, n: usize, map: &MonotoneMap) -> Result<(FinSimplicialSet, Level)> {
    let base = f_simplex(n, map)?;
    let m = map.source_size();
    let lv = level(&p.source, m);
    let keep: Vec<bool> = (0..lv.complex.len() as u32)
        .map(|c| {
            let s = lv.from_level(&lv.complex.simp(c));
            let img = p.apply(&s);
            p.target.act(&img, 1, &[0]) == base
        })
        .collect();
    let (sub, _) = lv.complex.subcomplex(&keep)?;
    Ok((sub, lv))
}

/// Vertices of the fiber `X_{/f}` of a discrete `p`, as level simplices of `X`.
pub fn discrete_fiber(p: &SSpaceMap, n: usize, map: &MonotoneMap) -> Result<Vec<Bisimplex>> {
    let base = f_simplex(n, map)?;
    Ok(level_set(&p.source, map.source_size()).into_iter().filter(|s| p.apply(s) == base).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::isomorphic;

    #[test]
    fn standard_levels() {
        let f2 = f(2);
        assert_eq!(level_set(&f2, 1).len(), 6);
        let g2 = g(2).unwrap();
        let names: Vec<String> = level_set(&g2, 1).iter().map(|s| crate::exp::describe(&g2, s)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["00", "01", "11", "12", "22"]);
        assert_eq!(level_set(&g2, 0).len(), 3);
        let e1 = e(1, 4);
        let sizes: Vec<usize> = (0..3).map(|m| level_set(&e1, m).len()).collect();
        assert_eq!(sizes, vec![2, 4, 8]);
    }

    #[test]
    fn rows_and_diagonals() {
        for n in 0..4 {
            let row = Arc::new(first_row(&f(n)));
            assert!(isomorphic(&row, &sset::delta(n)));
        }
        let k = sset::delta(1);
        let c = constant(&k);
        assert_eq!(first_row(&c).len(), 2);
        let dk = Arc::new(diagonal(&c, 3));
        assert!(isomorphic(&dk, &k));
        let ds = Arc::new(diagonal(&f(2), 3));
        assert!(isomorphic(&ds, &sset::delta(2)));
        let p = crate::limits::product(&f(1), &constant(&sset::delta(1)));
        let d = diagonal(&p.complex, 3);
        assert_eq!(d.ids_of_degree([2]).len(), 2);
    }

    #[test]
    fn level_views() {
        let x = f(2);
        let lv = level(&x, 1);
        assert_eq!(lv.complex.len(), 6);
        let t = t_cell(1, 1, 1);
        let lv = level(&t, 1);
        assert_eq!(lv.complex.count_simplices([1]), 12);
        assert_eq!(t.count_simplices([1, 1]), 12);
    }

    #[test]
    fn exponentials() {
        let f1 = f(1);
        let r = exponential(&f1, &f1, 1, 1).unwrap();
        assert_eq!(level_set(&r.space, 0).len(), 3);
        let pt = f(0);
        let r = exponential(&f1, &pt, 2, 0).unwrap();
        assert!(isomorphic(&r.space, &f1));
    }

    #[test]
    fn map_spaces() {
        let x = f(2);
        let m = map_space(&f(0), &x, 1, None).unwrap();
        assert_eq!(m.complex.len(), 3);
        let m = map_space(&f(1), &f(2), 1, None).unwrap();
        assert_eq!(m.complex.len(), 6);
        assert!(m.complex.is_exact());
        let b = map_space(&discrete(&sset::boundary(1)), &f(2), 0, None).unwrap();
        let r = m.restrict(&b, &boundary_inclusion(1));
        r.validate().unwrap();
        assert_eq!(b.complex.len(), 9);
        for n in 2..4 {
            spine_inclusion(n).unwrap().validate().unwrap();
        }
        let e = map_space(&discrete(&sset::empty()), &x, 1, None).unwrap();
        assert_eq!(e.complex.len(), 1);
    }

    #[test]
    fn opposites() {
        let g2 = g(2).unwrap();
        let op = Arc::new(opposite(&g2, 0));
        op.validate().unwrap();
        assert!(isomorphic(&op, &g2));
        let d = sset::delta(2);
        let dop = Arc::new(opposite(&d, 0));
        assert!(isomorphic(&dop, &d));
    }

    #[test]
    fn fibers() {
        let x = f(2);
        let id = Morphism::identity(x.clone());
        for m in 0..3 {
            for map in crate::poset::all_maps(m, 2) {
                let (fib, _) = fiber_over(&id, 2, &map).unwrap();
                assert_eq!(fib.len(), 1);
            }
        }
    }
}
