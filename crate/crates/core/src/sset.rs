//! Finitely presented simplicial sets: standard objects, operators, hom sets,
//! mapping spaces and lifting checks.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{domain, shape, Result};
use crate::exp::Exponential;
use crate::ez::{word_mask, Complex, Morphism, Simp};
use crate::hom::HomSearch;
use crate::poset::MonotoneMap;
use crate::realize::{realize, Presheaf};
use crate::rep::Rep;

pub type FinSimplicialSet = Complex<1>;
pub type Simplex = Simp<1>;
pub type SSetMap = Morphism<1>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Delta(usize),
    Boundary(usize),
    Horn(usize, usize),
    /// Nerve of the contractible groupoid on `l + 1` objects, cut at dimension `t`.
    JTruncated(usize, usize),
    Discrete(Vec<String>),
}

pub fn build_standard(kind: &StandardKind) -> Result<Arc<FinSimplicialSet>> {
    match kind {
        StandardKind::Delta(n) => Ok(delta(*n)),
        StandardKind::Boundary(n) => Ok(boundary(*n)),
        StandardKind::Horn(n, i) => horn(*n, *i),
        StandardKind::JTruncated(l, t) => Ok(j_truncated(*l, *t)),
        StandardKind::Discrete(names) => discrete(names),
    }
}

pub fn delta_rep(n: usize) -> Rep<1> {
    Rep::new([n])
}

pub fn delta(n: usize) -> Arc<FinSimplicialSet> {
    delta_rep(n).complex
}

pub fn boundary_rep(n: usize) -> Rep<1> {
    let full = (1u32 << (n + 1)) - 1;
    Rep::with_filter([n], move |t| t[0] != full)
}

pub fn boundary(n: usize) -> Arc<FinSimplicialSet> {
    boundary_rep(n).complex
}

pub fn horn_rep(n: usize, i: usize) -> Result<Rep<1>> {
    if n == 0 || i > n {
        return Err(domain!("no horn Λ[{n}]_{i}"));
    }
    let full = (1u32 << (n + 1)) - 1;
    let missing = full & !(1 << i);
    Ok(Rep::with_filter([n], move |t| t[0] != full && t[0] != missing))
}

pub fn horn(n: usize, i: usize) -> Result<Arc<FinSimplicialSet>> {
    Ok(horn_rep(n, i)?.complex)
}

/// Sequences of vertices whose consecutive entries are related by `step`.
pub struct Sequences<F> {
    pub names: Vec<String>,
    pub step: F,
}

impl<F: Fn(usize, usize) -> bool + Sync> Presheaf<1> for Sequences<F> {
    type Elem = Vec<usize>;

    fn elements(&self, deg: [usize; 1]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.names.len()).map(|v| vec![v]).collect();
        for _ in 0..deg[0] {
            let mut next = Vec::new();
            for s in &out {
                let last = *s.last().unwrap();
                for v in 0..self.names.len() {
                    if (self.step)(last, v) {
                        let mut t = s.clone();
                        t.push(v);
                        next.push(t);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn act(&self, e: &Vec<usize>, _: usize, theta: &[usize]) -> Vec<usize> {
        theta.iter().map(|&t| e[t]).collect()
    }

    fn name(&self, e: &Vec<usize>) -> String {
        let names: Vec<&str> = e.iter().map(|&v| self.names[v].as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            format!("<{}>", names.join(","))
        }
    }
}

pub fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

/// The nerve of the contractible groupoid `I[l]`, presented up to dimension `t`.
pub fn j_truncated(l: usize, t: usize) -> Arc<FinSimplicialSet> {
    let seqs = Sequences { names: numbered(l + 1), step: |_, _| true };
    let r = realize(&seqs, [t], [l == 0]).expect("sequences are closed under operators");
    Arc::new(r.complex)
}

pub fn discrete(names: &[String]) -> Result<Arc<FinSimplicialSet>> {
    let mut x = Complex::new([None]);
    for n in names {
        x.add_cell(n.clone(), [0], [vec![]])?;
    }
    Ok(Arc::new(x))
}

pub fn empty() -> Arc<FinSimplicialSet> {
    Arc::new(Complex::empty())
}

/// `x · op` in normal form.
pub fn apply_operator(x: &FinSimplicialSet, s: &Simplex, op: &MonotoneMap) -> Result<Simplex> {
    if op.target_size() != s.deg[0] as usize {
        return Err(domain!("operator into [{}] applied to a {}-simplex", op.target_size(), s.deg[0]));
    }
    if s.cell as usize >= x.len() || s.base_degree() != x.cell(s.cell).deg {
        return Err(domain!("not a simplex of this object"));
    }
    Ok(x.act(s, 0, op.values()))
}

/// Parses `"id"` or `"id.s<k>s<j>…"` (indices strictly decreasing).
pub fn parse_simplex<const D: usize>(x: &Complex<D>, text: &str) -> Result<Simp<D>> {
    if let Some(c) = x.find(text) {
        return Ok(x.simp(c));
    }
    if D != 1 {
        return Err(domain!("unknown cell {text}"));
    }
    let Some((base, suffix)) = text.rsplit_once('.') else {
        return Err(domain!("unknown cell {text}"));
    };
    let Some(c) = x.find(base) else {
        return Err(domain!("unknown cell {base}"));
    };
    let word = parse_word(suffix).ok_or_else(|| domain!("bad degeneracy suffix in {text}"))?;
    let mask = word_mask(&word)?;
    let mut s = x.simp(c);
    let k = x.cell(c).deg[0] + word.len();
    if word.iter().any(|&j| j >= k) {
        return Err(domain!("degeneracy index out of range in {text}"));
    }
    s = x.degenerate_by(&s, 0, mask, k);
    Ok(s)
}

pub fn parse_word(suffix: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for part in suffix.split('s').skip(1) {
        out.push(part.parse().ok()?);
    }
    if !suffix.starts_with('s') || out.is_empty() {
        return None;
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct HomSet {
    pub maps: Vec<SSetMap>,
    /// False when the source reaches past the target's known dimensions.
    pub exact: bool,
}

pub fn hom_set(a: &Arc<FinSimplicialSet>, b: &Arc<FinSimplicialSet>) -> HomSet {
    let (maps, exact) = crate::hom::hom_maps(a, b);
    HomSet { maps, exact }
}

#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub space: Arc<FinSimplicialSet>,
    pub within_range: bool,
}

/// `Map(A, B)_l = Hom(A × Δ[l], B)` for `l ≤ l_max`.
pub fn mapping_space(a: &Arc<FinSimplicialSet>, b: &Arc<FinSimplicialSet>, l_max: usize) -> Result<MappingSpace> {
    let e = Exponential::new(a.clone(), b.clone(), [l_max]);
    let r = e.realize([l_max], [false])?;
    Ok(MappingSpace { space: Arc::new(r.complex), within_range: !e.hit_bound() })
}

#[derive(Clone, Debug)]
pub struct LiftResult<const D: usize> {
    pub found: bool,
    pub lift: Option<Morphism<D>>,
    pub squares_checked: usize,
    /// `(u, v)` of the first square without a filler.
    pub failing_square: Option<(Morphism<D>, Morphism<D>)>,
}

fn filler<const D: usize>(p: &Morphism<D>, i: &Morphism<D>, u: &Morphism<D>, v: &Morphism<D>) -> Option<Morphism<D>> {
    let pins = i.assign.iter().zip(&u.assign).map(|(b, y)| (b.cell, *y));
    HomSearch::new(&i.target, &p.source)
        .fix_all(pins)
        .over(v, p)
        .first()
        .map(|a| Morphism::new_unchecked(i.target.clone(), p.source.clone(), a))
}

/// Right lifting of `p: Y → X` against an injective `i: A → B`, either for the
/// given square `(u: A → Y, v: B → X)` or for every square.
pub fn has_rlp<const D: usize>(
    p: &Morphism<D>,
    i: &Morphism<D>,
    square: Option<(&Morphism<D>, &Morphism<D>)>,
) -> Result<LiftResult<D>> {
    if !i.is_injective() {
        return Err(shape!("lifting needs an injective map on the left"));
    }
    if let Some((u, v)) = square {
        for (a, ua) in u.assign.iter().enumerate() {
            if p.apply(ua) != v.apply(&i.assign[a]) {
                return Err(shape!("square does not commute"));
            }
        }
        let lift = filler(p, i, u, v);
        let found = lift.is_some();
        let failing_square = if found { None } else { Some((u.clone(), v.clone())) };
        return Ok(LiftResult { found, lift, squares_checked: 1, failing_square });
    }
    let vs = HomSearch::new(&i.target, &p.target).all().maps;
    let mut checked = 0;
    for va in vs {
        let v = Morphism::new_unchecked(i.target.clone(), p.target.clone(), va);
        let vi = i.then(&v)?;
        let us = HomSearch::new(&i.source, &p.source).over(&vi, p).all().maps;
        for ua in us {
            checked += 1;
            let u = Morphism::new_unchecked(i.source.clone(), p.source.clone(), ua);
            if filler(p, i, &u, &v).is_none() {
                return Ok(LiftResult { found: false, lift: None, squares_checked: checked, failing_square: Some((u, v)) });
            }
        }
    }
    Ok(LiftResult { found: true, lift: None, squares_checked: checked, failing_square: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct KanReport {
    pub fibration_up_to_bound: bool,
    pub trivial_fibration_up_to_bound: bool,
    /// Horns and boundaries of dimension up to this were checked.
    pub verified_range: usize,
    /// False when the objects are not fully known up to the bound.
    pub exact: bool,
    pub failures: Vec<String>,
}

pub fn kan_check(p: &SSetMap, bound: usize) -> Result<KanReport> {
    if bound == 0 {
        return Err(domain!("kan_check needs a bound of at least 1"));
    }
    let mut failures = Vec::new();
    let mut fib = true;
    for n in 1..=bound {
        let full = delta_rep(n);
        for k in 0..=n {
            let h = horn_rep(n, k)?;
            let i = h.inclusion_into(&full);
            let r = has_rlp(p, &i, None)?;
            if !r.found {
                fib = false;
                failures.push(format!("no filler for Λ[{n}]_{k} → Δ[{n}]{}", describe_square(&r)));
            }
        }
    }
    let mut triv = true;
    for n in 0..=bound {
        let full = delta_rep(n);
        let b = boundary_rep(n);
        let i = b.inclusion_into(&full);
        let r = has_rlp(p, &i, None)?;
        if !r.found {
            triv = false;
            failures.push(format!("no filler for ∂Δ[{n}] → Δ[{n}]{}", describe_square(&r)));
        }
    }
    let exact = p.source.knows([bound]) && p.target.knows([bound]);
    Ok(KanReport {
        fibration_up_to_bound: fib,
        trivial_fibration_up_to_bound: triv && fib,
        verified_range: bound,
        exact,
        failures,
    })
}

fn describe_square(r: &LiftResult<1>) -> String {
    match &r.failing_square {
        Some((u, v)) => {
            let top: Vec<String> = u.assign.iter().map(|y| u.target.name_of(y)).collect();
            let bottom = v.assign.last().map(|y| v.target.name_of(y)).unwrap_or_default();
            format!(" (top [{}], bottom {bottom})", top.join(", "))
        }
        None => String::new(),
    }
}

/// The map `Δ[n] → X` classifying an `n`-simplex.
pub fn classifying_map(x: &Arc<FinSimplicialSet>, s: &Simplex) -> SSetMap {
    delta_rep(s.deg[0] as usize).yoneda(x, s)
}

/// Vertex sequence of a simplex of `Δ[n]`.
pub fn delta_vertices(n: usize, s: &Simplex) -> Vec<usize> {
    delta_rep(n).seqs(s)[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{combine, Diagram};

    fn counts(x: &FinSimplicialSet) -> Vec<usize> {
        let top = x.top_degree(0);
        (0..=top).map(|k| x.ids_of_degree([k]).len()).collect()
    }

    #[test]
    fn standard_counts() {
        assert_eq!(counts(&delta(2)), vec![3, 3, 1]);
        assert_eq!(counts(&boundary(1)), vec![2]);
        assert_eq!(counts(&horn(2, 1).unwrap()), vec![3, 2]);
        assert!(horn(2, 3).is_err());
        let j = j_truncated(1, 2);
        assert_eq!((0..3).map(|k| j.count_simplices([k])).collect::<Vec<_>>(), vec![2, 4, 8]);
        assert_eq!(j.trusted(0), Some(2));
        j.validate().unwrap();
    }

    #[test]
    fn operators() {
        let x = delta(2);
        let top = x.simp(6);
        let id = MonotoneMap::identity(2);
        assert_eq!(apply_operator(&x, &top, &id).unwrap(), top);
        let d0 = MonotoneMap::face(2, 0).unwrap();
        let d0b = MonotoneMap::face(1, 0).unwrap();
        let twice = apply_operator(&x, &apply_operator(&x, &top, &d0).unwrap(), &d0b).unwrap();
        let comp = crate::poset::compose(&d0, &d0b).unwrap();
        assert_eq!(twice, apply_operator(&x, &top, &comp).unwrap());
        assert_eq!(x.cell(twice.cell).name, "2");
        let s0 = MonotoneMap::degeneracy(2, 0).unwrap();
        let d0_3 = MonotoneMap::face(3, 0).unwrap();
        let back = apply_operator(&x, &apply_operator(&x, &top, &s0).unwrap(), &d0_3).unwrap();
        assert_eq!(back, top);
        assert!(apply_operator(&x, &top, &d0b).is_err());
    }

    #[test]
    fn combine_examples() {
        let d1 = delta(1);
        let p = combine(Diagram::Product(&d1, &d1)).unwrap();
        assert_eq!(counts(&p.object), vec![4, 5, 2]);
        let d2 = delta(2);
        let pt = delta(0);
        let to_pt = Morphism::constant(d2.clone(), pt.clone(), 0);
        let id_pt = Morphism::identity(pt.clone());
        let pb = combine(Diagram::Pullback(&to_pt, &id_pt)).unwrap();
        assert!(crate::hom::isomorphic(&pb.object, &d2));
        let id1 = Morphism::identity(d1.clone());
        let po = combine(Diagram::Pushout(&id1, &id1)).unwrap();
        assert!(crate::hom::isomorphic(&po.object, &d1));
    }

    #[test]
    fn hom_counts() {
        for n in 0..4 {
            assert_eq!(hom_set(&delta(0), &delta(n)).maps.len(), n + 1);
        }
        assert_eq!(hom_set(&delta(1), &delta(2)).maps.len(), 6);
        assert_eq!(hom_set(&boundary(1), &delta(0)).maps.len(), 1);
    }

    #[test]
    fn mapping_spaces() {
        let b = delta(2);
        let m = mapping_space(&delta(0), &b, 3).unwrap();
        assert_eq!(counts(&m.space), vec![3, 3, 1]);
        let m = mapping_space(&delta(1), &delta(0), 2).unwrap();
        assert_eq!(m.space.len(), 1);
        let m = mapping_space(&boundary(1), &delta(1), 0).unwrap();
        assert_eq!(m.space.count_simplices([0]), 4);
    }

    #[test]
    fn simplex_refs() {
        let x = delta(2);
        let s = parse_simplex(&x, "01.s1s0").unwrap();
        assert_eq!(s.deg, [3]);
        assert_eq!(x.name_of(&s), "01.s1s0");
        assert!(parse_simplex(&x, "01.s0s1").is_err());
        assert!(parse_simplex(&x, "zz").is_err());
    }

    #[test]
    fn lifting() {
        let to_pt = |x: &Arc<FinSimplicialSet>| {
            Morphism::constant(x.clone(), delta(0), 0)
        };
        let d2 = delta_rep(2);
        let inner = horn_rep(2, 1).unwrap().inclusion_into(&d2);
        let outer = horn_rep(2, 0).unwrap().inclusion_into(&d2);
        for n in 0..3 {
            assert!(has_rlp(&to_pt(&delta(n)), &inner, None).unwrap().found);
        }
        let r = has_rlp(&to_pt(&delta(1)), &outer, None).unwrap();
        assert!(!r.found);
        assert!(r.failing_square.is_some());
        let id = Morphism::identity(delta(1));
        assert!(has_rlp(&to_pt(&delta(1)), &id, None).unwrap().found);
    }

    #[test]
    fn kan_examples() {
        let to_pt = |x: &Arc<FinSimplicialSet>| {
            Morphism::constant(x.clone(), delta(0), 0)
        };
        let r = kan_check(&to_pt(&delta(0)), 3).unwrap();
        assert!(r.fibration_up_to_bound && r.trivial_fibration_up_to_bound);
        let r = kan_check(&to_pt(&j_truncated(1, 4)), 3).unwrap();
        assert!(r.fibration_up_to_bound);
        let r = kan_check(&to_pt(&delta(1)), 2).unwrap();
        assert!(!r.fibration_up_to_bound);
    }
}
