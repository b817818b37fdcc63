//! Homotopy evidence: components, rational homology, and the contractibility
//! and equivalence predicates built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::sset::{FinSimplicialSet, SSetMap};

pub const DEFAULT_K_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Exact,
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub tier: Tier,
    pub reason: String,
}

impl Verdict {
    fn exact(value: bool, reason: impl Into<String>) -> Self {
        Verdict { value, tier: Tier::Exact, reason: reason.into() }
    }

    fn bounded(value: bool, reason: impl Into<String>) -> Self {
        Verdict { value, tier: Tier::Bounded, reason: reason.into() }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Classes of `0..n` generated by the given pairs, in order of least member.
pub fn classes(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        let r = uf.find(x);
        by_root.entry(r).or_default().push(x);
    }
    by_root.into_values().collect()
}

/// Connected components as lists of vertex cells.
pub fn pi0(s: &FinSimplicialSet) -> Vec<Vec<u32>> {
    let verts = s.ids_of_degree([0]);
    let index: std::collections::HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = s.ids_of_degree([1]).into_iter().map(|e| {
        let f = &s.cell(e).faces[0];
        (index[&f[0].cell], index[&f[1].cell])
    });
    classes(verts.len(), edges)
        .into_iter()
        .map(|c| c.into_iter().map(|i| verts[i]).collect())
        .collect()
}

/// Component index of each vertex cell.
fn component_of(s: &FinSimplicialSet) -> std::collections::HashMap<u32, usize> {
    pi0(s)
        .into_iter()
        .enumerate()
        .flat_map(|(i, c)| c.into_iter().map(move |v| (v, i)))
        .collect()
}

/// Normalized chains: nondegenerate cells, boundary matrices `∂_k` with
/// rows indexed by `(k-1)`-cells and columns by `k`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

impl ChainComplexQ {
    pub fn new(s: &FinSimplicialSet, k_max: usize) -> Self {
        let ids: Vec<Vec<u32>> = (0..=k_max).map(|k| s.ids_of_degree([k])).collect();
        let dims = ids.iter().map(|v| v.len()).collect();
        let mut boundaries = vec![Vec::new()];
        for k in 1..=k_max {
            let rows: std::collections::HashMap<u32, usize> =
                ids[k - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut m = vec![vec![0i64; ids[k].len()]; ids[k - 1].len()];
            for (j, &c) in ids[k].iter().enumerate() {
                for (i, f) in s.cell(c).faces[0].iter().enumerate() {
                    if f.is_nondegenerate() {
                        m[rows[&f.cell]][j] += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplexQ { dims, boundaries }
    }

    /// Whether every composite `∂_{k-1} ∘ ∂_k` vanishes.
    pub fn boundary_squares_vanish(&self) -> bool {
        (2..self.boundaries.len()).all(|k| {
            let a = &self.boundaries[k - 1];
            let b = &self.boundaries[k];
            (0..self.dims[k - 2]).all(|i| {
                (0..self.dims[k]).all(|j| (0..self.dims[k - 1]).map(|t| a[i][t] * b[t][j]).sum::<i64>() == 0)
            })
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(|m| rank(m)).collect()
    }

    /// `b_k = dim ker ∂_k − rank ∂_{k+1}` for `k < dims.len() - 1`.
    pub fn betti(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..self.dims.len() - 1).map(|k| self.dims[k] - r[k] - r[k + 1]).collect()
    }
}

/// Rank by fraction-free elimination.
pub fn rank(m: &[Vec<i64>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub values: Vec<usize>,
    /// Set when some degree `≤ k_max + 1` lies beyond the trusted range.
    pub bounded: bool,
}

pub fn betti(s: &FinSimplicialSet, k_max: usize) -> Betti {
    let c = ChainComplexQ::new(s, k_max + 1);
    let bounded = s.trusted(0).is_some_and(|t| t < k_max + 1);
    Betti { values: c.betti(), bounded }
}

fn all_points(s: &FinSimplicialSet) -> bool {
    s.is_exact() && s.cells().iter().all(|c| c.deg[0] == 0)
}

pub fn contractible_evidence(s: &FinSimplicialSet, k_max: usize) -> Verdict {
    if s.is_empty() {
        return Verdict::exact(false, "empty");
    }
    let comps = pi0(s).len();
    if comps != 1 {
        return Verdict::exact(false, format!("{comps} components"));
    }
    if all_points(s) {
        return Verdict::exact(true, "a single point");
    }
    let b = betti(s, k_max);
    match b.values.iter().enumerate().skip(1).find(|(_, &v)| v != 0) {
        Some((k, v)) if s.trusted(0).is_none_or(|t| t > k) => Verdict::exact(false, format!("b{k} = {v}")),
        Some((k, v)) => Verdict::bounded(false, format!("b{k} = {v} at the edge of the trusted range")),
        None => Verdict::bounded(true, format!("connected, b1..b{k_max} vanish")),
    }
}

pub fn weak_equivalence_evidence(f: &SSetMap, k_max: usize) -> Verdict {
    let (src, tgt) = (&f.source, &f.target);
    let cs = component_of(src);
    let ct = component_of(tgt);
    let ns = pi0(src).len();
    let nt = pi0(tgt).len();
    let mut hit = vec![None; nt];
    for (&v, &c) in &cs {
        let img = f.assign[v as usize].cell;
        let t = ct[&img];
        match hit[t] {
            Some(prev) if prev != c => return Verdict::exact(false, "two components merge"),
            _ => hit[t] = Some(c),
        }
    }
    if ns != nt || hit.iter().any(Option::is_none) {
        return Verdict::exact(false, format!("components {ns} vs {nt}"));
    }
    if all_points(src) && all_points(tgt) {
        return Verdict::exact(true, "bijection of discrete sets");
    }
    let (bs, bt) = (betti(src, k_max), betti(tgt, k_max));
    if bs.values != bt.values {
        return Verdict::bounded(false, format!("betti {:?} vs {:?}", bs.values, bt.values));
    }
    Verdict::bounded(true, format!("components match, betti agree through degree {k_max}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, delta, empty, j_truncated};

    #[test]
    fn components() {
        assert_eq!(pi0(&delta(3)).len(), 1);
        assert_eq!(pi0(&boundary(1)).len(), 2);
        assert!(pi0(&empty()).is_empty());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti(&delta(3), 3).values, vec![1, 0, 0, 0]);
        assert_eq!(betti(&boundary(2), 1).values, vec![1, 1]);
        assert_eq!(betti(&boundary(3), 2).values, vec![1, 0, 1]);
        let j = j_truncated(1, 5);
        let b = betti(&j, 3);
        assert_eq!(b.values, vec![1, 0, 0, 0]);
        assert!(!b.bounded);
        for s in [delta(2), boundary(3), j] {
            assert!(ChainComplexQ::new(&s, 4).boundary_squares_vanish());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]), 3);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn evidence() {
        let v = contractible_evidence(&empty(), 3);
        assert!(!v.value && v.tier == Tier::Exact);
        assert!(contractible_evidence(&delta(3), 3).value);
        assert!(!contractible_evidence(&boundary(2), 3).value);
        let id = SSetMap::identity(boundary(2));
        assert!(weak_equivalence_evidence(&id, 3).value);
        let collapse = SSetMap::constant(delta(1), delta(0), 0);
        assert!(weak_equivalence_evidence(&collapse, 3).value);
    }
}
