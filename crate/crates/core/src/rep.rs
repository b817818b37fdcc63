//! Representable objects `Δ[n_0] ⊠ … ⊠ Δ[n_{D-1}]`.
//!
//! A nondegenerate cell is a tuple of nonempty vertex subsets, one per
//! direction, and a simplex is a tuple of monotone vertex sequences.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ez::{epi_mono, surj_values, Complex, Morphism, Simp};

#[derive(Clone, Debug)]
pub struct Rep<const D: usize> {
    pub n: [usize; D],
    pub complex: Arc<Complex<D>>,
    subsets: Vec<[u32; D]>,
    lookup: HashMap<[u32; D], u32>,
}

pub fn vertex_list(set: u32) -> Vec<usize> {
    (0..32).filter(|j| set >> j & 1 == 1).collect()
}

pub fn vertex_word(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        format!("<{}>", parts.join(","))
    }
}

fn subsets_of(n: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (1u32..(1u32 << (n + 1))).collect();
    all.sort_by_key(|&s| (s.count_ones(), vertex_list(s)));
    all
}

impl<const D: usize> Rep<D> {
    pub fn new(n: [usize; D]) -> Self {
        Rep::with_filter(n, |_| true)
    }

    /// Sub-object on the cells accepted by `keep`, which must be closed under faces.
    pub fn with_filter(n: [usize; D], keep: impl Fn(&[u32; D]) -> bool) -> Self {
        let per: Vec<Vec<u32>> = (0..D).map(|d| subsets_of(n[d])).collect();
        let mut tuples: Vec<[u32; D]> = vec![[0; D]];
        for d in 0..D {
            let mut next = Vec::new();
            for t in &tuples {
                for &s in &per[d] {
                    let mut v = *t;
                    v[d] = s;
                    next.push(v);
                }
            }
            tuples = next;
        }
        tuples.retain(|t| keep(t));
        tuples.sort_by_key(|t| {
            let degs: Vec<u32> = t.iter().map(|s| s.count_ones()).collect();
            (degs.iter().sum::<u32>(), degs, t.map(vertex_list))
        });
        let mut complex = Complex::new([None; D]);
        let mut lookup = HashMap::new();
        for t in &tuples {
            let deg: [usize; D] = t.map(|s| s.count_ones() as usize - 1);
            let mut faces: [Vec<Simp<D>>; D] = std::array::from_fn(|_| Vec::new());
            for d in 0..D {
                if deg[d] == 0 {
                    continue;
                }
                for v in vertex_list(t[d]) {
                    let mut f = *t;
                    f[d] &= !(1 << v);
                    let id = lookup[&f];
                    faces[d].push(complex.simp(id));
                }
            }
            let name = if D == 1 {
                vertex_word(&vertex_list(t[0]))
            } else {
                t.iter().map(|&s| vertex_word(&vertex_list(s))).collect::<Vec<_>>().join("|")
            };
            let id = complex.add_cell(name, deg, faces).expect("faces of subsets are subsets");
            lookup.insert(*t, id);
        }
        Rep { n, complex: Arc::new(complex), subsets: tuples, lookup }
    }

    pub fn subset(&self, cell: u32) -> [u32; D] {
        self.subsets[cell as usize]
    }

    pub fn cell_of(&self, subset: &[u32; D]) -> Option<u32> {
        self.lookup.get(subset).copied()
    }

    /// Inclusion of this sub-object into a representable containing it.
    pub fn inclusion_into(&self, full: &Rep<D>) -> Morphism<D> {
        let assign = self
            .subsets
            .iter()
            .map(|t| full.complex.simp(full.lookup[t]))
            .collect();
        Morphism::new_unchecked(self.complex.clone(), full.complex.clone(), assign)
    }

    /// The simplex with the given vertex sequences.
    pub fn simp(&self, seqs: &[Vec<usize>; D]) -> Option<Simp<D>> {
        let mut key = [0u32; D];
        let mut deg = [0u8; D];
        let mut degen = [0u32; D];
        for d in 0..D {
            let (mask, image) = epi_mono(&seqs[d]);
            if image.windows(2).any(|w| w[0] > w[1]) || image.iter().any(|&v| v > self.n[d]) {
                return None;
            }
            key[d] = image.iter().fold(0, |m, &v| m | 1 << v);
            deg[d] = (seqs[d].len() - 1) as u8;
            degen[d] = mask;
        }
        let cell = *self.lookup.get(&key)?;
        Some(Simp { cell, deg, degen })
    }

    pub fn seqs(&self, x: &Simp<D>) -> [Vec<usize>; D] {
        let t = self.subsets[x.cell as usize];
        std::array::from_fn(|d| {
            let vs = vertex_list(t[d]);
            surj_values(x.degen[d], x.deg[d] as usize).into_iter().map(|i| vs[i]).collect()
        })
    }

    pub fn top(&self) -> Simp<D> {
        let seqs: [Vec<usize>; D] = std::array::from_fn(|d| (0..=self.n[d]).collect());
        self.simp(&seqs).expect("the top cell is present")
    }

    /// The map classifying a simplex `x` of degree `n`.
    pub fn yoneda(&self, target: &Arc<Complex<D>>, x: &Simp<D>) -> Morphism<D> {
        debug_assert_eq!(x.degree(), self.n);
        let assign = self
            .subsets
            .iter()
            .map(|t| {
                let mut y = *x;
                for d in 0..D {
                    y = target.act(&y, d, &vertex_list(t[d]));
                }
                y
            })
            .collect();
        Morphism::new_unchecked(self.complex.clone(), target.clone(), assign)
    }

    /// The map to `other` induced by monotone maps `θ_d: [n_d] -> [other.n_d]`.
    pub fn induced(&self, other: &Rep<D>, theta: &[Vec<usize>; D]) -> Morphism<D> {
        let assign = (0..self.complex.len() as u32)
            .map(|c| {
                let s = self.seqs(&self.complex.simp(c));
                let mapped: [Vec<usize>; D] = std::array::from_fn(|d| s[d].iter().map(|&v| theta[d][v]).collect());
                other.simp(&mapped).expect("monotone image")
            })
            .collect();
        Morphism::new_unchecked(self.complex.clone(), other.complex.clone(), assign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_cells() {
        let r = Rep::new([2]);
        let counts: Vec<usize> = r.complex.count_by_degree().values().copied().collect();
        assert_eq!(counts, vec![3, 3, 1]);
        r.complex.validate().unwrap();
        let names: Vec<&str> = r.complex.cells().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["0", "1", "2", "01", "02", "12", "012"]);
        let x = r.simp(&[vec![0, 0, 2]]).unwrap();
        assert_eq!(r.seqs(&x), [vec![0, 0, 2]]);
        assert_eq!(r.complex.name_of(&x), "02.s0");
    }

    #[test]
    fn box_cells() {
        let r = Rep::new([1, 1]);
        assert_eq!(r.complex.len(), 9);
        r.complex.validate().unwrap();
        let top = r.top();
        assert_eq!(top.degree(), [1, 1]);
        let y = r.yoneda(&r.complex, &top);
        y.validate().unwrap();
        assert!(y.is_isomorphism());
    }
}
