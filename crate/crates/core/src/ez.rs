//! Eilenberg–Zilber presentations of presheaves on `Δ^D`.
//!
//! A presented object stores only nondegenerate cells together with their faces
//! in each direction. Every simplex is a pair `(cell, η)` where `η` is a tuple of
//! surjections, one per direction. A surjection `[k] -> [c]` is stored as a bit
//! mask over `0..k` with bit `j` set iff `η(j) = η(j+1)`.
//!
//! `D = 1` gives simplicial sets, `D = 2` gives simplicial spaces with direction
//! 0 the level (horizontal) direction and direction 1 the space direction.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, shape, Result};

/// A simplex in normal form: a nondegenerate cell and a degeneracy mask per direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simp<const D: usize> {
    pub cell: u32,
    #[serde(with = "serde_arrays")]
    pub deg: [u8; D],
    #[serde(with = "serde_arrays")]
    pub degen: [u32; D],
}

mod serde_arrays {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, T: Serialize, const D: usize>(
        a: &[T; D],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        a.as_slice().serialize(s)
    }

    pub fn deserialize<'de, De, T, const D: usize>(d: De) -> Result<[T; D], De::Error>
    where
        De: Deserializer<'de>,
        T: Deserialize<'de> + Copy + Default,
    {
        let v = Vec::<T>::deserialize(d)?;
        if v.len() != D {
            return Err(serde::de::Error::custom(format!("expected {D} entries")));
        }
        let mut out = [T::default(); D];
        out.copy_from_slice(&v);
        Ok(out)
    }
}

impl<const D: usize> Simp<D> {
    pub fn degree(&self) -> [usize; D] {
        self.deg.map(|d| d as usize)
    }

    pub fn total_degree(&self) -> usize {
        self.deg.iter().map(|&d| d as usize).sum()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degen.iter().all(|&m| m == 0)
    }

    /// Degree of the underlying cell.
    pub fn base_degree(&self) -> [usize; D] {
        let mut out = [0; D];
        for d in 0..D {
            out[d] = self.deg[d] as usize - self.degen[d].count_ones() as usize;
        }
        out
    }
}

/// Degeneracy word of a mask: the set positions in decreasing order.
pub fn mask_word(mask: u32) -> Vec<usize> {
    (0..32).rev().filter(|j| mask >> j & 1 == 1).collect()
}

pub fn word_mask(word: &[usize]) -> Result<u32> {
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return Err(domain!("degeneracy word {word:?} is not strictly decreasing"));
    }
    if word.iter().any(|&j| j >= 31) {
        return Err(domain!("degeneracy index too large in {word:?}"));
    }
    Ok(word.iter().fold(0, |m, &j| m | 1 << j))
}

/// Values of the surjection `[k] -> [k - popcount]` described by `mask`.
pub fn surj_values(mask: u32, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k + 1);
    let mut v = 0;
    out.push(0);
    for j in 0..k {
        if mask >> j & 1 == 0 {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Image of `j` under the surjection with this mask.
#[inline]
pub fn surj_at(mask: u32, j: usize) -> usize {
    j - (mask & ((1u32 << j) - 1)).count_ones() as usize
}

/// Mask of `μ ∘ ε` for `ε: [k] -> [r]` with mask `a` and `μ` out of `[r]` with mask `b`.
#[inline]
pub fn compose_masks(a: u32, b: u32, k: usize) -> u32 {
    if b == 0 {
        return a;
    }
    let mut out = a;
    for j in 0..k {
        if a >> j & 1 == 0 && b >> surj_at(a, j) & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

/// Remove the bit positions in `remove` from `mask`, packing the rest down.
#[inline]
pub fn squeeze_mask(mask: u32, remove: u32, k: usize) -> u32 {
    let mut out = 0;
    let mut t = 0;
    for j in 0..k {
        if remove >> j & 1 == 1 {
            continue;
        }
        if mask >> j & 1 == 1 {
            out |= 1 << t;
        }
        t += 1;
    }
    out
}

/// All masks on `k` positions with exactly `ones` bits set, ascending.
pub fn masks_with(k: usize, ones: usize) -> Vec<u32> {
    if ones > k {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(k: usize, start: usize, left: usize, cur: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for j in start..=k - left {
            rec(k, j + 1, left - 1, cur | 1 << j, out);
        }
    }
    rec(k, 0, ones, 0, &mut out);
    out.sort_unstable();
    out
}

/// Epi-mono split of a monotone sequence: the surjection mask and the image.
pub fn epi_mono(values: &[usize]) -> (u32, Vec<usize>) {
    let mut mask = 0;
    let mut image = Vec::with_capacity(values.len());
    image.push(values[0]);
    for j in 1..values.len() {
        if values[j] == values[j - 1] {
            mask |= 1 << (j - 1);
        } else {
            image.push(values[j]);
        }
    }
    (mask, image)
}

pub fn face_values(k: usize, i: usize) -> Vec<usize> {
    (0..k).map(|j| if j < i { j } else { j + 1 }).collect()
}

pub fn degen_values(k: usize, i: usize) -> Vec<usize> {
    (0..=k + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell<const D: usize> {
    pub name: String,
    pub deg: [usize; D],
    pub faces: [Vec<Simp<D>>; D],
}

/// A finitely presented object. `bound[d] = None` means the presentation is
/// complete in direction `d`; `Some(t)` means only degrees `≤ t` are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<const D: usize> {
    cells: Vec<Cell<D>>,
    bound: [Option<usize>; D],
    by_name: HashMap<String, u32>,
}

impl<const D: usize> Complex<D> {
    pub fn new(bound: [Option<usize>; D]) -> Self {
        Complex { cells: Vec::new(), bound, by_name: HashMap::new() }
    }

    pub fn empty() -> Self {
        Complex::new([None; D])
    }

    /// Adds a cell whose faces are already present. Names must be unique.
    pub fn add_cell(&mut self, name: impl Into<String>, deg: [usize; D], faces: [Vec<Simp<D>>; D]) -> Result<u32> {
        let name = name.into();
        for d in 0..D {
            let want = if deg[d] == 0 { 0 } else { deg[d] + 1 };
            if faces[d].len() != want {
                return Err(shape!("cell {name}: expected {want} faces in direction {d}, got {}", faces[d].len()));
            }
            for f in &faces[d] {
                if f.cell as usize >= self.cells.len() {
                    return Err(shape!("cell {name}: face refers to unknown cell {}", f.cell));
                }
                let mut want_deg = deg;
                want_deg[d] -= 1;
                if f.degree() != want_deg {
                    return Err(shape!("cell {name}: face of degree {:?}, expected {want_deg:?}", f.degree()));
                }
                if f.base_degree() != self.cells[f.cell as usize].deg {
                    return Err(shape!("cell {name}: malformed face mask"));
                }
            }
        }
        if deg.iter().any(|&k| k > 30) {
            return Err(domain!("cell {name}: degree too large"));
        }
        if self.by_name.contains_key(&name) {
            return Err(shape!("duplicate cell name {name}"));
        }
        let id = self.cells.len() as u32;
        self.by_name.insert(name.clone(), id);
        self.cells.push(Cell { name, deg, faces });
        Ok(id)
    }

    pub fn cells(&self) -> &[Cell<D>] {
        &self.cells
    }

    pub fn cell(&self, id: u32) -> &Cell<D> {
        &self.cells[id as usize]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    pub fn bound(&self) -> [Option<usize>; D] {
        self.bound
    }

    pub fn set_bound(&mut self, bound: [Option<usize>; D]) {
        self.bound = bound;
    }

    pub fn is_exact(&self) -> bool {
        self.bound.iter().all(Option::is_none)
    }

    /// Largest cell degree in direction `d`.
    pub fn top_degree(&self, d: usize) -> usize {
        self.cells.iter().map(|c| c.deg[d]).max().unwrap_or(0)
    }

    /// Largest degree in direction `d` at which all simplices are known, if any.
    pub fn trusted(&self, d: usize) -> Option<usize> {
        self.bound[d]
    }

    pub fn knows(&self, deg: [usize; D]) -> bool {
        (0..D).all(|d| self.bound[d].map_or(true, |t| deg[d] <= t))
    }

    pub fn ids_of_degree(&self, deg: [usize; D]) -> Vec<u32> {
        (0..self.cells.len() as u32).filter(|&c| self.cells[c as usize].deg == deg).collect()
    }

    pub fn count_by_degree(&self) -> std::collections::BTreeMap<[usize; D], usize> {
        let mut out = std::collections::BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.deg).or_insert(0) += 1;
        }
        out
    }

    pub fn simp(&self, cell: u32) -> Simp<D> {
        let c = &self.cells[cell as usize];
        Simp { cell, deg: c.deg.map(|k| k as u8), degen: [0; D] }
    }

    pub fn name_of(&self, x: &Simp<D>) -> String {
        let base = &self.cells[x.cell as usize].name;
        let mut s = base.clone();
        for d in 0..D {
            if x.degen[d] != 0 {
                if D > 1 {
                    s.push(if d == 0 { '~' } else { '^' });
                } else {
                    s.push('.');
                }
                for j in mask_word(x.degen[d]) {
                    s.push_str(&format!("s{j}"));
                }
            }
        }
        s
    }

    /// Applies a surjection (given as mask on `k` positions) in direction `d`.
    pub fn degenerate_by(&self, x: &Simp<D>, d: usize, mask: u32, k: usize) -> Simp<D> {
        let mut out = *x;
        out.degen[d] = compose_masks(mask, x.degen[d], k);
        out.deg[d] = k as u8;
        out
    }

    /// `x · θ` for a monotone `θ: [k] -> [deg_d x]` given by its values.
    pub fn act(&self, x: &Simp<D>, d: usize, theta: &[usize]) -> Simp<D> {
        let n = x.deg[d] as usize;
        debug_assert!(theta.iter().all(|&t| t <= n));
        let k = theta.len() - 1;
        let mut comp = Vec::with_capacity(theta.len());
        for &t in theta {
            comp.push(surj_at(x.degen[d], t));
        }
        let (eps, image) = epi_mono(&comp);
        let z = self.act_inj(x.cell, d, &image);
        let mut out = z;
        out.deg[d] = k as u8;
        out.degen[d] = compose_masks(eps, z.degen[d], k);
        for e in 0..D {
            if e != d {
                out.deg[e] = x.deg[e];
                out.degen[e] = compose_masks(x.degen[e], z.degen[e], x.deg[e] as usize);
            }
        }
        out
    }

    fn act_inj(&self, cell: u32, d: usize, image: &[usize]) -> Simp<D> {
        let c = &self.cells[cell as usize];
        let top = c.deg[d];
        if image.len() == top + 1 {
            return self.simp(cell);
        }
        // peel off the largest missing vertex
        let mut missing = top;
        let mut idx = image.len();
        while idx > 0 && image[idx - 1] == missing {
            idx -= 1;
            missing -= 1;
        }
        let y = c.faces[d][missing];
        let shifted: Vec<usize> = image.iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        self.act(&y, d, &shifted)
    }

    pub fn face(&self, x: &Simp<D>, d: usize, i: usize) -> Simp<D> {
        let k = x.deg[d] as usize;
        debug_assert!(k > 0 && i <= k);
        if x.degen[d] == 0 {
            let y = self.cells[x.cell as usize].faces[d][i];
            let mut out = y;
            for e in 0..D {
                if e != d {
                    out.deg[e] = x.deg[e];
                    out.degen[e] = compose_masks(x.degen[e], y.degen[e], x.deg[e] as usize);
                }
            }
            return out;
        }
        self.act(x, d, &face_values(k, i))
    }

    pub fn degeneracy(&self, x: &Simp<D>, d: usize, i: usize) -> Simp<D> {
        let k = x.deg[d] as usize;
        debug_assert!(i <= k);
        self.degenerate_by(x, d, 1 << i, k + 1)
    }

    /// The totally degenerate simplex of degree `deg` on a vertex.
    pub fn point(&self, vertex: u32, deg: [usize; D]) -> Simp<D> {
        debug_assert!(self.cells[vertex as usize].deg.iter().all(|&k| k == 0));
        Simp { cell: vertex, deg: deg.map(|k| k as u8), degen: deg.map(|k| ((1u64 << k) - 1) as u32) }
    }

    /// The `j`-th vertex in direction `d`.
    pub fn vertex(&self, x: &Simp<D>, d: usize, j: usize) -> Simp<D> {
        self.act(x, d, &[j])
    }

    /// All simplices of the given degree, cells in id order, masks ascending.
    pub fn simplices(&self, deg: [usize; D]) -> Vec<Simp<D>> {
        let mut out = Vec::new();
        for (id, c) in self.cells.iter().enumerate() {
            if (0..D).any(|d| c.deg[d] > deg[d]) {
                continue;
            }
            let per: Vec<Vec<u32>> = (0..D).map(|d| masks_with(deg[d], deg[d] - c.deg[d])).collect();
            let mut idx = [0usize; D];
            loop {
                let mut degen = [0u32; D];
                for d in 0..D {
                    degen[d] = per[d][idx[d]];
                }
                out.push(Simp { cell: id as u32, deg: deg.map(|k| k as u8), degen });
                let mut d = 0;
                while d < D {
                    idx[d] += 1;
                    if idx[d] < per[d].len() {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
                if d == D {
                    break;
                }
            }
        }
        out
    }

    pub fn count_simplices(&self, deg: [usize; D]) -> usize {
        self.cells
            .iter()
            .filter(|c| (0..D).all(|d| c.deg[d] <= deg[d]))
            .map(|c| (0..D).map(|d| binomial(deg[d], deg[d] - c.deg[d])).product::<usize>())
            .sum()
    }

    /// All faces of `x` in every direction, in direction-major order.
    pub fn all_faces(&self, x: &Simp<D>) -> Vec<Simp<D>> {
        let mut out = Vec::new();
        for d in 0..D {
            let k = x.deg[d] as usize;
            if k > 0 {
                for i in 0..=k {
                    out.push(self.face(x, d, i));
                }
            }
        }
        out
    }

    /// Checks the simplicial identities on stored faces and that no stored
    /// cell is a degeneracy of its own face.
    pub fn validate(&self) -> Result<()> {
        for (id, c) in self.cells.iter().enumerate() {
            let x = self.simp(id as u32);
            for d in 0..D {
                let k = c.deg[d];
                for j in 0..=k {
                    for i in 0..j {
                        if k < 2 {
                            continue;
                        }
                        let a = self.face(&self.face(&x, d, j), d, i);
                        let b = self.face(&self.face(&x, d, i), d, j - 1);
                        if a != b {
                            return Err(shape!("cell {}: d{i}d{j} ≠ d{}d{i} in direction {d}", c.name, j - 1));
                        }
                    }
                }
                for e in d + 1..D {
                    if k == 0 || c.deg[e] == 0 {
                        continue;
                    }
                    for i in 0..=k {
                        for j in 0..=c.deg[e] {
                            let a = self.face(&self.face(&x, d, i), e, j);
                            let b = self.face(&self.face(&x, e, j), d, i);
                            if a != b {
                                return Err(shape!("cell {}: faces in directions {d} and {e} do not commute", c.name));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Renumbered copy keeping the cells marked in `keep`, which must be closed under faces.
    pub fn subcomplex(&self, keep: &[bool]) -> Result<(Complex<D>, Vec<Option<u32>>)> {
        let mut out = Complex::new(self.bound);
        let mut remap = vec![None; self.cells.len()];
        for (id, c) in self.cells.iter().enumerate() {
            if !keep[id] {
                continue;
            }
            let mut faces: [Vec<Simp<D>>; D] = std::array::from_fn(|_| Vec::new());
            for d in 0..D {
                for f in &c.faces[d] {
                    let Some(nc) = remap[f.cell as usize] else {
                        return Err(shape!("subcomplex is not closed under faces at {}", c.name));
                    };
                    faces[d].push(Simp { cell: nc, ..*f });
                }
            }
            remap[id] = Some(out.add_cell(c.name.clone(), c.deg, faces)?);
        }
        Ok((out, remap))
    }

    /// Copy with cells renamed.
    pub fn renamed(&self, mut f: impl FnMut(u32, &Cell<D>) -> String) -> Complex<D> {
        let mut out = self.clone();
        out.by_name.clear();
        for (id, c) in out.cells.iter_mut().enumerate() {
            let mut name = f(id as u32, c);
            if out.by_name.contains_key(&name) {
                name = format!("{name}#{id}");
            }
            c.name = name.clone();
            out.by_name.insert(name, id as u32);
        }
        out
    }

    /// Cell-by-cell equality of presentations up to names.
    pub fn same_presentation(&self, other: &Complex<D>) -> bool {
        self.cells.len() == other.cells.len()
            && self.cells.iter().zip(&other.cells).all(|(a, b)| a.deg == b.deg && a.faces == b.faces)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A map of presented objects, given by the images of the cells.
#[derive(Clone, Debug)]
pub struct Morphism<const D: usize> {
    pub source: Arc<Complex<D>>,
    pub target: Arc<Complex<D>>,
    pub assign: Vec<Simp<D>>,
}

impl<const D: usize> Morphism<D> {
    /// Builds and validates a map.
    pub fn new(source: Arc<Complex<D>>, target: Arc<Complex<D>>, assign: Vec<Simp<D>>) -> Result<Self> {
        let m = Morphism { source, target, assign };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<Complex<D>>, target: Arc<Complex<D>>, assign: Vec<Simp<D>>) -> Self {
        debug_assert_eq!(source.len(), assign.len());
        Morphism { source, target, assign }
    }

    pub fn identity(x: Arc<Complex<D>>) -> Self {
        let assign = (0..x.len() as u32).map(|c| x.simp(c)).collect();
        Morphism { source: x.clone(), target: x, assign }
    }

    /// The constant map onto a vertex of the target.
    pub fn constant(source: Arc<Complex<D>>, target: Arc<Complex<D>>, vertex: u32) -> Self {
        let assign = source.cells().iter().map(|c| target.point(vertex, c.deg)).collect();
        Morphism { source, target, assign }
    }

    pub fn validate(&self) -> Result<()> {
        if self.assign.len() != self.source.len() {
            return Err(shape!("map assigns {} cells, source has {}", self.assign.len(), self.source.len()));
        }
        for (id, c) in self.source.cells().iter().enumerate() {
            let y = self.assign[id];
            if y.cell as usize >= self.target.len() || y.base_degree() != self.target.cell(y.cell).deg {
                return Err(shape!("image of {} is not a simplex of the target", c.name));
            }
            if y.degree() != c.deg {
                return Err(shape!("image of {} has degree {:?}, expected {:?}", c.name, y.degree(), c.deg));
            }
            for d in 0..D {
                for (i, f) in c.faces[d].iter().enumerate() {
                    if self.apply(f) != self.target.face(&y, d, i) {
                        return Err(shape!("map does not commute with face {i} (direction {d}) of {}", c.name));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &Simp<D>) -> Simp<D> {
        let mut y = self.assign[x.cell as usize];
        for d in 0..D {
            y = self.target.degenerate_by(&y, d, x.degen[d], x.deg[d] as usize);
        }
        y
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism<D>) -> Result<Morphism<D>> {
        if !Arc::ptr_eq(&self.target, &g.source) && *self.target != *g.source {
            return Err(crate::error::Error::Composition("maps are not composable".into()));
        }
        let assign = self.assign.iter().map(|y| g.apply(y)).collect();
        Ok(Morphism { source: self.source.clone(), target: g.target.clone(), assign })
    }

    /// Injective on simplices: distinct nondegenerate cells go to distinct nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for y in &self.assign {
            if !y.is_nondegenerate() || seen[y.cell as usize] {
                return false;
            }
            seen[y.cell as usize] = true;
        }
        true
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.len() == self.target.len()
    }

    /// Preimage of a target simplex among all source simplices of that degree.
    pub fn preimage(&self, y: &Simp<D>) -> Vec<Simp<D>> {
        self.source.simplices(y.degree()).into_iter().filter(|x| self.apply(x) == *y).collect()
    }
}

impl<const D: usize> PartialEq for Morphism<D> {
    fn eq(&self, other: &Self) -> bool {
        self.assign == other.assign && *self.source == *other.source && *self.target == *other.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Complex<1> {
        let mut x = Complex::<1>::empty();
        for v in ["0", "1", "2"] {
            x.add_cell(v, [0], [vec![]]).unwrap();
        }
        let v = |i| x.simp(i);
        let (a, b, c) = (v(0), v(1), v(2));
        let e01 = x.add_cell("01", [1], [vec![b, a]]).unwrap();
        let e02 = x.add_cell("02", [1], [vec![c, a]]).unwrap();
        let e12 = x.add_cell("12", [1], [vec![c, b]]).unwrap();
        let f = [x.simp(e12), x.simp(e02), x.simp(e01)];
        x.add_cell("012", [2], [f.to_vec()]).unwrap();
        x
    }

    #[test]
    fn masks() {
        assert_eq!(surj_values(0b010, 3), vec![0, 1, 1, 2]);
        assert_eq!(mask_word(0b101), vec![2, 0]);
        assert_eq!(word_mask(&[2, 0]).unwrap(), 0b101);
        assert!(word_mask(&[0, 2]).is_err());
        assert_eq!(masks_with(3, 1), vec![1, 2, 4]);
        assert_eq!(squeeze_mask(0b1101, 0b0100, 4), 0b101);
        assert_eq!(epi_mono(&[0, 0, 2, 3, 3]), (0b1001, vec![0, 2, 3]));
    }

    #[test]
    fn compose_masks_matches_values() {
        for k in 0..6 {
            for a in 0..(1u32 << k) {
                let r = k - a.count_ones() as usize;
                for b in 0..(1u32 << r) {
                    let ea = surj_values(a, k);
                    let eb = surj_values(b, r);
                    let comp: Vec<usize> = ea.iter().map(|&v| eb[v]).collect();
                    let (m, _) = epi_mono(&comp);
                    assert_eq!(compose_masks(a, b, k), m);
                }
            }
        }
    }

    #[test]
    fn faces_of_triangle() {
        let x = triangle();
        x.validate().unwrap();
        let top = x.simp(6);
        let d0d0 = x.face(&x.face(&top, 0, 0), 0, 0);
        assert_eq!(d0d0, x.simp(2));
        assert_eq!(x.act(&top, 0, &[2]), x.simp(2));
        assert_eq!(x.act(&top, 0, &[0, 2]), x.simp(4));
        let s = x.degeneracy(&top, 0, 1);
        assert_eq!(x.face(&s, 0, 1), top);
        assert_eq!(x.face(&s, 0, 2), top);
        assert_eq!(x.face(&s, 0, 0), x.degeneracy(&x.face(&top, 0, 0), 0, 0));
        assert_eq!(x.count_simplices([2]), x.simplices([2]).len());
        assert_eq!(x.simplices([1]).len(), 6);
    }

    #[test]
    fn morphism_checks_faces() {
        let x = Arc::new(triangle());
        let id = Morphism::identity(x.clone());
        id.validate().unwrap();
        let mut bad = id.assign.clone();
        bad.swap(0, 1);
        assert!(Morphism::new(x.clone(), x, bad).is_err());
    }
}
