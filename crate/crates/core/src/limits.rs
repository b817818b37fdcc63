//! Products, pullbacks and pushouts of presented objects.
//!
//! A nondegenerate simplex of `A × B` is a pair `((a, μ), (b, ν))` of equal
//! degree whose degeneracy masks are disjoint in every direction. Any pair
//! normalizes by factoring out the common part of the two masks.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{shape, Result};
use crate::ez::{masks_with, squeeze_mask, Complex, Morphism, Simp};

/// A product or pullback, with its cells indexed by the pairs they stand for.
#[derive(Clone, Debug)]
pub struct Product<const D: usize> {
    pub complex: Arc<Complex<D>>,
    pub left: Arc<Complex<D>>,
    pub right: Arc<Complex<D>>,
    pub parts: Vec<(Simp<D>, Simp<D>)>,
    lookup: HashMap<(Simp<D>, Simp<D>), u32>,
}

impl<const D: usize> Product<D> {
    /// The simplex standing for the pair `(x, y)`, if it lies in this object.
    pub fn pair(&self, x: &Simp<D>, y: &Simp<D>) -> Option<Simp<D>> {
        if x.deg != y.deg {
            return None;
        }
        let mut xs = *x;
        let mut ys = *y;
        let mut common = [0u32; D];
        for d in 0..D {
            let k = x.deg[d] as usize;
            let kk = x.degen[d] & y.degen[d];
            common[d] = kk;
            let r = k - kk.count_ones() as usize;
            xs.degen[d] = squeeze_mask(x.degen[d], kk, k);
            ys.degen[d] = squeeze_mask(y.degen[d], kk, k);
            xs.deg[d] = r as u8;
            ys.deg[d] = r as u8;
        }
        let cell = *self.lookup.get(&(xs, ys))?;
        Some(Simp { cell, deg: x.deg, degen: common })
    }

    pub fn components(&self, z: &Simp<D>) -> (Simp<D>, Simp<D>) {
        let (x, y) = self.parts[z.cell as usize];
        let mut a = x;
        let mut b = y;
        for d in 0..D {
            let k = z.deg[d] as usize;
            a = self.left.degenerate_by(&a, d, z.degen[d], k);
            b = self.right.degenerate_by(&b, d, z.degen[d], k);
        }
        (a, b)
    }

    pub fn proj_left(&self) -> Morphism<D> {
        let assign = self.parts.iter().map(|p| p.0).collect();
        Morphism::new_unchecked(self.complex.clone(), self.left.clone(), assign)
    }

    pub fn proj_right(&self) -> Morphism<D> {
        let assign = self.parts.iter().map(|p| p.1).collect();
        Morphism::new_unchecked(self.complex.clone(), self.right.clone(), assign)
    }

    /// The map `Z → A ×_X B` induced by `f: Z → A` and `g: Z → B`.
    pub fn universal(&self, f: &Morphism<D>, g: &Morphism<D>) -> Result<Morphism<D>> {
        let mut assign = Vec::with_capacity(f.source.len());
        for c in 0..f.source.len() {
            let z = f.source.simp(c as u32);
            let (x, y) = (f.apply(&z), g.apply(&z));
            match self.pair(&x, &y) {
                Some(p) => assign.push(p),
                None => return Err(shape!("pair ({}, {}) does not lie in the limit", self.left.name_of(&x), self.right.name_of(&y))),
            }
        }
        Ok(Morphism::new_unchecked(f.source.clone(), self.complex.clone(), assign))
    }
}

fn combined_bound<const D: usize>(a: &Complex<D>, b: &Complex<D>) -> [Option<usize>; D] {
    let mut out = [None; D];
    for d in 0..D {
        out[d] = match (a.trusted(d), b.trusted(d)) {
            (None, None) => None,
            (Some(s), None) | (None, Some(s)) => Some(s),
            (Some(s), Some(t)) => Some(s.min(t)),
        };
    }
    out
}

/// Disjoint mask pairs `(μ, ν)` on `k` positions with prescribed popcounts.
fn disjoint_pairs(k: usize, ones_a: usize, ones_b: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for m in masks_with(k, ones_a) {
        for n in masks_with(k, ones_b) {
            if m & n == 0 {
                out.push((m, n));
            }
        }
    }
    out
}

fn build<const D: usize>(
    left: &Arc<Complex<D>>,
    right: &Arc<Complex<D>>,
    pairs: impl Iterator<Item = (u32, u32)>,
    keep: impl Fn(&Simp<D>, &Simp<D>) -> bool,
) -> Result<Product<D>> {
    let bound = combined_bound(left, right);
    let mut found: Vec<(Simp<D>, Simp<D>)> = Vec::new();
    for (a, b) in pairs {
        let ca = left.cell(a);
        let cb = right.cell(b);
        let mut per: Vec<Vec<(usize, u32, u32)>> = Vec::with_capacity(D);
        for d in 0..D {
            let lo = ca.deg[d].max(cb.deg[d]);
            let mut hi = ca.deg[d] + cb.deg[d];
            if let Some(t) = bound[d] {
                hi = hi.min(t);
            }
            let mut opts = Vec::new();
            for k in lo..=hi {
                for (m, n) in disjoint_pairs(k, k - ca.deg[d], k - cb.deg[d]) {
                    opts.push((k, m, n));
                }
            }
            per.push(opts);
        }
        if per.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; D];
        loop {
            let mut x = Simp { cell: a, deg: [0; D], degen: [0; D] };
            let mut y = Simp { cell: b, deg: [0; D], degen: [0; D] };
            for d in 0..D {
                let (k, m, n) = per[d][idx[d]];
                x.deg[d] = k as u8;
                y.deg[d] = k as u8;
                x.degen[d] = m;
                y.degen[d] = n;
            }
            if keep(&x, &y) {
                found.push((x, y));
            }
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
    found.sort_by_key(|(x, y)| (x.total_degree(), x.deg, x.cell, y.cell, x.degen, y.degen));
    let mut complex = Complex::new(bound);
    let mut prod = Product {
        complex: Arc::new(Complex::empty()),
        left: left.clone(),
        right: right.clone(),
        parts: Vec::with_capacity(found.len()),
        lookup: HashMap::with_capacity(found.len()),
    };
    for (x, y) in found {
        let mut faces: [Vec<Simp<D>>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            let k = x.deg[d] as usize;
            if k == 0 {
                continue;
            }
            for i in 0..=k {
                let fx = left.face(&x, d, i);
                let fy = right.face(&y, d, i);
                match prod.pair(&fx, &fy) {
                    Some(z) => faces[d].push(z),
                    None => return Err(shape!("face of a product cell is missing")),
                }
            }
        }
        let name = format!("({},{})", left.name_of(&x), right.name_of(&y));
        let id = complex.add_cell(name, x.degree(), faces)?;
        prod.parts.push((x, y));
        prod.lookup.insert((x, y), id);
    }
    prod.complex = Arc::new(complex);
    Ok(prod)
}

pub fn product<const D: usize>(a: &Arc<Complex<D>>, b: &Arc<Complex<D>>) -> Product<D> {
    let pairs = (0..a.len() as u32).flat_map(|x| (0..b.len() as u32).map(move |y| (x, y)));
    build(a, b, pairs, |_, _| true).expect("products of valid presentations are valid")
}

/// `A ×_X B` for `f: A → X` and `g: B → X`.
pub fn pullback<const D: usize>(f: &Morphism<D>, g: &Morphism<D>) -> Result<Product<D>> {
    if !Arc::ptr_eq(&f.target, &g.target) && *f.target != *g.target {
        return Err(shape!("pullback needs a cospan with a common target"));
    }
    let mut by_cell: HashMap<u32, Vec<u32>> = HashMap::new();
    for (b, y) in g.assign.iter().enumerate() {
        by_cell.entry(y.cell).or_default().push(b as u32);
    }
    let pairs: Vec<(u32, u32)> = f
        .assign
        .iter()
        .enumerate()
        .flat_map(|(a, x)| by_cell.get(&x.cell).into_iter().flatten().map(move |&b| (a as u32, b)))
        .collect();
    build(&f.source, &g.source, pairs.into_iter(), |x, y| f.apply(x) == g.apply(y))
}

#[derive(Clone, Debug)]
pub struct Pushout<const D: usize> {
    pub complex: Arc<Complex<D>>,
    pub from_left: Morphism<D>,
    pub from_right: Morphism<D>,
}

/// `A ⊔_C B` for an injective `f: C → A` and any `g: C → B`. The cells of `B`
/// come first with their ids unchanged, then the cells of `A` outside `f(C)`.
pub fn pushout<const D: usize>(f: &Morphism<D>, g: &Morphism<D>) -> Result<Pushout<D>> {
    if !Arc::ptr_eq(&f.source, &g.source) && *f.source != *g.source {
        return Err(shape!("pushout needs a span with a common source"));
    }
    if !f.is_injective() {
        return Err(shape!("pushout needs an injective leg"));
    }
    let a = &f.target;
    let b = &g.target;
    let mut complex = Complex::new(combined_bound(a, b));
    for c in b.cells() {
        complex.add_cell(c.name.clone(), c.deg, c.faces.clone())?;
    }
    let mut image_of: HashMap<u32, u32> = HashMap::new();
    for (c, y) in f.assign.iter().enumerate() {
        image_of.insert(y.cell, c as u32);
    }
    let mut assign: Vec<Simp<D>> = Vec::with_capacity(a.len());
    for (id, cell) in a.cells().iter().enumerate() {
        if let Some(&c) = image_of.get(&(id as u32)) {
            assign.push(g.assign[c as usize]);
            continue;
        }
        let mut faces: [Vec<Simp<D>>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            for z in &cell.faces[d] {
                let mut y = assign[z.cell as usize];
                for e in 0..D {
                    y = complex.degenerate_by(&y, e, z.degen[e], z.deg[e] as usize);
                }
                faces[d].push(y);
            }
        }
        let mut name = cell.name.clone();
        while complex.find(&name).is_some() {
            name.push('\'');
        }
        let nid = complex.add_cell(name, cell.deg, faces)?;
        assign.push(complex.simp(nid));
    }
    let complex = Arc::new(complex);
    let from_right = Morphism::new_unchecked(
        b.clone(),
        complex.clone(),
        (0..b.len() as u32).map(|c| complex.simp(c)).collect(),
    );
    let from_left = Morphism::new_unchecked(a.clone(), complex.clone(), assign);
    Ok(Pushout { complex, from_left, from_right })
}

pub enum Diagram<'a, const D: usize> {
    Product(&'a Arc<Complex<D>>, &'a Arc<Complex<D>>),
    /// A cospan `A → X ← B`.
    Pullback(&'a Morphism<D>, &'a Morphism<D>),
    /// A span `A ← C → B` whose first leg is injective.
    Pushout(&'a Morphism<D>, &'a Morphism<D>),
}

/// A limit or colimit with its canonical maps: projections for products and
/// pullbacks, coprojections `A → P`, `B → P` for pushouts.
#[derive(Clone, Debug)]
pub struct Combined<const D: usize> {
    pub object: Arc<Complex<D>>,
    pub legs: Vec<Morphism<D>>,
}

pub fn combine<const D: usize>(diagram: Diagram<'_, D>) -> Result<Combined<D>> {
    match diagram {
        Diagram::Product(a, b) => {
            let p = product(a, b);
            Ok(Combined { object: p.complex.clone(), legs: vec![p.proj_left(), p.proj_right()] })
        }
        Diagram::Pullback(f, g) => {
            let p = pullback(f, g)?;
            Ok(Combined { object: p.complex.clone(), legs: vec![p.proj_left(), p.proj_right()] })
        }
        Diagram::Pushout(f, g) => {
            let p = pushout(f, g)?;
            Ok(Combined { object: p.complex, legs: vec![p.from_left, p.from_right] })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> Arc<Complex<1>> {
        let mut x = Complex::<1>::empty();
        let a = x.add_cell("0", [0], [vec![]]).unwrap();
        let b = x.add_cell("1", [0], [vec![]]).unwrap();
        let (sa, sb) = (x.simp(a), x.simp(b));
        x.add_cell("01", [1], [vec![sb, sa]]).unwrap();
        Arc::new(x)
    }

    #[test]
    fn square_has_two_triangles() {
        let i = interval();
        let p = product(&i, &i);
        let counts = p.complex.count_by_degree();
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![4, 5, 2]);
        p.complex.validate().unwrap();
        let id = Morphism::identity(i.clone());
        let diag = p.universal(&id, &id).unwrap();
        diag.validate().unwrap();
        p.proj_left().validate().unwrap();
    }

    #[test]
    fn gluing_two_intervals() {
        let i = interval();
        let mut pt = Complex::<1>::empty();
        pt.add_cell("*", [0], [vec![]]).unwrap();
        let pt = Arc::new(pt);
        let end = Morphism::new(pt.clone(), i.clone(), vec![i.simp(1)]).unwrap();
        let start = Morphism::new(pt.clone(), i.clone(), vec![i.simp(0)]).unwrap();
        let po = pushout(&start, &end).unwrap();
        assert_eq!(po.complex.count_by_degree().values().copied().collect::<Vec<_>>(), vec![3, 2]);
        po.complex.validate().unwrap();
        po.from_left.validate().unwrap();
        po.from_right.validate().unwrap();
    }
}
