//! Presentation of a presheaf given by its elements and operator action.
//!
//! The presheaf is walked in order of total degree. An element is degenerate
//! exactly when it equals `s_i d_i` of itself for some `i`; every other element
//! becomes a cell whose faces are looked up among the normal forms found so far.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{shape, Result};
use crate::ez::{degen_values, face_values, Complex, Simp};

pub trait Presheaf<const D: usize>: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync;

    /// Every element of the given degree, in a deterministic order.
    fn elements(&self, deg: [usize; D]) -> Vec<Self::Elem>;

    /// `e · θ` for `θ` acting in direction `dir`, given by its values.
    fn act(&self, e: &Self::Elem, dir: usize, theta: &[usize]) -> Self::Elem;

    fn name(&self, e: &Self::Elem) -> String;
}

pub struct Realized<const D: usize, E> {
    pub complex: Complex<D>,
    /// The element behind each cell.
    pub elems: Vec<E>,
    pub nf: HashMap<E, Simp<D>>,
}

impl<const D: usize, E: Clone + Eq + Hash> Realized<D, E> {
    pub fn simp_of(&self, e: &E) -> Option<Simp<D>> {
        self.nf.get(e).copied()
    }
}

/// Element of the presheaf represented by a simplex.
pub fn element_of<const D: usize, P: Presheaf<D>>(p: &P, elems: &[P::Elem], x: &Simp<D>) -> P::Elem {
    let mut e = elems[x.cell as usize].clone();
    for d in 0..D {
        if x.degen[d] != 0 {
            let vals = crate::ez::surj_values(x.degen[d], x.deg[d] as usize);
            e = p.act(&e, d, &vals);
        }
    }
    e
}

/// Degrees `≤ max` ordered by total degree, then lexicographically.
pub fn degrees_upto<const D: usize>(max: [usize; D]) -> Vec<[usize; D]> {
    let mut out = vec![[0usize; D]];
    for d in 0..D {
        let mut next = Vec::new();
        for base in &out {
            for k in 0..=max[d] {
                let mut v = *base;
                v[d] = k;
                next.push(v);
            }
        }
        out = next;
    }
    out.sort_by_key(|v| (v.iter().sum::<usize>(), *v));
    out
}

enum Shape<E, const D: usize> {
    Degenerate { dir: usize, index: usize, face: E },
    Cell { faces: [Vec<E>; D] },
}

/// Builds the presentation up to `max`; directions flagged `exact` are
/// declared complete, the others are bounded at `max`.
pub fn realize<const D: usize, P: Presheaf<D>>(
    p: &P,
    max: [usize; D],
    exact: [bool; D],
) -> Result<Realized<D, P::Elem>> {
    let mut bound = [None; D];
    for d in 0..D {
        if !exact[d] {
            bound[d] = Some(max[d]);
        }
    }
    let mut complex = Complex::new(bound);
    let mut elems = Vec::new();
    let mut nf: HashMap<P::Elem, Simp<D>> = HashMap::new();
    for deg in degrees_upto(max) {
        let items = p.elements(deg);
        let shapes: Vec<Shape<P::Elem, D>> = items.par_iter().map(|e| classify(p, e, deg)).collect();
        for (e, sh) in items.into_iter().zip(shapes) {
            match sh {
                Shape::Degenerate { dir, index, face } => {
                    let Some(z) = nf.get(&face) else {
                        return Err(shape!("face of {} missing from lower degrees", p.name(&e)));
                    };
                    let z = *z;
                    let x = complex.degeneracy(&z, dir, index);
                    nf.insert(e, x);
                }
                Shape::Cell { faces } => {
                    let mut fs: [Vec<Simp<D>>; D] = std::array::from_fn(|_| Vec::new());
                    for d in 0..D {
                        for f in &faces[d] {
                            match nf.get(f) {
                                Some(z) => fs[d].push(*z),
                                None => return Err(shape!("face of {} missing from lower degrees", p.name(&e))),
                            }
                        }
                    }
                    let mut name = p.name(&e);
                    if complex.find(&name).is_some() {
                        name = format!("{name}#{}", complex.len());
                    }
                    let id = complex.add_cell(name, deg, fs)?;
                    nf.insert(e.clone(), complex.simp(id));
                    elems.push(e);
                }
            }
        }
    }
    Ok(Realized { complex, elems, nf })
}

fn classify<const D: usize, P: Presheaf<D>>(p: &P, e: &P::Elem, deg: [usize; D]) -> Shape<P::Elem, D> {
    let mut faces: [Vec<P::Elem>; D] = std::array::from_fn(|_| Vec::new());
    for d in 0..D {
        let k = deg[d];
        if k == 0 {
            continue;
        }
        for i in 0..=k {
            faces[d].push(p.act(e, d, &face_values(k, i)));
        }
        for i in 0..k {
            if p.act(&faces[d][i], d, &degen_values(k - 1, i)) == *e {
                return Shape::Degenerate { dir: d, index: i, face: faces[d][i].clone() };
            }
        }
    }
    Shape::Cell { faces }
}
