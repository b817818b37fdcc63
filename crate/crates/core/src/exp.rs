//! Function objects `Y^X` with `(Y^X)_n = Hom(X × Δ[n], Y)`, optionally with
//! part of the map pinned or the whole map constrained to lie over a base.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::ez::{Complex, Morphism, Simp};
use crate::hom::HomSearch;
use crate::limits::{product, Product};
use crate::realize::{degrees_upto, realize, Presheaf, Realized};
use crate::rep::{vertex_word, Rep};

/// Pins the image of the cells of `X × Δ[n]` by their `X`-component; the
/// returned simplex must have the same degree as its argument.
pub type Pin<const D: usize> = Box<dyn Fn(&Simp<D>) -> Option<Simp<D>> + Send + Sync>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpElem<const D: usize> {
    pub deg: [u8; D],
    pub assign: Vec<Simp<D>>,
}

pub struct Exponential<const D: usize> {
    pub source: Arc<Complex<D>>,
    pub target: Arc<Complex<D>>,
    reps: HashMap<[usize; D], (Rep<D>, Product<D>)>,
    pin: Option<Pin<D>>,
    over: Option<(Morphism<D>, Morphism<D>)>,
    inexact: AtomicBool,
    moves: RwLock<HashMap<([usize; D], usize, Vec<usize>), Arc<Vec<Simp<D>>>>>,
}

impl<const D: usize> Exponential<D> {
    /// Prepares every `X × Δ[n]` with `n ≤ max`.
    pub fn new(source: Arc<Complex<D>>, target: Arc<Complex<D>>, max: [usize; D]) -> Self {
        let reps = degrees_upto(max)
            .into_iter()
            .map(|deg| {
                let r = Rep::new(deg);
                let p = product(&source, &r.complex);
                (deg, (r, p))
            })
            .collect();
        Exponential {
            source,
            target,
            reps,
            pin: None,
            over: None,
            inexact: AtomicBool::new(false),
            moves: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_pin(mut self, pin: Pin<D>) -> Self {
        self.pin = Some(pin);
        self
    }

    /// Only maps `H` with `q ∘ H = p ∘ pr_X` for `p: X → B`, `q: Y → B`.
    pub fn over(mut self, p: Morphism<D>, q: Morphism<D>) -> Self {
        self.over = Some((p, q));
        self
    }

    /// Whether some hom enumeration reached past the target's known range.
    pub fn hit_bound(&self) -> bool {
        self.inexact.load(Ordering::Relaxed)
    }

    pub fn product_at(&self, deg: [usize; D]) -> &Product<D> {
        &self.reps[&deg].1
    }

    pub fn rep_at(&self, deg: [usize; D]) -> &Rep<D> {
        &self.reps[&deg].0
    }

    /// Image of a simplex `z` of `X × Δ[n]` under the map with the given cell images.
    pub fn value_at(&self, assign: &[Simp<D>], z: &Simp<D>) -> Simp<D> {
        let mut y = assign[z.cell as usize];
        for d in 0..D {
            y = self.target.degenerate_by(&y, d, z.degen[d], z.deg[d] as usize);
        }
        y
    }

    /// `H(x, top)` for a simplex `x` of `X` of the element's degree.
    pub fn eval(&self, e: &ExpElem<D>, x: &Simp<D>) -> Simp<D> {
        let deg = e.deg.map(|k| k as usize);
        let (r, p) = &self.reps[&deg];
        let z = p.pair(x, &r.top()).expect("x has the element's degree");
        self.value_at(&e.assign, &z)
    }

    /// Evaluation at a vertex `v` of `X`, as a map of the realized object into `Y`.
    pub fn eval_vertex(&self, e: &ExpElem<D>, v: u32) -> Simp<D> {
        let mut x = self.source.simp(v);
        for d in 0..D {
            let k = e.deg[d] as usize;
            x = self.source.degenerate_by(&x, d, (1u32 << k) - 1, k);
        }
        self.eval(e, &x)
    }

    fn cell_move(&self, deg: [usize; D], dir: usize, theta: &[usize]) -> Arc<Vec<Simp<D>>> {
        let key = (deg, dir, theta.to_vec());
        if let Some(m) = self.moves.read().unwrap().get(&key) {
            return m.clone();
        }
        let mut new_deg = deg;
        new_deg[dir] = theta.len() - 1;
        let (r_new, p_new) = &self.reps[&new_deg];
        let (r_old, p_old) = &self.reps[&deg];
        let m: Vec<Simp<D>> = p_new
            .parts
            .iter()
            .map(|(x, r)| {
                let mut s = r_new.seqs(r);
                s[dir] = s[dir].iter().map(|&v| theta[v]).collect();
                let r2 = r_old.simp(&s).expect("monotone image");
                p_old.pair(x, &r2).expect("products contain all pairs")
            })
            .collect();
        let m = Arc::new(m);
        self.moves.write().unwrap().insert(key, m.clone());
        m
    }

    /// Realizes the object in degrees `≤ max`.
    pub fn realize(&self, max: [usize; D], exact: [bool; D]) -> Result<Realized<D, ExpElem<D>>> {
        realize(self, max, exact)
    }
}

impl<const D: usize> Presheaf<D> for Exponential<D> {
    type Elem = ExpElem<D>;

    fn elements(&self, deg: [usize; D]) -> Vec<ExpElem<D>> {
        let Some((_, p)) = self.reps.get(&deg) else {
            return Vec::new();
        };
        let mut search = HomSearch::new(&p.complex, &self.target);
        if let Some(pin) = &self.pin {
            let pins: Vec<(u32, Simp<D>)> = p
                .parts
                .iter()
                .enumerate()
                .filter_map(|(z, (x, _))| pin(x).map(|s| (z as u32, s)))
                .collect();
            search = search.fix_all(pins);
        }
        let base;
        if let Some((pb, qb)) = &self.over {
            base = p.proj_left().then(pb).expect("structure map out of the source");
            search = search.over(&base, qb);
        }
        let res = search.all();
        if !res.exact {
            self.inexact.store(true, Ordering::Relaxed);
        }
        let deg8 = deg.map(|k| k as u8);
        res.maps.into_iter().map(|assign| ExpElem { deg: deg8, assign }).collect()
    }

    fn act(&self, e: &ExpElem<D>, dir: usize, theta: &[usize]) -> ExpElem<D> {
        let deg = e.deg.map(|k| k as usize);
        let mv = self.cell_move(deg, dir, theta);
        let assign = mv.iter().map(|z| self.value_at(&e.assign, z)).collect();
        let mut nd = e.deg;
        nd[dir] = (theta.len() - 1) as u8;
        ExpElem { deg: nd, assign }
    }

    fn name(&self, e: &ExpElem<D>) -> String {
        let deg = e.deg.map(|k| k as usize);
        let p = &self.reps[&deg].1;
        if p.complex.is_empty() {
            return "∅".into();
        }
        let top = p.complex.cells().iter().map(|c| c.deg.iter().sum::<usize>()).max().unwrap_or(0);
        let words: Vec<String> = p
            .complex
            .cells()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.deg.iter().sum::<usize>() == top)
            .map(|(z, _)| describe(&self.target, &e.assign[z]))
            .collect();
        words.join("|")
    }
}

/// Vertex word of a simplex, reading vertices along direction 0.
pub fn describe<const D: usize>(x: &Complex<D>, s: &Simp<D>) -> String {
    let k = s.deg[0] as usize;
    let mut names = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut v = x.act(s, 0, &[j]);
        for d in 1..D {
            v = x.act(&v, d, &[0]);
        }
        names.push(x.cell(v.cell).name.clone());
    }
    let nums: Option<Vec<usize>> = names.iter().map(|n| n.parse().ok()).collect();
    match nums {
        Some(vs) => vertex_word(&vs),
        None if names.iter().all(|n| n.chars().count() == 1) => names.concat(),
        None => format!("<{}>", names.join(",")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_space_of_points() {
        let d1 = Rep::new([1]).complex;
        let d0 = Rep::new([0]).complex;
        let e = Exponential::new(d0.clone(), d1.clone(), [2]);
        let r = e.realize([2], [false]).unwrap();
        assert_eq!(r.complex.count_by_degree().values().copied().collect::<Vec<_>>(), vec![2, 1]);
        let e = Exponential::new(d1.clone(), d0, [1]);
        let r = e.realize([1], [false]).unwrap();
        assert_eq!(r.complex.len(), 1);
        let e = Exponential::new(d1.clone(), d1, [0]);
        let r = e.realize([0], [false]).unwrap();
        assert_eq!(r.complex.len(), 3);
    }
}
