//! Right fibrations over `F(n)`: fiber tables, the rigidified replacement
//! whose fibers over end-matching simplices are literally equal, the
//! Grothendieck generator, and the restriction map on mapping spaces.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cat::{FinCategory, SetFunctor, Variance};
use crate::error::{Error, Result};
use crate::ez::{degen_values, face_values, Morphism};
use crate::fib::{self, right_exact};
use crate::hom::find_isomorphism;
use crate::limits::pullback;
use crate::oracle::{betti, pi0, Tier};
use crate::poset::{all_maps, factorize, standard_embedding, MonotoneMap};
use crate::realize::{realize, Presheaf};
use crate::sspace::{discrete, discrete_fiber, f, f_map, f_simplex, fiber_over, is_discrete, level_set, map_space, simplex_map, Bisimplex, FinSimplicialSpace, SSpaceMap};

fn word(values: &[usize]) -> String {
    crate::rep::vertex_word(values)
}

struct GrothendieckPresheaf<'a> {
    n: usize,
    p: &'a SetFunctor,
    arrow: Vec<Vec<usize>>,
}

impl Presheaf<1> for GrothendieckPresheaf<'_> {
    type Elem = (Vec<usize>, usize);

    fn elements(&self, deg: [usize; 1]) -> Vec<(Vec<usize>, usize)> {
        all_maps(deg[0], self.n)
            .into_iter()
            .flat_map(|m| {
                let at = match self.p.variance {
                    Variance::Contravariant => m.last(),
                    Variance::Covariant => m.apply(0),
                };
                (0..self.p.size(at)).map(move |a| (m.values().to_vec(), a))
            })
            .collect()
    }

    fn act(&self, e: &(Vec<usize>, usize), _: usize, theta: &[usize]) -> (Vec<usize>, usize) {
        let (fv, a) = e;
        let g: Vec<usize> = theta.iter().map(|&t| fv[t]).collect();
        let a = match self.p.variance {
            Variance::Contravariant => self.p.apply(self.arrow[*g.last().unwrap()][*fv.last().unwrap()], *a),
            Variance::Covariant => self.p.apply(self.arrow[fv[0]][g[0]], *a),
        };
        (g, a)
    }

    fn name(&self, e: &(Vec<usize>, usize)) -> String {
        let at = match self.p.variance {
            Variance::Contravariant => *e.0.last().unwrap(),
            Variance::Covariant => e.0[0],
        };
        format!("{}:{}", word(&e.0), self.p.sets[at][e.1])
    }
}

/// A discrete fibration over `F(n)` built from a functor on `[n]`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub n: usize,
    pub projection: SSpaceMap,
    /// `(simplex of F(n), element)` behind each cell of the total space.
    pub elems: Vec<(Vec<usize>, usize)>,
}

fn chain_arrows(c: &FinCategory, n: usize) -> Result<Vec<Vec<usize>>> {
    if c.object_count() != n + 1 {
        return Err(Error::Precondition(format!("functor is not defined on [{n}]")));
    }
    Ok((0..=n)
        .map(|i| (0..=n).map(|j| c.hom(i, j).first().copied().unwrap_or(usize::MAX)).collect())
        .collect())
}

/// Contravariant functors give right fibrations, covariant ones left fibrations.
pub fn grothendieck_fibration(p: &SetFunctor) -> Result<Grothendieck> {
    let n = p.base.object_count() - 1;
    let arrow = chain_arrows(&p.base, n)?;
    if (0..=n).any(|i| (i..=n).any(|j| arrow[i][j] == usize::MAX)) {
        return Err(Error::Precondition("functor base is not the chain [n]".into()));
    }
    let pre = GrothendieckPresheaf { n, p, arrow };
    let r = realize(&pre, [n], [true])?;
    let total = discrete(&r.complex);
    let assign = r
        .elems
        .iter()
        .map(|(fv, _)| f_simplex(n, &MonotoneMap::new(fv.len() - 1, n, fv.clone()).expect("monotone")))
        .collect::<Result<Vec<_>>>()?;
    let projection = Morphism::new(total, f(n), assign)?;
    Ok(Grothendieck { n, projection, elems: r.elems })
}

/// A random functor `[n]ᵒᵖ → Set` (or covariant) with value sets of size `≤ max`.
pub fn chain_functor(n: usize, variance: Variance, sizes: &[usize], maps: &[Vec<usize>]) -> Result<SetFunctor> {
    // maps[j] is the structure map between j and j+1 in the functor's direction
    let c = Arc::new(FinCategory::chain(n));
    let sets: Vec<Vec<String>> = sizes.iter().map(|&s| (0..s).map(|k| ((b'a' + k as u8) as char).to_string()).collect()).collect();
    let table = (0..c.arrow_count())
        .map(|a| {
            let (i, j) = (c.src(a), c.tgt(a));
            match variance {
                Variance::Contravariant => (0..sizes[j])
                    .map(|x| (i..j).rev().fold(x, |y, k| maps[k][y]))
                    .collect(),
                Variance::Covariant => (0..sizes[i]).map(|x| (i..j).fold(x, |y, k| maps[k][y])).collect(),
            }
        })
        .collect();
    SetFunctor::new(c, variance, sets, table)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberRow {
    pub simplex: String,
    pub fiber: usize,
    pub end_fiber: usize,
    pub equivalent: bool,
    pub tier: Tier,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub rows: Vec<FiberRow>,
    pub all_equivalent: bool,
}

/// Compares `R_{/f}` with `R_{/f(m)}` for every `f: [m] → [n]`, `m ≤ levels`.
pub fn fiber_equivalence_report(r: &SSpaceMap, n: usize, levels: usize) -> Result<FiberReport> {
    let exact = is_discrete(&r.source);
    let mut rows = Vec::new();
    for m in 0..=levels {
        for fm in all_maps(m, n) {
            let end = MonotoneMap::vertex(n, fm.last())?;
            let row = if exact {
                let fib = discrete_fiber(r, n, &fm)?;
                let end_fib = discrete_fiber(r, n, &end)?;
                let img: std::collections::HashSet<Bisimplex> =
                    fib.iter().map(|y| r.source.act(y, 0, &[m])).collect();
                FiberRow {
                    simplex: word(fm.values()),
                    fiber: fib.len(),
                    end_fiber: end_fib.len(),
                    equivalent: img.len() == fib.len() && fib.len() == end_fib.len(),
                    tier: Tier::Exact,
                }
            } else {
                let (a, _) = fiber_over(r, n, &fm)?;
                let (b, _) = fiber_over(r, n, &end)?;
                let same = pi0(&a).len() == pi0(&b).len() && betti(&a, 2).values == betti(&b, 2).values;
                FiberRow { simplex: word(fm.values()), fiber: a.len(), end_fiber: b.len(), equivalent: same, tier: Tier::Bounded }
            };
            rows.push(row);
        }
    }
    let all_equivalent = rows.iter().all(|r| r.equivalent);
    Ok(FiberReport { rows, all_equivalent })
}

struct StraightPresheaf<'a> {
    n: usize,
    r: &'a FinSimplicialSpace,
    chain: &'a [Vec<Bisimplex>],
    index: Vec<HashMap<Bisimplex, usize>>,
}

impl StraightPresheaf<'_> {
    fn restrict(&self, from: usize, to: usize, idx: usize) -> usize {
        if from == to {
            return idx;
        }
        let theta: Vec<usize> = (0..=to).collect();
        self.index[to][&self.r.act(&self.chain[from][idx], 0, &theta)]
    }
}

impl Presheaf<1> for StraightPresheaf<'_> {
    type Elem = (Vec<usize>, usize);

    fn elements(&self, deg: [usize; 1]) -> Vec<(Vec<usize>, usize)> {
        all_maps(deg[0], self.n)
            .into_iter()
            .flat_map(|m| (0..self.chain[m.last()].len()).map(move |k| (m.values().to_vec(), k)))
            .collect()
    }

    fn act(&self, e: &(Vec<usize>, usize), _: usize, theta: &[usize]) -> (Vec<usize>, usize) {
        let g: Vec<usize> = theta.iter().map(|&t| e.0[t]).collect();
        let k = self.restrict(*e.0.last().unwrap(), *g.last().unwrap(), e.1);
        (g, k)
    }

    fn name(&self, e: &(Vec<usize>, usize)) -> String {
        let top = *e.0.last().unwrap();
        format!("{}:{}", word(&e.0), fib::label(self.r, &self.chain[top][e.1]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StraightenChecks {
    pub functorial: bool,
    pub identity_on_fibers: bool,
    pub comparison_bijective: bool,
    pub commutes: bool,
}

impl StraightenChecks {
    pub fn all(&self) -> bool {
        self.functorial && self.identity_on_fibers && self.comparison_bijective && self.commutes
    }
}

#[derive(Clone, Debug)]
pub struct StraightenedFibration {
    pub n: usize,
    pub original: SSpaceMap,
    pub straightened: SSpaceMap,
    pub comparison: SSpaceMap,
    /// `R_{/0…i}` as level-`i` simplices of the original total space.
    pub chain: Vec<Vec<Bisimplex>>,
    /// `(simplex of F(n), index into the chain fiber)` behind each cell.
    pub elems: Vec<(Vec<usize>, usize)>,
    pub checks: StraightenChecks,
}

#[derive(Serialize)]
pub struct StraightenSummary {
    pub chain: Vec<usize>,
    pub checks: StraightenChecks,
}

impl StraightenedFibration {
    pub fn summary(&self) -> StraightenSummary {
        StraightenSummary { chain: self.chain.iter().map(Vec::len).collect(), checks: self.checks.clone() }
    }

    /// Chain indices of the straightened fiber over vertex `i`.
    pub fn vertex_fiber(&self, i: usize) -> Vec<usize> {
        let sp = &self.straightened;
        let target = f_simplex(self.n, &MonotoneMap::vertex(self.n, i).expect("vertex")).expect("vertex");
        level_set(&sp.source, 0)
            .into_iter()
            .filter(|s| sp.apply(s) == target)
            .map(|s| self.elems[s.cell as usize].1)
            .collect()
    }
}

/// `R^st_m = ∐_{f ∈ F(n)_m} R_{/0…f(m)}` with `θ` acting by
/// `(f, r) ↦ (fθ, se(fθ(k), f(m))^* r)`, and the comparison `(f, r) ↦ p_f^* r`.
pub fn straighten(r: &SSpaceMap, n: usize) -> Result<StraightenedFibration> {
    if !is_discrete(&r.source) || !is_discrete(&r.target) {
        return Err(Error::Precondition("straightening is exact only for discrete fibrations".into()));
    }
    let check = fib::fibration_check(r, fib::Side::Right, fib::Variant::Zeroth, fib::Mode::ExactDiscrete, n + 1, 1)?;
    if !check.verdict {
        return Err(Error::Precondition(format!(
            "not a right fibration: {}",
            check.counterexample.unwrap_or_default()
        )));
    }
    let chain: Vec<Vec<Bisimplex>> =
        (0..=n).map(|i| discrete_fiber(r, n, &standard_embedding(i, n)?)).collect::<Result<_>>()?;
    let index = chain.iter().map(|c| c.iter().enumerate().map(|(k, s)| (*s, k)).collect()).collect();
    let pre = StraightPresheaf { n, r: &r.source, chain: &chain, index };
    let real = realize(&pre, [n], [true])?;
    let total = discrete(&real.complex);
    let proj_assign = real
        .elems
        .iter()
        .map(|(fv, _)| f_simplex(n, &MonotoneMap::new(fv.len() - 1, n, fv.clone())?))
        .collect::<Result<Vec<_>>>()?;
    let straightened = Morphism::new(total.clone(), f(n), proj_assign)?;
    let cmp_assign = real
        .elems
        .iter()
        .map(|(fv, k)| {
            let fm = MonotoneMap::new(fv.len() - 1, n, fv.clone()).expect("monotone");
            let (p, _) = factorize(&fm);
            r.source.act(&chain[fm.last()][*k], 0, p.values())
        })
        .collect();
    let comparison = Morphism::new(total.clone(), r.source.clone(), cmp_assign)?;

    let top = n + 1;
    let functorial = (0..=top).all(|m| {
        let ops: Vec<Vec<usize>> = (0..=m)
            .map(|i| face_values(m, i))
            .chain((0..=m).map(|i| degen_values(m, i)))
            .filter(|v| v.len() >= 1 && v.len() <= top + 1)
            .collect();
        pre.elements([m]).iter().all(|e| {
            ops.iter().all(|a| {
                let ea = pre.act(e, 0, a);
                let k = a.len() - 1;
                let inner: Vec<Vec<usize>> = (0..=k).map(|i| face_values(k, i)).chain((0..k.min(top)).map(|i| degen_values(k, i))).filter(|b| !b.is_empty()).collect();
                inner.iter().all(|b| {
                    let composite: Vec<usize> = b.iter().map(|&t| a[t]).collect();
                    pre.act(&ea, 0, b) == pre.act(e, 0, &composite)
                })
            })
        })
    });
    let identity_on_fibers = (0..=top).all(|m2| {
        pre.elements([m2]).iter().all(|e| {
            (0..=top).all(|m1| {
                all_maps(m1, m2).iter().all(|d| {
                    let fd = e.0[d.last()];
                    fd != *e.0.last().unwrap() || pre.act(e, 0, d.values()).1 == e.1
                })
            })
        })
    });
    let comparison_bijective = (0..=top).all(|m| {
        let src = level_set(&total, m);
        let img: std::collections::HashSet<Bisimplex> = src.iter().map(|s| comparison.apply(s)).collect();
        img.len() == src.len() && src.len() == level_set(&r.source, m).len()
    });
    let commutes = comparison.then(r)? == straightened;
    let checks = StraightenChecks { functorial, identity_on_fibers, comparison_bijective, commutes };
    Ok(StraightenedFibration { n, original: r.clone(), straightened, comparison, chain, elems: real.elems, checks })
}

/// Straightens a left fibration through the order-reversing involution.
pub fn straighten_left(l: &SSpaceMap, n: usize) -> Result<StraightenedFibration> {
    let op = fib::opposite_space_map(l);
    let iso = find_isomorphism(&op.target, &f(n)).ok_or_else(|| Error::Shape("opposite of F(n) is not F(n)".into()))?;
    straighten(&op.then(&iso)?, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRow {
    pub l: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub per_level: Vec<DecompositionRow>,
    pub iterated: usize,
    pub pass: bool,
}

fn fiber_chain(r: &SSpaceMap, n: usize) -> Result<(Vec<Vec<Bisimplex>>, Vec<Vec<usize>>)> {
    let chain: Vec<Vec<Bisimplex>> =
        (0..=n).map(|i| discrete_fiber(r, n, &standard_embedding(i, n)?)).collect::<Result<_>>()?;
    let down = (1..=n)
        .map(|i| {
            let idx: HashMap<Bisimplex, usize> = chain[i - 1].iter().enumerate().map(|(k, s)| (*s, k)).collect();
            let theta: Vec<usize> = (0..i).collect();
            chain[i].iter().map(|s| idx[&r.source.act(s, 0, &theta)]).collect()
        })
        .collect();
    Ok((chain, down))
}

/// Maps of chains `R_{/0} ← R_{/01} ← … ← R_{/0…n}` into the same chain of `W`.
pub fn chain_maps(r: &SSpaceMap, w: &SSpaceMap, n: usize) -> Result<usize> {
    let (rc, rd) = fiber_chain(r, n)?;
    let (wc, wd) = fiber_chain(w, n)?;
    let mut states: HashMap<Vec<usize>, usize> = crate::cat::all_functions(rc[0].len(), wc[0].len())
        .into_iter()
        .map(|b| (b, 1))
        .collect();
    for i in 1..=n {
        let mut next: HashMap<Vec<usize>, usize> = HashMap::new();
        for (prev, count) in states {
            let options: Vec<Vec<usize>> = (0..rc[i].len())
                .map(|x| (0..wc[i].len()).filter(|&y| wd[i - 1][y] == prev[rd[i - 1][x]]).collect())
                .collect();
            let mut choices = vec![Vec::new()];
            for opt in &options {
                choices = choices
                    .into_iter()
                    .flat_map(|c: Vec<usize>| {
                        opt.iter().map(move |&y| {
                            let mut d = c.clone();
                            d.push(y);
                            d
                        })
                    })
                    .collect();
            }
            for c in choices {
                *next.entry(c).or_default() += count;
            }
        }
        states = next;
    }
    Ok(states.values().sum())
}

/// Both sides of `Map_{/F(n)}(R, W) → Map(R_{/0…n}, W_{/0…n}) ×_{Map(R_{/0…n}, W_{/0…n-1})} Map_{/F(n-1)}(R|, W|)`
/// counted in simplicial degrees `≤ l_max`, plus the iterated chain form.
pub fn mapping_decomposition_check(r: &SSpaceMap, w: &SSpaceMap, n: usize, l_max: usize) -> Result<DecompositionReport> {
    if !is_discrete(&r.source) || !is_discrete(&w.source) {
        return Err(Error::Precondition("decomposition is exact only for discrete fibrations".into()));
    }
    if !right_exact(r)? {
        return Err(Error::Precondition("R is not a right fibration".into()));
    }
    let whole = map_space(&r.source, &w.source, l_max, Some((r, w)))?;
    let top = standard_embedding(n, n)?;
    let rn = discrete_fiber(r, n, &top)?;
    let wn = discrete_fiber(w, n, &top)?;
    let rhs0 = if n == 0 {
        wn.len().pow(rn.len() as u32)
    } else {
        let fn1 = f(n);
        let se = simplex_map(&fn1, &f_simplex(n, &standard_embedding(n - 1, n)?)?);
        let rp = pullback(&se, r)?;
        let wp = pullback(&se, w)?;
        let (rq, wq) = (rp.proj_left(), wp.proj_left());
        let part = map_space(&rp.complex, &wp.complex, 0, Some((&rq, &wq)))?;
        let face: Vec<usize> = (0..n).collect();
        let top1 = f_simplex(n - 1, &standard_embedding(n - 1, n - 1)?)?;
        let mut total = 0usize;
        for alpha in part.vertex_elems() {
            let prod = part.exp.product_at([0, 0]);
            let rep = part.exp.rep_at([0, 0]);
            let mut ways = 1usize;
            for y in &rn {
                let d = r.source.act(y, 0, &face);
                let z = rp.pair(&top1, &d).expect("d lies over the face");
                let pz = prod.pair(&z, &rep.complex.point(0, z.degree())).expect("pairs exist");
                let img = wp.components(&part.exp.value_at(&alpha.assign, &pz)).1;
                ways *= wn.iter().filter(|v| w.source.act(v, 0, &face) == img).count();
            }
            total += ways;
        }
        total
    };
    let per_level: Vec<DecompositionRow> = (0..=l_max)
        .map(|l| DecompositionRow { l, lhs: whole.complex.count_simplices([l]), rhs: rhs0 })
        .collect();
    let iterated = chain_maps(r, w, n)?;
    let pass = per_level.iter().all(|row| row.lhs == row.rhs) && iterated == rhs0;
    Ok(DecompositionReport { per_level, iterated, pass })
}

/// The monotone map a level simplex of `F(n)` stands for.
pub fn simplex_of(n: usize, s: &Bisimplex) -> MonotoneMap {
    f_map(n, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SetFunctor {
        // P(0) = {a,b,c}, P(1) = {a,b}, P(2) = {a,b}; restrictions 1→0: a↦a b↦c, 2→1: id
        chain_functor(2, Variance::Contravariant, &[3, 2, 2], &[vec![0, 2], vec![0, 1]]).unwrap()
    }

    #[test]
    fn grothendieck_counts() {
        let p = sample();
        let g = grothendieck_fibration(&p).unwrap();
        for m in 0..4 {
            let want: usize = all_maps(m, 2).iter().map(|f| p.size(f.last())).sum();
            assert_eq!(level_set(&g.projection.source, m).len(), want);
        }
        assert!(fib::right_exact(&g.projection).unwrap());
        let one = chain_functor(2, Variance::Contravariant, &[1, 1, 1], &[vec![0], vec![0]]).unwrap();
        let g1 = grothendieck_fibration(&one).unwrap();
        assert!(g1.projection.is_isomorphism());
        let cov = chain_functor(1, Variance::Covariant, &[2, 1], &[vec![0, 0]]).unwrap();
        let gl = grothendieck_fibration(&cov).unwrap();
        assert!(fib::left_exact(&gl.projection).unwrap());
        assert!(!fib::right_exact(&gl.projection).unwrap());
    }

    #[test]
    fn fibers_and_straightening() {
        let g = grothendieck_fibration(&sample()).unwrap();
        let rep = fiber_equivalence_report(&g.projection, 2, 3).unwrap();
        assert!(rep.all_equivalent);
        let st = straighten(&g.projection, 2).unwrap();
        assert!(st.checks.all(), "{:?}", st.checks);
        assert_eq!(st.summary().chain, vec![3, 2, 2]);
        for i in 0..=2 {
            let mut fib = st.vertex_fiber(i);
            fib.sort();
            assert_eq!(fib, (0..st.chain[i].len()).collect::<Vec<_>>());
        }
        let id = Morphism::identity(f(2));
        assert!(straighten(&id, 2).unwrap().checks.all());
    }

    #[test]
    fn left_mirror() {
        let cov = chain_functor(2, Variance::Covariant, &[2, 2, 1], &[vec![1, 0], vec![0, 0]]).unwrap();
        let gl = grothendieck_fibration(&cov).unwrap();
        assert!(straighten(&gl.projection, 2).is_err());
        assert!(straighten_left(&gl.projection, 2).unwrap().checks.all());
    }

    #[test]
    fn decomposition() {
        let r = grothendieck_fibration(&sample()).unwrap();
        let w = grothendieck_fibration(
            &chain_functor(2, Variance::Contravariant, &[2, 2, 1], &[vec![1, 0], vec![0, 0]]).unwrap(),
        )
        .unwrap();
        let rep = mapping_decomposition_check(&r.projection, &w.projection, 2, 2).unwrap();
        assert!(rep.pass, "{rep:?}");
        let id = Morphism::identity(f(2));
        let rep = mapping_decomposition_check(&r.projection, &id, 2, 1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.per_level[0].lhs, 1);
    }
}
