//! Randomized invariants over small generated instances.

use std::collections::HashMap;
use std::sync::Arc;

use fiblab::cat::{natural_transformations, nerve, tensor_functors, SetFunctor, Variance};
use fiblab::corpus;
use fiblab::fib::{self, Mode, Side, Variant};
use fiblab::hom::isomorphic;
use fiblab::io::{sset_from_json, sset_to_json};
use fiblab::limits::{product, pullback};
use fiblab::oracle::{betti, ChainComplexQ};
use fiblab::poset::{compose, factorize, MonotoneMap};
use fiblab::sset::{self, apply_operator, hom_set, mapping_space, FinSimplicialSet};
use fiblab::sspace::{self, diagonal, discrete, f, level_set, map_space, SliceSide};
use fiblab::straighten::grothendieck_fibration;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn monotone(max: usize) -> impl Strategy<Value = MonotoneMap> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort_unstable();
            MonotoneMap::new(m, n, v).unwrap()
        })
    })
}

fn composable(max: usize) -> impl Strategy<Value = (MonotoneMap, MonotoneMap, MonotoneMap)> {
    (0..=max, 0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c, d)| {
        let seq = |len: usize, top: usize| {
            proptest::collection::vec(0..=top, len + 1).prop_map(move |mut v| {
                v.sort_unstable();
                MonotoneMap::new(len, top, v).unwrap()
            })
        };
        (seq(a, b), seq(b, c), seq(c, d))
    })
}

/// Small simplicial sets: standard ones and low nerves of random categories.
fn small_set(seed: u64) -> Arc<FinSimplicialSet> {
    let mut r = corpus::rng(seed);
    let k = (seed % 6) as usize;
    match k {
        0 => sset::delta(2),
        1 => sset::boundary(3),
        2 => sset::horn(3, 1).unwrap(),
        3 => sset::j_truncated(1, 3),
        _ => nerve(&corpus::random_category(&mut r).cat, 2).complex,
    }
}

/// The same simplicial set with cells renamed and listed in a shuffled order.
fn shuffled(x: &FinSimplicialSet, seed: u64) -> FinSimplicialSet {
    let plain = x.renamed(|id, _| format!("c{id}"));
    let mut j = sset_to_json(&plain);
    let mut order: Vec<usize> = (0..j.cells.len()).collect();
    order.shuffle(&mut corpus::rng(seed));
    let new_name: HashMap<String, String> = order.iter().enumerate().map(|(k, &i)| (format!("c{i}"), format!("q{k}"))).collect();
    let rename = |r: &str| match r.split_once('.') {
        Some((base, word)) => format!("{}.{word}", new_name[base]),
        None => new_name[r].clone(),
    };
    let mut cells: Vec<_> = order.iter().map(|&i| j.cells[i].clone()).collect();
    for c in &mut cells {
        c.id = rename(&c.id);
        c.faces = c.faces.iter().map(|f| rename(f)).collect();
    }
    j.cells = cells;
    sset_from_json(&j).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_is_idempotent(map in monotone(8)) {
        let (p, i) = factorize(&map);
        prop_assert_eq!(compose(&i, &p).unwrap(), map.clone());
        let (pp, pi) = factorize(&p);
        prop_assert_eq!(&pp, &p);
        prop_assert!(pi.is_identity());
        let (ip, ii) = factorize(&i);
        prop_assert!(ip.is_identity());
        prop_assert_eq!(&ii, &i);
    }

    #[test]
    fn composition_is_associative((f1, g1, h1) in composable(5)) {
        let left = compose(&h1, &compose(&g1, &f1).unwrap()).unwrap();
        let right = compose(&compose(&h1, &g1).unwrap(), &f1).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn operators_act_through_any_factorization(seed in 0u64..1000, op in monotone(3)) {
        let x = small_set(seed);
        let n = op.target_size();
        for s in (0..x.len() as u32).map(|c| x.simp(c)).filter(|s| s.deg[0] as usize == n) {
            let direct = apply_operator(&x, &s, &op).unwrap();
            let (surj, inj) = op.image_factorization();
            let via_image = apply_operator(&x, &apply_operator(&x, &s, &inj).unwrap(), &surj).unwrap();
            prop_assert_eq!(direct, via_image);
            let (p, i) = factorize(&op);
            let via_convex = apply_operator(&x, &apply_operator(&x, &s, &i).unwrap(), &p).unwrap();
            prop_assert_eq!(direct, via_convex);
        }
    }

    #[test]
    fn hom_counts_ignore_presentation(a in 0u64..600, b in 0u64..600, perm in any::<u64>()) {
        let (x, y) = (small_set(a), small_set(b));
        let (x2, y2) = (Arc::new(shuffled(&x, perm)), Arc::new(shuffled(&y, perm ^ 1)));
        prop_assert!(isomorphic(&x, &x2));
        prop_assert_eq!(hom_set(&x, &y).maps.len(), hom_set(&x2, &y2).maps.len());
    }

    #[test]
    fn betti_numbers_ignore_presentation(a in 0u64..600, perm in any::<u64>()) {
        let x = small_set(a);
        let y = shuffled(&x, perm);
        prop_assert_eq!(betti(&x, 2), betti(&y, 2));
    }

    #[test]
    fn euler_characteristic_matches_betti(a in 0u64..600) {
        let x = small_set(a);
        let top = x.top_degree(0);
        prop_assume!(x.is_exact() && top <= 3);
        let cells: i64 = x.cells().iter().map(|c| if c.deg[0] % 2 == 0 { 1 } else { -1 }).sum();
        let b = betti(&x, top).values;
        let alt: i64 = b.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        prop_assert_eq!(cells, alt);
        prop_assert!(ChainComplexQ::new(&x, top + 1).boundary_squares_vanish());
    }

    #[test]
    fn products_are_symmetric(a in 0u64..600, b in 0u64..600) {
        let (x, y) = (small_set(a), small_set(b));
        prop_assume!(x.len() * y.len() <= 120);
        let xy = product(&x, &y);
        let yx = product(&y, &x);
        prop_assert!(isomorphic(&xy.complex, &yx.complex));
        let point = sset::delta(0);
        let to_point = |s: &Arc<FinSimplicialSet>| fiblab::ez::Morphism::constant(s.clone(), point.clone(), 0);
        let pb = pullback(&to_point(&x), &to_point(&y)).unwrap();
        prop_assert!(isomorphic(&pb.complex, &xy.complex));
    }

    #[test]
    fn diagonal_of_a_discrete_space(a in 0u64..600) {
        let x = small_set(a);
        let top = x.trusted(0).unwrap_or(x.top_degree(0) + 1);
        let d = Arc::new(diagonal(&discrete(&x), top));
        prop_assert!(isomorphic(&d, &x));
        let row = Arc::new(sspace::first_row(&discrete(&x)));
        prop_assert!(isomorphic(&row, &x));
    }

    #[test]
    fn exponential_hom_adjunction(a in 0u64..600, k in 0usize..=2) {
        let x = small_set(a);
        prop_assume!(x.len() <= 12 && x.is_exact());
        let y = sset::j_truncated(1, 4);
        let maps = mapping_space(&x, &y, 2).unwrap();
        prop_assert!(maps.within_range);
        let dk = sset::delta(k);
        let left = hom_set(&dk, &maps.space).maps.len();
        let right = hom_set(&product(&dk, &x).complex, &y).maps.len();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn left_fibrations_pull_back(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = corpus::rng(seed);
        let p = corpus::random_chain_functor(n, 3, Variance::Covariant, &mut r);
        let l = grothendieck_fibration(&p).unwrap().projection;
        prop_assert!(fib::left_exact(&l).unwrap());
        let base = f(n);
        for s in (0..base.len() as u32).map(|c| base.simp(c)) {
            let pb = pullback(&sspace::simplex_map(&base, &s), &l).unwrap();
            prop_assert!(fib::left_exact(&pb.proj_left()).unwrap());
        }
    }

    #[test]
    fn variants_agree_on_fibrations_of_elements(seed in any::<u64>(), n in 1usize..=3, contra in any::<bool>()) {
        let mut r = corpus::rng(seed);
        let v = if contra { Variance::Contravariant } else { Variance::Covariant };
        let p = grothendieck_fibration(&corpus::random_chain_functor(n, 3, v, &mut r)).unwrap().projection;
        let levels = n + 1;
        for side in [Side::Left, Side::Right] {
            let z = fib::fibration_check(&p, side, Variant::Zeroth, Mode::ExactDiscrete, levels, 1).unwrap();
            let a = fib::fibration_check(&p, side, Variant::Adjacent, Mode::ExactDiscrete, levels, 1).unwrap();
            prop_assert_eq!(z.verdict, a.verdict);
        }
        let right = fib::right_exact(&p).unwrap();
        prop_assert_eq!(right, fib::left_exact(&fib::opposite_space_map(&p)).unwrap());
    }

    #[test]
    fn yoneda_for_left_fibrations_over_a_simplex(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = corpus::rng(seed);
        let p = corpus::random_chain_functor(n, 2, Variance::Covariant, &mut r);
        let l = grothendieck_fibration(&p).unwrap().projection;
        let x = f(n);
        for i in 0..=n {
            let v = x.find(&i.to_string()).unwrap();
            let (_, proj) = fib::slice_space(&x, v, SliceSide::Under, n + 1, 0).unwrap();
            let maps = map_space(&proj.source, &l.source, 0, Some((&proj, &l))).unwrap();
            prop_assert_eq!(level_set(&discrete(&maps.complex), 0).len(), p.size(i));
        }
    }

    #[test]
    fn yoneda_is_natural_in_the_object(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let cc = corpus::random_category(&mut r);
        let c = &cc.cat;
        let fun = corpus::random_covariant(&cc, &mut r);
        for a in 0..c.object_count() {
            let h = SetFunctor::hom_from(c.clone(), a);
            let at_id = c.hom(a, a).iter().position(|&g| g == c.id(a)).unwrap();
            for eta in natural_transformations(&h, &fun).unwrap() {
                let x = eta[a][at_id];
                for b in 0..c.object_count() {
                    for (k, &g) in c.hom(a, b).iter().enumerate() {
                        prop_assert_eq!(eta[b][k], fun.apply(g, x));
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_is_functorial(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let cc = corpus::random_category(&mut r);
        let a = r.gen_range(0..cc.cat.object_count());
        let p = SetFunctor::hom_to(cc.cat.clone(), a);
        let q = corpus::random_contravariant(&cc, &mut r);
        prop_assume!((0..cc.cat.object_count()).map(|o| q.size(o)).sum::<usize>() <= 400);
        let fun = corpus::random_covariant(&cc, &mut r);
        let (tp, tq) = (tensor_functors(&p, &fun).unwrap(), tensor_functors(&q, &fun).unwrap());
        for alpha in natural_transformations(&p, &q).unwrap().into_iter().take(16) {
            for cls in &tp.classes {
                let images: Vec<usize> = cls.iter().map(|&(o, a, b)| tq.class_of(o, alpha[o][a], b)).collect();
                prop_assert!(images.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}
