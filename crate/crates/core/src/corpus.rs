//! Seeded random instances: small concrete categories, functors on them,
//! finite posets and presheaves on `[n]`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cat::{FinCategory, SetFunctor, Variance};
use crate::error::Result;
use crate::straighten::chain_functor;

pub const MAX_OBJECTS: usize = 5;
pub const MAX_ARROWS: usize = 12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A category of finite sets and some functions between them.
#[derive(Clone, Debug)]
pub struct ConcreteCategory {
    pub cat: Arc<FinCategory>,
    pub sizes: Vec<usize>,
    /// The function each arrow stands for.
    pub functions: Vec<Vec<usize>>,
}

type Key = (usize, usize, Vec<usize>);

fn close(sizes: &[usize], gens: &[Key], cap: usize) -> Option<Vec<Key>> {
    let mut arrows: Vec<Key> = (0..sizes.len()).map(|o| (o, o, (0..sizes[o]).collect())).collect();
    let mut seen: HashMap<Key, usize> = arrows.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut queue: Vec<Key> = gens.to_vec();
    while let Some(k) = queue.pop() {
        if seen.contains_key(&k) {
            continue;
        }
        seen.insert(k.clone(), arrows.len());
        arrows.push(k.clone());
        if arrows.len() - sizes.len() > cap {
            return None;
        }
        let current = arrows.clone();
        for other in &current {
            if other.1 == k.0 {
                queue.push((other.0, k.1, other.2.iter().map(|&x| k.2[x]).collect()));
            }
            if k.1 == other.0 {
                queue.push((k.0, other.1, k.2.iter().map(|&x| other.2[x]).collect()));
            }
        }
    }
    Some(arrows)
}

fn from_arrows(sizes: Vec<usize>, arrows: Vec<Key>) -> ConcreteCategory {
    let n = sizes.len();
    let index: HashMap<&Key, usize> = arrows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let names = arrows
        .iter()
        .enumerate()
        .map(|(i, k)| (if i < n { format!("id{i}") } else { format!("a{}", i - n) }, k.0, k.1))
        .collect();
    let cat = FinCategory::new((0..n).map(|o| o.to_string()).collect(), names, (0..n).collect(), |f, g| {
        let (a, b) = (&arrows[f], &arrows[g]);
        let key = (a.0, b.1, a.2.iter().map(|&x| b.2[x]).collect());
        index.get(&key).copied()
    })
    .expect("functions compose associatively");
    let functions = arrows.into_iter().map(|k| k.2).collect();
    ConcreteCategory { cat: Arc::new(cat), sizes, functions }
}

/// At most five objects and twelve non-identity arrows. Most generators
/// point forward, so the result is usually close to a poset, but
/// endomorphisms and backward arrows appear too.
pub fn random_category(r: &mut impl Rng) -> ConcreteCategory {
    let n = r.gen_range(1..=MAX_OBJECTS);
    let sizes: Vec<usize> = (0..n).map(|_| r.gen_range(1..=3)).collect();
    let mut gens: Vec<Key> = Vec::new();
    for _ in 0..r.gen_range(0..=n + 2) {
        let s = r.gen_range(0..n);
        let t = match r.gen_range(0..10) {
            0 => s,
            1 => r.gen_range(0..n),
            _ if s + 1 < n => r.gen_range(s + 1..n),
            _ => s,
        };
        let fun: Vec<usize> = (0..sizes[s]).map(|_| r.gen_range(0..sizes[t])).collect();
        let mut trial = gens.clone();
        trial.push((s, t, fun));
        if close(&sizes, &trial, MAX_ARROWS).is_some() {
            gens = trial;
        }
    }
    let arrows = close(&sizes, &gens, MAX_ARROWS).expect("kept within the cap");
    from_arrows(sizes, arrows)
}

/// The forgetful functor to finite sets.
pub fn underlying(c: &ConcreteCategory) -> SetFunctor {
    let sets = c.sizes.iter().map(|&s| (0..s).map(|x| x.to_string()).collect()).collect();
    SetFunctor::new(c.cat.clone(), Variance::Covariant, sets, c.functions.clone()).expect("inclusion is a functor")
}

pub fn random_covariant(c: &ConcreteCategory, r: &mut impl Rng) -> SetFunctor {
    let n = c.cat.object_count();
    let hom = SetFunctor::hom_from(c.cat.clone(), r.gen_range(0..n));
    match r.gen_range(0..4) {
        0 => underlying(c),
        1 => hom,
        2 => hom.coproduct(&underlying(c)).expect("same base"),
        _ => hom
            .coproduct(&SetFunctor::constant(c.cat.clone(), Variance::Covariant, &["*"]))
            .expect("same base"),
    }
}

pub fn random_contravariant(c: &ConcreteCategory, r: &mut impl Rng) -> SetFunctor {
    let n = c.cat.object_count();
    let hom = SetFunctor::hom_to(c.cat.clone(), r.gen_range(0..n));
    match r.gen_range(0..4) {
        0 => hom,
        1 => hom.coproduct(&SetFunctor::hom_to(c.cat.clone(), r.gen_range(0..n))).expect("same base"),
        2 => SetFunctor::hom_into(&underlying(c), 2).expect("small"),
        _ => hom
            .coproduct(&SetFunctor::constant(c.cat.clone(), Variance::Contravariant, &["*"]))
            .expect("same base"),
    }
}

/// A poset on `0..k` compatible with the natural order, plus a greatest
/// element `k` when `with_top` is set.
pub fn random_poset(k: usize, with_top: bool, r: &mut impl Rng) -> FinCategory {
    let total = k + usize::from(with_top);
    let mut rel = vec![vec![false; total]; total];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().take(k).skip(i + 1) {
            *cell = r.gen_bool(0.4);
        }
        if with_top {
            row[k] = true;
        }
    }
    for m in 0..total {
        for i in 0..total {
            for j in 0..total {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    FinCategory::poset(total, |i, j| rel[i][j]).expect("transitively closed")
}

/// A functor on `[n]` with value sets of size `1..=max_size`.
pub fn random_chain_functor(n: usize, max_size: usize, variance: Variance, r: &mut impl Rng) -> SetFunctor {
    let sizes: Vec<usize> = (0..=n).map(|_| r.gen_range(1..=max_size)).collect();
    let maps = (0..n)
        .map(|j| {
            let (from, to) = match variance {
                Variance::Contravariant => (sizes[j + 1], sizes[j]),
                Variance::Covariant => (sizes[j], sizes[j + 1]),
            };
            (0..from).map(|_| r.gen_range(0..to)).collect()
        })
        .collect::<Vec<Vec<usize>>>();
    chain_functor(n, variance, &sizes, &maps).expect("composites of functions")
}

/// A random object of a category.
pub fn pick<T: Clone>(items: &[T], r: &mut impl Rng) -> T {
    items.choose(r).expect("nonempty").clone()
}

pub fn seeded<T>(seed: u64, count: usize, mut make: impl FnMut(&mut ChaCha8Rng) -> T) -> Vec<T> {
    let mut r = rng(seed);
    (0..count).map(|_| make(&mut r)).collect()
}

pub fn categories(seed: u64, count: usize) -> Vec<ConcreteCategory> {
    seeded(seed, count, random_category)
}

pub fn chain_functors(seed: u64, count: usize, max_n: usize, max_size: usize, variance: Variance) -> Result<Vec<SetFunctor>> {
    Ok(seeded(seed, count, |r| {
        let n = r.gen_range(0..=max_n);
        random_chain_functor(n, max_size, variance, r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_are_bounded_and_reproducible() {
        let a = categories(7, 40);
        let b = categories(7, 40);
        for (x, y) in a.iter().zip(&b) {
            assert!(x.cat.object_count() <= MAX_OBJECTS);
            assert!(x.cat.nonidentity_count() <= MAX_ARROWS);
            assert_eq!(x.cat, y.cat);
            underlying(x).validate().unwrap();
        }
        assert!(a.iter().any(|c| c.cat.nonidentity_count() > 2));
    }

    #[test]
    fn functors_validate() {
        let mut r = rng(3);
        for c in categories(11, 20) {
            random_covariant(&c, &mut r).validate().unwrap();
            random_contravariant(&c, &mut r).validate().unwrap();
        }
        for v in [Variance::Covariant, Variance::Contravariant] {
            for p in chain_functors(5, 20, 4, 3, v).unwrap() {
                p.validate().unwrap();
            }
        }
    }

    #[test]
    fn posets_have_tops() {
        let mut r = rng(1);
        let p = random_poset(4, true, &mut r);
        assert_eq!(p.object_count(), 5);
        for i in 0..5 {
            assert_eq!(p.hom(i, 4).len(), 1);
        }
    }
}
