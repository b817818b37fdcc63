//! Benchmark fixtures shared by the criterion targets.

use std::sync::Arc;

use fiblab::cat::{nerve, Variance};
use fiblab::corpus;
use fiblab::sset::FinSimplicialSet;
use fiblab::sspace::SSpaceMap;
use fiblab::straighten::grothendieck_fibration;

/// Nerves of seeded random categories, truncated at dimension 3.
pub fn nerves(seed: u64, count: usize) -> Vec<Arc<FinSimplicialSet>> {
    let mut r = corpus::rng(seed);
    (0..count).map(|_| nerve(&corpus::random_category(&mut r).cat, 3).complex).collect()
}

/// A contravariant fibration of elements over `F(n)` with fibers of size at most `max`.
pub fn right_fibration(seed: u64, n: usize, max: usize) -> SSpaceMap {
    let mut r = corpus::rng(seed);
    let p = corpus::random_chain_functor(n, max, Variance::Contravariant, &mut r);
    grothendieck_fibration(&p).expect("chain functor").projection
}
