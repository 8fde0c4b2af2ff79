//! When do two linear characters of `P_n` induce the same character of `S_n`?
//!
//! The answer is normalizer conjugacy, which for `n = a·p^k` means the rows
//! agree up to order. The `f`-multiset machinery recovers the rows from class
//! sum data alone and is exposed so that the argument can be replayed.

mod decide;
mod multiset;
mod profile;

pub use decide::{induced_equal, n_conjugate, Classification, Witness, WitnessJson};
pub use multiset::{bumped_elements, keylemma_conclude, signed_power_case, IntMultiset, KeyLemma, SignedPowers};
pub use profile::{f_multiset, f_value, level_lists, part2_equivalent, FProfile};
