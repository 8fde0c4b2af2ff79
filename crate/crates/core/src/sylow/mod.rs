//! The Sylow `p`-subgroups `P_n ≤ S_n` as iterated wreath products of `C_p`.
//!
//! Points of `[p^k]` are labelled by their base-`p` digits: the most
//! significant digit picks one of the `p` blocks of size `p^{k-1}`. An element
//! `(f_0, …, f_{p-1}; σ)` with `σ = c^e` sends the point `(j, r)` to
//! `(σ(j), f_{σ(j)}(r))`, where `c = (0 1 … p-1)`. Products compose right to
//! left, so `(f; σ)(g; τ) = (h; στ)` with `h_i = f_i ∘ g_{σ^{-1}(i)}`.
//!
//! For general `n` the group is a direct product of one `P_{p^{n_i}}` per unit
//! of each `p`-adic digit, acting on consecutive blocks of points.

mod cycle_type;
pub(crate) mod enumerate;
mod wreath;

pub use cycle_type::{all_cycle_types, centralizer_order, CycleType, MAX_CYCLE_TYPE_DEGREE};
pub use enumerate::{
    class_intersection, enumerate_sylow, product_elements, sylow_element_count, ProductElem,
    ProductIter, SylowIter, DEFAULT_BUDGET,
};
pub use wreath::{WreathElem, MAX_PERMUTATION_DEGREE};

use num_bigint::BigInt;

use crate::rational::big_pow;
use crate::{ensure_prime, Error, Result};

/// Base-`p` expansion `n = Σ a_i p^{n_i}` keeping only nonzero digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicShape {
    p: u32,
    /// `(exponent, digit)` pairs, exponents strictly increasing, digits in `1..p`.
    digits: Vec<(u32, u32)>,
}

impl PAdicShape {
    /// The shape of `a · p^k` with a single digit.
    pub fn single(p: u32, a: u32, k: u32) -> Result<Self> {
        ensure_prime(p)?;
        if a == 0 || a >= p {
            return Err(Error::domain(format!("digit {a} outside 1..{p}")));
        }
        Ok(PAdicShape { p, digits: vec![(k, a)] })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn digits(&self) -> &[(u32, u32)] {
        &self.digits
    }

    pub fn n(&self) -> u64 {
        self.digits
            .iter()
            .map(|&(e, a)| a as u64 * (self.p as u64).pow(e))
            .sum()
    }

    /// Levels of the wreath-product factors, one per unit of each digit.
    pub fn factor_levels(&self) -> Vec<u32> {
        self.digits
            .iter()
            .flat_map(|&(e, a)| std::iter::repeat_n(e, a as usize))
            .collect()
    }
}

/// The base-`p` expansion of `n` with its zero digits dropped.
pub fn p_adic(n: u64, p: u32) -> Result<PAdicShape> {
    ensure_prime(p)?;
    if n == 0 {
        return Err(Error::domain("p-adic expansion needs n >= 1"));
    }
    let mut digits = Vec::new();
    let mut rest = n;
    let mut e = 0;
    while rest > 0 {
        let d = (rest % p as u64) as u32;
        if d != 0 {
            digits.push((e, d));
        }
        rest /= p as u64;
        e += 1;
    }
    Ok(PAdicShape { p, digits })
}

/// `|P_n| = p^{Σ_{i≥1} ⌊n/p^i⌋}`.
pub fn sylow_order(n: u64, p: u32) -> Result<BigInt> {
    ensure_prime(p)?;
    let mut exponent = 0u64;
    let mut q = n;
    while q > 0 {
        q /= p as u64;
        exponent += q;
    }
    Ok(big_pow(p as u64, exponent))
}
