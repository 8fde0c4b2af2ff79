use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::partition::{cuts, multiplicity, SetPartition};
use crate::rational::{big_pow, factorial};
use crate::{ensure_prime, Error, ExactRational, Result};

/// A prime together with strictly increasing positive levels `l_1 < … < l_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSet {
    p: u32,
    levels: Vec<u32>,
}

impl LevelSet {
    pub fn new(p: u32, levels: Vec<u32>) -> Result<Self> {
        ensure_prime(p)?;
        if levels.is_empty() {
            return Err(Error::domain("a level set needs at least one level"));
        }
        if levels[0] == 0 {
            return Err(Error::domain("levels must be positive"));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!("levels {levels:?} are not strictly increasing")));
        }
        Ok(LevelSet { p, levels })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// Number of levels `b`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `p^{l_j}` for the 1-based index `j`.
    pub fn power(&self, j: usize) -> BigInt {
        big_pow(self.p as u64, self.levels[j - 1] as u64)
    }

    /// Validated, sorted copy of a subset of `{1, …, b}`.
    fn subset(&self, tau: &[usize]) -> Result<Vec<usize>> {
        if tau.is_empty() {
            return Err(Error::domain("empty index subset"));
        }
        let mut t = tau.to_vec();
        t.sort_unstable();
        t.dedup();
        if t.len() != tau.len() {
            return Err(Error::domain(format!("repeated index in {tau:?}")));
        }
        if t[0] == 0 || *t.last().unwrap() > self.len() {
            return Err(Error::domain(format!("index subset {tau:?} outside 1..={}", self.len())));
        }
        Ok(t)
    }

    /// Partial sums `p_{t_z}`, `p_{t_z} + p_{t_{z-1}}`, …, `p_{t_z} + … + p_{t_2}`.
    fn suffix_sums(&self, tau: &[usize]) -> Result<Vec<BigInt>> {
        let t = self.subset(tau)?;
        let mut acc = BigInt::zero();
        Ok(t[1..]
            .iter()
            .rev()
            .map(|&j| {
                acc += self.power(j);
                acc.clone()
            })
            .collect())
    }
}

/// Polynomial in one variable `P` (standing for `p^k`) with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyInPk {
    coefficients: BTreeMap<u32, ExactRational>,
}

impl PolyInPk {
    pub fn constant(c: ExactRational) -> Self {
        let mut poly = PolyInPk::default();
        poly.add_term(0, c);
        poly
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `P - c`.
    pub fn monic_linear(c: &BigInt) -> Self {
        let mut poly = PolyInPk::default();
        poly.add_term(1, BigRational::one());
        poly.add_term(0, -BigRational::from_integer(c.clone()));
        poly
    }

    fn add_term(&mut self, degree: u32, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(degree).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: u32) -> ExactRational {
        self.coefficients.get(&degree).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Stored (nonzero) coefficients by degree.
    pub fn coefficients(&self) -> &BTreeMap<u32, ExactRational> {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn mul(&self, other: &PolyInPk) -> PolyInPk {
        let mut out = PolyInPk::default();
        for (da, ca) in &self.coefficients {
            for (db, cb) in &other.coefficients {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &BigInt) -> ExactRational {
        let x = BigRational::from_integer(x.clone());
        self.coefficients
            .iter()
            .map(|(&d, c)| c * num_traits::pow(x.clone(), d as usize))
            .sum()
    }
}

impl fmt::Display for PolyInPk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.coefficients.iter().rev().enumerate() {
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let unit = magnitude.is_one() && d > 0;
            if !unit {
                write!(f, "{magnitude}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "P")?,
                _ => write!(f, "P^{d}")?,
            }
        }
        Ok(())
    }
}

/// `M(τ)`: 1 for a singleton, otherwise the product of the suffix sums
/// `p_{t_z} (p_{t_z} + p_{t_{z-1}}) ⋯ (p_{t_z} + … + p_{t_2})`.
pub fn m_product(levels: &LevelSet, tau: &[usize]) -> Result<BigInt> {
    Ok(levels.suffix_sums(tau)?.into_iter().product())
}

/// `R^τ` as a polynomial in `P = p^k`: the product of `P - s` over the same
/// suffix sums `s` that make up [`m_product`].
pub fn r_polynomial(levels: &LevelSet, tau: &[usize]) -> Result<PolyInPk> {
    Ok(levels
        .suffix_sums(tau)?
        .iter()
        .fold(PolyInPk::one(), |acc, s| acc.mul(&PolyInPk::monic_linear(s))))
}

/// `R^τ` evaluated at `P = p^k`.
pub fn r_value(levels: &LevelSet, tau: &[usize], k: u32) -> Result<BigInt> {
    let t = levels.subset(tau)?;
    let top = levels.levels()[t[t.len() - 1] - 1];
    if k < top {
        return Err(Error::domain(format!("k = {k} is below level {top}")));
    }
    let pk = big_pow(levels.p() as u64, k as u64);
    Ok(levels.suffix_sums(&t)?.iter().map(|s| &pk - s).product())
}

fn check_partition(levels: &LevelSet, alpha: &SetPartition) -> Result<()> {
    if alpha.size() != levels.len() {
        return Err(Error::domain(format!(
            "partition of {} elements for {} levels",
            alpha.size(),
            levels.len()
        )));
    }
    Ok(())
}

/// `∏_{τ∈α} R^τ` as a polynomial in `P`.
pub fn r_product(levels: &LevelSet, alpha: &SetPartition) -> Result<PolyInPk> {
    check_partition(levels, alpha)?;
    alpha
        .blocks()
        .iter()
        .try_fold(PolyInPk::one(), |acc, tau| Ok(acc.mul(&r_polynomial(levels, tau)?)))
}

/// `M_i(α)`: coefficient of `P^i` in `∏_{τ∈α} R^τ`.
pub fn m_coefficient(levels: &LevelSet, alpha: &SetPartition, i: u32) -> Result<BigInt> {
    let c = r_product(levels, alpha)?.coefficient(i);
    if !c.is_integer() {
        return Err(Error::internal(format!("non-integral coefficient {c}")));
    }
    Ok(c.to_integer())
}

/// `θ_λ` evaluated literally:
/// `Σ_{ν ≤ λ} p^{k|ν|} ∏_{τ∈ν} R^τ_k · (-1)^{|ν|-|λ|} ∏_{τ∈λ} (m^λ_ν(τ) - 1)!`.
///
/// It collapses to `(-1)^{b-|λ|} p^{k|λ|} ∏_{τ∈λ} M(τ)`.
pub fn theta(levels: &LevelSet, lambda: &SetPartition, k: u32) -> Result<BigInt> {
    check_partition(levels, lambda)?;
    let p = levels.p() as u64;
    let mut total = BigInt::zero();
    for extra in 0..=(lambda.size() - lambda.len()) {
        for nu in cuts(lambda, extra) {
            let mut term = big_pow(p, k as u64 * nu.len() as u64);
            for tau in nu.blocks() {
                term *= r_value(levels, tau, k)?;
            }
            for tau in lambda.blocks() {
                term *= factorial(multiplicity(&nu, lambda, tau)? as u64 - 1);
            }
            if extra % 2 == 1 {
                term = -term;
            }
            total += term;
        }
    }
    Ok(total)
}
