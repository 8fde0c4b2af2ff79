use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{guard_size, SetPartitions};
use crate::rational::factorial;
use crate::{Error, ExactRational, Result};

/// Largest order accepted by [`complete_bell`] and [`signed_partition_sum`].
pub const MAX_BELL_ORDER: usize = 12;

fn guard_order(what: &'static str, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::domain(format!("{what} needs a positive order")));
    }
    guard_size(what, m, MAX_BELL_ORDER)
}

/// Number of set partitions of `[m]` with each block-size profile.
/// The key lists how many blocks have size 1, 2, …, m.
fn block_profiles(m: usize) -> BTreeMap<Vec<u8>, u64> {
    let mut profiles = BTreeMap::new();
    let mut sizes = vec![0u8; m];
    SetPartitions::for_each_rgs(m, |rgs, blocks| {
        sizes[..blocks].iter_mut().for_each(|s| *s = 0);
        for &label in rgs {
            sizes[label] += 1;
        }
        let mut profile = vec![0u8; m];
        for &s in &sizes[..blocks] {
            profile[s as usize - 1] += 1;
        }
        *profiles.entry(profile).or_insert(0) += 1;
    });
    profiles
}

/// The complete Bell polynomial `B_m(x_1, …, x_m)`, summed over set
/// partitions of `[m]` (each block of size `j` contributes `x_j`).
pub fn complete_bell(m: usize, xs: &[ExactRational]) -> Result<ExactRational> {
    guard_order("Bell polynomial order", m)?;
    if xs.len() != m {
        return Err(Error::domain(format!("B_{m} needs {m} arguments, got {}", xs.len())));
    }
    let mut total = BigRational::zero();
    for (profile, count) in block_profiles(m) {
        let mut term = BigRational::from_integer(BigInt::from(count));
        for (j, &c) in profile.iter().enumerate() {
            for _ in 0..c {
                term *= &xs[j];
            }
        }
        total += term;
    }
    Ok(total)
}

/// `B_m` as the determinant of the `m × m` matrix with `C(m-i, j-i) x_{j-i+1}`
/// on and above the diagonal and `-1` on the subdiagonal.
pub fn complete_bell_determinant(m: usize, xs: &[ExactRational]) -> Result<ExactRational> {
    guard_order("Bell polynomial order", m)?;
    if xs.len() != m {
        return Err(Error::domain(format!("B_{m} needs {m} arguments, got {}", xs.len())));
    }
    let mut a = vec![vec![BigRational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let binom = num_integer::binomial(BigInt::from(m - 1 - i), BigInt::from(j - i));
            a[i][j] = BigRational::from_integer(binom) * &xs[j - i];
        }
        if i > 0 {
            a[i][i - 1] = -BigRational::one();
        }
    }
    Ok(determinant(a))
}

fn determinant(mut a: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// `Σ_{σ ∈ Part[n]} (-1)^{|σ|} (|σ| - 1)!`.
///
/// Zero for every `n ≥ 2`; at `n = 1` the single partition gives `-1`.
pub fn signed_partition_sum(n: usize) -> Result<BigInt> {
    guard_order("signed partition sum order", n)?;
    let mut by_blocks = vec![0u64; n + 1];
    SetPartitions::for_each_rgs(n, |_, blocks| by_blocks[blocks] += 1);
    Ok(by_blocks
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &count)| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigInt::from(sign) * factorial(k as u64 - 1) * count
        })
        .sum())
}

/// Stirling numbers of the second kind `S(n, k)`.
pub fn stirling_second(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j - 1] + BigInt::from(j) * &row[j];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Bell numbers as row sums of the Stirling triangle.
pub fn bell_number(n: usize) -> BigInt {
    (0..=n).map(|k| stirling_second(n, k)).sum()
}
