//! Elements of the ring of integers `Z[ζ_p]` of the `p`-th cyclotomic field.
//!
//! Coordinates are taken in the power basis `1, ζ, …, ζ^{p-2}`; the relation
//! `ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})` keeps every value canonical, so two
//! elements are equal exactly when their coordinate vectors are.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coords: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "cyclotomic ring needs p >= 2");
        CycInt {
            p,
            coords: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_integer(p, BigInt::one())
    }

    pub fn from_integer(p: u32, n: BigInt) -> Self {
        let mut z = Self::zero(p);
        z.coords[0] = n;
        z
    }

    /// `ζ^m`.
    pub fn root_power(p: u32, m: u64) -> Self {
        let mut counts = vec![BigInt::zero(); p as usize];
        counts[(m % p as u64) as usize] = BigInt::one();
        Self::from_exponent_counts(p, &counts)
    }

    /// `Σ_m counts[m] · ζ^m` for `m = 0..p`.
    pub fn from_exponent_counts(p: u32, counts: &[BigInt]) -> Self {
        assert_eq!(counts.len(), p as usize, "need one count per p-th root of unity");
        let top = &counts[(p - 1) as usize];
        let coords = counts[..(p - 1) as usize].iter().map(|c| c - top).collect();
        CycInt { p, coords }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// The rational integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn exponent_counts(&self) -> Vec<BigInt> {
        let mut counts = self.coords.clone();
        counts.push(BigInt::zero());
        counts
    }
}

impl Add for &CycInt {
    type Output = CycInt;

    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        CycInt {
            p: self.p,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;

    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        let p = self.p as usize;
        let lhs = self.exponent_counts();
        let rhs = rhs.exponent_counts();
        let mut counts = vec![BigInt::zero(); p];
        for (i, a) in lhs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                counts[(i + j) % p] += a * b;
            }
        }
        CycInt::from_exponent_counts(self.p, &counts)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}·ζ"),
                _ => format!("{c}·ζ^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn top_root_reduces() {
        // ζ_3^2 = -1 - ζ_3
        let z2 = CycInt::root_power(3, 2);
        assert_eq!(z2.coords(), &[BigInt::from(-1), BigInt::from(-1)]);
        assert_eq!(CycInt::root_power(3, 1).coords(), &[BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn full_orbit_sums_to_zero() {
        for p in [2u32, 3, 5, 7] {
            let mut s = CycInt::zero(p);
            for m in 0..p as u64 {
                s += &CycInt::root_power(p, m);
            }
            assert!(s.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn binary_root_is_minus_one() {
        assert_eq!(CycInt::root_power(2, 1).as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn irrational_values_have_no_integer() {
        assert_eq!(CycInt::root_power(5, 2).as_integer(), None);
    }

    proptest! {
        #[test]
        fn roots_multiply_by_adding_exponents(p in prop::sample::select(vec![2u32, 3, 5, 7]), a in 0u64..20, b in 0u64..20) {
            let prod = &CycInt::root_power(p, a) * &CycInt::root_power(p, b);
            prop_assert_eq!(prod, CycInt::root_power(p, a + b));
        }

        #[test]
        fn multiplication_distributes(p in prop::sample::select(vec![3u32, 5]),
                                      xs in prop::collection::vec(-5i64..5, 5),
                                      ys in prop::collection::vec(-5i64..5, 5),
                                      zs in prop::collection::vec(-5i64..5, 5)) {
            let mk = |v: &[i64]| {
                let counts: Vec<BigInt> = v[..p as usize].iter().map(|&c| BigInt::from(c)).collect();
                CycInt::from_exponent_counts(p, &counts)
            };
            let (x, y, z) = (mk(&xs), mk(&ys), mk(&zs));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
