use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::wreath::node_count;
use super::{CycleType, PAdicShape, WreathElem};
use crate::rational::big_pow;
use crate::{ensure_prime, Error, Result};

/// Default cap on the number of group elements a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

const CHUNK: u64 = 1 << 14;

/// `|P_{p^k}| = p^{(p^k - 1)/(p - 1)}`.
pub fn sylow_element_count(p: u32, level: u32) -> BigInt {
    big_pow(p as u64, node_count(p, level) as u64)
}

fn within_budget(what: impl FnOnce() -> String, count: &BigInt, budget: u64) -> Result<u64> {
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::Budget {
            what: what(),
            required: count.to_string(),
            budget,
        }),
    }
}

/// Streams the elements of `P_{p^k}` as an odometer over the top exponents.
#[derive(Clone, Debug)]
pub struct SylowIter {
    p: u32,
    level: u32,
    tops: Vec<u8>,
    /// First position the odometer may change; 1 pins the root top to 0.
    first_free: usize,
    remaining: u64,
}

impl SylowIter {
    /// Elements `start..start + len` of the enumeration order, where position
    /// `first_free + d` of the tops holds base-`p` digit `d` of the index.
    pub(crate) fn range(p: u32, level: u32, pin_root: bool, start: u64, len: u64) -> Self {
        let mut tops = vec![0u8; node_count(p, level)];
        let first_free = usize::from(pin_root && level > 0);
        let mut idx = start;
        for t in tops.iter_mut().skip(first_free) {
            *t = (idx % p as u64) as u8;
            idx /= p as u64;
        }
        SylowIter {
            p,
            level,
            tops,
            first_free,
            remaining: len,
        }
    }

    fn step(&mut self) {
        for t in self.tops.iter_mut().skip(self.first_free) {
            *t += 1;
            if (*t as u32) < self.p {
                return;
            }
            *t = 0;
        }
    }

    /// Calls `visit` on each remaining element's tops.
    pub fn for_each_tops(mut self, mut visit: impl FnMut(&[u8])) {
        while self.remaining > 0 {
            visit(&self.tops);
            self.remaining -= 1;
            if self.remaining > 0 {
                self.step();
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }
}

impl Iterator for SylowIter {
    type Item = WreathElem;

    fn next(&mut self) -> Option<WreathElem> {
        if self.remaining == 0 {
            return None;
        }
        let elem = WreathElem::from_tops(self.p, self.level, self.tops.clone()).ok();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.step();
        }
        elem
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// Every element of `P_{p^k}` exactly once, refusing groups larger than `budget`.
pub fn enumerate_sylow(p: u32, level: u32, budget: u64) -> Result<SylowIter> {
    ensure_prime(p)?;
    let count = within_budget(
        || format!("enumeration of P_{{{p}^{level}}}"),
        &sylow_element_count(p, level),
        budget,
    )?;
    Ok(SylowIter::range(p, level, false, 0, count))
}

/// Splits the enumeration into contiguous chunks for parallel workers.
/// `pin_root` restricts to elements whose root top is trivial.
pub(crate) fn chunks(p: u32, level: u32, pin_root: bool, budget: u64) -> Result<Vec<SylowIter>> {
    ensure_prime(p)?;
    let nodes = node_count(p, level) - usize::from(pin_root && level > 0);
    let count = within_budget(
        || format!("enumeration of P_{{{p}^{level}}}"),
        &big_pow(p as u64, nodes as u64),
        budget,
    )?;
    Ok((0..count)
        .step_by(CHUNK as usize)
        .map(|start| SylowIter::range(p, level, pin_root, start, CHUNK.min(count - start)))
        .collect())
}

/// Elements of `P_{p^k}` of cycle type `ct`, in enumeration order.
///
/// A fixed point forces a trivial root top, so only that half of the group is
/// scanned when `ct` has one.
pub fn class_intersection(p: u32, level: u32, ct: &CycleType, budget: u64) -> Result<Vec<WreathElem>> {
    ensure_prime(p)?;
    let degree = (p as u64).pow(level);
    if ct.n() != degree {
        return Err(Error::domain(format!("cycle type of degree {} for P_{{{degree}}}", ct.n())));
    }
    if ct.moved_levels(p).is_none() {
        return Ok(Vec::new());
    }
    let pin_root = ct.fixed_points() > 0 && level > 0;
    let pieces: Vec<Vec<WreathElem>> = chunks(p, level, pin_root, budget)?
        .into_par_iter()
        .map(|it| it.filter(|x| &x.cycle_type() == ct).collect())
        .collect();
    Ok(pieces.into_iter().flatten().collect())
}

/// An element of `P_n = P_{p^{n_1}} × ⋯`, one wreath element per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductElem {
    pub factors: Vec<WreathElem>,
}

impl ProductElem {
    pub fn identity(shape: &PAdicShape) -> Self {
        ProductElem {
            factors: shape
                .factor_levels()
                .iter()
                .map(|&l| WreathElem::identity(shape.p(), l))
                .collect(),
        }
    }

    pub fn cycle_type(&self) -> CycleType {
        let types: Vec<CycleType> = self.factors.iter().map(WreathElem::cycle_type).collect();
        CycleType::union(&types)
    }
}

/// Cartesian product of the factor groups, last factor varying fastest.
#[derive(Clone, Debug)]
pub struct ProductIter {
    factors: Vec<Vec<WreathElem>>,
    index: Vec<usize>,
    remaining: u64,
}

impl Iterator for ProductIter {
    type Item = ProductElem;

    fn next(&mut self) -> Option<ProductElem> {
        if self.remaining == 0 {
            return None;
        }
        let item = ProductElem {
            factors: self
                .index
                .iter()
                .zip(&self.factors)
                .map(|(&i, f)| f[i].clone())
                .collect(),
        };
        self.remaining -= 1;
        for (i, f) in self.index.iter_mut().zip(&self.factors).rev() {
            *i += 1;
            if *i < f.len() {
                break;
            }
            *i = 0;
        }
        Some(item)
    }
}

/// Every element of `P_n` for the given `p`-adic shape.
pub fn product_elements(shape: &PAdicShape, budget: u64) -> Result<ProductIter> {
    let p = shape.p();
    let levels = shape.factor_levels();
    let total: BigInt = levels.iter().map(|&l| sylow_element_count(p, l)).product();
    let remaining = within_budget(|| format!("enumeration of P_{}", shape.n()), &total, budget)?;
    let factors = levels
        .iter()
        .map(|&l| enumerate_sylow(p, l, budget).map(Iterator::collect))
        .collect::<Result<Vec<Vec<WreathElem>>>>()?;
    Ok(ProductIter {
        index: vec![0; factors.len()],
        factors,
        remaining,
    })
}
