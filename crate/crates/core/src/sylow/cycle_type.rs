use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::rational::{big_pow, factorial};
use crate::{Error, Result};

/// Cycle lengths of a permutation of `[n]`, fixed points included, sorted
/// in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: u64,
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(n: u64, mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("cycle lengths must be positive"));
        }
        let total: u64 = parts.iter().sum();
        if total != n {
            return Err(Error::domain(format!("cycle lengths sum to {total}, not {n}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { n, parts })
    }

    /// Completes `nontrivial` (parts other than 1 may be listed) with fixed points.
    pub fn with_fixed_points(n: u64, nontrivial: &[u64]) -> Result<Self> {
        let moved: u64 = nontrivial.iter().sum();
        if moved > n {
            return Err(Error::domain(format!("cycle lengths {nontrivial:?} exceed degree {n}")));
        }
        let mut parts = nontrivial.to_vec();
        parts.extend(std::iter::repeat_n(1, (n - moved) as usize));
        Self::new(n, parts)
    }

    pub fn identity(n: u64) -> Self {
        CycleType { n, parts: vec![1; n as usize] }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Parts greater than 1, decreasing.
    pub fn moved_parts(&self) -> Vec<u64> {
        self.parts.iter().copied().filter(|&x| x > 1).collect()
    }

    pub fn fixed_points(&self) -> u64 {
        self.parts.iter().filter(|&&x| x == 1).count() as u64
    }

    /// Exponents `l` with `p^l` equal to each moved part, increasing; `None`
    /// if some part is not a power of `p`.
    pub fn moved_levels(&self, p: u32) -> Option<Vec<u32>> {
        let mut levels = Vec::new();
        for &part in self.parts.iter().rev().filter(|&&x| x > 1) {
            let mut q = part;
            let mut l = 0;
            while q % p as u64 == 0 {
                q /= p as u64;
                l += 1;
            }
            if q != 1 {
                return None;
            }
            levels.push(l);
        }
        Some(levels)
    }

    /// Disjoint union of cycle types.
    pub fn union(types: &[CycleType]) -> CycleType {
        let n = types.iter().map(|t| t.n).sum();
        let parts = types.iter().flat_map(|t| t.parts.iter().copied()).collect();
        CycleType::new(n, parts).expect("union of valid cycle types is valid")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: Vec<(u64, usize)> = Vec::new();
        for &part in &self.parts {
            match counts.last_mut() {
                Some((x, c)) if *x == part => *c += 1,
                _ => counts.push((part, 1)),
            }
        }
        let items: Vec<String> = counts
            .iter()
            .map(|&(x, c)| if c == 1 { x.to_string() } else { format!("{x}^{c}") })
            .collect();
        write!(f, "({})", items.join(","))
    }
}

/// Largest degree accepted by [`all_cycle_types`].
pub const MAX_CYCLE_TYPE_DEGREE: u64 = 60;

/// Every cycle type of `S_n`, in reverse lexicographic order of parts.
pub fn all_cycle_types(n: u64) -> Result<Vec<CycleType>> {
    if n == 0 || n > MAX_CYCLE_TYPE_DEGREE {
        return Err(Error::SizeGuard {
            what: "cycle type enumeration degree",
            value: n,
            limit: MAX_CYCLE_TYPE_DEGREE,
        });
    }
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<CycleType>, n: u64) {
        if rest == 0 {
            out.push(CycleType { n, parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out, n);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out, n);
    Ok(out)
}

/// `|C_{S_n}(g)| = ∏_d d^{m_d} m_d!` for a permutation `g` of the given type.
pub fn centralizer_order(ct: &CycleType) -> BigInt {
    let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
    for &part in &ct.parts {
        *mult.entry(part).or_insert(0) += 1;
    }
    mult.iter()
        .map(|(&d, &m)| big_pow(d, m) * factorial(m))
        .product()
}
