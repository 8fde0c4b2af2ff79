//! Values built only from the wreath recursions: a cycle of length `p^k`
//! needs a nontrivial top, and otherwise the moved cycles are dealt out to
//! distinct children. No closed form is used.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::closed::{check_levels, overflows, type_shape, TypeShape};
use super::{BitSeq, CharSpec};
use crate::combinat::enumerate_partitions;
use crate::rational::{big_pow, falling, from_big};
use crate::sylow::CycleType;
use crate::{Error, ExactRational, Result};

struct Recursion<'a> {
    p: u32,
    u: &'a BitSeq,
    memo: HashMap<(u32, Vec<u32>), ExactRational>,
}

impl Recursion<'_> {
    fn gamma(&mut self, k: u32, levels: &[u32]) -> Result<ExactRational> {
        if overflows(self.p, k, levels) {
            return Ok(BigRational::zero());
        }
        let key = (k, levels.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let p = self.p as i64;
        let top = *levels.last().unwrap();
        let value = if top == k {
            // A single p^k-cycle (anything else at level k overflows).
            let edge = BigRational::from_integer(BigInt::from(p * self.u.value(k as usize) - 1));
            if k == 1 {
                edge
            } else {
                let scale = from_big(big_pow(self.p as u64, (self.p as u64).pow(k - 1) - 1));
                scale * self.gamma(k - 1, &[k - 1])? * edge
            }
        } else {
            // Fixed points force a trivial top: split the cycles over distinct children.
            let mut total = BigRational::zero();
            for nu in enumerate_partitions(levels.len())? {
                let ways = falling(self.p as u64, nu.len() as u64);
                if ways.is_zero() {
                    continue;
                }
                let mut term = from_big(ways);
                for block in nu.blocks() {
                    let sub: Vec<u32> = block.iter().map(|&i| levels[i - 1]).collect();
                    term *= self.gamma(k - 1, &sub)?;
                }
                total += term;
            }
            total
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// `Γ_{l_1,…,l_b;k}(u)` from the recursions alone, starting at
/// `Γ_{1;1}(u) = p u_1 - 1`.
pub fn gamma_recursive(p: u32, k: u32, levels: &[u32], u: &BitSeq) -> Result<ExactRational> {
    check_levels(p, k, levels, u)?;
    Recursion {
        p,
        u,
        memo: HashMap::new(),
    }
    .gamma(k, levels)
}

/// `Γ_{l,l;k}(u)` from `Γ_{l,l;k} = C(p,2) Γ_{l;k-1}^2 + p Γ_{l,l;k-1}` with
/// `Γ_{l,l;l} = 0`.
pub fn gamma_pair_recursive(p: u32, k: u32, l: u32, u: &BitSeq) -> Result<ExactRational> {
    if p == 2 {
        return Err(Error::Unsupported("the pair recursion needs an odd prime".into()));
    }
    check_levels(p, k, &[l], u)?;
    let mut rec = Recursion {
        p,
        u,
        memo: HashMap::new(),
    };
    let binom = BigRational::from_integer(BigInt::from(p * (p - 1) / 2));
    let mut value = BigRational::zero();
    for level in l + 1..=k {
        let single = rec.gamma(level - 1, &[l])?;
        value = &binom * &single * &single + BigRational::from_integer(BigInt::from(p)) * value;
    }
    Ok(value)
}

/// Class sum over `P_{a p^k}` assembled from recursive `Γ` values: every
/// partition of the cycles is dealt out to distinct rows.
pub fn class_sum_recursive(spec: &CharSpec, ct: &CycleType) -> Result<ExactRational> {
    let p = spec.p();
    if ct.n() != spec.n() {
        return Err(Error::domain(format!(
            "cycle type of degree {} for a character of P_{}",
            ct.n(),
            spec.n()
        )));
    }
    let shape = type_shape(p, ct);
    match shape {
        TypeShape::Identity => return Ok(BigRational::one()),
        TypeShape::NotPPower => return Ok(BigRational::zero()),
        _ => {}
    }
    let Some((_, k)) = spec.uniform() else {
        return Err(Error::NoClosedForm(format!("{ct} (n = {} is not a·p^k)", spec.n())));
    };
    let rows = spec.bit_rows();
    match shape {
        TypeShape::Distinct(levels) if levels.len() < p as usize => {
            if *levels.last().unwrap() > k {
                return Ok(BigRational::zero());
            }
            let mut recs: Vec<Recursion> = rows
                .iter()
                .map(|u| Recursion {
                    p,
                    u,
                    memo: HashMap::new(),
                })
                .collect();
            let mut total = BigRational::zero();
            for nu in enumerate_partitions(levels.len())? {
                let blocks: Vec<Vec<u32>> = nu
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&i| levels[i - 1]).collect())
                    .collect();
                let mut used = vec![false; rows.len()];
                total += assign(&mut recs, k, &blocks, &mut used)?;
            }
            Ok(total)
        }
        TypeShape::Pair(l) if p != 2 => {
            if l > k {
                return Ok(BigRational::zero());
            }
            let singles = rows
                .iter()
                .map(|u| gamma_recursive(p, k, &[l], u))
                .collect::<Result<Vec<_>>>()?;
            let mut total = BigRational::zero();
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    total += &singles[i] * &singles[j];
                }
                total += gamma_pair_recursive(p, k, l, &rows[i])?;
            }
            Ok(total)
        }
        _ => Err(Error::NoClosedForm(ct.to_string())),
    }
}

/// Sum over injective maps from `blocks` to rows of the product of `Γ` values.
fn assign(recs: &mut [Recursion], k: u32, blocks: &[Vec<u32>], used: &mut [bool]) -> Result<ExactRational> {
    let Some((first, rest)) = blocks.split_first() else {
        return Ok(BigRational::one());
    };
    let mut total = BigRational::zero();
    for i in 0..recs.len() {
        if used[i] {
            continue;
        }
        let g = recs[i].gamma(k, first)?;
        if g.is_zero() {
            continue;
        }
        used[i] = true;
        total += g * assign(recs, k, rest, used)?;
        used[i] = false;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{class_sum, gamma_closed, gamma_pair};
    use crate::rational::int;

    fn u(s: &str) -> BitSeq {
        BitSeq::parse(s).unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(gamma_recursive(3, 2, &[2], &u("11")).unwrap(), int(36));
        assert_eq!(gamma_recursive(3, 3, &[1, 2], &u("110")).unwrap(), int(1296));
        assert_eq!(gamma_recursive(3, 2, &[1], &u("01")).unwrap(), int(-3));
        assert_eq!(gamma_recursive(3, 2, &[1, 2], &u("11")).unwrap(), int(0));
        assert_eq!(gamma_pair_recursive(3, 2, 1, &u("11")).unwrap(), int(12));
    }

    /// Every strictly increasing list of at most `max_b` levels in `1..=k`.
    fn level_lists(k: u32, max_b: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for mask in 1u32..1 << k {
            let levels: Vec<u32> = (1..=k).filter(|l| mask >> (l - 1) & 1 == 1).collect();
            if levels.len() <= max_b {
                out.push(levels);
            }
        }
        out
    }

    #[test]
    fn agrees_with_closed_form() {
        for p in [2u32, 3, 5] {
            for k in 1..=6u32 {
                let max_b = 3.min(p as usize - 1);
                for levels in level_lists(k, max_b) {
                    for bits in 0..1u64 << k {
                        let v = BitSeq::from_index(bits, k as usize);
                        assert_eq!(
                            gamma_recursive(p, k, &levels, &v).unwrap(),
                            gamma_closed(p, k, &levels, &v).unwrap(),
                            "p={p} k={k} levels={levels:?} u={v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pair_agrees_with_closed_form() {
        for p in [3u32, 5] {
            for k in 1..=5u32 {
                for l in 1..=k {
                    for bits in 0..1u64 << k {
                        let v = BitSeq::from_index(bits, k as usize);
                        assert_eq!(
                            gamma_pair_recursive(p, k, l, &v).unwrap(),
                            gamma_pair(p, k, l, &v).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn suffix_bits_do_not_matter() {
        for bits in 0..32u64 {
            let v = BitSeq::from_index(bits, 5);
            let flipped = BitSeq::from_index(bits ^ 0b11000, 5);
            for levels in [vec![1u32], vec![1, 3], vec![2, 3]] {
                assert_eq!(
                    gamma_recursive(5, 5, &levels, &v).unwrap(),
                    gamma_recursive(5, 5, &levels, &flipped).unwrap()
                );
            }
        }
    }

    #[test]
    fn class_sums_agree_with_closed_form() {
        let rows_by_a = [vec![u("101")], vec![u("100"), u("011")], vec![u("110"), u("011"), u("111")]];
        for rows in rows_by_a {
            let spec = CharSpec::new(5, rows.clone()).unwrap();
            let n = spec.n();
            for levels in level_lists(3, 3) {
                let parts: Vec<u64> = levels.iter().map(|&l| 5u64.pow(l)).collect();
                let Ok(ct) = CycleType::with_fixed_points(n, &parts) else { continue };
                assert_eq!(
                    class_sum_recursive(&spec, &ct).unwrap(),
                    class_sum(&spec, &ct).unwrap(),
                    "{spec} {ct}"
                );
            }
            for l in 1..=3 {
                let Ok(ct) = CycleType::with_fixed_points(n, &[5u64.pow(l); 2]) else { continue };
                assert_eq!(class_sum_recursive(&spec, &ct).unwrap(), class_sum(&spec, &ct).unwrap());
            }
        }
    }
}
