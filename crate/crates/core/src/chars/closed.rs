use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BitSeq, CharSpec};
use crate::combinat::{enumerate_partitions, m_product, r_value, LevelSet};
use crate::rational::{big_pow, from_big, rat_pow};
use crate::sylow::CycleType;
use crate::{ensure_prime, Error, ExactRational, Result};

/// Shape of a cycle type as seen by the closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeShape {
    /// No moved points.
    Identity,
    /// Some part is not a power of `p`; no element of a `p`-group has this type.
    NotPPower,
    /// Distinct moved parts `p^{l_1} < … < p^{l_b}`.
    Distinct(Vec<u32>),
    /// Exactly two moved parts, both `p^l`.
    Pair(u32),
    /// Any other multiset of `p`-power parts, given by increasing levels.
    Repeated(Vec<u32>),
}

pub fn type_shape(p: u32, ct: &CycleType) -> TypeShape {
    let Some(levels) = ct.moved_levels(p) else {
        return TypeShape::NotPPower;
    };
    match levels.as_slice() {
        [] => TypeShape::Identity,
        [l, m] if l == m => TypeShape::Pair(*l),
        _ if levels.windows(2).all(|w| w[0] < w[1]) => TypeShape::Distinct(levels),
        _ => TypeShape::Repeated(levels),
    }
}

/// `C_l(u) = p^{(p^l - 1)/(p - 1) - 2l} ∏_{m ≤ l} (p u_m - 1)`.
pub fn c_factor(p: u32, l: u32, u: &BitSeq) -> Result<ExactRational> {
    ensure_prime(p)?;
    if l == 0 || l as usize > u.len() {
        return Err(Error::domain(format!("level {l} outside 1..={}", u.len())));
    }
    let nodes = (0..l).fold(0i64, |acc, _| acc * p as i64 + 1);
    let mut value = rat_pow(p as u64, nodes - 2 * l as i64);
    for m in 1..=l as usize {
        value *= BigRational::from_integer(BigInt::from(p as i64 * u.value(m) - 1));
    }
    Ok(value)
}

pub(crate) fn check_levels(p: u32, k: u32, levels: &[u32], u: &BitSeq) -> Result<()> {
    ensure_prime(p)?;
    if u.len() != k as usize {
        return Err(Error::domain(format!("bit sequence of length {} for k = {k}", u.len())));
    }
    if levels.is_empty() {
        return Err(Error::domain("at least one level is required"));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("levels {levels:?} are not strictly increasing")));
    }
    if levels[0] == 0 || *levels.last().unwrap() > k {
        return Err(Error::domain(format!("levels {levels:?} outside 1..={k}")));
    }
    if levels.len() >= p as usize {
        return Err(Error::domain(format!(
            "{} levels; the formulas need at most p - 1 = {}",
            levels.len(),
            p - 1
        )));
    }
    Ok(())
}

/// True when cycles of lengths `p^{l_i}` cannot fit in `p^k` points.
pub(crate) fn overflows(p: u32, k: u32, levels: &[u32]) -> bool {
    let total: BigInt = levels.iter().map(|&l| big_pow(p as u64, l as u64)).sum();
    total > big_pow(p as u64, k as u64)
}

/// `Γ_{l_1,…,l_b;k}(u)`: sum of `φ(u)` over elements of `P_{p^k}` whose moved
/// cycles have lengths exactly `p^{l_1}, …, p^{l_b}`, via
/// `p^k C_{l_1}(u) ⋯ C_{l_b}(u) R^{[b]}_k`.
pub fn gamma_closed(p: u32, k: u32, levels: &[u32], u: &BitSeq) -> Result<ExactRational> {
    check_levels(p, k, levels, u)?;
    if overflows(p, k, levels) {
        return Ok(BigRational::zero());
    }
    let set = LevelSet::new(p, levels.to_vec())?;
    let all: Vec<usize> = (1..=levels.len()).collect();
    let mut value = from_big(big_pow(p as u64, k as u64) * r_value(&set, &all, k)?);
    for &l in levels {
        value *= c_factor(p, l, u)?;
    }
    Ok(value)
}

/// `Γ_{l,l;k}(u) = p^k (p^k - p^l)/2 · C_l(u)^2`, the sum over elements with
/// exactly two moved cycles, both of length `p^l`.
pub fn gamma_pair(p: u32, k: u32, l: u32, u: &BitSeq) -> Result<ExactRational> {
    if p == 2 {
        return Err(Error::Unsupported("the pair formula needs an odd prime".into()));
    }
    check_levels(p, k, &[l], u)?;
    let pk = big_pow(p as u64, k as u64);
    let pl = big_pow(p as u64, l as u64);
    let c = c_factor(p, l, u)?;
    Ok(BigRational::new(&pk * (&pk - pl), BigInt::from(2)) * &c * &c)
}

/// `Σ_i ∏_{t∈τ} C_{l_t}(u^i)` over the rows.
fn row_sum(p: u32, levels: &[u32], tau: &[usize], rows: &[BitSeq]) -> Result<ExactRational> {
    let mut total = BigRational::zero();
    for u in rows {
        let mut term = BigRational::one();
        for &t in tau {
            term *= c_factor(p, levels[t - 1], u)?;
        }
        total += term;
    }
    Ok(total)
}

/// `Σ_{ν∈Part[b]} (-1)^{b-|ν|} p^{k|ν|} ∏_{τ∈ν} [M(τ) · Σ_i ∏_{t∈τ} C_{l_t}(u^i)]`.
fn distinct_class_sum(p: u32, k: u32, levels: &[u32], rows: &[BitSeq]) -> Result<ExactRational> {
    let b = levels.len();
    let set = LevelSet::new(p, levels.to_vec())?;
    let mut total = BigRational::zero();
    for nu in enumerate_partitions(b)? {
        let mut term = from_big(big_pow(p as u64, k as u64 * nu.len() as u64));
        for tau in nu.blocks() {
            term *= from_big(m_product(&set, tau)?) * row_sum(p, levels, tau, rows)?;
        }
        if (b - nu.len()) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    Ok(total)
}

fn pair_class_sum(p: u32, k: u32, l: u32, rows: &[BitSeq]) -> Result<ExactRational> {
    let cs = rows
        .iter()
        .map(|u| c_factor(p, l, u))
        .collect::<Result<Vec<_>>>()?;
    let sum: ExactRational = cs.iter().sum();
    let squares: ExactRational = cs.iter().map(|c| c * c).sum();
    let two = BigInt::from(2);
    let p2k = BigRational::new(big_pow(p as u64, 2 * k as u64), two.clone());
    if l < k {
        let pkl = BigRational::new(big_pow(p as u64, (k + l) as u64), two);
        Ok(p2k * &sum * &sum - pkl * squares)
    } else {
        Ok(p2k * (&sum * &sum - squares))
    }
}

/// Sum of `φ(u)` over the elements of `P_{a p^k}` of cycle type `ct`, by the
/// closed forms. Covers distinct `p`-power parts (at most `p - 1` of them)
/// and, for odd `p`, two equal parts; anything else is refused with
/// [`Error::NoClosedForm`].
pub fn class_sum(spec: &CharSpec, ct: &CycleType) -> Result<ExactRational> {
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
            distinct_class_sum(p, k, &levels, &rows)
        }
        TypeShape::Pair(l) if p != 2 => {
            if l > k {
                return Ok(BigRational::zero());
            }
            pair_class_sum(p, k, l, &rows)
        }
        _ => Err(Error::NoClosedForm(ct.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn u(s: &str) -> BitSeq {
        BitSeq::parse(s).unwrap()
    }

    fn frac(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    fn spec(p: u32, rows: &[&str]) -> CharSpec {
        CharSpec::new(p, rows.iter().map(|s| u(s)).collect()).unwrap()
    }

    #[test]
    fn c_factor_values() {
        assert_eq!(c_factor(3, 1, &u("1")).unwrap(), frac(2, 3));
        assert_eq!(c_factor(3, 1, &u("0")).unwrap(), frac(-1, 3));
        assert_eq!(c_factor(3, 2, &u("11")).unwrap(), int(4));
        assert!(c_factor(3, 3, &u("11")).is_err());
    }

    #[test]
    fn c_factor_ignores_higher_bits() {
        for l in 1..=3 {
            let base = c_factor(3, l, &u("10110")).unwrap();
            let mut bits = u("10110").bits().to_vec();
            for b in bits.iter_mut().skip(l as usize) {
                *b = !*b;
            }
            assert_eq!(c_factor(3, l, &BitSeq::new(bits)).unwrap(), base);
        }
    }

    #[test]
    fn single_cycle_base_values() {
        for p in [2u32, 3, 5, 7] {
            assert_eq!(gamma_closed(p, 1, &[1], &u("1")).unwrap(), int(p as i64 - 1));
            assert_eq!(gamma_closed(p, 1, &[1], &u("0")).unwrap(), int(-1));
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_closed(3, 2, &[1], &u("11")).unwrap(), int(6));
        assert_eq!(gamma_closed(3, 2, &[1], &u("01")).unwrap(), int(-3));
        assert_eq!(gamma_closed(3, 2, &[2], &u("11")).unwrap(), int(36));
        assert_eq!(gamma_closed(3, 2, &[1, 2], &u("11")).unwrap(), int(0));
        assert_eq!(gamma_closed(3, 3, &[1, 2], &u("110")).unwrap(), int(1296));
        assert_eq!(gamma_closed(3, 3, &[1, 2], &u("111")).unwrap(), int(1296));
    }

    #[test]
    fn gamma_top_level_product() {
        // Γ_{2;2}(u) = 9 (3u_1 - 1)(3u_2 - 1)
        for s in ["00", "01", "10", "11"] {
            let v = u(s);
            let expected = 9 * (3 * v.value(1) - 1) * (3 * v.value(2) - 1);
            assert_eq!(gamma_closed(3, 2, &[2], &v).unwrap(), int(expected));
        }
    }

    #[test]
    fn gamma_guards() {
        assert!(matches!(gamma_closed(3, 3, &[1, 2, 3], &u("111")), Err(Error::Domain(_))));
        assert!(gamma_closed(3, 2, &[2, 1], &u("11")).is_err());
        assert!(gamma_closed(3, 2, &[3], &u("11")).is_err());
        assert!(gamma_closed(3, 2, &[1], &u("111")).is_err());
        assert!(gamma_closed(4, 2, &[1], &u("11")).is_err());
    }

    #[test]
    fn two_level_worked_formula() {
        // Γ_{l1,l2;k} = Σ_{i=l2}^{k-1} p^{k-i}(p-1) Γ_{l1;i} Γ_{l2;i}, on prefixes of u
        for p in [3u32, 5] {
            for bits in 0..64u64 {
                let full = BitSeq::from_index(bits, 6);
                for (l1, l2) in [(1u32, 2u32), (1, 3), (2, 4)] {
                    for k in l2..=6 {
                        let v = full.prefix(k as usize);
                        let mut sum = BigRational::zero();
                        for i in l2..k {
                            let w = full.prefix(i as usize);
                            sum += from_big(big_pow(p as u64, (k - i) as u64) * (p - 1))
                                * gamma_closed(p, i, &[l1], &w).unwrap()
                                * gamma_closed(p, i, &[l2], &w).unwrap();
                        }
                        assert_eq!(gamma_closed(p, k, &[l1, l2], &v).unwrap(), sum);
                    }
                }
            }
        }
    }

    #[test]
    fn three_level_worked_formula() {
        // p^k C1 C2 C3 (p^k - p^{l3})(p^k - p^{l3} - p^{l2})
        let p = 5u32;
        for bits in 0..32u64 {
            let v = BitSeq::from_index(bits, 5);
            let (l1, l2, l3, k) = (1u32, 2u32, 4u32, 5u32);
            let pk = big_pow(5, 5);
            let r = (&pk - big_pow(5, l3 as u64)) * (&pk - big_pow(5, l3 as u64) - big_pow(5, l2 as u64));
            let expected = from_big(pk * r)
                * c_factor(p, l1, &v).unwrap()
                * c_factor(p, l2, &v).unwrap()
                * c_factor(p, l3, &v).unwrap();
            assert_eq!(gamma_closed(p, k, &[l1, l2, l3], &v).unwrap(), expected);
        }
    }

    #[test]
    fn pair_values() {
        assert_eq!(gamma_pair(3, 2, 1, &u("11")).unwrap(), int(12));
        assert_eq!(gamma_pair(3, 2, 1, &u("01")).unwrap(), int(3));
        assert_eq!(gamma_pair(3, 2, 2, &u("11")).unwrap(), int(0));
        assert!(matches!(gamma_pair(2, 2, 1, &u("11")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pair_matches_one_step_recurrence() {
        for p in [3u32, 5] {
            for bits in 0..32u64 {
                let full = BitSeq::from_index(bits, 5);
                for l in 1..=4u32 {
                    for k in l + 1..=5 {
                        let v = full.prefix(k as usize);
                        let w = full.prefix(k as usize - 1);
                        let single = gamma_closed(p, k - 1, &[l], &w).unwrap();
                        let previous = gamma_pair(p, k - 1, l, &w).unwrap();
                        let binom = int((p * (p - 1) / 2) as i64);
                        let expected = binom * &single * &single + int(p as i64) * previous;
                        assert_eq!(gamma_pair(p, k, l, &v).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn single_row_class_sum_is_gamma() {
        for bits in 0..8u64 {
            let v = BitSeq::from_index(bits, 3);
            let s = CharSpec::new(5, vec![v.clone()]).unwrap();
            for levels in [vec![1u32], vec![2], vec![1, 3], vec![1, 2, 3], vec![3]] {
                let parts: Vec<u64> = levels.iter().map(|&l| 5u64.pow(l)).collect();
                let Ok(ct) = CycleType::with_fixed_points(125, &parts) else { continue };
                assert_eq!(class_sum(&s, &ct).unwrap(), gamma_closed(5, 3, &levels, &v).unwrap());
            }
        }
    }

    #[test]
    fn three_level_expansion_matches_display() {
        let p = 5u32;
        let levels = [1u32, 2, 3];
        let rows = [u("1011"), u("0110"), u("1101")];
        let s = CharSpec::new(p, rows.to_vec()).unwrap();
        let ct = CycleType::with_fixed_points(3 * 625, &[5, 25, 125]).unwrap();
        let sum = |tau: &[usize]| row_sum(p, &levels, tau, &rows).unwrap();
        let pk = from_big(big_pow(5, 4));
        let (p2, p3) = (from_big(big_pow(5, 2)), from_big(big_pow(5, 3)));
        let expected = &pk * &pk * &pk * sum(&[1]) * sum(&[2]) * sum(&[3])
            - &pk * &pk * &p2 * sum(&[1, 2]) * sum(&[3])
            - &pk * &pk * &p3 * sum(&[1, 3]) * sum(&[2])
            - &pk * &pk * &p3 * sum(&[2, 3]) * sum(&[1])
            + &pk * &p3 * (&p3 + &p2) * sum(&[1, 2, 3]);
        assert_eq!(class_sum(&s, &ct).unwrap(), expected);
    }

    #[test]
    fn two_row_regression_class_sums() {
        let s = spec(3, &["100", "011"]);
        let t = spec(3, &["101", "010"]);
        let ct = CycleType::with_fixed_points(54, &[3, 27]).unwrap();
        let unit = from_big(big_pow(3, 12));
        assert_eq!(class_sum(&s, &ct).unwrap(), int(-10) * &unit);
        assert_eq!(class_sum(&t, &ct).unwrap(), int(8) * &unit);
        for parts in [vec![3u64], vec![9], vec![27], vec![3, 3], vec![9, 9], vec![27, 27]] {
            let ct = CycleType::with_fixed_points(54, &parts).unwrap();
            assert_eq!(class_sum(&s, &ct).unwrap(), class_sum(&t, &ct).unwrap(), "{ct}");
        }
    }

    #[test]
    fn unsupported_types_fail_loudly() {
        let s = spec(3, &["11"]);
        let ct = CycleType::with_fixed_points(9, &[3, 3, 3]).unwrap();
        assert!(matches!(class_sum(&s, &ct), Err(Error::NoClosedForm(_))));
        let s2 = spec(2, &["11"]);
        let ct = CycleType::with_fixed_points(4, &[2, 2]).unwrap();
        assert!(matches!(class_sum(&s2, &ct), Err(Error::NoClosedForm(_))));
        let ct = CycleType::with_fixed_points(9, &[2]).unwrap();
        assert_eq!(class_sum(&s, &ct).unwrap(), int(0));
        assert_eq!(class_sum(&s, &CycleType::identity(9)).unwrap(), int(1));
        assert!(class_sum(&s, &CycleType::identity(8)).is_err());
    }
}
