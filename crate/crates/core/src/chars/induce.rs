use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::oracle::oracle_class_sum;
use super::recursive::class_sum_recursive;
use super::closed::overflows;
use super::recursive::{gamma_pair_recursive, gamma_recursive};
use super::{c_factor, class_sum, gamma_closed, gamma_pair, BitSeq, CharSpec};
use crate::rational::{big_pow, from_big};
use crate::sylow::{centralizer_order, sylow_order, CycleType};
use crate::{Error, ExactRational, Result};

/// Evaluation route for class sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Closed,
    Recursive,
    Oracle,
    /// Closed form when one exists, else enumeration within budget.
    Auto,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Closed => "closed",
            Mode::Recursive => "recursive",
            Mode::Oracle => "oracle",
            Mode::Auto => "auto",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Mode::Closed),
            "recursive" => Ok(Mode::Recursive),
            "oracle" => Ok(Mode::Oracle),
            "auto" => Ok(Mode::Auto),
            other => Err(Error::domain(format!("unknown mode {other:?}"))),
        }
    }
}

/// An induced character value with the class sum it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub value: ExactRational,
    pub class_sum: ExactRational,
    /// The route that actually ran (never `Auto`).
    pub mode: Mode,
}

/// Class sum along one route, `Auto` resolved.
pub fn class_sum_with(spec: &CharSpec, ct: &CycleType, mode: Mode, budget: u64) -> Result<(ExactRational, Mode)> {
    match mode {
        Mode::Closed => Ok((class_sum(spec, ct)?, Mode::Closed)),
        Mode::Recursive => Ok((class_sum_recursive(spec, ct)?, Mode::Recursive)),
        Mode::Oracle => Ok((oracle_class_sum(spec, ct, budget)?, Mode::Oracle)),
        Mode::Auto => {
            let closed_refusal = match class_sum(spec, ct) {
                Ok(v) => return Ok((v, Mode::Closed)),
                Err(e @ (Error::NoClosedForm(_) | Error::Unsupported(_))) => e,
                Err(e) => return Err(e),
            };
            match oracle_class_sum(spec, ct, budget) {
                Ok(v) => Ok((v, Mode::Oracle)),
                Err(e) if e.is_budget() => Err(Error::NoPath {
                    refusals: vec![format!("closed: {closed_refusal}"), format!("oracle: {e}")],
                    budget_only: true,
                }),
                Err(e) => Err(e),
            }
        }
    }
}

/// `Γ` for one bit row `u` of length `k` along one route. `levels` is either
/// strictly increasing or a pair `[l, l]`. Cycles that cannot fit in `p^k`
/// points give 0 on every route.
pub fn gamma_with(
    p: u32,
    levels: &[u32],
    u: &BitSeq,
    mode: Mode,
    budget: u64,
) -> Result<(ExactRational, Mode)> {
    let k = u.len() as u32;
    let pair = match levels {
        [a, b] if a == b => Some(*a),
        _ => None,
    };
    let closed = || match pair {
        Some(l) => gamma_pair(p, k, l, u),
        None => gamma_closed(p, k, levels, u),
    };
    let oracle = || -> Result<ExactRational> {
        if levels.is_empty() || levels.iter().any(|&l| l == 0 || l > k) {
            return Err(Error::domain(format!("levels {levels:?} outside 1..={k}")));
        }
        if overflows(p, k, levels) {
            return Ok(BigRational::zero());
        }
        let parts: Vec<u64> = levels.iter().map(|&l| (p as u64).pow(l)).collect();
        let ct = CycleType::with_fixed_points((p as u64).pow(k), &parts)?;
        oracle_class_sum(&CharSpec::new(p, vec![u.clone()])?, &ct, budget)
    };
    match mode {
        Mode::Closed => Ok((closed()?, Mode::Closed)),
        Mode::Recursive => {
            let v = match pair {
                Some(l) => gamma_pair_recursive(p, k, l, u)?,
                None => gamma_recursive(p, k, levels, u)?,
            };
            Ok((v, Mode::Recursive))
        }
        Mode::Oracle => Ok((oracle()?, Mode::Oracle)),
        Mode::Auto => {
            let refusal = match closed() {
                Ok(v) => return Ok((v, Mode::Closed)),
                Err(e @ (Error::NoClosedForm(_) | Error::Unsupported(_))) => e,
                Err(e) => return Err(e),
            };
            match oracle() {
                Ok(v) => Ok((v, Mode::Oracle)),
                Err(e) if e.is_budget() => Err(Error::NoPath {
                    refusals: vec![format!("closed: {refusal}"), format!("oracle: {e}")],
                    budget_only: true,
                }),
                Err(e) => Err(e),
            }
        }
    }
}

/// `φ↑^{S_n}(g) = |C_{S_n}(g)| / |P_n| · Σ_{x ∈ P_n ∩ g^{S_n}} φ(x)`.
///
/// Every result is checked to be an integer; a fraction is an internal error.
pub fn induced_value(spec: &CharSpec, ct: &CycleType, mode: Mode, budget: u64) -> Result<Induced> {
    let (sum, used) = class_sum_with(spec, ct, mode, budget)?;
    let scale = BigRational::new(centralizer_order(ct), sylow_order(spec.n(), spec.p())?);
    let value = scale * &sum;
    if !value.is_integer() {
        return Err(Error::internal(format!(
            "induced value {value} of {spec} at {ct} is not an integer"
        )));
    }
    Ok(Induced {
        value,
        class_sum: sum,
        mode: used,
    })
}

/// Induced value on a product of `a` disjoint `p^k`-cycles,
/// `|C|/|P| · ∏_i p^k C_k(u^i)`, which never vanishes.
pub fn induced_nonzero_check(spec: &CharSpec) -> Result<ExactRational> {
    let (a, k) = spec.require_uniform()?;
    if k == 0 {
        return Err(Error::domain("no moved points when k = 0"));
    }
    let p = spec.p();
    let cycle = (p as u64).pow(k);
    let ct = CycleType::new(spec.n(), vec![cycle; a as usize])?;
    let mut sum = from_big(num_bigint::BigInt::from(1));
    for u in spec.bit_rows() {
        sum *= from_big(big_pow(p as u64, k as u64)) * c_factor(p, k, &u)?;
    }
    let value = BigRational::new(centralizer_order(&ct), sylow_order(spec.n(), p)?) * sum;
    if value.is_zero() || !value.is_integer() {
        return Err(Error::internal(format!("value {value} on {ct} should be a nonzero integer")));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::BitSeq;
    use crate::rational::int;
    use crate::sylow::DEFAULT_BUDGET;

    fn spec(p: u32, rows: &[&str]) -> CharSpec {
        CharSpec::new(p, rows.iter().map(|s| BitSeq::parse(s).unwrap()).collect()).unwrap()
    }

    fn ct(n: u64, moved: &[u64]) -> CycleType {
        CycleType::with_fixed_points(n, moved).unwrap()
    }

    #[test]
    fn worked_induced_values() {
        for mode in [Mode::Closed, Mode::Recursive, Mode::Oracle, Mode::Auto] {
            let v = |rows: &[&str], moved: &[u64]| {
                induced_value(&spec(3, rows), &ct(9, moved), mode, DEFAULT_BUDGET).unwrap().value
            };
            assert_eq!(v(&["11"], &[3]), int(160));
            assert_eq!(v(&["01"], &[3]), int(-80));
            assert_eq!(v(&["11"], &[3, 3]), int(16));
        }
        let sign = induced_value(&spec(2, &["0"]), &ct(2, &[2]), Mode::Oracle, DEFAULT_BUDGET).unwrap();
        assert_eq!(sign.value, int(-1));
    }

    #[test]
    fn auto_reports_route() {
        let s = spec(3, &["11"]);
        let r = induced_value(&s, &ct(9, &[3]), Mode::Auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mode, Mode::Closed);
        let r = induced_value(&s, &ct(9, &[3, 3, 3]), Mode::Auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mode, Mode::Oracle);
    }

    #[test]
    fn no_path_lists_refusals() {
        let s = spec(3, &["1111"]);
        match induced_value(&s, &ct(81, &[3, 3, 3]), Mode::Auto, DEFAULT_BUDGET) {
            Err(Error::NoPath { refusals, budget_only }) => {
                assert_eq!(refusals.len(), 2);
                assert!(budget_only);
            }
            other => panic!("expected NoPath, got {other:?}"),
        }
        assert!(matches!(
            induced_value(&s, &ct(81, &[3, 3, 3]), Mode::Closed, DEFAULT_BUDGET),
            Err(Error::NoClosedForm(_))
        ));
    }

    #[test]
    fn nonzero_on_long_cycles() {
        assert_eq!(induced_nonzero_check(&spec(3, &["1"])).unwrap(), int(2));
        assert_eq!(induced_nonzero_check(&spec(3, &["0"])).unwrap(), int(-1));
        for bits in 0..8 {
            for other in 0..8 {
                let s = CharSpec::new(3, vec![BitSeq::from_index(bits, 3), BitSeq::from_index(other, 3)]).unwrap();
                let v = induced_nonzero_check(&s).unwrap();
                let direct = induced_value(&s, &ct(54, &[27, 27]), Mode::Closed, DEFAULT_BUDGET).unwrap();
                assert_eq!(v, direct.value);
            }
        }
        let trivial = CharSpec::new(5, vec![BitSeq::ones(2); 3]).unwrap();
        assert!(induced_nonzero_check(&trivial).unwrap() > int(0));
    }

    #[test]
    fn gamma_routes() {
        let u = |s: &str| BitSeq::parse(s).unwrap();
        for mode in [Mode::Closed, Mode::Recursive, Mode::Oracle, Mode::Auto] {
            let g = |levels: &[u32], bits: &str| gamma_with(3, levels, &u(bits), mode, DEFAULT_BUDGET).unwrap().0;
            assert_eq!(g(&[1], "10"), int(6));
            assert_eq!(g(&[1], "00"), int(-3));
            assert_eq!(g(&[1, 2], "11"), int(0));
            assert_eq!(g(&[1, 1], "11"), int(3 * 2 * 2));
        }
        // no pair formula at p = 2, so auto enumerates
        let (v, used) = gamma_with(2, &[1, 1], &u("11"), Mode::Auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(used, Mode::Oracle);
        assert_eq!(v, int(3));
    }

    #[test]
    fn mode_parsing() {
        for m in [Mode::Closed, Mode::Recursive, Mode::Oracle, Mode::Auto] {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
        }
        assert!("fast".parse::<Mode>().is_err());
    }
}
