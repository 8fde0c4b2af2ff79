use serde::Serialize;

use super::profile::{level_lists, FProfile};
use crate::chars::{class_sum, BitSeq, CharSpec};
use crate::rational::RationalJson;
use crate::sylow::CycleType;
use crate::{Error, ExactRational, Result};

fn check_same_shape(s: &CharSpec, t: &CharSpec) -> Result<()> {
    if s.p() != t.p() || s.n() != t.n() {
        return Err(Error::domain(format!(
            "characters of P_{} (p = {}) and P_{} (p = {})",
            s.n(),
            s.p(),
            t.n(),
            t.p()
        )));
    }
    Ok(())
}

/// Bit rows of each factor level, sorted, one group per `p`-adic digit.
fn grouped_rows(spec: &CharSpec) -> Vec<(u32, Vec<BitSeq>)> {
    let mut groups: Vec<(u32, Vec<BitSeq>)> = Vec::new();
    for row in spec.rows() {
        match groups.last_mut() {
            Some((level, rows)) if *level == row.level() => rows.push(row.bits().clone()),
            _ => groups.push((row.level(), vec![row.bits().clone()])),
        }
    }
    for (_, rows) in &mut groups {
        rows.sort_by(|x, y| x.bits().cmp(y.bits()));
    }
    groups
}

/// Whether the two characters are conjugate under the normalizer of `P_n`:
/// for each `p`-adic digit, the rows agree up to order. Exponent choices on
/// the 0-bits are ignored.
pub fn n_conjugate(s: &CharSpec, t: &CharSpec) -> Result<bool> {
    check_same_shape(s, t)?;
    Ok(grouped_rows(s) == grouped_rows(t))
}

/// A cycle type on which the two induced characters differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Levels of the moved cycles (a repeated level means a pair of equal cycles).
    pub levels: Vec<u32>,
    pub cycle_type: CycleType,
    pub class_sums: [ExactRational; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n_conjugate: bool,
    pub induced_equal: bool,
    pub witness: Option<Witness>,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub levels: Vec<u32>,
    pub cycle_type: Vec<u64>,
    pub class_sums: [RationalJson; 2],
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        let mut cycle_type = w.cycle_type.moved_parts();
        cycle_type.sort_unstable();
        WitnessJson {
            levels: w.levels.clone(),
            cycle_type,
            class_sums: [(&w.class_sums[0]).into(), (&w.class_sums[1]).into()],
        }
    }
}

fn witness_at(s: &CharSpec, t: &CharSpec, levels: Vec<u32>) -> Result<Option<Witness>> {
    let p = s.p() as u64;
    let parts: Vec<u64> = levels.iter().map(|&l| p.pow(l)).collect();
    let cycle_type = CycleType::with_fixed_points(s.n(), &parts)?;
    let sums = [class_sum(s, &cycle_type)?, class_sum(t, &cycle_type)?];
    Ok((sums[0] != sums[1]).then_some(Witness {
        levels,
        cycle_type,
        class_sums: sums,
    }))
}

/// Search level lists by length and then lexicographically for the first
/// `f`-multiset that separates the rows, and confirm it with class sums.
///
/// If a single level separates the rows but its class sums coincide, the
/// pair of equal cycles at that level is tried too.
fn find_witness(s: &CharSpec, t: &CharSpec, a: usize, k: u32) -> Result<Witness> {
    let (fs, ft) = (FProfile::from_spec(s)?, FProfile::from_spec(t)?);
    for levels in level_lists(k, a) {
        if fs.get(&levels) == ft.get(&levels) {
            continue;
        }
        if let Some(w) = witness_at(s, t, levels.clone())? {
            return Ok(w);
        }
        if levels.len() == 1 && s.p() != 2 && a >= 2 {
            if let Some(w) = witness_at(s, t, vec![levels[0]; 2])? {
                return Ok(w);
            }
        }
    }
    Err(Error::internal(format!("no separating cycle type for {s} and {t}")))
}

/// Whether the two characters induce the same character of `S_n`, decided
/// by normalizer conjugacy. For `n = a·p^k` an unequal pair also gets a
/// witness cycle type with the two differing class sums.
pub fn induced_equal(s: &CharSpec, t: &CharSpec) -> Result<Classification> {
    let conj = n_conjugate(s, t)?;
    let witness = match (conj, s.uniform()) {
        (false, Some((a, k))) if k > 0 => Some(find_witness(s, t, a as usize, k)?),
        _ => None,
    };
    Ok(Classification {
        n_conjugate: conj,
        induced_equal: conj,
        witness,
    })
}
