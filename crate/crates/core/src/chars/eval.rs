use super::{CharSpec, Row};
use crate::sylow::{ProductElem, WreathElem};
use crate::{CycInt, Error, Result};

/// Exponent `m` with `row(x) = ζ_p^m`, following the wreath recursion: the top
/// contributes its own character value, then a trivial top multiplies the
/// children's values and a nontrivial top passes to the twisted product.
pub fn row_exponent(row: &Row, x: &WreathElem) -> Result<u32> {
    if row.level() != x.level() {
        return Err(Error::domain(format!(
            "character of level {} on an element of level {}",
            row.level(),
            x.level()
        )));
    }
    Ok(exponent_rec(x.p(), row, x))
}

fn exponent_rec(p: u32, row: &Row, x: &WreathElem) -> u32 {
    let level = x.level() as usize;
    if level == 0 {
        return 0;
    }
    let e = x.top().unwrap_or(0);
    let own = e * row.exponents()[level - 1] % p;
    let below = if e == 0 {
        (0..p as usize)
            .map(|i| exponent_rec(p, row, &x.child(i).unwrap()))
            .sum::<u32>()
    } else {
        exponent_rec(p, row, &x.twisted_product().unwrap())
    };
    (own + below) % p
}

/// Exponent from the abelianisation: `Σ_j e_j · S_j mod p`, where `S_j` sums
/// the top exponents of all nodes at level `j`.
pub fn row_exponent_from_level_sums(p: u32, row: &Row, level_sums: &[u32]) -> u32 {
    row.exponents()
        .iter()
        .zip(level_sums)
        .map(|(&e, &s)| e * s % p)
        .sum::<u32>()
        % p
}

/// Value of a single-row character at `x`.
pub fn char_eval(spec: &CharSpec, x: &WreathElem) -> Result<CycInt> {
    if spec.rows().len() != 1 {
        return Err(Error::domain(format!(
            "single-factor evaluation needs one row, got {}",
            spec.rows().len()
        )));
    }
    let m = row_exponent(&spec.rows()[0], x)?;
    Ok(CycInt::root_power(spec.p(), m as u64))
}

/// Value of a character of `P_n` at a product element: the product of the
/// per-factor values.
pub fn char_eval_product(spec: &CharSpec, x: &ProductElem) -> Result<CycInt> {
    if x.factors.len() != spec.rows().len() {
        return Err(Error::domain(format!(
            "element with {} factors for a character with {}",
            x.factors.len(),
            spec.rows().len()
        )));
    }
    let mut m = 0u64;
    for (row, f) in spec.rows().iter().zip(&x.factors) {
        m += row_exponent(row, f)? as u64;
    }
    Ok(CycInt::root_power(spec.p(), m))
}
