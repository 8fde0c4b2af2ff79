use std::fmt;
use std::str::FromStr;

use crate::sylow::{p_adic, PAdicShape};
use crate::{ensure_prime, Error, Result};

/// Bits `u_1, …, u_k` of a linear character of `P_{p^k}`; `u_j = 1` marks a
/// trivial coordinate at level `j`.
///
/// The string form lists `u_1` first: `"10"` is `u_1 = 1, u_2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSeq {
    bits: Vec<bool>,
}

impl BitSeq {
    pub fn new(bits: Vec<bool>) -> Self {
        BitSeq { bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("bit string {s:?} contains {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BitSeq::new)
    }

    pub fn ones(k: usize) -> Self {
        BitSeq { bits: vec![true; k] }
    }

    /// Bits of `value`, least significant bit as `u_1`.
    pub fn from_index(value: u64, k: usize) -> Self {
        BitSeq {
            bits: (0..k).map(|j| value >> j & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `u_j` for the 1-based level `j`.
    pub fn bit(&self, j: usize) -> bool {
        self.bits[j - 1]
    }

    /// `u_j` as 0 or 1.
    pub fn value(&self, j: usize) -> i64 {
        i64::from(self.bit(j))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `(u_1, …, u_len)`.
    pub fn prefix(&self, len: usize) -> BitSeq {
        BitSeq {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// Number of ones among `u_1, …, u_l`.
    pub fn prefix_sum(&self, l: usize) -> u32 {
        self.bits[..l].iter().filter(|&&b| b).count() as u32
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitSeq::parse(s)
    }
}

/// Linear character of one wreath factor `P_{p^l}`: the bits plus, for each
/// 0-bit, the exponent `e` of the chosen nontrivial character `c ↦ ζ_p^e`.
/// Exponents at 1-bits are stored as 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    bits: BitSeq,
    exponents: Vec<u32>,
}

impl Row {
    /// The default choice: exponent 1 at every 0-bit.
    pub fn new(bits: BitSeq) -> Self {
        let exponents = bits.bits().iter().map(|&b| u32::from(!b)).collect();
        Row { bits, exponents }
    }

    pub fn with_exponents(p: u32, bits: BitSeq, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != bits.len() {
            return Err(Error::domain(format!(
                "{} exponents for a {}-bit row",
                exponents.len(),
                bits.len()
            )));
        }
        for (j, (&b, &e)) in bits.bits().iter().zip(&exponents).enumerate() {
            let ok = if b { e == 0 } else { (1..p).contains(&e) };
            if !ok {
                return Err(Error::domain(format!(
                    "exponent {e} at level {} of row {bits} (bit {})",
                    j + 1,
                    u8::from(b)
                )));
            }
        }
        Ok(Row { bits, exponents })
    }

    pub fn bits(&self) -> &BitSeq {
        &self.bits
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn level(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Every row with these bits, over all exponent choices, in lexicographic order.
    pub fn all_choices(p: u32, bits: &BitSeq) -> Vec<Row> {
        let mut out = vec![Vec::new()];
        for &b in bits.bits() {
            let options: Vec<u32> = if b { vec![0] } else { (1..p).collect() };
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    options.iter().map(move |&e| {
                        let mut next = prefix.clone();
                        next.push(e);
                        next
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|exponents| Row {
                bits: bits.clone(),
                exponents,
            })
            .collect()
    }
}

/// A linear character of `P_n`: one [`Row`] per wreath factor, factors ordered
/// as in [`PAdicShape::factor_levels`].
///
/// For `n = a·p^k` these are the `a` rows `u^1, …, u^a` of common length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSpec {
    p: u32,
    shape: PAdicShape,
    rows: Vec<Row>,
}

impl CharSpec {
    /// `a` rows of common length `k`, default exponents, on `P_{a p^k}`.
    pub fn new(p: u32, rows: Vec<BitSeq>) -> Result<Self> {
        Self::from_rows(p, rows.into_iter().map(Row::new).collect())
    }

    /// `a` rows of common length `k` with explicit exponent choices.
    pub fn from_rows(p: u32, rows: Vec<Row>) -> Result<Self> {
        ensure_prime(p)?;
        let a = rows.len() as u32;
        if a == 0 || a >= p {
            return Err(Error::domain(format!("{a} rows; need between 1 and {}", p - 1)));
        }
        let k = rows[0].level();
        if rows.iter().any(|r| r.level() != k) {
            return Err(Error::domain("rows of different lengths"));
        }
        let shape = PAdicShape::single(p, a, k)?;
        Self::build(p, shape, rows)
    }

    /// A character of `P_n` for arbitrary `n`. `rows` lists the factors of
    /// positive level in increasing level order; factors `P_1` are implicit.
    pub fn for_degree(p: u32, n: u64, rows: Vec<Row>) -> Result<Self> {
        let shape = p_adic(n, p)?;
        let positive = shape.factor_levels().iter().filter(|&&l| l > 0).count();
        if rows.len() != positive {
            return Err(Error::domain(format!(
                "P_{n} has {positive} factors of positive level, got {} rows",
                rows.len()
            )));
        }
        let mut all: Vec<Row> = shape
            .factor_levels()
            .iter()
            .filter(|&&l| l == 0)
            .map(|_| Row::new(BitSeq::new(vec![])))
            .collect();
        all.extend(rows);
        Self::build(p, shape, all)
    }

    fn build(p: u32, shape: PAdicShape, rows: Vec<Row>) -> Result<Self> {
        for (row, level) in rows.iter().zip(shape.factor_levels()) {
            if row.level() != level {
                return Err(Error::domain(format!(
                    "row {} has length {}, factor needs {level}",
                    row.bits(),
                    row.level()
                )));
            }
            Row::with_exponents(p, row.bits.clone(), row.exponents.clone())?;
        }
        Ok(CharSpec { p, shape, rows })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.shape.n()
    }

    pub fn shape(&self) -> &PAdicShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Rows of positive level (the ones a caller supplies).
    pub fn moving_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.level() > 0)
    }

    pub fn bit_rows(&self) -> Vec<BitSeq> {
        self.rows.iter().map(|r| r.bits.clone()).collect()
    }

    /// `(a, k)` when `n = a·p^k` has a single `p`-adic digit.
    pub fn uniform(&self) -> Option<(u32, u32)> {
        match self.shape.digits() {
            [(k, a)] => Some((*a, *k)),
            _ => None,
        }
    }

    pub(crate) fn require_uniform(&self) -> Result<(u32, u32)> {
        self.uniform().ok_or_else(|| {
            Error::Unsupported(format!("n = {} is not of the form a·p^k", self.n()))
        })
    }

    /// Same rows with the default exponent choice.
    pub fn with_default_exponents(&self) -> CharSpec {
        CharSpec {
            p: self.p,
            shape: self.shape.clone(),
            rows: self.rows.iter().map(|r| Row::new(r.bits.clone())).collect(),
        }
    }

    /// Every concrete character of `P_n`: all bit rows and all exponent choices.
    pub fn all_concrete(p: u32, n: u64) -> Result<Vec<CharSpec>> {
        let shape = p_adic(n, p)?;
        let mut specs = vec![Vec::new()];
        for level in shape.factor_levels() {
            let mut rows = Vec::new();
            for idx in 0..1u64 << level {
                rows.extend(Row::all_choices(p, &BitSeq::from_index(idx, level as usize)));
            }
            specs = specs
                .into_iter()
                .flat_map(|prefix: Vec<Row>| {
                    rows.iter().map(move |r| {
                        let mut next = prefix.clone();
                        next.push(r.clone());
                        next
                    })
                })
                .collect();
        }
        specs
            .into_iter()
            .map(|rows| Self::build(p, shape.clone(), rows))
            .collect()
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.moving_rows().map(|r| r.bits.to_string()).collect();
        write!(f, "p={} n={} rows=[{}]", self.p, self.n(), rows.join(","))
    }
}
