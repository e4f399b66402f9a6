//! Binary fundamental representations: weight-`m` words of `n` boxes, complements,
//! determinant minors, and the parameter-monomial rule.
//!
//! Boxes are numbered `1..=n` from the left.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;

/// A word of `n` binary boxes, rendered most-significant box first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    /// Wraps a nonempty bit vector.
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Domain("binary word must be nonempty".into()));
        }
        Ok(BinaryWord { bits })
    }

    /// Number of boxes.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; words are nonempty.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Box contents.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// 1-based positions of the ones.
    pub fn ones(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    /// Parses `"1010"`; spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid binary digit '{c}' in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryWord::new(bits)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// All `C(n, m)` words of length `n` and weight `m`, lexicographically descending.
pub fn enumerate_bfr(n: usize, m: usize) -> Result<Vec<BinaryWord>> {
    if n == 0 || m < 1 || m > n {
        return Err(Error::Domain(format!("weight {m} out of range 1..={n}")));
    }
    let mut out = Vec::new();
    let mut bits = Vec::with_capacity(n);
    words_rec(n, m, &mut bits, &mut out);
    Ok(out)
}

fn words_rec(n: usize, m: usize, bits: &mut Vec<bool>, out: &mut Vec<BinaryWord>) {
    let left = n - bits.len();
    let ones = bits.iter().filter(|&&b| b).count();
    let need = m - ones;
    if left == 0 {
        out.push(BinaryWord { bits: bits.clone() });
        return;
    }
    if need > 0 {
        bits.push(true);
        words_rec(n, m, bits, out);
        bits.pop();
    }
    if left > need {
        bits.push(false);
        words_rec(n, m, bits, out);
        bits.pop();
    }
}

/// Bitwise complement.
pub fn complement(w: &BinaryWord) -> BinaryWord {
    BinaryWord {
        bits: w.bits.iter().map(|b| !b).collect(),
    }
}

/// Parameter family of a monomial factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParamKind {
    X,
    Y,
}

/// Parameter `x_λ^μ` or `y_λ^μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamSymbol {
    pub kind: ParamKind,
    pub lambda: u32,
    pub mu: u32,
}

impl Ord for ParamSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.lambda, self.mu, self.kind).cmp(&(other.lambda, other.mu, other.kind))
    }
}

impl PartialOrd for ParamSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ParamKind::X => 'x',
            ParamKind::Y => 'y',
        };
        write!(f, "{k}_{}^{}", self.lambda, self.mu)
    }
}

/// Product of parameter symbols with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamMonomial {
    factors: BTreeMap<ParamSymbol, u32>,
}

impl ParamMonomial {
    /// Multiplies in one symbol after checking `2 ≤ λ`, `1 ≤ μ ≤ λ−1`.
    pub fn push(&mut self, s: ParamSymbol) -> Result<()> {
        if s.lambda < 2 || s.mu < 1 || s.mu >= s.lambda {
            return Err(Error::Domain(format!("symbol {s} out of index range")));
        }
        *self.factors.entry(s).or_insert(0) += 1;
        Ok(())
    }

    /// Factors with exponents, ordered by `(λ, μ)`.
    pub fn factors(&self) -> &BTreeMap<ParamSymbol, u32> {
        &self.factors
    }

    /// Swaps `x_λ^μ ↔ y_λ^{λ−μ}`.
    pub fn conjugate(&self) -> ParamMonomial {
        let factors = self
            .factors
            .iter()
            .map(|(s, &e)| {
                let kind = match s.kind {
                    ParamKind::X => ParamKind::Y,
                    ParamKind::Y => ParamKind::X,
                };
                (
                    ParamSymbol {
                        kind,
                        lambda: s.lambda,
                        mu: s.lambda - s.mu,
                    },
                    e,
                )
            })
            .collect();
        ParamMonomial { factors }
    }
}

impl fmt::Display for ParamMonomial {
    /// Space-separated symbols such as `y_2^1 y_3^1`; the empty product is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, &e)| if e == 1 { s.to_string() } else { format!("({s})^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parameter monomial of a word: each 1 after the first 0 gives `x_pos^{ones+1}`,
/// each 0 after the first 1 gives `y_pos^{ones}`, counting ones strictly before `pos`.
pub fn phi_monomial(w: &BinaryWord) -> ParamMonomial {
    let mut m = ParamMonomial::default();
    let mut ones = 0u32;
    let mut seen_zero = false;
    let mut seen_one = false;
    for (k, &b) in w.bits.iter().enumerate() {
        let pos = (k + 1) as u32;
        if b {
            if seen_zero {
                m.push(ParamSymbol {
                    kind: ParamKind::X,
                    lambda: pos,
                    mu: ones + 1,
                })
                .expect("rule yields in-range indices");
            }
            ones += 1;
            seen_one = true;
        } else {
            if seen_one {
                m.push(ParamSymbol {
                    kind: ParamKind::Y,
                    lambda: pos,
                    mu: ones,
                })
                .expect("rule yields in-range indices");
            }
            seen_zero = true;
        }
    }
    m
}

/// Minor `Δ_{i₁…i_k}^{1+o … k+o}` with rows the ones of `w` and `o = column_offset`,
/// as a polynomial on `n × (k + o)` variables.
pub fn minor_poly(w: &BinaryWord, column_offset: usize) -> Result<SparsePoly> {
    let rows = w.ones();
    if rows.is_empty() {
        return Err(Error::Domain("minor of a weight-zero word".into()));
    }
    let k = rows.len();
    let cols: Vec<usize> = (1 + column_offset..=k + column_offset).collect();
    Ok(SparsePoly::det(w.len(), k + column_offset, &rows, &cols))
}
