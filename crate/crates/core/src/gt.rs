//! Gel'fand–Tsetlin patterns: validation, enumeration, dimension, conjugation,
//! phase, and the SU(3) label dictionary.
//!
//! A pattern of rank `n` has rows `j = n, n-1, …, 1`; row `j` holds
//! `h_{1,j} … h_{j,j}`. Rows are stored top first, so `rows[0]` is the irrep label.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::Half;

/// Whether `h_{n,n} = 0` is required.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// U(n): any nonnegative bottom entry of the top row.
    Un,
    /// SU(n): `h_{n,n} = 0`.
    Sun,
}

/// A betweenness or SU(n) violation at entry `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}): {}", self.i, self.j, self.message)
    }
}

/// Triangular integer array labelling a basis vector of a U(n)/SU(n) irrep.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PatternJson", into = "PatternJson")]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<PatternJson> for GtPattern {
    type Error = Error;
    fn try_from(j: PatternJson) -> Result<Self> {
        let p = GtPattern::new(j.rows)?;
        if p.n() != j.n {
            return Err(Error::Structure(format!(
                "declared n = {} but {} rows given",
                j.n,
                p.n()
            )));
        }
        Ok(p)
    }
}

impl From<GtPattern> for PatternJson {
    fn from(p: GtPattern) -> Self {
        PatternJson {
            n: p.n(),
            rows: p.rows,
        }
    }
}

impl GtPattern {
    /// Builds a pattern from rows listed top first; only the triangular shape is checked.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Structure("pattern has no rows".into()));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n - k {
                return Err(Error::Structure(format!(
                    "row {} has {} entries, expected {}",
                    k + 1,
                    row.len(),
                    n - k
                )));
            }
        }
        Ok(GtPattern { rows })
    }

    /// Rank `n`.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Rows, top first.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Entry `h_{i,j}` with `1 ≤ i ≤ j ≤ n`.
    pub fn h(&self, i: usize, j: usize) -> i64 {
        self.rows[self.n() - j][i - 1]
    }

    /// The top row as an irrep label.
    pub fn label(&self) -> IrrepLabel {
        IrrepLabel {
            top: self.rows[0].clone(),
        }
    }

    /// Every entry.
    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().flatten().copied()
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for GtPattern {
    type Err = Error;

    /// Parses `"2,1,0;2,1;1"`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("invalid pattern entry '{x}'")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GtPattern::new(rows)
    }
}

/// Irrep label `[h_{1n}, …, h_{nn}]`, non-increasing and nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    top: Vec<i64>,
}

impl IrrepLabel {
    /// Validates and wraps a top row.
    pub fn new(top: Vec<i64>) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::Structure("empty irrep label".into()));
        }
        if top.windows(2).any(|w| w[0] < w[1]) || top.iter().any(|&x| x < 0) {
            return Err(Error::Domain(format!(
                "label {top:?} must be non-increasing and nonnegative"
            )));
        }
        Ok(IrrepLabel { top })
    }

    /// SU(3) label `[λ+μ, μ, 0]`.
    pub fn su3(lambda: u32, mu: u32) -> Self {
        IrrepLabel {
            top: vec![(lambda + mu) as i64, mu as i64, 0],
        }
    }

    /// Rank.
    pub fn n(&self) -> usize {
        self.top.len()
    }

    /// Entries.
    pub fn top(&self) -> &[i64] {
        &self.top
    }

    /// Label of the contragredient irrep, `[h₁ₙ − hₙₙ, …, h₁ₙ − h₁ₙ]`.
    pub fn conjugate(&self) -> IrrepLabel {
        let h1 = self.top[0];
        IrrepLabel {
            top: self.top.iter().rev().map(|&h| h1 - h).collect(),
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let top = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid label entry '{x}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        IrrepLabel::new(top)
    }
}

/// Lists every betweenness violation (and `h_{nn} ≠ 0` in SU mode).
pub fn validate(p: &GtPattern, mode: Mode) -> Vec<Violation> {
    let n = p.n();
    let mut out = Vec::new();
    if mode == Mode::Sun && p.h(n, n) != 0 {
        out.push(Violation {
            i: n,
            j: n,
            message: format!("h_nn = {} but SU(n) requires 0", p.h(n, n)),
        });
    }
    for j in 2..=n {
        for i in 1..j {
            let (upper, mid, lower) = (p.h(i, j), p.h(i, j - 1), p.h(i + 1, j));
            if !(upper >= mid && mid >= lower) {
                out.push(Violation {
                    i,
                    j: j - 1,
                    message: format!(
                        "betweenness {upper} >= {mid} >= {lower} fails"
                    ),
                });
            }
        }
    }
    out
}

fn require_valid(p: &GtPattern, mode: Mode) -> Result<()> {
    let v = validate(p, mode);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidPattern(
            v.iter().map(Violation::to_string).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// All patterns with top row `label`, in lexicographically descending order.
pub fn enumerate_patterns(label: &IrrepLabel) -> Vec<GtPattern> {
    let mut out = Vec::new();
    let mut rows = vec![label.top.clone()];
    fill_rows(&mut rows, &mut out);
    out
}

fn fill_rows(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
    let last = rows.last().expect("nonempty").clone();
    if last.len() == 1 {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    let mut next = vec![0; last.len() - 1];
    fill_entries(&last, &mut next, 0, rows, out);
}

fn fill_entries(
    above: &[i64],
    next: &mut Vec<i64>,
    k: usize,
    rows: &mut Vec<Vec<i64>>,
    out: &mut Vec<GtPattern>,
) {
    if k == next.len() {
        rows.push(next.clone());
        fill_rows(rows, out);
        rows.pop();
        return;
    }
    let mut v = above[k];
    while v >= above[k + 1] {
        next[k] = v;
        fill_entries(above, next, k + 1, rows, out);
        v -= 1;
    }
}

/// Weyl dimension `∏_{i<j} (h_i − h_j + j − i)/(j − i)`.
pub fn dimension(label: &IrrepLabel) -> BigUint {
    let h = &label.top;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            num *= (h[i] - h[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    num / den
}

/// Conjugate state `h^c_{i,j} = h_{1,n} − h_{j−i+1,j}`; requires a valid SU(n) pattern.
pub fn conjugate(p: &GtPattern) -> Result<GtPattern> {
    require_valid(p, Mode::Sun)?;
    let n = p.n();
    let h1n = p.h(1, n);
    let rows = (1..=n)
        .rev()
        .map(|j| (1..=j).map(|i| h1n - p.h(j - i + 1, j)).collect())
        .collect();
    Ok(GtPattern { rows })
}

/// Phase exponent `φ = Σ h_{i,j} − h_{1,n}`.
pub fn phase(p: &GtPattern) -> i64 {
    p.entries().sum::<i64>() - p.h(1, p.n())
}

/// SU(3) state label `(λ, μ; t, t_z, y)` with `y = 3Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Su3State {
    pub lambda: u32,
    pub mu: u32,
    pub t: Half,
    pub tz: Half,
    pub y: i64,
}

impl Su3State {
    /// Validates the labels against the irrep `(λ, μ)`.
    pub fn new(lambda: u32, mu: u32, t: Half, tz: Half, y: i64) -> Result<Self> {
        let s = Su3State {
            lambda,
            mu,
            t,
            tz,
            y,
        };
        s.rs()?;
        if tz.abs() > t || (t - tz).doubled() % 2 != 0 {
            return Err(Error::InvalidState(format!(
                "tz = {tz} is not a projection of t = {t}"
            )));
        }
        Ok(s)
    }

    /// State with basis labels `(r, s, m)`: `2t = μ + r − s`, `t_z = t − m`.
    pub fn from_rsm(lambda: u32, mu: u32, r: u32, s: u32, m: u32) -> Result<Self> {
        if r > lambda || s > mu {
            return Err(Error::InvalidState(format!(
                "r = {r}, s = {s} out of range for ({lambda},{mu})"
            )));
        }
        let t2 = (mu + r - s) as i64;
        if m as i64 > t2 {
            return Err(Error::InvalidState(format!("m = {m} exceeds 2t = {t2}")));
        }
        Ok(Su3State {
            lambda,
            mu,
            t: Half::from_doubled(t2),
            tz: Half::from_doubled(t2 - 2 * m as i64),
            y: -(2 * lambda as i64 + mu as i64) + 3 * (r + s) as i64,
        })
    }

    /// Recovers `(r, s)` from `r + s = (y + 2λ + μ)/3` and `r − s = 2t − μ`.
    pub fn rs(&self) -> Result<(u32, u32)> {
        let (l, m) = (self.lambda as i64, self.mu as i64);
        let sum3 = self.y + 2 * l + m;
        if sum3.rem_euclid(3) != 0 {
            return Err(Error::InvalidState(format!(
                "y = {} incompatible with ({l},{m})",
                self.y
            )));
        }
        let sum = sum3 / 3;
        let diff = self.t.doubled() - m;
        if (sum + diff).rem_euclid(2) != 0 {
            return Err(Error::InvalidState(format!(
                "t = {} incompatible with y = {}",
                self.t, self.y
            )));
        }
        let (r, s) = ((sum + diff) / 2, (sum - diff) / 2);
        if r < 0 || r > l || s < 0 || s > m {
            return Err(Error::InvalidState(format!(
                "(t, y) = ({}, {}) not in ({l},{m})",
                self.t, self.y
            )));
        }
        Ok((r as u32, s as u32))
    }

    /// Projection index `m = t − t_z`.
    pub fn m(&self) -> u32 {
        ((self.t - self.tz).doubled() / 2) as u32
    }

    /// Hypercharge `Y = y/3` as a rational pair `(y, 3)`.
    pub fn hypercharge(&self) -> (i64, i64) {
        (self.y, 3)
    }
}

impl fmt::Display for Su3State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) t={} tz={} y={}",
            self.lambda, self.mu, self.t, self.tz, self.y
        )
    }
}

/// Reads `(λ, μ; t, t_z, y)` from an SU(3) pattern.
pub fn su3_from_pattern(p: &GtPattern) -> Result<Su3State> {
    if p.n() != 3 {
        return Err(Error::Structure(format!("expected n = 3, got {}", p.n())));
    }
    if p.h(3, 3) != 0 {
        return Err(Error::InvalidPattern(format!(
            "h33 = {} so this is not an SU(3) pattern",
            p.h(3, 3)
        )));
    }
    require_valid(p, Mode::Sun)?;
    let lambda = (p.h(1, 3) - p.h(2, 3)) as u32;
    let mu = p.h(2, 3) as u32;
    let (h12, h22, h11) = (p.h(1, 2), p.h(2, 2), p.h(1, 1));
    Ok(Su3State {
        lambda,
        mu,
        t: Half::from_doubled(h12 - h22),
        tz: Half::from_doubled(2 * h11 - h12 - h22),
        y: 3 * (h12 + h22) - 2 * (lambda as i64 + 2 * mu as i64),
    })
}

/// Inverse of [`su3_from_pattern`].
pub fn pattern_from_su3(s: &Su3State) -> Result<GtPattern> {
    let (l, m) = (s.lambda as i64, s.mu as i64);
    let sum3 = s.y + 2 * (l + 2 * m);
    if sum3.rem_euclid(3) != 0 {
        return Err(Error::InvalidState(format!("h12 + h22 not integral for {s}")));
    }
    let sum = sum3 / 3;
    let t2 = s.t.doubled();
    if (sum + t2).rem_euclid(2) != 0 {
        return Err(Error::InvalidState(format!("h12 - h22 parity mismatch for {s}")));
    }
    let h12 = (sum + t2) / 2;
    let h22 = (sum - t2) / 2;
    let h11x2 = s.tz.doubled() + sum;
    if h11x2.rem_euclid(2) != 0 {
        return Err(Error::InvalidState(format!("h11 not integral for {s}")));
    }
    let p = GtPattern {
        rows: vec![vec![l + m, m, 0], vec![h12, h22], vec![h11x2 / 2]],
    };
    require_valid(&p, Mode::Sun)
        .map_err(|e| Error::InvalidState(format!("{s} lies outside its irrep: {e}")))?;
    Ok(p)
}

/// SU(3) sub-conjugation `(t, t_z, y) ↦ (t, −t_z, y)`.
pub fn subconjugate_su3(s: &Su3State) -> Su3State {
    Su3State { tz: -s.tz, ..*s }
}

/// Row (component) degrees `(δ₁, δ₂, δ₃)` of the basis polynomial of an SU(3) state:
/// `δ₁,₂ = ±t_z + Y/2 + (λ+2μ)/3`, `δ₃ = −Y + (λ+2μ)/3`.
pub fn su3_component_degrees(s: &Su3State) -> [i64; 3] {
    let c = (s.lambda + 2 * s.mu) as i64;
    // Work in units of 1/6: tz = tz2/2, Y = y/3.
    let d1 = 3 * s.tz.doubled() + s.y + 2 * c;
    let d2 = -3 * s.tz.doubled() + s.y + 2 * c;
    let d3 = -2 * s.y + 2 * c;
    [d1 / 6, d2 / 6, d3 / 6]
}
