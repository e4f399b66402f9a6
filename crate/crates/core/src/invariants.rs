//! Elementary invariants of triple Kronecker products of SU(n): occupancy
//! compositions, canonical tables, the count formula, the SU(2)/SU(3) k-systems,
//! and the normalized invariants `H`.
//!
//! An SU(n) table has three groups of `n−1` boxes; box `c` (1-based, global) selects
//! the vector `z^(c)`. For SU(3) the groups are `z⁽¹⁾z⁽²⁾`, `z⁽³⁾z⁽⁴⁾`, `z⁽⁵⁾z⁽⁶⁾`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bfr::BinaryWord;
use crate::coupling::{norm_n2, norm_ng};
use crate::error::{Error, Result};
use crate::exact::{fact, Rational, SqrtRational};
use crate::half::Half;
use crate::poly::{NormalizedPoly, SparsePoly};

/// Column counts `(α₁, α₂, α₃)` drawn from each factor, `Σα = n`, `αᵢ ≤ n−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccupancyComposition {
    n: usize,
    alphas: [usize; 3],
}

impl OccupancyComposition {
    /// Validates a composition.
    pub fn new(n: usize, alphas: [usize; 3]) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("rank {n} < 2")));
        }
        if alphas.iter().sum::<usize>() != n || alphas.iter().any(|&a| a > n - 1) {
            return Err(Error::Domain(format!(
                "{alphas:?} is not a composition of {n} with parts <= {}",
                n - 1
            )));
        }
        Ok(OccupancyComposition { n, alphas })
    }

    /// Rank.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Parts.
    pub fn alphas(&self) -> [usize; 3] {
        self.alphas
    }
}

/// All compositions of `n` into three parts `≤ n−1`, lexicographically descending.
pub fn enumerate_compositions(n: usize) -> Result<Vec<OccupancyComposition>> {
    if n < 2 {
        return Err(Error::Domain(format!("rank {n} < 2")));
    }
    let mut out = Vec::new();
    for a1 in (0..n).rev() {
        for a2 in (0..n).rev() {
            if a1 + a2 > n {
                continue;
            }
            let a3 = n - a1 - a2;
            if a3 < n {
                out.push(OccupancyComposition {
                    n,
                    alphas: [a1, a2, a3],
                });
            }
        }
    }
    Ok(out)
}

/// Number of elementary invariants `(n−1)(n+4)/2`.
pub fn count_invariants(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("rank {n} < 2")));
    }
    let n = n as u64;
    Ok((n - 1) * (n + 4) / 2)
}

/// A weight-`n` word of `3(n−1)` boxes selecting the columns of one invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTable {
    n: usize,
    word: BinaryWord,
}

impl InvariantTable {
    /// Validates group weights and total weight.
    pub fn new(n: usize, word: BinaryWord) -> Result<Self> {
        if n < 2 || word.len() != 3 * (n - 1) {
            return Err(Error::Structure(format!(
                "table for n = {n} needs {} boxes, got {}",
                3 * n.saturating_sub(1),
                word.len()
            )));
        }
        let t = InvariantTable { n, word };
        OccupancyComposition::new(n, t.group_weights())?;
        Ok(t)
    }

    /// Rank.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Underlying word.
    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    /// Ones per group.
    pub fn group_weights(&self) -> [usize; 3] {
        let g = self.n - 1;
        let bits = self.word.bits();
        [0, 1, 2].map(|k| bits[k * g..(k + 1) * g].iter().filter(|&&b| b).count())
    }

    /// Global column indices of the selected vectors, ascending.
    pub fn columns(&self) -> Vec<usize> {
        self.word.ones()
    }

    /// Occupancy composition of the table.
    pub fn composition(&self) -> OccupancyComposition {
        OccupancyComposition {
            n: self.n,
            alphas: self.group_weights(),
        }
    }
}

impl fmt::Display for InvariantTable {
    /// Groups separated by `|`, e.g. `100|111|000`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.word.to_string();
        let g = self.n - 1;
        write!(f, "{}|{}|{}", &s[..g], &s[g..2 * g], &s[2 * g..])
    }
}

impl FromStr for InvariantTable {
    type Err = Error;

    /// Parses `100|111|000`.
    fn from_str(s: &str) -> Result<Self> {
        let groups: Vec<&str> = s.trim().split('|').collect();
        if groups.len() != 3 || groups.iter().any(|g| g.len() != groups[0].len()) {
            return Err(Error::Parse(format!("expected three equal groups in '{s}'")));
        }
        let word: BinaryWord = groups.concat().parse()?;
        InvariantTable::new(groups[0].len() + 1, word)
    }
}

impl Serialize for InvariantTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for InvariantTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// First-boxes-filled table of a composition.
pub fn canonical_table(c: &OccupancyComposition) -> InvariantTable {
    let g = c.n - 1;
    let bits: Vec<bool> = c
        .alphas
        .iter()
        .flat_map(|&a| (0..g).map(move |b| b < a))
        .collect();
    InvariantTable {
        n: c.n,
        word: BinaryWord::new(bits).expect("nonempty"),
    }
}

/// `det(z^(c₁), …, z^(cₙ))` over the selected columns, ascending.
pub fn invariant_poly(t: &InvariantTable) -> SparsePoly {
    let rows: Vec<usize> = (1..=t.n).collect();
    SparsePoly::det(t.n, 3 * (t.n - 1), &rows, &t.columns())
}

/// Exponents `k₁…k₇` of the SU(3) elementary invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KVector([u32; 7]);

impl KVector {
    /// Wraps `[k₁, …, k₇]`.
    pub const fn new(k: [u32; 7]) -> Self {
        KVector(k)
    }

    /// `k_i` for `i = 1..=7`.
    pub fn k(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// All entries.
    pub fn as_array(&self) -> [u32; 7] {
        self.0
    }

    /// `P = Σ kᵢ`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Labels `[(λ₁,μ₁), (λ₂,μ₂), (λ₃,μ₃)]` fixed by the homogeneity system.
    pub fn irreps(&self) -> [(u32, u32); 3] {
        let k = |i| self.k(i);
        [
            (k(2) + k(5) + k(7), k(3) + k(4)),
            (k(1) + k(4) + k(7), k(5) + k(6)),
            (k(1) + k(2), k(3) + k(6) + k(7)),
        ]
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Vector triples `(a, b, c)` of the seven SU(3) elementary invariants, `W_i = det(z^a, z^b, z^c)`.
pub const SU3_INVARIANT_COLUMNS: [[usize; 3]; 7] = [
    [3, 5, 6],
    [1, 5, 6],
    [1, 2, 5],
    [1, 2, 3],
    [1, 3, 4],
    [3, 4, 5],
    [1, 3, 5],
];

/// Elementary SU(3) invariant `W_i` on `3 × 6` variables.
pub fn su3_elementary_invariant(i: usize) -> Result<SparsePoly> {
    if !(1..=7).contains(&i) {
        return Err(Error::Domain(format!("invariant index {i} not in 1..=7")));
    }
    Ok(SparsePoly::det(3, 6, &[1, 2, 3], &SU3_INVARIANT_COLUMNS[i - 1]))
}

/// All nonnegative solutions of the SU(3) homogeneity system, by increasing `k₁`.
pub fn solve_k_su3(l1: u32, m1: u32, l2: u32, m2: u32, l3: u32, m3: u32) -> Vec<KVector> {
    let (l1, m1, l2, m2, l3, m3) = (
        l1 as i64, m1 as i64, l2 as i64, m2 as i64, l3 as i64, m3 as i64,
    );
    let num = l1 + l2 + m3 - (m1 + m2 + l3);
    if num.rem_euclid(3) != 0 {
        return Vec::new();
    }
    let k7 = num / 3;
    let mut out = Vec::new();
    for k1 in 0..=l3.max(0) {
        let k2 = l3 - k1;
        let k4 = l2 - k7 - k1;
        let k3 = m1 - k4;
        let k5 = l1 - k2 - k7;
        let k6 = m2 - k5;
        let k = [k1, k2, k3, k4, k5, k6, k7];
        if k.iter().all(|&x| x >= 0) && k3 + k6 + k7 == m3 {
            out.push(KVector(k.map(|x| x as u32)));
        }
    }
    out
}

/// The seven free indices of the invariant Gel'fand pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantGelfand {
    pub h13: i64,
    pub h24: i64,
    pub h34: i64,
    pub h23: i64,
    pub h33: i64,
    pub h12: i64,
    pub h22: i64,
}

/// Pattern indices of a k-vector.
pub fn gelfand_from_k(k: &KVector) -> InvariantGelfand {
    let k = |i| k.k(i) as i64;
    InvariantGelfand {
        h13: k(1) + k(2) + k(3) + k(4) + k(5) + k(6) + k(7),
        h24: k(3) + k(4) + k(5) + k(6) + k(7),
        h34: k(5) + k(3),
        h23: k(3) + k(4) + k(5) + k(7),
        h33: k(3),
        h12: k(2) + k(3) + k(4) + k(5) + k(7),
        h22: k(3) + k(4),
    }
}

/// Inverse of [`gelfand_from_k`]; any negative exponent is an error.
pub fn k_from_gelfand(h: &InvariantGelfand) -> Result<KVector> {
    let k = [
        (h.h13 - h.h24) - (h.h12 - h.h23),
        h.h12 - h.h23,
        h.h33,
        h.h22 - h.h33,
        h.h34 - h.h33,
        h.h24 - h.h23,
        (h.h23 - h.h34) - (h.h22 - h.h33),
    ];
    if let Some(i) = k.iter().position(|&x| x < 0) {
        return Err(Error::Domain(format!(
            "k{} = {} < 0, not an invariant pattern",
            i + 1,
            k[i]
        )));
    }
    let kv = KVector(k.map(|x| x as u32));
    if gelfand_from_k(&kv) != *h {
        return Err(Error::Domain("indices are not in the image of the k-map".into()));
    }
    Ok(kv)
}

/// Exponents `(k₁, k₂, k₃)` of `Δ₁₂, Δ₁₃, Δ₂₃` in an SU(2) invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Su2KVector(pub [u32; 3]);

/// `k₁ = h₂₂, k₂ = h₁₁ − h₂₂, k₃ = h₁₂ − h₁₁`.
pub fn su2_k_from_pattern(h12: i64, h22: i64, h11: i64) -> Result<Su2KVector> {
    if !(h12 >= h11 && h11 >= h22 && h22 >= 0) {
        return Err(Error::Domain(format!(
            "need h12 >= h11 >= h22 >= 0, got ({h12},{h22},{h11})"
        )));
    }
    Ok(Su2KVector([h22 as u32, (h11 - h22) as u32, (h12 - h11) as u32]))
}

/// Exponents `(T−2j₃, T−2j₂, T−2j₁)` of the invariant coupling three spins.
pub fn su2_k_from_spins(j1: Half, j2: Half, j3: Half) -> Result<Su2KVector> {
    let t2 = j1.doubled() + j2.doubled() + j3.doubled();
    if t2 % 2 != 0 {
        return Err(Error::SelectionRule("j1 + j2 + j3 is not an integer".into()));
    }
    let t = t2 / 2;
    let k = [t - j3.doubled(), t - j2.doubled(), t - j1.doubled()];
    if k.iter().any(|&x| x < 0) || [j1, j2, j3].iter().any(|j| j.doubled() < 0) {
        return Err(Error::SelectionRule(format!("triangle rule fails for ({j1},{j2},{j3})")));
    }
    Ok(Su2KVector(k.map(|x| x as u32)))
}

/// `Δ₁₂^{k₁} Δ₁₃^{k₂} Δ₂₃^{k₃} / N₂` on `2 × 3` variables.
pub fn build_h_su2(k: &Su2KVector) -> NormalizedPoly {
    let [k1, k2, k3] = k.0;
    let d = |a, b| SparsePoly::det(2, 3, &[1, 2], &[a, b]);
    let p = d(1, 2)
        .pow(k1)
        .mul(&d(1, 3).pow(k2))
        .and_then(|x| x.mul(&d(2, 3).pow(k3)))
        .expect("same arity");
    let t = Half::from_int((k1 + k2 + k3) as i64);
    let n2 = norm_n2(
        t,
        Half::from_doubled((k1 + k2 + k3 - k3) as i64),
        Half::from_doubled((k1 + k2 + k3 - k2) as i64),
        Half::from_doubled((k1 + k2 + k3 - k1) as i64),
    )
    .expect("exponents are nonnegative");
    NormalizedPoly::new(p, n2.recip().expect("nonzero norm"))
}

/// `∏ W_i^{k_i}` without factorials or norms.
pub fn raw_h_su3(k: &KVector) -> SparsePoly {
    let mut p = SparsePoly::one(3, 6);
    for i in 1..=7 {
        let e = k.k(i);
        if e > 0 {
            let w = su3_elementary_invariant(i).expect("index in range");
            p = p.mul(&w.pow(e)).expect("same arity");
        }
    }
    p
}

/// `H = ∏ W_i^{k_i} / (∏ k_i! · N_g)`; only the `k₃ = k₄ = 0` family is normalized.
pub fn build_h_su3(k: &KVector) -> Result<NormalizedPoly> {
    let ng = norm_ng(k)?;
    let kf: Rational = k
        .as_array()
        .iter()
        .map(|&e| Rational::from_integer(fact(e as u64)))
        .fold(Rational::one(), |a, b| a * b);
    let factor = SqrtRational::from_rational(&kf.recip()).checked_div(&ng)?;
    Ok(NormalizedPoly::new(raw_h_su3(k), factor))
}
