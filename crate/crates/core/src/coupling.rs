//! Coupling coefficients: Van der Waerden SU(2) 3j symbols, the norms `N₂`, `N_v`,
//! `N_g`, and SU(3) isoscalar factors and Wigner symbols for `(λ₁0) ⊗ (λ₂μ₂) → (λ₃μ₃)`.
//!
//! The SU(3) invariant carries the third irrep through its conjugate: the third
//! vector pair `z⁽⁵⁾z⁽⁶⁾` holds the state `(t₃, −t₃z, −y₃)` of `(μ₃, λ₃)`. Queries use
//! the coupled labels `(λ₃, μ₃; t₃, t₃z, y₃)` and the relabelling happens here.
//!
//! The isoscalar sum applies harmonic projections to the parameter-space images of
//! the basis polynomials: the plain substitution does not vanish on the relation
//! `a·b = 0` between a vector and its cross product, so each factor picks up the
//! series `Σ_j γ_j (a·b)^j K_{α^{(j)}}` with `γ_{j+1} = −γ_j/((j+1)(λ+μ+1−j))`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, fact, fact_or_zero, int, Rational, Sign, SqrtRational};
use crate::gt::{dimension, IrrepLabel, Su3State};
use crate::half::Half;
use crate::invariants::{solve_k_su3, KVector};

/// SU(2) labels `(j₁ j₂ j₃; m₁ m₂ m₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Su2Triple {
    pub j: [Half; 3],
    pub m: [Half; 3],
}

impl Su2Triple {
    /// Checks that each `mᵢ` is a projection of `jᵢ`; coupling rules are not checked.
    pub fn new(j: [Half; 3], m: [Half; 3]) -> Result<Self> {
        for k in 0..3 {
            if j[k].doubled() < 0 || m[k].abs() > j[k] || (j[k] - m[k]).doubled() % 2 != 0 {
                return Err(Error::InvalidState(format!(
                    "m{} = {} is not a projection of j{} = {}",
                    k + 1,
                    m[k],
                    k + 1,
                    j[k]
                )));
            }
        }
        Ok(Su2Triple { j, m })
    }

    /// The selection rule that forces the symbol to vanish, if any.
    pub fn selection_rule(&self) -> Option<String> {
        let [a, b, c] = self.j.map(Half::doubled);
        if (a + b + c) % 2 != 0 {
            return Some("j1 + j2 + j3 is not an integer".into());
        }
        if c > a + b || c < (a - b).abs() {
            return Some("triangle rule fails".into());
        }
        if self.m.iter().map(|x| x.doubled()).sum::<i64>() != 0 {
            return Some("m1 + m2 + m3 != 0".into());
        }
        None
    }
}

/// `N₂ = √((T+1)! (T−2t₁)! (T−2t₂)! (T−2t₃)!)`.
pub fn norm_n2(t: Half, t1: Half, t2: Half, t3: Half) -> Result<SqrtRational> {
    if t != t1 + t2 + t3 || !t.is_integer() {
        return Err(Error::SelectionRule(format!(
            "T = {t} must equal t1 + t2 + t3 and be an integer"
        )));
    }
    let tt = t.doubled() / 2;
    let args = [t1, t2, t3].map(|x| tt - x.doubled());
    if args.iter().any(|&a| a < 0) {
        return Err(Error::SelectionRule(format!("negative factorial in N2 for T = {t}")));
    }
    let sq = args
        .iter()
        .fold(Rational::from_integer(fact(tt as u64 + 1)), |acc, &a| {
            acc * Rational::from_integer(fact(a as u64))
        });
    SqrtRational::normalize(&sq, Sign::Plus)
}

fn su3_a_factor(lambda: u64, mu: u64, r: u64, s: u64) -> Rational {
    let t2 = mu + r - s;
    Rational::new(
        fact(lambda + 1) * fact(t2 + 1),
        fact(r) * fact(s) * fact(mu - s) * fact(lambda - r) * fact(mu + r + 1) * fact(lambda + mu - s + 1),
    )
}

fn nv_squared(lambda: u32, mu: u32, r: u32, s: u32) -> Rational {
    let t2 = (mu + r - s) as u64;
    su3_a_factor(lambda as u64, mu as u64, r as u64, s as u64) * Rational::from_integer(fact(t2))
}

/// `N_v(λ, μ; t, y) = √(A · (2t)!)` with
/// `A = (λ+1)!(2t+1)! / (r! s! (μ−s)! (λ−r)! (μ+r+1)! (λ+μ−s+1)!)`.
pub fn norm_nv(lambda: u32, mu: u32, t: Half, y: i64) -> Result<SqrtRational> {
    let st = Su3State {
        lambda,
        mu,
        t,
        tz: t,
        y,
    };
    let (r, s) = st.rs()?;
    SqrtRational::normalize(&nv_squared(lambda, mu, r, s), Sign::Plus)
}

fn ng_squared(k: &KVector) -> Rational {
    let [k1, k2, _, _, k5, k6, k7] = k.as_array().map(|x| x as u64);
    let p = k.total() as u64;
    Rational::new(
        fact(p + 2) * fact(k1 + k2 + k7 + 1) * fact(k1 + k6 + k7 + 1) * fact(k5 + k6 + k7 + 1),
        fact(k7)
            * fact(k1)
            * fact(k2)
            * fact(k5)
            * fact(k6)
            * fact(k1 + k7 + 1)
            * fact(k6 + k7 + 1)
            * 2u32,
    )
}

/// `N_g = √((P+2)!(k₁+k₂+k₇+1)!(k₁+k₆+k₇+1)!(k₅+k₆+k₇+1)! / (2 k₇! k₁! k₂! k₅! k₆! (k₁+k₇+1)! (k₆+k₇+1)!))`
/// with `P = Σk`, defined for `k₃ = k₄ = 0`.
pub fn norm_ng(k: &KVector) -> Result<SqrtRational> {
    if k.k(3) != 0 || k.k(4) != 0 {
        return Err(Error::Unsupported(format!(
            "N_g needs k3 = k4 = 0 (mu1 = 0), got {k}"
        )));
    }
    SqrtRational::normalize(&ng_squared(k), Sign::Plus)
}

/// SU(2) 3j symbol from the expansion of `[u₂u₃]^{T−2j₁}[u₃u₁]^{T−2j₂}[u₁u₂]^{T−2j₃} / N₂`.
///
/// Returns exact zero when a selection rule fails.
pub fn su2_3j(t: &Su2Triple) -> SqrtRational {
    if t.selection_rule().is_some() {
        return SqrtRational::zero();
    }
    let [j1, j2, j3] = t.j.map(Half::doubled);
    let [m1, m2, _] = t.m.map(Half::doubled);
    let tt = (j1 + j2 + j3) / 2;
    let (a, b, c) = (tt - j1, tt - j2, tt - j3);
    let (p1, p2) = ((j1 + m1) / 2, (j2 + m2) / 2);
    let mut coef = num_bigint::BigInt::zero();
    for r in 0..=c {
        let q = p1 - c + r;
        let p = a + r - p2;
        if q < 0 || q > b || p < 0 || p > a {
            continue;
        }
        let term = binomial(a, p) * binomial(b, q) * binomial(c, r);
        if (p + q + r) % 2 == 0 {
            coef += term;
        } else {
            coef -= term;
        }
    }
    if coef.is_zero() {
        return SqrtRational::zero();
    }
    let mut sq = Rational::from_integer(&coef * &coef);
    for k in 0..3 {
        let (jj, mm) = (t.j[k].doubled(), t.m[k].doubled());
        sq *= Rational::from_integer(fact(((jj + mm) / 2) as u64) * fact(((jj - mm) / 2) as u64));
    }
    let n2sq = Rational::from_integer(fact(tt as u64 + 1) * fact(a as u64) * fact(b as u64) * fact(c as u64));
    let sign = if coef.is_negative() { Sign::Minus } else { Sign::Plus };
    SqrtRational::normalize(&(sq / n2sq), sign).expect("nonnegative square")
}

/// Clebsch–Gordan coefficient `√d₃ · w · (−1)^phase`.
pub fn cg_from_3j(w: &SqrtRational, d3: &BigUint, phase: i64) -> SqrtRational {
    let d = SqrtRational::normalize(&Rational::from_integer(d3.clone().into()), Sign::Plus)
        .expect("positive dimension");
    (&d * w).with_parity(phase)
}

/// SU(2) Clebsch–Gordan `⟨j₁m₁ j₂m₂ | j₃m₃⟩ = (−1)^{j₁−j₂+m₃} √(2j₃+1) (j₁ j₂ j₃; m₁ m₂ −m₃)`.
pub fn su2_cg(j: [Half; 3], m: [Half; 3]) -> Result<SqrtRational> {
    let t = Su2Triple::new(j, [m[0], m[1], -m[2]])?;
    let w = su2_3j(&t);
    let phase = (j[0] - j[1] + m[2]).doubled();
    let d3 = BigUint::from((j[2].doubled() + 1) as u64);
    Ok(cg_from_3j(&w, &d3, phase / 2))
}

type K5 = [i64; 5];

fn k5_of(k: &KVector) -> K5 {
    [k.k(1), k.k(2), k.k(5), k.k(6), k.k(7)].map(|x| x as i64)
}

/// Parameter-space exponents `(y₃₁, x₃₁, x₃₂, y₃₂) = (r, λ−r, μ−s, s)` of a state.
pub fn parameter_exponents(lambda: u32, mu: u32, r: u32, s: u32) -> [i64; 4] {
    [r as i64, (lambda - r) as i64, (mu - s) as i64, s as i64]
}

/// Value and number of contributing terms of the double sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSum {
    pub value: Rational,
    pub terms: usize,
}

/// The double sum over `(i, j)` with `l, k, p, n, m` fixed by the exponent balance:
/// `Σ (−1)^{l+n} / (i!(k₅−i)! j!(k₂−j)! k!(k₁−k)! l!(k₆−l)! p! n! m!)`.
///
/// `exps` are the parameter exponents of the three states; requires `k₃ = k₄ = 0`.
pub fn two_sum(k: &KVector, exps: [[i64; 4]; 3]) -> Result<TwoSum> {
    if k.k(3) != 0 || k.k(4) != 0 {
        return Err(Error::Unsupported("two_sum needs k3 = k4 = 0".into()));
    }
    Ok(kernel(k5_of(k), exps))
}

fn kernel(k: K5, e: [[i64; 4]; 3]) -> TwoSum {
    let [k1, k2, k5, k6, k7] = k;
    let [[y1a, x1a, x2a, y2a], [y1b, x1b, x2b, y2b], [y1c, x1c, x2c, y2c]] = e;
    let mut value = Rational::zero();
    let mut terms = 0;
    if k.iter().any(|&x| x < 0) || x2a != 0 || y2a != 0 {
        return TwoSum { value, terms };
    }
    for i in 0..=k5 {
        for j in 0..=k2 {
            let l = x2b - i;
            let kk = x2c - j;
            let n = x1b - k1 + kk;
            let p = x1c - k6 + l;
            let m = k7 - p - n;
            let args = [i, k5 - i, j, k2 - j, kk, k1 - kk, l, k6 - l, p, n, m];
            if args.iter().any(|&a| a < 0) {
                continue;
            }
            let balanced = i + j + p + n == y1a
                && (k5 - i) + (k2 - j) + m == x1a
                && kk + p + m == y1b
                && (k1 - kk) + n == x1b
                && (k5 - i) + (k6 - l) == y2b
                && l + n + m == y1c
                && kk + j == x2c
                && (k2 - j) + (k1 - kk) == y2c;
            if !balanced {
                continue;
            }
            let den = args
                .iter()
                .fold(num_bigint::BigInt::one(), |acc, &a| acc * fact(a as u64));
            let term = Rational::new(num_bigint::BigInt::one(), den);
            if (l + n) % 2 == 0 {
                value += term;
            } else {
                value -= term;
            }
            terms += 1;
        }
    }
    TwoSum { value, terms }
}

fn gamma(lm: i64, j: i64) -> Rational {
    let mut g = Rational::one();
    for q in 0..j {
        g = -g / int((q + 1) * (lm + 1 - q));
    }
    g
}

fn falling(n: i64, j: i64) -> Rational {
    fact_or_zero(n) / fact_or_zero(n - j)
}

/// Harmonic weight `ω = Σ_j γ_j (λ−r)!/(λ−r−j)! · s!/(s−j)!`.
fn omega(lambda: u32, mu: u32, r: u32, s: u32) -> Rational {
    let (l, u, r, s) = (lambda as i64, mu as i64, r as i64, s as i64);
    (0..=(l - r).min(s))
        .map(|j| gamma(l + u, j) * falling(l - r, j) * falling(s, j))
        .fold(Rational::zero(), |a, b| a + b)
}

type TermMap = BTreeMap<(i64, i64, K5), Rational>;

fn push(map: &mut TermMap, key: (i64, i64, K5), c: Rational) {
    let e = map.entry(key).or_insert_with(Rational::zero);
    *e += c;
}

/// Laplacian of the second vector pair acting on `R₂^{e₂} R₃^{e₃} [k]`.
fn laplacian2(terms: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (&(e2, e3, k), c) in terms {
        let [k1, k2, k5, k6, k7] = k;
        let (p, q) = (k1 + k7, k5 + k6);
        if e2 > 0 {
            push(&mut out, (e2 - 1, e3, k), c * int(e2 * (p + q + e2 + 2)));
        }
        if k1 > 0 && k5 > 0 {
            push(&mut out, (e2, e3, [k1 - 1, k2 + 1, k5 - 1, k6, k7]), c * int(k2 + 1));
        }
        if k1 > 0 && k6 > 0 {
            push(&mut out, (e2, e3 + 1, [k1 - 1, k2, k5, k6 - 1, k7]), c.clone());
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Laplacian of the third vector pair acting on `R₂^{e₂} R₃^{e₃} [k]`.
fn laplacian3(terms: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (&(e2, e3, k), c) in terms {
        let [k1, k2, k5, k6, k7] = k;
        let (p, q) = (k6 + k7, k1 + k2);
        if e3 > 0 {
            push(&mut out, (e2, e3 - 1, k), c * int(e3 * (p + q + e3 + 2)));
        }
        if k1 > 0 && k6 > 0 {
            push(&mut out, (e2 + 1, e3, [k1 - 1, k2, k5, k6 - 1, k7]), c.clone());
        }
        if k2 > 0 && k6 > 0 {
            push(&mut out, (e2, e3, [k1, k2 - 1, k5 + 1, k6 - 1, k7]), c * int(k5 + 1));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn shifted_exponents(lambda: i64, mu: i64, r: i64, s: i64, shift: i64) -> Option<[i64; 4]> {
    let (l, u, s) = (lambda - shift, mu - shift, s - shift);
    if l < 0 || u < 0 || s < 0 || r > l || s > u {
        return None;
    }
    Some([r, l - r, u - s, s])
}

/// Internal state of a vector pair: irrep `(λ, μ)` and basis labels `(r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PairState {
    lambda: u32,
    mu: u32,
    r: u32,
    s: u32,
}

impl PairState {
    fn t2(&self) -> i64 {
        (self.mu + self.r - self.s) as i64
    }
}

/// Isospin–hypercharge label `(t, y)` with `y = 3Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TY {
    pub t: Half,
    pub y: i64,
}

impl TY {
    /// Label of a full state.
    pub fn of(s: &Su3State) -> TY {
        TY { t: s.t, y: s.y }
    }
}

/// All `(t, y)` labels of the irrep `(λ, μ)`, descending.
pub fn su3_isospin_labels(lambda: u32, mu: u32) -> Vec<TY> {
    let mut v: Vec<TY> = (0..=lambda)
        .flat_map(|r| (0..=mu).map(move |s| (r, s)))
        .map(|(r, s)| TY {
            t: Half::from_doubled((mu + r - s) as i64),
            y: -(2 * lambda as i64 + mu as i64) + 3 * (r + s) as i64,
        })
        .collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// An isoscalar query `(λ₁0)(λ₂μ₂)(λ₃μ₃); (t₁y₁)(t₂y₂)(t₃y₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoscalarQuery {
    pub rep1: (u32, u32),
    pub rep2: (u32, u32),
    pub rep3: (u32, u32),
    pub states: [TY; 3],
}

/// The coupling `(λ₁0) ⊗ (λ₂μ₂) → (λ₃μ₃)` with its invariant and phase convention.
///
/// The global sign makes the isoscalar with lexicographically maximal `(t₁, t₂)` at the
/// highest weight `(t₃, y₃) = (λ₃/2, λ₃+2μ₃)` positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su3Coupling {
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
    k: KVector,
    ng2: Rational,
    sigma: Sign,
    d3: BigUint,
}

/// One nonzero isoscalar factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoscalarEntry {
    pub states: [TY; 3],
    pub value: SqrtRational,
}

/// One nonzero Wigner symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WignerEntry {
    pub states: [Su3State; 3],
    pub value: SqrtRational,
}

impl Su3Coupling {
    /// Validates the coupling; `μ₁ ≠ 0` is unsupported and a missing invariant is a selection-rule error.
    pub fn new(rep1: (u32, u32), rep2: (u32, u32), rep3: (u32, u32)) -> Result<Self> {
        if rep1.1 != 0 {
            return Err(Error::Unsupported(format!(
                "only (lambda1, 0) couplings are implemented, got mu1 = {}",
                rep1.1
            )));
        }
        let sols = solve_k_su3(rep1.0, rep1.1, rep2.0, rep2.1, rep3.0, rep3.1);
        let k = match sols.as_slice() {
            [] => {
                return Err(Error::SelectionRule(format!(
                    "({},{}) is not contained in ({},{}) x ({},{})",
                    rep3.0, rep3.1, rep1.0, rep1.1, rep2.0, rep2.1
                )))
            }
            [k] => *k,
            _ => {
                return Err(Error::Unsupported(format!(
                    "multiplicity {} > 1 is not implemented",
                    sols.len()
                )))
            }
        };
        let mut c = Su3Coupling {
            rep1,
            rep2,
            rep3,
            k,
            ng2: ng_squared(&k),
            sigma: Sign::Plus,
            d3: dimension(&IrrepLabel::su3(rep3.0, rep3.1)),
        };
        c.sigma = c.reference_sign()?;
        Ok(c)
    }

    /// Irreps of the three factors.
    pub fn irreps(&self) -> [(u32, u32); 3] {
        [self.rep1, self.rep2, self.rep3]
    }

    /// Exponents of the invariant.
    pub fn k(&self) -> KVector {
        self.k
    }

    /// Dimension of the coupled irrep.
    pub fn d3(&self) -> &BigUint {
        &self.d3
    }

    /// Sign relating this convention to the raw invariant expansion.
    pub fn phase_sign(&self) -> Sign {
        self.sigma
    }

    fn reference_sign(&self) -> Result<Sign> {
        let (l3, m3) = self.rep3;
        let top = TY {
            t: Half::from_doubled(l3 as i64),
            y: (l3 + 2 * m3) as i64,
        };
        let mut best: Option<((Half, Half), Sign)> = None;
        for a in su3_isospin_labels(self.rep1.0, self.rep1.1) {
            for b in su3_isospin_labels(self.rep2.0, self.rep2.1) {
                let v = self.raw_reduced([a, b, top])?;
                if v.is_zero() {
                    continue;
                }
                let key = (a.t, b.t);
                if best.as_ref().is_none_or(|(k, _)| key > *k) {
                    best = Some((key, v.sign()));
                }
            }
        }
        best.map(|(_, s)| s).ok_or_else(|| {
            Error::SelectionRule("no nonzero isoscalar at the highest weight".into())
        })
    }

    fn pair_states(&self, states: [TY; 3]) -> Result<[PairState; 3]> {
        let (l3, m3) = self.rep3;
        let irreps = [self.rep1, self.rep2, (m3, l3)];
        let labels = [states[0], states[1], TY { t: states[2].t, y: -states[2].y }];
        let mut out = [PairState {
            lambda: 0,
            mu: 0,
            r: 0,
            s: 0,
        }; 3];
        for k in 0..3 {
            let (lambda, mu) = irreps[k];
            let st = Su3State {
                lambda,
                mu,
                t: labels[k].t,
                tz: labels[k].t,
                y: labels[k].y,
            };
            let (r, s) = st.rs().map_err(|_| {
                Error::InvalidState(format!(
                    "(t, y) = ({}, {}) is not a state of ({},{})",
                    states[k].t,
                    states[k].y,
                    [self.rep1, self.rep2, self.rep3][k].0,
                    [self.rep1, self.rep2, self.rep3][k].1
                ))
            })?;
            out[k] = PairState { lambda, mu, r, s };
        }
        Ok(out)
    }

    /// Reduced coefficient before norms, summing harmonic projections of both pairs.
    fn reduced_sum(&self, st: [PairState; 3]) -> Rational {
        let k = k5_of(&self.k);
        let [a, b, c] = st;
        let e1 = parameter_exponents(a.lambda, a.mu, a.r, a.s);
        let (l2, m2, r2, s2) = (b.lambda as i64, b.mu as i64, b.r as i64, b.s as i64);
        let (l3, m3, r3, s3) = (c.lambda as i64, c.mu as i64, c.r as i64, c.s as i64);
        let mut total = Rational::zero();
        for j3 in 0..=(l3 - r3).min(s3) {
            let mut base = TermMap::new();
            base.insert((0, 0, k), Rational::one());
            for _ in 0..j3 {
                base = laplacian3(&base);
            }
            for j2 in 0..=(l2 - r2).min(s2) {
                let mut terms = base.clone();
                for _ in 0..j2 {
                    terms = laplacian2(&terms);
                }
                let g = gamma(l2 + m2, j2) * gamma(l3 + m3, j3);
                for (&(e2, e3, kk), coef) in &terms {
                    let Some(x2) = shifted_exponents(l2, m2, r2, s2, j2 + e2) else {
                        continue;
                    };
                    let Some(x3) = shifted_exponents(l3, m3, r3, s3, j3 + e3) else {
                        continue;
                    };
                    let ker = kernel(kk, [e1, x2, x3]).value;
                    if !ker.is_zero() {
                        total += &g * coef * ker;
                    }
                }
            }
        }
        total
    }

    /// The m-independent factor of the invariant expansion, without the global sign.
    fn raw_reduced(&self, states: [TY; 3]) -> Result<SqrtRational> {
        let st = self.pair_states(states)?;
        if states[0].y + states[1].y != states[2].y {
            return Ok(SqrtRational::zero());
        }
        let t2 = st.map(|p| p.t2());
        let tt2 = t2.iter().sum::<i64>();
        if tt2 % 2 != 0 {
            return Ok(SqrtRational::zero());
        }
        let tt = tt2 / 2;
        if t2.iter().any(|&x| x > tt) {
            return Ok(SqrtRational::zero());
        }
        let rr = self.reduced_sum(st);
        if rr.is_zero() {
            return Ok(SqrtRational::zero());
        }
        let om: Rational = st
            .iter()
            .map(|p| omega(p.lambda, p.mu, p.r, p.s))
            .fold(Rational::one(), |a, b| a * b);
        let n2sq = t2.iter().fold(Rational::from_integer(fact(tt as u64 + 1)), |acc, &x| {
            acc * Rational::from_integer(fact((tt - x) as u64))
        });
        let nv: Rational = st
            .iter()
            .map(|p| nv_squared(p.lambda, p.mu, p.r, p.s))
            .fold(Rational::one(), |a, b| a * b);
        let ratio = rr / om;
        let sq = &ratio * &ratio * n2sq / (&self.ng2 * nv);
        let sign = Sign::parity(st[1].s as i64 + st[2].s as i64 + tt - t2[1])
            * if ratio.is_negative() { Sign::Minus } else { Sign::Plus };
        SqrtRational::normalize(&sq, sign)
    }

    /// The 3j-type reduced factor `W` with `wigner = W · (t₁ t₂ t₃; t₁z t₂z −t₃z)`.
    pub fn reduced_wigner(&self, states: [TY; 3]) -> Result<SqrtRational> {
        let v = self.raw_reduced(states)?;
        Ok(if self.sigma == Sign::Minus { -v } else { v })
    }

    /// Unitary isoscalar factor `√(d₃/(2t₃+1)) · W`.
    pub fn isoscalar(&self, states: [TY; 3]) -> Result<SqrtRational> {
        let w = self.reduced_wigner(states)?;
        let f = Rational::new(
            self.d3.clone().into(),
            num_bigint::BigInt::from(states[2].t.doubled() + 1),
        );
        Ok(&w * &SqrtRational::normalize(&f, Sign::Plus)?)
    }

    fn check_states(&self, states: &[Su3State; 3]) -> Result<()> {
        for (k, s) in states.iter().enumerate() {
            let rep = [self.rep1, self.rep2, self.rep3][k];
            if (s.lambda, s.mu) != rep {
                return Err(Error::InvalidState(format!(
                    "state {} belongs to ({},{}), expected ({},{})",
                    k + 1,
                    s.lambda,
                    s.mu,
                    rep.0,
                    rep.1
                )));
            }
            Su3State::new(s.lambda, s.mu, s.t, s.tz, s.y)?;
        }
        Ok(())
    }

    /// Wigner symbol: the coefficient of `V₁ V₂ V̄₃` in the normalized invariant.
    pub fn wigner(&self, states: [Su3State; 3]) -> Result<SqrtRational> {
        self.check_states(&states)?;
        if states[0].tz + states[1].tz != states[2].tz {
            return Ok(SqrtRational::zero());
        }
        let w = self.reduced_wigner(states.map(|s| TY::of(&s)))?;
        if w.is_zero() {
            return Ok(w);
        }
        let t = Su2Triple::new(
            [states[0].t, states[1].t, states[2].t],
            [states[0].tz, states[1].tz, -states[2].tz],
        )?;
        Ok(&w * &su2_3j(&t))
    }

    /// Clebsch–Gordan coefficient `⟨α₁ α₂ | α₃⟩` = isoscalar × SU(2) Clebsch–Gordan.
    pub fn clebsch_gordan(&self, states: [Su3State; 3]) -> Result<SqrtRational> {
        let w = self.wigner(states)?;
        let phase = (states[0].t - states[1].t + states[2].tz).doubled() / 2;
        Ok(cg_from_3j(&w, &self.d3, phase))
    }

    /// All nonzero isoscalar factors, ordered by descending `(t₃, y₃)` then `(t₁, y₁, t₂, y₂)`.
    pub fn isoscalar_table(&self) -> Result<Vec<IsoscalarEntry>> {
        let mut out = Vec::new();
        for c in su3_isospin_labels(self.rep3.0, self.rep3.1) {
            out.extend(self.isoscalar_rows(c)?);
        }
        Ok(out)
    }

    /// Nonzero isoscalar factors for one coupled label `(t₃, y₃)`.
    pub fn isoscalar_rows(&self, third: TY) -> Result<Vec<IsoscalarEntry>> {
        let mut out = Vec::new();
        for a in su3_isospin_labels(self.rep1.0, self.rep1.1) {
            for b in su3_isospin_labels(self.rep2.0, self.rep2.1) {
                let states = [a, b, third];
                let value = self.isoscalar(states)?;
                if !value.is_zero() {
                    out.push(IsoscalarEntry { states, value });
                }
            }
        }
        Ok(out)
    }

    /// Nonzero Wigner symbols whose third state is `third`.
    pub fn wigner_rows(&self, third: &Su3State) -> Result<Vec<WignerEntry>> {
        let mut out = Vec::new();
        for a in su3_states(self.rep1.0, self.rep1.1) {
            for b in su3_states(self.rep2.0, self.rep2.1) {
                let states = [a, b, *third];
                let value = self.wigner(states)?;
                if !value.is_zero() {
                    out.push(WignerEntry { states, value });
                }
            }
        }
        Ok(out)
    }
}

/// All states of `(λ, μ)` in descending `(t, y, t_z)` order.
pub fn su3_states(lambda: u32, mu: u32) -> Vec<Su3State> {
    let mut v: Vec<Su3State> = crate::poly::su3_labels(lambda, mu)
        .into_iter()
        .map(|(r, s, m)| Su3State::from_rsm(lambda, mu, r, s, m).expect("labels in range"))
        .collect();
    v.sort_by_key(|s| std::cmp::Reverse((s.t, s.y, s.tz)));
    v
}

/// Irreps `(λ₃, μ₃)` coupling with `(λ₁, 0)` and `(λ₂, μ₂)`, descending.
pub fn coupled_irreps(rep1: (u32, u32), rep2: (u32, u32)) -> Vec<(u32, u32)> {
    let max = rep1.0 + rep1.1 + rep2.0 + rep2.1;
    let mut out = Vec::new();
    for l3 in (0..=max).rev() {
        for m3 in (0..=max).rev() {
            if !solve_k_su3(rep1.0, rep1.1, rep2.0, rep2.1, l3, m3).is_empty() {
                out.push((l3, m3));
            }
        }
    }
    out
}

/// Why a query vanishes identically, if it does.
pub fn selection_rule(q: &IsoscalarQuery) -> Option<String> {
    let (a, b, c) = (q.rep1, q.rep2, q.rep3);
    if solve_k_su3(a.0, a.1, b.0, b.1, c.0, c.1).is_empty() {
        return Some("coupling forbidden (k7 not a nonnegative integer solution)".into());
    }
    if q.states[0].y + q.states[1].y != q.states[2].y {
        return Some("Y1 + Y2 != Y3".into());
    }
    let [x, y, z] = q.states.map(|s| s.t.doubled());
    if (x + y + z) % 2 != 0 || z > x + y || z < (x - y).abs() {
        return Some("isospin triangle fails".into());
    }
    None
}

/// Unitary isoscalar factor; forbidden couplings and selection-rule violations give zero.
pub fn isoscalar(q: &IsoscalarQuery) -> Result<SqrtRational> {
    if q.rep1.1 != 0 {
        return Err(Error::Unsupported("mu1 != 0".into()));
    }
    if solve_k_su3(q.rep1.0, 0, q.rep2.0, q.rep2.1, q.rep3.0, q.rep3.1).is_empty() {
        return Ok(SqrtRational::zero());
    }
    Su3Coupling::new(q.rep1, q.rep2, q.rep3)?.isoscalar(q.states)
}

/// Wigner symbol `isoscalar-3j-type × (t₁ t₂ t₃; t₁z t₂z −t₃z)`.
pub fn wigner_su3(q: &IsoscalarQuery, tz: [Half; 3]) -> Result<SqrtRational> {
    if q.rep1.1 != 0 {
        return Err(Error::Unsupported("mu1 != 0".into()));
    }
    let reps = [q.rep1, q.rep2, q.rep3];
    let states: Vec<Su3State> = (0..3)
        .map(|k| Su3State::new(reps[k].0, reps[k].1, q.states[k].t, tz[k], q.states[k].y))
        .collect::<Result<_>>()?;
    if solve_k_su3(q.rep1.0, 0, q.rep2.0, q.rep2.1, q.rep3.0, q.rep3.1).is_empty() {
        return Ok(SqrtRational::zero());
    }
    Su3Coupling::new(q.rep1, q.rep2, q.rep3)?.wigner([states[0], states[1], states[2]])
}
