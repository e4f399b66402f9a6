//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use gt_core::exact::{fact, Rational, Sign, SqrtRational};
use gt_core::invariants::{build_h_su3, solve_k_su3};
use gt_core::poly::{su3_basis_raw, su3_labels, su3_norm_squared};
use gt_core::{Half, Su3State};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn f(n: i64) -> Option<BigInt> {
    (n >= 0).then(|| fact(n as u64))
}

/// Racah's closed form for the 3j symbol on doubled labels, as `(square, sign)`.
pub fn racah_3j(j: [i64; 3], m: [i64; 3]) -> (Rational, i8) {
    let [j1, j2, j3] = j;
    let [m1, m2, m3] = m;
    if m1 + m2 + m3 != 0
        || (j1 + j2 + j3) % 2 != 0
        || j3 > j1 + j2
        || j3 < (j1 - j2).abs()
        || (0..3).any(|k| m[k].abs() > j[k] || (j[k] - m[k]) % 2 != 0)
    {
        return (Rational::zero(), 0);
    }
    let h = |x: i64| x / 2;
    let tri = Rational::new(
        fact(h(j1 + j2 - j3) as u64) * fact(h(j1 - j2 + j3) as u64) * fact(h(-j1 + j2 + j3) as u64),
        fact(h(j1 + j2 + j3) as u64 + 1),
    );
    let mut pre = tri;
    for k in 0..3 {
        pre *= Rational::from_integer(fact(h(j[k] + m[k]) as u64) * fact(h(j[k] - m[k]) as u64));
    }
    let mut sum = Rational::zero();
    for t in 0..=h(j1 + j2 + j3) {
        let dens = [
            f(t),
            f(h(j3 - j2 + m1) + t),
            f(h(j3 - j1 - m2) + t),
            f(h(j1 + j2 - j3) - t),
            f(h(j1 - m1) - t),
            f(h(j2 + m2) - t),
        ];
        if dens.iter().any(Option::is_none) {
            continue;
        }
        let d: BigInt = dens.into_iter().map(Option::unwrap).product();
        let term = Rational::new(BigInt::one(), d);
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return (Rational::zero(), 0);
    }
    let phase = h(j1 - j2 - m3);
    let mut sign: i8 = if sum.is_negative() { -1 } else { 1 };
    if phase.rem_euclid(2) == 1 {
        sign = -sign;
    }
    (&sum * &sum * pre, sign)
}

/// Number of compositions `α₁+α₂+α₃ = n` with `0 ≤ αᵢ ≤ n−1`, by nested loops.
pub fn brute_force_compositions(n: usize) -> u64 {
    let mut c = 0;
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                if a + b + d == n {
                    c += 1;
                }
            }
        }
    }
    c
}

/// Dynkin weights `(w₁−w₂, w₂−w₃)` of all states of `(λ, μ)` with multiplicity.
pub fn su3_weights(lambda: i64, mu: i64) -> HashMap<(i64, i64), i64> {
    let (h13, h23) = (lambda + mu, mu);
    let mut w = HashMap::new();
    for h12 in h23..=h13 {
        for h22 in 0..=h23 {
            for h11 in h22..=h12 {
                let w1 = h11;
                let w2 = h12 + h22 - h11;
                let w3 = h13 + h23 - h12 - h22;
                *w.entry((w1 - w2, w2 - w3)).or_insert(0) += 1;
            }
        }
    }
    w
}

/// Multiplicity of every irrep in `(λ₁μ₁) ⊗ (λ₂μ₂)` by peeling highest weights off the product character.
pub fn tensor_multiplicities(a: (i64, i64), b: (i64, i64)) -> BTreeMap<(i64, i64), i64> {
    let wa = su3_weights(a.0, a.1);
    let wb = su3_weights(b.0, b.1);
    let mut prod: HashMap<(i64, i64), i64> = HashMap::new();
    for (x, cx) in &wa {
        for (y, cy) in &wb {
            *prod.entry((x.0 + y.0, x.1 + y.1)).or_insert(0) += cx * cy;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        prod.retain(|_, c| *c != 0);
        let Some((&top, &c)) = prod
            .iter()
            .max_by_key(|(w, _)| (w.0 + w.1, w.0, w.1))
        else {
            break;
        };
        assert!(top.0 >= 0 && top.1 >= 0 && c > 0, "peeling reached a non-dominant weight");
        out.insert(top, c);
        for (w, m) in su3_weights(top.0, top.1) {
            *prod.entry(w).or_insert(0) -= c * m;
        }
    }
    out
}

type MonomialIndex = HashMap<Vec<u16>, Vec<(usize, Rational)>>;

/// Coefficients of `V₁(z¹,z²) V₂(z³,z⁴) V₃ᶜ(z⁵,z⁶)` in the normalized invariant, keyed by the
/// coupled states; the third factor is the conjugate state in `(μ₃, λ₃)`.
pub fn expansion_coefficients(
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
) -> BTreeMap<[Su3State; 3], SqrtRational> {
    let k = solve_k_su3(rep1.0, rep1.1, rep2.0, rep2.1, rep3.0, rep3.1)[0];
    let h = build_h_su3(&k).expect("normalizable invariant");
    let pair_irreps = [rep1, rep2, (rep3.1, rep3.0)];
    let mut states: Vec<Vec<(Su3State, SqrtRational)>> = vec![Vec::new(); 3];
    let mut index: Vec<MonomialIndex> = vec![HashMap::new(); 3];
    for p in 0..3 {
        let (l, u) = pair_irreps[p];
        for (r, s, m) in su3_labels(l, u) {
            let raw = su3_basis_raw(6, 2 * p + 1, 2 * p + 2, l, u, r, s, m).unwrap();
            let nf = SqrtRational::normalize(&su3_norm_squared(l, u, r, s, m), Sign::Plus)
                .unwrap()
                .with_parity(s as i64);
            let st = Su3State::from_rsm(l, u, r, s, m).unwrap();
            let public = if p == 2 {
                Su3State {
                    lambda: rep3.0,
                    mu: rep3.1,
                    t: st.t,
                    tz: -st.tz,
                    y: -st.y,
                }
            } else {
                st
            };
            let idx = states[p].len();
            states[p].push((public, nf));
            for (mono, c) in raw.terms() {
                index[p]
                    .entry(mono[6 * p..6 * p + 6].to_vec())
                    .or_default()
                    .push((idx, c.clone()));
            }
        }
    }
    let mut acc: HashMap<[usize; 3], Rational> = HashMap::new();
    for (mono, c) in h.poly().terms() {
        let parts: Vec<&Vec<(usize, Rational)>> = match (0..3)
            .map(|p| index[p].get(&mono[6 * p..6 * p + 6]))
            .collect::<Option<Vec<_>>>()
        {
            Some(v) => v,
            None => continue,
        };
        let w: BigInt = mono.iter().map(|&e| fact(e as u64)).product();
        let cw = c * Rational::from_integer(w);
        for (i1, c1) in parts[0] {
            let a = &cw * c1;
            for (i2, c2) in parts[1] {
                let b = &a * c2;
                for (i3, c3) in parts[2] {
                    *acc.entry([*i1, *i2, *i3]).or_insert_with(Rational::zero) += &b * c3;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (ix, v) in acc {
        if v.is_zero() {
            continue;
        }
        let norm = &(&(h.norm_factor() * &states[0][ix[0]].1) * &states[1][ix[1]].1) * &states[2][ix[2]].1;
        out.insert(
            [states[0][ix[0]].0, states[1][ix[1]].0, states[2][ix[2]].0],
            norm.scale(&v),
        );
    }
    out
}

/// Doubled labels as [`Half`]s.
pub fn halves(d: [i64; 3]) -> [Half; 3] {
    d.map(Half::from_doubled)
}

/// Racah's closed form for `⟨j₁m₁ j₂m₂ | j₃m₃⟩` on doubled labels, as `(square, sign)`.
pub fn racah_cg(j: [i64; 3], m: [i64; 3]) -> (Rational, i8) {
    let [j1, j2, j3] = j;
    let [m1, m2, m3] = m;
    if m1 + m2 != m3
        || (j1 + j2 + j3) % 2 != 0
        || j3 > j1 + j2
        || j3 < (j1 - j2).abs()
        || (0..3).any(|k| m[k].abs() > j[k] || (j[k] - m[k]) % 2 != 0)
    {
        return (Rational::zero(), 0);
    }
    let h = |x: i64| x / 2;
    let mut pre = Rational::new(
        BigInt::from(j3 + 1)
            * fact(h(j1 + j2 - j3) as u64)
            * fact(h(j1 - j2 + j3) as u64)
            * fact(h(-j1 + j2 + j3) as u64),
        fact(h(j1 + j2 + j3) as u64 + 1),
    );
    for k in 0..3 {
        pre *= Rational::from_integer(fact(h(j[k] + m[k]) as u64) * fact(h(j[k] - m[k]) as u64));
    }
    let mut sum = Rational::zero();
    for k in 0..=h(j1 + j2 + j3) {
        let dens = [
            f(k),
            f(h(j1 + j2 - j3) - k),
            f(h(j1 - m1) - k),
            f(h(j2 + m2) - k),
            f(h(j3 - j2 + m1) + k),
            f(h(j3 - j1 - m2) + k),
        ];
        if dens.iter().any(Option::is_none) {
            continue;
        }
        let d: BigInt = dens.into_iter().map(Option::unwrap).product();
        let term = Rational::new(BigInt::one(), d);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return (Rational::zero(), 0);
    }
    (&sum * &sum * pre, if sum.is_negative() { -1 } else { 1 })
}
