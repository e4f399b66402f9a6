//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{brute_force_compositions, expansion_coefficients, racah_3j, tensor_multiplicities};
use gt_core::bfr::{enumerate_bfr, phi_monomial};
use gt_core::coupling::{
    coupled_irreps, selection_rule, su2_3j, su3_isospin_labels, su3_states, IsoscalarQuery, Su2Triple,
    Su3Coupling,
};
use gt_core::exact::Rational;
use gt_core::gt::{
    conjugate, enumerate_patterns, pattern_from_su3, su3_component_degrees, su3_from_pattern,
};
use gt_core::invariants::{
    build_h_su2, build_h_su3, canonical_table, count_invariants, enumerate_compositions,
    gelfand_from_k, invariant_poly, k_from_gelfand, solve_k_su3, KVector, Su2KVector,
};
use gt_core::poly::{su3_basis_vector, su3_labels};
use gt_core::{IrrepLabel, Sign, SqrtRational, Su3State};
use num_traits::{One, Zero};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<Duration, String> {
    let e = start.elapsed();
    ensure(e < limit, || format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

fn invariant_counts() -> Outcome {
    let start = Instant::now();
    let printed = [3u64, 7, 12, 18, 25];
    for (n, &want) in (2..=6).zip(&printed) {
        let got = count_invariants(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("n = {n}: {got} != {want}"))?;
    }
    for n in 2..=50 {
        let got = count_invariants(n).map_err(|e| e.to_string())?;
        let bf = brute_force_compositions(n);
        ensure(got == bf, || format!("n = {n}: {got} != brute force {bf}"))?;
        let listed = enumerate_compositions(n).map_err(|e| e.to_string())?.len() as u64;
        ensure(listed == bf, || format!("n = {n}: enumeration has {listed} items"))?;
    }
    let e = within(start, Duration::from_secs(1))?;
    Ok(format!("3,7,12,18,25 for n=2..6; brute force agrees for n=2..50 in {e:.2?}"))
}

fn tables(n: usize) -> BTreeSet<String> {
    enumerate_compositions(n)
        .unwrap()
        .iter()
        .map(|c| canonical_table(c).to_string())
        .collect()
}

fn canonical_tables() -> Outcome {
    let su2: BTreeSet<String> = ["1|1|0", "0|1|1", "1|0|1"].map(String::from).into();
    let su3: BTreeSet<String> = [
        "00|10|11", "10|00|11", "11|10|00", "11|00|10", "10|11|00", "00|11|10", "10|10|10",
    ]
    .map(String::from)
    .into();
    let su4: BTreeSet<String> = [
        "100|111|000", "110|110|000", "111|100|000", "100|000|111", "110|000|110", "111|000|100",
        "000|100|111", "000|110|110", "000|111|100", "100|100|110", "100|110|100", "110|100|100",
    ]
    .map(String::from)
    .into();
    for (n, want) in [(2, &su2), (3, &su3), (4, &su4)] {
        let got = tables(n);
        ensure(&got == want, || format!("n = {n}: got {got:?}"))?;
    }
    Ok("3 SU(2), 7 SU(3) and 12 SU(4) tables byte-exact".into())
}

fn bfr_fidelity() -> Outcome {
    let rows: [&[&str]; 3] = [
        &["1000", "0100", "0010", "0001"],
        &["1100", "1010", "1001", "0011", "0101", "0110"],
        &["0111", "1011", "1101", "1110"],
    ];
    for (m, want) in (1..=3).zip(rows) {
        let got: BTreeSet<String> = enumerate_bfr(4, m).unwrap().iter().map(|w| w.to_string()).collect();
        let want: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
        ensure(got == want, || format!("SU(4) weight {m}: {got:?}"))?;
    }
    let phi = [
        ("10", "y_2^1"),
        ("01", "x_2^1"),
        ("100", "y_2^1 y_3^1"),
        ("010", "x_2^1 y_3^1"),
        ("001", "x_3^1"),
        ("011", "x_2^1 x_3^2"),
        ("101", "y_2^1 x_3^2"),
        ("110", "y_3^2"),
    ];
    for (w, want) in phi {
        let got = phi_monomial(&w.parse().unwrap()).to_string();
        let mut g: Vec<&str> = got.split(' ').collect();
        let mut e: Vec<&str> = want.split(' ').collect();
        g.sort_unstable();
        e.sort_unstable();
        ensure(g == e, || format!("phi({w}) = {got}, expected {want}"))?;
    }
    Ok("SU(4) word table and 8 phi monomials reproduced".into())
}

fn conjugation() -> Outcome {
    let mut count = 0usize;
    let mut within_three = 0usize;
    for n in 2..=4usize {
        for top in labels(n, 6) {
            for p in enumerate_patterns(&IrrepLabel::new(top.clone()).unwrap()) {
                let c = conjugate(&p).map_err(|e| e.to_string())?;
                let cc = conjugate(&c).map_err(|e| e.to_string())?;
                ensure(cc == p, || format!("conjugate is not an involution on {p}"))?;
                count += 1;
                within_three += usize::from(top[0] <= 3);
            }
        }
    }
    let mut su3 = 0usize;
    for l in 0..=4u32 {
        for m in 0..=(4 - l) {
            for s in su3_states(l, m) {
                let c = su3_from_pattern(&conjugate(&pattern_from_su3(&s).unwrap()).unwrap()).unwrap();
                let want = Su3State {
                    lambda: m,
                    mu: l,
                    t: s.t,
                    tz: -s.tz,
                    y: -s.y,
                };
                ensure(c == want, || format!("{s} conjugates to {c}"))?;
                su3 += 1;
            }
        }
    }
    for j2 in 0..=6i64 {
        for h11 in 0..=j2 {
            let p = format!("{j2},0;{h11}").parse().unwrap();
            let c = conjugate(&p).unwrap();
            // h11 = j - m so j + m = 2j - h11.
            ensure(c.h(1, 1) == j2 - h11, || format!("SU(2) conjugate of {p} is {c}"))?;
        }
    }
    Ok(format!(
        "{within_three} patterns with h1n <= 3 ({count} with h1n <= 6) involutive, {su3} SU(3) states flip (tz, y)"
    ))
}

/// Dominant SU(n) tops with `h_n = 0` and `h_1 ≤ max`.
fn labels(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n - 1 {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let hi = v.last().copied().unwrap_or(max);
                (0..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut v| {
            v.push(0);
            v
        })
        .collect()
}

fn orthonormality() -> Outcome {
    let start = Instant::now();
    let mut vectors = 0;
    for l in 0..=4u32 {
        for m in 0..=(4 - l) {
            let basis: Vec<_> = su3_labels(l, m)
                .into_iter()
                .map(|(r, s, k)| (Su3State::from_rsm(l, m, r, s, k).unwrap(), su3_basis_vector(l, m, r, s, k).unwrap()))
                .collect();
            for (i, (sa, a)) in basis.iter().enumerate() {
                let d = a.poly().homogeneity().map_err(|e| e.to_string())?;
                ensure(d.vector_degrees == [l + m, m], || format!("{sa}: vector degrees {:?}", d.vector_degrees))?;
                let comp = su3_component_degrees(sa).map(|x| x as u32);
                ensure(d.component_degrees == comp, || {
                    format!("{sa}: component degrees {:?} vs {comp:?}", d.component_degrees)
                })?;
                for (j, (sb, b)) in basis.iter().enumerate().skip(i) {
                    let v = a.inner(b).map_err(|e| e.to_string())?;
                    let want = if i == j { Rational::one() } else { Rational::zero() };
                    ensure(v.to_rational() == Some(want.clone()), || format!("<{sa}|{sb}> = {v}"))?;
                }
                vectors += 1;
            }
        }
    }
    let e = within(start, Duration::from_secs(30))?;
    Ok(format!("{vectors} basis vectors orthonormal, degrees match, {e:.2?}"))
}

fn su2_3j_agreement() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for j1 in 0..=8i64 {
        for j2 in 0..=8i64 {
            for j3 in (j1 - j2).abs()..=(j1 + j2).min(8) {
                if (j1 + j2 + j3) % 2 != 0 {
                    continue;
                }
                for m1 in (-j1..=j1).step_by(2) {
                    for m2 in (-j2..=j2).step_by(2) {
                        let m3 = -m1 - m2;
                        if m3.abs() > j3 {
                            continue;
                        }
                        let t = Su2Triple::new(common::halves([j1, j2, j3]), common::halves([m1, m2, m3]))
                            .map_err(|e| e.to_string())?;
                        let v = su2_3j(&t);
                        let (sq, sg) = racah_3j([j1, j2, j3], [m1, m2, m3]);
                        ensure(v.square() == sq, || format!("|3j| differs at {t:?}"))?;
                        // The convention map to the Racah form is the identity.
                        ensure(v.sign().to_i8() == sg, || format!("sign differs at {t:?}"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    let e = within(start, Duration::from_secs(10))?;
    Ok(format!("{cases} cases with all j <= 4 agree with Racah, identity sign map, {e:.2?}"))
}

fn invariant_normalization() -> Outcome {
    let mut n = 0;
    for k1 in 0..=2 {
        for k2 in 0..=2 {
            for k5 in 0..=2 {
                for k6 in 0..=2 {
                    for k7 in 0..=2 {
                        let k = KVector::new([k1, k2, 0, 0, k5, k6, k7]);
                        let h = build_h_su3(&k).map_err(|e| e.to_string())?;
                        let v = h.norm_squared();
                        ensure(v.is_one(), || format!("<H,H> = {v} for {k}"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    let mut m = 0;
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let h = build_h_su2(&Su2KVector([a, b, c]));
                let v = h.norm_squared();
                ensure(v.is_one(), || format!("SU(2) <H,H> = {v} for ({a},{b},{c})"))?;
                m += 1;
            }
        }
    }
    Ok(format!("{n} SU(3) and {m} SU(2) invariants have unit norm"))
}

fn isoscalar_correctness() -> Outcome {
    let mut checked = 0;
    let mut couplings = Vec::new();
    for (r1, r2) in [((1, 0), (1, 0)), ((1, 0), (1, 1)), ((2, 0), (1, 1)), ((2, 0), (2, 2))] {
        for r3 in coupled_irreps(r1, r2) {
            let c = Su3Coupling::new(r1, r2, r3).map_err(|e| e.to_string())?;
            let oracle = expansion_coefficients(r1, r2, r3);
            let sigma = c.phase_sign();
            for a in su3_states(r1.0, r1.1) {
                for b in su3_states(r2.0, r2.1) {
                    for d in su3_states(r3.0, r3.1) {
                        let lib = c.wigner([a, b, d]).map_err(|e| e.to_string())?;
                        let mut exp = oracle.get(&[a, b, d]).cloned().unwrap_or_else(SqrtRational::zero);
                        if sigma == Sign::Minus {
                            exp = -exp;
                        }
                        ensure(lib == exp, || format!("{a} {b} {d}: {lib} vs expansion {exp}"))?;
                        checked += 1;
                    }
                }
            }
            for third in su3_isospin_labels(r3.0, r3.1) {
                let s: Rational = c
                    .isoscalar_rows(third)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|e| e.value.square())
                    .sum();
                ensure(s.is_one(), || format!("{r1:?}{r2:?}{r3:?} {third:?}: sum {s}"))?;
            }
            couplings.push(format!("{r3:?}"));
        }
    }
    Ok(format!(
        "{checked} Wigner symbols match the expansion over {} couplings, unitarity exact",
        couplings.len()
    ))
}

fn property_suite() -> Outcome {
    let mut trips = 0;
    for code in 0..4u32.pow(7) {
        let k = KVector::new(std::array::from_fn(|i| (code / 4u32.pow(i as u32)) % 4));
        let back = k_from_gelfand(&gelfand_from_k(&k)).map_err(|e| e.to_string())?;
        ensure(back == k, || format!("{k} round-trips to {back}"))?;
        trips += 1;
    }
    let mut zeros = 0;
    for l1 in 0..=3i64 {
        for l2 in 0..=3i64 {
            for m2 in 0..=3i64 {
                let lr = tensor_multiplicities((l1, 0), (l2, m2));
                for l3 in 0..=7i64 {
                    for m3 in 0..=7i64 {
                        let sols = solve_k_su3(l1 as u32, 0, l2 as u32, m2 as u32, l3 as u32, m3 as u32);
                        let mult = *lr.get(&(l3, m3)).unwrap_or(&0);
                        ensure(sols.len() as i64 == mult, || {
                            format!("({l1},0)({l2},{m2})->({l3},{m3}): {} solutions, multiplicity {mult}", sols.len())
                        })?;
                        let divisible = (l1 + l2 + m3 - m2 - l3).rem_euclid(3) == 0;
                        ensure(divisible || sols.is_empty(), || "k7 divisibility".into())?;
                        zeros += 1;
                    }
                }
            }
        }
    }
    let mut balance = 0;
    for (r1, r2) in [((1, 0), (1, 1)), ((2, 0), (1, 1))] {
        for r3 in coupled_irreps(r1, r2) {
            let c = Su3Coupling::new(r1, r2, r3).map_err(|e| e.to_string())?;
            let oracle = expansion_coefficients(r1, r2, r3);
            for a in su3_isospin_labels(r1.0, r1.1) {
                for b in su3_isospin_labels(r2.0, r2.1) {
                    for d in su3_isospin_labels(r3.0, r3.1) {
                        let q = IsoscalarQuery {
                            rep1: r1,
                            rep2: r2,
                            rep3: r3,
                            states: [a, b, d],
                        };
                        let lib_zero = c.isoscalar([a, b, d]).map_err(|e| e.to_string())?.is_zero();
                        let oracle_zero = !oracle
                            .keys()
                            .any(|s| (s[0].t, s[0].y, s[1].t, s[1].y, s[2].t, s[2].y) == (a.t, a.y, b.t, b.y, d.t, d.y));
                        ensure(lib_zero == oracle_zero, || format!("zero pattern differs at {q:?}"))?;
                        if selection_rule(&q).is_some() {
                            ensure(lib_zero, || format!("selection rule ignored at {q:?}"))?;
                        }
                        balance += 1;
                    }
                }
            }
        }
    }
    let mut shears = 0;
    for n in 2..=4usize {
        for comp in enumerate_compositions(n).unwrap() {
            let p = invariant_poly(&canonical_table(&comp));
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for c in [-2i64, 1, 3] {
                        let mut m: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect();
                        m[i][j] = c;
                        let q = p.linear_substitute(&m).map_err(|e| e.to_string())?;
                        ensure(q == p, || format!("shear ({i},{j},{c}) changes invariant {}", canonical_table(&comp)))?;
                        shears += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{trips} k round-trips, {zeros} multiplicity checks, {balance} zero-pattern checks, {shears} shears"
    ))
}

fn run(n: usize, name: &str, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let e = start.elapsed();
    match res {
        Ok(msg) => {
            println!("PASS criterion {n} {name}: {msg} [{e:.2?}]");
            true
        }
        Err(msg) => {
            println!("FAIL criterion {n} {name}: {msg} [{e:.2?}]");
            false
        }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("invariant counts", invariant_counts),
        ("canonical tables", canonical_tables),
        ("BFR fidelity", bfr_fidelity),
        ("conjugation", conjugation),
        ("basis orthonormality", orthonormality),
        ("SU(2) 3j", su2_3j_agreement),
        ("invariant normalization", invariant_normalization),
        ("isoscalar correctness", isoscalar_correctness),
        ("property suite", property_suite),
    ];
    let passed = criteria
        .iter()
        .enumerate()
        .filter(|(i, (name, f))| run(i + 1, name, *f))
        .count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
