//! Exact number tower: factorials, binomials, and signed square roots of rationals.
//!
//! A [`SqrtRational`] holds `sign · r · √d` with `r` a positive rational and `d` a
//! square-free positive integer. The representation is unique, so structural
//! equality is value equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

const FACT_CACHE: usize = 256;
const TRIAL_LIMIT: u32 = 1_000_000;

fn fact_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(FACT_CACHE);
        let mut acc = BigInt::one();
        v.push(acc.clone());
        for i in 1..FACT_CACHE {
            acc *= i;
            v.push(acc.clone());
        }
        v
    })
}

/// `n!` for a signed argument; negative input is a domain error.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative integer {n}")));
    }
    Ok(fact(n as u64))
}

/// `n!` for a nonnegative argument.
pub fn fact(n: u64) -> BigInt {
    let table = fact_table();
    if (n as usize) < table.len() {
        return table[n as usize].clone();
    }
    let mut acc = table[table.len() - 1].clone();
    for i in table.len() as u64..=n {
        acc *= i;
    }
    acc
}

/// `n!` as a rational, zero when `n` is negative.
pub(crate) fn fact_or_zero(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        Rational::from_integer(fact(n as u64))
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rational `num/den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if d != *n {
            return d;
        }
        c += 1u32;
    }
}

fn factor_large(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        let mut inner = BTreeMap::new();
        factor_large(root, &mut inner);
        for (p, e) in inner {
            *out.entry(p).or_insert(0) += 2 * e;
        }
        return;
    }
    let d = pollard_rho(&n);
    let rest = &n / &d;
    factor_large(d, out);
    factor_large(rest, out);
}

/// Splits `n > 0` as `c² · d` with `d` square-free; returns `(c, d)`.
pub fn square_free_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "square-free decomposition of zero");
    let mut rest = n.clone();
    let mut c = BigUint::one();
    let mut d = BigUint::one();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            c *= pb.pow(e / 2);
            if e % 2 == 1 {
                d *= &pb;
            }
        }
    }
    if rest.is_one() {
        return (c, d);
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if rest <= &limit * &limit {
        // No factor up to the trial limit, so the remainder is prime.
        d *= rest;
        return (c, d);
    }
    let mut factors = BTreeMap::new();
    factor_large(rest, &mut factors);
    for (p, e) in factors {
        c *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    (c, d)
}

/// Sign of a [`SqrtRational`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    /// `-1`, `0` or `+1`.
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    /// Inverse of [`Sign::to_i8`]; any negative maps to minus, any positive to plus.
    pub fn from_i64(s: i64) -> Sign {
        match s.signum() {
            -1 => Sign::Minus,
            0 => Sign::Zero,
            _ => Sign::Plus,
        }
    }

    /// `(-1)^e`.
    pub fn parity(e: i64) -> Sign {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i64(self.to_i8() as i64 * rhs.to_i8() as i64)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_i64(-(self.to_i8() as i64))
    }
}

/// Exact value `sign · rational · √radicand` in unique normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: Sign,
    rational: Rational,
    radicand: BigUint,
}

impl SqrtRational {
    /// The value zero.
    pub fn zero() -> Self {
        SqrtRational {
            sign: Sign::Zero,
            rational: Rational::one(),
            radicand: BigUint::one(),
        }
    }

    /// The value one.
    pub fn one() -> Self {
        SqrtRational {
            sign: Sign::Plus,
            rational: Rational::one(),
            radicand: BigUint::one(),
        }
    }

    /// Embeds a rational.
    pub fn from_rational(q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SqrtRational {
            sign: if q.is_negative() { Sign::Minus } else { Sign::Plus },
            rational: q.abs(),
            radicand: BigUint::one(),
        }
    }

    /// Embeds an integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    /// `sign · √raw_square` in normal form; a negative square is a domain error.
    pub fn normalize(raw_square: &Rational, sign: Sign) -> Result<Self> {
        if raw_square.is_negative() {
            return Err(Error::Domain(format!("negative square {raw_square}")));
        }
        if raw_square.is_zero() || sign == Sign::Zero {
            return Ok(Self::zero());
        }
        let num = raw_square.numer().magnitude();
        let den = raw_square.denom().magnitude();
        // √(a/b) = √(ab)/b with ab = c²d.
        let (c, d) = square_free_decompose(&(num * den));
        let rational = Rational::new(
            BigInt::from_biguint(BigSign::Plus, c),
            BigInt::from_biguint(BigSign::Plus, den.clone()),
        );
        Ok(SqrtRational {
            sign,
            rational,
            radicand: d,
        })
    }

    /// Assembles from parts, normalizing the radicand `rad_num/rad_den`.
    pub fn from_parts(sign: Sign, rational: &Rational, radicand: &Rational) -> Result<Self> {
        if rational.is_negative() || radicand.is_negative() {
            return Err(Error::Domain(
                "rational part and radicand must be nonnegative".into(),
            ));
        }
        let square = rational * rational * radicand;
        Self::normalize(&square, sign)
    }

    /// Sign of the value.
    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Positive rational prefactor.
    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Square-free radicand as a rational.
    pub fn radicand(&self) -> Rational {
        Rational::from_integer(BigInt::from_biguint(BigSign::Plus, self.radicand.clone()))
    }

    /// Square-free radicand as an integer.
    pub fn radicand_int(&self) -> &BigUint {
        &self.radicand
    }

    /// True for the value zero.
    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// True when the value is rational.
    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// Exact square of the magnitude, carrying no sign.
    pub fn square(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        &self.rational * &self.rational * self.radicand()
    }

    /// Signed square `sign · value²`, an order-preserving rational image.
    pub fn signed_square(&self) -> Rational {
        match self.sign {
            Sign::Minus => -self.square(),
            _ => self.square(),
        }
    }

    /// The value as a rational when the radicand is 1.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.is_rational() {
            return None;
        }
        Some(match self.sign {
            Sign::Minus => -self.rational.clone(),
            _ => self.rational.clone(),
        })
    }

    /// Multiplies by `(-1)^e`.
    pub fn with_parity(mut self, e: i64) -> Self {
        self.sign = self.sign * Sign::parity(e);
        self
    }

    /// Multiplicative inverse; zero is a domain error.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let d = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, self.radicand.clone()));
        Ok(SqrtRational {
            sign: self.sign,
            rational: (&self.rational * &d).recip(),
            radicand: self.radicand.clone(),
        })
    }

    /// Exact quotient; division by zero is a domain error.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Scales by a rational.
    pub fn scale(&self, q: &Rational) -> Self {
        self * &SqrtRational::from_rational(q)
    }

    /// Exact sum when both terms share a radicand (or one is zero).
    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        if self.radicand != rhs.radicand {
            return None;
        }
        let a = self.signed_rational();
        let b = rhs.signed_rational();
        let s = a + b;
        if s.is_zero() {
            return Some(Self::zero());
        }
        Some(SqrtRational {
            sign: if s.is_negative() { Sign::Minus } else { Sign::Plus },
            rational: s.abs(),
            radicand: self.radicand.clone(),
        })
    }

    fn signed_rational(&self) -> Rational {
        match self.sign {
            Sign::Minus => -self.rational.clone(),
            Sign::Zero => Rational::zero(),
            Sign::Plus => self.rational.clone(),
        }
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        self.sign.to_i8() as f64 * r * d.sqrt()
    }

    /// Correctly rounded decimal with `digits` significant digits (half to even),
    /// in the form `d.ddd…e±x`; zero renders as `0`.
    pub fn to_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".into();
        }
        let sq = self.square();
        let a = sq.numer().magnitude().clone();
        let b = sq.denom().magnitude().clone();
        let guard = digits as i64 + 3;
        // Estimate log10 of the value to choose the scale.
        let est = (a.bits() as f64 - b.bits() as f64) * std::f64::consts::LOG10_2 / 2.0;
        let mut k = guard - est.floor() as i64;
        let (n, exact) = loop {
            let (num, den) = if k >= 0 {
                (&a * BigUint::from(10u32).pow(2 * k as u32), b.clone())
            } else {
                (a.clone(), &b * BigUint::from(10u32).pow((-2 * k) as u32))
            };
            let q = &num / &den;
            let n = q.sqrt();
            let digits_n = n.to_string().len() as i64;
            if digits_n < guard {
                k += guard - digits_n;
                continue;
            }
            let exact = &n * &n * &den == num;
            break (n, exact);
        };
        let s = n.to_string();
        let total = s.len() as u32;
        let drop = total - digits;
        let p = BigUint::from(10u32).pow(drop);
        let mut q = &n / &p;
        let r = &n % &p;
        let half = &p / 2u32;
        let round_up = r > half || (r == half && (!exact || q.is_odd()));
        if round_up {
            q += 1u32;
        }
        let mut qs = q.to_string();
        let mut exp10 = drop as i64 - k + (digits as i64 - 1);
        if qs.len() as u32 > digits {
            qs.truncate(digits as usize);
            exp10 += 1;
        }
        let sign = if self.sign == Sign::Minus { "-" } else { "" };
        let mantissa = if qs.len() > 1 {
            format!("{}.{}", &qs[..1], &qs[1..])
        } else {
            qs
        };
        format!("{sign}{mantissa}e{exp10}")
    }

    /// Compact rendering: `+1`, `-3/2`, `+(1/3)*sqrt(3)`, `0`.
    pub fn to_compact_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let sign = if self.sign == Sign::Minus { "-" } else { "+" };
        if self.is_rational() {
            format!("{sign}{}", self.rational)
        } else {
            format!("{sign}({})*sqrt({})", self.rational, self.radicand)
        }
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        if self.is_zero() || rhs.is_zero() {
            return SqrtRational::zero();
        }
        let g = self.radicand.gcd(&rhs.radicand);
        let radicand = (&self.radicand / &g) * (&rhs.radicand / &g);
        let rational =
            &self.rational * &rhs.rational * Rational::from_integer(BigInt::from_biguint(BigSign::Plus, g));
        SqrtRational {
            sign: self.sign * rhs.sign,
            rational,
            radicand,
        }
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(mut self) -> SqrtRational {
        self.sign = -self.sign;
        self
    }
}

/// Product of two surds in normal form.
pub fn mul_sqrt(a: &SqrtRational, b: &SqrtRational) -> SqrtRational {
    a * b
}

/// Free-function form of [`SqrtRational::normalize`].
pub fn normalize_sqrt(raw_square: &Rational, sign: Sign) -> Result<SqrtRational> {
    SqrtRational::normalize(raw_square, sign)
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.sign == Sign::Minus { "-" } else { "" };
        write!(f, "{sign}({})*sqrt({})", self.rational, self.radicand)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for SqrtRational {
    type Err = Error;

    /// Accepts the canonical text form, a signed compact form, or a plain rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (Sign::Minus, &t[1..]),
            Some(b'+') => (Sign::Plus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        if let Some(rest) = body.strip_prefix('(') {
            let (r, tail) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in '{s}'")))?;
            let inner = tail
                .strip_prefix("*sqrt(")
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected '*sqrt(..)' in '{s}'")))?;
            let r = parse_rational(r)?;
            let d = parse_rational(inner)?;
            let v = SqrtRational::from_parts(Sign::Plus, &r, &d)?;
            return Ok(if sign == Sign::Minus { -v } else { v });
        }
        let q = parse_rational(body)?;
        let v = SqrtRational::from_rational(&q);
        Ok(if sign == Sign::Minus { -v } else { v })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }

    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("invalid integer '{s}'")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SqrtRationalJson {
    sign: i8,
    num: JsonInt,
    den: JsonInt,
    rad_num: JsonInt,
    rad_den: JsonInt,
}

impl Serialize for SqrtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rad = BigInt::from_biguint(BigSign::Plus, self.radicand.clone());
        SqrtRationalJson {
            sign: self.sign.to_i8(),
            num: JsonInt::from_big(self.rational.numer()),
            den: JsonInt::from_big(self.rational.denom()),
            rad_num: JsonInt::from_big(&rad),
            rad_den: JsonInt::Small(1),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SqrtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SqrtRationalJson::deserialize(deserializer)?;
        let big = |x: &JsonInt| x.to_big().map_err(D::Error::custom);
        let (num, den, rn, rd) = (big(&j.num)?, big(&j.den)?, big(&j.rad_num)?, big(&j.rad_den)?);
        if den.is_zero() || rd.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        let sign = match j.sign {
            -1 => Sign::Minus,
            0 => Sign::Zero,
            1 => Sign::Plus,
            other => return Err(D::Error::custom(format!("invalid sign {other}"))),
        };
        SqrtRational::from_parts(sign, &Rational::new(num, den), &Rational::new(rn, rd))
            .map_err(D::Error::custom)
    }
}

/// Exact sum of surds, grouped by square-free radicand.
///
/// Square roots of distinct square-free integers are linearly independent over
/// the rationals, so two sums are equal exactly when every group agrees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    groups: BTreeMap<BigUint, Rational>,
}

impl SurdSum {
    /// Empty sum.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term.
    pub fn add(&mut self, x: &SqrtRational) {
        if x.is_zero() {
            return;
        }
        let e = self
            .groups
            .entry(x.radicand.clone())
            .or_insert_with(Rational::zero);
        *e += x.signed_rational();
        if e.is_zero() {
            self.groups.remove(&x.radicand);
        }
    }

    /// True for the exact value zero.
    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// The sum as a single surd when at most one radicand survives.
    pub fn to_single(&self) -> Option<SqrtRational> {
        match self.groups.len() {
            0 => Some(SqrtRational::zero()),
            1 => {
                let (d, q) = self.groups.iter().next()?;
                Some(SqrtRational {
                    sign: if q.is_negative() { Sign::Minus } else { Sign::Plus },
                    rational: q.abs(),
                    radicand: d.clone(),
                })
            }
            _ => None,
        }
    }

    /// Floating approximation.
    pub fn to_f64(&self) -> f64 {
        self.groups
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }
}

impl FromIterator<SqrtRational> for SurdSum {
    fn from_iter<I: IntoIterator<Item = SqrtRational>>(iter: I) -> Self {
        let mut s = SurdSum::new();
        for x in iter {
            s.add(&x);
        }
        s
    }
}
