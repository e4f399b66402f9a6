//! Sparse polynomials in the Fock–Bargmann variables `z_i^j`, the Gaussian inner
//! product, and the SU(3) basis polynomials.
//!
//! Index `i` (row, `1..=rows`) is the component and `j` (column, `1..=cols`) selects
//! the vector `z^(j)`; the exponent of `z_i^j` sits at `(j−1)·rows + (i−1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, fact, Rational, Sign, SqrtRational};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

/// Exact multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    /// The zero polynomial on `rows × cols` variables.
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparsePoly {
            rows,
            cols,
            terms: BTreeMap::new(),
        }
    }

    /// A constant.
    pub fn constant(rows: usize, cols: usize, c: Rational) -> Self {
        let mut p = Self::zero(rows, cols);
        if !c.is_zero() {
            p.terms.insert(vec![0; rows * cols], c);
        }
        p
    }

    /// The constant one.
    pub fn one(rows: usize, cols: usize) -> Self {
        Self::constant(rows, cols, Rational::one())
    }

    /// The variable `z_i^j` (1-based).
    pub fn var(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        assert!((1..=rows).contains(&i) && (1..=cols).contains(&j), "variable out of range");
        let mut e = vec![0u16; rows * cols];
        e[(j - 1) * rows + (i - 1)] = 1;
        let mut p = Self::zero(rows, cols);
        p.terms.insert(e, Rational::one());
        p
    }

    /// Builds from explicit terms, dropping zeros and merging duplicates.
    pub fn from_terms(
        rows: usize,
        cols: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(rows, cols);
        for (m, c) in terms {
            if m.len() != rows * cols {
                return Err(Error::Structure(format!(
                    "monomial arity {} differs from {}",
                    m.len(),
                    rows * cols
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Number of components per vector.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of vectors.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Terms keyed by exponent vector.
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent of `z_i^j` in a monomial.
    pub fn exponent(&self, m: &Monomial, i: usize, j: usize) -> u16 {
        m[(j - 1) * self.rows + (i - 1)]
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Structure(format!(
                "variable arity {}x{} differs from {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(u, v)| u + v).collect();
                *acc.entry(m).or_insert_with(Rational::zero) += x * y;
            }
        }
        Ok(SparsePoly {
            rows: self.rows,
            cols: self.cols,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Non-negative power.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.rows, self.cols);
        for _ in 0..e {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        SparsePoly {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Content `g` with `self / g` integer-primitive and `g > 0`.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num.abs(), den)
    }

    /// Determinant of the matrix `(z_{rows[a]}^{cols[b]})`.
    pub fn det(rows: usize, cols: usize, row_idx: &[usize], col_idx: &[usize]) -> Self {
        assert_eq!(row_idx.len(), col_idx.len(), "square minor required");
        let k = row_idx.len();
        let mut out = Self::zero(rows, cols);
        let mut perm: Vec<usize> = (0..k).collect();
        permutations(&mut perm, 0, &mut |p, sign| {
            let mut e = vec![0u16; rows * cols];
            for (b, &a) in p.iter().enumerate() {
                e[(col_idx[b] - 1) * rows + (row_idx[a] - 1)] += 1;
            }
            out.add_term(e, Rational::from_integer(BigInt::from(sign)));
        });
        out
    }

    /// Substitutes `z^(j) ↦ M z^(j)` for every vector `j`.
    pub fn linear_substitute(&self, m: &[Vec<i64>]) -> Result<Self> {
        if m.len() != self.rows || m.iter().any(|r| r.len() != self.rows) {
            return Err(Error::Structure("substitution matrix has wrong shape".into()));
        }
        let images: Vec<SparsePoly> = (1..=self.cols)
            .flat_map(|j| (1..=self.rows).map(move |i| (i, j)))
            .map(|(i, j)| {
                let mut p = Self::zero(self.rows, self.cols);
                for k in 1..=self.rows {
                    p = p
                        .add(&Self::var(self.rows, self.cols, k, j).scale(&Rational::from_integer(
                            BigInt::from(m[i - 1][k - 1]),
                        )))
                        .expect("same arity");
                }
                p
            })
            .collect();
        let mut out = Self::zero(self.rows, self.cols);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(self.rows, self.cols, c.clone());
            for (idx, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[idx].pow(e as u32))?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Per-vector and per-component degrees when the polynomial is homogeneous in each.
    pub fn homogeneity(&self) -> Result<Degrees> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Ok(Degrees {
                vector_degrees: vec![0; self.cols],
                component_degrees: vec![0; self.rows],
            });
        };
        let degs = |m: &Monomial| {
            let v: Vec<u32> = (1..=self.cols)
                .map(|j| (1..=self.rows).map(|i| self.exponent(m, i, j) as u32).sum())
                .collect();
            let c: Vec<u32> = (1..=self.rows)
                .map(|i| (1..=self.cols).map(|j| self.exponent(m, i, j) as u32).sum())
                .collect();
            (v, c)
        };
        let (v0, c0) = degs(first);
        let offenders: Vec<String> = self
            .terms
            .keys()
            .filter(|m| degs(m) != (v0.clone(), c0.clone()))
            .map(|m| render_monomial(self.rows, self.cols, m))
            .collect();
        if !offenders.is_empty() {
            return Err(Error::NotHomogeneous(offenders.join(", ")));
        }
        Ok(Degrees {
            vector_degrees: v0,
            component_degrees: c0,
        })
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        let mut sign = 1;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    sign = -sign;
                }
            }
        }
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn render_monomial(rows: usize, _cols: usize, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(idx, &e)| {
            let (i, j) = (idx % rows + 1, idx / rows + 1);
            if e == 1 {
                format!("z[{i}][{j}]")
            } else {
                format!("z[{i}][{j}]^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in graded-lexicographic order, highest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&e| e as u32).sum();
            let db: u32 = b.0.iter().map(|&e| e as u32).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono = render_monomial(self.rows, self.cols, m);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag} * {mono}")?;
            }
        }
        Ok(())
    }
}

/// Degrees of a polynomial homogeneous in each vector and each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    /// Degree in each vector `z^(j)`.
    pub vector_degrees: Vec<u32>,
    /// Degree in each component index `i` summed over vectors.
    pub component_degrees: Vec<u32>,
}

/// Bargmann inner product: `⟨z^a, z^b⟩ = δ_ab ∏ a!`.
pub fn inner_product(p: &SparsePoly, q: &SparsePoly) -> Result<Rational> {
    p.check_arity(q)?;
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    let mut acc = Rational::zero();
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            let w: BigInt = m.iter().map(|&e| fact(e as u64)).product();
            acc += c * d * Rational::from_integer(w);
        }
    }
    Ok(acc)
}

/// A vector `norm_factor · poly` with `poly` integer-primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPoly {
    poly: SparsePoly,
    norm_factor: SqrtRational,
}

impl NormalizedPoly {
    /// Pulls the rational content of `poly` into the factor.
    pub fn new(poly: SparsePoly, factor: SqrtRational) -> Self {
        let c = poly.content();
        let poly = poly.scale(&c.recip());
        NormalizedPoly {
            poly,
            norm_factor: factor.scale(&c),
        }
    }

    /// The primitive polynomial.
    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    /// The surd prefactor.
    pub fn norm_factor(&self) -> &SqrtRational {
        &self.norm_factor
    }

    /// Exact `⟨self, other⟩` as a single surd.
    pub fn inner(&self, other: &NormalizedPoly) -> Result<SqrtRational> {
        let ip = inner_product(&self.poly, &other.poly)?;
        Ok(&(&self.norm_factor * &other.norm_factor) * &SqrtRational::from_rational(&ip))
    }

    /// Exact `⟨self, self⟩`.
    pub fn norm_squared(&self) -> Rational {
        let ip = inner_product(&self.poly, &self.poly).expect("same arity");
        self.norm_factor.square() * ip
    }
}

/// Squared norm `N(λμ; α)²` of the basis polynomial with labels `(r, s, m)`.
pub fn su3_norm_squared(lambda: u32, mu: u32, r: u32, s: u32, m: u32) -> Rational {
    let (l, u, r, s, m) = (lambda as u64, mu as u64, r as u64, s as u64, m as u64);
    let t2 = u + r - s;
    let num = fact(l + 1) * fact(t2 + 1) * fact(t2 - m);
    let den = fact(r)
        * fact(s)
        * fact(u - s)
        * fact(l - r)
        * fact(u + r + 1)
        * fact(l + u - s + 1)
        * fact(t2)
        * fact(m);
    Rational::new(num, den)
}

/// Unnormalized SU(3) basis polynomial on vectors `(a, b)` of a `3 × cols` space.
///
/// `Σ_k C(m,k)(μ−s)! r!/((μ−s−k)!(r−m+k)!) Δ₁^{r−m+k} Δ₂^{m−k} Δ₃^{λ−r} Δ₂₃^k Δ₁₃^{μ−s−k} Δ₁₂^s`
/// with `Δ_i = z_i^a` and `Δ_ij = z_i^a z_j^b − z_j^a z_i^b`.
#[allow(clippy::too_many_arguments)]
pub fn su3_basis_raw(
    cols: usize,
    a: usize,
    b: usize,
    lambda: u32,
    mu: u32,
    r: u32,
    s: u32,
    m: u32,
) -> Result<SparsePoly> {
    check_su3_labels(lambda, mu, r, s, m)?;
    let d = |i: usize| SparsePoly::var(3, cols, i, a);
    let dd = |i: usize, j: usize| SparsePoly::det(3, cols, &[i, j], &[a, b]);
    let (l, u, r, s, m) = (lambda as i64, mu as i64, r as i64, s as i64, m as i64);
    let common = d(3)
        .pow((l - r) as u32)
        .mul(&dd(1, 2).pow(s as u32))?;
    let mut out = SparsePoly::zero(3, cols);
    for k in (m - r).max(0)..=m.min(u - s) {
        let c = Rational::new(
            binomial(m, k) * fact((u - s) as u64) * fact(r as u64),
            fact((u - s - k) as u64) * fact((r - m + k) as u64),
        );
        let t = d(1)
            .pow((r - m + k) as u32)
            .mul(&d(2).pow((m - k) as u32))?
            .mul(&dd(2, 3).pow(k as u32))?
            .mul(&dd(1, 3).pow((u - s - k) as u32))?
            .mul(&common)?;
        out = out.add(&t.scale(&c))?;
    }
    Ok(out)
}

fn check_su3_labels(lambda: u32, mu: u32, r: u32, s: u32, m: u32) -> Result<()> {
    if r > lambda || s > mu || m > mu + r - s {
        return Err(Error::Domain(format!(
            "labels (λ,μ,r,s,m) = ({lambda},{mu},{r},{s},{m}) out of range"
        )));
    }
    Ok(())
}

/// Normalized SU(3) basis vector `N(−1)^s Σ_k …` on vectors `(a, b)` of a `3 × cols` space.
#[allow(clippy::too_many_arguments)]
pub fn su3_basis_vector_on(
    cols: usize,
    a: usize,
    b: usize,
    lambda: u32,
    mu: u32,
    r: u32,
    s: u32,
    m: u32,
) -> Result<NormalizedPoly> {
    let p = su3_basis_raw(cols, a, b, lambda, mu, r, s, m)?;
    let n = SqrtRational::normalize(&su3_norm_squared(lambda, mu, r, s, m), Sign::Plus)?
        .with_parity(s as i64);
    Ok(NormalizedPoly::new(p, n))
}

/// Normalized SU(3) basis vector in the six variables `z_i^1, z_i^2`.
pub fn su3_basis_vector(lambda: u32, mu: u32, r: u32, s: u32, m: u32) -> Result<NormalizedPoly> {
    su3_basis_vector_on(2, 1, 2, lambda, mu, r, s, m)
}

/// Degrees of a normalized vector.
pub fn homogeneity_degrees(v: &NormalizedPoly) -> Result<Degrees> {
    v.poly().homogeneity()
}

/// All `(r, s, m)` labels of the irrep `(λ, μ)`.
pub fn su3_labels(lambda: u32, mu: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for r in 0..=lambda {
        for s in 0..=mu {
            for m in 0..=(mu + r - s) {
                out.push((r, s, m));
            }
        }
    }
    out
}
