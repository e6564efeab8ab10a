//! Sparse multivariate polynomials graded by total degree, together with the
//! contraction pairing that makes monic monomials orthonormal.
//!
//! Monomials are ordered by graded reverse lexicographic order with
//! `x1 > x2 > ... > xm`; every iteration over terms follows that order, so all
//! derived computations are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live in different polynomial rings")]
    MixedAmbient,
    #[error("operands have different degrees")]
    DegreeMismatch,
    #[error("inhomogeneous polynomial where a homogeneous one is required")]
    Inhomogeneous,
}

/// Total-degree cap for all monomials; overridable through the
/// `CIRES_MAX_DEGREE` environment variable (read once per process).
pub fn max_total_degree() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("CIRES_MAX_DEGREE")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(512)
    })
}

/// A monic monomial: an exponent vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial, enforcing the total-degree cap; exceeding it
    /// panics rather than overflowing silently.
    pub fn new(exponents: Vec<u32>) -> Monomial {
        let deg: u64 = exponents.iter().map(|&e| e as u64).sum();
        assert!(
            deg <= max_total_degree() as u64,
            "total degree {deg} exceeds the cap {}; set CIRES_MAX_DEGREE to raise it",
            max_total_degree()
        );
        Monomial { exponents }
    }

    /// The constant monomial 1.
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn variable(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial::new(self.exponents.iter().map(|&a| a * e).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exponents: other
                    .exponents
                    .iter()
                    .zip(&self.exponents)
                    .map(|(&b, &a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x1 > x2 > ... > xm`: compare
    /// total degree first; on ties the monomial whose rightmost differing
    /// exponent is smaller is the larger one.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.nvars().cmp(&other.nvars()) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.exponents.len()).rev() {
            if self.exponents[i] != other.exponents[i] {
                return other.exponents[i].cmp(&self.exponents[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Rendering with a chosen variable prefix (`x` gives `x1^2*x3`).
    pub fn display_with(&self, prefix: &str) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(format!("{prefix}{}", i + 1));
            } else {
                parts.push(format!("{prefix}{}^{}", i + 1, e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// All monic monomials of the given degree, leading (largest) first.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    assert!(nvars >= 1);
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, degree);
    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            fill(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Number of monic monomials of the given degree, `C(d+m-1, m-1)`.
pub fn count_monomials(nvars: usize, degree: u32) -> u128 {
    binomial(degree as u128 + nvars as u128 - 1, nvars as u128 - 1)
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The monomial of the given degree at position `rank` in the descending
/// order used by [`monomials_of_degree`].
pub fn monomial_by_rank(nvars: usize, degree: u32, rank: u128) -> Monomial {
    let all = monomials_of_degree(nvars, degree);
    all[(rank % all.len() as u128) as usize].clone()
}

/// A sparse polynomial over a [`ScalarField`], with no stored zero
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<F: ScalarField> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: ScalarField> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let one = field.one();
        Self::term(field, nvars, Monomial::one(nvars), one)
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, nvars, Monomial::one(nvars), c)
    }

    /// The variable `x_{i+1}`.
    pub fn variable(field: F, nvars: usize, i: usize) -> Self {
        let one = field.one();
        Self::term(field, nvars, Monomial::variable(nvars, i), one)
    }

    /// Single-term polynomial `c * mono`.
    pub fn term(field: F, nvars: usize, mono: Monomial, c: F::Elem) -> Self {
        assert_eq!(mono.nvars(), nvars, "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(mono, c);
        }
        Polynomial {
            field,
            nvars,
            terms,
        }
    }

    pub fn from_terms(
        field: F,
        nvars: usize,
        items: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut poly = Self::zero(field, nvars);
        for (mono, c) in items {
            poly.add_term(mono, c);
        }
        poly
    }

    fn add_term(&mut self, mono: Monomial, c: F::Elem) {
        assert_eq!(mono.nvars(), self.nvars, "monomial arity mismatch");
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &c);
                if self.field.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> F::Elem {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.last_key_value()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term has the same total degree; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, PolyError> {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return Ok(None),
            Some(m) => m.degree(),
        };
        if iter.all(|m| m.degree() == first) {
            Ok(Some(first))
        } else {
            Err(PolyError::Inhomogeneous)
        }
    }

    /// The degree-`d` graded piece.
    pub fn graded_component(&self, d: u32) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    fn check_ambient(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars && self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::MixedAmbient)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ambient(other)?;
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg_value(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Multiply by a monic monomial (shift all exponents).
    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.mul(mono), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.nvars);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ambient");
        }
        acc
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, F::Elem)> {
        self.terms.pop_last()
    }
}

impl<F: ScalarField> std::ops::Add<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: ScalarField> std::ops::Sub<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: ScalarField> std::ops::Mul<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: ScalarField> Polynomial<F> {
    /// Rendering with a chosen variable prefix, leading term first.
    pub fn display_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            if m.is_one() {
                parts.push(format!("{c}"));
            } else if self.field.is_one(c) {
                parts.push(m.display_with(prefix));
            } else {
                parts.push(format!("{c}*{}", m.display_with(prefix)));
            }
        }
        parts.join(" + ")
    }
}

impl<F: ScalarField> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// The contraction pairing: the bilinear form on a graded piece for which the
/// monic monomials form an orthonormal basis. Both arguments must be
/// homogeneous of the same degree (zero is allowed on either side).
pub fn contraction<F: ScalarField>(
    u: &Polynomial<F>,
    w: &Polynomial<F>,
) -> Result<F::Elem, PolyError> {
    if u.nvars() != w.nvars() || u.field() != w.field() {
        return Err(PolyError::MixedAmbient);
    }
    let du = u.homogeneous_degree()?;
    let dw = w.homogeneous_degree()?;
    if let (Some(a), Some(b)) = (du, dw) {
        if a != b {
            return Err(PolyError::DegreeMismatch);
        }
    }
    let field = u.field();
    let mut acc = field.zero();
    for (m, cu) in u.terms() {
        if let Some(cw) = w.terms.get(m) {
            acc = field.add(&acc, &field.mul(cu, cw));
        }
    }
    Ok(acc)
}

/// Evaluation with coefficient lifting: the polynomial has prime-field
/// coefficients, the point lives in an extension of the same characteristic.
impl Polynomial<Field> {
    pub fn eval_lifted(&self, target: &Field, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = c
                .lift_to(target)
                .expect("coefficients must lift to the target field");
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term
                        .try_mul(&point[i].pow(e as u64))
                        .expect("same field");
                }
            }
            acc = acc.try_add(&term).expect("same field");
        }
        acc
    }
}
