//! Laurent monomials and polynomials: exponents of any sign, p-th roots, and
//! the truncation map onto the ordinary polynomial ring.
//!
//! Negative exponents are confined to this type; Gröbner and quotient
//! computations only ever see [`Polynomial`]. The truncation map is the linear
//! map fixing every true monomial and killing every monomial with a negative
//! exponent.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{Monomial, PolyError, Polynomial};
use crate::scalar::ScalarField;

/// A monic Laurent monomial: an exponent vector over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMonomial {
    exponents: Vec<i64>,
}

impl LaurentMonomial {
    pub fn new(exponents: Vec<i64>) -> LaurentMonomial {
        LaurentMonomial { exponents }
    }

    pub fn one(nvars: usize) -> LaurentMonomial {
        LaurentMonomial {
            exponents: vec![0; nvars],
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        LaurentMonomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentMonomial {
        LaurentMonomial {
            exponents: self.exponents.iter().map(|&a| a * e as i64).collect(),
        }
    }

    /// The monic Laurent monomial whose p-th power is `self`, or `None` when
    /// some exponent is not divisible by `p` (the zero marker).
    pub fn p_th_root(&self, p: u64) -> Option<LaurentMonomial> {
        let p = p as i64;
        if self.exponents.iter().all(|&e| e.rem_euclid(p) == 0) {
            Some(LaurentMonomial {
                exponents: self.exponents.iter().map(|&e| e / p).collect(),
            })
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    /// Conversion into an ordinary monomial when no exponent is negative.
    pub fn to_monomial(&self) -> Option<Monomial> {
        if self.is_polynomial() {
            Some(Monomial::new(
                self.exponents.iter().map(|&e| e as u32).collect(),
            ))
        } else {
            None
        }
    }
}

impl From<&Monomial> for LaurentMonomial {
    fn from(m: &Monomial) -> Self {
        LaurentMonomial {
            exponents: m.exponents().iter().map(|&e| e as i64).collect(),
        }
    }
}

impl Ord for LaurentMonomial {
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

impl PartialOrd for LaurentMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.iter().all(|&e| e == 0) {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A sparse Laurent polynomial. Only a linear-space API is provided; all ring
/// multiplication happens at the monomial level.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial<F: ScalarField> {
    field: F,
    nvars: usize,
    terms: BTreeMap<LaurentMonomial, F::Elem>,
}

impl<F: ScalarField> LaurentPolynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        LaurentPolynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(field: F, nvars: usize, mono: LaurentMonomial, c: F::Elem) -> Self {
        assert_eq!(mono.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(mono, c);
        }
        LaurentPolynomial {
            field,
            nvars,
            terms,
        }
    }

    pub fn from_polynomial(p: &Polynomial<F>) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            terms.insert(LaurentMonomial::from(m), c.clone());
        }
        LaurentPolynomial {
            field: p.field().clone(),
            nvars: p.nvars(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars || self.field != other.field {
            return Err(PolyError::MixedAmbient);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone());
            match entry {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = self.field.add(e.get(), c);
                    if self.field.is_zero(&sum) {
                        e.remove();
                    } else {
                        e.insert(sum);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            let prod = self.field.mul(a, c);
            if !self.field.is_zero(&prod) {
                out.terms.insert(m.clone(), prod);
            }
        }
        out
    }

    /// Truncation onto the polynomial ring: terms with a negative exponent
    /// are dropped, everything else passes through unchanged.
    pub fn truncate(&self) -> Polynomial<F> {
        Polynomial::from_terms(
            self.field.clone(),
            self.nvars,
            self.terms
                .iter()
                .filter_map(|(m, c)| m.to_monomial().map(|mono| (mono, c.clone()))),
        )
    }
}
