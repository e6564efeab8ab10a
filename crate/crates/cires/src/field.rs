//! Exact arithmetic in prime fields `F_p` and extension fields `F_{p^k}`.
//!
//! A [`Field`] is a cheap reference-counted handle describing either `F_p` or
//! a quotient `F_p[t]/(modulus)` with a monic irreducible modulus. Elements
//! carry their parent field, so operations on elements of different fields are
//! reported as [`FieldError::MixedParents`] instead of being silently mixed.
//!
//! The extension modulus is found by seeded exhaustive search over monic
//! polynomials, never read from a table, so a given `(p, k, seed)` always
//! produces the same field.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::rng::SplitMix64;
use crate::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedParents,
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("field size {p}^{k} exceeds the 64-bit bound")]
    FieldTooLarge { p: u64, k: usize },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficientLength { got: usize, expected: usize },
}

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    p: u64,
    /// Low coefficients `c_0..c_{k-1}` of the monic modulus
    /// `t^k + c_{k-1} t^{k-1} + ... + c_0`; `None` for the prime field.
    modulus: Option<Vec<u64>>,
}

/// A prime field `F_p` or an extension `F_{p^k} = F_p[t]/(modulus)`.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl Field {
    /// The prime field `F_p`. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr { p, modulus: None })))
    }

    /// The extension field `F_{p^k}`, with the modulus found by exhaustive
    /// search over monic degree-`k` polynomials starting at `seed` (taken
    /// modulo `p^k`). `k = 1` returns the prime field itself.
    pub fn extension(p: u64, k: usize, seed: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::BadExtensionDegree);
        }
        let order = checked_power(p, k).ok_or(FieldError::FieldTooLarge { p, k })?;
        if k == 1 {
            return Field::prime(p);
        }
        for i in 0..order {
            let idx = (seed.wrapping_add(i)) % order;
            let low = digits_base_p(idx, p, k);
            let mut full = low.clone();
            full.push(1); // monic
            if is_irreducible(&full, p) {
                return Ok(Field(Arc::new(FieldRepr {
                    p,
                    modulus: Some(low),
                })));
            }
        }
        unreachable!("irreducible polynomials exist in every degree over F_p")
    }

    /// The characteristic `p`.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `k` over the prime field (1 for `F_p` itself).
    pub fn degree(&self) -> usize {
        match &self.0.modulus {
            None => 1,
            Some(m) => m.len(),
        }
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u64 {
        checked_power(self.0.p, self.degree()).expect("field order fits in u64 by construction")
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.modulus.is_none()
    }

    /// Low coefficients of the monic modulus, for extension fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The image of an integer in this field (as a constant).
    pub fn element(&self, n: i64) -> FieldElement {
        let p = self.0.p;
        let v = n.rem_euclid(p as i64) as u64;
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = v;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element with the given coefficient vector over `F_p` (low degree
    /// first); length must equal the extension degree.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::BadCoefficientLength {
                got: coeffs.len(),
                expected: self.degree(),
            });
        }
        let p = self.0.p as i64;
        Ok(FieldElement {
            field: self.clone(),
            coeffs: coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect(),
        })
    }

    /// The class of `t` for extensions; equals 1 in the prime field.
    pub fn generator(&self) -> FieldElement {
        if self.is_prime_field() {
            self.one()
        } else {
            let mut coeffs = vec![0; self.degree()];
            coeffs[1] = 1;
            FieldElement {
                field: self.clone(),
                coeffs,
            }
        }
    }

    /// Element number `idx` in the base-`p` digit enumeration; `idx < order`.
    pub fn element_by_index(&self, idx: u64) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: digits_base_p(idx % self.order(), self.0.p, self.degree()),
        }
    }

    /// Uniform random element drawn from the given generator.
    pub fn random_element(&self, rng: &mut SplitMix64) -> FieldElement {
        self.element_by_index(rng.next_below(self.order()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(low) => {
                let mut full = low.clone();
                full.push(1);
                write!(f, "F_{}[t]/({})", self.0.p, format_univariate(&full))
            }
        }
    }
}

/// An element of a [`Field`], kept in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    /// Coefficients over `F_p`, low degree first, length = extension degree,
    /// each entry in `[0, p)`.
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Value as an integer for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        if self.field.is_prime_field() {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check_parent(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedParents)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_parent(other)?;
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| addm(a, b, p))
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_parent(other)?;
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| subm(a, b, p))
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_parent(other)?;
        let p = self.field.characteristic();
        let coeffs = match self.field.modulus() {
            None => vec![mulm(self.coeffs[0], other.coeffs[0], p)],
            Some(modulus) => mul_mod(&self.coeffs, &other.coeffs, modulus, p),
        };
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_parent(other)?;
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    /// Multiplicative inverse via `a^(q-2)` where `q` is the field order.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn neg_value(&self) -> FieldElement {
        let p = self.field.characteristic();
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| subm(0, c, p)).collect(),
        }
    }

    /// `self^e` by square-and-multiply.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same field");
            }
            base = base.try_mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// The Frobenius endomorphism `a -> a^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic())
    }

    /// Reinterpret a prime-field element as a constant of `target` (which
    /// must have the same characteristic).
    pub fn lift_to(&self, target: &Field) -> Result<FieldElement, FieldError> {
        if !self.field.is_prime_field()
            || self.field.characteristic() != target.characteristic()
        {
            return Err(FieldError::MixedParents);
        }
        Ok(target.element(self.coeffs[0] as i64))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_value()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{}", format_univariate(&self.coeffs))
        }
    }
}

impl ScalarField for Field {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        Field::zero(self)
    }

    fn one(&self) -> FieldElement {
        Field::one(self)
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        self.element(n)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.try_add(b).expect("mixed fields in scalar arithmetic")
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.try_sub(b).expect("mixed fields in scalar arithmetic")
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg_value()
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.try_mul(b).expect("mixed fields in scalar arithmetic")
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        a.inv().ok()
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &FieldElement) -> bool {
        a.is_one()
    }

    fn characteristic(&self) -> u64 {
        Field::characteristic(self)
    }
}

// ---- Modular scalar helpers ----

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn checked_power(p: u64, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn digits_base_p(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for slot in out.iter_mut() {
        *slot = n % p;
        n /= p;
    }
    out
}

// ---- Fixed-length arithmetic modulo the extension modulus ----

/// Product of two length-`k` coefficient vectors reduced by the monic modulus
/// with low coefficients `modulus` (so `t^k = -(modulus)`).
fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = addm(prod[i + j], mulm(ai, bj, p), p);
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &mj) in modulus.iter().enumerate() {
            prod[i - k + j] = subm(prod[i - k + j], mulm(c, mj, p), p);
        }
    }
    prod.truncate(k);
    prod
}

// ---- Univariate polynomials over F_p (used only for modulus search) ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0;
    for &c in f.iter().rev() {
        acc = addm(mulm(acc, x, p), c, p);
    }
    acc
}

/// Remainder of `a` modulo nonzero `b`.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut bb = b.to_vec();
    trim(&mut bb);
    assert!(!bb.is_empty(), "polynomial division by zero");
    let db = bb.len() - 1;
    let lead_inv = pow_mod_u64(bb[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = mulm(r[dr], lead_inv, p);
        if factor != 0 {
            for (j, &bj) in bb.iter().enumerate() {
                r[dr - db + j] = subm(r[dr - db + j], mulm(factor, bj, p), p);
            }
        }
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Product of two univariate polynomials reduced modulo `f`.
fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = addm(prod[i + j], mulm(ai, bj, p), p);
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(g: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(g, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn pow_mod_u64(a: u64, mut e: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial `f` (full coefficient vector) over
/// `F_p`. Degrees up to 3 use the no-root criterion; higher degrees use the
/// gcd test against `x^{p^i} - x` for `i` up to half the degree.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    debug_assert_eq!(*f.last().unwrap(), 1);
    match k {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| poly_eval(f, x, p) != 0),
        _ => {
            // h = x^{p^i} mod f, advanced one Frobenius power per round.
            let mut h = poly_powmod(&[0, 1], p, f, p);
            for _ in 0..k / 2 {
                // gcd(f, h - x) detects factors of degree dividing i.
                let mut diff = h.clone();
                if diff.len() < 2 {
                    diff.resize(2, 0);
                }
                diff[1] = subm(diff[1], 1, p);
                trim(&mut diff);
                let g = poly_gcd(f, &diff, p);
                if g.len() > 1 {
                    return false;
                }
                h = poly_powmod(&h, p, f, p);
            }
            true
        }
    }
}

fn format_univariate(coeffs: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{c}*t"),
            (_, 1) => format!("t^{i}"),
            (_, _) => format!("{c}*t^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
