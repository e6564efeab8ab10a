//! The rational-function field `K = F_p(a_1, ..., a_n)` in the auxiliary
//! coefficient variables.
//!
//! Fractions are never reduced by a multivariate gcd: two fractions are equal
//! exactly when cross-multiplication says so. That is exact, and cheap at the
//! sizes the feasibility cap allows. The only normalizations performed are
//! canonicalizing zero to `0/1` and keeping denominators monic.

use std::fmt;

use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;
use crate::scalar::ScalarField;

/// A quotient of two auxiliary-variable polynomials with nonzero denominator.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial<Field>,
    den: Polynomial<Field>,
}

impl RationalFunction {
    pub fn new(num: Polynomial<Field>, den: Polynomial<Field>) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let one = Polynomial::one(den.field().clone(), den.nvars());
            return RationalFunction { num, den: one };
        }
        let (_, lc) = den.leading_term().expect("nonzero");
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.inv().expect("leading coefficient is nonzero");
            RationalFunction {
                num: num.scalar_mul(&inv),
                den: den.scalar_mul(&inv),
            }
        }
    }

    pub fn from_poly(num: Polynomial<Field>) -> RationalFunction {
        let one = Polynomial::one(num.field().clone(), num.nvars());
        RationalFunction::new(num, one)
    }

    pub fn numerator(&self) -> &Polynomial<Field> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<Field> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg_value(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inv(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            None
        } else {
            Some(RationalFunction::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(Polynomial::one(
            self.num.field().clone(),
            self.num.nvars(),
        ));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to the variable at `var`, by the
    /// quotient rule. Exponents are reduced modulo the characteristic, so
    /// p-th powers differentiate to zero.
    pub fn derivative(&self, var: usize) -> RationalFunction {
        let dn = poly_derivative(&self.num, var);
        let dd = poly_derivative(&self.den, var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RationalFunction::new(num, &self.den * &self.den)
    }

    /// Evaluation at a point of a concrete field with the same
    /// characteristic; `None` when the denominator vanishes there.
    pub fn eval(&self, target: &Field, point: &[FieldElement]) -> Option<FieldElement> {
        let den = self.den.eval_lifted(target, point);
        if den.is_zero() {
            return None;
        }
        let num = self.num.eval_lifted(target, point);
        Some(num.try_div(&den).expect("denominator is nonzero"))
    }
}

/// Cross-multiplication equality: `a/b = c/d` iff `a*d = c*b`.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.num_terms() == 1 && self.den.leading_term().is_some_and(|(m, c)| {
            m.is_one() && c.is_one()
        }) {
            write!(f, "{}", self.num.display_with("a"))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.display_with("a"),
                self.den.display_with("a")
            )
        }
    }
}

/// Termwise partial derivative of an auxiliary-variable polynomial, with the
/// exponent reduced into the coefficient field.
pub fn poly_derivative(f: &Polynomial<Field>, var: usize) -> Polynomial<Field> {
    let field = f.field().clone();
    let nvars = f.nvars();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents()[var];
        if e == 0 {
            continue;
        }
        let factor = field.element(e as i64);
        if factor.is_zero() {
            continue;
        }
        let mut exps = m.exponents().to_vec();
        exps[var] -= 1;
        terms.push((
            crate::poly::Monomial::new(exps),
            c.try_mul(&factor).expect("same field"),
        ));
    }
    Polynomial::from_terms(field, nvars, terms)
}

/// The field `K = F_p(a_1, ..., a_nvars)` as a scalar domain.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionField {
    base: Field,
    nvars: usize,
}

impl FunctionField {
    pub fn new(base: Field, nvars: usize) -> FunctionField {
        assert!(base.is_prime_field(), "auxiliary coefficients live over F_p");
        FunctionField { base, nvars }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The auxiliary variable `a_{i+1}` as a rational function.
    pub fn var(&self, i: usize) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::variable(self.base.clone(), self.nvars, i))
    }

    pub fn constant(&self, c: FieldElement) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(self.base.clone(), self.nvars, c))
    }
}

impl ScalarField for FunctionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero(self.base.clone(), self.nvars))
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one(self.base.clone(), self.nvars))
    }

    fn from_i64(&self, n: i64) -> RationalFunction {
        self.constant(self.base.element(n))
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.sub(b)
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }

    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        a.inv()
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &RationalFunction) -> bool {
        a.num == a.den
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}
