//! Coefficient-domain abstraction shared by polynomials and linear algebra.
//!
//! Concrete finite fields ([`crate::field::Field`]) and the rational-function
//! field used by the generic reduction both implement [`ScalarField`], so the
//! polynomial arithmetic, Macaulay slices and Gaussian elimination are written
//! once and reused over either scalar domain.

use std::fmt;

/// A field of scalars, presented ring-object style: the field value carries
/// the modulus/ambient data and all arithmetic goes through its methods.
pub trait ScalarField: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> k`.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    /// `a / b`, panicking on a zero divisor. Callers that cannot guarantee a
    /// nonzero divisor should use [`ScalarField::inv`] directly.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero scalar");
        self.mul(a, &inv)
    }
}
