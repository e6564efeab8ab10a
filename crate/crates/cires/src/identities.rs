//! Machine verification of the residue-map identities.
//!
//! The central statement is the Parseval-Rayleigh identity: for a complete
//! intersection `(g_1, ..., g_m)` in characteristic `p` with residue map
//! `vol` and socle degree `s`,
//!
//! ```text
//! vol(w) = sum over monic monomials u of degree s of
//!          ((x1^{p-1}...xm^{p-1} u^p) . (g1^{p-1}...gm^{p-1} w)) * vol(u)^p
//! ```
//!
//! where `.` is the contraction pairing. Both sides are linear in `w`, so
//! checking every monic monomial `w` of degree `s` checks the identity on all
//! of the degree-`s` piece. The companion checks cover the ideal membership
//! of `g1^{p-1}...gm^{p-1} z0 - x1^{p-1}...xm^{p-1} z0^p` modulo the p-th
//! powers, the determinant identity `det(N^(p)) = (det N)^p`, and the
//! vanishing statement for functionals that kill an ideal slice.

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::poly::{
    contraction, count_monomials, monomial_by_rank, monomials_of_degree, Monomial, PolyError,
    Polynomial,
};
use crate::quotient::{CompleteIntersection, QuotientError, QuotientStructure};
use crate::report::{VerificationReport, Witness};
use crate::residue::{PolyMatrix, ResidueMap};
use crate::rng::SplitMix64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// `sum_u ((x^{(p-1)*1} u^p) . rhs) * weight(u)^p` over all monic monomials
/// `u` of the weight table's degree. This is the common kernel of the
/// Parseval right-hand side and the vanishing sums.
fn frobenius_weighted_sum(
    weights: &[(Monomial, FieldElement)],
    rhs: &Polynomial<Field>,
) -> Result<FieldElement, PolyError> {
    let field = rhs.field().clone();
    let nvars = rhs.nvars();
    let p = field.characteristic();
    let corner = Monomial::new(vec![(p - 1) as u32; nvars]);
    let mut acc = field.zero();
    for (u, weight) in weights {
        let target = corner.mul(&u.pow(p as u32));
        let probe = Polynomial::term(field.clone(), nvars, target, field.one());
        let c = contraction(&probe, rhs)?;
        if c.is_zero() {
            continue;
        }
        let term = c.try_mul(&weight.frobenius()).expect("same field");
        acc = acc.try_add(&term).expect("same field");
    }
    Ok(acc)
}

fn vol_weights(rm: &ResidueMap) -> Result<Vec<(Monomial, FieldElement)>, PolyError> {
    let ci = rm.ci();
    monomials_of_degree(ci.nvars(), ci.socle_degree())
        .into_iter()
        .map(|u| {
            let v = rm.vol_monomial(&u)?;
            Ok((u, v))
        })
        .collect()
}

/// The right-hand side of the Parseval-Rayleigh identity for one `w`. The
/// generator power product is cached inside the residue map.
pub fn parseval_rhs(
    rm: &ResidueMap,
    w: &Polynomial<Field>,
) -> Result<FieldElement, IdentityError> {
    match w.homogeneous_degree()? {
        None => {}
        Some(d) if d == rm.ci().socle_degree() => {}
        Some(_) => return Err(PolyError::DegreeMismatch.into()),
    }
    let rhs = rm.generator_power_product().try_mul(w)?;
    let weights = vol_weights(rm)?;
    Ok(frobenius_weighted_sum(&weights, &rhs)?)
}

/// Checks `vol(w) = parseval_rhs(w)` for every monic monomial `w` of the
/// socle degree; linearity of both sides makes this a complete check on the
/// whole graded piece.
pub fn verify_parseval(rm: &ResidueMap) -> VerificationReport {
    let ci = rm.ci();
    let field = ci.field().clone();
    let weights = vol_weights(rm).expect("socle monomials are well formed");
    let product = rm.generator_power_product();
    let mut witnesses = Vec::new();
    let all = monomials_of_degree(ci.nvars(), ci.socle_degree());
    for w in &all {
        let w_poly = Polynomial::term(field.clone(), ci.nvars(), w.clone(), field.one());
        let lhs = rm.vol(&w_poly).expect("degree checked");
        let rhs_poly = product.try_mul(&w_poly).expect("same ambient");
        let rhs = frobenius_weighted_sum(&weights, &rhs_poly).expect("degrees agree");
        if lhs != rhs {
            witnesses.push(Witness {
                item: format!("w = {w}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    let instance = ci.describe();
    if witnesses.is_empty() {
        VerificationReport::pass("parseval", instance, all.len() as u64)
    } else {
        VerificationReport::fail("parseval", instance, all.len() as u64, witnesses)
    }
}

/// Checks that `g1^{p-1}...gm^{p-1} z0 - x1^{p-1}...xm^{p-1} z0^p` lies in
/// the ideal generated by the p-th powers of the generators. The p-th powers
/// are themselves a regular sequence; their quotient is validated first and
/// the difference is then reduced to normal form.
pub fn verify_membership(rm: &ResidueMap) -> VerificationReport {
    let ci = rm.ci();
    let field = ci.field().clone();
    let p = field.characteristic();
    let instance = ci.describe();

    let power_gens: Vec<Polynomial<Field>> = ci
        .generators()
        .iter()
        .map(|g| g.pow(p as u32))
        .collect();
    let power_ci = CompleteIntersection::new(field.clone(), ci.nvars(), power_gens)
        .expect("powers of homogeneous generators are homogeneous");
    let power_quotient = QuotientStructure::new(power_ci);
    let hilbert = power_quotient.hilbert_check();
    if !hilbert.passed() {
        let mut witnesses = hilbert.witnesses.clone();
        witnesses.insert(
            0,
            Witness {
                item: "p-th powers fail the Hilbert check".to_string(),
                lhs: "FAIL".to_string(),
                rhs: "PASS".to_string(),
            },
        );
        return VerificationReport::fail("membership", instance, 2, witnesses);
    }

    let z0 = rm.socle_representative();
    let corner = Monomial::new(vec![(p - 1) as u32; ci.nvars()]);
    let corner_poly = Polynomial::term(field.clone(), ci.nvars(), corner, field.one());
    let left = rm
        .generator_power_product()
        .try_mul(z0)
        .expect("same ambient");
    let right = corner_poly.try_mul(&z0.pow(p as u32)).expect("same ambient");
    let difference = left.try_sub(&right).expect("same ambient");
    let remainder = power_quotient.normal_form(&difference);

    if remainder.is_zero() {
        VerificationReport::pass("membership", instance, 2)
    } else {
        VerificationReport::fail(
            "membership",
            instance,
            2,
            vec![Witness {
                item: "normal form of the membership expression".to_string(),
                lhs: remainder.to_string(),
                rhs: "0".to_string(),
            }],
        )
    }
}

/// Checks the determinant identity `det(N^(p)) = (det N)^p` for a polynomial
/// matrix in characteristic `p`.
pub fn frobenius_det_check(matrix: &PolyMatrix<Field>) -> VerificationReport {
    let field = matrix.entry(0, 0).field().clone();
    let p = field.characteristic() as u32;
    let lhs = matrix.entrywise_pow(p).determinant();
    let rhs = matrix.determinant().pow(p);
    let instance = format!("{}x{} matrix over {}", matrix.size(), matrix.size(), field);
    if lhs == rhs {
        VerificationReport::pass("frobenius_det", instance, 1)
    } else {
        VerificationReport::fail(
            "frobenius_det",
            instance,
            1,
            vec![Witness {
                item: "det(N^(p)) vs (det N)^p".to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }],
        )
    }
}

/// A linear functional on the degree-`d` graded piece, given by its values on
/// the monic monomials of that degree (in descending order).
#[derive(Debug, Clone)]
pub struct LinearFunctional {
    field: Field,
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    values: Vec<FieldElement>,
}

impl LinearFunctional {
    pub fn new(
        field: Field,
        nvars: usize,
        degree: u32,
        values: Vec<FieldElement>,
    ) -> Result<Self, IdentityError> {
        let monomials = monomials_of_degree(nvars, degree);
        if values.len() != monomials.len() {
            return Err(IdentityError::PreconditionViolated(format!(
                "expected {} values, got {}",
                monomials.len(),
                values.len()
            )));
        }
        Ok(LinearFunctional {
            field,
            nvars,
            degree,
            monomials,
            values,
        })
    }

    pub fn zero(field: Field, nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let values = vec![field.zero(); monomials.len()];
        LinearFunctional {
            field,
            nvars,
            degree,
            monomials,
            values,
        }
    }

    /// The functional dual to one monomial: 1 there, 0 elsewhere.
    pub fn dual_of(field: Field, mono: &Monomial) -> Self {
        let nvars = mono.nvars();
        let degree = mono.degree();
        let monomials = monomials_of_degree(nvars, degree);
        let values = monomials
            .iter()
            .map(|m| {
                if m == mono {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        LinearFunctional {
            field,
            nvars,
            degree,
            monomials,
            values,
        }
    }

    /// The residue map restricted to the socle degree, tabulated on monomials.
    pub fn from_vol(rm: &ResidueMap) -> Self {
        let ci = rm.ci();
        let weights = vol_weights(rm).expect("socle monomials are well formed");
        LinearFunctional {
            field: ci.field().clone(),
            nvars: ci.nvars(),
            degree: ci.socle_degree(),
            monomials: weights.iter().map(|(m, _)| m.clone()).collect(),
            values: weights.into_iter().map(|(_, v)| v).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn apply(&self, f: &Polynomial<Field>) -> Result<FieldElement, IdentityError> {
        match f.homogeneous_degree()? {
            None => {}
            Some(d) if d == self.degree => {}
            Some(_) => return Err(PolyError::DegreeMismatch.into()),
        }
        let mut acc = self.field.zero();
        for (m, v) in self.monomials.iter().zip(&self.values) {
            let c = f.coeff(m);
            if !c.is_zero() {
                acc = acc
                    .try_add(&c.try_mul(v).expect("same field"))
                    .expect("same field");
            }
        }
        Ok(acc)
    }

    /// Does this functional vanish on every degree-`d` multiple of `g`?
    pub fn kills_multiples_of(&self, g: &Polynomial<Field>) -> Result<bool, IdentityError> {
        let d = g
            .homogeneous_degree()?
            .ok_or_else(|| IdentityError::PreconditionViolated("g must be nonzero".into()))?;
        if d > self.degree {
            return Ok(true);
        }
        for h in monomials_of_degree(self.nvars, self.degree - d) {
            if !self.apply(&g.mul_monomial(&h))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn weights(&self) -> Vec<(Monomial, FieldElement)> {
        self.monomials
            .iter()
            .cloned()
            .zip(self.values.iter().cloned())
            .collect()
    }
}

/// Candidate spaces up to this size are enumerated outright; sampling only
/// replaces enumeration beyond it (the statement is per-`v`, so a sample
/// loses no soundness on the instances it does check).
const EXHAUSTIVE_VANISH_LIMIT: u128 = 10_000;

/// Checks the vanishing statement: if `phi` kills the degree-`s` slice of the
/// ideal `(g)`, then for every monomial `v` of degree `m(p-1) + sp - dp` the
/// Frobenius-weighted contraction sum against `g^p v` is zero. Candidates are
/// enumerated exhaustively up to [`EXHAUSTIVE_VANISH_LIMIT`]; beyond that,
/// `samples` seeded draws are checked.
pub fn verify_vanish(
    g: &Polynomial<Field>,
    s: u32,
    phi: &LinearFunctional,
    samples: u32,
    seed: u64,
) -> Result<VerificationReport, IdentityError> {
    let field = g.field().clone();
    let nvars = g.nvars();
    let p = field.characteristic();
    let d = g
        .homogeneous_degree()?
        .ok_or_else(|| IdentityError::PreconditionViolated("g must be nonzero".into()))?;
    if d > s {
        return Err(IdentityError::PreconditionViolated(format!(
            "deg g = {d} exceeds s = {s}"
        )));
    }
    if phi.degree() != s {
        return Err(IdentityError::PreconditionViolated(format!(
            "functional lives in degree {}, expected {s}",
            phi.degree()
        )));
    }
    if !phi.kills_multiples_of(g)? {
        return Err(IdentityError::PreconditionViolated(
            "the functional does not vanish on the ideal slice (g)_s".into(),
        ));
    }

    let v_degree = nvars as u32 * (p as u32 - 1) + (s - d) * p as u32;
    let total = count_monomials(nvars, v_degree);
    let vs: Vec<Monomial> = if total <= EXHAUSTIVE_VANISH_LIMIT {
        monomials_of_degree(nvars, v_degree)
    } else {
        let mut rng = SplitMix64::new(seed);
        (0..samples)
            .map(|_| {
                let rank = rng.next_u64() as u128 % total;
                monomial_by_rank(nvars, v_degree, rank)
            })
            .collect()
    };

    let g_power = g.pow(p as u32);
    let weights = phi.weights();
    let mut witnesses = Vec::new();
    for v in &vs {
        let rhs = g_power.mul_monomial(v);
        let sum = frobenius_weighted_sum(&weights, &rhs)?;
        if !sum.is_zero() {
            witnesses.push(Witness {
                item: format!("v = {v}"),
                lhs: sum.to_string(),
                rhs: "0".to_string(),
            });
        }
    }
    let instance = format!("g = {g} over {field}, s = {s}");
    Ok(if witnesses.is_empty() {
        VerificationReport::pass("vanish", instance, vs.len() as u64)
    } else {
        VerificationReport::fail("vanish", instance, vs.len() as u64, witnesses)
    })
}
