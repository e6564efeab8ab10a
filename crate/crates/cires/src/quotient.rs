//! Artinian quotients of the polynomial ring: Buchberger's algorithm, normal
//! forms, standard monomial bases, the Hilbert-function regularity check, and
//! the Macaulay-matrix backend.
//!
//! Two independent routes to the quotient are kept on purpose. The Gröbner
//! route reduces modulo a reduced basis; the Macaulay route row-reduces the
//! degree-`d` piece of the ideal as a plain linear subspace. Their agreement
//! is asserted by the test suite on every instance it touches.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{Matrix, Rref};
use crate::poly::{monomials_of_degree, Monomial, PolyError, Polynomial};
use crate::report::{VerificationReport, Witness};
use crate::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("expected {expected} generators (one per variable), got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generator {index} is not homogeneous")]
    InhomogeneousGenerator { index: usize },
    #[error("generator {index} has a constant term")]
    ConstantGenerator { index: usize },
    #[error("generators live in different rings")]
    MixedAmbient,
    #[error("degree {degree} is outside the stored range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
}

/// A homogeneous complete-intersection candidate: one generator per variable.
/// Generator order is preserved verbatim; it is part of the input.
///
/// Whether the generators actually form a regular sequence is certified
/// separately by [`QuotientStructure::hilbert_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompleteIntersection {
    field: Field,
    nvars: usize,
    generators: Vec<Polynomial<Field>>,
    degrees: Vec<u32>,
    socle_degree: u32,
}

impl CompleteIntersection {
    pub fn new(
        field: Field,
        nvars: usize,
        generators: Vec<Polynomial<Field>>,
    ) -> Result<Self, QuotientError> {
        if generators.len() != nvars {
            return Err(QuotientError::WrongGeneratorCount {
                expected: nvars,
                got: generators.len(),
            });
        }
        let mut degrees = Vec::with_capacity(nvars);
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != nvars || g.field() != &field {
                return Err(QuotientError::MixedAmbient);
            }
            let d = match g.homogeneous_degree() {
                Err(_) => return Err(QuotientError::InhomogeneousGenerator { index: i }),
                Ok(None) => return Err(QuotientError::ZeroGenerator { index: i }),
                Ok(Some(d)) => d,
            };
            if d == 0 {
                return Err(QuotientError::ConstantGenerator { index: i });
            }
            degrees.push(d);
        }
        let socle_degree = degrees.iter().sum::<u32>() - nvars as u32;
        Ok(CompleteIntersection {
            field,
            nvars,
            generators,
            degrees,
            socle_degree,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<Field>] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Top degree of the quotient: sum of generator degrees minus the number
    /// of variables.
    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    /// One-line description used in reports.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let vars: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        format!(
            "{}[{}] / ({})",
            self.field,
            vars.join(","),
            gens.join(", ")
        )
    }
}

/// Coefficients of the product of truncated geometric series
/// `prod_i (1 + t + ... + t^(d_i - 1))`: the Hilbert function a regular
/// sequence with those degrees must produce.
pub fn expected_hilbert_function(degrees: &[u32]) -> Vec<u64> {
    let mut coeffs = vec![1u64];
    for &d in degrees {
        let mut next = vec![0u64; coeffs.len() + d as usize - 1];
        for (i, &c) in coeffs.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

// ---- Division and Buchberger ----

/// Remainder of `f` on division by `basis`: no term of the result is
/// divisible by any leading monomial of the basis. Divisors are tried in
/// order, so the result is deterministic for a fixed basis.
pub fn reduce_modulo<F: ScalarField>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> Polynomial<F> {
    let field = f.field().clone();
    let nvars = f.nvars();
    let mut work = f.clone();
    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.pop_leading() {
        for g in basis {
            let Some((glm, glc)) = g.leading_term() else {
                continue;
            };
            if let Some(q) = glm.divide_into(&lm) {
                let factor = field.div(&lc, glc);
                // work already lost its leading term; subtract the tail.
                let mut scaled = g.mul_monomial(&q).scalar_mul(&factor);
                let _ = scaled.pop_leading();
                work = work.try_sub(&scaled).expect("same ambient");
                continue 'outer;
            }
        }
        remainder.push((lm, lc));
    }
    Polynomial::from_terms(field, nvars, remainder)
}

fn s_polynomial<F: ScalarField>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.field().clone();
    let (flm, flc) = f.leading_term().expect("nonzero");
    let (glm, glc) = g.leading_term().expect("nonzero");
    let lcm = flm.lcm(glm);
    let qf = flm.divide_into(&lcm).unwrap();
    let qg = glm.divide_into(&lcm).unwrap();
    let finv = field.inv(flc).expect("leading coefficient is nonzero");
    let ginv = field.inv(glc).expect("leading coefficient is nonzero");
    let left = f.mul_monomial(&qf).scalar_mul(&finv);
    let right = g.mul_monomial(&qg).scalar_mul(&ginv);
    left.try_sub(&right).expect("same ambient")
}

fn make_monic<F: ScalarField>(f: &Polynomial<F>) -> Polynomial<F> {
    let field = f.field().clone();
    let (_, lc) = f.leading_term().expect("nonzero");
    let inv = field.inv(lc).expect("leading coefficient is nonzero");
    f.scalar_mul(&inv)
}

/// Buchberger's algorithm with the normal selection strategy (smallest pair
/// lcm first) followed by full inter-reduction. The result is the reduced
/// Gröbner basis in graded reverse lexicographic order, sorted by leading
/// monomial; re-running on its own output returns it unchanged.
pub fn buchberger<F: ScalarField>(generators: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut basis: Vec<Polynomial<F>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(make_monic)
        .collect();
    if basis.is_empty() {
        return basis;
    }

    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let queue_pairs = |pairs: &mut BTreeSet<(Monomial, usize, usize)>,
                           basis: &[Polynomial<F>],
                           j: usize| {
        let (jlm, _) = basis[j].leading_term().expect("nonzero");
        for (i, b) in basis.iter().enumerate().take(j) {
            let (ilm, _) = b.leading_term().expect("nonzero");
            // Product criterion: coprime leading monomials reduce to zero.
            let lcm = ilm.lcm(jlm);
            if lcm.degree() == ilm.degree() + jlm.degree() {
                continue;
            }
            pairs.insert((lcm, i, j));
        }
    };
    for j in 0..basis.len() {
        queue_pairs(&mut pairs, &basis, j);
    }

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, i, j) = entry;
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce_modulo(&s, &basis);
        if !r.is_zero() {
            basis.push(make_monic(&r));
            queue_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    inter_reduce(basis)
}

/// Reduce a Gröbner basis: drop elements whose leading monomial is divisible
/// by another's, tail-reduce every survivor, sort by leading monomial.
fn inter_reduce<F: ScalarField>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    basis.sort_by(|a, b| {
        a.leading_term()
            .expect("nonzero")
            .0
            .cmp(b.leading_term().expect("nonzero").0)
    });
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in basis {
        let (glm, _) = g.leading_term().expect("nonzero");
        if !minimal
            .iter()
            .any(|h| h.leading_term().expect("nonzero").0.divides(glm))
        {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    let reduced: Vec<Polynomial<F>> = snapshot
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let others: Vec<Polynomial<F>> = snapshot
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            make_monic(&reduce_modulo(g, &others))
        })
        .collect();
    reduced
}

// ---- Quotient structure ----

/// The quotient by the ideal of a [`CompleteIntersection`]: reduced Gröbner
/// basis plus per-degree standard monomial bases for degrees `0..=s+1`.
#[derive(Debug, Clone)]
pub struct QuotientStructure {
    ci: CompleteIntersection,
    groebner: Vec<Polynomial<Field>>,
    /// Standard monomials per degree, index 0..=s+1, each in descending order.
    std_monomials: Vec<Vec<Monomial>>,
}

impl QuotientStructure {
    pub fn new(ci: CompleteIntersection) -> Self {
        let groebner = buchberger(ci.generators());
        let leading: Vec<Monomial> = groebner
            .iter()
            .map(|g| g.leading_term().expect("nonzero").0.clone())
            .collect();
        let s = ci.socle_degree();
        let std_monomials = (0..=s + 1)
            .map(|d| {
                monomials_of_degree(ci.nvars(), d)
                    .into_iter()
                    .filter(|m| !leading.iter().any(|l| l.divides(m)))
                    .collect()
            })
            .collect();
        QuotientStructure {
            ci,
            groebner,
            std_monomials,
        }
    }

    pub fn ci(&self) -> &CompleteIntersection {
        &self.ci
    }

    pub fn groebner_basis(&self) -> &[Polynomial<Field>] {
        &self.groebner
    }

    /// The unique representative supported on standard monomials.
    pub fn normal_form(&self, f: &Polynomial<Field>) -> Polynomial<Field> {
        reduce_modulo(f, &self.groebner)
    }

    /// Standard monomials of the given degree, for `0 <= d <= s+1`.
    pub fn standard_monomials(&self, d: u32) -> Result<&[Monomial], QuotientError> {
        self.std_monomials
            .get(d as usize)
            .map(Vec::as_slice)
            .ok_or(QuotientError::DegreeOutOfRange {
                degree: d,
                max: self.ci.socle_degree() + 1,
            })
    }

    pub fn dimension(&self, d: u32) -> Result<usize, QuotientError> {
        self.standard_monomials(d).map(<[Monomial]>::len)
    }

    /// Certifies the regular-sequence hypothesis: the dimension of every
    /// graded piece up to degree `s+1` must match the product-formula Hilbert
    /// function (which also forces the quotient to be Artinian with top
    /// degree `s`). Failure is reported, not raised.
    pub fn hilbert_check(&self) -> VerificationReport {
        let expected = expected_hilbert_function(self.ci.degrees());
        let s = self.ci.socle_degree();
        let mut witnesses = Vec::new();
        for d in 0..=s + 1 {
            let want = expected.get(d as usize).copied().unwrap_or(0);
            let got = self.std_monomials[d as usize].len() as u64;
            if want != got {
                witnesses.push(Witness {
                    item: format!("dimension in degree {d}"),
                    lhs: got.to_string(),
                    rhs: want.to_string(),
                });
                break;
            }
        }
        let instance = self.ci.describe();
        if witnesses.is_empty() {
            VerificationReport::pass("hilbert", instance, s as u64 + 2)
        } else {
            VerificationReport::fail("hilbert", instance, s as u64 + 2, witnesses)
        }
    }
}

// ---- Macaulay-matrix backend ----

/// The degree-`d` piece of the ideal, as a row-reduced subspace of the span
/// of all degree-`d` monomials. Column `j` corresponds to the `j`-th monomial
/// of [`monomials_of_degree`] (descending order).
#[derive(Debug, Clone)]
pub struct MacaulaySlice<F: ScalarField> {
    field: F,
    degree: u32,
    monomials: Vec<Monomial>,
    rref: Rref<F>,
}

impl<F: ScalarField> MacaulaySlice<F> {
    /// Spans the degree-`d` piece by `g_i * u` over all monomials `u` of
    /// degree `d - deg g_i` and row-reduces.
    pub fn new(field: F, nvars: usize, generators: &[Polynomial<F>], degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index: std::collections::HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in generators {
            let Some(dg) = g.degree() else { continue };
            if dg > degree {
                continue;
            }
            for u in monomials_of_degree(nvars, degree - dg) {
                let prod = g.mul_monomial(&u);
                let mut row = vec![field.zero(); monomials.len()];
                for (m, c) in prod.terms() {
                    row[index[m]] = c.clone();
                }
                rows.push(row);
            }
        }
        let rref = Matrix::from_rows(field.clone(), monomials.len(), rows).into_rref();
        MacaulaySlice {
            field,
            degree,
            monomials,
            rref,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Dimension of the ideal's degree piece.
    pub fn dimension(&self) -> usize {
        self.rref.rank()
    }

    /// Codimension inside the full degree piece: the Hilbert function value.
    pub fn codimension(&self) -> usize {
        self.monomials.len() - self.rref.rank()
    }

    /// Basis rows of the ideal piece, as coefficient vectors over
    /// [`MacaulaySlice::monomials`].
    pub fn basis_rows(&self) -> &[Vec<F::Elem>] {
        self.rref.rows()
    }

    /// Monomials at non-pivot columns; these represent the quotient's degree
    /// piece and coincide with the Gröbner standard monomials.
    pub fn quotient_monomials(&self) -> Vec<Monomial> {
        self.rref
            .non_pivots()
            .into_iter()
            .map(|j| self.monomials[j].clone())
            .collect()
    }

    pub fn coords_of(&self, f: &Polynomial<F>) -> Result<Vec<F::Elem>, PolyError> {
        match f.homogeneous_degree()? {
            None => {}
            Some(d) if d == self.degree => {}
            Some(_) => return Err(PolyError::DegreeMismatch),
        }
        let mut v = vec![self.field.zero(); self.monomials.len()];
        for (i, m) in self.monomials.iter().enumerate() {
            v[i] = f.coeff(m);
        }
        Ok(v)
    }

    /// Canonical reduction of `f` modulo the ideal piece: coordinates
    /// supported on the non-pivot monomials.
    pub fn reduce(&self, f: &Polynomial<F>) -> Result<Vec<F::Elem>, PolyError> {
        Ok(self.rref.reduce_vector(self.coords_of(f)?))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, PolyError> {
        let red = self.reduce(f)?;
        Ok(red.iter().all(|c| self.field.is_zero(c)))
    }
}
