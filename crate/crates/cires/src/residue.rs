//! The normalized residue map of an Artinian complete intersection.
//!
//! From generators `g_1..g_m` we fix a coefficient matrix `N` with
//! `g_i = sum_j n_ij * x_j`, take the socle representative `z_0 = det N`, and
//! normalize the unique linear functional on the top graded piece so that
//! `vol(z_0) = 1`. The class of `z_0` does not depend on how `N` splits the
//! generators, so two different splitting strategies are shipped and their
//! agreement is a checkable statement rather than an assumption.

use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::poly::{Monomial, PolyError, Polynomial};
use crate::quotient::{CompleteIntersection, MacaulaySlice, QuotientStructure};
use crate::report::VerificationReport;
use crate::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResidueError {
    #[error("generators are not a regular sequence (Hilbert check failed)")]
    RegularSequenceViolation(VerificationReport),
    #[error("socle representative reduces to zero; the input is not a valid complete intersection")]
    SocleDegenerate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// How a monomial term is assigned to a column of the coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// Divide each term by its smallest-index variable.
    MinVar,
    /// Divide each term by its largest-index variable.
    MaxVar,
}

impl SplitStrategy {
    fn pick(&self, m: &Monomial) -> usize {
        let hit = match self {
            SplitStrategy::MinVar => m.exponents().iter().position(|&e| e > 0),
            SplitStrategy::MaxVar => m.exponents().iter().rposition(|&e| e > 0),
        };
        hit.expect("generators have no constant term")
    }
}

/// A square matrix of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<F: ScalarField> {
    entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: ScalarField> PolyMatrix<F> {
    pub fn new(entries: Vec<Vec<Polynomial<F>>>) -> Self {
        let n = entries.len();
        for row in &entries {
            assert_eq!(row.len(), n, "square matrix required");
        }
        PolyMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial<F>>] {
        &self.entries
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self) -> Polynomial<F> {
        let n = self.size();
        assert!(n > 0);
        let field = self.entries[0][0].field().clone();
        let nvars = self.entries[0][0].nvars();
        if n == 1 {
            return self.entries[0][0].clone();
        }
        let mut acc = Polynomial::zero(field.clone(), nvars);
        for j in 0..n {
            if self.entries[0][j].is_zero() {
                continue;
            }
            let minor = PolyMatrix::new(
                self.entries[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect(),
            );
            let term = self.entries[0][j]
                .try_mul(&minor.determinant())
                .expect("same ambient");
            acc = if j % 2 == 0 {
                acc.try_add(&term).expect("same ambient")
            } else {
                acc.try_sub(&term).expect("same ambient")
            };
        }
        acc
    }

    /// Entrywise `e`-th power.
    pub fn entrywise_pow(&self, e: u32) -> Self {
        PolyMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.pow(e)).collect())
                .collect(),
        }
    }
}

/// A coefficient matrix for a generator list, tagged with the splitting rule
/// that produced it. Row `i` dotted with `(x_1, ..., x_m)` equals `g_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix<F: ScalarField> {
    strategy: SplitStrategy,
    matrix: PolyMatrix<F>,
}

impl<F: ScalarField> CoefficientMatrix<F> {
    pub fn strategy(&self) -> SplitStrategy {
        self.strategy
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn determinant(&self) -> Polynomial<F> {
        self.matrix.determinant()
    }
}

/// Builds the coefficient matrix: each term of `g_i` is divided by the
/// variable the strategy picks and lands in that variable's column.
pub fn coefficient_matrix<F: ScalarField>(
    generators: &[Polynomial<F>],
    strategy: SplitStrategy,
) -> CoefficientMatrix<F> {
    let m = generators.len();
    assert!(m > 0);
    let field = generators[0].field().clone();
    let nvars = generators[0].nvars();
    assert_eq!(m, nvars, "one generator per variable");
    let mut entries =
        vec![vec![Polynomial::zero(field.clone(), nvars); m]; m];
    for (i, g) in generators.iter().enumerate() {
        for (mono, c) in g.terms() {
            let j = strategy.pick(mono);
            let reduced = Monomial::variable(nvars, j)
                .divide_into(mono)
                .expect("picked variable divides the term");
            let term = Polynomial::term(field.clone(), nvars, reduced, c.clone());
            entries[i][j] = entries[i][j].try_add(&term).expect("same ambient");
        }
    }
    CoefficientMatrix {
        strategy,
        matrix: PolyMatrix::new(entries),
    }
}

/// The normalized residue map on the top graded piece, with both the Gröbner
/// and the Macaulay backend precomputed.
#[derive(Debug)]
pub struct ResidueMap {
    quotient: QuotientStructure,
    strategy: SplitStrategy,
    socle_monomial: Monomial,
    z0: Polynomial<Field>,
    /// Coefficient of the socle monomial in the Gröbner normal form of `z0`.
    z0_coefficient: FieldElement,
    macaulay: MacaulaySlice<Field>,
    socle_index: usize,
    /// Coefficient of the socle monomial in the Macaulay reduction of `z0`.
    z0_mac_coefficient: FieldElement,
    /// Cache for `g_1^{p-1} * ... * g_m^{p-1}`.
    power_product: OnceLock<Polynomial<Field>>,
}

impl ResidueMap {
    /// Builds the residue map with the default `MinVar` splitting.
    pub fn new(ci: CompleteIntersection) -> Result<ResidueMap, ResidueError> {
        ResidueMap::with_strategy(ci, SplitStrategy::MinVar)
    }

    pub fn with_strategy(
        ci: CompleteIntersection,
        strategy: SplitStrategy,
    ) -> Result<ResidueMap, ResidueError> {
        let quotient = QuotientStructure::new(ci);
        let hilbert = quotient.hilbert_check();
        if !hilbert.passed() {
            return Err(ResidueError::RegularSequenceViolation(hilbert));
        }
        let s = quotient.ci().socle_degree();
        let socle_monomial = quotient
            .standard_monomials(s)
            .expect("socle degree is stored")[0]
            .clone();

        let n = coefficient_matrix(quotient.ci().generators(), strategy);
        let z0 = n.determinant();

        let nf = quotient.normal_form(&z0);
        let z0_coefficient = nf.coeff(&socle_monomial);
        if z0_coefficient.is_zero() {
            return Err(ResidueError::SocleDegenerate);
        }

        let macaulay = MacaulaySlice::new(
            quotient.ci().field().clone(),
            quotient.ci().nvars(),
            quotient.ci().generators(),
            s,
        );
        let socle_index = macaulay
            .monomials()
            .iter()
            .position(|m| *m == socle_monomial)
            .expect("socle monomial is a degree-s monomial");
        let z0_mac_coefficient = macaulay.reduce(&z0)?[socle_index].clone();
        if z0_mac_coefficient.is_zero() {
            return Err(ResidueError::SocleDegenerate);
        }

        Ok(ResidueMap {
            quotient,
            strategy,
            socle_monomial,
            z0,
            z0_coefficient,
            macaulay,
            socle_index,
            z0_mac_coefficient,
            power_product: OnceLock::new(),
        })
    }

    pub fn quotient(&self) -> &QuotientStructure {
        &self.quotient
    }

    pub fn ci(&self) -> &CompleteIntersection {
        self.quotient.ci()
    }

    pub fn strategy(&self) -> SplitStrategy {
        self.strategy
    }

    /// The unique standard monomial in the socle degree.
    pub fn socle_monomial(&self) -> &Monomial {
        &self.socle_monomial
    }

    /// The socle representative `det N`.
    pub fn socle_representative(&self) -> &Polynomial<Field> {
        &self.z0
    }

    /// The nonzero scalar `c0` with `normal_form(z0) = c0 * socle_monomial`.
    pub fn z0_coefficient(&self) -> &FieldElement {
        &self.z0_coefficient
    }

    fn check_top_degree(&self, w: &Polynomial<Field>) -> Result<(), PolyError> {
        match w.homogeneous_degree()? {
            None => Ok(()),
            Some(d) if d == self.ci().socle_degree() => Ok(()),
            Some(_) => Err(PolyError::DegreeMismatch),
        }
    }

    /// The residue map through Gröbner normal forms: write
    /// `normal_form(w) = c_w * socle_monomial` and return `c_w / c0`.
    pub fn vol(&self, w: &Polynomial<Field>) -> Result<FieldElement, PolyError> {
        self.check_top_degree(w)?;
        let c_w = self.quotient.normal_form(w).coeff(&self.socle_monomial);
        Ok(c_w
            .try_div(&self.z0_coefficient)
            .expect("normalizer is nonzero"))
    }

    /// The residue map through the Macaulay backend: reduce against the
    /// row-reduced degree-`s` ideal piece instead of a Gröbner basis.
    pub fn vol_macaulay(&self, w: &Polynomial<Field>) -> Result<FieldElement, PolyError> {
        self.check_top_degree(w)?;
        let c_w = self.macaulay.reduce(w)?[self.socle_index].clone();
        Ok(c_w
            .try_div(&self.z0_mac_coefficient)
            .expect("normalizer is nonzero"))
    }

    /// Convenience: residue of a single monic monomial of the socle degree.
    pub fn vol_monomial(&self, m: &Monomial) -> Result<FieldElement, PolyError> {
        let poly = Polynomial::term(
            self.ci().field().clone(),
            self.ci().nvars(),
            m.clone(),
            self.ci().field().one(),
        );
        self.vol(&poly)
    }

    /// Cached product `g_1^{p-1} * ... * g_m^{p-1}`.
    pub fn generator_power_product(&self) -> &Polynomial<Field> {
        self.power_product.get_or_init(|| {
            let field = self.ci().field().clone();
            let nvars = self.ci().nvars();
            let e = (field.characteristic() - 1) as u32;
            let mut acc = Polynomial::one(field, nvars);
            for g in self.ci().generators() {
                acc = acc.try_mul(&g.pow(e)).expect("same ambient");
            }
            acc
        })
    }
}
