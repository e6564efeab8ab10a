//! p-anisotropy and Strong Lefschetz certification by random specialization.
//!
//! The generic statements live over a transcendental coefficient field; here
//! they are certified at desk scale by specializing the coefficients to a
//! finite extension `F_{p^k}`, running exact rank checks, and invoking lower
//! semicontinuity of rank: one specialization of maximal rank certifies the
//! generic-coefficient statement. The certificate text spells out that scope;
//! nothing is claimed about other fixed coefficient choices.
//!
//! All checks revolve around `l = x1 + ... + xm` and two kinds of maps on the
//! quotient: the Frobenius-semilinear `α -> α^p * l^k` and the linear
//! `α -> α * l^k`. Over a finite field the semilinear map is injective exactly
//! when the images of the standard monomial basis under `b -> b^p * l^k` are
//! linearly independent, because scalars move through as `c -> c^p`, a
//! bijection of the field.

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, Polynomial};
use crate::quotient::{CompleteIntersection, QuotientError, QuotientStructure};
use crate::report::{CertStatus, Certificate, ShapeDesc, VerificationReport, Witness};
use crate::residue::ResidueError;
use crate::rng::SplitMix64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LefschetzError {
    #[error("no regular specialization found after {attempts} attempts")]
    SpecializationExhausted { attempts: u32 },
    #[error("the Strong Lefschetz check requires characteristic 2, got {0}")]
    WrongCharacteristic(u64),
    #[error("degree pair (i = {i}, k = {k}) leaves the quotient range (socle degree {socle})")]
    DegreeOutOfRange { i: u32, k: u32, socle: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// The shape of a generic complete intersection to certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub p: u64,
    pub m: usize,
    pub degrees: Vec<u32>,
}

impl Shape {
    pub fn new(p: u64, m: usize, degrees: Vec<u32>) -> Shape {
        Shape { p, m, degrees }
    }

    pub fn desc(&self) -> ShapeDesc {
        ShapeDesc {
            p: self.p,
            m: self.m,
            degrees: self.degrees.clone(),
        }
    }
}

/// A concrete instance drawn from the generic coefficient space: the field,
/// the coefficient assignment, and the quotient structure of the resulting
/// complete intersection (which passed the Hilbert check).
#[derive(Debug)]
pub struct SpecializedInstance {
    shape: Shape,
    field: Field,
    assignment: Vec<FieldElement>,
    seed: u64,
    quotient: QuotientStructure,
}

impl SpecializedInstance {
    /// Wraps a hand-picked complete intersection (no sampling) so the rank
    /// checks can run on fixed instances such as negative controls.
    pub fn fixed(shape: Shape, ci: CompleteIntersection) -> SpecializedInstance {
        let field = ci.field().clone();
        SpecializedInstance {
            shape,
            field,
            assignment: Vec::new(),
            seed: 0,
            quotient: QuotientStructure::new(ci),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn assignment(&self) -> &[FieldElement] {
        &self.assignment
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn quotient(&self) -> &QuotientStructure {
        &self.quotient
    }

    pub fn describe(&self) -> String {
        format!(
            "{} (seed {})",
            self.quotient.ci().describe(),
            self.seed
        )
    }
}

const SPECIALIZE_ATTEMPTS: u32 = 100;

/// Draws coefficient assignments over `F_{p^k}` from the seed until the
/// specialized generators pass the Hilbert check (bounded retries). The
/// assignment lists one coefficient per `(generator, monomial)` pair in the
/// same order the symbolic generic module numbers its indeterminates, so the
/// two sides can be compared directly.
pub fn specialize(
    shape: &Shape,
    extension_degree: usize,
    seed: u64,
) -> Result<SpecializedInstance, LefschetzError> {
    let field = Field::extension(shape.p, extension_degree, 0)?;
    let mut rng = SplitMix64::new(seed);
    for _ in 0..SPECIALIZE_ATTEMPTS {
        let mut assignment = Vec::new();
        let mut gens = Vec::with_capacity(shape.m);
        for &d in &shape.degrees {
            let mut g = Polynomial::zero(field.clone(), shape.m);
            for r in monomials_of_degree(shape.m, d) {
                let c = field.random_element(&mut rng);
                assignment.push(c.clone());
                if !c.is_zero() {
                    g = &g + &Polynomial::term(field.clone(), shape.m, r, c);
                }
            }
            gens.push(g);
        }
        // A zero generator cannot even be constructed; resample.
        let Ok(ci) = CompleteIntersection::new(field.clone(), shape.m, gens) else {
            continue;
        };
        let quotient = QuotientStructure::new(ci);
        if quotient.hilbert_check().passed() {
            return Ok(SpecializedInstance {
                shape: shape.clone(),
                field,
                assignment,
                seed,
                quotient,
            });
        }
    }
    Err(LefschetzError::SpecializationExhausted {
        attempts: SPECIALIZE_ATTEMPTS,
    })
}

/// The linear form `l = x1 + ... + xm`.
pub fn linear_form(field: &Field, nvars: usize) -> Polynomial<Field> {
    let mut acc = Polynomial::zero(field.clone(), nvars);
    for i in 0..nvars {
        acc = &acc + &Polynomial::variable(field.clone(), nvars, i);
    }
    acc
}

fn coords_over_basis(
    q: &QuotientStructure,
    f: &Polynomial<Field>,
    degree: u32,
) -> Result<Vec<FieldElement>, LefschetzError> {
    let basis = q.standard_monomials(degree)?;
    let nf = q.normal_form(f);
    Ok(basis.iter().map(|m| nf.coeff(m)).collect())
}

/// Matrix of the Frobenius-semilinear map `α -> α^p * l^k` from degree `i`:
/// column `j` holds the coordinates of `normal_form(b_j^p * l^k)` over the
/// standard monomials of degree `p*i + k`. Over a finite field, injectivity
/// of the semilinear map is exactly full column rank of this matrix.
pub fn semilinear_power_matrix(
    q: &QuotientStructure,
    i: u32,
    k: u32,
) -> Result<Matrix<Field>, LefschetzError> {
    let ci = q.ci();
    let p = ci.field().characteristic() as u32;
    let s = ci.socle_degree();
    let target = p
        .checked_mul(i)
        .and_then(|pi| pi.checked_add(k))
        .filter(|&t| t <= s)
        .ok_or(LefschetzError::DegreeOutOfRange { i, k, socle: s })?;
    let field = ci.field().clone();
    let ell_k = linear_form(&field, ci.nvars()).pow(k);
    let source = q.standard_monomials(i)?.to_vec();
    let target_basis_len = q.standard_monomials(target)?.len();
    let mut matrix = Matrix::zeros(field.clone(), target_basis_len, source.len());
    for (j, b) in source.iter().enumerate() {
        let image = ell_k.mul_monomial(&b.pow(p));
        let coords = coords_over_basis(q, &image, target)?;
        for (r, c) in coords.into_iter().enumerate() {
            matrix.set(r, j, c);
        }
    }
    Ok(matrix)
}

/// Matrix of the plain multiplication map `α -> α * l^k` from degree `i` to
/// degree `i + k`.
pub fn linear_power_matrix(
    q: &QuotientStructure,
    i: u32,
    k: u32,
) -> Result<Matrix<Field>, LefschetzError> {
    let ci = q.ci();
    let s = ci.socle_degree();
    let target = i
        .checked_add(k)
        .filter(|&t| t <= s)
        .ok_or(LefschetzError::DegreeOutOfRange { i, k, socle: s })?;
    let field = ci.field().clone();
    let ell_k = linear_form(&field, ci.nvars()).pow(k);
    let source = q.standard_monomials(i)?.to_vec();
    let target_basis_len = q.standard_monomials(target)?.len();
    let mut matrix = Matrix::zeros(field.clone(), target_basis_len, source.len());
    for (j, b) in source.iter().enumerate() {
        let image = ell_k.mul_monomial(b);
        let coords = coords_over_basis(q, &image, target)?;
        for (r, c) in coords.into_iter().enumerate() {
            matrix.set(r, j, c);
        }
    }
    Ok(matrix)
}

/// p-anisotropy: for every degree `i` up to `s/p`, no nonzero class of degree
/// `i` has vanishing p-th power, i.e. the semilinear matrix with `k = 0` has
/// full column rank.
pub fn check_anisotropy(inst: &SpecializedInstance) -> VerificationReport {
    let q = inst.quotient();
    let p = q.ci().field().characteristic() as u32;
    let s = q.ci().socle_degree();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in 0..=s / p {
        checked += 1;
        let matrix = semilinear_power_matrix(q, i, 0).expect("degree range checked");
        if !matrix.has_full_column_rank() {
            witnesses.push(Witness {
                item: format!("degree {i}: rank of the p-th power map"),
                lhs: matrix.rank().to_string(),
                rhs: matrix.cols().to_string(),
            });
        }
    }
    if witnesses.is_empty() {
        VerificationReport::pass("anisotropy", inst.describe(), checked)
    } else {
        VerificationReport::fail("anisotropy", inst.describe(), checked, witnesses)
    }
}

/// The full sweep behind anisotropy: the semilinear map `α -> α^p * l^k`
/// stays injective for every pair `(i, k)` with `p*i + k <= s`.
pub fn check_semilinear_sweep(inst: &SpecializedInstance) -> VerificationReport {
    let q = inst.quotient();
    let p = q.ci().field().characteristic() as u32;
    let s = q.ci().socle_degree();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in 0..=s / p {
        for k in 0..=s - p * i {
            checked += 1;
            let matrix = semilinear_power_matrix(q, i, k).expect("degree range checked");
            if !matrix.has_full_column_rank() {
                witnesses.push(Witness {
                    item: format!("(i, k) = ({i}, {k}): rank of the semilinear map"),
                    lhs: matrix.rank().to_string(),
                    rhs: matrix.cols().to_string(),
                });
            }
        }
    }
    if witnesses.is_empty() {
        VerificationReport::pass("semilinear_sweep", inst.describe(), checked)
    } else {
        VerificationReport::fail("semilinear_sweep", inst.describe(), checked, witnesses)
    }
}

/// Injectivity of multiplication by `l^{s - p*i}` out of degree `i`, checked
/// both directly (linear matrix) and through the semilinear route with
/// `k = s - p*i`; both ranks must be full.
pub fn check_injectivity(
    inst: &SpecializedInstance,
    i: u32,
) -> Result<VerificationReport, LefschetzError> {
    let q = inst.quotient();
    let p = q.ci().field().characteristic() as u32;
    let s = q.ci().socle_degree();
    if p * i > s {
        return Err(LefschetzError::DegreeOutOfRange {
            i,
            k: 0,
            socle: s,
        });
    }
    let k = s - p * i;
    let mut witnesses = Vec::new();
    let linear = linear_power_matrix(q, i, k)?;
    if !linear.has_full_column_rank() {
        witnesses.push(Witness {
            item: format!("degree {i}: rank of multiplication by l^{k}"),
            lhs: linear.rank().to_string(),
            rhs: linear.cols().to_string(),
        });
    }
    let semilinear = semilinear_power_matrix(q, i, k)?;
    if !semilinear.has_full_column_rank() {
        witnesses.push(Witness {
            item: format!("degree {i}: rank of the semilinear map with k = {k}"),
            lhs: semilinear.rank().to_string(),
            rhs: semilinear.cols().to_string(),
        });
    }
    let instance = format!("{} (i = {i})", inst.describe());
    Ok(if witnesses.is_empty() {
        VerificationReport::pass("injectivity", instance, 2)
    } else {
        VerificationReport::fail("injectivity", instance, 2, witnesses)
    })
}

/// Injectivity for every valid source degree at once.
pub fn check_injectivity_all(inst: &SpecializedInstance) -> VerificationReport {
    let q = inst.quotient();
    let p = q.ci().field().characteristic() as u32;
    let s = q.ci().socle_degree();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in 0..=s / p {
        let report = check_injectivity(inst, i).expect("degree range checked");
        checked += report.checked;
        witnesses.extend(report.witnesses);
    }
    if witnesses.is_empty() {
        VerificationReport::pass("injectivity", inst.describe(), checked)
    } else {
        VerificationReport::fail("injectivity", inst.describe(), checked, witnesses)
    }
}

/// The Strong Lefschetz check in characteristic 2: multiplication by
/// `l^{s-2i}` from degree `i` to degree `s-i` is injective for every
/// `i <= s/2`; source and target dimensions agree by Hilbert symmetry, so
/// injectivity there is bijectivity, which is the full Strong Lefschetz
/// Property.
pub fn check_slp_char2(inst: &SpecializedInstance) -> Result<VerificationReport, LefschetzError> {
    let q = inst.quotient();
    let p = q.ci().field().characteristic();
    if p != 2 {
        return Err(LefschetzError::WrongCharacteristic(p));
    }
    let s = q.ci().socle_degree();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in 0..=s / 2 {
        checked += 1;
        let k = s - 2 * i;
        let matrix = linear_power_matrix(q, i, k).expect("degree range checked");
        let source = q.standard_monomials(i).expect("in range").len();
        let target = q.standard_monomials(i + k).expect("in range").len();
        debug_assert_eq!(source, target, "Hilbert symmetry");
        if !matrix.has_full_column_rank() {
            witnesses.push(Witness {
                item: format!("degree {i}: rank of multiplication by l^{k}"),
                lhs: matrix.rank().to_string(),
                rhs: matrix.cols().to_string(),
            });
        }
    }
    Ok(if witnesses.is_empty() {
        VerificationReport::pass("slp", inst.describe(), checked)
    } else {
        VerificationReport::fail("slp", inst.describe(), checked, witnesses)
    })
}

/// Which generic property a certificate speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Anisotropy,
    Injectivity,
    Slp,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Anisotropy => "anisotropy",
            Property::Injectivity => "injectivity",
            Property::Slp => "slp",
        }
    }
}

const CERTIFICATE_NOTES: &str = "Certified from one specialization with maximal rank: rank is \
lower semicontinuous on the coefficient space, so a single nondegenerate point certifies the \
generic-coefficient statement. No claim is made about any other fixed choice of coefficients.";

const DESCENT_NOTE: &str = " Semilinear maps whose source dimension exceeds the target were \
certified through their Frobenius-descended linear system (coefficients split along the p-basis \
of the function field over its p-th powers), evaluated at the same witness point; injectivity of \
such maps holds only over the transcendental coefficient field and is not a property of any \
finite specialization.";

/// One rank condition a certificate trial has to establish.
#[derive(Debug)]
enum RankCheck {
    /// Ordinary multiplication map on the specialized instance.
    Linear { i: u32, k: u32 },
    /// Frobenius-semilinear map, testable on the instance itself because the
    /// source dimension is no larger than the target dimension.
    Semilinear { i: u32, k: u32 },
    /// Frobenius-semilinear map with a strictly smaller target: only the
    /// descended linear system can witness generic injectivity.
    Descent(crate::generic::DescentSystem),
}

struct CertificationPlan {
    checks: Vec<RankCheck>,
    /// (i, k) pairs needing descent on shapes beyond the symbolic cap.
    infeasible: Vec<(u32, u32)>,
    used_descent: bool,
}

fn plan_certification(
    shape: &Shape,
    property: Property,
) -> Result<CertificationPlan, LefschetzError> {
    let p = shape.p as u32;
    let dims = crate::quotient::expected_hilbert_function(&shape.degrees);
    let dim = |d: u32| dims.get(d as usize).copied().unwrap_or(0);
    let s = shape.degrees.iter().sum::<u32>() - shape.m as u32;

    let mut semilinear_pairs: Vec<(u32, u32)> = Vec::new();
    let mut checks = Vec::new();
    match property {
        Property::Slp => {
            for i in 0..=s / 2 {
                checks.push(RankCheck::Linear { i, k: s - 2 * i });
            }
        }
        Property::Anisotropy => {
            for i in 0..=s / p {
                semilinear_pairs.push((i, 0));
            }
        }
        Property::Injectivity => {
            for i in 0..=s / p {
                let k = s - p * i;
                checks.push(RankCheck::Linear { i, k });
                semilinear_pairs.push((i, k));
            }
        }
    }

    let mut infeasible = Vec::new();
    let mut used_descent = false;
    let needs_descent: Vec<bool> = semilinear_pairs
        .iter()
        .map(|&(i, k)| dim(i) > dim(p * i + k))
        .collect();
    let gci = if needs_descent.iter().any(|&b| b) {
        match crate::generic::build_generic_ci(shape.p, shape.m, &shape.degrees) {
            Ok(gci) => Some(gci),
            Err(crate::generic::GenericError::FeasibilityCapExceeded { .. }) => None,
            Err(crate::generic::GenericError::Field(e)) => return Err(e.into()),
            Err(e) => {
                unreachable!("generic construction failed unexpectedly: {e}")
            }
        }
    } else {
        None
    };
    for (&(i, k), &descend) in semilinear_pairs.iter().zip(&needs_descent) {
        if !descend {
            checks.push(RankCheck::Semilinear { i, k });
        } else if let Some(gci) = &gci {
            let system = crate::generic::frobenius_descent_system(gci, i, k)
                .expect("descent degrees stay within the quotient range");
            checks.push(RankCheck::Descent(system));
            used_descent = true;
        } else {
            infeasible.push((i, k));
        }
    }
    Ok(CertificationPlan {
        checks,
        infeasible,
        used_descent,
    })
}

/// Runs the chosen property's rank conditions on up to `trials` independent
/// specializations and certifies on the first trial where every condition
/// holds. Trial `t` uses seed `seed + t`; the winning seed is recorded.
///
/// Semilinear conditions whose source dimension exceeds the target cannot
/// hold on any finite specialization (Frobenius is onto there); those are
/// certified through the descended linear system instead, evaluated at the
/// same witness point.
pub fn certify_generic(
    shape: &Shape,
    property: Property,
    trials: u32,
    extension_degree: usize,
    seed: u64,
) -> Result<Certificate, LefschetzError> {
    assert!(trials >= 1);
    if property == Property::Slp && shape.p != 2 {
        return Err(LefschetzError::WrongCharacteristic(shape.p));
    }
    let plan = plan_certification(shape, property)?;
    if !plan.infeasible.is_empty() {
        return Ok(Certificate {
            property: property.name().to_string(),
            shape: shape.desc(),
            status: CertStatus::Inconclusive,
            witness_seed: None,
            trials_used: 0,
            extension_degree,
            notes: format!(
                "Degrees {:?} need the Frobenius-descended system, but the shape exceeds the \
                 symbolic feasibility cap; no finite specialization can witness them directly.",
                plan.infeasible
            ),
        });
    }

    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let inst = match specialize(shape, extension_degree, trial_seed) {
            Ok(inst) => inst,
            Err(LefschetzError::SpecializationExhausted { .. }) => continue,
            Err(e) => return Err(e),
        };
        let q = inst.quotient();
        let all_pass = plan.checks.iter().all(|check| match check {
            RankCheck::Linear { i, k } => linear_power_matrix(q, *i, *k)
                .expect("planned degrees are in range")
                .has_full_column_rank(),
            RankCheck::Semilinear { i, k } => semilinear_power_matrix(q, *i, *k)
                .expect("planned degrees are in range")
                .has_full_column_rank(),
            RankCheck::Descent(system) => system
                .evaluate(inst.field(), inst.assignment())
                .has_full_column_rank(),
        });
        if all_pass {
            let mut notes = CERTIFICATE_NOTES.to_string();
            if plan.used_descent {
                notes.push_str(DESCENT_NOTE);
            }
            return Ok(Certificate {
                property: property.name().to_string(),
                shape: shape.desc(),
                status: CertStatus::Certified,
                witness_seed: Some(trial_seed),
                trials_used: t + 1,
                extension_degree,
                notes,
            });
        }
    }
    Ok(Certificate {
        property: property.name().to_string(),
        shape: shape.desc(),
        status: CertStatus::Inconclusive,
        witness_seed: None,
        trials_used: trials,
        extension_degree,
        notes: "No specialization passed all rank checks within the trial budget.".to_string(),
    })
}

/// Brute-force oracle for the semilinear rank criterion: enumerate every
/// coefficient vector over the (small) field and watch for a nonzero kernel
/// element of `α -> α^p * l^k`. Intended for instances with tiny graded
/// pieces; the cost is `|F|^dim`.
pub fn exhaustive_semilinear_injectivity(
    q: &QuotientStructure,
    i: u32,
    k: u32,
) -> Result<bool, LefschetzError> {
    let ci = q.ci();
    let field = ci.field().clone();
    let p = field.characteristic() as u32;
    let s = ci.socle_degree();
    if p * i + k > s {
        return Err(LefschetzError::DegreeOutOfRange { i, k, socle: s });
    }
    let basis = q.standard_monomials(i)?.to_vec();
    let dim = basis.len();
    let order = field.order();
    let total = order.checked_pow(dim as u32).expect("exhaustive range is tiny");
    let ell_k = linear_form(&field, ci.nvars()).pow(k);
    for idx in 1..total {
        // Decode idx into a coefficient vector, base `order`.
        let mut rest = idx;
        let mut alpha = Polynomial::zero(field.clone(), ci.nvars());
        for b in &basis {
            let c = field.element_by_index(rest % order);
            rest /= order;
            if !c.is_zero() {
                alpha = &alpha
                    + &Polynomial::term(field.clone(), ci.nvars(), b.clone(), c);
            }
        }
        let image = &alpha.pow(p) * &ell_k;
        if q.normal_form(&image).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn mono_ci(p: u64, exps: &[Vec<u32>]) -> QuotientStructure {
        let field = Field::prime(p).unwrap();
        let n = exps.len();
        let gens = exps
            .iter()
            .map(|e| {
                Polynomial::term(field.clone(), n, Monomial::new(e.clone()), field.one())
            })
            .collect();
        QuotientStructure::new(CompleteIntersection::new(field, n, gens).unwrap())
    }

    #[test]
    fn semilinear_matrix_base_cases() {
        let q = mono_ci(2, &[vec![2, 0], vec![0, 2]]);
        // i = 0, k = 0: the image of 1 is 1.
        let m = semilinear_power_matrix(&q, 0, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.has_full_column_rank());

        // i = 0, k = 2: l^2 = x1^2 + x2^2 = 0 in the quotient; the matrix
        // vanishes. This is the monomial counterexample that forces
        // certification to use random instances.
        let m = semilinear_power_matrix(&q, 0, 2).unwrap();
        assert_eq!(m.rank(), 0);
        assert!(!m.has_full_column_rank());
    }

    #[test]
    fn univariate_power_map_has_rank_one() {
        let q = mono_ci(2, &[vec![3]]);
        let m = semilinear_power_matrix(&q, 1, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.has_full_column_rank());
    }

    #[test]
    fn degree_out_of_range_is_reported() {
        let q = mono_ci(2, &[vec![2, 0], vec![0, 2]]);
        assert!(matches!(
            semilinear_power_matrix(&q, 2, 0),
            Err(LefschetzError::DegreeOutOfRange { .. })
        ));
        let inst_err = linear_power_matrix(&q, 1, 5);
        assert!(matches!(
            inst_err,
            Err(LefschetzError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn univariate_truncation_is_anisotropic() {
        // x1^j has nonzero p-th power exactly while p*j stays at most s.
        let shape = Shape::new(2, 1, vec![4]);
        let inst = specialize(&shape, 1, 3).unwrap();
        assert!(check_anisotropy(&inst).passed());
    }

    #[test]
    fn specialization_is_deterministic_and_regular() {
        let shape = Shape::new(2, 2, vec![2, 2]);
        let a = specialize(&shape, 8, 1).unwrap();
        let b = specialize(&shape, 8, 1).unwrap();
        assert_eq!(a.assignment(), b.assignment());
        assert!(a.quotient().hilbert_check().passed());
    }

    #[test]
    fn negative_control_fails_slp_deterministically() {
        let field = Field::prime(2).unwrap();
        let gens = vec![
            Polynomial::term(field.clone(), 2, Monomial::new(vec![2, 0]), field.one()),
            Polynomial::term(field.clone(), 2, Monomial::new(vec![0, 2]), field.one()),
        ];
        let ci = CompleteIntersection::new(field.clone(), 2, gens).unwrap();
        let inst = SpecializedInstance {
            shape: Shape::new(2, 2, vec![2, 2]),
            field,
            assignment: vec![],
            seed: 0,
            quotient: QuotientStructure::new(ci),
        };
        for _ in 0..3 {
            let report = check_slp_char2(&inst).unwrap();
            assert!(!report.passed());
            assert!(!report.witnesses.is_empty());
        }
    }

    #[test]
    fn slp_certification_on_the_showcase_shape() {
        let shape = Shape::new(2, 2, vec![2, 2]);
        let cert = certify_generic(&shape, Property::Slp, 5, 8, 42).unwrap();
        assert!(cert.certified());
        assert!(cert.witness_seed.is_some());
    }

    #[test]
    fn univariate_slp_certificate_is_immediate() {
        let shape = Shape::new(2, 1, vec![5]);
        let cert = certify_generic(&shape, Property::Slp, 3, 4, 0).unwrap();
        assert!(cert.certified());
    }

    #[test]
    fn slp_requires_characteristic_two() {
        let shape = Shape::new(3, 2, vec![2, 2]);
        assert_eq!(
            certify_generic(&shape, Property::Slp, 3, 4, 0),
            Err(LefschetzError::WrongCharacteristic(3))
        );
    }

    #[test]
    fn anisotropy_certification_in_odd_characteristic() {
        let shape = Shape::new(3, 2, vec![2, 2]);
        let cert = certify_generic(&shape, Property::Anisotropy, 5, 4, 9).unwrap();
        assert!(cert.certified());
    }

    #[test]
    fn anisotropy_certification_uses_descent_where_rank_cannot_reach() {
        // Degree 1 maps a 2-dimensional piece into a 1-dimensional one, so
        // only the descended system can certify; the notes say so.
        let shape = Shape::new(2, 2, vec![2, 2]);
        let cert = certify_generic(&shape, Property::Anisotropy, 5, 8, 4).unwrap();
        assert!(cert.certified());
        assert!(cert.notes.contains("descended"));
    }

    #[test]
    fn injectivity_certification_combines_both_routes() {
        let shape = Shape::new(2, 2, vec![2, 2]);
        let cert = certify_generic(&shape, Property::Injectivity, 5, 8, 11).unwrap();
        assert!(cert.certified());
    }

    #[test]
    fn descent_beyond_the_cap_is_inconclusive_with_a_note() {
        // (2,2,3) in three variables needs descent in degree 2 but has 22
        // auxiliary indeterminates, past the symbolic cap.
        let shape = Shape::new(2, 3, vec![2, 2, 3]);
        let cert = certify_generic(&shape, Property::Anisotropy, 3, 4, 0).unwrap();
        assert!(!cert.certified());
        assert!(cert.notes.contains("feasibility cap"));
        assert_eq!(cert.witness_seed, None);
    }

    #[test]
    fn injectivity_at_degree_zero_is_a_nonzero_vol_check() {
        let shape = Shape::new(2, 2, vec![2, 2]);
        let inst = specialize(&shape, 8, 7).unwrap();
        let report = check_injectivity(&inst, 0).unwrap();
        assert!(report.passed());
        // Source dimension 1: l^s must stay nonzero in the quotient.
        let q = inst.quotient();
        let s = q.ci().socle_degree();
        let ell_s = linear_form(q.ci().field(), 2).pow(s);
        assert!(!q.normal_form(&ell_s).is_zero());
    }

    #[test]
    fn exhaustive_kernel_search_matches_rank_criterion() {
        // Tiny field so the brute-force side is cheap; both a passing random
        // instance and the failing monomial instance are compared.
        let shape = Shape::new(2, 2, vec![2, 2]);
        let inst = specialize(&shape, 2, 11).unwrap();
        let q = inst.quotient();
        let s = q.ci().socle_degree();
        let p = 2;
        for i in 0..=s / p {
            for k in 0..=s - p * i {
                let rank_route = semilinear_power_matrix(q, i, k)
                    .unwrap()
                    .has_full_column_rank();
                let kernel_route = exhaustive_semilinear_injectivity(q, i, k).unwrap();
                assert_eq!(rank_route, kernel_route, "(i, k) = ({i}, {k})");
            }
        }

        let monomial = mono_ci(2, &[vec![2, 0], vec![0, 2]]);
        assert!(!exhaustive_semilinear_injectivity(&monomial, 0, 2).unwrap());
        assert!(
            !semilinear_power_matrix(&monomial, 0, 2)
                .unwrap()
                .has_full_column_rank()
        );
    }
}
