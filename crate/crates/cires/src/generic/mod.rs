//! The generic complete intersection: generators whose coefficients are
//! independent transcendentals `a_{i,r}` over `F_p`, and the differential
//! identities satisfied by its residue map.
//!
//! For generator degrees `(d_1, ..., d_m)` the generic generator is
//! `g_i = sum over r of a_{i,r} x^r` with one auxiliary variable per
//! degree-`d_i` monomial. The residue map then takes values in the
//! rational-function field `K = F_p(a_{i,r})`, and for every exponent vector
//! `s` of total degree `s` and every differentiation multiset `I` with
//! exactly `p-1` entries per generator,
//!
//! ```text
//! d^I vol(x^s) = (-1)^m * ( vol(trunc((x^s * x^I * x^{(1-p)*1})^{1/p})) )^p
//! ```
//!
//! where the p-th root is the zero marker unless every exponent is divisible
//! by `p`, and `trunc` kills monomials with negative exponents. Both sides
//! are computed exactly and compared as rational functions.

pub mod ratfunc;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::laurent::LaurentMonomial;
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, Monomial, PolyError, Polynomial};
use crate::quotient::{CompleteIntersection, MacaulaySlice, QuotientError};
use crate::report::{VerificationReport, Witness};
use crate::residue::{coefficient_matrix, SplitStrategy};
use crate::scalar::ScalarField;

pub use ratfunc::{FunctionField, RationalFunction};

/// Upper bound on the number of auxiliary indeterminates. Beyond this the
/// symbolic denominators grow out of desk scale.
pub const INDEX_SET_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenericError {
    #[error("index set has {size} entries, exceeding the feasibility cap {cap}")]
    FeasibilityCapExceeded { size: usize, cap: usize },
    #[error("the multiset does not have exactly p-1 entries per generator")]
    PropertyStarViolated,
    #[error("expected a monomial of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// One auxiliary indeterminate `a_{i,r}`: generator index plus the exponent
/// vector of the monomial it multiplies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxVar {
    pub generator: usize,
    pub exponents: Monomial,
}

#[derive(Debug)]
struct VolSolver {
    slice: MacaulaySlice<FunctionField>,
    socle_index: usize,
    socle_monomial: Monomial,
    z0_coefficient: RationalFunction,
}

/// A generic complete intersection over `K = F_p(a_{i,r})`.
#[derive(Debug)]
pub struct GenericCI {
    base: Field,
    nvars: usize,
    degrees: Vec<u32>,
    socle_degree: u32,
    index_set: Vec<AuxVar>,
    coeff_field: FunctionField,
    generators: Vec<Polynomial<FunctionField>>,
    solver: OnceLock<VolSolver>,
}

/// Builds the generic `(d_1, ..., d_m)`-complete intersection over `F_p`.
pub fn build_generic_ci(p: u64, m: usize, degrees: &[u32]) -> Result<GenericCI, GenericError> {
    assert_eq!(degrees.len(), m, "one degree per variable");
    assert!(m >= 1);
    assert!(degrees.iter().all(|&d| d >= 1));
    let base = Field::prime(p)?;

    let mut index_set = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        for r in monomials_of_degree(m, d) {
            index_set.push(AuxVar {
                generator: i,
                exponents: r,
            });
        }
    }
    if index_set.len() > INDEX_SET_CAP {
        return Err(GenericError::FeasibilityCapExceeded {
            size: index_set.len(),
            cap: INDEX_SET_CAP,
        });
    }

    let coeff_field = FunctionField::new(base.clone(), index_set.len());
    let generators = (0..m)
        .map(|i| {
            Polynomial::from_terms(
                coeff_field.clone(),
                m,
                index_set
                    .iter()
                    .enumerate()
                    .filter(|(_, aux)| aux.generator == i)
                    .map(|(j, aux)| (aux.exponents.clone(), coeff_field.var(j))),
            )
        })
        .collect();

    let socle_degree = degrees.iter().sum::<u32>() - m as u32;
    Ok(GenericCI {
        base,
        nvars: m,
        degrees: degrees.to_vec(),
        socle_degree,
        index_set,
        coeff_field,
        generators,
        solver: OnceLock::new(),
    })
}

impl GenericCI {
    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn index_set(&self) -> &[AuxVar] {
        &self.index_set
    }

    pub fn coeff_field(&self) -> &FunctionField {
        &self.coeff_field
    }

    pub fn generators(&self) -> &[Polynomial<FunctionField>] {
        &self.generators
    }

    pub fn describe(&self) -> String {
        format!(
            "generic complete intersection, p = {}, m = {}, degrees = {:?}",
            self.base.characteristic(),
            self.nvars,
            self.degrees
        )
    }

    fn solver(&self) -> &VolSolver {
        self.solver.get_or_init(|| {
            let slice = MacaulaySlice::new(
                self.coeff_field.clone(),
                self.nvars,
                &self.generators,
                self.socle_degree,
            );
            let quotient_monomials = slice.quotient_monomials();
            assert_eq!(
                quotient_monomials.len(),
                1,
                "the generic top graded piece is one-dimensional"
            );
            let socle_monomial = quotient_monomials.into_iter().next().unwrap();
            let socle_index = slice
                .monomials()
                .iter()
                .position(|m| *m == socle_monomial)
                .unwrap();
            let n = coefficient_matrix(&self.generators, SplitStrategy::MinVar);
            let z0 = n.determinant();
            let z0_coefficient = slice
                .reduce(&z0)
                .expect("determinant is homogeneous of the socle degree")[socle_index]
                .clone();
            assert!(!z0_coefficient.is_zero(), "generic socle representative is nonzero");
            VolSolver {
                slice,
                socle_index,
                socle_monomial,
                z0_coefficient,
            }
        })
    }

    /// The standard monomial spanning the top graded piece.
    pub fn socle_monomial(&self) -> &Monomial {
        &self.solver().socle_monomial
    }

    /// The residue map on a monic monomial of the socle degree, computed over
    /// `K` through the Macaulay backend and normalized so the determinant of
    /// the min-var coefficient matrix maps to 1.
    pub fn vol(&self, w: &Monomial) -> Result<RationalFunction, GenericError> {
        if w.degree() != self.socle_degree {
            return Err(GenericError::DegreeMismatch {
                expected: self.socle_degree,
                got: w.degree(),
            });
        }
        let solver = self.solver();
        let poly = Polynomial::term(
            self.coeff_field.clone(),
            self.nvars,
            w.clone(),
            self.coeff_field.one(),
        );
        let reduced = solver.slice.reduce(&poly)?;
        let c = reduced[solver.socle_index].clone();
        Ok(c.mul(&solver.z0_coefficient.inv().expect("normalizer is nonzero")))
    }

    /// Substitutes concrete values for the auxiliary indeterminates, giving a
    /// complete intersection over `target` (same characteristic).
    pub fn specialize(
        &self,
        target: &Field,
        assignment: &[FieldElement],
    ) -> Result<CompleteIntersection, GenericError> {
        assert_eq!(assignment.len(), self.index_set.len());
        let mut gens = Vec::with_capacity(self.nvars);
        for g in &self.generators {
            let spec = Polynomial::from_terms(
                target.clone(),
                self.nvars,
                g.terms().map(|(m, c)| {
                    let value = c
                        .eval(target, assignment)
                        .expect("generator coefficients have trivial denominators");
                    (m.clone(), value)
                }),
            );
            gens.push(spec);
        }
        Ok(CompleteIntersection::new(target.clone(), self.nvars, gens)?)
    }
}

/// A multiset of auxiliary indeterminates, stored as variable index to
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffMultiset {
    counts: BTreeMap<usize, u32>,
}

impl DiffMultiset {
    pub fn empty() -> DiffMultiset {
        DiffMultiset {
            counts: BTreeMap::new(),
        }
    }

    pub fn from_indices(indices: &[usize]) -> DiffMultiset {
        let mut counts = BTreeMap::new();
        for &i in indices {
            *counts.entry(i).or_insert(0) += 1;
        }
        DiffMultiset { counts }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts.iter().map(|(&i, &c)| (i, c))
    }

    pub fn order(&self) -> u32 {
        self.counts.values().sum()
    }

    /// `I! = prod of multiplicity factorials`.
    pub fn factorial(&self) -> u64 {
        self.counts
            .values()
            .map(|&c| (1..=c as u64).product::<u64>())
            .product()
    }

    /// Exactly `p-1` entries attached to every generator.
    pub fn satisfies_property_star(&self, gci: &GenericCI) -> bool {
        let p = gci.characteristic() as u32;
        let mut per_generator = vec![0u32; gci.nvars()];
        for (idx, count) in self.entries() {
            per_generator[gci.index_set()[idx].generator] += count;
        }
        per_generator.iter().all(|&c| c == p - 1)
    }

    /// The monomial `x^I`: product of the indexed exponent vectors with
    /// multiplicity.
    pub fn x_monomial(&self, gci: &GenericCI) -> Monomial {
        let mut acc = Monomial::one(gci.nvars());
        for (idx, count) in self.entries() {
            acc = acc.mul(&gci.index_set()[idx].exponents.pow(count));
        }
        acc
    }

    /// The auxiliary monomial `prod a_{i,r}^{multiplicity}`.
    pub fn aux_monomial(&self, gci: &GenericCI) -> Polynomial<Field> {
        let n = gci.index_set().len();
        let mut exps = vec![0u32; n];
        for (idx, count) in self.entries() {
            exps[idx] = count;
        }
        Polynomial::term(
            gci.base.clone(),
            n,
            Monomial::new(exps),
            gci.base.one(),
        )
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .entries()
            .map(|(idx, count)| {
                if count == 1 {
                    format!("a{}", idx + 1)
                } else {
                    format!("a{}^{}", idx + 1, count)
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Applies the composed partial derivative `d^I` to a rational function.
/// Derivations commute, so the multiset order is immaterial.
pub fn diff_operator(f: &RationalFunction, multiset: &DiffMultiset) -> RationalFunction {
    let mut acc = f.clone();
    for (idx, count) in multiset.entries() {
        for _ in 0..count {
            acc = acc.derivative(idx);
        }
    }
    acc
}

fn combinations_with_replacement(items: &[usize], k: u32) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: u32, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, k - 1, i, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Enumerates every multiset with exactly `p-1` entries per generator, in
/// lexicographic order of the chosen variable indices per generator.
pub fn property_star_multisets(gci: &GenericCI) -> Vec<DiffMultiset> {
    let p = gci.characteristic() as u32;
    let per_generator: Vec<Vec<Vec<usize>>> = (0..gci.nvars())
        .map(|i| {
            let candidates: Vec<usize> = gci
                .index_set()
                .iter()
                .enumerate()
                .filter(|(_, aux)| aux.generator == i)
                .map(|(j, _)| j)
                .collect();
            combinations_with_replacement(&candidates, p - 1)
        })
        .collect();

    let mut result = vec![Vec::new()];
    for options in &per_generator {
        let mut next = Vec::with_capacity(result.len() * options.len());
        for prefix in &result {
            for option in options {
                let mut combined = prefix.clone();
                combined.extend(option.iter().copied());
                next.push(combined);
            }
        }
        result = next;
    }
    result
        .into_iter()
        .map(|indices| DiffMultiset::from_indices(&indices))
        .collect()
}

/// The right-hand side of the differential identity:
/// `(-1)^m * (vol(trunc((x^s * x^I * x^{(1-p)*1})^{1/p})))^p`,
/// where a zero marker from the root or the truncation gives 0.
pub fn differential_rhs(
    gci: &GenericCI,
    s_vec: &Monomial,
    multiset: &DiffMultiset,
) -> Result<RationalFunction, GenericError> {
    if !multiset.satisfies_property_star(gci) {
        return Err(GenericError::PropertyStarViolated);
    }
    if s_vec.degree() != gci.socle_degree() {
        return Err(GenericError::DegreeMismatch {
            expected: gci.socle_degree(),
            got: s_vec.degree(),
        });
    }
    let p = gci.characteristic();
    let k = gci.coeff_field().clone();
    let m = gci.nvars();

    let shift = LaurentMonomial::new(vec![1 - p as i64; m]);
    let laurent = LaurentMonomial::from(s_vec)
        .mul(&LaurentMonomial::from(&multiset.x_monomial(gci)))
        .mul(&shift);

    let Some(root) = laurent.p_th_root(p) else {
        return Ok(k.zero());
    };
    let Some(mono) = root.to_monomial() else {
        // Truncation kills any root with a negative exponent.
        return Ok(k.zero());
    };
    let vol = gci.vol(&mono)?;
    let sign = k.from_i64(if m.is_multiple_of(2) { 1 } else { -1 });
    Ok(sign.mul(&vol.pow(p as u32)))
}

/// Exhaustively checks the differential identities: for every exponent vector
/// of the socle degree and every multiset with exactly `p-1` entries per
/// generator, the derivative of the generic residue equals the closed form.
pub fn verify_differential(gci: &GenericCI) -> VerificationReport {
    let instance = gci.describe();
    let multisets = property_star_multisets(gci);
    let s_vectors = monomials_of_degree(gci.nvars(), gci.socle_degree());
    let mut checked = 0u64;
    let mut witnesses = Vec::new();
    for s_vec in &s_vectors {
        let base = gci.vol(s_vec).expect("socle-degree monomial");
        for multiset in &multisets {
            checked += 1;
            let lhs = diff_operator(&base, multiset);
            let rhs = differential_rhs(gci, s_vec, multiset).expect("enumerated multisets satisfy the constraint");
            if lhs != rhs {
                witnesses.push(Witness {
                    item: format!("s = {s_vec}, I = {}", multiset.describe()),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    if witnesses.is_empty() {
        VerificationReport::pass("differential", instance, checked)
    } else {
        VerificationReport::fail("differential", instance, checked, witnesses)
    }
}

/// Checks the closed-form expansion of the generator power product:
/// `g_1^{p-1} ... g_m^{p-1}` equals
/// `(-1)^m * sum over multisets I of (1/I!) * x^I * prod a_{i,r}`,
/// the multiset sum running over all `I` with exactly `p-1` entries per
/// generator (Wilson's theorem folded into the multinomial expansion).
pub fn wilson_expansion_check(gci: &GenericCI) -> VerificationReport {
    let instance = gci.describe();
    let k = gci.coeff_field().clone();
    let p = gci.characteristic() as u32;
    let m = gci.nvars();

    let mut lhs = Polynomial::one(k.clone(), m);
    for g in gci.generators() {
        lhs = &lhs * &g.pow(p - 1);
    }

    let sign = k.from_i64(if m.is_multiple_of(2) { 1 } else { -1 });
    let mut rhs = Polynomial::zero(k.clone(), m);
    let multisets = property_star_multisets(gci);
    for multiset in &multisets {
        let fact = gci.base.element(multiset.factorial() as i64);
        let fact_inv = fact.inv().expect("multiplicities stay below p");
        let aux = RationalFunction::from_poly(multiset.aux_monomial(gci));
        let coeff = sign
            .mul(&k.constant(fact_inv))
            .mul(&aux);
        let term = Polynomial::term(k.clone(), m, multiset.x_monomial(gci), coeff);
        rhs = &rhs + &term;
    }

    let difference = &lhs - &rhs;
    if difference.is_zero() {
        VerificationReport::pass("wilson_expansion", instance, multisets.len() as u64)
    } else {
        let (mono, coeff) = difference.leading_term().expect("nonzero difference");
        VerificationReport::fail(
            "wilson_expansion",
            instance,
            multisets.len() as u64,
            vec![Witness {
                item: format!("coefficient of {mono}"),
                lhs: coeff.to_string(),
                rhs: "0".to_string(),
            }],
        )
    }
}

// ---- Frobenius descent ----

/// Splits a polynomial in the auxiliary variables along the p-basis of the
/// function field over its p-th powers: `P = sum over e in [0,p)^n of
/// Q_e^p * a^e`. Coefficients stay put because `c^p = c` on the prime field.
fn p_power_components(poly: &Polynomial<Field>, p: u64) -> BTreeMap<Monomial, Polynomial<Field>> {
    let field = poly.field().clone();
    let nvars = poly.nvars();
    let p = p as u32;
    let mut components: BTreeMap<Monomial, Polynomial<Field>> = BTreeMap::new();
    for (mono, c) in poly.terms() {
        let residue = Monomial::new(mono.exponents().iter().map(|&u| u % p).collect());
        let quotient = Monomial::new(mono.exponents().iter().map(|&u| u / p).collect());
        let entry = components
            .entry(residue)
            .or_insert_with(|| Polynomial::zero(field.clone(), nvars));
        *entry = &*entry + &Polynomial::term(field.clone(), nvars, quotient, c.clone());
    }
    components
}

/// The linearization over `K` of the Frobenius-semilinear map
/// `α -> α^p * l^k` out of the degree-`i` piece of the generic quotient.
///
/// A vector `(c_1, ..., c_n)` over `K` kills the map exactly when
/// `sum_j c_j^p v_j = 0`, where `v_j` is the reduction of `b_j^p * l^k` in
/// quotient coordinates. Scaling each coordinate row by a p-th power of a
/// common denominator and splitting along the p-basis `{a^e}` of `K` over
/// `K^p` turns that into the k-linear condition `sum_j c_j * Q_{(t,e),j} = 0`
/// for every row. The semilinear map is injective over `K` if and only if
/// this polynomial matrix has full column rank, and full rank at one
/// specialization certifies full rank over `K`.
#[derive(Debug, Clone)]
pub struct DescentSystem {
    columns: usize,
    rows: Vec<Vec<Polynomial<Field>>>,
}

impl DescentSystem {
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[Vec<Polynomial<Field>>] {
        &self.rows
    }

    /// Evaluates the system at a concrete coefficient assignment.
    pub fn evaluate(&self, target: &Field, point: &[FieldElement]) -> Matrix<Field> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|q| q.eval_lifted(target, point)).collect())
            .collect();
        Matrix::from_rows(target.clone(), self.columns, rows)
    }
}

/// Builds the descent system for the semilinear map `α -> α^p * l^k` from
/// degree `i` to degree `p*i + k` of the generic quotient.
pub fn frobenius_descent_system(
    gci: &GenericCI,
    i: u32,
    k: u32,
) -> Result<DescentSystem, GenericError> {
    let p = gci.characteristic();
    let kf = gci.coeff_field().clone();
    let m = gci.nvars();
    let target_degree = (p as u32) * i + k;

    let source_slice = MacaulaySlice::new(kf.clone(), m, gci.generators(), i);
    let source_basis = source_slice.quotient_monomials();
    let target_slice = MacaulaySlice::new(kf.clone(), m, gci.generators(), target_degree);
    let quotient_coords: Vec<usize> = {
        let monos = target_slice.monomials();
        let quotient = target_slice.quotient_monomials();
        quotient
            .iter()
            .map(|q| monos.iter().position(|m| m == q).unwrap())
            .collect()
    };

    let mut ell = Polynomial::zero(kf.clone(), m);
    for v in 0..m {
        ell = &ell + &Polynomial::variable(kf.clone(), m, v);
    }
    let ell_k = ell.pow(k);

    // v_j in quotient coordinates, as rational functions.
    let mut reductions: Vec<Vec<RationalFunction>> = Vec::with_capacity(source_basis.len());
    for b in &source_basis {
        let image = ell_k.mul_monomial(&b.pow(p as u32));
        let reduced = target_slice.reduce(&image)?;
        reductions.push(quotient_coords.iter().map(|&t| reduced[t].clone()).collect());
    }

    let columns = source_basis.len();
    let mut rows = Vec::new();
    for t in 0..quotient_coords.len() {
        // Common denominator of the row, applied as a p-th power so the
        // scaling is itself a p-th power and drops out of the descent.
        let mut den = Polynomial::one(gci.base.clone(), gci.index_set.len());
        for red in &reductions {
            den = &den * red[t].denominator();
        }
        let den_p = den.pow(p as u32);
        let scaled: Vec<Polynomial<Field>> = reductions
            .iter()
            .map(|red| {
                let quotient_part = exact_poly_quotient(&den_p, red[t].denominator());
                red[t].numerator() * &quotient_part
            })
            .collect();
        // Split along the p-basis; each residue class contributes one row.
        let mut classes: BTreeMap<Monomial, Vec<Polynomial<Field>>> = BTreeMap::new();
        for (j, poly) in scaled.iter().enumerate() {
            for (residue, component) in p_power_components(poly, p) {
                let row = classes.entry(residue).or_insert_with(|| {
                    vec![Polynomial::zero(gci.base.clone(), gci.index_set.len()); columns]
                });
                row[j] = component;
            }
        }
        rows.extend(classes.into_values());
    }
    Ok(DescentSystem { columns, rows })
}

/// `num / den` for polynomials when the division is exact (used to scale a
/// row by `D^p / den_j`, where `den_j` divides `D`). Peels leading terms; the
/// leading monomial drops strictly at each step, so this terminates.
fn exact_poly_quotient(num: &Polynomial<Field>, den: &Polynomial<Field>) -> Polynomial<Field> {
    let mut remainder = num.clone();
    let mut quotient = Polynomial::zero(num.field().clone(), num.nvars());
    while let Some((lm, lc)) = remainder.leading_term() {
        let (dlm, dlc) = den.leading_term().expect("nonzero divisor");
        let q = dlm
            .divide_into(lm)
            .expect("division is exact by construction");
        let c = lc
            .try_div(dlc)
            .expect("leading coefficient is invertible");
        let t = Polynomial::term(num.field().clone(), num.nvars(), q, c);
        quotient = &quotient + &t;
        remainder = &remainder - &(&t * den);
    }
    quotient
}
