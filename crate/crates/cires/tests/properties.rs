//! Property-based invariants spanning several modules: pairing/Frobenius
//! compatibility, reproduction, quotient backends agreeing with each other,
//! linearity and well-definedness of the residue map, and determinant
//! identities on random matrices.

use proptest::prelude::*;

use cires::identities::parseval_rhs;
use cires::laurent::{LaurentMonomial, LaurentPolynomial};
use cires::lefschetz::{linear_form, semilinear_power_matrix, specialize, Shape};
use cires::linalg::Matrix;
use cires::poly::{contraction, monomials_of_degree, Polynomial};
use cires::quotient::{buchberger, CompleteIntersection, MacaulaySlice, QuotientStructure};
use cires::residue::{PolyMatrix, ResidueMap, SplitStrategy};
use cires::rng::SplitMix64;
use cires::Field;

fn sample_field(index: u64) -> Field {
    match index % 5 {
        0 => Field::prime(2).unwrap(),
        1 => Field::prime(3).unwrap(),
        2 => Field::prime(5).unwrap(),
        3 => Field::extension(2, 2, 0).unwrap(),
        _ => Field::extension(3, 2, 0).unwrap(),
    }
}

fn random_homogeneous(
    field: &Field,
    nvars: usize,
    degree: u32,
    rng: &mut SplitMix64,
) -> Polynomial<Field> {
    let terms = monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|m| (m, field.random_element(rng)));
    Polynomial::from_terms(field.clone(), nvars, terms)
}

const CI_SHAPES: [(u64, usize, &[u32]); 6] = [
    (2, 2, &[2, 2]),
    (3, 2, &[2, 2]),
    (5, 2, &[2, 2]),
    (2, 3, &[2, 2, 2]),
    (3, 2, &[2, 3]),
    (2, 1, &[4]),
];

fn random_regular_ci(shape_index: u64, seed: u64) -> CompleteIntersection {
    let (p, m, degrees) = CI_SHAPES[(shape_index % CI_SHAPES.len() as u64) as usize];
    specialize(&Shape::new(p, m, degrees.to_vec()), 1, seed)
        .expect("regular instances exist")
        .quotient()
        .ci()
        .clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Contraction of p-th powers is the Frobenius of the contraction.
    #[test]
    fn contraction_commutes_with_frobenius_powers(
        field_index in 0u64..5,
        seed in any::<u64>(),
        nvars in 1usize..3,
        degree in 1u32..4,
    ) {
        let field = sample_field(field_index);
        let p = field.characteristic() as u32;
        let mut rng = SplitMix64::new(seed);
        let u = random_homogeneous(&field, nvars, degree, &mut rng);
        let w = random_homogeneous(&field, nvars, degree, &mut rng);
        let lhs = contraction(&u.pow(p), &w.pow(p)).unwrap();
        let rhs = contraction(&u, &w).unwrap().frobenius();
        prop_assert_eq!(lhs, rhs);
    }

    /// Expanding any homogeneous polynomial against the monomial basis via
    /// the pairing reproduces the polynomial.
    #[test]
    fn contraction_reproduces_polynomials(
        field_index in 0u64..5,
        seed in any::<u64>(),
        nvars in 1usize..4,
        degree in 0u32..4,
    ) {
        let field = sample_field(field_index);
        let mut rng = SplitMix64::new(seed);
        let w = random_homogeneous(&field, nvars, degree, &mut rng);
        let mut rebuilt = Polynomial::zero(field.clone(), nvars);
        for u in monomials_of_degree(nvars, degree) {
            let u_poly = Polynomial::term(field.clone(), nvars, u.clone(), field.one());
            let c = contraction(&u_poly, &w).unwrap();
            rebuilt = &rebuilt + &u_poly.scalar_mul(&c);
        }
        prop_assert_eq!(rebuilt, w);
    }

    /// A successful p-th root raised back to the p-th power is the identity.
    #[test]
    fn p_th_root_round_trip(
        exps in prop::collection::vec(-6i64..6, 1..4),
        p in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let scaled: Vec<i64> = exps.iter().map(|&e| e * p as i64).collect();
        let u = LaurentMonomial::new(scaled);
        let root = u.p_th_root(p).expect("exponents are multiples of p");
        prop_assert_eq!(root.pow(p as u32), u);
    }

    /// Truncation is linear: it commutes with addition and scalar action.
    #[test]
    fn truncation_is_linear(
        seed in any::<u64>(),
        field_index in 0u64..5,
        scalar in 0i64..7,
    ) {
        let field = sample_field(field_index);
        let mut rng = SplitMix64::new(seed);
        let build = |rng: &mut SplitMix64| {
            let mut acc = LaurentPolynomial::zero(field.clone(), 2);
            for _ in 0..4 {
                let mono = LaurentMonomial::new(vec![
                    rng.next_below(9) as i64 - 4,
                    rng.next_below(9) as i64 - 4,
                ]);
                let term = LaurentPolynomial::term(field.clone(), 2, mono, field.random_element(rng));
                acc = acc.try_add(&term).unwrap();
            }
            acc
        };
        let f = build(&mut rng);
        let g = build(&mut rng);
        let c = field.element(scalar);
        let lhs = f.scalar_mul(&c).try_add(&g).unwrap().truncate();
        let rhs = &f.truncate().scalar_mul(&c) + &g.truncate();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The dimensions of the graded pieces are symmetric about s/2.
    #[test]
    fn hilbert_function_is_symmetric(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let q = QuotientStructure::new(ci.clone());
        let s = ci.socle_degree();
        for d in 0..=s {
            prop_assert_eq!(q.dimension(d).unwrap(), q.dimension(s - d).unwrap());
        }
    }

    /// Normal forms define a ring map: reducing a product equals reducing
    /// the product of reductions.
    #[test]
    fn normal_form_is_multiplicative(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let q = QuotientStructure::new(ci.clone());
        let mut rng = SplitMix64::new(seed ^ 0xABCD);
        let f = random_homogeneous(ci.field(), ci.nvars(), 2, &mut rng);
        let g = random_homogeneous(ci.field(), ci.nvars(), 1, &mut rng);
        let direct = q.normal_form(&(&f * &g));
        let nested = q.normal_form(&(&q.normal_form(&f) * &q.normal_form(&g)));
        prop_assert_eq!(direct, nested);
    }

    /// The Macaulay slice's codimension equals the standard-monomial count
    /// in every degree: the two quotient backends agree dimension-wise.
    #[test]
    fn macaulay_codimension_matches_staircase(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let q = QuotientStructure::new(ci.clone());
        for d in 0..=ci.socle_degree() + 1 {
            let slice = MacaulaySlice::new(ci.field().clone(), ci.nvars(), ci.generators(), d);
            prop_assert_eq!(slice.codimension(), q.dimension(d).unwrap());
            prop_assert_eq!(slice.quotient_monomials(), q.standard_monomials(d).unwrap());
        }
    }

    /// Rerunning Buchberger on a reduced basis returns it unchanged.
    #[test]
    fn buchberger_is_idempotent_on_random_input(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let gb = buchberger(ci.generators());
        prop_assert_eq!(buchberger(&gb), gb);
    }

    /// vol is linear, kills the ideal slice, is independent of the splitting
    /// strategy, and agrees between the two backends.
    #[test]
    fn residue_map_properties(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let s = ci.socle_degree();
        let field = ci.field().clone();
        let min = ResidueMap::with_strategy(ci.clone(), SplitStrategy::MinVar).unwrap();
        let max = ResidueMap::with_strategy(ci.clone(), SplitStrategy::MaxVar).unwrap();
        let mut rng = SplitMix64::new(seed ^ 0x5555);

        let w1 = random_homogeneous(&field, ci.nvars(), s, &mut rng);
        let w2 = random_homogeneous(&field, ci.nvars(), s, &mut rng);
        let a = field.random_element(&mut rng);

        // Linearity.
        let combo = &w1.scalar_mul(&a) + &w2;
        let lhs = min.vol(&combo).unwrap();
        let rhs = min.vol(&w1).unwrap().try_mul(&a).unwrap()
            .try_add(&min.vol(&w2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);

        // Ideal slice maps to zero.
        for (i, g) in ci.generators().iter().enumerate() {
            let d = ci.degrees()[i];
            if d > s { continue; }
            for h in monomials_of_degree(ci.nvars(), s - d) {
                prop_assert!(min.vol(&g.mul_monomial(&h)).unwrap().is_zero());
            }
        }

        // Strategy independence and backend agreement.
        for w in monomials_of_degree(ci.nvars(), s) {
            let v = min.vol_monomial(&w).unwrap();
            prop_assert_eq!(&v, &max.vol_monomial(&w).unwrap());
            let poly = Polynomial::term(field.clone(), ci.nvars(), w, field.one());
            prop_assert_eq!(&v, &min.vol_macaulay(&poly).unwrap());
        }
    }

    /// The main identity holds on random regular sequences, and its right
    /// side is linear in w.
    #[test]
    fn parseval_holds_on_random_instances(shape in 0u64..6, seed in any::<u64>()) {
        let ci = random_regular_ci(shape, seed);
        let rm = ResidueMap::new(ci.clone()).unwrap();
        let field = ci.field().clone();
        let mut rng = SplitMix64::new(seed ^ 0x1234);
        let w = random_homogeneous(&field, ci.nvars(), ci.socle_degree(), &mut rng);
        prop_assert_eq!(rm.vol(&w).unwrap(), parseval_rhs(&rm, &w).unwrap());
    }

    /// Determinants of entrywise p-th powers equal p-th powers of
    /// determinants for arbitrary polynomial matrices.
    #[test]
    fn frobenius_determinant_identity_on_random_matrices(
        field_index in 0u64..3,
        seed in any::<u64>(),
        size in 1usize..4,
        degree in 1u32..3,
    ) {
        let field = sample_field(field_index); // prime fields only (indices 0..3)
        let p = field.characteristic() as u32;
        let mut rng = SplitMix64::new(seed);
        let entries: Vec<Vec<Polynomial<Field>>> = (0..size)
            .map(|_| {
                (0..size)
                    .map(|_| random_homogeneous(&field, size, degree, &mut rng))
                    .collect()
            })
            .collect();
        let matrix = PolyMatrix::new(entries);
        let lhs = matrix.entrywise_pow(p).determinant();
        let rhs = matrix.determinant().pow(p);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The sweep report names exactly the (i, k) pairs whose matrices lack
    /// full column rank, and its restriction to k < p (the narrow range) is
    /// literally a subset of the full sweep's outcomes.
    #[test]
    fn sweep_report_matches_per_pair_ranks(shape in 0u64..6, seed in any::<u64>()) {
        let (p, m, degrees) = CI_SHAPES[(shape % CI_SHAPES.len() as u64) as usize];
        let inst = specialize(&Shape::new(p, m, degrees.to_vec()), 2, seed).unwrap();
        let q = inst.quotient();
        let report = cires::lefschetz::check_semilinear_sweep(&inst);
        let reported_failures: Vec<String> =
            report.witnesses.iter().map(|w| w.item.clone()).collect();
        let p = p as u32;
        let s = q.ci().socle_degree();
        let mut expected_failures = Vec::new();
        let mut narrow_range_failures = 0;
        for i in 0..=s / p {
            for k in 0..=s - p * i {
                let full_rank = semilinear_power_matrix(q, i, k)
                    .unwrap()
                    .has_full_column_rank();
                if !full_rank {
                    expected_failures
                        .push(format!("(i, k) = ({i}, {k}): rank of the semilinear map"));
                    if k < p {
                        narrow_range_failures += 1;
                    }
                }
            }
        }
        prop_assert_eq!(&reported_failures, &expected_failures);
        // Subset relation: the narrow range cannot fail more often than the
        // whole sweep does.
        prop_assert!(narrow_range_failures <= expected_failures.len());
    }

    /// On instances certified for the Strong Lefschetz Property, the pairing
    /// (α, β) -> vol(α * l^{s-2i} * β) on each degree-i piece is
    /// nondegenerate: its Gram matrix has full rank.
    #[test]
    fn certified_instances_have_nondegenerate_pairings(seed in any::<u64>()) {
        let shape = Shape::new(2, 2, vec![2, 2]);
        let inst = specialize(&shape, 8, seed).unwrap();
        let q = inst.quotient();
        if !cires::lefschetz::check_slp_char2(&inst).unwrap().passed() {
            // Rank can degenerate at unlucky points; certification resamples.
            return Ok(());
        }
        let rm = ResidueMap::new(q.ci().clone()).unwrap();
        let field = q.ci().field().clone();
        let s = q.ci().socle_degree();
        for i in 0..=s / 2 {
            let basis = q.standard_monomials(i).unwrap().to_vec();
            let ell = linear_form(&field, q.ci().nvars()).pow(s - 2 * i);
            let mut gram = Matrix::zeros(field.clone(), basis.len(), basis.len());
            for (r, alpha) in basis.iter().enumerate() {
                for (c, beta) in basis.iter().enumerate() {
                    let prod = ell.mul_monomial(alpha).mul_monomial(beta);
                    gram.set(r, c, rm.vol(&prod).unwrap());
                }
            }
            prop_assert_eq!(gram.rank(), basis.len());
        }
    }
}
