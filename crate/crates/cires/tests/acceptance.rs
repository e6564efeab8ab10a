//! Acceptance suite: every release-gating criterion as one test, each
//! printing a single PASS/FAIL line. All identities are exact over finite
//! fields, so every comparison below is equality with zero tolerance.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use cires::generic::{build_generic_ci, verify_differential, wilson_expansion_check};
use cires::identities::{
    frobenius_det_check, verify_membership, verify_parseval, verify_vanish, LinearFunctional,
};
use cires::lefschetz::{
    certify_generic, check_slp_char2, exhaustive_semilinear_injectivity, semilinear_power_matrix,
    specialize, Property, Shape, SpecializedInstance,
};
use cires::poly::{monomials_of_degree, Monomial, Polynomial};
use cires::quotient::{CompleteIntersection, QuotientStructure};
use cires::residue::{PolyMatrix, ResidueMap, SplitStrategy};
use cires::rng::SplitMix64;
use cires::Field;

fn conclude(criterion: &str, ok: bool) {
    println!(
        "[acceptance] {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed");
}

fn monomial_ci(p: u64, degrees: &[u32]) -> CompleteIntersection {
    let field = Field::prime(p).unwrap();
    let m = degrees.len();
    let gens = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut exps = vec![0u32; m];
            exps[i] = d;
            Polynomial::term(field.clone(), m, Monomial::new(exps), field.one())
        })
        .collect();
    CompleteIntersection::new(field, m, gens).unwrap()
}

fn worked_f3_ci() -> CompleteIntersection {
    let f3 = Field::prime(3).unwrap();
    let g1 = Polynomial::from_terms(
        f3.clone(),
        2,
        [
            (Monomial::new(vec![2, 0]), f3.one()),
            (Monomial::new(vec![0, 2]), f3.one()),
        ],
    );
    let g2 = Polynomial::term(f3.clone(), 2, Monomial::new(vec![1, 1]), f3.one());
    CompleteIntersection::new(f3, 2, vec![g1, g2]).unwrap()
}

fn degree_tuples(m: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=max).map(move |d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    out
}

fn random_regular_ci(p: u64, m: usize, degrees: &[u32], seed: u64) -> CompleteIntersection {
    let shape = Shape::new(p, m, degrees.to_vec());
    specialize(&shape, 1, seed)
        .expect("random regular sequence exists at desk scale")
        .quotient()
        .ci()
        .clone()
}

const RANDOM_SHAPES: [(u64, usize, &[u32]); 4] = [
    (2, 2, &[2, 2]),
    (2, 3, &[2, 2, 2]),
    (3, 2, &[2, 3]),
    (5, 2, &[2, 2]),
];

/// The instance corpus shared by the identity criteria: all monomial ideals
/// for p in {2,3,5}, m <= 3, d_i <= 3; the worked instance over F_3; and 20
/// seeded random regular sequences (5 per shape).
fn corpus() -> Vec<CompleteIntersection> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        for m in 1..=3usize {
            for degrees in degree_tuples(m, 3) {
                out.push(monomial_ci(p, &degrees));
            }
        }
    }
    out.push(worked_f3_ci());
    for (p, m, degrees) in RANDOM_SHAPES {
        for seed in 0..5u64 {
            out.push(random_regular_ci(p, m, degrees, 1000 + seed));
        }
    }
    out
}

#[test]
fn criterion_01_parseval_suite() {
    let instances = corpus();
    assert_eq!(instances.len(), 117 + 1 + 20);
    let mut ok = true;
    for ci in instances {
        let rm = ResidueMap::new(ci).expect("corpus instances are regular");
        let report = verify_parseval(&rm);
        if !report.passed() {
            eprintln!("parseval failed on {}", report.instance);
            ok = false;
        }
    }
    conclude("criterion 01: parseval identity on the full corpus", ok);
}

#[test]
fn criterion_02_residue_map_well_defined() {
    let mut ok = true;
    for ci in corpus() {
        let min = ResidueMap::with_strategy(ci.clone(), SplitStrategy::MinVar).unwrap();
        let max = ResidueMap::with_strategy(ci.clone(), SplitStrategy::MaxVar).unwrap();
        if min.z0_coefficient().is_zero() || max.z0_coefficient().is_zero() {
            ok = false;
        }
        for w in monomials_of_degree(ci.nvars(), ci.socle_degree()) {
            if min.vol_monomial(&w).unwrap() != max.vol_monomial(&w).unwrap() {
                eprintln!("strategy disagreement on {} at {w}", ci.describe());
                ok = false;
            }
        }
    }
    conclude(
        "criterion 02: vol independent of the splitting strategy, z0 nonzero",
        ok,
    );
}

#[test]
fn criterion_03_membership_suite() {
    let mut ok = true;
    for ci in corpus() {
        let rm = ResidueMap::new(ci).unwrap();
        let report = verify_membership(&rm);
        if !report.passed() {
            eprintln!("membership failed on {}", report.instance);
            ok = false;
        }
    }
    // 50 random polynomial matrices per characteristic, linear entries in
    // three variables.
    for p in [2u64, 3, 5] {
        let field = Field::prime(p).unwrap();
        let mut rng = SplitMix64::new(90 + p);
        for _ in 0..50 {
            let entries: Vec<Vec<Polynomial<Field>>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let mut acc = Polynomial::zero(field.clone(), 3);
                            for v in 0..3 {
                                let c = field.element_by_index(rng.next_below(p));
                                if !c.is_zero() {
                                    acc = &acc
                                        + &Polynomial::term(
                                            field.clone(),
                                            3,
                                            Monomial::variable(3, v),
                                            c,
                                        );
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            let matrix = PolyMatrix::new(entries);
            if !frobenius_det_check(&matrix).passed() {
                eprintln!("frobenius determinant identity failed over F_{p}");
                ok = false;
            }
        }
    }
    conclude(
        "criterion 03: membership on the corpus + 150 frobenius determinant checks",
        ok,
    );
}

#[test]
fn criterion_04_vanishing_sums_suite() {
    let mut ok = true;
    let mut ran = 0u64;
    for ci in corpus() {
        let rm = ResidueMap::new(ci).unwrap();
        let phi = LinearFunctional::from_vol(&rm);
        let s = rm.ci().socle_degree();
        for (i, g) in rm.ci().generators().iter().enumerate() {
            // The vanishing statement assumes deg g <= s; generators above
            // the socle degree are outside its hypotheses.
            if rm.ci().degrees()[i] > s {
                continue;
            }
            let report = verify_vanish(g, s, &phi, 50, 4000 + i as u64)
                .expect("vol kills every ideal slice");
            ran += 1;
            if !report.passed() {
                eprintln!("vanishing failed on {} generator {}", report.instance, i + 1);
                ok = false;
            }
        }
    }
    conclude(
        &format!("criterion 04: vanishing sums with phi = vol and g = each generator ({ran} runs, 50 samples each)"),
        ok,
    );
}

#[test]
fn criterion_05_differential_identities() {
    let mut ok = true;
    let mut total = 0;
    for (p, m, degrees, expected) in [
        (2u64, 1usize, vec![2u32], 1u64),
        (2, 1, vec![3], 1),
        (3, 1, vec![2], 1),
        (2, 2, vec![2, 2], 27),
    ] {
        let gci = build_generic_ci(p, m, &degrees).unwrap();
        let report = verify_differential(&gci);
        total += report.checked;
        if !report.passed() || report.checked != expected {
            eprintln!(
                "differential identities failed on {} ({} checked, expected {})",
                report.instance, report.checked, expected
            );
            ok = false;
        }
    }
    conclude(
        &format!("criterion 05: differential identities, {total} exact rational-function checks"),
        ok,
    );
}

#[test]
fn criterion_06_power_product_expansion() {
    let mut ok = true;
    for (p, m, degrees) in [(2u64, 2usize, vec![2u32, 2]), (3, 1, vec![2])] {
        let gci = build_generic_ci(p, m, &degrees).unwrap();
        let report = wilson_expansion_check(&gci);
        if !report.passed() {
            eprintln!("power-product expansion failed on {}", report.instance);
            ok = false;
        }
    }
    conclude(
        "criterion 06: symbolic generator power-product expansion",
        ok,
    );
}

#[test]
fn criterion_07_slp_certification() {
    let mut ok = true;
    for degrees in [vec![2u32, 2], vec![2, 3]] {
        let shape = Shape::new(2, 2, degrees);
        let cert = certify_generic(&shape, Property::Slp, 5, 8, 7).unwrap();
        if !cert.certified() {
            eprintln!("slp certification inconclusive for {:?}", cert.shape);
            ok = false;
        }
    }
    let shape3 = Shape::new(2, 3, vec![2, 2, 2]);
    let cert = certify_generic(&shape3, Property::Slp, 5, 8, 7).unwrap();
    if !cert.certified() {
        eprintln!("slp certification inconclusive for {:?}", cert.shape);
        ok = false;
    }

    // Negative control: the square-free monomial ideal fails in every run.
    let control = monomial_ci(2, &[2, 2]);
    let inst = negative_control_instance(control);
    for _ in 0..3 {
        let report = check_slp_char2(&inst).unwrap();
        if report.passed() {
            eprintln!("negative control unexpectedly passed the SLP check");
            ok = false;
        }
    }
    conclude(
        "criterion 07: Strong Lefschetz certificates at p = 2 + deterministic negative control",
        ok,
    );
}

fn negative_control_instance(ci: CompleteIntersection) -> SpecializedInstance {
    // A fixed instance wrapped the way the rank checks expect; no sampling.
    SpecializedInstance::fixed(Shape::new(2, 2, vec![2, 2]), ci)
}

#[test]
fn criterion_08_anisotropy_certification_and_kernel_oracle() {
    let mut ok = true;
    for (p, m, degrees) in [
        (2u64, 2usize, vec![2u32, 2]),
        (3, 2, vec![2, 2]),
        (2, 3, vec![2, 2, 2]),
    ] {
        let shape = Shape::new(p, m, degrees);
        let cert = certify_generic(&shape, Property::Anisotropy, 5, 8, 21).unwrap();
        if !cert.certified() {
            eprintln!("anisotropy certification inconclusive for {:?}", cert.shape);
            ok = false;
        }
    }

    // Exhaustive semilinear/kernel equivalence on small instances: quotient
    // dimension at most 8, fields of size at most 8.
    let small: Vec<QuotientStructure> = vec![
        specialize(&Shape::new(2, 2, vec![2, 2]), 2, 31)
            .unwrap()
            .quotient()
            .clone(),
        specialize(&Shape::new(2, 2, vec![2, 2]), 3, 32)
            .unwrap()
            .quotient()
            .clone(),
        specialize(&Shape::new(3, 2, vec![2, 2]), 1, 33)
            .unwrap()
            .quotient()
            .clone(),
        QuotientStructure::new(monomial_ci(2, &[2, 2])),
    ];
    for q in &small {
        let p = q.ci().field().characteristic() as u32;
        let s = q.ci().socle_degree();
        let dim: usize = (0..=s).map(|d| q.dimension(d).unwrap()).sum();
        assert!(dim <= 8);
        assert!(q.ci().field().order() <= 8);
        for i in 0..=s / p {
            for k in 0..=s - p * i {
                let rank_route = semilinear_power_matrix(q, i, k)
                    .unwrap()
                    .has_full_column_rank();
                let kernel_route = exhaustive_semilinear_injectivity(q, i, k).unwrap();
                if rank_route != kernel_route {
                    eprintln!(
                        "rank/kernel disagreement on {} at (i, k) = ({i}, {k})",
                        q.ci().describe()
                    );
                    ok = false;
                }
            }
        }
    }
    conclude(
        "criterion 08: anisotropy certificates + exhaustive semilinear/kernel equivalence",
        ok,
    );
}

#[test]
fn criterion_09_cross_backend_oracle() {
    let mut ok = true;
    for ci in corpus() {
        let rm = ResidueMap::new(ci.clone()).unwrap();
        for w in monomials_of_degree(ci.nvars(), ci.socle_degree()) {
            let poly = Polynomial::term(ci.field().clone(), ci.nvars(), w.clone(), ci.field().one());
            if rm.vol(&poly).unwrap() != rm.vol_macaulay(&poly).unwrap() {
                eprintln!("backend disagreement on {} at {w}", ci.describe());
                ok = false;
            }
        }
    }

    // Generic residues specialized at random points match the concrete map.
    let gci = build_generic_ci(2, 2, &[2, 2]).unwrap();
    let mut compared = 0u32;
    for seed in 0..10u64 {
        let inst = specialize(&Shape::new(2, 2, vec![2, 2]), 8, 500 + seed).unwrap();
        let rm = ResidueMap::new(inst.quotient().ci().clone()).unwrap();
        for w in monomials_of_degree(2, 2) {
            let symbolic = gci.vol(&w).unwrap();
            let Some(specialized) = symbolic.eval(inst.field(), inst.assignment()) else {
                continue;
            };
            compared += 1;
            if specialized != rm.vol_monomial(&w).unwrap() {
                eprintln!("specialized generic vol disagreed at seed {seed}, w = {w}");
                ok = false;
            }
        }
    }
    if compared < 10 {
        eprintln!("too few specialization comparisons ran: {compared}");
        ok = false;
    }
    conclude(
        "criterion 09: Groebner/Macaulay agreement + generic-vol specialization oracle",
        ok,
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    use cires::cli::{execute, Command, Format, VerifySubject};

    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let input = dir.join("det_square_free.json");
    std::fs::write(
        &input,
        r#"{"characteristic": 2, "num_vars": 2, "generators": [
            [{"coeff": 1, "exponents": [2, 0]}],
            [{"coeff": 1, "exponents": [0, 2]}]
        ]}"#,
    )
    .unwrap();

    let commands = vec![
        Command::Verify {
            subject: VerifySubject::Vanish,
            input: input.clone(),
            out: None,
            format: Format::Json,
            samples: 50,
            seed: 12345,
        },
        Command::Differential {
            p: 2,
            m: 2,
            degrees: vec![2, 2],
            out: None,
            format: Format::Json,
        },
        Command::Certify {
            property: cires::cli::CertifyProperty::Slp,
            p: 2,
            m: 2,
            degrees: vec![2, 2],
            trials: 5,
            ext_degree: 8,
            seed: 42,
            out: None,
            format: Format::Json,
        },
    ];
    let mut ok = true;
    for command in &commands {
        let first = execute(command).unwrap();
        let second = execute(command).unwrap();
        if first.document.to_json() != second.document.to_json() {
            eprintln!("non-deterministic report for {command:?}");
            ok = false;
        }
        if first.exit_code != second.exit_code {
            ok = false;
        }
    }
    conclude("criterion 10: byte-identical reports under identical seeds", ok);
}
