//! Exact commutative algebra for Artinian complete intersections over finite
//! fields: residue maps, Parseval-Rayleigh and differential identities, and
//! Strong Lefschetz / anisotropy certification by random specialization.
//!
//! Everything is computed exactly; there are no floating-point numbers and no
//! tolerances anywhere. All randomized procedures are seeded and reproducible
//! byte for byte.
//!
//! See the `book/` directory for a guided tour, and the `cires` binary for
//! the command-line interface.

#[cfg(doctest)]
mod book;
pub mod cli;
pub mod field;
pub mod generic;
pub mod identities;
pub mod laurent;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod residue;
pub mod rng;
pub mod scalar;

pub use field::{Field, FieldElement, FieldError};
pub use generic::{
    build_generic_ci, diff_operator, differential_rhs, property_star_multisets,
    verify_differential, wilson_expansion_check, DiffMultiset, FunctionField, GenericCI,
    GenericError, RationalFunction,
};
pub use identities::{
    frobenius_det_check, parseval_rhs, verify_membership, verify_parseval, verify_vanish,
    IdentityError, LinearFunctional,
};
pub use lefschetz::{
    certify_generic, check_anisotropy, check_injectivity, check_injectivity_all, check_slp_char2,
    check_semilinear_sweep, exhaustive_semilinear_injectivity, linear_form, linear_power_matrix,
    semilinear_power_matrix, specialize, LefschetzError, Property, Shape, SpecializedInstance,
};
pub use poly::{contraction, monomials_of_degree, Monomial, PolyError, Polynomial};
pub use quotient::{
    buchberger, expected_hilbert_function, CompleteIntersection, MacaulaySlice, QuotientError,
    QuotientStructure,
};
pub use report::{
    CertStatus, Certificate, CheckRecord, ReportDocument, ShapeDesc, Status, VerificationReport,
    Witness,
};
pub use residue::{
    coefficient_matrix, CoefficientMatrix, PolyMatrix, ResidueError, ResidueMap, SplitStrategy,
};
pub use scalar::ScalarField;

#[cfg(test)]
mod tests {
    // Everything is immutable after construction and safe to share across
    // threads; keep that statically checked.
    #[test]
    fn core_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::Field>();
        check::<crate::FieldElement>();
        check::<crate::Polynomial<crate::Field>>();
        check::<crate::QuotientStructure>();
        check::<crate::ResidueMap>();
        check::<crate::GenericCI>();
        check::<crate::RationalFunction>();
        check::<crate::VerificationReport>();
        check::<crate::Certificate>();
    }
}
