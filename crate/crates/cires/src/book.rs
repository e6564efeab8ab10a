//! Doc-tested includes of the guide in `book/`, so `cargo test --doc` keeps
//! every code block in the book compiling and passing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/quotients.md")]
pub mod quotients {}

#[doc = include_str!("../../../book/src/residue.md")]
pub mod residue {}

#[doc = include_str!("../../../book/src/parseval.md")]
pub mod parseval {}

#[doc = include_str!("../../../book/src/generic.md")]
pub mod generic {}

#[doc = include_str!("../../../book/src/lefschetz.md")]
pub mod lefschetz {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
