//! Command-line front end: ideal-file ingestion, subcommand dispatch, and
//! report emission.
//!
//! Exit codes: 0 when every check passes (or a certificate is issued), 1 when
//! a check fails (or certification stays inconclusive), 2 on input errors,
//! including non-regular generator sequences, which are reported together
//! with the failing Hilbert data.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::generic::build_generic_ci;
use crate::identities::{
    frobenius_det_check, verify_membership, verify_parseval, verify_vanish, LinearFunctional,
};
use crate::lefschetz::{certify_generic, Property, Shape};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::CompleteIntersection;
use crate::report::{CheckRecord, ReportDocument};
use crate::residue::{coefficient_matrix, ResidueError, ResidueMap, SplitStrategy};

#[derive(Parser, Debug)]
#[command(
    name = "cires",
    version,
    about = "Exact identity checks and Lefschetz certification for complete intersections over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify an identity on a complete intersection read from a JSON file.
    Verify {
        #[arg(value_enum)]
        subject: VerifySubject,
        /// Path to the ideal file (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Sample budget per generator for the vanishing check.
        #[arg(long, default_value_t = 50)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the differential identities of the generic reduction.
    Differential {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        /// Generator degrees, comma separated (one per variable).
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certify a generic property by seeded random specialization.
    Certify {
        #[arg(value_enum)]
        property: CertifyProperty,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        /// Extension degree k of the coefficient field F_{p^k}.
        #[arg(long = "ext-degree", default_value_t = 8)]
        ext_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifySubject {
    Parseval,
    Membership,
    Vanish,
    Frobdet,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyProperty {
    Slp,
    Anisotropy,
    Injectivity,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// On-disk ideal description. Coefficients are integers (reduced modulo the
/// characteristic on load), exponent vectors are explicit, and unknown fields
/// are rejected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub characteristic: u64,
    #[serde(default = "default_extension_degree")]
    pub extension_degree: usize,
    pub num_vars: usize,
    pub generators: Vec<Vec<TermSpec>>,
}

fn default_extension_degree() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

/// Everything `run` needs to finish: the document and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub document: ReportDocument,
    pub exit_code: i32,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: message only, exit 2.
    Input(String),
    /// Structurally valid input whose generators are not a regular sequence:
    /// the failing Hilbert report is emitted, exit 2.
    RegularSequence(ReportDocument),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::RegularSequence(_) => {
                write!(f, "the generators do not form a regular sequence")
            }
        }
    }
}

pub fn load_ideal_file(path: &PathBuf) -> Result<IdealFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("parse error in {}: {e}", path.display())))
}

/// Validates an ideal file and builds the complete intersection it describes.
/// Generator order is preserved exactly as written.
pub fn ideal_from_file(doc: &IdealFile) -> Result<CompleteIntersection, CliError> {
    if doc.num_vars == 0 {
        return Err(CliError::Input("num_vars must be at least 1".into()));
    }
    let field = Field::extension(doc.characteristic, doc.extension_degree, 0)
        .map_err(|e| CliError::Input(e.to_string()))?;
    if doc.generators.len() != doc.num_vars {
        return Err(CliError::Input(format!(
            "expected {} generators (one per variable), found {}",
            doc.num_vars,
            doc.generators.len()
        )));
    }
    let mut gens = Vec::with_capacity(doc.num_vars);
    for (i, spec) in doc.generators.iter().enumerate() {
        let mut poly = Polynomial::zero(field.clone(), doc.num_vars);
        for (j, term) in spec.iter().enumerate() {
            if term.exponents.len() != doc.num_vars {
                return Err(CliError::Input(format!(
                    "generator {} term {}: exponent vector has length {}, expected {}",
                    i + 1,
                    j + 1,
                    term.exponents.len(),
                    doc.num_vars
                )));
            }
            let mono = Monomial::new(term.exponents.clone());
            let c = field.element(term.coeff);
            poly = &poly + &Polynomial::term(field.clone(), doc.num_vars, mono, c);
        }
        gens.push(poly);
    }
    CompleteIntersection::new(field, doc.num_vars, gens)
        .map_err(|e| CliError::Input(format!("invalid ideal: {e}")))
}

fn validate_shape(m: usize, degrees: &[u32]) -> Result<(), CliError> {
    if m == 0 {
        return Err(CliError::Input("m must be at least 1".into()));
    }
    if degrees.len() != m {
        return Err(CliError::Input(format!(
            "expected {} degrees, found {}",
            m,
            degrees.len()
        )));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(CliError::Input("generator degrees must be at least 1".into()));
    }
    Ok(())
}

fn residue_map_or_report(
    ci: CompleteIntersection,
    input_echo: &serde_json::Value,
) -> Result<ResidueMap, CliError> {
    match ResidueMap::new(ci) {
        Ok(rm) => Ok(rm),
        Err(ResidueError::RegularSequenceViolation(report)) => {
            let doc = ReportDocument::new(input_echo.clone(), vec![CheckRecord::Report(report)]);
            Err(CliError::RegularSequence(doc))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

/// Runs one subcommand to a report document plus exit code.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Verify {
            subject,
            input,
            samples,
            seed,
            ..
        } => {
            let file = load_ideal_file(input)?;
            let ci = ideal_from_file(&file)?;
            let echo = serde_json::to_value(&file).expect("ideal files serialize");
            let checks = match subject {
                VerifySubject::Parseval => {
                    let rm = residue_map_or_report(ci, &echo)?;
                    vec![CheckRecord::Report(verify_parseval(&rm))]
                }
                VerifySubject::Membership => {
                    let rm = residue_map_or_report(ci, &echo)?;
                    vec![CheckRecord::Report(verify_membership(&rm))]
                }
                VerifySubject::Vanish => {
                    let rm = residue_map_or_report(ci, &echo)?;
                    let phi = LinearFunctional::from_vol(&rm);
                    let s = rm.ci().socle_degree();
                    let mut checks = Vec::new();
                    for (i, g) in rm.ci().generators().iter().enumerate() {
                        let report =
                            verify_vanish(g, s, &phi, *samples, seed.wrapping_add(i as u64))
                                .map_err(|e| CliError::Input(e.to_string()))?;
                        checks.push(CheckRecord::Report(report));
                    }
                    checks
                }
                VerifySubject::Frobdet => {
                    // The determinant identity needs no quotient; both
                    // splitting strategies are checked.
                    [SplitStrategy::MinVar, SplitStrategy::MaxVar]
                        .into_iter()
                        .map(|strategy| {
                            let n = coefficient_matrix(ci.generators(), strategy);
                            CheckRecord::Report(frobenius_det_check(n.matrix()))
                        })
                        .collect()
                }
            };
            let document = ReportDocument::new(echo, checks);
            let exit_code = if document.overall == crate::report::Status::Pass {
                0
            } else {
                1
            };
            Ok(Outcome {
                document,
                exit_code,
            })
        }
        Command::Differential { p, m, degrees, .. } => {
            validate_shape(*m, degrees)?;
            let gci = build_generic_ci(*p, *m, degrees)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let report = crate::generic::verify_differential(&gci);
            let echo = serde_json::json!({ "p": p, "m": m, "degrees": degrees });
            let document = ReportDocument::new(echo, vec![CheckRecord::Report(report)]);
            let exit_code = if document.overall == crate::report::Status::Pass {
                0
            } else {
                1
            };
            Ok(Outcome {
                document,
                exit_code,
            })
        }
        Command::Certify {
            property,
            p,
            m,
            degrees,
            trials,
            ext_degree,
            seed,
            ..
        } => {
            validate_shape(*m, degrees)?;
            let shape = Shape::new(*p, *m, degrees.clone());
            let prop = match property {
                CertifyProperty::Slp => Property::Slp,
                CertifyProperty::Anisotropy => Property::Anisotropy,
                CertifyProperty::Injectivity => Property::Injectivity,
            };
            let certificate = certify_generic(&shape, prop, *trials, *ext_degree, *seed)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let exit_code = if certificate.certified() { 0 } else { 1 };
            let echo = serde_json::json!({
                "property": prop.name(),
                "p": p,
                "m": m,
                "degrees": degrees,
                "trials": trials,
                "ext_degree": ext_degree,
                "seed": seed,
            });
            let document =
                ReportDocument::new(echo, vec![CheckRecord::Certificate(certificate)]);
            Ok(Outcome {
                document,
                exit_code,
            })
        }
    }
}

fn render(document: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = document.to_json();
            s.push('\n');
            s
        }
        Format::Text => document.to_text(),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Full dispatch: execute, render, emit, and return the process exit code.
/// Hard internal limits (like the total-degree cap) panic in library code;
/// here they are mapped to the input-error exit code.
pub fn run(command: &Command) -> i32 {
    let (format, out) = match command {
        Command::Verify { format, out, .. } => (*format, out.clone()),
        Command::Differential { format, out, .. } => (*format, out.clone()),
        Command::Certify { format, out, .. } => (*format, out.clone()),
    };
    let executed = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(command)));
    let executed = match executed {
        Ok(result) => result,
        Err(_) => {
            eprintln!("error: the computation exceeded an internal limit (see the message above)");
            return 2;
        }
    };
    match executed {
        Ok(outcome) => {
            if let Err(e) = emit(&render(&outcome.document, format), &out) {
                eprintln!("error: {e}");
                return 2;
            }
            outcome.exit_code
        }
        Err(CliError::RegularSequence(document)) => {
            eprintln!("error: the generators do not form a regular sequence");
            if emit(&render(&document, format), &out).is_err() {
                eprintln!("error: report could not be written");
            }
            2
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
