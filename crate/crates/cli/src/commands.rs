//! Subcommand bodies. Each returns its exit status and standard output so
//! the binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::Path;

use polyrank::{
    build_certificate, char_poly, classify, min_poly, verify_certificate, CertificateJson,
    DensePolynomial, Field, FieldSpec, PrimeField, Property, RankIdentityCertificate, Rationals,
};

use crate::fuzz::{run_fuzz, FuzzConfig};
use crate::io::{parse_factors, parse_matrix_file, parse_poly};
use crate::{with_matrix, CliError, EXIT_OK, EXIT_VIOLATION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(ok: bool, stdout: String) -> Self {
        Outcome {
            code: if ok { EXIT_OK } else { EXIT_VIOLATION },
            stdout,
        }
    }
}

fn coeffs<F: Field>(p: &DensePolynomial<F>) -> String {
    p.coeff_strings().join(" ")
}

fn render_certificate<F: Field>(cert: &RankIdentityCertificate<F>, failed: &[&str]) -> String {
    let bz = &cert.bezout;
    let mut out = String::new();
    let _ = writeln!(out, "field {}, n = {}", cert.a.spec(), cert.order());
    for (name, p) in [("f", &bz.f), ("g", &bz.g), ("D", &bz.gcd), ("M", &bz.lcm)] {
        let _ = writeln!(out, "{name} = {}", coeffs(p));
    }
    for (name, r) in [
        ("f", cert.rank_f),
        ("g", cert.rank_g),
        ("D", cert.rank_d),
        ("M", cert.rank_m),
    ] {
        let _ = writeln!(out, "rank {name}(A) = {r}");
    }
    let (lhs, rhs) = (cert.rank_f + cert.rank_g, cert.rank_d + cert.rank_m);
    if lhs == rhs {
        let _ = writeln!(out, "rank f(A) + rank g(A) = {lhs} = rank D(A) + rank M(A)");
    } else {
        let _ = writeln!(
            out,
            "rank f(A) + rank g(A) = {lhs}, rank D(A) + rank M(A) = {rhs}"
        );
    }
    if failed.is_empty() {
        out.push_str("verified\n");
    } else {
        let _ = writeln!(out, "FAILED: {}", failed.join(", "));
    }
    out
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Builds and verifies the certificate for `(A, f, g)`.
pub fn cmd_verify(
    matrix: &Path,
    f: &str,
    g: &str,
    cert_out: Option<&Path>,
    json: bool,
) -> Result<Outcome, CliError> {
    let m = parse_matrix_file(matrix)?;
    with_matrix!(m, |a| {
        let field = *a.field();
        let f = parse_poly(f, field)?;
        let g = parse_poly(g, field)?;
        let cert = build_certificate(&a, &f, &g)?;
        let failed = verify_certificate(&cert).failed;
        let doc = CertificateJson::from_certificate(&cert);
        let doc_text = serde_json::to_string_pretty(&doc)?;
        if let Some(path) = cert_out {
            write_file(path, &(doc_text.clone() + "\n"))?;
        }
        let stdout = if json {
            doc_text + "\n"
        } else {
            render_certificate(&cert, &failed)
        };
        Ok(Outcome::new(failed.is_empty(), stdout))
    })
}

/// Re-verifies a certificate file without trusting its recorded verdict.
pub fn cmd_verify_certificate(path: &Path, json: bool) -> Result<Outcome, CliError> {
    let doc: CertificateJson = serde_json::from_str(&read_file(path)?)?;
    fn check<F: Field>(doc: &CertificateJson, field: F, json: bool) -> Result<Outcome, CliError> {
        let cert = doc.to_certificate(field)?;
        let failed = verify_certificate(&cert).failed;
        let stdout = if json {
            serde_json::to_string_pretty(&serde_json::json!({
                "verified": failed.is_empty(),
                "failed": failed,
            }))? + "\n"
        } else {
            render_certificate(&cert, &failed)
        };
        Ok(Outcome::new(failed.is_empty(), stdout))
    }
    match doc.field_spec()? {
        FieldSpec::Rationals => check(&doc, Rationals::new(), json),
        FieldSpec::Prime(p) => check(&doc, PrimeField::new(u64::from(p))?, json),
    }
}

/// Emits the classification report; exit 0 iff it is internally consistent.
pub fn cmd_classify(
    matrix: &Path,
    property: Property,
    factors: Option<&str>,
) -> Result<Outcome, CliError> {
    match (property, factors) {
        (Property::CharFactorRankSum, None) => {
            return Err(CliError::Config("charfactors requires --factors".into()));
        }
        (p, Some(_)) if p != Property::CharFactorRankSum => {
            return Err(CliError::Config(format!(
                "--factors is only accepted with charfactors, not {p:?}"
            )));
        }
        _ => {}
    }
    let m = parse_matrix_file(matrix)?;
    with_matrix!(m, |a| {
        let factors = match factors {
            Some(text) => parse_factors(text, *a.field())?,
            None => Vec::new(),
        };
        let report = classify(&a, property, &factors)?;
        let stdout = serde_json::to_string_pretty(&report)? + "\n";
        Ok(Outcome::new(report.consistent(), stdout))
    })
}

fn poly_output<F: Field>(
    key: &str,
    p: &DensePolynomial<F>,
    json: bool,
) -> Result<Outcome, CliError> {
    let stdout = if json {
        serde_json::to_string(&serde_json::json!({ key: p.coeff_strings() }))? + "\n"
    } else {
        coeffs(p) + "\n"
    };
    Ok(Outcome::new(true, stdout))
}

pub fn cmd_minpoly(matrix: &Path, json: bool) -> Result<Outcome, CliError> {
    let m = parse_matrix_file(matrix)?;
    with_matrix!(m, |a| poly_output("min_poly", &min_poly(&a)?, json))
}

pub fn cmd_charpoly(matrix: &Path, json: bool) -> Result<Outcome, CliError> {
    let m = parse_matrix_file(matrix)?;
    with_matrix!(m, |a| poly_output("char_poly", &char_poly(&a)?, json))
}

pub fn cmd_rank(matrix: &Path, json: bool) -> Result<Outcome, CliError> {
    let m = parse_matrix_file(matrix)?;
    let r = with_matrix!(m, |a| a.rank());
    let stdout = if json {
        format!("{{\"rank\":{r}}}\n")
    } else {
        format!("{r}\n")
    };
    Ok(Outcome::new(true, stdout))
}

/// Runs the fuzz suite and prints its report as JSON.
pub fn cmd_fuzz(cfg: &FuzzConfig, threads: usize) -> Result<Outcome, CliError> {
    let report = run_fuzz(cfg, threads)?;
    Ok(Outcome::new(report.passed(), report.to_json() + "\n"))
}
