//! Matrix files and polynomial arguments.
//!
//! Matrix file layout:
//!
//! ```text
//! field Q            (or: field 7)
//! 2 2
//! 1 -1/2
//! 0 3
//! ```

use std::path::Path;

use polyrank::{
    DenseMatrix, DensePolynomial, Error, Field, FieldSpec, FpMatrix, PrimeField, QMatrix, Rationals,
};

use crate::CliError;

/// A matrix whose field was chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Q(QMatrix),
    Fp(FpMatrix),
}

/// Runs `$body` with `$a` bound to the concrete matrix of an [`AnyMatrix`].
#[macro_export]
macro_rules! with_matrix {
    ($m:expr, |$a:ident| $body:expr) => {
        match $m {
            $crate::io::AnyMatrix::Q($a) => $body,
            $crate::io::AnyMatrix::Fp($a) => $body,
        }
    };
}

impl AnyMatrix {
    pub fn spec(&self) -> FieldSpec {
        with_matrix!(self, |a| a.spec())
    }

    pub fn to_text(&self) -> String {
        with_matrix!(self, |a| a.to_text())
    }
}

impl From<QMatrix> for AnyMatrix {
    fn from(m: QMatrix) -> Self {
        AnyMatrix::Q(m)
    }
}

impl From<FpMatrix> for AnyMatrix {
    fn from(m: FpMatrix) -> Self {
        AnyMatrix::Fp(m)
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of `line` with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_body<F: Field>(field: F, lines: &[&str]) -> Result<DenseMatrix<F>, Error> {
    let dims = lines
        .get(1)
        .ok_or_else(|| perr(2, 1, "missing dimension line"))?;
    let dim_tokens = tokens(dims);
    if dim_tokens.len() != 2 {
        return Err(perr(2, 1, "expected `<nrows> <ncols>`"));
    }
    let mut dim = [0usize; 2];
    for (k, (col, tok)) in dim_tokens.iter().enumerate() {
        dim[k] = tok
            .parse()
            .ok()
            .filter(|&d: &usize| d >= 1)
            .ok_or_else(|| perr(2, *col, format!("invalid dimension `{tok}`")))?;
    }
    let [nrows, ncols] = dim;

    let mut entries = Vec::with_capacity(nrows * ncols);
    for r in 0..nrows {
        let lineno = r + 3;
        let line = lines
            .get(r + 2)
            .ok_or_else(|| perr(lineno, 1, format!("expected {nrows} rows, found {r}")))?;
        let toks = tokens(line);
        if toks.len() != ncols {
            return Err(Error::DimensionMismatch(format!(
                "line {lineno}: row has {} entries, expected {ncols}",
                toks.len()
            )));
        }
        for (col, tok) in toks {
            entries.push(field.parse_elem(tok).map_err(|m| perr(lineno, col, m))?);
        }
    }
    if let Some(extra) = lines[(nrows + 2).min(lines.len())..]
        .iter()
        .position(|l| !l.trim().is_empty())
    {
        return Err(perr(
            nrows + 3 + extra,
            1,
            "unexpected content after the last row",
        ));
    }
    DenseMatrix::new(field, nrows, ncols, entries)
}

/// Parses the text matrix format.
pub fn parse_matrix_text(text: &str) -> Result<AnyMatrix, Error> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines
        .first()
        .ok_or_else(|| perr(1, 1, "empty matrix file"))?;
    let head = tokens(header);
    let spec = match head.as_slice() {
        [(_, "field"), (col, name)] => name.parse::<FieldSpec>().map_err(|e| match e {
            Error::BadField(_) => e,
            _ => perr(1, *col, "bad field"),
        })?,
        _ => return Err(perr(1, 1, "expected `field Q` or `field <prime>`")),
    };
    Ok(match spec {
        FieldSpec::Rationals => AnyMatrix::Q(parse_body(Rationals::new(), &lines)?),
        FieldSpec::Prime(p) => AnyMatrix::Fp(parse_body(PrimeField::new(u64::from(p))?, &lines)?),
    })
}

pub fn parse_matrix_file(path: &Path) -> Result<AnyMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_matrix_text(&text)?)
}

/// Parses an ascending coefficient list such as `"1 0 -1"`.
pub fn parse_poly<F: Field>(text: &str, field: F) -> Result<DensePolynomial<F>, Error> {
    DensePolynomial::parse(text, field)
}

/// Parses `;`-separated polynomials, e.g. `"-1 1 ; -2 1"`.
pub fn parse_factors<F: Field>(text: &str, field: F) -> Result<Vec<DensePolynomial<F>>, Error> {
    text.split(';')
        .map(|part| {
            if part.trim().is_empty() {
                Err(perr(1, 1, "empty factor"))
            } else {
                parse_poly(part, field.clone())
            }
        })
        .collect()
}
