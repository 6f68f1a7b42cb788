//! JSON form of rank-identity certificates.
//!
//! Polynomials are ascending arrays of coefficient strings, matrices are
//! arrays of rows of entry strings. Besides the Bezout data and the six block
//! matrices the document carries `A` and its four polynomial images, so a
//! reader can re-evaluate everything without trusting the writer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::DenseMatrix;
use crate::poly::{BezoutCertificate, DensePolynomial};
use crate::rank_theorem::{verify_certificate, RankIdentityCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTuple {
    pub f: usize,
    pub g: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub field: String,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub f: Vec<String>,
    pub g: Vec<String>,
    #[serde(rename = "D")]
    pub gcd: Vec<String>,
    #[serde(rename = "M")]
    pub lcm: Vec<String>,
    pub phi1: Vec<String>,
    pub phi2: Vec<String>,
    pub psi1: Vec<String>,
    pub psi2: Vec<String>,
    #[serde(rename = "fA")]
    pub f_a: Vec<Vec<String>>,
    #[serde(rename = "gA")]
    pub g_a: Vec<Vec<String>>,
    #[serde(rename = "DA")]
    pub d_a: Vec<Vec<String>>,
    #[serde(rename = "MA")]
    pub m_a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    #[serde(rename = "C1")]
    pub c1: Vec<Vec<String>>,
    #[serde(rename = "C2")]
    pub c2: Vec<Vec<String>>,
    #[serde(rename = "L1")]
    pub l1: Vec<Vec<String>>,
    #[serde(rename = "L2")]
    pub l2: Vec<Vec<String>>,
    pub ranks: RankTuple,
    pub verified: bool,
}

impl CertificateJson {
    /// Serializes `cert`, recording the outcome of a fresh verification.
    pub fn from_certificate<F: Field>(cert: &RankIdentityCertificate<F>) -> Self {
        let bz = &cert.bezout;
        CertificateJson {
            field: cert.a.spec().to_string(),
            n: cert.order(),
            a: cert.a.to_string_rows(),
            f: bz.f.coeff_strings(),
            g: bz.g.coeff_strings(),
            gcd: bz.gcd.coeff_strings(),
            lcm: bz.lcm.coeff_strings(),
            phi1: bz.phi1.coeff_strings(),
            phi2: bz.phi2.coeff_strings(),
            psi1: bz.psi1.coeff_strings(),
            psi2: bz.psi2.coeff_strings(),
            f_a: cert.f_a.to_string_rows(),
            g_a: cert.g_a.to_string_rows(),
            d_a: cert.d_a.to_string_rows(),
            m_a: cert.m_a.to_string_rows(),
            b: cert.b.to_string_rows(),
            c: cert.c.to_string_rows(),
            c1: cert.c1.to_string_rows(),
            c2: cert.c2.to_string_rows(),
            l1: cert.l1.to_string_rows(),
            l2: cert.l2.to_string_rows(),
            ranks: RankTuple {
                f: cert.rank_f,
                g: cert.rank_g,
                d: cert.rank_d,
                m: cert.rank_m,
            },
            verified: verify_certificate(cert).is_ok(),
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    /// Rebuilds the certificate over `field`, which must match `self.field`.
    pub fn to_certificate<F: Field>(&self, field: F) -> Result<RankIdentityCertificate<F>> {
        if self.field_spec()? != field.spec() {
            return Err(Error::DomainMismatch);
        }
        let poly = |c: &[String]| -> Result<DensePolynomial<F>> {
            DensePolynomial::parse(&c.join(" "), field.clone())
        };
        let mat = |rows: &[Vec<String>]| DenseMatrix::from_string_rows(field.clone(), rows);
        let a = mat(&self.a)?;
        if a.nrows() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "declared n = {} but A has {} rows",
                self.n,
                a.nrows()
            )));
        }
        Ok(RankIdentityCertificate {
            a,
            bezout: BezoutCertificate {
                f: poly(&self.f)?,
                g: poly(&self.g)?,
                gcd: poly(&self.gcd)?,
                lcm: poly(&self.lcm)?,
                phi1: poly(&self.phi1)?,
                phi2: poly(&self.phi2)?,
                psi1: poly(&self.psi1)?,
                psi2: poly(&self.psi2)?,
            },
            f_a: mat(&self.f_a)?,
            g_a: mat(&self.g_a)?,
            d_a: mat(&self.d_a)?,
            m_a: mat(&self.m_a)?,
            b: mat(&self.b)?,
            c: mat(&self.c)?,
            c1: mat(&self.c1)?,
            c2: mat(&self.c2)?,
            l1: mat(&self.l1)?,
            l2: mat(&self.l2)?,
            rank_f: self.ranks.f,
            rank_g: self.ranks.g,
            rank_d: self.ranks.d,
            rank_m: self.ranks.m,
        })
    }
}
