//! Exact linear algebra for ranks of matrix polynomials.
//!
//! For polynomials `f, g` with gcd `D` and lcm `M`, and any square matrix
//! `A` over a field, `rank f(A) + rank g(A) = rank D(A) + rank M(A)`. This
//! crate computes both sides exactly over `Q` and GF(p), produces a
//! self-contained certificate for every instance (Bezout data plus the block
//! elimination that moves `diag(f(A), g(A))` to `antidiag(D(A), -M(A))`),
//! and derives rank-based classifiers for idempotent, involutive, tripotent
//! and `A^3 = A^5` matrices.
//!
//! All algorithms are generic over a [`Field`] descriptor; the aliases below
//! name the two concrete instantiations used by the command-line tool.

pub mod classifiers;
pub mod error;
pub mod export;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod rank_theorem;
pub mod spectral;

pub use classifiers::{classify, ClassificationReport, Property, Statement};
pub use error::{Error, Result};
pub use export::CertificateJson;
pub use field::{Field, FieldKind, FieldScalar, FieldSpec, PrimeField, RationalField};
pub use matrix::{horner_eval, DenseMatrix, DEFAULT_MAX_ORDER};
pub use poly::{coprime, pairwise_coprime, xgcd, BezoutCertificate, DensePolynomial};
pub use rank_theorem::{
    build_certificate, verify_certificate, RankIdentityCertificate, Verification,
};
pub use spectral::{char_poly, min_poly, poly_divides, SpectralData};

/// Arbitrary-precision rationals.
pub type Rationals = RationalField<num_bigint::BigInt>;
pub type Rational = num_rational::BigRational;

pub type QScalar = FieldScalar<Rationals>;
pub type QPoly = DensePolynomial<Rationals>;
pub type QMatrix = DenseMatrix<Rationals>;
pub type QCertificate = RankIdentityCertificate<Rationals>;

pub type FpScalar = FieldScalar<PrimeField>;
pub type FpPoly = DensePolynomial<PrimeField>;
pub type FpMatrix = DenseMatrix<PrimeField>;
pub type FpCertificate = RankIdentityCertificate<PrimeField>;
