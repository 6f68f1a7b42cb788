//! The rank identity `rank f(A) + rank g(A) = rank D(A) + rank M(A)`, where
//! `D` and `M` are the gcd and lcm of `f` and `g`.
//!
//! [`build_certificate`] carries out the block elimination
//!
//! ```text
//! [f(A)  0  ]  C1  [f(A) f(A)φ1(A)]  L1  [f(A) D(A)]  L2  [ f(A)  D(A)]  C2  [  0   D(A)]
//! [ 0   g(A)]  ->  [ 0      g(A)  ]  ->  [ 0   g(A)]  ->  [-M'(A)  0  ]  ->  [-M'(A)  0 ]
//! ```
//!
//! with `M' = f·g/D`, and records every intermediate so that
//! [`verify_certificate`] can re-check the instance without trusting the
//! builder. Since `M` is stored monic, `M' = c·M` where `c` is the product of
//! the leading coefficients of `f` and `g`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{horner_raw, DenseMatrix};
use crate::poly::{xgcd, BezoutCertificate, DensePolynomial};
use crate::spectral::{min_poly, poly_divides};

/// All matrices and ranks witnessing one instance of the rank identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankIdentityCertificate<F: Field> {
    pub a: DenseMatrix<F>,
    pub bezout: BezoutCertificate<F>,
    pub f_a: DenseMatrix<F>,
    pub g_a: DenseMatrix<F>,
    pub d_a: DenseMatrix<F>,
    pub m_a: DenseMatrix<F>,
    pub b: DenseMatrix<F>,
    pub c: DenseMatrix<F>,
    pub c1: DenseMatrix<F>,
    pub c2: DenseMatrix<F>,
    pub l1: DenseMatrix<F>,
    pub l2: DenseMatrix<F>,
    pub rank_f: usize,
    pub rank_g: usize,
    pub rank_d: usize,
    pub rank_m: usize,
}

impl<F: Field> RankIdentityCertificate<F> {
    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn identity_holds(&self) -> bool {
        self.rank_f + self.rank_g == self.rank_d + self.rank_m
    }
}

fn check_inputs<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<usize> {
    let n = a.order()?;
    if f.field() != a.field() || g.field() != a.field() {
        return Err(Error::DomainMismatch);
    }
    Ok(n)
}

fn unit_upper<F: Field>(x: &DenseMatrix<F>) -> DenseMatrix<F> {
    let n = x.nrows();
    let i = DenseMatrix::identity(n, x.field().clone());
    let z = DenseMatrix::zero(n, n, x.field().clone());
    DenseMatrix::block2x2(&i, x, &z, &i).expect("square blocks")
}

fn unit_lower<F: Field>(x: &DenseMatrix<F>) -> DenseMatrix<F> {
    let n = x.nrows();
    let i = DenseMatrix::identity(n, x.field().clone());
    let z = DenseMatrix::zero(n, n, x.field().clone());
    DenseMatrix::block2x2(&i, &z, x, &i).expect("square blocks")
}

fn block_diag<F: Field>(p: &DenseMatrix<F>, q: &DenseMatrix<F>) -> DenseMatrix<F> {
    let z = DenseMatrix::zero(p.nrows(), p.nrows(), p.field().clone());
    DenseMatrix::block2x2(p, &z, &z, q).expect("square blocks")
}

fn anti_diag<F: Field>(upper: &DenseMatrix<F>, lower: &DenseMatrix<F>) -> DenseMatrix<F> {
    let z = DenseMatrix::zero(upper.nrows(), upper.nrows(), upper.field().clone());
    DenseMatrix::block2x2(&z, upper, lower, &z).expect("square blocks")
}

/// Builds the full certificate for `(A, f, g)`.
pub fn build_certificate<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<RankIdentityCertificate<F>> {
    let n = check_inputs(a, f, g)?;
    let bezout = xgcd(f, g)?;
    let eval = |p: &DensePolynomial<F>| horner_raw(p, a, n);

    let f_a = eval(f);
    let g_a = eval(g);
    let d_a = eval(&bezout.gcd);
    let m_a = eval(&bezout.lcm);
    let phi1_a = eval(&bezout.phi1);
    let phi2_a = eval(&bezout.phi2);
    let psi1_a = eval(&bezout.psi1);
    let psi2_a = eval(&bezout.psi2);

    let b = block_diag(&f_a, &g_a);
    let c1 = unit_upper(&phi1_a);
    let l1 = unit_upper(&phi2_a);
    let c2 = unit_lower(&psi2_a.neg());
    let l2 = unit_lower(&psi1_a.neg());
    let c = l2.mul_raw(&l1).mul_raw(&b).mul_raw(&c1).mul_raw(&c2);

    Ok(RankIdentityCertificate {
        rank_f: f_a.rank(),
        rank_g: g_a.rank(),
        rank_d: d_a.rank(),
        rank_m: m_a.rank(),
        a: a.clone(),
        bezout,
        f_a,
        g_a,
        d_a,
        m_a,
        b,
        c,
        c1,
        c2,
        l1,
        l2,
    })
}

/// Outcome of [`verify_certificate`]: the names of every failed invariant.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub failed: Vec<&'static str>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.failed.contains(&name)
    }
}

/// Re-checks every invariant of a certificate from scratch: polynomial
/// identities, re-evaluation of each polynomial at `A`, the block shapes,
/// the factorization `C = L2·L1·B·C1·C2`, and all ranks.
pub fn verify_certificate<F: Field>(cert: &RankIdentityCertificate<F>) -> Verification {
    let mut failed = Vec::new();
    let a = &cert.a;
    let Ok(n) = a.order() else {
        return Verification {
            failed: vec!["shape"],
        };
    };
    let field = a.field();
    let square =
        |m: &DenseMatrix<F>, k: usize| m.nrows() == k && m.ncols() == k && m.field() == field;
    let shapes_ok = [&cert.f_a, &cert.g_a, &cert.d_a, &cert.m_a]
        .iter()
        .all(|m| square(m, n))
        && [&cert.b, &cert.c, &cert.c1, &cert.c2, &cert.l1, &cert.l2]
            .iter()
            .all(|m| square(m, 2 * n))
        && cert.bezout.f.field() == field;
    if !shapes_ok {
        return Verification {
            failed: vec!["shape"],
        };
    }

    let bz = &cert.bezout;
    failed.extend(bz.check());
    if failed.contains(&"domain") {
        return Verification { failed };
    }

    let eval = |p: &DensePolynomial<F>| horner_raw(p, a, n);
    let (f_a, g_a, d_a, m_a) = (eval(&bz.f), eval(&bz.g), eval(&bz.gcd), eval(&bz.lcm));
    if f_a != cert.f_a || g_a != cert.g_a || d_a != cert.d_a || m_a != cert.m_a {
        failed.push("evaluation");
    }
    let (phi1_a, phi2_a) = (eval(&bz.phi1), eval(&bz.phi2));
    let (psi1_a, psi2_a) = (eval(&bz.psi1), eval(&bz.psi2));

    let eq2 = cert.f_a.mul_raw(&phi1_a).add(&phi2_a.mul_raw(&cert.g_a));
    if eq2.as_ref() != Ok(&cert.d_a) {
        failed.push("bezout_matrix_identity");
    }
    if psi1_a.mul_raw(&cert.d_a) != cert.g_a || cert.d_a.mul_raw(&psi2_a) != cert.f_a {
        failed.push("cofactor_matrix_identity");
    }

    if cert.b != block_diag(&cert.f_a, &cert.g_a) {
        failed.push("block_b");
    }
    let scaled_m = cert.m_a.scale(&bz.lcm_scale()).neg();
    if cert.c != anti_diag(&cert.d_a, &scaled_m) {
        failed.push("block_c");
    }
    if cert.c1 != unit_upper(&phi1_a) {
        failed.push("block_c1");
    }
    if cert.l1 != unit_upper(&phi2_a) {
        failed.push("block_l1");
    }
    if cert.c2 != unit_lower(&psi2_a.neg()) {
        failed.push("block_c2");
    }
    if cert.l2 != unit_lower(&psi1_a.neg()) {
        failed.push("block_l2");
    }

    let product = cert
        .l2
        .mul_raw(&cert.l1)
        .mul_raw(&cert.b)
        .mul_raw(&cert.c1)
        .mul_raw(&cert.c2);
    if product != cert.c {
        failed.push("factorization");
    }

    let ranks = (
        cert.f_a.rank(),
        cert.g_a.rank(),
        cert.d_a.rank(),
        cert.m_a.rank(),
    );
    if ranks != (cert.rank_f, cert.rank_g, cert.rank_d, cert.rank_m) {
        failed.push("ranks");
    }
    if !cert.identity_holds() {
        failed.push("rank_identity");
    }
    if cert.b.rank() != cert.rank_f + cert.rank_g {
        failed.push("rank_b");
    }
    if cert.c.rank() != cert.rank_d + cert.rank_m {
        failed.push("rank_c");
    }
    Verification { failed }
}

/// `rank f(A) + rank g(A) = rank D(A)` versus `M(A) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corollary1 {
    pub lhs_holds: bool,
    pub lcm_annihilates: bool,
}

impl Corollary1 {
    pub fn agree(&self) -> bool {
        self.lhs_holds == self.lcm_annihilates
    }
}

/// `rank f(A) + rank g(A) = rank D(A)` versus `m_A | M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corollary1Prime {
    pub lhs_holds: bool,
    pub minpoly_divides: bool,
}

impl Corollary1Prime {
    pub fn agree(&self) -> bool {
        self.lhs_holds == self.minpoly_divides
    }
}

/// `rank f(A)g(A) + n = rank f(A) + rank g(A)` together with coprimality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corollary2 {
    pub relation_holds: bool,
    pub coprime: bool,
}

impl Corollary2 {
    /// Coprime pairs must satisfy the relation for every matrix.
    pub fn forward_holds(&self) -> bool {
        !self.coprime || self.relation_holds
    }
}

/// For coprime `f, g`: `f(A)g(A) = 0` versus `rank f(A) + rank g(A) = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corollary3 {
    pub product_zero: bool,
    pub ranks_sum_to_n: bool,
}

impl Corollary3 {
    pub fn agree(&self) -> bool {
        self.product_zero == self.ranks_sum_to_n
    }
}

pub fn corollary1_check<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<Corollary1> {
    let n = check_inputs(a, f, g)?;
    let bz = xgcd(f, g)?;
    let lhs = horner_raw(f, a, n).rank() + horner_raw(g, a, n).rank();
    Ok(Corollary1 {
        lhs_holds: lhs == horner_raw(&bz.gcd, a, n).rank(),
        lcm_annihilates: horner_raw(&bz.lcm, a, n).is_zero(),
    })
}

pub fn corollary1prime_check<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<Corollary1Prime> {
    let n = check_inputs(a, f, g)?;
    let bz = xgcd(f, g)?;
    let lhs = horner_raw(f, a, n).rank() + horner_raw(g, a, n).rank();
    Ok(Corollary1Prime {
        lhs_holds: lhs == horner_raw(&bz.gcd, a, n).rank(),
        minpoly_divides: poly_divides(&min_poly(a)?, &bz.lcm)?,
    })
}

pub fn corollary2_check<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<Corollary2> {
    let n = check_inputs(a, f, g)?;
    let coprime = xgcd(f, g)?.is_coprime();
    let f_a = horner_raw(f, a, n);
    let g_a = horner_raw(g, a, n);
    Ok(Corollary2 {
        relation_holds: f_a.mul_raw(&g_a).rank() + n == f_a.rank() + g_a.rank(),
        coprime,
    })
}

/// A matrix violating the coprime-pair rank relation when `f` and `g` share a
/// factor: the companion matrix of their gcd, which both annihilate.
pub fn coprimality_witness<F: Field>(
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<Option<DenseMatrix<F>>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let bz = xgcd(f, g)?;
    if bz.is_coprime() {
        return Ok(None);
    }
    DenseMatrix::companion(&bz.gcd).map(Some)
}

pub fn corollary3_check<F: Field>(
    a: &DenseMatrix<F>,
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<Corollary3> {
    let n = check_inputs(a, f, g)?;
    if !xgcd(f, g)?.is_coprime() {
        return Err(Error::NotCoprime);
    }
    let f_a = horner_raw(f, a, n);
    let g_a = horner_raw(g, a, n);
    Ok(Corollary3 {
        product_zero: f_a.mul_raw(&g_a).is_zero(),
        ranks_sum_to_n: f_a.rank() + g_a.rank() == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::Rationals;

    fn qp(c: &[i64]) -> DensePolynomial<Rationals> {
        DensePolynomial::from_i64s(Rationals::new(), c)
    }

    fn q(rows: &[&[i64]]) -> DenseMatrix<Rationals> {
        DenseMatrix::from_i64_rows(Rationals::new(), rows).unwrap()
    }

    fn gp(p: u64, c: &[i64]) -> DensePolynomial<PrimeField> {
        DensePolynomial::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn idempotent_diagonal_certificate() {
        let a = q(&[&[1, 0], &[0, 0]]);
        let cert = build_certificate(&a, &qp(&[0, 1]), &qp(&[1, -1])).unwrap();
        assert_eq!(
            (cert.rank_f, cert.rank_g, cert.rank_d, cert.rank_m),
            (1, 1, 2, 0)
        );
        assert!(cert.d_a.is_identity());
        assert!(verify_certificate(&cert).is_ok());
    }

    #[test]
    fn nilpotent_block_certificate() {
        let f5 = PrimeField::new(5).unwrap();
        let j = DenseMatrix::companion(&gp(5, &[0, 0, 0, 1])).unwrap();
        let cert = build_certificate(&j, &gp(5, &[0, 1]), &gp(5, &[0, 0, 1])).unwrap();
        assert_eq!(cert.bezout.gcd, gp(5, &[0, 1]));
        assert_eq!(cert.bezout.lcm, gp(5, &[0, 0, 1]));
        assert_eq!(
            (cert.rank_f, cert.rank_g, cert.rank_d, cert.rank_m),
            (2, 1, 2, 1)
        );
        assert_eq!(cert.a.field(), &f5);
        assert!(verify_certificate(&cert).is_ok());
    }

    #[test]
    fn non_monic_inputs_keep_factorization_exact() {
        let a = q(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]);
        let f = qp(&[0, 3, 3]);
        let g = qp(&[0, 2, -2]);
        let cert = build_certificate(&a, &f, &g).unwrap();
        let v = verify_certificate(&cert);
        assert!(v.is_ok(), "{:?}", v.failed);
        assert!(cert.identity_holds());
    }

    #[test]
    fn tampering_is_detected() {
        let a = q(&[&[2, 1], &[0, 1]]);
        let cert = build_certificate(&a, &qp(&[0, 1, 1]), &qp(&[0, 1, -1])).unwrap();
        let mut bad = cert.clone();
        let x = Rationals::new().add(bad.b.get(0, 1), &Rationals::new().one());
        bad.b.set(0, 1, x);
        let v = verify_certificate(&bad);
        assert!(v.contains("factorization"), "{:?}", v.failed);

        let mut bad = cert.clone();
        bad.rank_m += 1;
        let v = verify_certificate(&bad);
        assert!(v.contains("rank_identity"), "{:?}", v.failed);
    }

    #[test]
    fn zero_polynomials_degenerate_gracefully() {
        let a = q(&[&[1, 2], &[3, 4]]);
        for (f, g) in [
            (qp(&[]), qp(&[1, 1])),
            (qp(&[0, 2]), qp(&[])),
            (qp(&[]), qp(&[])),
        ] {
            let cert = build_certificate(&a, &f, &g).unwrap();
            let v = verify_certificate(&cert);
            assert!(v.is_ok(), "{:?}", v.failed);
        }
    }

    #[test]
    fn corollary1_examples() {
        let (x, one_minus_x) = (qp(&[0, 1]), qp(&[1, -1]));
        let idem = q(&[&[1, 0], &[0, 0]]);
        let c = corollary1_check(&idem, &x, &one_minus_x).unwrap();
        assert_eq!((c.lhs_holds, c.lcm_annihilates), (true, true));
        let id = DenseMatrix::identity(2, Rationals::new());
        let c = corollary1_check(&id, &x, &one_minus_x).unwrap();
        assert_eq!((c.lhs_holds, c.lcm_annihilates), (true, true));
        let two = q(&[&[2, 0], &[0, 2]]);
        let c = corollary1_check(&two, &x, &one_minus_x).unwrap();
        assert_eq!((c.lhs_holds, c.lcm_annihilates), (false, false));
    }

    #[test]
    fn corollary1prime_examples() {
        let x = qp(&[0, 1]);
        let c = corollary1prime_check(&q(&[&[1, 0], &[0, 0]]), &x, &qp(&[1, -1])).unwrap();
        assert_eq!((c.lhs_holds, c.minpoly_divides), (true, true));
        let j = DenseMatrix::companion(&qp(&[0, 0, 0, 1])).unwrap();
        let c = corollary1prime_check(&j, &x, &x).unwrap();
        assert_eq!((c.lhs_holds, c.minpoly_divides), (false, false));
        let z = DenseMatrix::zero(3, 3, Rationals::new());
        let c = corollary1prime_check(&z, &qp(&[0, 1, 1]), &qp(&[2, 1])).unwrap();
        assert_eq!((c.lhs_holds, c.minpoly_divides), (true, true));
    }

    #[test]
    fn corollary2_examples() {
        let a = q(&[&[1, 4, 0], &[2, 0, 1], &[0, 5, 3]]);
        let c = corollary2_check(&a, &qp(&[1, -1]), &qp(&[1, 1])).unwrap();
        assert!(c.coprime && c.relation_holds);
        let c = corollary2_check(
            &DenseMatrix::identity(2, Rationals::new()),
            &qp(&[0, 1]),
            &qp(&[0, 1]),
        )
        .unwrap();
        assert!(!c.coprime && c.relation_holds);
        let j = DenseMatrix::companion(&qp(&[0, 0, 1])).unwrap();
        let c = corollary2_check(&j, &qp(&[0, 0, 1]), &qp(&[0, 0, 1])).unwrap();
        assert!(!c.coprime && !c.relation_holds);
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            coprimality_witness(&qp(&[0, 1]), &qp(&[1, -1])).unwrap(),
            None
        );
        let (f, g) = (qp(&[0, 0, 1]), qp(&[0, 0, 0, 1]));
        let w = coprimality_witness(&f, &g).unwrap().unwrap();
        assert_eq!(w, q(&[&[0, 0], &[1, 0]]));
        assert!(!corollary2_check(&w, &f, &g).unwrap().relation_holds);
        let h = qp(&[-1, 1]);
        let w = coprimality_witness(&h, &h).unwrap().unwrap();
        assert_eq!(w, q(&[&[1]]));
        assert!(!corollary2_check(&w, &h, &h).unwrap().relation_holds);
        assert_eq!(
            coprimality_witness(&qp(&[]), &qp(&[])),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn corollary3_examples() {
        let (x, one_minus_x) = (qp(&[0, 1]), qp(&[1, -1]));
        let c = corollary3_check(&q(&[&[1, 0], &[0, 0]]), &x, &one_minus_x).unwrap();
        assert_eq!((c.product_zero, c.ranks_sum_to_n), (true, true));
        let c = corollary3_check(&q(&[&[2, 0], &[0, 0]]), &x, &one_minus_x).unwrap();
        assert_eq!((c.product_zero, c.ranks_sum_to_n), (false, false));
        let j = DenseMatrix::identity(2, PrimeField::new(5).unwrap());
        assert_eq!(
            corollary3_check(&j, &gp(5, &[0, 1]), &gp(5, &[0, 1])),
            Err(Error::NotCoprime)
        );
    }

    #[test]
    fn domain_and_shape_errors() {
        let a = DenseMatrix::identity(2, PrimeField::new(5).unwrap());
        assert_eq!(
            build_certificate(&a, &gp(7, &[1]), &gp(5, &[1])).err(),
            Some(Error::DomainMismatch)
        );
        let r = DenseMatrix::from_i64_rows(Rationals::new(), &[&[1, 2]]).unwrap();
        assert!(matches!(
            build_certificate(&r, &qp(&[1]), &qp(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
