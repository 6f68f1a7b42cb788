//! Rank-based matrix classifiers.
//!
//! Each classifier evaluates the defining matrix equation directly and every
//! equivalent rank statement independently (fresh evaluations and fresh
//! eliminations per statement), so the report exposes any disagreement.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{horner_raw, DenseMatrix};
use crate::poly::{pairwise_coprime, DensePolynomial};
use crate::rank_theorem::{build_certificate, verify_certificate};
use crate::spectral::char_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Idempotent,
    Involutive,
    Tripotent,
    A3a5,
    #[serde(rename = "charfactors")]
    CharFactorRankSum,
    App5,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Idempotent,
        Property::Involutive,
        Property::Tripotent,
        Property::A3a5,
        Property::CharFactorRankSum,
        Property::App5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Idempotent => "idempotent",
            Property::Involutive => "involutive",
            Property::Tripotent => "tripotent",
            Property::A3a5 => "a3a5",
            Property::CharFactorRankSum => "charfactors",
            Property::App5 => "app5",
        }
    }

    /// Whether every statement is proven equivalent to the direct check.
    pub fn is_equivalence(&self) -> bool {
        matches!(
            self,
            Property::Idempotent | Property::Involutive | Property::Tripotent | Property::A3a5
        )
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub label: String,
    pub holds: bool,
}

/// Verdicts of one classifier run.
///
/// For the identity-type classifiers (`app5`, `charfactors`) the direct check
/// is the unconditional fact the statement rests on: certificate verification
/// for `app5`, and `f1(A)···fk(A) = 0` (Cayley–Hamilton) for `charfactors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub property: Property,
    pub n: usize,
    pub field: String,
    pub direct_check: bool,
    pub statements: Vec<Statement>,
    #[serde(rename = "ranks")]
    pub ranks_used: BTreeMap<String, usize>,
}

impl ClassificationReport {
    /// Whether the report is internally consistent: every statement matches
    /// the direct check for equivalences, or everything holds for identities.
    pub fn consistent(&self) -> bool {
        if self.property.is_equivalence() {
            self.statements.iter().all(|s| s.holds == self.direct_check)
        } else {
            self.direct_check && self.statements.iter().all(|s| s.holds)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

struct Builder<'a, F: Field> {
    a: &'a DenseMatrix<F>,
    n: usize,
    ranks: BTreeMap<String, usize>,
    statements: Vec<Statement>,
}

impl<'a, F: Field> Builder<'a, F> {
    fn new(a: &'a DenseMatrix<F>) -> Result<Self> {
        Ok(Builder {
            n: a.order()?,
            a,
            ranks: BTreeMap::new(),
            statements: Vec::new(),
        })
    }

    /// Rank of `p(A)` for ascending integer coefficients, evaluated afresh.
    fn rank_of(&mut self, label: &str, coeffs: &[i64]) -> usize {
        let p = DensePolynomial::from_i64s(self.a.field().clone(), coeffs);
        let r = horner_raw(&p, self.a, self.n).rank();
        self.ranks.insert(label.to_string(), r);
        r
    }

    fn rank_of_poly(&mut self, label: String, p: &DensePolynomial<F>) -> usize {
        let r = horner_raw(p, self.a, self.n).rank();
        self.ranks.insert(label, r);
        r
    }

    fn statement(&mut self, label: &str, holds: bool) {
        self.statements.push(Statement {
            label: label.to_string(),
            holds,
        });
    }

    fn finish(self, property: Property, direct_check: bool) -> ClassificationReport {
        ClassificationReport {
            property,
            n: self.n,
            field: self.a.spec().to_string(),
            direct_check,
            statements: self.statements,
            ranks_used: self.ranks,
        }
    }
}

fn refuse_char_two<F: Field>(a: &DenseMatrix<F>) -> Result<()> {
    if a.field().characteristic() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

/// `A^2 = A` iff `rank A + rank(I - A) = n`.
pub fn classify_idempotent<F: Field>(a: &DenseMatrix<F>) -> Result<ClassificationReport> {
    let mut b = Builder::new(a)?;
    let n = b.n;
    let s = b.rank_of("A", &[0, 1]) + b.rank_of("I-A", &[1, -1]);
    b.statement("rank A + rank(I-A) = n", s == n);
    let direct = a.mul_raw(a) == *a;
    Ok(b.finish(Property::Idempotent, direct))
}

/// `A^2 = I` iff `rank(I - A) + rank(I + A) = n`, in characteristic not 2.
pub fn classify_involutive<F: Field>(a: &DenseMatrix<F>) -> Result<ClassificationReport> {
    refuse_char_two(a)?;
    let mut b = Builder::new(a)?;
    let n = b.n;
    let s = b.rank_of("I-A", &[1, -1]) + b.rank_of("I+A", &[1, 1]);
    b.statement("rank(I-A) + rank(I+A) = n", s == n);
    let direct = a.mul_raw(a).is_identity();
    Ok(b.finish(Property::Involutive, direct))
}

/// `A^3 = A` and its three rank characterizations, in characteristic not 2.
pub fn classify_tripotent<F: Field>(a: &DenseMatrix<F>) -> Result<ClassificationReport> {
    refuse_char_two(a)?;
    let mut b = Builder::new(a)?;
    let n = b.n;

    let s2 = b.rank_of("A", &[0, 1]) + b.rank_of("I-A^2", &[1, 0, -1]);
    b.statement("rank A + rank(I-A^2) = n", s2 == n);

    let s3 = b.rank_of("I-A", &[1, -1]) + b.rank_of("A+A^2", &[0, 1, 1]);
    b.statement("rank(I-A) + rank(A+A^2) = n", s3 == n);

    let r_a = b.rank_of("A", &[0, 1]);
    let s4 = r_a + b.rank_of("I-A", &[1, -1]) + b.rank_of("I+A", &[1, 1]);
    b.statement("rank A + rank(I-A) + rank(I+A) = 2n", s4 == 2 * n);

    let direct = a.mul_raw(a).mul_raw(a) == *a;
    Ok(b.finish(Property::Tripotent, direct))
}

/// `A^3 = A^5` and its seven rank characterizations, in characteristic not 2.
pub fn classify_a3a5<F: Field>(a: &DenseMatrix<F>) -> Result<ClassificationReport> {
    refuse_char_two(a)?;
    let mut b = Builder::new(a)?;
    let n = b.n;
    const A: &[i64] = &[0, 1];
    const A3: &[i64] = &[0, 0, 0, 1];
    const I_MINUS_A: &[i64] = &[1, -1];
    const I_PLUS_A: &[i64] = &[1, 1];
    const I_MINUS_A2: &[i64] = &[1, 0, -1];
    const A3_PLUS_A4: &[i64] = &[0, 0, 0, 1, 1];
    const A3_MINUS_A4: &[i64] = &[0, 0, 0, 1, -1];
    const A_MINUS_A2: &[i64] = &[0, 1, -1];
    const A_PLUS_A2: &[i64] = &[0, 1, 1];

    let s = b.rank_of("A^3", A3) + b.rank_of("I-A^2", I_MINUS_A2);
    b.statement("rank A^3 + rank(I-A^2) = n", s == n);

    let s = b.rank_of("I-A", I_MINUS_A) + b.rank_of("A^3+A^4", A3_PLUS_A4);
    b.statement("rank(I-A) + rank(A^3+A^4) = n", s == n);

    let s = b.rank_of("I+A", I_PLUS_A) + b.rank_of("A^3-A^4", A3_MINUS_A4);
    b.statement("rank(I+A) + rank(A^3-A^4) = n", s == n);

    let s = b.rank_of("A^3", A3) + b.rank_of("I-A", I_MINUS_A) + b.rank_of("I+A", I_PLUS_A);
    b.statement("rank A^3 + rank(I-A) + rank(I+A) = 2n", s == 2 * n);

    let s = b.rank_of("A-A^2", A_MINUS_A2) + b.rank_of("A^3+A^4", A3_PLUS_A4);
    let r = b.rank_of("A", A);
    b.statement("rank(A-A^2) + rank(A^3+A^4) = rank A", s == r);

    let s = b.rank_of("A+A^2", A_PLUS_A2) + b.rank_of("A^3-A^4", A3_MINUS_A4);
    let r = b.rank_of("A", A);
    b.statement("rank(A+A^2) + rank(A^3-A^4) = rank A", s == r);

    let s = b.rank_of("A^3+A^4", A3_PLUS_A4) + b.rank_of("A^3-A^4", A3_MINUS_A4);
    let r = b.rank_of("A^3", A3);
    b.statement("rank(A^3+A^4) + rank(A^3-A^4) = rank A^3", s == r);

    // powers by repeated multiplication, independent of the spectral module
    let a2 = a.mul_raw(a);
    let a3 = a2.mul_raw(a);
    let a5 = a3.mul_raw(&a2);
    Ok(b.finish(Property::A3a5, a3 == a5))
}

/// For a factorization of the characteristic polynomial into pairwise
/// coprime factors `f1···fk`: `rank f1(A) + ... + rank fk(A) = (k-1)·n`.
pub fn charfactor_rank_sum<F: Field>(
    a: &DenseMatrix<F>,
    factors: &[DensePolynomial<F>],
) -> Result<ClassificationReport> {
    let mut b = Builder::new(a)?;
    let n = b.n;
    if factors.iter().any(|p| p.field() != a.field()) {
        return Err(Error::DomainMismatch);
    }
    if !pairwise_coprime(factors)? {
        return Err(Error::NotPairwiseCoprime);
    }
    let product = factors
        .iter()
        .fold(DensePolynomial::one(a.field().clone()), |acc, p| {
            acc.mul_raw(p)
        });
    if product.is_zero() || product.monic() != char_poly(a)? {
        return Err(Error::NotCharPolyFactorization);
    }

    let mut total = 0;
    let mut product_a = DenseMatrix::identity(n, a.field().clone());
    for (i, p) in factors.iter().enumerate() {
        total += b.rank_of_poly(format!("f{}(A)", i + 1), p);
        product_a = product_a.mul_raw(&horner_raw(p, a, n));
    }
    let k = factors.len();
    b.statement("sum rank fi(A) = (k-1)n", total == (k - 1) * n);
    Ok(b.finish(Property::CharFactorRankSum, product_a.is_zero()))
}

/// `rank(A+A^2) + rank(A-A^2) = rank D(A) + rank M(A)` for `f = x + x^2`,
/// `g = x - x^2`, read off the certificate.
///
/// Outside characteristic 2 the gcd is `x` and the lcm is `x^3 - x`, so this
/// is `rank(A+A^2) + rank(A-A^2) = rank A + rank(A-A^3)`. In characteristic 2
/// `f = g`, so `D = M = x + x^2` and the identity reduces to a tautology; the
/// statement label says so instead of printing the equation that no longer
/// applies (it fails for `A = I`).
pub fn rank_identity_app5<F: Field>(a: &DenseMatrix<F>) -> Result<ClassificationReport> {
    let mut b = Builder::new(a)?;
    let field = a.field().clone();
    let f = DensePolynomial::from_i64s(field.clone(), &[0, 1, 1]);
    let g = DensePolynomial::from_i64s(field, &[0, 1, -1]);
    let cert = build_certificate(a, &f, &g)?;
    let odd = a.field().characteristic() != 2;
    let (d_label, m_label) = if odd {
        ("A", "A-A^3")
    } else {
        ("D(A)", "M(A)")
    };
    b.ranks.insert("A+A^2".into(), cert.rank_f);
    b.ranks.insert("A-A^2".into(), cert.rank_g);
    b.ranks.insert(d_label.into(), cert.rank_d);
    b.ranks.insert(m_label.into(), cert.rank_m);
    let label = if odd {
        "rank(A+A^2) + rank(A-A^2) = rank A + rank(A-A^3)"
    } else {
        "rank(A+A^2) + rank(A-A^2) = rank D(A) + rank M(A), D = M = x+x^2"
    };
    b.statement(label, cert.identity_holds());
    let verified = verify_certificate(&cert).is_ok();
    Ok(b.finish(Property::App5, verified))
}

/// Dispatches on `property`; `factors` is only read for `charfactors`.
pub fn classify<F: Field>(
    a: &DenseMatrix<F>,
    property: Property,
    factors: &[DensePolynomial<F>],
) -> Result<ClassificationReport> {
    match property {
        Property::Idempotent => classify_idempotent(a),
        Property::Involutive => classify_involutive(a),
        Property::Tripotent => classify_tripotent(a),
        Property::A3a5 => classify_a3a5(a),
        Property::CharFactorRankSum => charfactor_rank_sum(a, factors),
        Property::App5 => rank_identity_app5(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::Rationals;

    fn q(rows: &[&[i64]]) -> DenseMatrix<Rationals> {
        DenseMatrix::from_i64_rows(Rationals::new(), rows).unwrap()
    }

    fn qdiag(d: &[i64]) -> DenseMatrix<Rationals> {
        let f = Rationals::new();
        let d: Vec<_> = d.iter().map(|&k| f.from_i64(k)).collect();
        DenseMatrix::diagonal(f, &d).unwrap()
    }

    fn qp(c: &[i64]) -> DensePolynomial<Rationals> {
        DensePolynomial::from_i64s(Rationals::new(), c)
    }

    fn all_same(r: &ClassificationReport, expect: bool) {
        assert_eq!(r.direct_check, expect, "{r:?}");
        assert!(r.statements.iter().all(|s| s.holds == expect), "{r:?}");
        assert!(r.consistent());
    }

    #[test]
    fn idempotent_examples() {
        let r = classify_idempotent(&qdiag(&[1, 1, 0])).unwrap();
        all_same(&r, true);
        assert_eq!(r.ranks_used["A"], 2);
        assert_eq!(r.ranks_used["I-A"], 1);
        all_same(&classify_idempotent(&qdiag(&[2, 2])).unwrap(), false);
        all_same(&classify_idempotent(&qdiag(&[0, 0, 0, 0])).unwrap(), true);
    }

    #[test]
    fn involutive_examples() {
        all_same(&classify_involutive(&qdiag(&[1, -1])).unwrap(), true);
        let f5 = PrimeField::new(5).unwrap();
        let j = DenseMatrix::companion(&DensePolynomial::from_i64s(f5, &[0, 0, 1])).unwrap();
        all_same(&classify_involutive(&j).unwrap(), false);
        let g2 = DenseMatrix::identity(2, PrimeField::new(2).unwrap());
        assert_eq!(classify_involutive(&g2), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn tripotent_examples() {
        let r = classify_tripotent(&qdiag(&[1, -1, 0])).unwrap();
        all_same(&r, true);
        assert_eq!(r.statements.len(), 3);
        let f7 = PrimeField::new(7).unwrap();
        let two = DenseMatrix::scalar(2, f7.from_i64(2), f7);
        all_same(&classify_tripotent(&two).unwrap(), false);
        all_same(&classify_tripotent(&qdiag(&[0, 0, 0])).unwrap(), true);
        let g2 = DenseMatrix::identity(2, PrimeField::new(2).unwrap());
        assert_eq!(classify_tripotent(&g2), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn a3a5_examples() {
        let j = DenseMatrix::companion(&qp(&[0, 0, 0, 1])).unwrap();
        let r = classify_a3a5(&j).unwrap();
        all_same(&r, true);
        assert_eq!(r.statements.len(), 7);
        assert_eq!(r.ranks_used["A^3"], 0);
        assert_eq!(r.ranks_used["I-A^2"], 3);
        all_same(&classify_a3a5(&qdiag(&[1, -1, 0])).unwrap(), true);
        let r = classify_a3a5(&q(&[&[2]])).unwrap();
        all_same(&r, false);
        assert_eq!(r.ranks_used["A^3"] + r.ranks_used["I-A^2"], 2);
        let g2 = DenseMatrix::identity(1, PrimeField::new(2).unwrap());
        assert_eq!(classify_a3a5(&g2), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn charfactor_examples() {
        let r = charfactor_rank_sum(&qdiag(&[1, 2]), &[qp(&[-1, 1]), qp(&[-2, 1])]).unwrap();
        assert!(r.consistent() && r.statements[0].holds);
        assert_eq!(r.ranks_used["f1(A)"] + r.ranks_used["f2(A)"], 2);

        let f5 = PrimeField::new(5).unwrap();
        let p = |c: &[i64]| DensePolynomial::from_i64s(f5, c);
        let cubic = p(&[0, 1])
            .mul(&p(&[-1, 1]))
            .unwrap()
            .mul(&p(&[1, 1]))
            .unwrap();
        let c = DenseMatrix::companion(&cubic).unwrap();
        let r = charfactor_rank_sum(&c, &[p(&[0, 1]), p(&[-1, 1]), p(&[1, 1])]).unwrap();
        assert!(r.consistent());
        assert!(r.ranks_used.values().all(|&v| v == 2));

        let a = q(&[&[1, 2], &[3, 4]]);
        let cp = char_poly(&a).unwrap();
        let r = charfactor_rank_sum(&a, std::slice::from_ref(&cp)).unwrap();
        assert!(r.consistent());
        assert_eq!(r.ranks_used["f1(A)"], 0);

        assert_eq!(
            charfactor_rank_sum(&qdiag(&[1, 1]), &[qp(&[-1, 1]), qp(&[-1, 1])]),
            Err(Error::NotPairwiseCoprime)
        );
        assert_eq!(
            charfactor_rank_sum(&qdiag(&[1, 2]), &[qp(&[-1, 1]), qp(&[-3, 1])]),
            Err(Error::NotCharPolyFactorization)
        );
        // scalar multiples of the factorization are accepted
        let r = charfactor_rank_sum(&qdiag(&[1, 2]), &[qp(&[-2, 2]), qp(&[-2, 1])]).unwrap();
        assert!(r.consistent());
    }

    #[test]
    fn app5_examples() {
        let r = rank_identity_app5(&DenseMatrix::identity(3, Rationals::new())).unwrap();
        assert!(r.consistent());
        assert_eq!((r.ranks_used["A+A^2"], r.ranks_used["A-A^2"]), (3, 0));
        let r = rank_identity_app5(&DenseMatrix::identity(3, PrimeField::new(2).unwrap())).unwrap();
        assert!(r.consistent());
        assert_eq!(r.ranks_used["D(A)"], 0);
        // the characteristic-0 form of the equation does not survive in GF(2)
        let a = DenseMatrix::identity(3, PrimeField::new(2).unwrap());
        assert_ne!(
            a.add(&a.mul(&a).unwrap()).unwrap().rank() * 2,
            a.rank() + a.sub(&a.pow(3).unwrap()).unwrap().rank()
        );
        let r = rank_identity_app5(&q(&[&[1, 2, 0], &[0, 0, 1], &[3, 0, -1]])).unwrap();
        assert!(r.consistent());
        let direct = |c: &[i64]| DensePolynomial::from_i64s(Rationals::new(), c);
        let a = q(&[&[1, 2, 0], &[0, 0, 1], &[3, 0, -1]]);
        assert_eq!(r.ranks_used["A"], a.rank());
        assert_eq!(
            r.ranks_used["A-A^3"],
            horner_raw(&direct(&[0, 1, 0, -1]), &a, 3).rank()
        );
    }

    #[test]
    fn report_json_shape() {
        let r = classify_idempotent(&qdiag(&[1, 0])).unwrap();
        let v = r.to_json();
        assert_eq!(v["property"], "idempotent");
        assert_eq!(v["n"], 2);
        assert_eq!(v["field"], "Q");
        assert_eq!(v["direct_check"], true);
        assert_eq!(v["statements"][0]["holds"], true);
        assert_eq!(v["ranks"]["A"], 1);
        let r = charfactor_rank_sum(&qdiag(&[1, 2]), &[qp(&[-1, 1]), qp(&[-2, 1])]).unwrap();
        assert_eq!(r.to_json()["property"], "charfactors");
    }
}
