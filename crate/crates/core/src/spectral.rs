//! Characteristic and minimal polynomials.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{horner_raw, DenseMatrix};
use crate::poly::DensePolynomial;

/// `det(x·I - A)` by Berkowitz's division-free recurrence.
///
/// Each step extends the characteristic polynomial of the leading
/// `(r-1) x (r-1)` block to the `r x r` block by multiplying with a lower
/// triangular Toeplitz matrix built from `a_rr` and the products
/// `R·M^j·S` of the new row, old block and new column.
pub fn char_poly<F: Field>(a: &DenseMatrix<F>) -> Result<DensePolynomial<F>> {
    let n = a.order()?;
    let f = a.field();
    // descending coefficients of the current leading block
    let mut p: Vec<F::Elem> = vec![f.one()];
    for k in 0..n {
        // Toeplitz column: 1, -a_kk, -R S, -R M S, ..., -R M^{k-1} S
        let mut col = Vec::with_capacity(k + 2);
        col.push(f.one());
        col.push(f.neg(a.get(k, k)));
        let mut v: Vec<F::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for _ in 0..k {
            let dot = (0..k).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(a.get(k, i), &v[i])));
            col.push(f.neg(&dot));
            v = (0..k)
                .map(|i| (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(a.get(i, j), &v[j]))))
                .collect();
        }
        let next: Vec<F::Elem> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k)).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&col[i - j], &p[j])))
            })
            .collect();
        p = next;
    }
    p.reverse();
    Ok(DensePolynomial::new(f.clone(), p))
}

/// Monic minimal polynomial from the first linear dependency among the
/// vectorized powers `I, A, A^2, ...`.
pub fn min_poly<F: Field>(a: &DenseMatrix<F>) -> Result<DensePolynomial<F>> {
    let n = a.order()?;
    let f = a.field();
    // Echelon basis of the powers seen so far. Each row keeps its pivot,
    // its reduced vector and its expression in terms of the original powers.
    struct Row<E> {
        pivot: usize,
        vec: Vec<E>,
        combo: Vec<E>,
    }
    let mut basis: Vec<Row<F::Elem>> = Vec::new();
    let mut power = DenseMatrix::identity(n, f.clone());
    for k in 0..=n {
        let mut vec = power.entries().to_vec();
        let mut combo = vec![f.zero(); k + 1];
        combo[k] = f.one();
        for row in &basis {
            let c = vec[row.pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in vec.iter_mut().zip(&row.vec) {
                *x = f.sub(x, &f.mul(&c, y));
            }
            for (x, y) in combo.iter_mut().zip(&row.combo) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        match vec.iter().position(|e| !f.is_zero(e)) {
            None => {
                // combo · (I, A, ..., A^k) = 0 with combo[k] = 1
                return Ok(DensePolynomial::new(f.clone(), combo));
            }
            Some(pivot) => {
                let inv = f.inv(&vec[pivot])?;
                let vec = vec.iter().map(|e| f.mul(e, &inv)).collect();
                let combo = combo.iter().map(|e| f.mul(e, &inv)).collect();
                basis.push(Row { pivot, vec, combo });
            }
        }
        power = power.mul_raw(a);
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}

/// Whether `divisor` divides `p` exactly.
pub fn poly_divides<F: Field>(
    divisor: &DensePolynomial<F>,
    p: &DensePolynomial<F>,
) -> Result<bool> {
    if divisor.is_zero() {
        return Err(Error::DivisionByZero);
    }
    divisor.divides(p)
}

/// Characteristic and minimal polynomial of one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData<F: Field> {
    pub matrix_order: usize,
    pub char_poly: DensePolynomial<F>,
    pub min_poly: DensePolynomial<F>,
}

impl<F: Field> SpectralData<F> {
    pub fn of(a: &DenseMatrix<F>) -> Result<Self> {
        Ok(SpectralData {
            matrix_order: a.order()?,
            char_poly: char_poly(a)?,
            min_poly: min_poly(a)?,
        })
    }

    /// Names of the failing invariants, checked against `a`.
    pub fn check(&self, a: &DenseMatrix<F>) -> Vec<&'static str> {
        let mut failed = Vec::new();
        let n = self.matrix_order;
        if !horner_raw(&self.min_poly, a, n).is_zero() {
            failed.push("min_poly_annihilates");
        }
        if !horner_raw(&self.char_poly, a, n).is_zero() {
            failed.push("cayley_hamilton");
        }
        if !self.min_poly.is_monic()
            || !self.char_poly.is_monic()
            || self.char_poly.degree() != Some(n)
        {
            failed.push("spectral_monic");
        }
        if !poly_divides(&self.min_poly, &self.char_poly).unwrap_or(false) {
            failed.push("min_poly_divides_char_poly");
        }
        failed
    }
}
