//! Dense exact matrices: arithmetic, rank, polynomial evaluation, block
//! assembly and companion matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::poly::DensePolynomial;

/// Default upper bound on the matrix order accepted by the harness.
///
/// Elimination over `Q` grows entries quickly; this is a configuration
/// constant, not a limit of the algorithms.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Row-major dense matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn new(field: F, nrows: usize, ncols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be at least 1x1, got {nrows}x{ncols}"
            )));
        }
        if entries.len() != nrows * ncols {
            return Err(Error::DimensionMismatch(format!(
                "{nrows}x{ncols} matrix needs {} entries, got {}",
                nrows * ncols,
                entries.len()
            )));
        }
        debug_assert!(entries.iter().all(|e| field.is_canonical(e)));
        Ok(DenseMatrix {
            field,
            nrows,
            ncols,
            entries,
        })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {ncols}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(field, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&k| field.from_i64(k)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn zero(nrows: usize, ncols: usize, field: F) -> Self {
        let entries = vec![field.zero(); nrows * ncols];
        Self::new(field, nrows, ncols, entries).expect("positive dimensions")
    }

    pub fn identity(n: usize, field: F) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn diagonal(field: F, diag: &[F::Elem]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        let mut m = Self::zero(n, n, field);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        Ok(m)
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: F::Elem, field: F) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn spec(&self) -> FieldSpec {
        self.field.spec()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows)
        } else {
            Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.nrows, self.ncols
            )))
        }
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F::Elem) {
        debug_assert!(self.field.is_canonical(&value));
        self.entries[i * self.ncols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.entries.chunks(self.ncols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.nrows, self.field.clone())
    }

    pub(crate) fn check_domain(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        self.check_domain(other)?;
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    fn map(&self, op: impl Fn(&F::Elem) -> F::Elem) -> Self {
        DenseMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(op).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        DenseMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| self.field.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| self.field.sub(a, b)))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|a| self.field.mul(a, c))
    }

    /// Exact triple-loop product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let f = &self.field;
        let (n, m, p) = (self.nrows, self.ncols, other.ncols);
        let mut entries = vec![f.zero(); n * p];
        for i in 0..n {
            let out = &mut entries[i * p..(i + 1) * p];
            for k in 0..m {
                let a = &self.entries[i * m + k];
                if f.is_zero(a) {
                    continue;
                }
                let brow = &other.entries[k * p..(k + 1) * p];
                for (o, b) in out.iter_mut().zip(brow) {
                    *o = f.add(o, &f.mul(a, b));
                }
            }
        }
        DenseMatrix {
            field: f.clone(),
            nrows: n,
            ncols: p,
            entries,
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let n = self.order()?;
        let mut acc = Self::identity(n, self.field.clone());
        for _ in 0..k {
            acc = acc.mul_raw(self);
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                entries.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            field: self.field.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// The `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.nrows || c0 + cols > self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "block {rows}x{cols} at ({r0},{c0}) exceeds {}x{}",
                self.nrows, self.ncols
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            entries.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Self::new(self.field.clone(), rows, cols, entries)
    }

    /// Rank by Gaussian elimination, pivoting on the first nonzero entry of
    /// each column.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let (n, m) = (self.nrows, self.ncols);
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            let Some(piv) = (rank..n).find(|&r| !f.is_zero(&a[r * m + col])) else {
                continue;
            };
            if piv != rank {
                for j in col..m {
                    a.swap(piv * m + j, rank * m + j);
                }
            }
            let inv = f.inv(&a[rank * m + col]).expect("pivot is nonzero");
            for r in rank + 1..n {
                if f.is_zero(&a[r * m + col]) {
                    continue;
                }
                let factor = f.mul(&a[r * m + col], &inv);
                a[r * m + col] = f.zero();
                for j in col + 1..m {
                    let t = f.mul(&factor, &a[rank * m + j]);
                    a[r * m + j] = f.sub(&a[r * m + j], &t);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.order()?;
        let f = &self.field;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n, f.clone()).entries;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(&a[r * n + col])) else {
                return Ok(None);
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let p = f.inv(&a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(&a[col * n + j], &p);
                inv[col * n + j] = f.mul(&inv[col * n + j], &p);
            }
            for r in 0..n {
                if r == col || f.is_zero(&a[r * n + col]) {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &a[col * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                    let t = f.mul(&factor, &inv[col * n + j]);
                    inv[r * n + j] = f.sub(&inv[r * n + j], &t);
                }
            }
        }
        Ok(Some(Self::new(f.clone(), n, n, inv)?))
    }

    /// Assembles `[[p11, p12], [p21, p22]]` from four `n x n` blocks.
    pub fn block2x2(p11: &Self, p12: &Self, p21: &Self, p22: &Self) -> Result<Self> {
        let n = p11.order()?;
        for b in [p12, p21, p22] {
            p11.check_domain(b)?;
            if b.order()? != n {
                return Err(Error::DimensionMismatch(format!(
                    "blocks must all be {n}x{n}, got {}x{}",
                    b.nrows, b.ncols
                )));
            }
        }
        let m = 2 * n;
        let mut entries = Vec::with_capacity(m * m);
        for (left, right) in [(p11, p12), (p21, p22)] {
            for i in 0..n {
                entries.extend_from_slice(left.row(i));
                entries.extend_from_slice(right.row(i));
            }
        }
        Self::new(p11.field.clone(), m, m, entries)
    }

    /// Companion matrix of a monic polynomial of degree `d >= 1`: ones on the
    /// subdiagonal, negated low-order coefficients in the last column.
    pub fn companion(p: &DensePolynomial<F>) -> Result<Self> {
        let d = match p.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::DegreeTooSmall),
        };
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        let f = p.field().clone();
        let mut m = Self::zero(d, d, f.clone());
        for i in 1..d {
            m.entries[i * d + i - 1] = f.one();
        }
        for (i, c) in p.coeffs()[..d].iter().enumerate() {
            m.entries[i * d + d - 1] = f.neg(c);
        }
        Ok(m)
    }

    /// Renders the text matrix format: field line, shape line, one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\n{} {}\n", self.spec(), self.nrows, self.ncols);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|e| self.field.format_elem(e)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Entries as strings, one vector per row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(|e| self.field.format_elem(e)).collect())
            .collect()
    }

    pub fn from_string_rows(field: F, rows: &[Vec<String>]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                r.push(
                    field
                        .parse_elem(s)
                        .map_err(|m| Error::parse(i + 1, j + 1, m))?,
                );
            }
            parsed.push(r);
        }
        Self::from_rows(field, parsed)
    }
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{:?}", self.spec(), self.to_string_rows())
    }
}

/// Evaluates `p(A)` by Horner's scheme; the zero polynomial gives the zero
/// matrix.
pub fn horner_eval<F: Field>(p: &DensePolynomial<F>, a: &DenseMatrix<F>) -> Result<DenseMatrix<F>> {
    let n = a.order()?;
    if p.field() != a.field() {
        return Err(Error::DomainMismatch);
    }
    Ok(horner_raw(p, a, n))
}

pub(crate) fn horner_raw<F: Field>(
    p: &DensePolynomial<F>,
    a: &DenseMatrix<F>,
    n: usize,
) -> DenseMatrix<F> {
    let f = a.field();
    let mut coeffs = p.coeffs().iter().rev();
    let Some(lead) = coeffs.next() else {
        return DenseMatrix::zero(n, n, f.clone());
    };
    let mut acc = DenseMatrix::scalar(n, lead.clone(), f.clone());
    for c in coeffs {
        acc = acc.mul_raw(a);
        for i in 0..n {
            let e = &mut acc.entries[i * n + i];
            *e = f.add(e, c);
        }
    }
    acc
}

impl<F: Field> DensePolynomial<F> {
    /// `self(A)`; see [`horner_eval`].
    pub fn eval_matrix(&self, a: &DenseMatrix<F>) -> Result<DenseMatrix<F>> {
        horner_eval(self, a)
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

    fn qp(c: &[i64]) -> DensePolynomial<Rationals> {
        DensePolynomial::from_i64s(Rationals::new(), c)
    }

    fn gf(p: u64, rows: &[&[i64]]) -> DenseMatrix<PrimeField> {
        DenseMatrix::from_i64_rows(PrimeField::new(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn arithmetic_contracts() {
        let p = q(&[&[1, 2, 3], &[4, 5, 6]]);
        let r = q(&[&[1, 0], &[0, 1], &[1, 1]]);
        let i2 = DenseMatrix::identity(2, Rationals::new());
        assert_eq!(i2.mul(&p).unwrap(), p);
        let prod = p.mul(&r).unwrap();
        assert_eq!((prod.nrows(), prod.ncols()), (2, 2));
        assert_eq!(prod, q(&[&[4, 5], &[10, 11]]));
        assert!(p.add(&p.neg()).unwrap().is_zero());
        assert!(matches!(p.mul(&p), Err(Error::DimensionMismatch(_))));
        assert!(matches!(p.add(&r), Err(Error::DimensionMismatch(_))));
        assert_eq!(
            gf(5, &[&[1]]).add(&gf(7, &[&[1]])),
            Err(Error::DomainMismatch)
        );
        assert!(DenseMatrix::new(Rationals::new(), 0, 2, vec![]).is_err());
    }

    #[test]
    fn rank_examples() {
        for n in 1..6 {
            assert_eq!(DenseMatrix::identity(n, Rationals::new()).rank(), n);
        }
        assert_eq!(DenseMatrix::zero(3, 3, Rationals::new()).rank(), 0);
        assert_eq!(gf(5, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(q(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
        assert_eq!(q(&[&[1, 2, 3], &[4, 5, 6]]).rank(), 2);
    }

    #[test]
    fn horner_examples() {
        let f = Rationals::new();
        let a = q(&[&[1, 2, 0], &[0, 3, 1], &[5, 0, 2]]);
        assert_eq!(
            horner_eval(&qp(&[1]), &a).unwrap(),
            DenseMatrix::identity(3, f)
        );
        assert_eq!(horner_eval(&qp(&[0, 1]), &a).unwrap(), a);
        assert!(horner_eval(&qp(&[]), &a).unwrap().is_zero());
        let d = q(&[&[1, 0], &[0, 2]]);
        assert_eq!(
            horner_eval(&qp(&[-1, 0, 1]), &d).unwrap(),
            q(&[&[0, 0], &[0, 3]])
        );
        let sq = a.mul(&a).unwrap();
        let expect = sq
            .scale(&f.from_i64(3))
            .add(&a.scale(&f.from_i64(-2)))
            .unwrap()
            .add(&DenseMatrix::scalar(3, f.from_i64(7), f))
            .unwrap();
        assert_eq!(horner_eval(&qp(&[7, -2, 3]), &a).unwrap(), expect);
        assert!(horner_eval(&qp(&[1]), &q(&[&[1, 2]])).is_err());
    }

    #[test]
    fn block_assembly() {
        let f = Rationals::new();
        let i = DenseMatrix::identity(3, f);
        let z = DenseMatrix::zero(3, 3, f);
        assert_eq!(
            DenseMatrix::block2x2(&i, &z, &z, &i).unwrap(),
            DenseMatrix::identity(6, f)
        );
        let p = q(&[&[1, 2], &[2, 4]]);
        let r = q(&[&[0, 1], &[0, 0]]);
        let z2 = DenseMatrix::zero(2, 2, f);
        let b = DenseMatrix::block2x2(&p, &z2, &z2, &r).unwrap();
        assert_eq!(b.rank(), p.rank() + r.rank());
        assert_eq!(b.submatrix(2, 2, 2, 2).unwrap(), r);
        assert!(DenseMatrix::block2x2(&p, &z, &z2, &r).is_err());
    }

    #[test]
    fn companion_examples() {
        assert_eq!(DenseMatrix::companion(&qp(&[-1, 1])).unwrap(), q(&[&[1]]));
        assert_eq!(
            DenseMatrix::companion(&qp(&[0, 0, 1])).unwrap(),
            q(&[&[0, 0], &[1, 0]])
        );
        assert_eq!(DenseMatrix::companion(&qp(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(
            DenseMatrix::companion(&qp(&[1])),
            Err(Error::DegreeTooSmall)
        );
        assert_eq!(DenseMatrix::companion(&qp(&[])), Err(Error::DegreeTooSmall));
        // p(C_p) = 0
        let p = qp(&[3, -1, 0, 2, 1]);
        let c = DenseMatrix::companion(&p).unwrap();
        assert!(horner_eval(&p, &c).unwrap().is_zero());
    }

    #[test]
    fn inverse_and_text() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
        assert_eq!(
            gf(7, &[&[1, 2], &[3, 4]]).to_text(),
            "field 7\n2 2\n1 2\n3 4\n"
        );
    }
}
