//! Brute-force reference computations, independent of the library's
//! elimination, Berkowitz and Krylov routines.
#![allow(dead_code)]

use polyrank::{DenseMatrix, DensePolynomial, Field, PrimeField};

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // sign from the inversion count
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, n, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

/// `det(x·I - A)` by the Leibniz permutation expansion over polynomial entries.
pub fn leibniz_char_poly<F: Field>(a: &DenseMatrix<F>) -> DensePolynomial<F> {
    let n = a.nrows();
    let f = a.field().clone();
    let entry = |i: usize, j: usize| {
        let c = f.neg(a.get(i, j));
        if i == j {
            DensePolynomial::new(f.clone(), vec![c, f.one()])
        } else {
            DensePolynomial::constant(f.clone(), c)
        }
    };
    let mut total = DensePolynomial::zero(f.clone());
    for (perm, odd) in permutations(n) {
        let mut term = DensePolynomial::one(f.clone());
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&entry(i, j)).unwrap();
        }
        total = if odd {
            total.sub(&term).unwrap()
        } else {
            total.add(&term).unwrap()
        };
    }
    total
}

/// Evaluates `p(A)` by summing explicit powers, not Horner.
pub fn eval_by_powers<F: Field>(p: &DensePolynomial<F>, a: &DenseMatrix<F>) -> DenseMatrix<F> {
    let n = a.nrows();
    let f = a.field().clone();
    let mut acc = DenseMatrix::zero(n, n, f.clone());
    let mut power = DenseMatrix::identity(n, f);
    for c in p.coeffs() {
        acc = acc.add(&power.scale(c)).unwrap();
        power = power.mul(a).unwrap();
    }
    acc
}

/// Every monic polynomial of degree exactly `d` over GF(p).
pub fn monic_polys(field: PrimeField, d: usize) -> Vec<DensePolynomial<PrimeField>> {
    let p = u64::from(field.modulus());
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push((idx % p) as u32);
                idx /= p;
            }
            coeffs.push(1);
            DensePolynomial::new(field, coeffs)
        })
        .collect()
}

/// True iff no monic polynomial of degree below `deg m` annihilates `A`.
pub fn is_minimal_by_enumeration(
    a: &DenseMatrix<PrimeField>,
    m: &DensePolynomial<PrimeField>,
) -> bool {
    let field = *a.field();
    let d = m.degree().expect("nonzero");
    (0..d).all(|k| {
        monic_polys(field, k)
            .iter()
            .all(|p| !eval_by_powers(p, a).is_zero())
    })
}

/// Rank from the largest nonvanishing minor (Leibniz determinants); only for
/// tiny matrices.
pub fn rank_by_minors<F: Field>(a: &DenseMatrix<F>) -> usize {
    let (r, c) = (a.nrows(), a.ncols());
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let f = a.field();
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let mut det = f.zero();
                for (perm, odd) in permutations(k) {
                    let mut t = f.one();
                    for (i, &j) in perm.iter().enumerate() {
                        t = f.mul(&t, a.get(rows[i], cols[j]));
                    }
                    det = if odd {
                        f.sub(&det, &t)
                    } else {
                        f.add(&det, &t)
                    };
                }
                if !f.is_zero(&det) {
                    return k;
                }
            }
        }
    }
    0
}
