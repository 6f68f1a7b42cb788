//! Random matrices with prescribed structure, and random polynomial pairs.

use std::fmt;
use std::str::FromStr;

use polyrank::{DenseMatrix, DensePolynomial, Field, FieldSpec};
use rand::Rng;
use rand_xorshift::XorShiftRng;
use serde::Serialize;

/// Trial generator.
///
/// Every trial draws from `XorShiftRng` (Marsaglia's xorshift128 with shifts
/// 11, 8, 19) seeded through `SeedableRng::seed_from_u64(seed ^ trial)`,
/// which expands the 64-bit seed with PCG32 (multiplier
/// 6364136223846793005, increment 11634580027462260723).
pub fn trial_rng(seed: u64, trial: u64) -> XorShiftRng {
    use rand::SeedableRng;
    XorShiftRng::seed_from_u64(seed ^ trial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Generic,
    Idempotent,
    Involutive,
    Tripotent,
    Nilpotent,
    Companion,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Generic,
        Generator::Idempotent,
        Generator::Involutive,
        Generator::Tripotent,
        Generator::Nilpotent,
        Generator::Companion,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Generic => "generic",
            Generator::Idempotent => "idempotent",
            Generator::Involutive => "involutive",
            Generator::Tripotent => "tripotent",
            Generator::Nilpotent => "nilpotent",
            Generator::Companion => "companion",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s.trim())
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

/// A drawn matrix together with what is known about it by construction.
#[derive(Debug, Clone)]
pub struct Sample<F: Field> {
    pub matrix: DenseMatrix<F>,
    /// Factors whose product annihilates the matrix (empty if unknown).
    pub annihilator: Vec<DensePolynomial<F>>,
    /// Distinct monic candidates for splitting the characteristic polynomial.
    pub bases: Vec<DensePolynomial<F>>,
}

/// Uniform residue over GF(p); `num/den` with `num ∈ [-9, 9]`,
/// `den ∈ [1, 9]` over Q.
pub fn random_elem<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    match field.spec() {
        FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..i64::from(p))),
        FieldSpec::Rationals => {
            let num = rng.random_range(-9..=9);
            let den = rng.random_range(1..=9);
            field.from_fraction(num, den).expect("nonzero denominator")
        }
    }
}

fn random_nonzero<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let c = random_elem(field, rng);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

/// Random polynomial of exact degree `deg`.
pub fn random_poly<F: Field, R: Rng>(field: &F, deg: usize, rng: &mut R) -> DensePolynomial<F> {
    let mut coeffs: Vec<F::Elem> = (0..deg).map(|_| random_elem(field, rng)).collect();
    coeffs.push(random_nonzero(field, rng));
    DensePolynomial::new(field.clone(), coeffs)
}

fn random_monic<F: Field, R: Rng>(field: &F, deg: usize, rng: &mut R) -> DensePolynomial<F> {
    random_poly(field, deg, rng).monic()
}

fn lin<F: Field>(field: &F, root: i64) -> DensePolynomial<F> {
    // x - root
    DensePolynomial::from_i64s(field.clone(), &[-root, 1])
}

/// `S·D·S^-1` for a random product `S` of elementary row operations.
fn conjugate<F: Field, R: Rng>(d: DenseMatrix<F>, rng: &mut R) -> DenseMatrix<F> {
    let n = d.nrows();
    if n == 1 {
        return d;
    }
    let field = d.field().clone();
    let mut s = DenseMatrix::identity(n, field.clone());
    let mut s_inv = DenseMatrix::identity(n, field.clone());
    for _ in 0..n + 2 {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let c = [-2i64, -1, 1, 2][rng.random_range(0..4)];
        let mut e = DenseMatrix::identity(n, field.clone());
        let mut e_inv = DenseMatrix::identity(n, field.clone());
        e.set(i, j, field.from_i64(c));
        e_inv.set(i, j, field.from_i64(-c));
        s = e.mul(&s).expect("square");
        s_inv = s_inv.mul(&e_inv).expect("square");
    }
    s.mul(&d).and_then(|m| m.mul(&s_inv)).expect("square")
}

fn diagonal_from<F: Field, R: Rng>(
    field: &F,
    n: usize,
    values: &[i64],
    rng: &mut R,
) -> DenseMatrix<F> {
    let diag: Vec<F::Elem> = (0..n)
        .map(|_| field.from_i64(values[rng.random_range(0..values.len())]))
        .collect();
    DenseMatrix::diagonal(field.clone(), &diag).expect("n >= 1")
}

impl Generator {
    pub fn draw<F: Field, R: Rng>(&self, field: &F, n: usize, rng: &mut R) -> Sample<F> {
        let x = || lin(field, 0);
        match self {
            Generator::Generic => {
                let entries = (0..n * n).map(|_| random_elem(field, rng)).collect();
                Sample {
                    matrix: DenseMatrix::new(field.clone(), n, n, entries).expect("n >= 1"),
                    annihilator: Vec::new(),
                    bases: Vec::new(),
                }
            }
            Generator::Idempotent => {
                let d = diagonal_from(field, n, &[0, 1], rng);
                Sample {
                    matrix: conjugate(d, rng),
                    annihilator: vec![x(), lin(field, 1)],
                    bases: vec![x(), lin(field, 1)],
                }
            }
            Generator::Involutive => {
                let d = diagonal_from(field, n, &[1, -1], rng);
                Sample {
                    matrix: conjugate(d, rng),
                    annihilator: vec![lin(field, 1), lin(field, -1)],
                    bases: dedup(vec![lin(field, 1), lin(field, -1)]),
                }
            }
            Generator::Tripotent => {
                let d = diagonal_from(field, n, &[0, 1, -1], rng);
                Sample {
                    matrix: conjugate(d, rng),
                    annihilator: vec![x(), lin(field, 1), lin(field, -1)],
                    bases: dedup(vec![x(), lin(field, 1), lin(field, -1)]),
                }
            }
            Generator::Nilpotent => {
                // Jordan blocks of random sizes summing to n
                let mut j = DenseMatrix::zero(n, n, field.clone());
                let (mut start, mut largest) = (0, 0);
                while start < n {
                    let size = rng.random_range(1..=(n - start).min(4));
                    for k in start + 1..start + size {
                        j.set(k, k - 1, field.one());
                    }
                    largest = largest.max(size);
                    start += size;
                }
                let xk = DensePolynomial::monomial(field.clone(), field.one(), largest);
                Sample {
                    matrix: conjugate(j, rng),
                    annihilator: vec![xk],
                    bases: vec![x()],
                }
            }
            Generator::Companion => {
                let mut factors = Vec::new();
                let mut left = n;
                while left > 0 {
                    let d = rng.random_range(1..=left.min(2));
                    factors.push(random_monic(field, d, rng));
                    left -= d;
                }
                let p = factors
                    .iter()
                    .fold(DensePolynomial::one(field.clone()), |acc, q| {
                        acc.mul(q).expect("same field")
                    });
                Sample {
                    matrix: conjugate(DenseMatrix::companion(&p).expect("monic, degree n"), rng),
                    bases: dedup(factors.clone()),
                    annihilator: factors,
                }
            }
        }
    }
}

fn dedup<F: Field>(mut v: Vec<DensePolynomial<F>>) -> Vec<DensePolynomial<F>> {
    let mut out: Vec<DensePolynomial<F>> = Vec::new();
    for p in v.drain(..) {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// How the polynomial pair of a trial was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    Independent,
    SharedFactor,
    AnnihilatorSplit,
}

/// Draws `(f, g)` with degrees in `deg_lo..=deg_hi`: independent, sharing a
/// random common factor, or splitting the sample's annihilator between them
/// so that their lcm annihilates the matrix.
pub fn draw_pair<F: Field, R: Rng>(
    field: &F,
    (deg_lo, deg_hi): (usize, usize),
    annihilator: &[DensePolynomial<F>],
    rng: &mut R,
) -> (DensePolynomial<F>, DensePolynomial<F>, PairMode) {
    let mut deg = |rng: &mut R| rng.random_range(deg_lo..=deg_hi);
    let independent = |rng: &mut R, deg: &mut dyn FnMut(&mut R) -> usize| {
        let (df, dg) = (deg(rng), deg(rng));
        (
            random_poly(field, df, rng),
            random_poly(field, dg, rng),
            PairMode::Independent,
        )
    };
    match rng.random_range(0..3) {
        1 if deg_hi >= 1 => {
            let dh = rng.random_range(deg_lo.max(1)..=deg_hi);
            let h = random_poly(field, dh, rng);
            let u = random_poly(
                field,
                rng.random_range(0..=deg_hi - dh)
                    .max(deg_lo.saturating_sub(dh)),
                rng,
            );
            let v = random_poly(
                field,
                rng.random_range(0..=deg_hi - dh)
                    .max(deg_lo.saturating_sub(dh)),
                rng,
            );
            let (f, g) = (
                h.mul(&u).expect("same field"),
                h.mul(&v).expect("same field"),
            );
            (f, g, PairMode::SharedFactor)
        }
        2 if !annihilator.is_empty() => {
            let one = DensePolynomial::one(field.clone());
            let (mut f, mut g) = (one.clone(), one);
            for a in annihilator {
                match rng.random_range(0..3) {
                    0 => f = f.mul(a).expect("same field"),
                    1 => g = g.mul(a).expect("same field"),
                    _ => {
                        f = f.mul(a).expect("same field");
                        g = g.mul(a).expect("same field");
                    }
                }
            }
            // scale by random units so the inputs are not monic
            f = f.scale(&random_nonzero(field, rng));
            g = g.scale(&random_nonzero(field, rng));
            let fits =
                |p: &DensePolynomial<F>| p.degree().is_some_and(|d| (deg_lo..=deg_hi).contains(&d));
            if fits(&f) && fits(&g) {
                (f, g, PairMode::AnnihilatorSplit)
            } else {
                independent(rng, &mut deg)
            }
        }
        _ => independent(rng, &mut deg),
    }
}
