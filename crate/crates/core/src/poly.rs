//! Dense univariate polynomials and the extended Euclidean algorithm.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Polynomial with ascending coefficients: `coeffs[i]` multiplies `x^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DensePolynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> DensePolynomial<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        debug_assert!(coeffs.iter().all(|c| field.is_canonical(c)));
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        DensePolynomial { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&k| field.from_i64(k)).collect();
        Self::new(field, coeffs)
    }

    pub fn zero(field: F) -> Self {
        DensePolynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field.clone(), field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c·x^k`
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| self.field.is_one(c))
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub(crate) fn check_domain(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Euclidean division: `self = divisor·q + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_domain(divisor)?;
        self.divmod_raw(divisor)
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f.add(a, b)
            })
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        self.add_raw(&other.neg())
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone());
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), coeffs)
    }

    pub(crate) fn divmod_raw(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let lc = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(lc)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub(crate) fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod_raw(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    /// Whether `self` divides `other` (`self` must be nonzero).
    pub fn divides(&self, other: &Self) -> Result<bool> {
        let (_, r) = other.divmod(self)?;
        Ok(r.is_zero())
    }

    /// Ascending coefficients rendered with the field's element syntax.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| self.field.format_elem(c))
            .collect()
    }

    /// Parses whitespace-separated ascending coefficients.
    pub fn parse(text: &str, field: F) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut column = 1;
        for token in text.split_whitespace() {
            let offset = text[column - 1..].find(token).unwrap_or(0) + column - 1;
            column = offset + token.len() + 1;
            let c = field
                .parse_elem(token)
                .map_err(|m| Error::parse(1, offset + 1, m))?;
            coeffs.push(c);
        }
        Ok(Self::new(field, coeffs))
    }
}

/// Renders the ascending coefficient list; the zero polynomial prints as `0`.
impl<F: Field> fmt::Display for DensePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.coeff_strings().join(" "))
    }
}

impl<F: Field> fmt::Debug for DensePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.spec(), self)
    }
}

/// Witness of the Bezout relation `f·phi1 + phi2·g = D` together with the
/// cofactors `psi1 = g/D`, `psi2 = f/D` and the monic lcm `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate<F: Field> {
    pub f: DensePolynomial<F>,
    pub g: DensePolynomial<F>,
    pub gcd: DensePolynomial<F>,
    pub lcm: DensePolynomial<F>,
    pub phi1: DensePolynomial<F>,
    pub phi2: DensePolynomial<F>,
    pub psi1: DensePolynomial<F>,
    pub psi2: DensePolynomial<F>,
}

impl<F: Field> BezoutCertificate<F> {
    /// `f·g / D`, the lcm before monic normalization (zero if `D` is zero).
    pub fn raw_lcm(&self) -> DensePolynomial<F> {
        self.psi1.mul_raw(&self.f)
    }

    /// The scalar `c` with `f·g/D = c·M`; one when `M` is zero.
    pub fn lcm_scale(&self) -> F::Elem {
        let field = self.f.field();
        match (self.f.leading_coeff(), self.g.leading_coeff()) {
            (Some(a), Some(b)) => field.mul(a, b),
            _ => field.one(),
        }
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd.degree() == Some(0)
    }

    /// Names of the polynomial-level invariants that fail.
    pub fn check(&self) -> Vec<&'static str> {
        let mut failed = Vec::new();
        let fields_agree = [
            &self.g, &self.gcd, &self.lcm, &self.phi1, &self.phi2, &self.psi1, &self.psi2,
        ]
        .iter()
        .all(|p| p.field == self.f.field);
        if !fields_agree {
            return vec!["domain"];
        }
        let lhs = self
            .f
            .mul_raw(&self.phi1)
            .add_raw(&self.phi2.mul_raw(&self.g));
        if lhs != self.gcd {
            failed.push("bezout_identity");
        }
        if self.psi1.mul_raw(&self.gcd) != self.g || self.gcd.mul_raw(&self.psi2) != self.f {
            failed.push("cofactors");
        }
        let both_zero = self.f.is_zero() && self.g.is_zero();
        let gcd_ok = if both_zero {
            self.gcd.is_zero()
        } else {
            self.gcd.is_monic()
        };
        if !gcd_ok {
            failed.push("gcd_monic");
        }
        let lcm_ok = if self.f.is_zero() || self.g.is_zero() {
            self.lcm.is_zero()
        } else {
            self.lcm.is_monic()
        };
        if !lcm_ok {
            failed.push("lcm_monic");
        }
        let md = self.lcm.mul_raw(&self.gcd);
        let fg = self.f.mul_raw(&self.g);
        if md.monic() != fg.monic() {
            failed.push("lcm_associate");
        }
        let divides = |d: &DensePolynomial<F>, p: &DensePolynomial<F>| {
            if d.is_zero() {
                p.is_zero()
            } else {
                p.divmod_raw(d).map(|(_, r)| r.is_zero()).unwrap_or(false)
            }
        };
        if !(divides(&self.gcd, &self.f) && divides(&self.gcd, &self.g)) {
            failed.push("gcd_divides");
        }
        if !(divides(&self.f, &self.lcm) && divides(&self.g, &self.lcm)) {
            failed.push("lcm_multiple");
        }
        failed
    }
}

/// Extended Euclidean algorithm.
///
/// `D` is the monic gcd and `(phi1, phi2)` the Bezout pair produced by the
/// Euclidean back-substitution, so `deg phi1 < deg g - deg D` and
/// `deg phi2 < deg f - deg D` whenever neither input divides the other.
/// Zero inputs follow `D(f, 0) = monic(f)`, `M(f, 0) = 0`, `D(0, 0) = 0`.
pub fn xgcd<F: Field>(
    f: &DensePolynomial<F>,
    g: &DensePolynomial<F>,
) -> Result<BezoutCertificate<F>> {
    f.check_domain(g)?;
    let field = f.field().clone();
    let zero = DensePolynomial::zero(field.clone());

    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (DensePolynomial::one(field.clone()), zero.clone());
    let (mut t0, mut t1) = (zero.clone(), DensePolynomial::one(field.clone()));
    while !r1.is_zero() {
        let (q, r) = r0.divmod_raw(&r1)?;
        let s = s0.sub_raw(&q.mul_raw(&s1));
        let t = t0.sub_raw(&q.mul_raw(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }

    if r0.is_zero() {
        return Ok(BezoutCertificate {
            f: f.clone(),
            g: g.clone(),
            gcd: zero.clone(),
            lcm: zero.clone(),
            phi1: zero.clone(),
            phi2: zero.clone(),
            psi1: zero.clone(),
            psi2: zero,
        });
    }

    let lc_inv = field.inv(r0.leading_coeff().unwrap())?;
    let gcd = r0.scale(&lc_inv);
    let phi1 = s0.scale(&lc_inv);
    let phi2 = t0.scale(&lc_inv);
    let psi1 = g.exact_div(&gcd);
    let psi2 = f.exact_div(&gcd);
    let lcm = psi1.mul_raw(f).monic();
    Ok(BezoutCertificate {
        f: f.clone(),
        g: g.clone(),
        gcd,
        lcm,
        phi1,
        phi2,
        psi1,
        psi2,
    })
}

pub fn gcd<F: Field>(f: &DensePolynomial<F>, g: &DensePolynomial<F>) -> Result<DensePolynomial<F>> {
    Ok(xgcd(f, g)?.gcd)
}

pub fn lcm<F: Field>(f: &DensePolynomial<F>, g: &DensePolynomial<F>) -> Result<DensePolynomial<F>> {
    Ok(xgcd(f, g)?.lcm)
}

/// True iff the monic gcd is the constant 1.
pub fn coprime<F: Field>(f: &DensePolynomial<F>, g: &DensePolynomial<F>) -> Result<bool> {
    Ok(xgcd(f, g)?.is_coprime())
}

/// True iff every unordered pair of `factors` is coprime.
pub fn pairwise_coprime<F: Field>(factors: &[DensePolynomial<F>]) -> Result<bool> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if !coprime(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
