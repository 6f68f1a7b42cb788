//! Exact coefficient fields.
//!
//! A [`Field`] is a value describing a coefficient domain; its elements are
//! plain data (`Field::Elem`) and every arithmetic operation goes through the
//! descriptor. Two implementations are provided: [`RationalField`], generic
//! over any `num-integer` integer type and normally used as
//! [`Rationals`](crate::Rationals) over `BigInt`, and [`PrimeField`] for
//! GF(p) with a runtime modulus `p < 2^31`.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MODULUS_BOUND: u64 = 1 << 31;

/// Runtime identification of a supported field: `Q` or `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

impl FieldSpec {
    /// Validated prime field spec.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MODULUS_BOUND).contains(&p) || !is_prime(p) {
            return Err(Error::BadField(p.to_string()));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldSpec::Rationals => FieldKind::Rationals,
            FieldSpec::Prime(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => u64::from(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or a decimal prime such as `7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadField(s.to_string()));
        }
        let p: u64 = s.parse().map_err(|_| Error::BadField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// A field descriptor together with the operations on its elements.
///
/// Elements are always kept in canonical form, so `==` on `Elem` is field
/// equality.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, k: i64) -> Self::Elem;

    /// `num / den`; fails when `den` vanishes in the field.
    fn from_fraction(&self, num: i64, den: i64) -> Result<Self::Elem> {
        let d = self.from_i64(den);
        let inv = self.inv(&d)?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` satisfies the canonical-form invariant of this field.
    fn is_canonical(&self, a: &Self::Elem) -> bool;

    /// Parses `a` or `a/b`.
    fn parse_elem(&self, s: &str) -> std::result::Result<Self::Elem, String>;

    fn format_elem(&self, a: &Self::Elem) -> String;
}

/// Integer types usable as numerator/denominator of [`RationalField`].
pub trait IntegerScalar:
    Integer + Signed + Clone + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

impl<T> IntegerScalar for T where
    T: Integer + Signed + Clone + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

/// The field of fractions of an integer type.
pub struct RationalField<T> {
    _int: PhantomData<fn() -> T>,
}

impl<T> RationalField<T> {
    pub const fn new() -> Self {
        RationalField { _int: PhantomData }
    }
}

impl<T> Default for RationalField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for RationalField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for RationalField<T> {}

impl<T> PartialEq for RationalField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for RationalField<T> {}

impl<T> fmt::Debug for RationalField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

fn parse_int<T: IntegerScalar>(s: &str) -> std::result::Result<T, String> {
    let body = s.strip_prefix('+').unwrap_or(s);
    let digits = body.strip_prefix('-').unwrap_or(body);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer `{s}`"));
    }
    T::from_str_radix(body, 10).map_err(|_| format!("integer out of range `{s}`"))
}

fn split_fraction(s: &str) -> std::result::Result<(&str, Option<&str>), String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty entry".to_string());
    }
    match s.split_once('/') {
        Some((n, d)) => Ok((n, Some(d))),
        None => Ok((s, None)),
    }
}

impl<T: IntegerScalar> Field for RationalField<T> {
    type Elem = Ratio<T>;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> Ratio<T> {
        Ratio::zero()
    }

    fn one(&self) -> Ratio<T> {
        Ratio::one()
    }

    fn from_i64(&self, k: i64) -> Ratio<T> {
        Ratio::from_integer(T::from_i64(k).expect("integer type cannot hold i64 value"))
    }

    fn is_zero(&self, a: &Ratio<T>) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Ratio<T>, b: &Ratio<T>) -> Ratio<T> {
        a + b
    }

    fn sub(&self, a: &Ratio<T>, b: &Ratio<T>) -> Ratio<T> {
        a - b
    }

    fn mul(&self, a: &Ratio<T>, b: &Ratio<T>) -> Ratio<T> {
        a * b
    }

    fn neg(&self, a: &Ratio<T>) -> Ratio<T> {
        -a.clone()
    }

    fn inv(&self, a: &Ratio<T>) -> Result<Ratio<T>> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn is_canonical(&self, a: &Ratio<T>) -> bool {
        a.denom().is_positive() && a.numer().gcd(a.denom()).is_one()
    }

    fn parse_elem(&self, s: &str) -> std::result::Result<Ratio<T>, String> {
        let (n, d) = split_fraction(s)?;
        let numer: T = parse_int(n)?;
        let denom: T = match d {
            Some(d) => parse_int(d)?,
            None => T::one(),
        };
        if denom.is_zero() {
            return Err(format!("zero denominator in `{}`", s.trim()));
        }
        Ok(Ratio::new(numer, denom))
    }

    fn format_elem(&self, a: &Ratio<T>) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// GF(p) for a prime `p < 2^31`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match FieldSpec::prime(p)? {
            FieldSpec::Prime(p) => Ok(PrimeField { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, k: i128) -> u32 {
        k.rem_euclid(i128::from(self.p)) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, k: i64) -> u32 {
        k.rem_euclid(i64::from(self.p)) as u32
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        // p < 2^31 so the sum fits in u32
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) * u64::from(*b)) % u64::from(self.p)) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(*a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(t0))
    }

    fn is_canonical(&self, a: &u32) -> bool {
        *a < self.p
    }

    fn parse_elem(&self, s: &str) -> std::result::Result<u32, String> {
        let (n, d) = split_fraction(s)?;
        let reduce = |t: &str| -> std::result::Result<u32, String> {
            let body = t.strip_prefix('+').unwrap_or(t);
            let digits = body.strip_prefix('-').unwrap_or(body);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("invalid residue `{t}`"));
            }
            let k: i128 = body
                .parse()
                .map_err(|_| format!("residue out of range `{t}`"))?;
            Ok(self.reduce_i128(k))
        };
        let numer = reduce(n)?;
        match d {
            None => Ok(numer),
            Some(d) => {
                let denom = reduce(d)?;
                let inv = self.inv(&denom).map_err(|_| {
                    format!("denominator vanishes mod {} in `{}`", self.p, s.trim())
                })?;
                Ok(self.mul(&numer, &inv))
            }
        }
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `n < 2^32` (bases 2, 7, 61).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 61] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A field element bundled with its field, for checked mixed-domain use.
///
/// Bulk algorithms work on bare `Field::Elem` values; this wrapper is the
/// entry point when operands may come from different fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldScalar<F: Field> {
    field: F,
    value: F::Elem,
}

impl<F: Field> FieldScalar<F> {
    pub fn new(field: F, value: F::Elem) -> Self {
        debug_assert!(field.is_canonical(&value));
        FieldScalar { field, value }
    }

    pub fn from_integer(k: i64, field: F) -> Self {
        let value = field.from_i64(k);
        FieldScalar { field, value }
    }

    pub fn parse(s: &str, field: F) -> Result<Self> {
        let value = field.parse_elem(s).map_err(|m| Error::parse(1, 1, m))?;
        Ok(FieldScalar { field, value })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn value(&self) -> &F::Elem {
        &self.value
    }

    pub fn into_value(self) -> F::Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    fn wrap(&self, value: F::Elem) -> Self {
        FieldScalar {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(&self.value)?))
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.value == other.value)
    }
}

impl<F: Field> fmt::Display for FieldScalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rationals;
    use num_bigint::BigInt;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn q(s: &str) -> FieldScalar<Rationals> {
        FieldScalar::parse(s, Rationals::new()).unwrap()
    }

    fn r(k: i64, p: u64) -> FieldScalar<PrimeField> {
        FieldScalar::from_integer(k, gf(p))
    }

    #[test]
    fn prime_field_examples() {
        assert_eq!(*r(5, 7).add(&r(4, 7)).unwrap().value(), 2);
        assert_eq!(*r(3, 7).mul(&r(5, 7)).unwrap().value(), 1);
        assert_eq!(*r(3, 7).inv().unwrap().value(), 5);
        assert_eq!(*r(-1, 5).value(), 4);
        assert_eq!(*r(2, 3).neg().value(), 1);
        assert_eq!(r(1, 7).inv().unwrap(), r(1, 7));
    }

    #[test]
    fn rational_examples() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("2/3").mul(&q("3/4")).unwrap(), q("1/2"));
        assert_eq!(q("-2/5").inv().unwrap(), q("-5/2"));
        let z = q("1/2").sub(&q("1/2")).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.value().numer(), &BigInt::from(0));
        assert_eq!(z.value().denom(), &BigInt::from(1));
        assert_eq!(q("4/-6").to_string(), "-2/3");
    }

    #[test]
    fn identities() {
        let x = q("-7/3");
        assert_eq!(x.add(&q("0")).unwrap(), x);
        assert_eq!(x.mul(&q("1")).unwrap(), x);
        let y = r(6, 11);
        assert_eq!(y.add(&r(0, 11)).unwrap(), y);
        assert_eq!(y.mul(&r(1, 11)).unwrap(), y);
    }

    #[test]
    fn domain_mismatch_and_zero_division() {
        assert_eq!(r(1, 7).add(&r(1, 5)), Err(Error::DomainMismatch));
        assert_eq!(r(1, 7).mul(&r(1, 5)), Err(Error::DomainMismatch));
        assert_eq!(r(1, 7).equals(&r(1, 5)), Err(Error::DomainMismatch));
        assert_eq!(r(0, 7).inv(), Err(Error::DivisionByZero));
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!(matches!("6".parse::<FieldSpec>(), Err(Error::BadField(_))));
        assert!(matches!("1".parse::<FieldSpec>(), Err(Error::BadField(_))));
        assert!(matches!(
            "2147483648".parse::<FieldSpec>(),
            Err(Error::BadField(_))
        ));
        assert!(matches!("q".parse::<FieldSpec>(), Err(Error::BadField(_))));
        assert_eq!(
            "2147483647".parse::<FieldSpec>().unwrap(),
            FieldSpec::Prime(2147483647)
        );
        assert_eq!(FieldSpec::Prime(7).characteristic(), 7);
        assert_eq!(FieldSpec::Rationals.characteristic(), 0);
        assert_eq!(FieldSpec::Rationals.to_string(), "Q");
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        let naive = |n: u64| {
            n >= 2
                && (2..)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), naive(n), "n = {n}");
        }
        // strong pseudoprimes to several small bases
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            25_326_001,
            4_759_123_141,
        ] {
            if n < 1 << 32 {
                assert!(!is_prime(n), "n = {n}");
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        let f = Rationals::new();
        assert!(f.parse_elem("x").is_err());
        assert!(f.parse_elem("1/0").is_err());
        assert!(f.parse_elem("").is_err());
        assert!(f.parse_elem("1//2").is_err());
        let g = gf(7);
        assert_eq!(g.parse_elem("-1").unwrap(), 6);
        assert_eq!(g.parse_elem("1/2").unwrap(), 4);
        assert!(g.parse_elem("1/7").is_err());
    }

    #[test]
    fn generic_over_machine_integers() {
        let f = RationalField::<i64>::new();
        let a = f.parse_elem("3/4").unwrap();
        let b = f.from_fraction(1, 4).unwrap();
        assert_eq!(f.format_elem(&f.add(&a, &b)), "1");
        assert!(f.is_canonical(&f.mul(&a, &b)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = FieldScalar<Rationals>> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| {
                let f = Rationals::new();
                let v = f.from_fraction(n, d).unwrap();
                FieldScalar::new(f, v)
            })
        }

        fn axioms<F: Field>(a: FieldScalar<F>, b: FieldScalar<F>, c: FieldScalar<F>) {
            let f = a.field().clone();
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            assert!(a.add(&a.neg()).unwrap().is_zero());
            if !a.is_zero() {
                assert!(f.is_one(a.mul(&a.inv().unwrap()).unwrap().value()));
            }
            for v in [
                a.add(&b).unwrap(),
                a.mul(&c).unwrap(),
                a.sub(&b).unwrap(),
                c.neg(),
            ] {
                assert!(f.is_canonical(v.value()));
            }
        }

        proptest! {
            #[test]
            fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
                axioms(a, b, c);
            }

            #[test]
            fn prime_field_axioms(
                p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 2147483647]),
                a in any::<i64>(), b in any::<i64>(), c in any::<i64>(),
            ) {
                let f = gf(p);
                axioms(
                    FieldScalar::from_integer(a, f),
                    FieldScalar::from_integer(b, f),
                    FieldScalar::from_integer(c, f),
                );
            }

            #[test]
            fn prime_field_matches_integer_arithmetic(
                p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65521, 2147483647]),
                a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000,
            ) {
                let f = gf(p);
                let m = p as i64;
                let (x, y) = (f.from_i64(a), f.from_i64(b));
                prop_assert_eq!(i64::from(f.add(&x, &y)), (a + b).rem_euclid(m));
                prop_assert_eq!(i64::from(f.sub(&x, &y)), (a - b).rem_euclid(m));
                prop_assert_eq!(
                    i128::from(f.mul(&x, &y)),
                    (i128::from(a) * i128::from(b)).rem_euclid(i128::from(m))
                );
                prop_assert_eq!(i64::from(f.neg(&x)), (-a).rem_euclid(m));
            }
        }
    }
}
