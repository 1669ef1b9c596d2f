//! Exact field arithmetic over the rationals and over prime fields GF(p).
//!
//! A [`Field`] value is a small context object (the field itself); elements
//! are the associated type [`Field::Elem`]. Rationals are arbitrary-precision
//! and always kept in lowest terms with positive denominator (guaranteed by
//! `num::BigRational`); prime-field elements are canonical residues in
//! `[0, p)` stored as `u64`.
//!
//! No floating point appears anywhere in the crate: stability thresholds such
//! as n/(N+1) must be compared exactly.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num::bigint::{BigInt, BigUint, Sign};
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact computable field.
///
/// The trait deliberately exposes a total order on elements
/// ([`Field::total_cmp`]): numeric for the rationals, residue order for
/// GF(p). It is used to sort eigenvalues canonically and to enumerate vectors
/// deterministically; it is not compatible with the arithmetic in any deeper
/// sense.
pub trait Field: Clone + Eq + Debug {
    /// Field elements: exact, hashable, order-free values.
    type Elem: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Canonical embedding of a small integer.
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Fixed total order on elements (numeric over ℚ, residue order over GF(p)).
    fn total_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Canonical display form (used by serialization).
    fn format(&self, a: &Self::Elem) -> String;

    /// Parse the canonical display form back.
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Every field element in canonical (total-order) sequence for finite
    /// fields; `None` for infinite fields. This is the hook that decides
    /// whether exhaustive flag and basis enumerations are available.
    fn all_elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// All distinct roots of the polynomial coeffs[0] + coeffs[1]·x + … that
    /// lie in the field, sorted by the field's total order. The zero
    /// polynomial yields an empty list (callers never pass it).
    fn poly_roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    /// JSON form of an element: rationals as canonical `"p/q"` strings,
    /// prime-field residues as integers.
    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value;

    /// Parse the JSON form back ([`Field::elem_json`] round-trips). Rationals
    /// also accept plain JSON integers; prime-field values must be integers,
    /// which are reduced into `[0, p)`.
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;
}

/// The field ℚ of arbitrary-precision rationals.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn total_cmp(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn poly_roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        rational_poly_roots(coeffs)
    }
    fn elem_json(&self, a: &BigRational) -> serde_json::Value {
        serde_json::Value::String(format_rational(a))
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<BigRational> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::input(format!("not an exact rational: {n}"))),
            other => Err(Error::input(format!(
                "expected a rational as a string or integer, got {other}"
            ))),
        }
    }
}

/// The prime field GF(p), elements as canonical residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct GF(p), validating primality (p is expected to be small; the
    /// crate's finite-field enumerations are only tractable for small p).
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::input(format!("{p} is not a prime")));
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return Err(Error::input(format!("{p} is not a prime")));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All field elements in residue order, 0..p.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p is small (fits in u32 in every supported use), so the product
        // cannot overflow u64; guard anyway via u128.
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut base = *a as u128;
        let mut exp = self.p - 2;
        let p = self.p as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }
    fn total_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("cannot parse {s:?} as a GF({}) element", self.p)))?;
        Ok(self.from_i64(n))
    }
    fn all_elements(&self) -> Option<Vec<u64>> {
        Some(self.elements().collect())
    }
    fn poly_roots(&self, coeffs: &[u64]) -> Vec<u64> {
        if coeffs.iter().all(|c| *c == 0) {
            return Vec::new();
        }
        self.elements()
            .filter(|x| {
                let mut acc = 0u64;
                for c in coeffs.iter().rev() {
                    acc = self.add(&self.mul(&acc, x), c);
                }
                acc == 0
            })
            .collect()
    }
    fn elem_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::Number((*a).into())
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<u64> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::input(format!("not a GF({}) residue: {n}", self.p))),
            other => Err(Error::input(format!(
                "expected a GF({}) element as an integer, got {other}",
                self.p
            ))),
        }
    }
}

/// Canonical string form of a rational: "p/q" with q > 0 in lowest terms,
/// plain "p" when the denominator is 1.
pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parse "p/q" or "p" (arbitrary-precision integers).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::input(format!("cannot parse {t:?} as an integer")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
    }
}

/// Rational from an integer pair (convenience for tests and constructions).
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational n/1 from an unsigned integer.
pub fn urat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of a rational as −1 / 0 / +1.
pub fn rational_sign(a: &BigRational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

/// Horner evaluation of coeffs[0] + coeffs[1]·x + … at a rational point.
fn poly_eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All positive divisors of n ≥ 1, ascending, by trial-division factoring.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rem = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rem {
        let mut e = 0u32;
        while (&rem % &d).is_zero() {
            rem /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1u32;
    }
    if rem > BigUint::one() {
        factors.push((rem, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d0 in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d0 * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Distinct rational roots of coeffs[0] + coeffs[1]·x + …, ascending.
///
/// Clears denominators to a primitive integer polynomial and applies the
/// rational root theorem: every root p/q in lowest terms has p dividing the
/// constant term and q dividing the leading coefficient.
fn rational_poly_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut cs: Vec<BigRational> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    if cs.is_empty() {
        return Vec::new();
    }
    let mut roots: Vec<BigRational> = Vec::new();
    let mut low = 0;
    while cs[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let cs = &cs[low..];
    if cs.len() > 1 {
        let mut denom_lcm = BigInt::one();
        for c in cs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scale = BigRational::from_integer(denom_lcm);
        let ints: Vec<BigInt> = cs.iter().map(|c| (c * &scale).to_integer()).collect();
        let lead = ints.last().expect("nonempty").magnitude().clone();
        for numer in divisors(ints[0].magnitude()) {
            for denom in divisors(&lead) {
                for sign in [Sign::Plus, Sign::Minus] {
                    let cand = BigRational::new(
                        BigInt::from_biguint(sign, numer.clone()),
                        BigInt::from_biguint(Sign::Plus, denom.clone()),
                    );
                    if !roots.contains(&cand) && poly_eval(cs, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}
