use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field instance so that runtime parameters (the modulus) stay out of the
/// element type.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `None` when the value has no image in the field (denominator divisible by p).
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc -= a * b`
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.sub(acc, &t);
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem, LinAlgError> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
            .ok_or_else(|| LinAlgError::BadScalar(format!("{s} has no image in {}", self.spec())))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
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
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn sub_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_integer() && b.is_integer() && acc.is_integer() {
            let v = acc.numer() - a.numer() * b.numer();
            *acc = BigRational::from_integer(v);
        } else {
            *acc -= a * b;
        }
    }
    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_integer() && b.is_integer() && acc.is_integer() {
            let v = acc.numer() + a.numer() * b.numer();
            *acc = BigRational::from_integer(v);
        } else {
            *acc += a * b;
        }
    }
}

/// The prime field F_p for a prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, LinAlgError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, v: &BigRational) -> Option<u32> {
        let p = BigInt::from(self.p);
        let num = v.numer().mod_floor(&p).to_u32()?;
        let den = v.denom().mod_floor(&p).to_u32()?;
        let inv = self.inv(&den)?;
        Some(self.mul(&num, &inv))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + self.p as u64 - *b as u64)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a as u64;
        let mut exp = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(acc as u32)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Runtime description of a field, as it appears in input files and flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    #[default]
    Rationals,
    #[serde(rename = "Fp")]
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u32 = rest
                .trim()
                .parse()
                .map_err(|_| LinAlgError::BadScalar(format!("bad modulus in {s}")))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(LinAlgError::BadScalar(format!("unknown field {s}; expected Q or Fp:<p>")))
    }
}

/// Parses `"3"`, `"-2/5"` and similar.
pub fn parse_rational(s: &str) -> Result<BigRational, LinAlgError> {
    let s = s.trim();
    let bad = || LinAlgError::BadScalar(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Whether a rational is a nonnegative integer; used by parsers.
pub fn as_small_integer(q: &BigRational) -> Option<i64> {
    if q.is_integer() && !q.is_negative() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_axioms_small() {
        let f = PrimeField::new(7).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                if b != 0 {
                    let inv = f.inv(&b).unwrap();
                    assert_eq!(f.mul(&b, &inv), 1);
                }
            }
        }
        assert_eq!(f.characteristic(), 7);
        assert!(PrimeField::new(8).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn rational_images_mod_p() {
        let f = PrimeField::new(5).unwrap();
        let half = parse_rational("1/2").unwrap();
        assert_eq!(f.from_rational(&half), Some(3));
        let fifth = parse_rational("1/5").unwrap();
        assert_eq!(f.from_rational(&fifth), None);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:13".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(13));
        assert!("Fp:12".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        let js: FieldSpec = serde_json::from_str(r#"{"Fp": 3}"#).unwrap();
        assert_eq!(js, FieldSpec::Prime(3));
        let js: FieldSpec = serde_json::from_str(r#""Q""#).unwrap();
        assert_eq!(js, FieldSpec::Rationals);
    }
}
