//! Exact coefficient fields: prime fields `F_p` and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field with exact arithmetic. Field values are cheap handles; elements
/// never carry their field, so every operation goes through the handle.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Parses a decimal integer or a fraction `a/b`.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Number of elements, `None` for an infinite field.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration order (finite fields only).
    fn element(&self, i: u64) -> Self::Elem;
    fn spec(&self) -> FieldSpec;

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Serializable description of a field, as written in project files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Fp")]
    Prime { p: u64 },
    #[serde(rename = "Q")]
    Rationals,
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Prime { p } if !is_prime(*p) => {
                Err(Error::Parse(format!("field characteristic {p} is not prime")))
            }
            FieldSpec::Prime { p } if *p >= 1 << 31 => {
                Err(Error::Parse(format!("prime {p} too large (must be < 2^31)")))
            }
            _ => Ok(()),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime { p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        r.try_into().expect("residue fits in u64")
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
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let q = parse_rational(s)?;
        let den = self.reduce_big(q.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::Parse(format!("denominator of `{s}` vanishes mod {}", self.p)))?;
        Ok(self.mul(&self.reduce_big(q.numer()), &inv))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element(&self, i: u64) -> u64 {
        i % self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
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
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, i: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(i))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn rationals_parse() {
        let q = Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert!(q.parse("x").is_err());
        assert!(q.parse("1/0").is_err());
    }
}
