//! Exact base-field arithmetic: the rationals, or a prime field F_p.
//!
//! Every coefficient in the library is a [`Scalar`] interpreted relative to a
//! [`FieldDesc`]. Rational arithmetic uses arbitrary-precision integers; no
//! floating point appears anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::CoreError;

/// Descriptor of the base field of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldDesc {
    /// The rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

/// An element of the base field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

impl FieldDesc {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            FieldDesc::Q => Ok(()),
            FieldDesc::Fp(p) => {
                if *p < 2 || !is_prime(*p) {
                    Err(CoreError::InvalidField(format!("{} is not prime", p)))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Q => 0,
            FieldDesc::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::Q(BigRational::zero()),
            FieldDesc::Fp(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::Q(BigRational::one()),
            FieldDesc::Fp(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldDesc::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(m)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldDesc::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldDesc::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldDesc::Q, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldDesc::Fp(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldDesc::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (FieldDesc::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, CoreError> {
        if self.is_zero(a) {
            return Err(CoreError::DivisionByZero);
        }
        match (self, a) {
            (FieldDesc::Q, Scalar::Q(x)) => Ok(Scalar::Q(x.recip())),
            (FieldDesc::Fp(p), Scalar::Fp(x)) => Ok(Scalar::Fp(mod_pow(*x, p - 2, *p))),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, CoreError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All r-th roots of unity contained in this field.
    pub fn roots_of_unity(&self, r: u32) -> Vec<Scalar> {
        match self {
            FieldDesc::Q => {
                let mut v = vec![self.one()];
                if r.is_multiple_of(2) {
                    v.push(self.from_i64(-1));
                }
                v
            }
            FieldDesc::Fp(p) => (1..*p)
                .map(Scalar::Fp)
                .filter(|s| self.pow(s, r) == self.one())
                .collect(),
        }
    }

    /// Parse a scalar from a string: an integer, or `num/den` over Q.
    pub fn parse(&self, s: &str) -> Result<Scalar, CoreError> {
        let s = s.trim();
        let bad = || CoreError::BadCoefficient(s.to_string());
        match self {
            FieldDesc::Q => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::Q(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(Scalar::Q(BigRational::from(n)))
                }
            }
            FieldDesc::Fp(_) => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: i64 = n.trim().parse().map_err(|_| bad())?;
                    let d: i64 = d.trim().parse().map_err(|_| bad())?;
                    self.div(&self.from_i64(n), &self.from_i64(d))
                } else {
                    let n: i64 = s.parse().map_err(|_| bad())?;
                    Ok(self.from_i64(n))
                }
            }
        }
    }

    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => x.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else if x.is_negative() {
                    write!(f, "-{}/{}", x.numer().magnitude(), x.denom())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{}", x),
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
