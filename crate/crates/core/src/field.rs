//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Field arithmetic carried by a context value, so that prime fields can be chosen at
/// run time.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num / den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    fn show(&self, a: &Self::Elem) -> String;
    fn describe(&self) -> String;
}

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
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Field("division by zero".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn show(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        "QQ".into()
    }
}

/// `GF(p)` for a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 63 {
            return Err(Error::Field(format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The smallest prime `p = 1 (mod t)` together with a primitive `t`-th root of unity.
    pub fn with_root_of_unity(t: u32) -> Result<(Self, u64)> {
        if t < 2 {
            return Err(Error::Field("roots of unity need t >= 2".into()));
        }
        const SEARCH_LIMIT: u64 = 1 << 32;
        let t = t as u64;
        let mut p = t + 1;
        while p < SEARCH_LIMIT {
            if is_prime(p) {
                let field = Self::new(p)?;
                if let Some(zeta) = field.primitive_root_of_unity(t) {
                    return Ok((field, zeta));
                }
            }
            p += t;
        }
        Err(Error::Field(format!("no prime below {SEARCH_LIMIT} is 1 mod {t}")))
    }

    /// The smallest element of multiplicative order exactly `t`.
    pub fn primitive_root_of_unity(&self, t: u64) -> Option<u64> {
        if (self.p - 1) % t != 0 {
            return None;
        }
        (1..self.p).find(|&g| self.pow(g, t) == 1 && (1..t).all(|k| self.pow(g, k) != 1))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b % self.p) as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow(*a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let reduce = |v: &BigInt| -> u64 {
            let r = ((v % &p) + &p) % &p;
            u64::try_from(r.abs()).expect("reduced below p")
        };
        let d = self
            .inv(&reduce(den))
            .ok_or_else(|| Error::Field(format!("{den} is not invertible mod {}", self.p)))?;
        Ok(self.mul(&reduce(num), &d))
    }

    fn show(&self, a: &u64) -> String {
        a.to_string()
    }

    fn describe(&self) -> String {
        format!("GF({})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_fields() {
        let (f, z) = PrimeField::with_root_of_unity(2).unwrap();
        assert_eq!((f.modulus(), z), (3, 2));
        let (f, z) = PrimeField::with_root_of_unity(3).unwrap();
        assert_eq!(f.modulus(), 7);
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), 4);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rationals_are_exact() {
        let q = Rationals;
        let half = q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(q.add(&half, &half), q.one());
        assert_eq!(q.inv(&q.zero()), None);
    }
}
