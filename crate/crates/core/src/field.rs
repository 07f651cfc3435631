//! Exact fields: the rationals and prime fields `𝔽_p`, plus the
//! specification of a field together with a root of unity used to turn
//! `ℤ/m`-valued cocycles into multiplicative ones.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// `𝔽_p` with `p < 2³²`, elements stored reduced in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::FieldSpec(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::FieldSpec(format!("prime {p} too large (limit 2^32)")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(&x, &a);
            k += 1;
        }
        Some(k)
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
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow(a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field and, optionally, a designated root of unity `ζ`.
///
/// Characteristic 0 means `ℚ`, whose only roots of unity are `±1`, so twist
/// moduli there are limited to 1 and 2. In characteristic `p` a modulus `m`
/// needs `m | p − 1` and an element of order exactly `m`; for `m ≤ 2` it is
/// unique and may be omitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<u64>,
}

/// The root of unity of a [`FieldSpec`] resolved against a modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Zeta {
    Rational(i64),
    Prime(u64),
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec {
        characteristic: 0,
        zeta: None,
    };

    pub fn prime(p: u64, zeta: Option<u64>) -> Self {
        FieldSpec {
            characteristic: p,
            zeta,
        }
    }

    /// Checks the specification against a twist modulus and returns `ζ`.
    pub fn zeta_for(&self, m: u64) -> Result<Zeta> {
        if m == 0 {
            return Err(Error::FieldSpec("modulus must be positive".into()));
        }
        if self.characteristic == 0 {
            let z = match (m, self.zeta) {
                (1, None | Some(1)) => 1,
                (2, None) => -1,
                (m, Some(z)) if m <= 2 => {
                    return Err(Error::FieldSpec(format!(
                        "zeta {z} given for Q; the root of order {m} is implied"
                    )))
                }
                _ => {
                    return Err(Error::Unembeddable(format!(
                        "Q has no primitive root of unity of order {m}"
                    )))
                }
            };
            return Ok(Zeta::Rational(z));
        }
        let f = PrimeField::new(self.characteristic)?;
        let p = f.p();
        if (p - 1) % m != 0 {
            return Err(Error::Unembeddable(format!("{m} does not divide {p} - 1")));
        }
        let z = match self.zeta {
            Some(z) => z,
            None if m == 1 => 1,
            None if m == 2 => p - 1,
            None => {
                return Err(Error::FieldSpec(format!(
                    "a root of unity of order {m} in F_{p} must be given"
                )))
            }
        };
        if z >= p {
            return Err(Error::FieldSpec(format!("zeta {z} not reduced mod {p}")));
        }
        match f.order_of(z) {
            Some(k) if k == m => Ok(Zeta::Prime(z)),
            k => Err(Error::FieldSpec(format!(
                "zeta {z} has order {} in F_{p}, expected {m}",
                k.map_or("undefined".to_string(), |k| k.to_string())
            ))),
        }
    }

    /// Runs `v` against the concrete field, with `ζ` resolved for modulus `m`.
    pub fn visit<V: FieldVisitor>(&self, m: u64, v: V) -> Result<V::Output> {
        match self.zeta_for(m)? {
            Zeta::Rational(z) => {
                let f = Rationals;
                let zeta = f.from_i64(z);
                Ok(v.visit(f, zeta))
            }
            Zeta::Prime(z) => Ok(v.visit(PrimeField::new(self.characteristic)?, z)),
        }
    }

    pub fn describe(&self) -> String {
        match (self.characteristic, self.zeta) {
            (0, _) => "Q".to_string(),
            (p, None) => format!("F_{p}"),
            (p, Some(z)) => format!("F_{p} (zeta = {z})"),
        }
    }
}

/// Code generic over the field, dispatched from a runtime [`FieldSpec`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field + 'static>(self, field: F, zeta: F::Elem) -> Self::Output;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.order_of(2), Some(3));
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn zeta_resolution() {
        assert_eq!(FieldSpec::prime(3, Some(2)).zeta_for(2).unwrap(), Zeta::Prime(2));
        assert_eq!(FieldSpec::prime(7, Some(2)).zeta_for(3).unwrap(), Zeta::Prime(2));
        assert_eq!(FieldSpec::prime(5, None).zeta_for(1).unwrap(), Zeta::Prime(1));
        assert_eq!(FieldSpec::RATIONALS.zeta_for(2).unwrap(), Zeta::Rational(-1));
        assert!(matches!(FieldSpec::prime(5, Some(2)).zeta_for(3), Err(Error::Unembeddable(_))));
        assert!(matches!(FieldSpec::prime(7, Some(3)).zeta_for(3), Err(Error::FieldSpec(_))));
        assert!(matches!(FieldSpec::RATIONALS.zeta_for(3), Err(Error::Unembeddable(_))));
        assert!(matches!(FieldSpec::prime(7, None).zeta_for(3), Err(Error::FieldSpec(_))));
    }

    #[test]
    fn rationals_invert() {
        let q = Rationals;
        let a = q.from_i64(-3);
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
        assert!(q.inv(&q.zero()).is_none());
    }
}
