//! Exact scalar fields: prime fields `F_p` with `p < 2^62` and the rationals.
//!
//! Elements do not carry their field; every operation goes through the field
//! object, which keeps `F_p` elements as bare `u64` residues.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Echelon;

/// Upper bound (exclusive) on supported prime moduli.
pub const MAX_PRIME: u64 = 1 << 62;

/// Default primes for multi-prime rank certification.
pub const DEFAULT_PRIMES: [u64; 2] = [65537, 1_000_003];

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    fn format(&self, a: &Self::Elem) -> String;
    /// A random element: uniform over `F_p`, a small random integer over `Q`.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
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

    /// Reduced row echelon form of a dense row-major matrix.
    fn echelon(&self, rows: usize, cols: usize, data: &[Self::Elem]) -> Echelon<Self::Elem> {
        crate::linalg::gauss_jordan(self, rows, cols, data)
    }

    /// True when every integer in `1..=bound` is invertible in the field.
    fn supports_denominators_up_to(&self, bound: u64) -> bool {
        let c = self.characteristic();
        c == 0 || c > bound
    }

    /// Fails unless the characteristic is zero or exceeds `bound`.
    fn require_characteristic_above(&self, bound: u64) -> Result<()> {
        if self.supports_denominators_up_to(bound) {
            Ok(())
        } else {
            Err(Error::CharacteristicTooSmall {
                characteristic: self.characteristic(),
                bound,
            })
        }
    }
}

/// Runtime description of a field, as it appears in configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let digits = t.strip_prefix("F_").unwrap_or(t);
                let p: u64 = digits.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid field `{s}` (expected `q` or a prime)"),
                })?;
                PrimeField::new(p)?;
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

/// The prime field `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u128(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_u128(*a as u128 * *b as u128)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let eg = (*a as i128).extended_gcd(&(self.p as i128));
        debug_assert_eq!(eg.gcd, 1);
        Some(eg.x.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.from_bigint(q.denom());
        let inv = self.inv(&den).ok_or(Error::PrimeReduction(self.p))?;
        Ok(self.mul(&self.from_bigint(q.numer()), &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.random_range(0..self.p)
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Random rationals are integers drawn from `-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1000;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
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
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.random_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn echelon(&self, rows: usize, cols: usize, data: &[BigRational]) -> Echelon<BigRational> {
        crate::linalg::bareiss_echelon(rows, cols, data)
    }
}

/// Deterministic Miller-Rabin, exact for every `n < 3.3 * 10^24`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact integer value of a rational, if it is one.
pub fn rational_to_bigint(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 7, 65537, 1_000_003, 10007, 2305843009213693951];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        for c in [0u64, 1, 4, 9, 65535, 1_000_001, 561, 3215031751] {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn construction_checks() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert!(matches!(PrimeField::new(MAX_PRIME + 1), Err(Error::PrimeTooLarge(_))));
        assert!(PrimeField::new(65537).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        let seventh = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(f.from_rational(&seventh), Err(Error::PrimeReduction(7)));
    }

    #[test]
    fn inverses_large_prime() {
        let f = PrimeField::new(2305843009213693951).unwrap();
        for a in [1u64, 2, 12345678901234567, 2305843009213693950] {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("65537".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(65537));
        assert!("12".parse::<FieldSpec>().is_err());
    }
}
