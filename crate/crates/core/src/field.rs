//! Scalar rings.
//!
//! A [`Field`] value is a *context*: it knows how to build and combine its
//! elements. Matrices and tensors carry their field next to the entries, so a
//! prime modulus is stored once and shared by every entry.
//!
//! Three fields are provided:
//!
//! - [`Rationals`]: arbitrary precision rationals, always reduced.
//! - [`PrimeField`]: integers modulo a prime `p < 2^16`.
//! - [`Reals`]: finite `f64` values, used where irrational numbers are
//!   intrinsic (singular values, entropies).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};

/// Tag identifying a scalar ring; also the ring line of the text formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rational,
    Prime(u32),
    Float,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "rational"),
            Ring::Prime(p) => write!(f, "fp {p}"),
            Ring::Float => write!(f, "float"),
        }
    }
}

/// Arithmetic context for a scalar ring.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ring(&self) -> Ring;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Rank of a matrix using the method appropriate for this ring: exact
    /// elimination for exact rings, thresholded singular values for floats.
    fn matrix_rank(&self, m: &Matrix<Self>) -> usize;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Float entries must stay finite; exact rings always are.
    fn is_finite(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Marker for rings with exact arithmetic; gates `rank_exact` and friends.
pub trait ExactField: Field {}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn ring(&self) -> Ring {
        Ring::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn matrix_rank(&self, m: &Matrix<Self>) -> usize {
        matrix::bareiss_rank(m)
    }
}

impl ExactField for Rationals {}

/// Integers modulo a prime `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 16;

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::invalid(format!("modulus {p} is not below 2^16")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn reduce(&self, q: &BigRational) -> Option<u32> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u32()?;
        let den = q.denom().mod_floor(&p).to_u32()?;
        self.inv(&den).map(|d| self.mul(&num, &d))
    }

    pub fn from_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Representative in `(-p/2, p/2]`, handy for printing and lifting.
    pub fn centered(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn ring(&self) -> Ring {
        Ring::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a % self.p == 0 {
            return None;
        }
        // a^(p-2) by square and multiply
        let mut base = *a as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(acc as u32)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn matrix_rank(&self, m: &Matrix<Self>) -> usize {
        matrix::gauss_rank(m)
    }
}

impl ExactField for PrimeField {}

/// Double precision reals. Entries are kept finite by construction.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Reals;

/// Relative tolerance used when a float rank is needed implicitly.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

impl Field for Reals {
    type Elem = f64;

    fn ring(&self) -> Ring {
        Ring::Float
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn from_i64(&self, v: i64) -> f64 {
        v as f64
    }
    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn inv(&self, a: &f64) -> Option<f64> {
        (*a != 0.0).then(|| 1.0 / a)
    }
    fn is_zero(&self, a: &f64) -> bool {
        *a == 0.0
    }
    fn is_finite(&self, a: &f64) -> bool {
        a.is_finite()
    }
    fn matrix_rank(&self, m: &Matrix<Self>) -> usize {
        matrix::rank_numeric(m, DEFAULT_REL_TOL).expect("float matrices hold finite entries")
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"p/q"` or an integer into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: integers bare, others as `p/q` with `q > 0`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back for huge numerators/denominators
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites_and_large_moduli() {
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn reduce_rationals_mod_p() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.reduce(&rational(1, 2)), Some(3));
        assert_eq!(f.reduce(&rational(-1, 1)), Some(4));
        assert_eq!(f.reduce(&rational(1, 5)), None);
    }

    #[test]
    fn rational_text_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/-8").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
