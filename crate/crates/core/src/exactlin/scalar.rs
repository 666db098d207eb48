use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// The exact base field shared by every scalar of one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    #[serde(rename = "rational")]
    Rationals,
    Prime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} too large (must be below 2^32)")]
    PrimeTooLarge(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Rational::ZERO),
            Field::Prime { p } => Scalar::Mod { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Rational::ONE),
            Field::Prime { p } => Scalar::Mod { v: 1 % p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Rational::from_integer(n)),
            Field::Prime { p } => Scalar::Mod { v: n.rem_euclid(*p as i64) as u64, p: *p },
        }
    }

    /// Maps a rational into the field. Fails when the denominator is not
    /// invertible modulo `p`.
    pub fn from_rational(&self, r: &Rational) -> Option<Scalar> {
        match self {
            Field::Rationals => Some(Scalar::Rat(r.clone())),
            Field::Prime { p } => {
                let pb = num_bigint::BigInt::from(*p);
                let reduce = |x: num_bigint::BigInt| -> u64 {
                    let m = ((x % &pb) + &pb) % &pb;
                    u64::try_from(m).expect("residue fits in u64")
                };
                let n = reduce(r.numer());
                let d = reduce(r.denom());
                let d = Scalar::Mod { v: d, p: *p }.inv()?;
                Some(&Scalar::Mod { v: n, p: *p } * &d)
            }
        }
    }

    /// Whether `n` is nonzero in the field.
    pub fn is_invertible_integer(&self, n: u64) -> bool {
        match self {
            Field::Rationals => n != 0,
            Field::Prime { p } => n % p != 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Prime-field elements carry their modulus so that
/// every scalar knows its field; mixing fields is a programming error and
/// panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Mod { v: u64, p: u64 },
}

fn mismatch() -> ! {
    panic!("scalars from different fields combined")
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => r.recip().map(Scalar::Rat),
            Scalar::Mod { v, p } => inv_mod(*v, *p).map(|v| Scalar::Mod { v, p: *p }),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// `self + a * b`, the elimination workhorse.
    pub fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return self.clone();
        }
        match (self, a, b) {
            (Scalar::Mod { v, p }, Scalar::Mod { v: x, .. }, Scalar::Mod { v: y, .. }) => {
                let prod = (*x as u128 * *y as u128 % *p as u128) as u64;
                Scalar::Mod { v: (v + prod) % p, p: *p }
            }
            _ => self + &(a * b),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                Scalar::Mod { v: (a + b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                Scalar::Mod { v: (a + p - b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: (*a as u128 * *b as u128 % *p as u128) as u64,
                p: *p,
            },
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: (p - v) % p, p: *p },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Rationals print canonically as `p/q` (bare integer when `q = 1`);
    /// prime-field elements print as their representative in `[0, p)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    /// Canonical string form, never a float.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let five = f.from_i64(-2);
        assert_eq!(&three * &five, f.from_i64(1));
        assert_eq!(three.inv().unwrap(), f.from_i64(5));
        assert_eq!(-&three, f.from_i64(4));
        assert!(f.zero().inv().is_none());
        let half = f.from_rational(&Rational::new(1, 2)).unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        assert!(f.from_rational(&Rational::new(1, 7)).is_none());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = &Field::Rationals.one() + &Field::prime(5).unwrap().one();
    }
}
