use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// The ground field: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// An exact field element.
///
/// Prime-field residues carry their modulus so that arithmetic needs no
/// context; mixing elements of different fields is a programming error and
/// panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, prime: u64 },
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
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

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::ZERO),
            Field::Prime(p) => Scalar::Fp { value: 0, prime: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::ONE),
            Field::Prime(p) => Scalar::Fp { value: 1 % p, prime: p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u64, prime: p },
        }
    }

    /// Maps a rational into this field; `None` when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(self, r: &Rational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(r.clone())),
            Field::Prime(p) => r.mod_prime(p).map(|value| Scalar::Fp { value, prime: p }),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Whether the integer `n` is a unit in the field.
    pub fn is_unit_integer(self, n: u64) -> bool {
        match self {
            Field::Rational => n != 0,
            Field::Prime(p) => n % p != 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) if p == q => {
                let s = a + b;
                Scalar::Fp { value: if s >= *p { s - p } else { s }, prime: *p }
            }
            _ => panic!("field mismatch in addition"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { value, prime } => {
                Scalar::Fp { value: if *value == 0 { 0 } else { prime - value }, prime: *prime }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) if p == q => {
                Scalar::Fp { value: mul_mod(*a, *b, *p), prime: *p }
            }
            _ => panic!("field mismatch in multiplication"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q),
            Scalar::Fp { value: 0, .. } => None,
            Scalar::Fp { value, prime } => {
                Some(Scalar::Fp { value: inv_mod(*value, *prime), prime: *prime })
            }
        }
    }

    /// `self / other`; `None` when dividing by zero.
    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `self += a * b`, the elimination kernel.
    pub fn add_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        *self = self.add(&a.mul(b));
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
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
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(a.add(&b), f.from_i64(1));
        assert_eq!(a.mul(&b), f.from_i64(1));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_embedding() {
        let r = Rational::new(1, 3);
        assert!(Field::Prime(3).from_rational(&r).is_none());
        assert_eq!(Field::Prime(5).from_rational(&r), Some(Field::Prime(5).from_i64(2)));
        assert!(Field::Prime(2).is_unit_integer(3));
        assert!(!Field::Prime(2).is_unit_integer(2));
        assert!(is_prime(101) && !is_prime(91));
    }
}
