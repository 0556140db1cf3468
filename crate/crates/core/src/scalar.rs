//! Exact field scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! Every coboundary, obstruction and gauge computation in this crate reduces to
//! linear algebra over one of these two fields. Arithmetic never rounds; division
//! by zero is reported as an error, never silently produced as a value.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Coefficient field of a session: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime-field constructor; rejects composite or unit moduli.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Residue { value: r, prime: *p }
            }
        }
    }

    /// Parses `"n"` or `"n/d"`. Over a prime field `n/d` means `n * d^{-1} mod p`.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer = BigInt::from_str(num_str).map_err(|_| ScalarError::Parse(s.to_string()))?;
        let denom = match den_str {
            Some(d) => BigInt::from_str(d).map_err(|_| ScalarError::Parse(s.to_string()))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(numer, denom))),
            Field::Prime(p) => {
                let n = bigint_mod(&numer, *p);
                let d = bigint_mod(&denom, *p);
                let num = Scalar::Residue { value: n, prime: *p };
                let den = Scalar::Residue { value: d, prime: *p };
                num.div(&den)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// One exact field element. The `Residue` variant carries its modulus so that
/// mixed-field arithmetic is caught immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, prime: p }, Scalar::Residue { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Residue { value: addmod(*a, *b, *p), prime: *p }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, prime } => {
                let v = if *value == 0 { 0 } else { prime - value };
                Scalar::Residue { value: v, prime: *prime }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, prime: p }, Scalar::Residue { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Residue { value: mulmod(*a, *b, *p), prime: *p }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    /// Exact multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, prime } => Scalar::Residue {
                value: powmod(*value, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    use num::{Integer, ToPrimitive};
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let a = f.parse("2/3").unwrap();
        let b = f.parse("-1/6").unwrap();
        assert_eq!(a.add(&b), f.parse("1/2").unwrap());
        assert_eq!(a.add(&a.neg()), f.zero());
        assert_eq!(a.mul(&a.inv().unwrap()), f.one());
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.integer(3);
        let b = f.integer(5);
        assert_eq!(a.mul(&b), f.integer(1));
        assert_eq!(a.inv().unwrap(), f.integer(5));
        assert_eq!(f.integer(-1), f.integer(6));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = Field::Rationals;
        assert_eq!(f.zero().inv(), Err(ScalarError::DivisionByZero));
        let g = Field::prime(5).unwrap();
        assert_eq!(g.one().div(&g.zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn prime_modulus_required() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(10007).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = Field::Rationals;
        for s in ["0", "7", "-3", "1/2", "-5/9"] {
            assert_eq!(f.parse(s).unwrap().to_string(), s);
        }
        // Non-canonical input normalizes.
        assert_eq!(f.parse("2/4").unwrap().to_string(), "1/2");
        let g = Field::prime(11).unwrap();
        assert_eq!(g.parse("1/2").unwrap(), g.integer(6));
    }
}
