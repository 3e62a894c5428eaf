//! Coefficient fields and homogeneous monomials of `k[t]`.
//!
//! Two coefficient fields are supported: the rationals and the prime fields
//! `Z/p`. The choice is made at run time, so scalars carry their field with
//! them. Mixing scalars from different fields is a programming error and
//! panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime modulus accepted; keeps products inside `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The coefficient field `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `Z/p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "modulus {p} exceeds {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Builds `num / den`; fails when `den` is zero in this field.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::Domain("zero denominator".into()));
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let n = self.from_int(0).with_value(reduce(num));
                let d = self.from_int(0).with_value(reduce(den));
                n.div(&d)
            }
        }
    }

    /// Parses an integer or `a/b` fraction into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse {
            line: 0,
            message: format!("invalid coefficient `{text}`"),
        };
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_fraction(&num, &den)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(p) = s.strip_prefix("Zp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!(
            "expected `Q` or `Zp:<p>`, got `{s}`"
        )))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Zp:{p}"),
        }
    }
}

/// An exact element of the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    fn with_value(&self, value: u64) -> Scalar {
        match self {
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                value: value % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(_) => unreachable!("with_value on a rational"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                // Fermat: a^(p-2) = a^-1 mod p
                let mut base = *value;
                let mut exp = modulus - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % modulus;
                    }
                    base = base * base % modulus;
                    exp >>= 1;
                }
                Scalar::Modular {
                    value: acc,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
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

/// A homogeneous element `c·t^e` of `k[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: Scalar,
    exponent: u32,
}

impl Monomial {
    pub fn new(coeff: Scalar, exponent: u32) -> Monomial {
        let exponent = if coeff.is_zero() { 0 } else { exponent };
        Monomial { coeff, exponent }
    }

    pub fn zero(field: Field) -> Monomial {
        Monomial::new(field.zero(), 0)
    }

    /// `t^e` with unit coefficient.
    pub fn monic(field: Field, exponent: u32) -> Monomial {
        Monomial::new(field.one(), exponent)
    }

    pub fn coeff(&self) -> &Scalar {
        &self.coeff
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn field(&self) -> Field {
        self.coeff.field()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &other.coeff, self.exponent + other.exponent)
    }

    /// Sum of two monomials; only defined when the exponents agree or one side is zero.
    pub fn add(&self, other: &Monomial) -> Result<Monomial> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.exponent != other.exponent {
            return Err(Error::NonHomogeneous(format!(
                "cannot add t^{} and t^{}",
                self.exponent, other.exponent
            )));
        }
        Ok(Monomial::new(&self.coeff + &other.coeff, self.exponent))
    }

    /// Whether `self` divides `other` in `k[t]`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.is_zero() || self.exponent <= other.exponent
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}t^{}", self.coeff, self.exponent)
    }
}

/// Monic generator of the ideal `(a, b)`: `t^min(e_a, e_b)`.
pub fn monomial_gcd(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::Domain("gcd of two zero monomials".into())),
        (true, false) => Ok(Monomial::monic(b.field(), b.exponent)),
        (false, true) => Ok(Monomial::monic(a.field(), a.exponent)),
        (false, false) => Ok(Monomial::monic(a.field(), a.exponent.min(b.exponent))),
    }
}
