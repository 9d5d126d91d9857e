//! Exact coefficient arithmetic over the rationals or a prime field GF(p).
//!
//! Every value is kept in canonical form: rationals are reduced with a
//! positive denominator (delegated to `num-rational`), prime-field residues
//! lie in `0..p`. Arithmetic never rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field of a presentation: the rationals or GF(p), p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

/// One exact field element. The variant must match the owning `FieldSpec`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coef {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular inverse by extended Euclid; `a` must be a unit mod `p`.
fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coef {
        match self {
            FieldSpec::Rational => Coef::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Coef::Fp(0),
        }
    }

    pub fn one(&self) -> Coef {
        match self {
            FieldSpec::Rational => Coef::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Coef::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coef {
        match self {
            FieldSpec::Rational => Coef::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => Coef::Fp((n.rem_euclid(*p as i64)) as u64),
        }
    }

    /// Builds `num/den` in the field; rejects zero denominators and, over
    /// GF(p), denominators divisible by p.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coef> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rational => Ok(Coef::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(p) => {
                let d = den.rem_euclid(*p as i64) as u64;
                let inv = inv_mod(d, *p as u64)
                    .ok_or_else(|| Error::NotInvertibleModP(den.to_string(), *p))?;
                let n = num.rem_euclid(*p as i64) as u64;
                Ok(Coef::Fp(n * inv % *p as u64))
            }
        }
    }

    /// Builds `num/den` from arbitrary-precision integers.
    pub fn from_big_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coef> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rational => Ok(Coef::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits u64")
                };
                let d = reduce(den);
                let inv = inv_mod(d, *p as u64)
                    .ok_or_else(|| Error::NotInvertibleModP(den.to_string(), *p))?;
                Ok(Coef::Fp(
                    ((reduce(num) as u128 * inv as u128) % *p as u128) as u64,
                ))
            }
        }
    }

    pub fn is_zero(&self, a: &Coef) -> bool {
        match a {
            Coef::Rat(r) => r.is_zero(),
            Coef::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        match (self, a, b) {
            (FieldSpec::Rational, Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
            (FieldSpec::Prime(p), Coef::Fp(x), Coef::Fp(y)) => Coef::Fp((x + y) % *p as u64),
            _ => unreachable!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &Coef, b: &Coef) -> Coef {
        match (self, a, b) {
            (FieldSpec::Rational, Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x - y),
            (FieldSpec::Prime(p), Coef::Fp(x), Coef::Fp(y)) => {
                Coef::Fp((x + *p as u64 - y) % *p as u64)
            }
            _ => unreachable!("mixed field elements"),
        }
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        match (self, a, b) {
            (FieldSpec::Rational, Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
            (FieldSpec::Prime(p), Coef::Fp(x), Coef::Fp(y)) => {
                Coef::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => unreachable!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Coef) -> Coef {
        match (self, a) {
            (FieldSpec::Rational, Coef::Rat(x)) => Coef::Rat(-x),
            (FieldSpec::Prime(p), Coef::Fp(x)) => Coef::Fp((*p as u64 - x) % *p as u64),
            _ => unreachable!("mixed field elements"),
        }
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: &Coef) -> Coef {
        match (self, a) {
            (FieldSpec::Rational, Coef::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coef::Rat(x.recip())
            }
            (FieldSpec::Prime(p), Coef::Fp(x)) => {
                Coef::Fp(inv_mod(*x, *p as u64).expect("inverse of zero"))
            }
            _ => unreachable!("mixed field elements"),
        }
    }

    pub fn div(&self, a: &Coef, b: &Coef) -> Coef {
        self.mul(a, &self.inv(b))
    }

    /// Renders a coefficient in the polynomial grammar (`n` or `a/b`).
    pub fn render(&self, a: &Coef) -> String {
        match a {
            Coef::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Coef::Fp(v) => v.to_string(),
        }
    }

    /// True when the coefficient prints without a leading minus sign.
    pub fn is_display_negative(&self, a: &Coef) -> bool {
        match a {
            Coef::Rat(r) => r.is_negative(),
            Coef::Fp(_) => false,
        }
    }

    /// Absolute value for display purposes (GF(p) residues are returned as is).
    pub fn display_abs(&self, a: &Coef) -> Coef {
        match a {
            Coef::Rat(r) => Coef::Rat(r.abs()),
            Coef::Fp(v) => Coef::Fp(*v),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF {}", p),
        }
    }
}
