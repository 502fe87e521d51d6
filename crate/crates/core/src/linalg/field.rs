//! Exact scalars over the rationals or a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// Largest modulus accepted for a prime field. Residues are multiplied in
/// `u128`, so this only bounds trial-division cost.
pub const MAX_MODULUS: u64 = 1 << 32;

/// The ground field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Builds `GF(p)`, checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                p,
                v: n.rem_euclid(p as i64) as u64,
            },
        }
    }

    /// `num/den` reduced into this field; fails when `den` vanishes here.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(LinalgError::DivisionByZero)?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// All elements of a prime field in residue order; `None` over ℚ.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        self.modulus()
            .map(move |p| (0..p).map(move |v| Scalar::Residue { p, v }))
    }

    /// Parses one entry: `"num/den"` or `"num"`. Over `GF(p)` the integers
    /// are reduced and the quotient taken in the field.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::Parse(format!("bad scalar {s:?} for field {self}"));
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let residue = |t: &str| -> Result<Scalar, LinalgError> {
                    let n = BigInt::from_str(t.trim()).map_err(|_| bad())?;
                    let v = u64::try_from(n.mod_floor(&BigInt::from(p))).map_err(|_| bad())?;
                    Ok(Scalar::Residue { p, v })
                };
                match s.split_once('/') {
                    None => residue(s),
                    Some((n, d)) => residue(n)?.checked_div(&residue(d)?).ok_or_else(bad),
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| LinalgError::Parse(format!("unknown field {s:?}")))?;
        let p = inner
            .parse::<u64>()
            .map_err(|_| LinalgError::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element of ℚ or `GF(p)`.
///
/// Arithmetic operators panic when the operands come from different fields;
/// matrix-level operations check fields up front and report an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator (`BigRational` keeps
    /// this normal form).
    Rational(BigRational),
    /// Canonical residue `v` in `[0, p)`.
    Residue { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { p, v } => Scalar::Residue {
                p: *p,
                v: inv_mod(*v, *p),
            },
        })
    }

    /// `self / rhs`, `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical text form: `"num/den"` (den omitted when 1) over ℚ, the
    /// residue over `GF(p)`.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { v, .. } => v.to_string(),
        }
    }

    /// Canonical JSON value: a string over ℚ, a number over `GF(p)`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(_) => serde_json::Value::String(self.to_canonical_string()),
            Scalar::Residue { v, .. } => serde_json::Value::from(*v),
        }
    }

    pub fn from_json(field: FieldSpec, value: &serde_json::Value) -> Result<Scalar, LinalgError> {
        match value {
            serde_json::Value::String(s) => field.parse_scalar(s),
            serde_json::Value::Number(n) => field.parse_scalar(&n.to_string()),
            other => Err(LinalgError::Parse(format!(
                "expected scalar, found {other}"
            ))),
        }
    }

    /// Maps an integer-valued rational into `GF(p)`; `None` if the
    /// denominator vanishes mod p.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                let m = BigInt::from(p);
                let num = u64::try_from(q.numer().mod_floor(&m)).ok()?;
                let den = u64::try_from(q.denom().mod_floor(&m)).ok()?;
                if den == 0 {
                    return None;
                }
                Some(Scalar::Residue {
                    p,
                    v: mul_mod(num, inv_mod(den, p), p),
                })
            }
            Scalar::Residue { p: q, v } => (*q == p).then_some(Scalar::Residue { p, v: *v }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { p, v: a }, Scalar::Residue { p: q, v: b }) if p == q => {
                let s = a + b;
                Scalar::Residue {
                    p: *p,
                    v: if s >= *p { s - p } else { s },
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { p, v: a }, Scalar::Residue { p: q, v: b }) if p == q => {
                Scalar::Residue {
                    p: *p,
                    v: if a >= b { a - b } else { a + p - b },
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { p, v: a }, Scalar::Residue { p: q, v: b }) if p == q => {
                Scalar::Residue {
                    p: *p,
                    v: mul_mod(*a, *b, *p),
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { p, v } => Scalar::Residue {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
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

/// True when a rational is negative; residues are never negative.
pub fn is_negative(s: &Scalar) -> bool {
    matches!(s, Scalar::Rational(q) if q.is_negative())
}
