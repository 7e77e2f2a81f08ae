use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field a scalar lives in.
///
/// `Rational` is the characteristic-zero field every computation defaults to.
/// `Prime(p)` exists so that failures of the averaging hypothesis can be
/// witnessed; nothing else in the crate depends on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field constructor; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// True when `n` is invertible in this field.
    pub fn is_unit_integer(self, n: u64) -> bool {
        match self {
            Field::Rational => n != 0,
            Field::Prime(p) => !n.is_multiple_of(p),
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
            Field::Rational => Scalar::Rational(Rat::from_i128(n as i128, 1)),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Panics if `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        self.from_i64(num) / self.from_i64(den)
    }

    fn lift_integer(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rat::from_big(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Parses `"n"` or `"n/d"`. In prime mode a fraction means `n * d^-1`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let bad = || Error::ParseScalar(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        let d = self.lift_integer(&den);
        let inv = d.inv().ok_or_else(bad)?;
        Ok(self.lift_integer(&num) * inv)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Accepts `rational` (or `Q`) and a prime modulus such as `7` or `F_7`.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("rational") || t == "Q" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix("F_").unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Format(format!("unknown field {s:?}: expected \"rational\" or a prime")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: a reduced rational or a residue modulo a prime.
///
/// Arithmetic operators panic when the two operands come from different
/// fields; matrix-level entry points check the field up front and return
/// [`Error::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rat),
    Modular { value: u64, modulus: u64 },
}

/// A reduced rational. Stored inline while numerator and denominator fit in
/// `i64`, as a big rational otherwise; the choice is canonical, so derived
/// equality and hashing are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rat(RatRepr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum RatRepr {
    /// Denominator positive, `gcd = 1`, neither part equal to `i64::MIN`.
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rat {
    /// `n / d` for `d != 0`; both must stay below `2^126` in magnitude.
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            d = 1;
        }
        if fits(n) && fits(d) {
            Rat(RatRepr::Small(n as i64, d as i64))
        } else {
            Rat(RatRepr::Big(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat(RatRepr::Small(n, d)),
            _ => Rat(RatRepr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            RatRepr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            RatRepr::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, RatRepr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, RatRepr::Small(1, 1))
    }

    fn recip(&self) -> Rat {
        match &self.0 {
            RatRepr::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            RatRepr::Big(r) => Rat::from_big(r.recip()),
        }
    }

    fn neg(&self) -> Rat {
        match &self.0 {
            RatRepr::Small(n, d) => Rat(RatRepr::Small(-n, *d)),
            RatRepr::Big(r) => Rat::from_big(-r),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (RatRepr::Small(a, b), RatRepr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (RatRepr::Small(a, b), RatRepr::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            RatRepr::Small(n, 1) => write!(f, "{n}"),
            RatRepr::Small(n, d) => write!(f, "{n}/{d}"),
            RatRepr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            RatRepr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
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

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Canonical string form: `"n"` for integers, `"p/q"` otherwise.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.to_big()),
            Scalar::Modular { .. } => None,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        rat: impl FnOnce(&Rat, &Rat) -> Rat,
        modular: impl FnOnce(u128, u128, u128) -> u128,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular {
                    value: modular(*a as u128, *b as u128, *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Rat::add, |a, b, p| (a + b) % p)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a.add(&b.neg()), |a, b, p| (a + p - b) % p)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Rat::mul, |a, b, p| a * b % p)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.neg()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
