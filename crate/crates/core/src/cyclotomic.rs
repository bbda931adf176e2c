//! Exact arithmetic in the quadratic cyclotomic field `Q(z)`, where `z` is a
//! primitive sixth root of unity (`z = e^{i*pi/3}`, minimal polynomial
//! `z^2 - z + 1`).
//!
//! Elements are stored as `a + b*z` with reduced rational coordinates, so the
//! representation is canonical and can be hashed or used as a map key.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `3`, `-1/2`: the textual form used in reports.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `serialize_with` helper writing a [`Rational`] as a string.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

/// An element `a + b*z` of `Q(z)` with `z^2 = z - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNumber {
    a: Rational,
    b: Rational,
}

impl CycNumber {
    pub fn new(a: Rational, b: Rational) -> Self {
        CycNumber { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        CycNumber::new(rat(n), Rational::zero())
    }

    pub fn from_rational(a: Rational) -> Self {
        CycNumber::new(a, Rational::zero())
    }

    /// The generator `z`.
    pub fn zeta() -> Self {
        CycNumber::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        CycNumber::from_int(0)
    }

    pub fn one() -> Self {
        CycNumber::from_int(1)
    }

    /// Rational coordinate.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `z`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation. Since `conj(z) = 1 - z`, `a + b*z` maps to
    /// `(a + b) - b*z`.
    pub fn conjugate(&self) -> Self {
        CycNumber::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x * conj(x) = a^2 + a*b + b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(CycNumber::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        let inv = rhs.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNumber::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        CycNumber::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_int(n)
    }
}

impl From<Rational> for CycNumber {
    fn from(a: Rational) -> Self {
        CycNumber::from_rational(a)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    // (a + bz)(c + dz) = ac + (ad + bc) z + bd z^2,  z^2 = z - 1
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let bd = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a + bd;
        CycNumber::new(a, b)
    }
}

/// Panics on division by zero; use [`CycNumber::checked_div`] for the
/// fallible form.
impl<'a> Div<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn div(self, rhs: &CycNumber) -> CycNumber {
        self.checked_div(rhs).expect("division by zero in Q(z)")
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber::new(-&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Textual form `p/q+r/s*z`: zero parts are omitted, unit denominators are
/// dropped, and the `z` coefficient is always written out (`1*z`, `-1*z`).
/// Zero prints as `0`.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&fmt_rational(&self.a)),
            (true, false) => write!(f, "{}*z", fmt_rational(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*z", fmt_rational(&self.a), sign, fmt_rational(&self.b.abs()))
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Parses a `z` coefficient: `r/s*z`, `r/s z`, `z` or the empty string
/// (meaning 1).
fn parse_z_coeff(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_suffix('*').unwrap_or(s);
    if s.is_empty() {
        Some(Rational::one())
    } else if s == "-" {
        Some(-Rational::one())
    } else if s == "+" {
        Some(Rational::one())
    } else {
        parse_rational(s)
    }
}

impl FromStr for CycNumber {
    type Err = Error;

    /// Accepts the printed form plus a few relaxations: whitespace, a bare
    /// `z` / `-z`, and the `z` term written first.
    fn from_str(input: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid cyclotomic number `{input}`"));
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        // Split into signed terms at '+'/'-' that are not leading and not
        // directly after '/' or '*'.
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && prev != b'/' && prev != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut a: Option<Rational> = None;
        let mut b: Option<Rational> = None;
        for t in terms {
            if let Some(coeff) = t.strip_suffix('z') {
                if b.is_some() {
                    return Err(bad());
                }
                b = Some(parse_z_coeff(coeff).ok_or_else(bad)?);
            } else {
                if a.is_some() {
                    return Err(bad());
                }
                a = Some(parse_rational(t.trim_start_matches('+')).ok_or_else(bad)?);
            }
        }
        Ok(CycNumber::new(
            a.unwrap_or_else(Rational::zero),
            b.unwrap_or_else(Rational::zero),
        ))
    }
}

impl serde::Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> CycNumber {
        CycNumber::new(rat(a), rat(b))
    }

    #[test]
    fn zeta_squared() {
        let z = CycNumber::zeta();
        assert_eq!(&z * &z, c(-1, 1));
    }

    #[test]
    fn difference_of_squares() {
        let x = &c(1, 1) * &c(1, -1);
        assert_eq!(x, c(2, -1));
    }

    #[test]
    fn sixth_power_by_repeated_multiplication() {
        let z = CycNumber::zeta();
        let mut acc = CycNumber::one();
        let mut powers = Vec::new();
        for _ in 0..6 {
            powers.push(acc.clone());
            acc = &acc * &z;
        }
        assert!(acc.is_one());
        assert_eq!(z.pow(3), c(-1, 0));
        for i in 0..6 {
            for j in i + 1..6 {
                assert_ne!(powers[i], powers[j]);
            }
        }
        // square-and-multiply agrees with the naive loop
        for (e, p) in powers.iter().enumerate() {
            assert_eq!(&z.pow(e as u32), p);
        }
    }

    #[test]
    fn conjugation_basics() {
        assert_eq!(CycNumber::zeta().conjugate(), c(1, -1));
        assert_eq!(c(3, 0).conjugate(), c(3, 0));
        // z * conj(z) = 1
        assert!((&CycNumber::zeta() * &CycNumber::zeta().conjugate()).is_one());
    }

    #[test]
    fn is_real_examples() {
        assert!(CycNumber::from_rational(ratio(1, 2)).is_real());
        assert!(!CycNumber::zeta().is_real());
    }

    #[test]
    fn division() {
        let x = c(2, 3);
        let y = c(-1, 5);
        let q = x.checked_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert!(matches!(x.checked_div(&CycNumber::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycNumber::zero().to_string(), "0");
        assert_eq!(c(3, 0).to_string(), "3");
        assert_eq!(CycNumber::zeta().to_string(), "1*z");
        assert_eq!(c(1, -1).to_string(), "1-1*z");
        assert_eq!(CycNumber::new(ratio(1, 2), ratio(3, 4)).to_string(), "1/2+3/4*z");
        assert_eq!(CycNumber::new(ratio(-1, 2), ratio(-3, 4)).to_string(), "-1/2-3/4*z");
    }

    #[test]
    fn parse_forms() {
        let p = |s: &str| s.parse::<CycNumber>().unwrap();
        assert_eq!(p("z"), CycNumber::zeta());
        assert_eq!(p("-z"), c(0, -1));
        assert_eq!(p("1 - z"), c(1, -1));
        assert_eq!(p("-1/2+3/4*z"), CycNumber::new(ratio(-1, 2), ratio(3, 4)));
        assert_eq!(p("2/4"), CycNumber::from_rational(ratio(1, 2)));
        assert_eq!(p("z+1"), c(1, 1));
        assert_eq!(p("-2/-4*z"), CycNumber::new(rat(0), ratio(1, 2)));
        for bad in ["", "1/0", "z+z", "1+2", "abc", "1**z"] {
            assert!(bad.parse::<CycNumber>().is_err(), "{bad}");
        }
    }
}
