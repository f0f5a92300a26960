//! Exact arithmetic in real quadratic fields.
//!
//! A [`QuadReal`] is `a + b·√d` with rational `a`, `b` and squarefree `d > 1`,
//! or a plain rational when `b = 0` (stored with `d = 1`). Rationals mix
//! freely with any field; two irrational values must share the same radicand.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Splits `n` into `(s, r)` with `n = s²·r` and `r` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, r * n)
}

impl QuadReal {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadReal { a, b: Rational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()))
    }

    /// `a + b·√radicand`; square factors of the radicand are pulled into `b`.
    pub fn surd(a: Rational, b: Rational, radicand: u64) -> Self {
        if radicand == 0 || b.is_zero() {
            return Self::from_rational(a);
        }
        let (s, r) = squarefree_split(radicand);
        let b = b * Rational::from_integer(s.into());
        if r == 1 {
            return Self::from_rational(a + b);
        }
        QuadReal { a, b, d: r }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand, or 1 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn joint_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::FieldMismatch(d1, d2)),
        }
    }

    fn build(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            QuadReal { a, b, d: 1 }
        } else {
            QuadReal { a, b, d }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.joint_radicand(other)?;
        let dr = Rational::from_integer(d.into());
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(a, b, d))
    }

    /// Field conjugate `a − b·√d`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        let n = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Ok(Self::build(num.a / &n, num.b / &n, num.d))
    }

    pub fn neg(&self) -> Self {
        Self::build(-self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let k = Rational::from_integer(k.clone());
        Self::build(&self.a * &k, &self.b * &k, self.d)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self::build(&self.a * r, &self.b * r, self.d)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::build(&self.a + r, self.b.clone(), self.d)
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            (sa, sb) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * Rational::from_integer(self.d.into());
                if lhs > rhs {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // value = (p + r·√d)/q with integer p, r and q > 0
        let q = self.a.denom() * self.b.denom();
        let p = self.a.numer() * self.b.denom();
        let r = self.b.numer() * self.a.denom();
        let n = &r * &r * BigInt::from(self.d);
        let s: BigInt = n.sqrt();
        if r.sign() == Sign::Minus {
            (p - s - BigInt::one()).div_floor(&q)
        } else {
            (p + s).div_floor(&q)
        }
    }

    /// `floor(value · 2^bits)`.
    pub fn fixed_floor(&self, bits: u32) -> BigInt {
        let scale = Rational::from_integer(BigInt::one() << bits);
        self.mul_rational(&scale).floor()
    }

    /// True when `value · 2^bits` is an integer.
    pub fn is_dyadic_at(&self, bits: u32) -> bool {
        if !self.b.is_zero() {
            return false;
        }
        let scaled = &self.a * Rational::from_integer(BigInt::one() << bits);
        scaled.is_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let f = self.floor();
        if f.is_zero() {
            return self.clone();
        }
        self.add_rational(&-Rational::from_integer(f))
    }

    /// Nearest `f64`, accurate even when the value is tiny relative to its parts.
    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return self.a.to_f64().unwrap_or(f64::NAN);
        }
        let mut bits = 64u32;
        while bits <= 8192 {
            let v = self.fixed_floor(bits);
            if v.magnitude().bits() >= 60 {
                return scale_down(&v, bits);
            }
            bits *= 2;
        }
        0.0
    }

    pub fn sqrt_of_int(n: u64) -> Self {
        Self::surd(Rational::zero(), Rational::one(), n)
    }
}

fn scale_down(v: &BigInt, bits: u32) -> f64 {
    let len = v.magnitude().bits() as i64;
    let shift = (len - 62).max(0);
    let top = (v >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi((shift - bits as i64) as i32)
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Parses `p/q`, an integer, or a decimal like `-0.125` / `1.5e-3` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `p/q` rendering used by every serialized rational.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational for an `f64` (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Precondition(format!("non-finite value {x}")))
}

/// Exact `x < c·√y` for rationals with `c, y ≥ 0`.
pub fn lt_const_sqrt(x: &Rational, c: &Rational, y: &Rational) -> bool {
    if x.is_negative() {
        return true;
    }
    x * x < c * c * y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> QuadReal {
        QuadReal::surd(Rational::new((-1).into(), 2.into()), Rational::new(1.into(), 2.into()), 5)
    }

    #[test]
    fn squarefree_reduction() {
        let x = QuadReal::sqrt_of_int(12);
        assert_eq!(x.radicand(), 3);
        assert_eq!(x.surd_part(), &Rational::from_integer(2.into()));
        assert!(QuadReal::sqrt_of_int(16).is_rational());
    }

    #[test]
    fn golden_satisfies_its_equation() {
        let g = golden();
        // g² + g − 1 = 0
        let v = g.checked_mul(&g).unwrap().checked_add(&g).unwrap().checked_sub(&QuadReal::one()).unwrap();
        assert!(v.is_zero());
        assert_eq!(g.floor(), BigInt::zero());
        assert!((g.to_f64() - 0.6180339887498949).abs() < 1e-15);
    }

    #[test]
    fn floor_of_negative_surds() {
        let g = golden().neg();
        assert_eq!(g.floor(), BigInt::from(-1));
        let big = golden().mul_int(&BigInt::from(1000));
        assert_eq!(big.floor(), BigInt::from(618));
        assert_eq!(big.neg().floor(), BigInt::from(-619));
    }

    #[test]
    fn division_round_trips() {
        let g = golden();
        let x = QuadReal::surd(Rational::new(3.into(), 7.into()), Rational::new((-2).into(), 5.into()), 5);
        let q = x.checked_div(&g).unwrap();
        assert_eq!(q.checked_mul(&g).unwrap(), x);
    }

    #[test]
    fn tiny_values_keep_precision() {
        // F_31·α − F_30 = α^31 ≈ 3.3e-7 while the parts are ~1e6
        let g = golden();
        let v = g.mul_int(&BigInt::from(1_346_269)).add_rational(&Rational::from_integer((-832_040).into()));
        let f = v.to_f64();
        let expected = 0.6180339887498949f64.powi(31);
        assert!(((f - expected) / expected).abs() < 1e-12, "{f}");
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = QuadReal::sqrt_of_int(2);
        let b = QuadReal::sqrt_of_int(3);
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(2, 3))));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("-0.125").unwrap(), Rational::new((-1).into(), 8.into()));
        assert_eq!(parse_rational("1.5e-3").unwrap(), Rational::new(3.into(), 2000.into()));
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1.into(), 2.into()));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
