//! Points of the circle `[0, 1)` with exact arithmetic modulo 1.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::real::{parse_rational, QuadReal, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Provenance of a circle number. Arithmetic is always exact; the mode only
/// records how the value entered the system and how to round when two
/// incompatible quadratic fields meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum Mode {
    ExactRational,
    QuadraticIrrational,
    Float { bits: u32 },
}

impl Mode {
    fn join(self, other: Mode) -> Mode {
        match (self, other) {
            (Mode::Float { bits: a }, Mode::Float { bits: b }) => Mode::Float { bits: a.max(b) },
            (Mode::Float { bits }, _) | (_, Mode::Float { bits }) => Mode::Float { bits },
            (Mode::QuadraticIrrational, _) | (_, Mode::QuadraticIrrational) => Mode::QuadraticIrrational,
            _ => Mode::ExactRational,
        }
    }

    fn bits(self) -> u32 {
        match self {
            Mode::Float { bits } => bits,
            _ => DEFAULT_PRECISION_BITS,
        }
    }
}

/// A point of `S¹ = [0, 1)`.
///
/// Besides the exact value each number carries `approx = floor(value·2^128)`,
/// so hot loops can decide most comparisons in `u128` arithmetic and fall back
/// to exact comparison only on near-ties.
#[derive(Clone, Debug)]
pub struct CircleNumber {
    value: QuadReal,
    mode: Mode,
    approx: u128,
    approx_exact: bool,
}

impl PartialEq for CircleNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CircleNumber {}

impl PartialOrd for CircleNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CircleNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.approx != other.approx {
            // floor(v·2^128) is monotone in v
            return self.approx.cmp(&other.approx);
        }
        match self.value.checked_cmp(&other.value) {
            Ok(o) => o,
            Err(_) => {
                let bits = 4 * DEFAULT_PRECISION_BITS;
                self.value.fixed_floor(bits).cmp(&other.value.fixed_floor(bits))
            }
        }
    }
}

fn to_u128(v: &BigInt) -> u128 {
    let (_, digits) = v.to_u64_digits();
    let lo = digits.first().copied().unwrap_or(0) as u128;
    let hi = digits.get(1).copied().unwrap_or(0) as u128;
    lo | (hi << 64)
}

fn round_to_bits(v: &QuadReal, bits: u32) -> QuadReal {
    let n = v.fixed_floor(bits);
    QuadReal::from_rational(Rational::new(n, BigInt::one() << bits))
}

impl CircleNumber {
    /// Reduces `value` modulo 1.
    pub fn from_real(value: QuadReal, mode: Mode) -> Self {
        let value = value.fract();
        let mode = match mode {
            Mode::ExactRational if !value.is_rational() => Mode::QuadraticIrrational,
            m => m,
        };
        let fixed = value.fixed_floor(128);
        let approx_exact = value.is_dyadic_at(128);
        CircleNumber { approx: to_u128(&fixed), approx_exact, value, mode }
    }

    pub fn zero() -> Self {
        Self::from_real(QuadReal::zero(), Mode::ExactRational)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_real(QuadReal::from_rational(r), Mode::ExactRational)
    }

    pub fn rational(p: i64, q: i64) -> Self {
        Self::from_real(QuadReal::ratio(p, q), Mode::ExactRational)
    }

    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        let half = Rational::new(1.into(), 2.into());
        Self::from_real(QuadReal::surd(-half.clone(), half, 5), Mode::QuadraticIrrational)
    }

    /// `√2 − 1`.
    pub fn sqrt2_minus_1() -> Self {
        Self::from_real(QuadReal::surd(-Rational::one(), Rational::one(), 2), Mode::QuadraticIrrational)
    }

    /// `numerator / 2^bits` in float mode.
    pub fn dyadic(numerator: BigUint, bits: u32) -> Self {
        let r = Rational::new(BigInt::from(numerator), BigInt::one() << bits);
        Self::from_real(QuadReal::from_rational(r), Mode::Float { bits })
    }

    /// Rounds (down) to `bits` binary digits and tags as float mode.
    pub fn rounded(value: &QuadReal, bits: u32) -> Self {
        Self::from_real(round_to_bits(&value.fract(), bits), Mode::Float { bits })
    }

    /// Uniform sample on the grid `2^-bits · Z`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> Self {
        let words = bits.div_ceil(64) as usize;
        let digits: Vec<u64> = (0..words).map(|_| rng.random()).collect();
        let mut n = BigUint::new(digits.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect());
        let extra = (words as u32) * 64 - bits;
        n >>= extra as usize;
        Self::dyadic(n, bits)
    }

    /// `floor(value·2^128)` sampled uniformly (128-bit float mode).
    pub fn from_u128(n: u128) -> Self {
        Self::dyadic(BigUint::from(n), 128)
    }

    /// Quadratic irrational with the given pre-period and period of partial
    /// quotients: `[0; pre…, period, period, …]`.
    pub fn from_periodic_cf(pre: &[u64], period: &[u64]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::pre("periodic continued fraction needs a nonempty period"));
        }
        if pre.iter().chain(period).any(|&a| a == 0) {
            return Err(Error::pre("partial quotients must be positive"));
        }
        // tail y = [b1; b2, …, bp, y] solves q y² + (q' − p) y − p' = 0
        let (p, pp, q, qp) = convergent_pair(period);
        let disc = (&qp - &p) * (&qp - &p) + BigInt::from(4) * &q * &pp;
        let disc = disc.to_u64().ok_or_else(|| Error::pre("periodic tail too large"))?;
        let two_q = Rational::from_integer(BigInt::from(2) * &q);
        let y = QuadReal::surd(Rational::from_integer(&p - &qp) / &two_q, Rational::one() / &two_q, disc);
        // α = [0; a1, …, ak, y] evaluated from the inside out
        let mut x = y;
        for &a in pre.iter().rev() {
            x = QuadReal::one().checked_div(&x)?.add_rational(&Rational::from_integer(a.into()));
        }
        let alpha = QuadReal::one().checked_div(&x)?;
        Ok(Self::from_real(alpha, Mode::QuadraticIrrational))
    }

    pub fn value(&self) -> &QuadReal {
        &self.value
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn approx(&self) -> u128 {
        self.approx
    }

    /// True when `approx / 2^128` equals the value exactly.
    pub fn approx_is_exact(&self) -> bool {
        self.approx_exact
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.value.is_rational()
    }

    pub fn to_f64(&self) -> f64 {
        self.approx as f64 / 2f64.powi(128)
    }

    /// Exact comparison of the value with `s / 2^128`.
    pub fn cmp_fixed(&self, s: u128) -> Ordering {
        match self.approx.cmp(&s) {
            Ordering::Equal if self.approx_exact => Ordering::Equal,
            Ordering::Equal => Ordering::Greater,
            o => o,
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(&QuadReal, &QuadReal) -> Result<QuadReal>) -> Self {
        let mode = self.mode.join(other.mode);
        match f(&self.value, &other.value) {
            Ok(v) => Self::from_real(v, mode),
            Err(_) => {
                let bits = self.mode.bits().max(other.mode.bits());
                let a = round_to_bits(&self.value, bits);
                let b = round_to_bits(&other.value, bits);
                let v = f(&a, &b).expect("rationals share every field");
                Self::from_real(v, Mode::Float { bits })
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.checked_sub(b))
    }

    pub fn neg(&self) -> Self {
        Self::from_real(self.value.neg(), self.mode)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.mul_big(&BigInt::from(k))
    }

    pub fn mul_big(&self, k: &BigInt) -> Self {
        Self::from_real(self.value.mul_int(k), self.mode)
    }

    /// `‖s‖ = min(s, 1 − s)`, the distance to 0 on the circle.
    pub fn norm(&self) -> QuadReal {
        let other = QuadReal::one().checked_sub(&self.value).expect("rational");
        if self.value.is_zero() {
            return QuadReal::zero();
        }
        if self.value.checked_cmp(&other).expect("same field") == Ordering::Greater {
            other
        } else {
            self.value.clone()
        }
    }

    /// Parses a circle point.
    ///
    /// Accepted forms: `golden`, `sqrt2m1`, `cf:[a1,a2,(b1,b2)]` (parenthesised
    /// periodic tail), `rat:p/q`, `dec:0.xxxx@bits`, and a bare rational such
    /// as `1/3` or `0.25`.
    pub fn parse(spec: &str, default_bits: u32) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "golden" => return Ok(Self::golden()),
            "sqrt2m1" => return Ok(Self::sqrt2_minus_1()),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("rat:") {
            return Ok(Self::from_rational(parse_rational(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("dec:") {
            let (num, bits) = match rest.split_once('@') {
                Some((n, b)) => (n, b.parse::<u32>().map_err(|_| Error::Parse(format!("bad precision in {spec:?}")))?),
                None => (rest, default_bits),
            };
            if bits == 0 {
                return Err(Error::Parse("precision must be positive".into()));
            }
            let r = parse_rational(num)?;
            return Ok(Self::rounded(&QuadReal::from_rational(r), bits));
        }
        if let Some(rest) = spec.strip_prefix("cf:") {
            return parse_cf_spec(rest);
        }
        Ok(Self::from_rational(parse_rational(spec)?))
    }
}

/// Convergent numerators/denominators `(p_n, p_{n−1}, q_n, q_{n−1})` of `[b1; b2, …, bn]`.
fn convergent_pair(terms: &[u64]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut p, mut pp) = (BigInt::one(), BigInt::zero());
    let (mut q, mut qp) = (BigInt::zero(), BigInt::one());
    for &b in terms {
        let b = BigInt::from(b);
        let np = &b * &p + &pp;
        let nq = &b * &q + &qp;
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
    }
    (p, pp, q, qp)
}

fn parse_cf_spec(body: &str) -> Result<CircleNumber> {
    let bad = || Error::Parse(format!("bad continued fraction spec {body:?}"));
    let inner = body.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
    let (pre_str, period_str) = match inner.find('(') {
        Some(i) => {
            let tail = inner[i + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&inner[..i], Some(tail))
        }
        None => (inner, None),
    };
    let nums = |s: &str| -> Result<Vec<u64>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| t.parse::<u64>().map_err(|_| bad())).collect()
    };
    let pre = nums(pre_str)?;
    match period_str {
        Some(p) => CircleNumber::from_periodic_cf(&pre, &nums(p)?),
        None => {
            if pre.is_empty() || pre.contains(&0) {
                return Err(bad());
            }
            // finite expansion: a rational
            let mut x = Rational::from_integer(BigInt::from(*pre.last().unwrap()));
            for &a in pre.iter().rev().skip(1) {
                x = Rational::from_integer(a.into()) + Rational::one() / x;
            }
            Ok(CircleNumber::from_rational(Rational::one() / x))
        }
    }
}

impl fmt::Display for CircleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Circle distance to 0 of the fixed-point phase `v / 2^128`, in ulps.
pub fn norm_ulps(v: u128) -> u128 {
    v.min(v.wrapping_neg())
}

/// `floor(frac(q·x) · 2^128)`, exact.
pub fn scaled_phase(x: &CircleNumber, q: &BigUint) -> u128 {
    if x.is_zero() {
        return 0;
    }
    if let Some(r) = rational_of(x) {
        let num = r.numer().to_biguint().expect("reduced into [0,1)");
        let den = r.denom().to_biguint().expect("positive");
        if den.count_ones() == 1 && den.bits() <= 129 {
            // dyadic: everything wraps in 128-bit arithmetic
            let shift = 129 - den.bits();
            let n = to_u128(&BigInt::from(num)) << shift;
            let qm = to_u128(&BigInt::from(q.clone()));
            return n.wrapping_mul(qm);
        }
        let residue = (q % &den) * num % &den;
        let scaled: BigUint = (residue << 128u32) / den;
        return to_u128(&BigInt::from(scaled));
    }
    let v = x.value().mul_int(&BigInt::from(q.clone())).fract();
    to_u128(&v.fixed_floor(128))
}

pub fn rational_of(x: &CircleNumber) -> Option<&BigRational> {
    x.value.is_rational().then(|| x.value.rational_part())
}
