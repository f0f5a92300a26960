//! Circle norm and Weyl sums along sequences of integers.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;
use rayon::prelude::*;

use super::number::{scaled_phase, CircleNumber};
use super::real::QuadReal;
use crate::error::{Error, Result};

/// `‖s‖ = min(s, 1 − s)`; `‖1/2‖ = 1/2`.
pub fn circ_norm(s: &CircleNumber) -> QuadReal {
    s.norm()
}

/// A strictly increasing, nonempty list of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSequence(Vec<BigUint>);

impl QSequence {
    pub fn new(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::pre("integer sequence must be nonempty"));
        }
        if terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::pre("integer sequence must be strictly increasing"));
        }
        Ok(QSequence(terms))
    }

    pub fn from_u64(terms: &[u64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigUint::from(t)).collect())
    }

    /// `1, 2, 3, 5, 8, …`: the golden-mean denominators from `q_1` on, which
    /// is where they become strictly increasing.
    pub fn fibonacci(len: usize) -> Self {
        let mut out = Vec::with_capacity(len);
        let (mut a, mut b) = (BigUint::one(), BigUint::from(2u32));
        for _ in 0..len {
            out.push(a.clone());
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        QSequence(out)
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `floor(frac(q_k·x)·2^128)` for every term, computed exactly.
    pub fn phases(&self, x: &CircleNumber) -> Vec<u128> {
        self.0.par_iter().map(|q| scaled_phase(x, q)).collect()
    }
}

/// `e^{2πi·phase/2^128}`.
pub fn unit_from_phase(phase: u128) -> Complex64 {
    let theta = std::f64::consts::TAU * (phase as f64 / 2f64.powi(128));
    Complex64::from_polar(1.0, theta)
}

/// Averages `e^{2πi(n·a_k + m·b_k)}` over precomputed fixed-point phases.
pub fn weyl_from_phases(n: i64, m: i64, xs: &[u128], ys: &[u128]) -> Complex64 {
    let scale = |p: u128, c: i64| {
        let v = p.wrapping_mul(c.unsigned_abs() as u128);
        if c < 0 {
            v.wrapping_neg()
        } else {
            v
        }
    };
    let sum: Complex64 = xs.iter().zip(ys).map(|(&a, &b)| unit_from_phase(scale(a, n).wrapping_add(scale(b, m)))).sum();
    sum / xs.len() as f64
}

/// `(1/N) Σ_k e^{2πi(n q_k x + m q_k y)}` over the whole sequence.
pub fn weyl_pair_average(n: i64, m: i64, x: &CircleNumber, y: &CircleNumber, q_seq: &QSequence) -> Result<Complex64> {
    if n == 0 && m == 0 {
        return Err(Error::pre("frequency (n, m) must be nonzero"));
    }
    if q_seq.is_empty() {
        return Err(Error::pre("integer sequence must be nonempty"));
    }
    Ok(weyl_from_phases(n, m, &q_seq.phases(x), &q_seq.phases(y)))
}
