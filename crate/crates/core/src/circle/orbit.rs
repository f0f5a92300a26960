//! Rotation orbits `start ± i·step` tracked in 128-bit fixed point with a
//! rigorous error window, so exact arithmetic is only needed on near-ties.

use num_bigint::BigInt;

use super::number::CircleNumber;

#[derive(Clone, Debug)]
pub struct Orbit {
    start: CircleNumber,
    step: CircleNumber,
    backward: bool,
    s: u128,
    a: u128,
    s_err: u128,
    a_err: u128,
}

/// A point known to lie in the real interval `[lo, lo + width]` (in units of
/// `2^-128`, modulo `2^128`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: u128,
    pub width: u128,
}

impl Window {
    /// `lo + width` when it does not wrap past 1.
    pub fn hi(&self) -> Option<u128> {
        self.lo.checked_add(self.width)
    }

    pub fn exact(v: u128, is_exact: bool) -> Self {
        Window { lo: v, width: if is_exact { 0 } else { 1 } }
    }
}

impl Orbit {
    /// Points `start + i·step`.
    pub fn forward(start: &CircleNumber, step: &CircleNumber) -> Self {
        Self::build(start, step, false)
    }

    /// Points `start − i·step`.
    pub fn backward(start: &CircleNumber, step: &CircleNumber) -> Self {
        Self::build(start, step, true)
    }

    fn build(start: &CircleNumber, step: &CircleNumber, backward: bool) -> Self {
        Orbit {
            start: start.clone(),
            step: step.clone(),
            backward,
            s: start.approx(),
            a: step.approx(),
            s_err: u128::from(!start.approx_is_exact()),
            a_err: u128::from(!step.approx_is_exact()),
        }
    }

    pub fn window(&self, i: u64) -> Window {
        let i = i as u128;
        let width = self.s_err + self.a_err.saturating_mul(i);
        let lo = if self.backward {
            // start − i·step ∈ (S − iA − i·a_err, S − iA + s_err)
            self.s.wrapping_sub(self.a.wrapping_mul(i)).wrapping_sub(self.a_err * i)
        } else {
            self.s.wrapping_add(self.a.wrapping_mul(i))
        };
        Window { lo, width }
    }

    pub fn exact(&self, i: u64) -> CircleNumber {
        let shift = self.step.mul_big(&BigInt::from(i));
        if self.backward {
            self.start.sub(&shift)
        } else {
            self.start.add(&shift)
        }
    }
}
