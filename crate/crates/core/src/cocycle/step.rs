//! Piecewise-constant `±1` functions on the circle, stored exactly by their
//! jump points.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::orbit::Orbit;
use crate::circle::{CircleNumber, QuadReal, Rational};
use crate::error::{Error, Result};

/// Upper bound on the jump count of an `n`-step cocycle.
pub const MAX_JUMPS: usize = 10_000_000;

/// `φ(s) = v·(−1)^{#{jumps z : 0 < z ≤ s}}`, where `v = φ(0)`.
///
/// Arcs are right-open, so the value changes *at* each jump. A jump at 0 means
/// the value just below 1 differs from `φ(0)`. The total jump count is always
/// even and coincident jumps cancel in pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCocycle {
    jumps: Vec<CircleNumber>,
    value_at_zero: i8,
}

/// Summary of a cocycle for JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleSummary {
    pub value_at_zero: i8,
    pub jump_count: usize,
    pub jumps: Vec<String>,
}

/// Sorts `points` and drops coincident pairs.
fn cancel_pairs(mut points: Vec<CircleNumber>) -> Vec<CircleNumber> {
    points.par_sort_unstable();
    let mut out: Vec<CircleNumber> = Vec::with_capacity(points.len());
    for p in points {
        // sorted input: popping only ever exposes a strictly smaller point
        if out.last() == Some(&p) {
            out.pop();
        } else {
            out.push(p);
        }
    }
    out
}

/// Adds `x` to `total`, rounding both to 256 bits if they live in different
/// quadratic fields.
pub(crate) fn accumulate(total: &mut QuadReal, x: &QuadReal) {
    match total.checked_add(x) {
        Ok(v) => *total = v,
        Err(_) => {
            let round =
                |v: &QuadReal| QuadReal::from_rational(Rational::new(v.fixed_floor(256), BigInt::one() << 256u32));
            *total = round(total).checked_add(&round(x)).expect("rationals");
        }
    }
}

impl StepCocycle {
    pub fn constant(value: i8) -> Result<Self> {
        Self::from_parts(Vec::new(), value)
    }

    /// Builds a cocycle from a jump multiset; coincident jumps cancel.
    pub fn from_parts(jumps: Vec<CircleNumber>, value_at_zero: i8) -> Result<Self> {
        if value_at_zero != 1 && value_at_zero != -1 {
            return Err(Error::pre("cocycle values must be ±1"));
        }
        let jumps = cancel_pairs(jumps);
        if jumps.len() % 2 == 1 {
            return Err(Error::pre("a circle function must change sign an even number of times"));
        }
        Ok(StepCocycle { jumps, value_at_zero })
    }

    /// Product of the indicator cocycles `(−1)^{1[s ∈ [start, start+len))}`.
    pub fn from_arcs(arcs: &[(CircleNumber, CircleNumber)]) -> Result<Self> {
        let mut jumps = Vec::new();
        let mut value = 1i8;
        for (start, len) in arcs {
            if len.is_zero() {
                continue;
            }
            let end = start.add(len);
            let covers_zero = start.is_zero() || (!end.is_zero() && end < *start);
            if covers_zero {
                value = -value;
            }
            jumps.push(start.clone());
            jumps.push(end);
        }
        Self::from_parts(jumps, value)
    }

    /// `−1` on `[0, t)`, `+1` elsewhere.
    pub fn two_jump(t: &CircleNumber) -> Self {
        Self::from_arcs(&[(CircleNumber::zero(), t.clone())]).expect("two endpoints")
    }

    /// `−1` exactly on `[0, t) Δ [u, u + t′)`.
    pub fn four_jump(t: &CircleNumber, t_prime: &CircleNumber, u: &CircleNumber) -> Self {
        Self::from_arcs(&[(CircleNumber::zero(), t.clone()), (u.clone(), t_prime.clone())]).expect("four endpoints")
    }

    pub fn jumps(&self) -> &[CircleNumber] {
        &self.jumps
    }

    pub fn value_at_zero(&self) -> i8 {
        self.value_at_zero
    }

    pub fn is_constant(&self) -> bool {
        self.jumps.is_empty()
    }

    fn nonzero_jumps(&self) -> &[CircleNumber] {
        match self.jumps.first() {
            Some(z) if z.is_zero() => &self.jumps[1..],
            _ => &self.jumps,
        }
    }

    fn sign_after(&self, count: usize) -> i8 {
        if count.is_multiple_of(2) {
            self.value_at_zero
        } else {
            -self.value_at_zero
        }
    }

    pub fn eval(&self, s: &CircleNumber) -> i8 {
        let count = self.nonzero_jumps().partition_point(|z| z <= s);
        self.sign_after(count)
    }

    /// `φ(p_i)` for the first `n` orbit points.
    pub fn eval_orbit(&self, orbit: &Orbit, n: usize) -> Vec<i8> {
        let jumps = self.nonzero_jumps();
        let approx: Vec<u128> = jumps.iter().map(CircleNumber::approx).collect();
        (0..n as u64)
            .map(|i| {
                let w = orbit.window(i);
                let decided = w.hi().and_then(|hi| {
                    // jump z ∈ [J, J+1): surely ≤ p when J < lo, surely > p when J > hi
                    let surely_below = approx.partition_point(|&j| j < w.lo);
                    let maybe_below = approx.partition_point(|&j| j <= hi);
                    (surely_below == maybe_below).then_some(surely_below)
                });
                let count = decided.unwrap_or_else(|| {
                    let p = orbit.exact(i);
                    jumps.partition_point(|z| *z <= p)
                });
                self.sign_after(count)
            })
            .collect()
    }

    /// `φ^{(n)}(s) = Π_{j<n} φ(s + jα)`, with jumps `{z − jα}` cancelled in pairs.
    pub fn n_step(&self, alpha: &CircleNumber, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("n-step cocycle needs n ≥ 1"));
        }
        let total = self.jumps.len().saturating_mul(n);
        if total > MAX_JUMPS {
            return Err(Error::LimitExceeded { requested: total as u64, limit: MAX_JUMPS as u64 });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let zero_orbit = Orbit::forward(&CircleNumber::zero(), alpha);
        let value = self.eval_orbit(&zero_orbit, n).into_iter().product::<i8>();
        let orbits: Vec<Orbit> = self.jumps.iter().map(|z| Orbit::backward(z, alpha)).collect();
        let candidates: Vec<CircleNumber> =
            (0..total).into_par_iter().map(|idx| orbits[idx / n].exact((idx % n) as u64)).collect();
        Self::from_parts(candidates, value)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let jumps = self.jumps.iter().chain(&other.jumps).cloned().collect();
        Self::from_parts(jumps, self.value_at_zero * other.value_at_zero).expect("even jump count")
    }

    /// `s ↦ φ(s + c)`.
    pub fn shift(&self, c: &CircleNumber) -> Self {
        let jumps = self.jumps.iter().map(|z| z.sub(c)).collect();
        Self::from_parts(jumps, self.eval(c)).expect("even jump count")
    }

    /// Maximal arcs `[a, b)` on which the function equals −1 (`b = 0` means 1).
    pub fn minus_one_arcs(&self) -> Vec<(CircleNumber, CircleNumber)> {
        let jumps = self.nonzero_jumps();
        let mut arcs = Vec::new();
        let mut start = CircleNumber::zero();
        let mut value = self.value_at_zero;
        for z in jumps {
            if value == -1 {
                arcs.push((start.clone(), z.clone()));
            }
            start = z.clone();
            value = -value;
        }
        if value == -1 {
            arcs.push((start, CircleNumber::zero()));
        }
        arcs
    }

    /// Lebesgue measure of `{φ = −1}`, exact.
    pub fn minus_one_measure(&self) -> QuadReal {
        let mut total = QuadReal::zero();
        for (a, b) in self.minus_one_arcs() {
            let end = if b.is_zero() { QuadReal::one() } else { b.value().clone() };
            let len = end.checked_sub(a.value()).unwrap_or_else(|_| b.sub(&a).value().clone());
            accumulate(&mut total, &len);
        }
        total
    }

    /// `‖φ − 1‖_{L¹} = 2·Leb{φ = −1}`.
    pub fn l1_distance_to_one(&self) -> QuadReal {
        self.minus_one_measure().mul_int(&BigInt::from(2))
    }

    pub fn summary(&self) -> CocycleSummary {
        CocycleSummary {
            value_at_zero: self.value_at_zero,
            jump_count: self.jumps.len(),
            jumps: self.jumps.iter().map(|z| z.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(p: i64, q: i64) -> CircleNumber {
        CircleNumber::rational(p, q)
    }

    #[test]
    fn two_jump_shapes() {
        assert!(StepCocycle::two_jump(&CircleNumber::zero()).is_constant());
        let phi = StepCocycle::two_jump(&r(3, 10));
        assert_eq!(phi.jumps(), &[r(0, 1), r(3, 10)]);
        assert_eq!(phi.l1_distance_to_one(), QuadReal::ratio(3, 5));
        let nearly_full = CircleNumber::dyadic((num_bigint::BigUint::one() << 128u32) - 1u32, 128);
        let phi = StepCocycle::two_jump(&nearly_full);
        assert_eq!(phi.jumps().len(), 2);
        assert_eq!(phi.eval(&r(999, 1000)), -1);
    }

    #[test]
    fn four_jump_shapes() {
        assert!(StepCocycle::four_jump(&r(1, 5), &r(1, 5), &CircleNumber::zero()).is_constant());
        let phi = StepCocycle::four_jump(&r(1, 5), &r(1, 10), &r(1, 2));
        assert_eq!(phi.jumps().len(), 4);
        assert_eq!(phi.l1_distance_to_one(), QuadReal::ratio(3, 5));
        let arcs = StepCocycle::four_jump(&r(3, 10), &r(3, 10), &r(1, 10)).minus_one_arcs();
        assert_eq!(arcs, vec![(r(0, 1), r(1, 10)), (r(3, 10), r(2, 5))]);
    }

    #[test]
    fn wrapping_arc_covers_zero() {
        let phi = StepCocycle::four_jump(&CircleNumber::zero(), &r(1, 2), &r(3, 4));
        assert_eq!(phi.value_at_zero(), -1);
        assert_eq!(phi.eval(&r(1, 8)), -1);
        assert_eq!(phi.eval(&r(1, 2)), 1);
        assert_eq!(phi.eval(&r(7, 8)), -1);
        assert_eq!(phi.l1_distance_to_one(), QuadReal::one());
    }

    #[test]
    fn n_step_matches_pointwise_product() {
        let phi = StepCocycle::two_jump(&r(1, 3));
        let alpha = r(1, 4);
        let phi4 = phi.n_step(&alpha, 4).unwrap();
        for g in 0..1000 {
            let s = r(2 * g + 1, 2000);
            let direct: i8 = (0..4).map(|j| phi.eval(&s.add(&alpha.mul_int(j)))).product();
            assert_eq!(phi4.eval(&s), direct, "at {s}");
        }
        assert_eq!(phi.n_step(&alpha, 1).unwrap(), phi);
        let one = StepCocycle::constant(1).unwrap();
        assert_eq!(one.n_step(&CircleNumber::golden(), 50).unwrap(), one);
    }

    #[test]
    fn cocycle_identity_holds_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alpha = CircleNumber::golden();
        for _ in 0..10 {
            let t = CircleNumber::random(&mut rng, 64);
            let tp = CircleNumber::random(&mut rng, 64);
            let u = CircleNumber::random(&mut rng, 64);
            let phi = StepCocycle::four_jump(&t, &tp, &u);
            let n = rng.random_range(1..30);
            let m = rng.random_range(1..30);
            let lhs = phi.n_step(&alpha, n + m).unwrap();
            let rhs =
                phi.n_step(&alpha, n).unwrap().mul(&phi.n_step(&alpha, m).unwrap().shift(&alpha.mul_int(n as i64)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orbit_evaluation_agrees_with_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let alpha = CircleNumber::golden();
        let phi = StepCocycle::four_jump(&r(1, 3), &r(1, 7), &r(1, 11));
        for s0 in [CircleNumber::zero(), CircleNumber::random(&mut rng, 128), r(1, 3)] {
            let orbit = Orbit::forward(&s0, &alpha);
            let fast = phi.eval_orbit(&orbit, 500);
            for (i, v) in fast.iter().enumerate() {
                assert_eq!(*v, phi.eval(&orbit.exact(i as u64)));
            }
        }
    }

    #[test]
    fn jump_guard() {
        let phi = StepCocycle::two_jump(&r(1, 3));
        assert!(matches!(phi.n_step(&CircleNumber::golden(), 6_000_000), Err(Error::LimitExceeded { .. })));
    }
}
