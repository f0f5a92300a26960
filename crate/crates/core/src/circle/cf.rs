//! Continued-fraction expansions and the classical convergent inequalities.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::number::{norm_ulps, CircleNumber};
use super::real::{QuadReal, Rational};
use crate::error::{Error, Result};

/// Default bound on `q_k` below which the best-approximation property is
/// verified for every multiple.
pub const EXHAUSTIVE_CAP: u64 = 1_000_000;
/// Number of random multiples tested above [`EXHAUSTIVE_CAP`].
pub const SAMPLED_MULTIPLES: usize = 10_000;

/// Partial quotients `a_1..a_K` with convergents `p_k/q_k` for `k = 0..=K`.
///
/// Indexing follows `p_0/q_0 = 0/1` and the implicit `p_{-1}/q_{-1} = 1/0`,
/// so `q_1 = a_1` and `q_{k+1} = a_{k+1} q_k + q_{k-1}`.
#[derive(Clone, Debug)]
pub struct CfExpansion {
    alpha: CircleNumber,
    partial_quotients: Vec<BigUint>,
    convergents: Vec<(BigUint, BigUint)>,
}

impl CfExpansion {
    /// Builds an expansion from raw parts without checking them; used to
    /// exercise [`verify_convergent_bounds`] on corrupted data.
    pub fn from_parts(
        alpha: CircleNumber,
        partial_quotients: Vec<BigUint>,
        convergents: Vec<(BigUint, BigUint)>,
    ) -> Self {
        CfExpansion { alpha, partial_quotients, convergents }
    }

    pub fn alpha(&self) -> &CircleNumber {
        &self.alpha
    }

    pub fn depth(&self) -> usize {
        self.partial_quotients.len()
    }

    /// `a_1, …, a_K`.
    pub fn partial_quotients(&self) -> &[BigUint] {
        &self.partial_quotients
    }

    /// `(p_k, q_k)` for `k = 0..=K`.
    pub fn convergents(&self) -> &[(BigUint, BigUint)] {
        &self.convergents
    }

    pub fn q(&self, k: usize) -> &BigUint {
        &self.convergents[k].1
    }

    /// `q_0, q_1, …, q_K`.
    pub fn denominators(&self) -> Vec<BigUint> {
        self.convergents.iter().map(|(_, q)| q.clone()).collect()
    }

    /// `ζ_k = q_k α − p_k`, so that `α = p_k/q_k + ζ_k/q_k`.
    pub fn zeta(&self, k: usize) -> QuadReal {
        let (p, q) = &self.convergents[k];
        self.alpha
            .value()
            .mul_int(&BigInt::from(q.clone()))
            .add_rational(&-Rational::from_integer(BigInt::from(p.clone())))
    }

    /// Rebuilds `q_k` from the partial quotients.
    pub fn recomputed_denominators(&self) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(self.partial_quotients.len() + 1);
        let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
        out.push(cur.clone());
        for a in &self.partial_quotients {
            let next = a * &cur + &prev;
            prev = std::mem::replace(&mut cur, next);
            out.push(cur.clone());
        }
        out
    }
}

/// Expands `alpha` to `depth` partial quotients.
///
/// Rational and dyadic inputs expand by Euclid's algorithm and fail with
/// [`Error::ExpansionTerminated`] when they run out of terms; quadratic
/// irrationals expand exactly to any depth.
pub fn cf_expand(alpha: &CircleNumber, depth: usize) -> Result<CfExpansion> {
    if depth == 0 {
        return Err(Error::pre("depth must be at least 1"));
    }
    let mut partial_quotients = Vec::with_capacity(depth);
    let mut convergents = vec![(BigUint::zero(), BigUint::one())];
    let (mut p_prev, mut q_prev) = (BigUint::one(), BigUint::zero());
    let mut x = alpha.value().clone();
    for _ in 0..depth {
        if x.is_zero() {
            return Err(Error::ExpansionTerminated { achieved: partial_quotients.len(), requested: depth });
        }
        let complete = QuadReal::one().checked_div(&x)?;
        let a = complete.floor();
        x = complete.add_rational(&-Rational::from_integer(a.clone()));
        let a = a.to_biguint().expect("complete quotients exceed 1");
        let (p, q) = convergents.last().unwrap().clone();
        let next = (&a * &p + &p_prev, &a * &q + &q_prev);
        p_prev = p;
        q_prev = q;
        convergents.push(next);
        partial_quotients.push(a);
    }
    Ok(CfExpansion { alpha: alpha.clone(), partial_quotients, convergents })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub k: usize,
    pub q_k: String,
    /// `q_k = a_k q_{k−1} + q_{k−2}` and `|ζ_k| = ‖q_k α‖`.
    pub recurrence: bool,
    /// `|ζ_k| ≤ 1/q_{k+1}`.
    pub zeta_bound: bool,
    /// `‖q_k α‖ ≤ 1/q_{k+1}`.
    pub norm_bound: bool,
    /// `1/(2q_k) ≤ 1/(q_k + q_{k−1}) ≤ ‖q_{k−1} α‖`.
    pub lower_bound: bool,
    /// `‖q_{k−1} α‖ ≤ ‖j α‖` for the tested `0 < j < q_k`.
    pub best_approximation: bool,
    /// False only for `k = 1` when `a_1 = 1`: then `q_0 = q_1`, the nearest
    /// integer to `α` is 1 rather than `p_0 = 0`, and the lower chain is skipped.
    pub chain_applicable: bool,
    pub exhaustive: bool,
    pub multiples_tested: u64,
}

impl BoundCheck {
    pub fn passed(&self) -> bool {
        self.recurrence && self.zeta_bound && self.norm_bound && self.lower_bound && self.best_approximation
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(BoundCheck::passed)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.checks.iter().find(|c| !c.passed()).map(|c| c.k)
    }
}

fn le(a: &QuadReal, b: &QuadReal) -> bool {
    a.checked_cmp(b).expect("shared field") != std::cmp::Ordering::Greater
}

fn inv(q: &BigUint) -> QuadReal {
    if q.is_zero() {
        // 1/0 bounds nothing
        return QuadReal::from_int(i64::MAX);
    }
    QuadReal::from_rational(Rational::new(BigInt::one(), BigInt::from(q.clone())))
}

fn norm_of_multiple(alpha: &CircleNumber, j: &BigUint) -> QuadReal {
    alpha.mul_big(&BigInt::from(j.clone())).norm()
}

/// Tests `‖jα‖ ≥ target` for the given multiples. Each is first decided on the
/// 128-bit orbit with a rigorous error window; only near-ties go exact.
fn best_approx_holds(alpha: &CircleNumber, target: &QuadReal, multiples: impl Iterator<Item = u128>) -> (bool, u64) {
    let a = alpha.approx();
    let exact_orbit = alpha.approx_is_exact();
    let t_fixed = target.fixed_floor(128).to_u128().unwrap_or(u128::MAX);
    let mut tested = 0u64;
    for j in multiples {
        tested += 1;
        let n = norm_ulps(a.wrapping_mul(j));
        let err = if exact_orbit { 0 } else { j };
        // the true value lies in [n − err, n + err]; the target in [t, t + 1]
        if n.saturating_sub(err) > t_fixed.saturating_add(1) {
            continue;
        }
        let exact = norm_of_multiple(alpha, &BigUint::from(j));
        if !le(target, &exact) {
            return (false, tested);
        }
    }
    (true, tested)
}

/// Checks the convergent inequalities for every stored `k ≥ 1` with a known
/// successor `q_{k+1}`.
pub fn verify_convergent_bounds(cf: &CfExpansion, exhaustive_cap: u64, seed: u64) -> Result<BoundsReport> {
    if cf.depth() < 2 {
        return Err(Error::pre("bound verification needs depth at least 2"));
    }
    let alpha = cf.alpha();
    let recomputed = cf.recomputed_denominators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for k in 1..cf.depth() {
        let q_prev = cf.q(k - 1);
        let q_k = cf.q(k);
        let q_next = cf.q(k + 1);
        let zeta = cf.zeta(k);
        let norm_k = norm_of_multiple(alpha, q_k);
        let recurrence = recomputed[k] == *q_k && recomputed[k + 1] == *q_next && zeta.abs() == norm_k;
        let zeta_bound = le(&zeta.abs(), &inv(q_next));
        let norm_bound = le(&norm_k, &inv(q_next));
        let norm_prev = norm_of_multiple(alpha, q_prev);
        let mediant = inv(&(q_k + q_prev));
        let chain_applicable = q_prev < q_k;
        let lower_bound = !chain_applicable || (le(&inv(&(q_k * 2u32)), &mediant) && le(&mediant, &norm_prev));

        let limit = q_k.to_u128();
        let (best_approximation, exhaustive, multiples_tested) = match limit {
            _ if !chain_applicable => (true, true, 0),
            Some(qk) if qk <= exhaustive_cap as u128 => {
                let (ok, n) = best_approx_holds(alpha, &norm_prev, 1..qk);
                (ok, true, n)
            }
            _ => {
                let hi = limit.unwrap_or(u128::MAX);
                let draws: Vec<u128> = (0..SAMPLED_MULTIPLES).map(|_| rng.random_range(1..hi)).collect();
                let (ok, n) = best_approx_holds(alpha, &norm_prev, draws.into_iter());
                (ok, false, n)
            }
        };
        checks.push(BoundCheck {
            k,
            q_k: q_k.to_string(),
            recurrence,
            zeta_bound,
            norm_bound,
            lower_bound,
            best_approximation,
            chain_applicable,
            exhaustive,
            multiples_tested,
        });
    }
    Ok(BoundsReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Euclid on a 256-bit floor of α.
    fn euclid_oracle(alpha: &CircleNumber, depth: usize) -> Vec<u64> {
        let scale = BigInt::one() << 256u32;
        let (mut num, mut den) = (alpha.value().fixed_floor(256), scale);
        let mut out = Vec::new();
        for _ in 0..depth {
            std::mem::swap(&mut num, &mut den);
            let a = &num / &den;
            num -= &a * &den;
            out.push(a.to_u64().unwrap());
        }
        out
    }

    fn to_u64s(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn golden_mean_is_all_ones_with_fibonacci_denominators() {
        let cf = cf_expand(&CircleNumber::golden(), 6).unwrap();
        assert_eq!(to_u64s(cf.partial_quotients()), vec![1; 6]);
        assert_eq!(to_u64s(&cf.denominators()[..6]), vec![1, 1, 2, 3, 5, 8]);
        assert_eq!(to_u64s(cf.partial_quotients()), euclid_oracle(&CircleNumber::golden(), 6));
    }

    #[test]
    fn two_sevenths_terminates() {
        let x = CircleNumber::rational(2, 7);
        let cf = cf_expand(&x, 2).unwrap();
        assert_eq!(to_u64s(cf.partial_quotients()), vec![3, 2]);
        assert_eq!(to_u64s(&cf.denominators()[1..]), vec![3, 7]);
        match cf_expand(&x, 3) {
            Err(Error::ExpansionTerminated { achieved: 2, requested: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn silver_ratio_tail() {
        let cf = cf_expand(&CircleNumber::sqrt2_minus_1(), 5).unwrap();
        assert_eq!(to_u64s(cf.partial_quotients()), vec![2; 5]);
        assert_eq!(euclid_oracle(&CircleNumber::sqrt2_minus_1(), 5), vec![2; 5]);
    }

    #[test]
    fn bounds_hold_for_quadratic_surds() {
        for alpha in [CircleNumber::golden(), CircleNumber::sqrt2_minus_1()] {
            let cf = cf_expand(&alpha, 10).unwrap();
            let report = verify_convergent_bounds(&cf, EXHAUSTIVE_CAP, 0).unwrap();
            assert!(report.all_passed(), "{report:?}");
            assert_eq!(report.checks.len(), 9);
        }
    }

    #[test]
    fn tampered_denominator_is_flagged_at_its_index() {
        let cf = cf_expand(&CircleNumber::golden(), 10).unwrap();
        let mut conv = cf.convergents().to_vec();
        conv[5].1 += 1u32;
        let bad = CfExpansion::from_parts(cf.alpha().clone(), cf.partial_quotients().to_vec(), conv);
        let report = verify_convergent_bounds(&bad, EXHAUSTIVE_CAP, 0).unwrap();
        assert_eq!(report.first_failure(), Some(4));
        assert!(!report.checks.iter().find(|c| c.k == 5).unwrap().passed());
    }

    #[test]
    fn recurrence_reproduces_denominators() {
        let cf = cf_expand(&CircleNumber::parse("cf:[3,1,(4,1)]", 128).unwrap(), 30).unwrap();
        assert_eq!(cf.recomputed_denominators(), cf.denominators());
    }
}
