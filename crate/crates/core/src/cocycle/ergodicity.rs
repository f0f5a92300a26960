//! Finite evidence about ergodicity of step cocycles over a rotation.
//!
//! Both tests only ever certify the ergodic side. The `L¹` test looks for
//! `φ^{(n)}` staying away from 1 along times with `nα → 0`; the four-jump
//! test looks for one of four necessary conditions for non-ergodicity failing.

use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::step::StepCocycle;
use crate::circle::number::{norm_ulps, scaled_phase};
use crate::circle::weyl::weyl_from_phases;
use crate::circle::{cf_expand, CircleNumber, QSequence};
use crate::error::{Error, Result};

pub const DEFAULT_L1_THRESHOLD: f64 = 0.1;
pub const DEFAULT_GAMMA_TOL: f64 = 1e-3;
pub const BURN_IN: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    ErgodicCertified,
    NonErgodicityConsistent,
    Inconclusive,
}

/// One time `n` (for the four-jump test, `n = q_k`).
#[derive(Clone, Debug, Serialize)]
pub struct EvidenceRow {
    pub k: usize,
    pub n: String,
    pub n_alpha_norm: f64,
    pub l1: Option<f64>,
    /// The four minima, in the order of the theorem's displays.
    pub mins: Option<[f64; 4]>,
    /// `min_{i′≠i} ‖q(x_i − x_{i′})‖` for the discontinuities `0, t, u, t′+u`.
    pub cond_c1: Option<[f64; 4]>,
    /// `min{‖q(t−t′)‖, ‖q(t+t′)‖}`.
    pub minn0: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErgodicityVerdict {
    pub status: VerdictStatus,
    pub evidence: Vec<EvidenceRow>,
    /// Observed lower bound of the best sequence beyond the burn-in.
    pub gamma: f64,
    /// Four-jump test only: largest value any sequence reaches on the last
    /// third of the rows after the burn-in.
    pub recurrent_peak: Option<f64>,
    pub burn_in: usize,
}

/// `‖q·x‖` from the exact 128-bit phase.
pub fn scaled_norm(x: &CircleNumber, q: &BigUint) -> f64 {
    norm_ulps(scaled_phase(x, q)) as f64 / 2f64.powi(128)
}

/// `L¹(φ^{(n)}, 1)` along `n_seq`; `threshold` separates "away from 0".
pub fn ergodicity_l1_test(
    phi: &StepCocycle,
    alpha: &CircleNumber,
    n_seq: &[u64],
    threshold: f64,
) -> Result<ErgodicityVerdict> {
    if n_seq.is_empty() || n_seq.contains(&0) {
        return Err(Error::pre("time list must be nonempty and positive"));
    }
    let evidence: Vec<EvidenceRow> = n_seq
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let l1 = phi.n_step(alpha, n as usize)?.l1_distance_to_one().to_f64();
            Ok(EvidenceRow {
                k: i + 1,
                n: n.to_string(),
                n_alpha_norm: scaled_norm(alpha, &BigUint::from(n)),
                l1: Some(l1),
                mins: None,
                cond_c1: None,
                minn0: None,
            })
        })
        .collect::<Result<_>>()?;
    let tail = &evidence[BURN_IN.min(evidence.len() - 1)..];
    let l1s: Vec<f64> = tail.iter().map(|r| r.l1.unwrap()).collect();
    let gamma = l1s.iter().cloned().fold(f64::INFINITY, f64::min);
    let approaching = tail.windows(2).all(|w| w[1].n_alpha_norm < w[0].n_alpha_norm);
    let last_third = &l1s[l1s.len() - l1s.len().div_ceil(3)..];
    let status = if approaching && gamma >= threshold {
        VerdictStatus::ErgodicCertified
    } else if last_third.iter().all(|&v| v < threshold) {
        VerdictStatus::NonErgodicityConsistent
    } else {
        VerdictStatus::Inconclusive
    };
    Ok(ErgodicityVerdict { status, evidence, gamma, recurrent_peak: None, burn_in: BURN_IN })
}

fn four_jump_row(
    k: usize,
    q: &BigUint,
    alpha: &CircleNumber,
    pts: &[CircleNumber; 4],
    t: &CircleNumber,
    tp: &CircleNumber,
) -> EvidenceRow {
    let d = |a: &CircleNumber, b: &CircleNumber| scaled_norm(&a.sub(b), q);
    let mut pair = [[0f64; 4]; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            let v = d(&pts[i], &pts[j]);
            pair[i][j] = v;
            pair[j][i] = v;
        }
    }
    let cond: [f64; 4] =
        std::array::from_fn(|i| (0..4).filter(|&j| j != i).map(|j| pair[i][j]).fold(f64::INFINITY, f64::min));
    let minn0 = scaled_norm(&t.sub(tp), q).min(scaled_norm(&t.add(tp), q));
    EvidenceRow {
        k,
        n: q.to_string(),
        n_alpha_norm: scaled_norm(alpha, q),
        l1: None,
        // With x = (0, t, u, t′+u) these are exactly the theorem's four
        // minima over {t, u, t′+u}, {t, t−u, t−t′−u}, {u, t−u, t′}, {t′+u, t−t′−u, t′}.
        mins: Some(cond),
        cond_c1: Some(cond),
        minn0: Some(minn0),
    }
}

/// The four necessary conditions for non-ergodicity of `φ^u_{t,t′}` along the
/// convergent denominators `q_1..q_depth` of `α`.
pub fn four_jump_criterion(
    t: &CircleNumber,
    t_prime: &CircleNumber,
    u: &CircleNumber,
    alpha: &CircleNumber,
    depth: usize,
    gamma_tol: f64,
) -> Result<ErgodicityVerdict> {
    if depth <= BURN_IN {
        return Err(Error::pre(format!("depth must exceed the burn-in of {BURN_IN}")));
    }
    let cf = cf_expand(alpha, depth)?;
    let pts = [CircleNumber::zero(), t.clone(), u.clone(), t_prime.add(u)];
    let evidence: Vec<EvidenceRow> =
        (1..=depth).into_par_iter().map(|k| four_jump_row(k, cf.q(k), alpha, &pts, t, t_prime)).collect();
    let tail = &evidence[BURN_IN..];
    let gamma =
        (0..4).map(|i| tail.iter().map(|r| r.mins.unwrap()[i]).fold(f64::INFINITY, f64::min)).fold(0f64, f64::max);
    // Non-ergodicity forces every sequence to tend to 0. One that stays above
    // the tolerance, or keeps coming back above it late in the tail, does not.
    let last_third = &tail[tail.len() - tail.len().div_ceil(3)..];
    let peak = last_third.iter().flat_map(|r| r.mins.unwrap()).fold(0f64, f64::max);
    let status = if gamma >= gamma_tol || peak >= gamma_tol {
        VerdictStatus::ErgodicCertified
    } else {
        VerdictStatus::Inconclusive
    };
    Ok(ErgodicityVerdict { status, evidence, gamma, recurrent_peak: Some(peak), burn_in: BURN_IN })
}

/// Evidence rows of the four-jump test extended by `L¹(φ^{(q_k)}, 1)`.
pub fn four_jump_trace(
    t: &CircleNumber,
    t_prime: &CircleNumber,
    u: &CircleNumber,
    alpha: &CircleNumber,
    depth: usize,
) -> Result<Vec<EvidenceRow>> {
    let mut rows = four_jump_criterion(t, t_prime, u, alpha, depth, DEFAULT_GAMMA_TOL)?.evidence;
    let phi = StepCocycle::four_jump(t, t_prime, u);
    rows.par_iter_mut().try_for_each(|row| -> Result<()> {
        let n: usize = row.n.parse().map_err(|_| Error::LimitExceeded { requested: u64::MAX, limit: u64::MAX })?;
        row.l1 = Some(phi.n_step(alpha, n)?.l1_distance_to_one().to_f64());
        Ok(())
    })?;
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylEntry {
    pub n: i64,
    pub m: i64,
    pub magnitude: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityStats {
    pub samples: usize,
    pub weyl: Vec<WeylEntry>,
    pub max_magnitude: f64,
    /// `max` over an `B × B` grid of `|count/N − 1/B²|·B²`.
    pub box_discrepancy: f64,
    pub boxes_per_axis: usize,
}

pub const WEYL_RANGE: i64 = 2;
pub const BOXES_PER_AXIS: usize = 8;

/// Equidistribution of `(q_k(t−t′), q_k(t+t′))` for the first `n` terms of `q_seq`.
pub fn density_pair_test(
    t: &CircleNumber,
    t_prime: &CircleNumber,
    q_seq: &QSequence,
    n: usize,
) -> Result<DensityStats> {
    if n == 0 || n > q_seq.len() {
        return Err(Error::pre(format!("need 1 ≤ N ≤ {} terms", q_seq.len())));
    }
    let q = QSequence::new(q_seq.terms()[..n].to_vec())?;
    let xs = q.phases(&t.sub(t_prime));
    let ys = q.phases(&t.add(t_prime));
    let mut freqs = Vec::new();
    for a in 0..=WEYL_RANGE {
        for b in -WEYL_RANGE..=WEYL_RANGE {
            if a > 0 || b > 0 {
                freqs.push((a, b));
            }
        }
    }
    let weyl: Vec<WeylEntry> = freqs
        .par_iter()
        .map(|&(a, b)| {
            let w: Complex64 = weyl_from_phases(a, b, &xs, &ys);
            WeylEntry { n: a, m: b, magnitude: w.norm() }
        })
        .collect();
    let max_magnitude = weyl.iter().map(|w| w.magnitude).fold(0.0, f64::max);
    let b = BOXES_PER_AXIS;
    let shift = 128 - b.trailing_zeros();
    let mut counts = vec![0u64; b * b];
    for (x, y) in xs.iter().zip(&ys) {
        counts[(x >> shift) as usize * b + (y >> shift) as usize] += 1;
    }
    let expected = n as f64 / (b * b) as f64;
    let box_discrepancy = counts.iter().map(|&c| (c as f64 - expected).abs() / expected).fold(0.0, f64::max);
    Ok(DensityStats { samples: n, weyl, max_magnitude, box_discrepancy, boxes_per_axis: b })
}
