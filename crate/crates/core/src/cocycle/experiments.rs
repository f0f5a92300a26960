//! Monte Carlo experiments on cocycle itineraries: one where correlations
//! with a Sturmian probe vanish and one with a correlating joining.
//!
//! Sample `i` draws its parameters from a ChaCha8 stream `i` under the given
//! seed, so results do not depend on the thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::step::StepCocycle;
use crate::circle::{CircleNumber, QuadReal, DEFAULT_PRECISION_BITS};
use crate::error::{Error, Result};
use crate::symbolic::corr::exact_to_c64;
use crate::symbolic::{block_corr, code_pi_prime, gen_cocycle_itinerary, gen_rotation_itinerary, SymbolicSequence};

pub const MONTE_CARLO_POINTS: usize = 1_000_000;

/// Random `(t, s0, κ0)` of one sample.
#[derive(Clone, Debug)]
pub struct SampleParams {
    pub t: CircleNumber,
    pub s0: CircleNumber,
    pub kappa0: i8,
}

pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn sample_params(seed: u64, index: u64, bits: u32) -> SampleParams {
    let mut rng = sample_rng(seed, index);
    let t = CircleNumber::random(&mut rng, bits);
    let s0 = CircleNumber::random(&mut rng, bits);
    let kappa0 = if rng.random::<bool>() { 1 } else { -1 };
    SampleParams { t, s0, kappa0 }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleStats {
    pub samples: usize,
    pub length: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub std_error: f64,
    pub max: f64,
    pub values: Vec<f64>,
}

impl SampleStats {
    fn from_values(values: Vec<f64>, length: usize) -> Self {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let var =
            if values.len() > 1 { values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        SampleStats {
            samples: values.len(),
            length,
            mean,
            std_dev: var.sqrt(),
            std_error: (var / k).sqrt(),
            max,
            values,
        }
    }
}

fn require_irrational(alpha: &CircleNumber) -> Result<()> {
    if alpha.is_rational() {
        return Err(Error::pre("the rotation number must be irrational"));
    }
    Ok(())
}

/// `|corr(x_{[1,N]}, probe_{[1,N]})|` for `M` random two-jump cocycle itineraries.
pub fn example2_experiment(
    alpha: &CircleNumber,
    samples: usize,
    length: usize,
    probe: &SymbolicSequence,
    seed: u64,
    bits: u32,
) -> Result<SampleStats> {
    require_irrational(alpha)?;
    if samples == 0 || length == 0 {
        return Err(Error::pre("need at least one sample of positive length"));
    }
    let probe = probe.prefix(length)?;
    let values = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_params(seed, i, bits);
            let x = gen_cocycle_itinerary(&StepCocycle::two_jump(&p.t), alpha, &p.s0, p.kappa0, length)?;
            Ok(exact_to_c64(&block_corr(&x, &probe)?).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SampleStats::from_values(values, length))
}

/// `(1/N)Σ y_n·Π′(x)_n` with `y` the Sturmian coding from the same `s0`,
/// averaged over `M` random samples. Target `α(1−α)/2`.
pub fn example3_experiment(
    alpha: &CircleNumber,
    samples: usize,
    length: usize,
    seed: u64,
    bits: u32,
) -> Result<SampleStats> {
    require_irrational(alpha)?;
    if samples == 0 || length == 0 {
        return Err(Error::pre("need at least one sample of positive length"));
    }
    let values = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_params(seed, i, bits);
            let x = gen_cocycle_itinerary(&StepCocycle::two_jump(&p.t), alpha, &p.s0, p.kappa0, length + 1)?;
            let coded = code_pi_prime(&x)?;
            let y = gen_rotation_itinerary(alpha, alpha, &p.s0, length);
            // Π′ indices 0..3 carry −1, −1/2, 1/2, 1; work in halves.
            const HALVES: [i64; 4] = [-2, -1, 1, 2];
            let sum: i64 = coded
                .indices()
                .iter()
                .zip(y.indices())
                .map(|(&c, &s)| if s == 1 { HALVES[c as usize] } else { -HALVES[c as usize] })
                .sum();
            Ok(sum as f64 / (2.0 * length as f64))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SampleStats::from_values(values, length))
}

#[derive(Clone, Debug, Serialize)]
pub struct Example3Integral {
    pub exact: String,
    pub exact_f64: f64,
    pub closed_form: String,
    /// `|exact − closed form|`, computed exactly and rounded up at 128 bits.
    pub difference_bound: String,
    pub monte_carlo_mean: f64,
    pub monte_carlo_std_error: f64,
    pub monte_carlo_points: usize,
}

fn show(v: &QuadReal) -> String {
    format!("{v}")
}

/// `∫∫ φ_α(s)·φ_t(s) dt ds`, exactly by integrating over the two pieces
/// `t < α` and `t ≥ α`, and by Monte Carlo over uniform `(s, t)`.
pub fn example3_integral(alpha: &CircleNumber, points: usize, seed: u64) -> Result<Example3Integral> {
    if alpha.is_zero() {
        return Err(Error::pre("α must lie in (0,1)"));
    }
    let a = alpha.value();
    let one = QuadReal::one();
    let b = one.checked_sub(a)?;
    let half = BigRational::new(1.into(), 2.into());
    // For fixed t the integrand is −1 on a set of length |t − α|.
    // ∫₀^α (α − t) dt + ∫_α^1 (t − α) dt = α²/2 + (1 − α)²/2.
    let mismatch = a.checked_mul(a)?.mul_rational(&half).checked_add(&b.checked_mul(&b)?.mul_rational(&half))?;
    let exact = one.checked_sub(&mismatch.mul_int(&BigInt::from(2)))?;
    let closed = a.checked_mul(&b)?.mul_int(&BigInt::from(2));
    let diff = exact.checked_sub(&closed)?.abs();
    let scaled = diff.fixed_floor(DEFAULT_PRECISION_BITS) + 1;
    let bound = BigRational::new(scaled, BigInt::from(1) << DEFAULT_PRECISION_BITS);
    let (mean, se) = monte_carlo(alpha.to_f64(), points, seed);
    Ok(Example3Integral {
        exact: show(&exact),
        exact_f64: exact.to_f64(),
        closed_form: show(&closed),
        difference_bound: crate::circle::format_rational(&bound),
        monte_carlo_mean: mean,
        monte_carlo_std_error: se,
        monte_carlo_points: points,
    })
}

const MC_CHUNK: usize = 1 << 16;

fn monte_carlo(alpha: f64, points: usize, seed: u64) -> (f64, f64) {
    let chunks = points.div_ceil(MC_CHUNK);
    let sum: i64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = sample_rng(seed, c as u64);
            let count = MC_CHUNK.min(points - c * MC_CHUNK);
            (0..count)
                .map(|_| {
                    let s: f64 = rng.random();
                    let t: f64 = rng.random();
                    if (s < alpha) == (s < t) {
                        1
                    } else {
                        -1
                    }
                })
                .sum::<i64>()
        })
        .sum();
    let n = points as f64;
    let mean = sum as f64 / n;
    // Values are ±1, so the sample variance is (1 − mean²)·n/(n − 1).
    let var = (1.0 - mean * mean) * n / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// `α(1−α)/2` as `f64`.
pub fn example3_target(alpha: &CircleNumber) -> f64 {
    let a = alpha.to_f64();
    a * (1.0 - a) / 2.0
}

/// Whether the exact difference bound is below `10^{-digits}`.
pub fn difference_below(report: &Example3Integral, digits: u32) -> Result<bool> {
    let bound = crate::circle::parse_rational(&report.difference_bound)?;
    let tol = BigRational::new(1.into(), BigInt::from(10).pow(digits));
    Ok(bound < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{Alphabet, Generator};

    #[test]
    fn integral_closed_form() {
        let golden = example3_integral(&CircleNumber::golden(), 200_000, 1).unwrap();
        assert!(difference_below(&golden, 20).unwrap());
        assert!((golden.exact_f64 - 0.4721359549995794).abs() < 1e-12);
        assert!((golden.monte_carlo_mean - golden.exact_f64).abs() < 4.0 * golden.monte_carlo_std_error);
        let half = example3_integral(&CircleNumber::rational(1, 2), 1000, 1).unwrap();
        assert_eq!(half.exact, "1/2");
        let tiny = example3_integral(&CircleNumber::rational(1, 1_000_000), 1000, 1).unwrap();
        assert!(tiny.exact_f64 < 1e-5);
    }

    #[test]
    fn constant_probe_gives_zero_and_self_probe_does_not() {
        let alpha = CircleNumber::golden();
        let one = SymbolicSequence::new(Generator::Constant { alphabet: Alphabet::signs(), index: 1 }, 2000);
        let s = example2_experiment(&alpha, 8, 2000, &one, 3, 128).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
        let p = sample_params(3, 0, 128);
        let phi = StepCocycle::two_jump(&p.t);
        let own =
            SymbolicSequence::new(Generator::Cocycle { phi, alpha: alpha.clone(), s0: p.s0, kappa0: p.kappa0 }, 2000);
        let s = example2_experiment(&alpha, 1, 2000, &own, 3, 128).unwrap();
        assert!(s.values[0] > 0.5);
    }

    #[test]
    fn rational_rotation_is_rejected() {
        assert!(example3_experiment(&CircleNumber::rational(1, 2), 4, 100, 1, 128).is_err());
    }

    #[test]
    fn experiments_are_reproducible() {
        let alpha = CircleNumber::golden();
        let a = example3_experiment(&alpha, 6, 3000, 9, 128).unwrap();
        let b = example3_experiment(&alpha, 6, 3000, 9, 128).unwrap();
        assert_eq!(a.values, b.values);
    }
}
