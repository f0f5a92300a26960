//! Upper bound for the correlation supremum over joinings: every joining's
//! one-coordinate law is a coupling of the two one-symbol marginals, so the
//! best coupling dominates every joining.

use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::block_measure::BlockMeasure;
use super::joining::{joining_corr, JoiningMeasure};
use super::transport::solve_max;
use crate::circle::real::rational_from_f64;
use crate::error::{Error, Result};
use crate::symbolic::corr::exact_to_c64;
use crate::symbolic::{Alphabet, ExactComplex, SymbolSpace};

pub const DEFAULT_THETA_GRID: usize = 360;

/// A probability vector on an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOneLaw {
    alphabet: Arc<Alphabet>,
    probs: Vec<BigRational>,
}

impl OrderOneLaw {
    pub fn new(alphabet: Arc<Alphabet>, probs: Vec<BigRational>) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::pre("one probability per symbol required"));
        }
        if probs.iter().any(|p| p.is_negative()) || probs.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::pre("probabilities must be nonnegative and sum to 1"));
        }
        Ok(OrderOneLaw { alphabet, probs })
    }

    pub fn of_measure(mu: &BlockMeasure) -> Result<Self> {
        let SymbolSpace::Single(a) = mu.space() else {
            return Err(Error::pre("one-symbol law needs a single alphabet"));
        };
        Self::new(a.clone(), mu.order1())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    fn mean(&self) -> ExactComplex {
        self.alphabet
            .symbols()
            .iter()
            .zip(&self.probs)
            .fold(ExactComplex::zero(), |acc, (z, p)| acc + z.scale(p.clone()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingBound {
    /// Certified upper bound on `|corr|` over all couplings.
    pub upper: f64,
    /// Exact supremum when both alphabets are real; the grid is then unnecessary.
    pub exact: Option<String>,
    pub grid_max: f64,
    pub theta_grid: usize,
    pub inflation: f64,
}

/// A rational point on the unit circle near angle `theta`.
fn rational_direction(theta: f64) -> (BigRational, BigRational, f64) {
    let (s, c) = theta.sin_cos();
    let flip = c < 0.0;
    let (s, c) = if flip { (-s, -c) } else { (s, c) };
    // Stereographic parameter t = tan(half-angle) keeps c² + s² = 1 exactly.
    let t = rational_from_f64(s / (1.0 + c)).unwrap_or_else(|_| BigRational::zero());
    let one = BigRational::one();
    let denom = &one + &t * &t;
    let mut cr = (&one - &t * &t) / &denom;
    let mut sr = (BigRational::from_integer(2.into()) * &t) / denom;
    if flip {
        cr = -cr;
        sr = -sr;
    }
    let angle = sr.to_f64().unwrap().atan2(cr.to_f64().unwrap());
    (cr, sr, angle)
}

/// Exact `max_λ Re(e^{−iθ}(Σ a·conj(b)·λ − m_x·conj(m_y)))` for direction `(c, s)`.
fn support(mu1: &OrderOneLaw, nu1: &OrderOneLaw, c: &BigRational, s: &BigRational) -> Result<BigRational> {
    let cost: Vec<Vec<BigRational>> = mu1
        .alphabet
        .symbols()
        .iter()
        .map(|a| {
            nu1.alphabet
                .symbols()
                .iter()
                .map(|b| {
                    let z = a * b.conj();
                    c * &z.re + s * &z.im
                })
                .collect()
        })
        .collect();
    let off = mu1.mean() * nu1.mean().conj();
    let lp = solve_max(&cost, &mu1.probs, &nu1.probs)?;
    Ok(lp.value - (c * &off.re + s * &off.im))
}

/// Upper bound for `sup |corr|` over couplings of `mu1` and `nu1`.
pub fn coupling_upper_bound(mu1: &OrderOneLaw, nu1: &OrderOneLaw, theta_grid: usize) -> Result<CouplingBound> {
    if theta_grid < 4 {
        return Err(Error::pre("theta grid needs at least 4 directions"));
    }
    let (one, zero) = (BigRational::one(), BigRational::zero());
    if mu1.alphabet.is_real() && nu1.alphabet.is_real() {
        let up = support(mu1, nu1, &one, &zero)?;
        let down = support(mu1, nu1, &-one, &zero)?;
        let best = up.max(down);
        let v = best.to_f64().unwrap();
        return Ok(CouplingBound {
            upper: v,
            exact: Some(crate::circle::format_rational(&best)),
            grid_max: v,
            theta_grid,
            inflation: 1.0,
        });
    }
    let dirs: Vec<(BigRational, BigRational, f64)> =
        (0..theta_grid).map(|k| rational_direction(2.0 * PI * k as f64 / theta_grid as f64)).collect();
    let values: Vec<f64> =
        dirs.par_iter().map(|(c, s, _)| support(mu1, nu1, c, s).map(|v| v.to_f64().unwrap())).collect::<Result<_>>()?;
    let grid_max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let mut angles: Vec<f64> = dirs.iter().map(|d| d.2.rem_euclid(2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let wrap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    let gap = angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
    let inflation = 1.0 / (gap / 2.0 + 1e-12).cos();
    Ok(CouplingBound { upper: grid_max * inflation * (1.0 + 1e-12), exact: None, grid_max, theta_grid, inflation })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelationInterval {
    pub lower: f64,
    pub upper: f64,
    pub witnesses: usize,
}

/// `[max |corr(ξ)| over the supplied joinings, coupling bound]`.
pub fn correlation_interval(joinings: &[JoiningMeasure], theta_grid: usize) -> Result<CorrelationInterval> {
    let Some(first) = joinings.first() else {
        return Err(Error::pre("at least one joining is needed"));
    };
    let mu1 = OrderOneLaw::of_measure(first.mu())?;
    let nu1 = OrderOneLaw::of_measure(first.nu())?;
    let mut lower = 0f64;
    for xi in joinings {
        if OrderOneLaw::of_measure(xi.mu())? != mu1 || OrderOneLaw::of_measure(xi.nu())? != nu1 {
            return Err(Error::pre("joinings have different one-symbol marginals"));
        }
        lower = lower.max(exact_to_c64(&joining_corr(xi)?).norm());
    }
    let upper = coupling_upper_bound(&mu1, &nu1, theta_grid)?.upper;
    Ok(CorrelationInterval { lower, upper, witnesses: joinings.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::alphabet::Symbol;
    use num_complex::Complex;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn law(a: Arc<Alphabet>, p: &[(i64, i64)]) -> OrderOneLaw {
        OrderOneLaw::new(a, p.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn sign_examples() {
        let a = Alphabet::signs();
        let uniform = law(a.clone(), &[(1, 2), (1, 2)]);
        let point = law(a, &[(0, 1), (1, 1)]);
        assert_eq!(coupling_upper_bound(&uniform, &uniform, 360).unwrap().upper, 1.0);
        assert_eq!(coupling_upper_bound(&point, &uniform, 360).unwrap().upper, 0.0);
        assert_eq!(coupling_upper_bound(&uniform, &point, 360).unwrap().upper, 0.0);
        assert!(coupling_upper_bound(&uniform, &uniform, 3).is_err());
        assert!(OrderOneLaw::new(Alphabet::signs(), vec![q(1, 2), q(1, 3)]).is_err());
    }

    #[test]
    fn complex_alphabet_bound_covers_true_value() {
        // Fourth roots of unity, uniform: the identity coupling has corr = 1.
        let i = |re: i64, im: i64| -> Symbol { Complex::new(q(re, 1), q(im, 1)) };
        let a = Arc::new(Alphabet::new(vec![i(1, 0), i(0, 1), i(-1, 0), i(0, -1)], None).unwrap());
        let uniform = law(a, &[(1, 4); 4]);
        let b = coupling_upper_bound(&uniform, &uniform, 360).unwrap();
        assert!(b.exact.is_none());
        assert!(b.upper >= 1.0 && b.upper < 1.001, "{b:?}");
    }

    #[test]
    fn rational_directions_are_on_the_circle() {
        for k in 0..12 {
            let (c, s, _) = rational_direction(2.0 * PI * k as f64 / 12.0);
            assert_eq!(&c * &c + &s * &s, BigRational::one());
        }
    }
}
