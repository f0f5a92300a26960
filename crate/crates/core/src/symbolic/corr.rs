//! Block correlation, correlation curves and a finite-scale Besicovitch proxy.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::alphabet::{symbol_to_c64, Symbol};
use super::block::Block;
use super::generators::SymbolicSequence;
use crate::error::{Error, Result};

pub type ExactComplex = Complex<BigRational>;

/// Default number of points in the logarithmic grid of [`dbar_estimate`].
pub const DBAR_GRID: usize = 50;

pub fn exact_to_c64(z: &ExactComplex) -> Complex64 {
    symbol_to_c64(z)
}

/// Joint symbol counts of two equal-length index streams.
struct PairCounts {
    left: usize,
    right: usize,
    counts: Vec<u64>,
    n: u64,
}

impl PairCounts {
    fn new(left: usize, right: usize) -> Self {
        PairCounts { left, right, counts: vec![0; left * right], n: 0 }
    }

    fn add(&mut self, i: u16, j: u16) {
        self.counts[i as usize * self.right + j as usize] += 1;
        self.n += 1;
    }

    /// `(1/n)Σ a·conj(b) − ((1/n)Σ a)((1/n)Σ conj(b))`, exact.
    fn corr(&self, a: &[Symbol], b: &[Symbol]) -> ExactComplex {
        let n = BigRational::from_integer(self.n.into());
        let mut cross = ExactComplex::zero();
        let mut sum_a = ExactComplex::zero();
        let mut sum_b = ExactComplex::zero();
        for (i, ai) in a.iter().enumerate().take(self.left) {
            for (j, bj) in b.iter().enumerate().take(self.right) {
                let c = self.counts[i * self.right + j];
                if c == 0 {
                    continue;
                }
                let c = BigRational::from_integer(c.into());
                let bj = bj.conj();
                cross += (ai * &bj).scale(c.clone());
                sum_a += ai.scale(c.clone());
                sum_b += bj.scale(c);
            }
        }
        cross.unscale(n.clone()) - (sum_a * sum_b).unscale(&n * &n)
    }
}

/// `corr(A, B)`, exact over Gaussian rationals.
pub fn block_corr(a: &Block, b: &Block) -> Result<ExactComplex> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.is_empty() {
        return Err(Error::pre("correlation of empty blocks is undefined"));
    }
    let mut pc = PairCounts::new(a.alphabet().len(), b.alphabet().len());
    for (&i, &j) in a.indices().iter().zip(b.indices()) {
        pc.add(i, j);
    }
    Ok(pc.corr(a.alphabet().symbols(), b.alphabet().symbols()))
}

/// `corr(x_{[1,n]}, y_{[1,n]})` for each `n` of an increasing list.
pub fn corr_curve(x: &SymbolicSequence, y: &SymbolicSequence, n_list: &[usize]) -> Result<Vec<ExactComplex>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::pre("n list must be strictly increasing"));
    }
    if n_list.first() == Some(&0) {
        return Err(Error::pre("n list entries must be positive"));
    }
    let Some(&max_n) = n_list.last() else {
        return Ok(Vec::new());
    };
    let xb = x.prefix(max_n)?;
    let yb = y.prefix(max_n)?;
    let (a, b) = (xb.alphabet().symbols(), yb.alphabet().symbols());
    let mut pc = PairCounts::new(a.len(), b.len());
    let mut out = Vec::with_capacity(n_list.len());
    let mut done = 0;
    for &n in n_list {
        for k in done..n {
            pc.add(xb.indices()[k], yb.indices()[k]);
        }
        done = n;
        out.push(pc.corr(a, b));
    }
    Ok(out)
}

/// `round(N^{k/(G−1)})` for `k < G`, deduplicated.
pub fn log_grid(max_n: usize, points: usize) -> Vec<usize> {
    if max_n == 0 {
        return Vec::new();
    }
    if points <= 1 {
        return vec![max_n];
    }
    let ln = (max_n as f64).ln();
    let mut grid: Vec<usize> =
        (0..points).map(|k| ((ln * k as f64 / (points - 1) as f64).exp().round() as usize).clamp(1, max_n)).collect();
    grid.dedup();
    if grid.last() != Some(&max_n) {
        grid.push(max_n);
    }
    grid
}

/// `max_{n ∈ grid} (1/n)Σ_{i≤n}|x_i − y_i|`, a finite-scale stand-in for the
/// Besicovitch limsup.
pub fn dbar_estimate(x: &SymbolicSequence, y: &SymbolicSequence, max_n: usize, grid_points: usize) -> Result<f64> {
    if max_n == 0 {
        return Err(Error::pre("N must be positive"));
    }
    let xb = x.prefix(max_n)?;
    let yb = y.prefix(max_n)?;
    let (a, b) = (xb.alphabet().to_c64(), yb.alphabet().to_c64());
    let dist: Vec<Vec<f64>> = a.iter().map(|za| b.iter().map(|zb| (za - zb).norm()).collect()).collect();
    let mut best = 0f64;
    let mut sum = 0f64;
    let mut done = 0;
    for n in log_grid(max_n, grid_points) {
        for k in done..n {
            sum += dist[xb.indices()[k] as usize][yb.indices()[k] as usize];
        }
        done = n;
        best = best.max(sum / n as f64);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationEvidence {
    UncorrelatedEvidence,
    WeakEvidence,
    StrongEvidence,
}

/// Heuristic reading of a correlation curve: looks at the last third of the
/// magnitudes only. Finite data never decides the asymptotic class.
pub fn classify_curve(magnitudes: &[f64], tol: f64) -> Option<CorrelationEvidence> {
    if magnitudes.is_empty() {
        return None;
    }
    let tail = &magnitudes[magnitudes.len() - magnitudes.len().div_ceil(3)..];
    Some(if tail.iter().all(|&v| v < tol) {
        CorrelationEvidence::UncorrelatedEvidence
    } else if tail.iter().all(|&v| v >= tol) {
        CorrelationEvidence::StrongEvidence
    } else {
        CorrelationEvidence::WeakEvidence
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::alphabet::int_symbol;
    use crate::symbolic::generators::{gen_mobius, Generator};
    use crate::symbolic::Alphabet;

    fn signs(v: &[i8]) -> Block {
        Block::from_signs(v).unwrap()
    }

    #[test]
    fn block_corr_examples() {
        let alt = signs(&[1, -1, 1, -1]);
        assert_eq!(block_corr(&alt, &alt).unwrap(), int_symbol(1));
        assert_eq!(block_corr(&signs(&[1, 1]), &signs(&[1, -1])).unwrap(), int_symbol(0));
        assert_eq!(block_corr(&signs(&[1, 1, 1]), &signs(&[1, -1, 1])).unwrap(), int_symbol(0));
        assert!(block_corr(&signs(&[1]), &signs(&[1, 1])).is_err());
        assert!(block_corr(&signs(&[]), &signs(&[])).is_err());
    }

    #[test]
    fn curves() {
        let alt = SymbolicSequence::new(Generator::Periodic(signs(&[1, -1])), 1000);
        let c = corr_curve(&alt, &alt, &[2, 10, 100]).unwrap();
        assert!(c.iter().all(|z| *z == int_symbol(1)));
        let mu = SymbolicSequence::from_block(gen_mobius(500).unwrap());
        let one = SymbolicSequence::new(Generator::Constant { alphabet: Alphabet::signs(), index: 1 }, 500);
        assert!(corr_curve(&mu, &one, &[10, 100, 500]).unwrap().iter().all(|z| z.is_zero()));
        assert!(corr_curve(&mu, &one, &[10, 1000]).is_err());
    }

    #[test]
    fn dbar_examples() {
        let alt = SymbolicSequence::new(Generator::Periodic(signs(&[1, -1])), 1000);
        let shifted = SymbolicSequence::new(Generator::Periodic(signs(&[-1, 1])), 1000);
        assert_eq!(dbar_estimate(&alt, &alt, 1000, DBAR_GRID).unwrap(), 0.0);
        assert_eq!(dbar_estimate(&alt, &shifted, 1000, DBAR_GRID).unwrap(), 2.0);
    }

    #[test]
    fn grid_is_increasing_and_ends_at_n() {
        let g = log_grid(100_000, 50);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g[0], 1);
        assert_eq!(*g.last().unwrap(), 100_000);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_curve(&[0.5, 0.1, 0.01, 0.01], 0.05), Some(CorrelationEvidence::UncorrelatedEvidence));
        assert_eq!(classify_curve(&[0.5, 0.3, 0.3], 0.05), Some(CorrelationEvidence::StrongEvidence));
        assert_eq!(classify_curve(&[0.5, 0.3, 0.01, 0.3, 0.01, 0.2], 0.05), Some(CorrelationEvidence::WeakEvidence));
    }
}
