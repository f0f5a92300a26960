//! Convergence of empirical measures along a chosen subsequence of lengths.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::measure::{dm_distance, EmpiricalMeasure};
use crate::error::{Error, Result};
use crate::symbolic::{SymbolSpace, SymbolicSequence};

#[derive(Clone, Debug)]
pub struct ScanResult {
    /// `μ_{x_[1,n_K]}` for the last `n_K`.
    pub terminal: EmpiricalMeasure,
    /// `d^(m)` between the measures at consecutive `n_k`.
    pub successive: Vec<BigRational>,
    /// Successive distances over the last third all fall below the tolerance.
    pub cauchy: bool,
}

impl ScanResult {
    pub fn successive_f64(&self) -> Vec<f64> {
        self.successive.iter().map(|d| d.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Empirical measures of `x_[1,n_k]`; `None` for an empty `n_seq`.
pub fn semigeneration_scan(x: &SymbolicSequence, n_seq: &[usize], m: usize, tol: f64) -> Result<Option<ScanResult>> {
    if n_seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::pre("length sequence must be strictly increasing"));
    }
    let Some(&max_n) = n_seq.last() else {
        return Ok(None);
    };
    if n_seq[0] == 0 {
        return Err(Error::pre("lengths must be positive"));
    }
    let block = x.prefix(max_n)?;
    let space = SymbolSpace::Single(block.alphabet().clone());
    let measures = n_seq
        .iter()
        .map(|&n| EmpiricalMeasure::from_codes(space.clone(), &block.indices()[..n], m))
        .collect::<Result<Vec<_>>>()?;
    let successive = measures.windows(2).map(|w| dm_distance(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    let tail = successive.len().div_ceil(3);
    let cauchy = successive[successive.len() - tail..].iter().all(|d| d.to_f64().unwrap_or(f64::INFINITY) < tol);
    Ok(Some(ScanResult { terminal: measures.into_iter().last().expect("nonempty"), successive, cauchy }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::measure::CylinderWeights;
    use crate::symbolic::{Alphabet, Block, Generator};

    #[test]
    fn periodic_sequences_converge_to_exact_frequencies() {
        let period = Block::from_signs(&[1, 1, -1]).unwrap();
        let x = SymbolicSequence::new(Generator::Periodic(period), 100_000);
        let n_seq: Vec<usize> = (1..=30).map(|k| 3 * 1000 * k).collect();
        let r = semigeneration_scan(&x, &n_seq, 1, 1e-3).unwrap().unwrap();
        assert!(r.cauchy);
        let w = r.terminal.weights_at(1).unwrap();
        assert_eq!(w[&vec![1]], BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn regime_boundaries_of_one_type() {
        // runs of +1 and −1 with lengths 2^k: at the end of each +1 run the
        // frequency of +1 tends to 2/3, at the end of each −1 run to 1/3
        let mut data = Vec::new();
        let mut ends_plus = Vec::new();
        for k in 0..18 {
            let sym = if k % 2 == 0 { 1u16 } else { 0 };
            data.extend(std::iter::repeat_n(sym, 1 << k));
            if sym == 1 {
                ends_plus.push(data.len());
            }
        }
        let x = SymbolicSequence::from_block(Block::new(Alphabet::signs(), data).unwrap());
        let r = semigeneration_scan(&x, &ends_plus, 1, 1e-3).unwrap().unwrap();
        assert!(r.cauchy, "{:?}", r.successive_f64());
        let mut all: Vec<usize> = (1..=17).map(|k| (1usize << (k + 1)) - 1).collect();
        all.dedup();
        let r_all = semigeneration_scan(&x, &all, 1, 1e-3).unwrap().unwrap();
        assert!(!r_all.cauchy);
    }

    #[test]
    fn constant_and_empty() {
        let x = SymbolicSequence::new(Generator::Constant { alphabet: Alphabet::signs(), index: 0 }, 1000);
        let r = semigeneration_scan(&x, &[10, 100, 1000], 2, 0.05).unwrap().unwrap();
        assert!(r.cauchy);
        assert_eq!(r.terminal.counts().len(), 1);
        assert!(semigeneration_scan(&x, &[], 2, 0.05).unwrap().is_none());
    }
}
