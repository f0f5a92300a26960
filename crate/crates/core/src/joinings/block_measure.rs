//! Shift-invariant measures truncated to cylinders of bounded length.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::empirical::CylinderWeights;
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, Block, SymbolSpace};

pub const DEFAULT_MAX_ORDER: usize = 8;

pub type Level = BTreeMap<Vec<u16>, BigRational>;

/// Cylinder probabilities of every order `1..=max_order`. Only words of
/// positive measure are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMeasure {
    space: SymbolSpace,
    levels: Vec<Level>,
}

fn prune(level: Level) -> Level {
    level.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

impl BlockMeasure {
    /// Builds and validates a measure from explicit levels (`levels[m−1]` holds order `m`).
    pub fn from_levels(space: SymbolSpace, levels: Vec<Level>) -> Result<Self> {
        let mu = BlockMeasure { space, levels: levels.into_iter().map(prune).collect() };
        mu.validate()?;
        Ok(mu)
    }

    fn from_levels_unchecked(space: SymbolSpace, levels: Vec<Level>) -> Self {
        BlockMeasure { space, levels: levels.into_iter().map(prune).collect() }
    }

    /// Checks normalization, range, Kolmogorov consistency and shift invariance.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::pre("a block measure needs order at least 1"));
        }
        let size = self.space.size() as u16;
        for (idx, level) in self.levels.iter().enumerate() {
            let m = idx + 1;
            let mut total = BigRational::zero();
            for (w, p) in level {
                if w.len() != m || w.iter().any(|&c| c >= size) {
                    return Err(Error::pre(format!("malformed word {w:?} at order {m}")));
                }
                if p.is_negative() || *p > BigRational::one() {
                    return Err(Error::pre(format!("weight outside [0,1] at {w:?}")));
                }
                total += p;
            }
            if !total.is_one() {
                return Err(Error::pre(format!("order-{m} weights sum to {total}, not 1")));
            }
            if m >= 2 {
                let mut left = Level::new();
                let mut right = Level::new();
                for (w, p) in level {
                    *left.entry(w[..m - 1].to_vec()).or_insert_with(BigRational::zero) += p;
                    *right.entry(w[1..].to_vec()).or_insert_with(BigRational::zero) += p;
                }
                let below = &self.levels[idx - 1];
                if prune(left) != *below {
                    return Err(Error::pre(format!("order {m} is not consistent with order {}", m - 1)));
                }
                if prune(right) != *below {
                    return Err(Error::pre(format!("order {m} is not shift-invariant")));
                }
            }
        }
        Ok(())
    }

    /// Frequencies of cyclic windows of a periodic orbit (the invariant
    /// measure equidistributed on the orbit of `period^∞`).
    pub fn periodic(period: &Block, max_order: usize) -> Result<Self> {
        if period.is_empty() || max_order == 0 {
            return Err(Error::pre("periodic measure needs a nonempty period and order ≥ 1"));
        }
        let p = period.len();
        let codes = period.indices();
        let weight = BigRational::new(1.into(), p.into());
        let levels = (1..=max_order)
            .map(|m| {
                let mut level = Level::new();
                for i in 0..p {
                    let w: Vec<u16> = (0..m).map(|k| codes[(i + k) % p]).collect();
                    *level.entry(w).or_insert_with(BigRational::zero) += &weight;
                }
                level
            })
            .collect();
        Ok(Self::from_levels_unchecked(SymbolSpace::Single(period.alphabet().clone()), levels))
    }

    /// Dirac mass at the fixpoint `aaa…`.
    pub fn point_mass(alphabet: Arc<Alphabet>, index: u16, max_order: usize) -> Result<Self> {
        Self::periodic(&Block::new(alphabet, vec![index])?, max_order)
    }

    /// I.i.d. measure with the given one-symbol probabilities.
    pub fn bernoulli(alphabet: Arc<Alphabet>, probs: &[BigRational], max_order: usize) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::pre("one probability per symbol required"));
        }
        if probs.iter().any(|p| p.is_negative()) || probs.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::pre("probabilities must be nonnegative and sum to 1"));
        }
        let mut levels: Vec<Level> = Vec::with_capacity(max_order);
        let mut current: Level = [(Vec::new(), BigRational::one())].into_iter().collect();
        for _ in 0..max_order {
            let mut next = Level::new();
            for (w, p) in &current {
                for (a, q) in probs.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(a as u16);
                    next.insert(w2, p * q);
                }
            }
            levels.push(next.clone());
            current = next;
        }
        Ok(Self::from_levels_unchecked(SymbolSpace::Single(alphabet), levels))
    }

    /// Convex combination `Σ w_i μ_i` truncated to the smallest order.
    pub fn mixture(parts: &[(BigRational, &BlockMeasure)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::pre("empty mixture"));
        };
        if parts.iter().any(|(w, _)| w.is_negative())
            || parts.iter().map(|(w, _)| w).sum::<BigRational>() != BigRational::one()
        {
            return Err(Error::pre("mixture weights must be nonnegative and sum to 1"));
        }
        if parts.iter().any(|(_, m)| m.space != first.space) {
            return Err(Error::AlphabetMismatch("mixture components live on different spaces".into()));
        }
        let order = parts.iter().map(|(_, m)| m.max_order()).min().unwrap();
        let levels = (0..order)
            .map(|idx| {
                let mut level = Level::new();
                for (w, mu) in parts {
                    for (word, p) in &mu.levels[idx] {
                        *level.entry(word.clone()).or_insert_with(BigRational::zero) += w * p;
                    }
                }
                level
            })
            .collect();
        Ok(Self::from_levels_unchecked(first.space.clone(), levels))
    }

    pub fn space(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn max_order(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, m: usize) -> Result<&Level> {
        if m == 0 || m > self.levels.len() {
            return Err(Error::OrderMismatch { left: m, right: self.levels.len() });
        }
        Ok(&self.levels[m - 1])
    }

    pub fn prob(&self, word: &[u16]) -> BigRational {
        self.levels.get(word.len().wrapping_sub(1)).and_then(|l| l.get(word)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Keeps orders `1..=m`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        self.level(m)?;
        Ok(BlockMeasure { space: self.space.clone(), levels: self.levels[..m].to_vec() })
    }

    /// One-symbol probabilities indexed by symbol code.
    pub fn order1(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.space.size()];
        for (w, p) in &self.levels[0] {
            out[w[0] as usize] = p.clone();
        }
        out
    }

    /// Image under a letter-to-letter map into `target`.
    pub fn map_letters(&self, target: SymbolSpace, f: impl Fn(u16) -> u16) -> Self {
        let levels = self
            .levels
            .iter()
            .map(|level| {
                let mut out = Level::new();
                for (w, p) in level {
                    let img: Vec<u16> = w.iter().map(|&c| f(c)).collect();
                    *out.entry(img).or_insert_with(BigRational::zero) += p;
                }
                out
            })
            .collect();
        Self::from_levels_unchecked(target, levels)
    }

    /// Marginals of a measure on a product space.
    pub fn marginals(&self) -> Result<(BlockMeasure, BlockMeasure)> {
        let SymbolSpace::Pair(a, b) = &self.space else {
            return Err(Error::pre("marginals need a product space"));
        };
        let space = self.space.clone();
        let left = self.map_letters(SymbolSpace::Single(a.clone()), |c| space.decode(c).0);
        let right = self.map_letters(SymbolSpace::Single(b.clone()), |c| space.decode(c).1);
        Ok((left, right))
    }

    /// All `(word, weight)` pairs of every order, shortest first.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u16>, &BigRational)> {
        self.levels.iter().flat_map(|l| l.iter())
    }
}

impl CylinderWeights for BlockMeasure {
    fn space(&self) -> &SymbolSpace {
        &self.space
    }

    fn order(&self) -> usize {
        self.levels.len()
    }

    fn weights_at(&self, m: usize) -> Result<BTreeMap<Vec<u16>, BigRational>> {
        Ok(self.level(m)?.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn periodic_measures_are_valid() {
        let b = Block::from_signs(&[1, 1, -1, 1, -1]).unwrap();
        let mu = BlockMeasure::periodic(&b, 6).unwrap();
        mu.validate().unwrap();
        assert_eq!(mu.prob(&[1]), q(3, 5));
        assert_eq!(mu.prob(&[1, 1]), q(1, 5));
    }

    #[test]
    fn bernoulli_and_mixture_are_valid() {
        let a = Alphabet::ternary();
        let mu = BlockMeasure::bernoulli(a.clone(), &[q(1, 2), q(1, 3), q(1, 6)], 4).unwrap();
        mu.validate().unwrap();
        let nu = BlockMeasure::point_mass(a, 2, 5).unwrap();
        let mix = BlockMeasure::mixture(&[(q(1, 4), &mu), (q(3, 4), &nu)]).unwrap();
        mix.validate().unwrap();
        assert_eq!(mix.max_order(), 4);
        assert_eq!(mix.prob(&[2, 2]), q(1, 4) * q(1, 36) + q(3, 4));
    }

    #[test]
    fn rejects_inconsistent_levels() {
        let space = SymbolSpace::Single(Alphabet::signs());
        let l1: Level = [(vec![0], q(1, 2)), (vec![1], q(1, 2))].into_iter().collect();
        let l2: Level = [(vec![0, 0], q(1, 2)), (vec![1, 1], q(1, 4)), (vec![0, 1], q(1, 4))].into_iter().collect();
        assert!(BlockMeasure::from_levels(space.clone(), vec![l1.clone(), l2]).is_err());
        let bad: Level = [(vec![0], q(1, 2)), (vec![1], q(1, 3))].into_iter().collect();
        assert!(BlockMeasure::from_levels(space, vec![bad]).is_err());
    }
}
