//! Sub-probabilistic block frequencies and the `d^(m)` distance.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symbolic::{pair_codes, Block, SymbolSpace};

/// Anything assigning weights to the free words of a given length.
pub trait CylinderWeights {
    fn space(&self) -> &SymbolSpace;
    /// The order used when two measures are compared without an explicit `m`.
    fn order(&self) -> usize;
    /// Weights of the free words of length `m` (absent words weigh 0).
    fn weights_at(&self, m: usize) -> Result<BTreeMap<Vec<u16>, BigRational>>;

    fn as_empirical(&self) -> Option<&EmpiricalMeasure> {
        None
    }
}

/// `μ_B(D) = #{i ≤ n−m+1 : B_[i,i+m−1] = D} / n`, stored as integer counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalMeasure {
    space: SymbolSpace,
    order: usize,
    counts: BTreeMap<Vec<u16>, u64>,
    n: u64,
}

const PARALLEL_CHUNK: usize = 1 << 16;

fn count_chunk(codes: &[u16], base: u64, m: usize, start: usize, end: usize) -> HashMap<u64, u64> {
    let mut map = HashMap::new();
    if end <= start {
        return map;
    }
    let top = base.pow(m as u32 - 1);
    let mut key = 0u64;
    for &c in &codes[start..start + m - 1] {
        key = key * base + c as u64;
    }
    for i in start..end {
        key = key * base + codes[i + m - 1] as u64;
        *map.entry(key).or_insert(0) += 1;
        key %= top;
    }
    map
}

/// Counts all length-`m` windows of `codes` (requires `m ≤ len`).
fn count_windows(codes: &[u16], base: usize, m: usize) -> BTreeMap<Vec<u16>, u64> {
    let windows = codes.len() + 1 - m;
    let fits = (base as u128).checked_pow(m as u32).is_some_and(|v| v <= u64::MAX as u128);
    if !fits {
        let mut map: HashMap<&[u16], u64> = HashMap::new();
        for w in codes.windows(m) {
            *map.entry(w).or_insert(0) += 1;
        }
        return map.into_iter().map(|(k, v)| (k.to_vec(), v)).collect();
    }
    let base = base as u64;
    let starts: Vec<usize> = (0..windows).step_by(PARALLEL_CHUNK).collect();
    let merged = starts
        .into_par_iter()
        .map(|s| count_chunk(codes, base, m, s, (s + PARALLEL_CHUNK).min(windows)))
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    merged
        .into_iter()
        .map(|(mut key, v)| {
            let mut word = vec![0u16; m];
            for slot in word.iter_mut().rev() {
                *slot = (key % base) as u16;
                key /= base;
            }
            (word, v)
        })
        .collect()
}

impl EmpiricalMeasure {
    /// Empirical measure of a code stream; `m` may exceed the length, giving
    /// the zero measure.
    pub fn from_codes(space: SymbolSpace, codes: &[u16], m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::pre("order m must be at least 1"));
        }
        if codes.is_empty() {
            return Err(Error::pre("empirical measure of an empty block"));
        }
        let counts = if m > codes.len() { BTreeMap::new() } else { count_windows(codes, space.size(), m) };
        Ok(EmpiricalMeasure { space, order: m, counts, n: codes.len() as u64 })
    }

    pub fn space_ref(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn source_length(&self) -> u64 {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u16>, u64> {
        &self.counts
    }

    pub fn count(&self, word: &[u16]) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn weight(&self, word: &[u16]) -> BigRational {
        BigRational::new(self.count(word).into(), self.n.into())
    }

    /// `(n − m + 1)/n`, or 0 when `m > n`.
    pub fn total_weight(&self) -> BigRational {
        let total: u64 = self.counts.values().sum();
        BigRational::new(total.into(), self.n.into())
    }

    /// Sums out trailing symbols down to order `k`.
    pub fn project_prefix(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.order {
            return Err(Error::OrderMismatch { left: k, right: self.order });
        }
        let mut counts = BTreeMap::new();
        for (w, &c) in &self.counts {
            *counts.entry(w[..k].to_vec()).or_insert(0) += c;
        }
        Ok(EmpiricalMeasure { space: self.space.clone(), order: k, counts, n: self.n })
    }
}

impl CylinderWeights for EmpiricalMeasure {
    fn space(&self) -> &SymbolSpace {
        &self.space
    }

    fn order(&self) -> usize {
        self.order
    }

    fn weights_at(&self, m: usize) -> Result<BTreeMap<Vec<u16>, BigRational>> {
        if m != self.order {
            return Err(Error::OrderMismatch { left: m, right: self.order });
        }
        Ok(self.counts.iter().map(|(w, &c)| (w.clone(), BigRational::new(c.into(), self.n.into()))).collect())
    }

    fn as_empirical(&self) -> Option<&EmpiricalMeasure> {
        Some(self)
    }
}

/// `μ_B` of order `m`; requires `1 ≤ m ≤ |B|`.
pub fn empirical_measure(block: &Block, m: usize) -> Result<EmpiricalMeasure> {
    if m == 0 || m > block.len() {
        return Err(Error::pre(format!("order {m} outside [1, {}]", block.len())));
    }
    EmpiricalMeasure::from_codes(SymbolSpace::Single(block.alphabet().clone()), block.indices(), m)
}

/// Empirical measure of the pair block `(x, y)` over `K × K′`.
pub fn empirical_measure_pair(x: &Block, y: &Block, m: usize) -> Result<EmpiricalMeasure> {
    let (space, codes) = pair_codes(x, y)?;
    if m == 0 || m > codes.len() {
        return Err(Error::pre(format!("order {m} outside [1, {}]", codes.len())));
    }
    EmpiricalMeasure::from_codes(space, &codes, m)
}

/// `Σ |c1·n2 − c2·n1| / (n1·n2)` in integers.
fn dm_empirical(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> BigRational {
    let (n1, n2) = (a.n as u128, b.n as u128);
    let mut total = BigInt::zero();
    let mut acc = 0u128;
    let mut push = |v: u128, total: &mut BigInt| {
        if let Some(s) = acc.checked_add(v) {
            acc = s;
        } else {
            *total += BigInt::from(acc);
            acc = v;
        }
    };
    let mut ia = a.counts.iter().peekable();
    let mut ib = b.counts.iter().peekable();
    loop {
        let (ca, cb) = match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => (ia.next().unwrap().1, &0),
            (None, Some(_)) => (&0, ib.next().unwrap().1),
            (Some((ka, _)), Some((kb, _))) => match ka.cmp(kb) {
                std::cmp::Ordering::Less => (ia.next().unwrap().1, &0),
                std::cmp::Ordering::Greater => (&0, ib.next().unwrap().1),
                std::cmp::Ordering::Equal => (ia.next().unwrap().1, ib.next().unwrap().1),
            },
        };
        let (x, y) = (*ca as u128 * n2, *cb as u128 * n1);
        push(x.abs_diff(y), &mut total);
    }
    total += BigInt::from(acc);
    BigRational::new(total, BigInt::from(n1) * BigInt::from(n2))
}

fn check_spaces(a: &SymbolSpace, b: &SymbolSpace) -> Result<()> {
    if a != b {
        return Err(Error::AlphabetMismatch("measures live on different symbol spaces".into()));
    }
    Ok(())
}

/// `d^(m)(μ, ν) = Σ_D |μ(D) − ν(D)|` at the common order of both measures.
pub fn dm_distance<A, B>(mu: &A, nu: &B) -> Result<BigRational>
where
    A: CylinderWeights + ?Sized,
    B: CylinderWeights + ?Sized,
{
    if mu.order() != nu.order() {
        return Err(Error::OrderMismatch { left: mu.order(), right: nu.order() });
    }
    dm_distance_at(mu, nu, mu.order())
}

/// `d^(m)` at an explicit order supported by both measures.
pub fn dm_distance_at<A, B>(mu: &A, nu: &B, m: usize) -> Result<BigRational>
where
    A: CylinderWeights + ?Sized,
    B: CylinderWeights + ?Sized,
{
    check_spaces(mu.space(), nu.space())?;
    if let (Some(a), Some(b)) = (mu.as_empirical(), nu.as_empirical()) {
        if a.order == m && b.order == m {
            return Ok(dm_empirical(a, b));
        }
    }
    let wa = mu.weights_at(m)?;
    let mut wb = nu.weights_at(m)?;
    let mut total = BigRational::zero();
    for (k, v) in wa {
        let other = wb.remove(&k).unwrap_or_else(BigRational::zero);
        total += (v - other).abs();
    }
    for v in wb.into_values() {
        total += v.abs();
    }
    Ok(total)
}

/// Result of an `(m, ε)`-genericity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub generic: bool,
    pub distance: BigRational,
}

/// `B` is `(m, ε)`-generic for `μ` when `d^(m)(μ_B, μ) < ε`.
pub fn is_generic<M: CylinderWeights + ?Sized>(
    block: &Block,
    mu: &M,
    m: usize,
    eps: &BigRational,
) -> Result<Genericity> {
    if !eps.is_positive() {
        return Err(Error::pre("ε must be positive"));
    }
    if mu.order() < m {
        return Err(Error::OrderMismatch { left: m, right: mu.order() });
    }
    let emp = EmpiricalMeasure::from_codes(SymbolSpace::Single(block.alphabet().clone()), block.indices(), m)?;
    let distance = dm_distance_at(&emp, mu, m)?;
    Ok(Genericity { generic: distance < *eps, distance })
}

/// Shortest length a block `(m, ε)`-generic for a probability measure can
/// have: the weights of `μ_B` sum to `(n−m+1)/n`, so `n > (m−1)/ε`.
pub fn min_generic_length(m: usize, eps: &BigRational) -> u64 {
    let bound = BigRational::from_integer((m as u64 - 1).into()) / eps;
    let f = bound.floor().to_integer();
    u64::try_from(f).unwrap_or(u64::MAX).saturating_add(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Alphabet;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn signs(v: &[i8]) -> Block {
        Block::from_signs(v).unwrap()
    }

    #[test]
    fn small_examples() {
        let mu = empirical_measure(&signs(&[1, 1, 1]), 1).unwrap();
        assert_eq!(mu.weights_at(1).unwrap().into_iter().collect::<Vec<_>>(), vec![(vec![1], q(1, 1))]);
        let mu = empirical_measure(&signs(&[1, -1]), 2).unwrap();
        assert_eq!(mu.weight(&[1, 0]), q(1, 2));
        let mu = empirical_measure(&signs(&[1, -1, 1]), 2).unwrap();
        assert_eq!(mu.weight(&[1, 0]), q(1, 3));
        assert_eq!(mu.weight(&[0, 1]), q(1, 3));
        assert_eq!(mu.total_weight(), q(2, 3));
        assert!(empirical_measure(&signs(&[1]), 2).is_err());
        assert!(empirical_measure(&signs(&[1]), 0).is_err());
    }

    #[test]
    fn distances() {
        let a = empirical_measure(&signs(&[1, -1]), 1).unwrap();
        let b = empirical_measure(&signs(&[1, 1]), 1).unwrap();
        assert_eq!(dm_distance(&a, &b).unwrap(), q(1, 1));
        assert_eq!(dm_distance(&a, &a).unwrap(), q(0, 1));
        let c = empirical_measure(&signs(&[-1, -1]), 1).unwrap();
        assert_eq!(dm_distance(&b, &c).unwrap(), q(2, 1));
        let d = empirical_measure(&signs(&[1, -1]), 2).unwrap();
        assert!(matches!(dm_distance(&a, &d), Err(Error::OrderMismatch { .. })));
        let t = empirical_measure(&Block::new(Alphabet::ternary(), vec![0, 1]).unwrap(), 1).unwrap();
        assert!(matches!(dm_distance(&a, &t), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let x = signs(&[1, -1, -1, 1, 1, 1, -1, 1, -1, -1, 1]);
        let y = signs(&[-1, -1, 1, 1, -1, 1, -1]);
        for m in 1..=4 {
            let a = empirical_measure(&x, m).unwrap();
            let b = empirical_measure(&y, m).unwrap();
            let mut slow = BigRational::zero();
            let (wa, wb) = (a.weights_at(m).unwrap(), b.weights_at(m).unwrap());
            for key in wa.keys().chain(wb.keys()).collect::<std::collections::BTreeSet<_>>() {
                let va = wa.get(key).cloned().unwrap_or_default();
                let vb = wb.get(key).cloned().unwrap_or_default();
                slow += (va - vb).abs();
            }
            assert_eq!(dm_distance(&a, &b).unwrap(), slow);
        }
    }

    #[test]
    fn short_generic_blocks_exist_below_m_over_eps() {
        // three 1s: d^(2) to the point mass at 11… is 1/3 < 1/2 although 3 < m/ε = 4
        let b = signs(&[1, 1, 1]);
        let point = empirical_measure(&signs(&[1; 1000]), 2).unwrap();
        let g = is_generic(&b, &point, 2, &q(1, 2)).unwrap();
        assert!(g.generic, "{g:?}");
        assert_eq!(min_generic_length(2, &q(1, 2)), 3);
        assert_eq!(min_generic_length(1, &q(1, 10)), 1);
    }

    #[test]
    fn parallel_counting_matches_windows() {
        let data: Vec<u16> = (0..200_000u32).map(|i| (i.wrapping_mul(2654435761u32) >> 29) as u16 % 3).collect();
        let block = Block::new(Alphabet::ternary(), data.clone()).unwrap();
        let mu = empirical_measure(&block, 5).unwrap();
        let mut direct: BTreeMap<Vec<u16>, u64> = BTreeMap::new();
        for w in data.windows(5) {
            *direct.entry(w.to_vec()).or_insert(0) += 1;
        }
        assert_eq!(mu.counts(), &direct);
    }
}
