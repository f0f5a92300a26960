//! Building a second row `y` over `x` by copying, block by block, the second
//! row of a reference pair `(x′, y′)`.
//!
//! Stage `m` covers positions `l_m+1..l_{m+1}` (the last stage runs to the end
//! of the input). Both `x` and `x′` are cut there into consecutive `m`-blocks
//! at the same fixed phase; the `i`-th occurrence of a word in `x` takes the
//! `y′` block under the `i`-th occurrence of that word in `x′`.

use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::schedule::{next_length, LiftingSchedule};
use crate::circle::format_rational;
use crate::empirical::{dm_distance, dm_distance_at, empirical_measure, empirical_measure_pair};
use crate::error::{Error, Result};
use crate::symbolic::Block;

/// Counts of the check-order words of one stage, by position relative to the
/// stage's `m`-blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WordGroups {
    /// Crossing a boundary between two `m`-blocks.
    pub straddling: u64,
    /// Touching the incomplete block at the right end of the stage.
    pub edge: u64,
    /// Inside an `m`-block left without a partner.
    pub excess: u64,
    /// Inside a matched `m`-block.
    pub matched: u64,
}

impl WordGroups {
    pub fn total(&self) -> u64 {
        self.straddling + self.edge + self.excess + self.matched
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: usize,
    /// 0-based half-open range of positions.
    pub start: usize,
    pub end: usize,
    pub block_len: usize,
    pub eps: String,
    pub total_blocks: u64,
    pub matched_blocks: u64,
    /// `m`-blocks of `x` with no partner in `x′`.
    pub excess_blocks: u64,
    /// `m`-blocks of `x′` never copied.
    pub excess_reference_blocks: u64,
    pub unfilled_positions: u64,
    pub excess_fraction: f64,
    pub six_eps: f64,
    /// `d^(m)` between the stage segments of `x` and `x′`.
    pub genericity_defect: f64,
    pub within_excess_bound: bool,
    pub groups: WordGroups,
    /// `d^(m0)` between the stage segments of `(x,y)` and `(x′,y′)`.
    pub stage_distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checkpoint {
    pub length: usize,
    pub distance: f64,
    pub distance_exact: String,
    /// `2(l_1 + m0)/L`: the arbitrary prefix and words crossing into it.
    pub boundary_term: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub check_order: usize,
    pub partition: &'static str,
    pub fill_symbol: u16,
    pub lengths: Vec<u64>,
    pub stages: Vec<StageReport>,
    pub checkpoints: Vec<Checkpoint>,
    pub final_distance: f64,
    pub final_boundary_term: f64,
    /// Only stage boundaries are certified.
    pub between_boundaries_checked: bool,
}

pub struct LiftOutcome {
    pub y: Block,
    pub report: LiftReport,
    /// For every position of `y`, the position of `y′` it was copied from.
    pub sources: Vec<Option<usize>>,
}

/// Most frequent symbol, lowest index on ties.
fn fill_symbol(y_prime: &Block) -> u16 {
    let mut counts = vec![0u64; y_prime.alphabet().len()];
    for &c in y_prime.indices() {
        counts[c as usize] += 1;
    }
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best as u16
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn pair_distance(
    x: &Block,
    y: &Block,
    xp: &Block,
    yp: &Block,
    start: usize,
    end: usize,
    m0: usize,
) -> Result<BigRational> {
    let a = empirical_measure_pair(&x.slice(start, end)?, &y.slice(start, end)?, m0)?;
    let b = empirical_measure_pair(&xp.slice(start, end)?, &yp.slice(start, end)?, m0)?;
    dm_distance(&a, &b)
}

fn check_inputs(x: &Block, x_prime: &Block, y_prime: &Block, m0: usize) -> Result<()> {
    if x.len() != x_prime.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: x_prime.len() });
    }
    if x.len() != y_prime.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y_prime.len() });
    }
    if x.alphabet() != x_prime.alphabet() {
        return Err(Error::AlphabetMismatch("x and x′ must share an alphabet".into()));
    }
    if m0 == 0 {
        return Err(Error::pre("check order must be positive"));
    }
    Ok(())
}

fn run(
    x: &Block,
    x_prime: &Block,
    y_prime: &Block,
    schedule: &LiftingSchedule,
    m0: usize,
    certify_at: &[usize],
) -> Result<LiftOutcome> {
    check_inputs(x, x_prime, y_prime, m0)?;
    let n = x.len();
    let last = schedule.length(schedule.stages() + 1);
    if (n as u64) < last {
        return Err(Error::pre(format!("input of length {n} is shorter than the schedule's l = {last}")));
    }
    let fill = fill_symbol(y_prime);
    let mut y = vec![fill; n];
    let mut sources: Vec<Option<usize>> = vec![None; n];
    let (xs, xps, yps) = (x.indices(), x_prime.indices(), y_prime.indices());
    let mut stage_data = Vec::new();

    for m in 1..=schedule.stages() {
        let start = schedule.length(m) as usize;
        let end = if m == schedule.stages() { n } else { schedule.length(m + 1) as usize };
        let blocks = (end - start) / m;
        let full_end = start + blocks * m;

        let mut queues: HashMap<&[u16], VecDeque<usize>> = HashMap::new();
        for b in 0..blocks {
            let p = start + b * m;
            queues.entry(&xps[p..p + m]).or_default().push_back(p);
        }
        let mut matched = vec![false; blocks];
        for (b, slot) in matched.iter_mut().enumerate() {
            let p = start + b * m;
            if let Some(src) = queues.get_mut(&xs[p..p + m]).and_then(VecDeque::pop_front) {
                y[p..p + m].copy_from_slice(&yps[src..src + m]);
                for k in 0..m {
                    sources[p + k] = Some(src + k);
                }
                *slot = true;
            }
        }
        let matched_blocks = matched.iter().filter(|&&b| b).count() as u64;
        let excess_reference_blocks: u64 = queues.values().map(|q| q.len() as u64).sum();

        let mut groups = WordGroups::default();
        if end - start >= m0 {
            for p in start..=end - m0 {
                if p + m0 > full_end {
                    groups.edge += 1;
                    continue;
                }
                let b = (p - start) / m;
                if p + m0 > start + (b + 1) * m {
                    groups.straddling += 1;
                } else if matched[b] {
                    groups.matched += 1;
                } else {
                    groups.excess += 1;
                }
            }
        }

        let defect = if end - start >= m {
            let ex = empirical_measure(&x.slice(start, end)?, m)?;
            let exp = empirical_measure(&x_prime.slice(start, end)?, m)?;
            to_f64(&dm_distance_at(&ex, &exp, m)?)
        } else {
            0.0
        };
        let eps = schedule.eps(m);
        let excess_blocks = blocks as u64 - matched_blocks;
        let excess_fraction = if blocks == 0 { 0.0 } else { excess_blocks as f64 / blocks as f64 };
        let six_eps = 6.0 * to_f64(eps);
        stage_data.push((
            start,
            end,
            StageReport {
                stage: m,
                start,
                end,
                block_len: m,
                eps: format_rational(eps),
                total_blocks: blocks as u64,
                matched_blocks,
                excess_blocks,
                excess_reference_blocks,
                unfilled_positions: excess_blocks * m as u64 + (end - full_end) as u64,
                excess_fraction,
                six_eps,
                genericity_defect: defect,
                within_excess_bound: excess_fraction <= six_eps + defect,
                groups,
                stage_distance: f64::NAN,
            },
        ));
    }

    let y = Block::new(y_prime.alphabet().clone(), y)?;
    let l1 = schedule.length(1) as usize;
    let mut stages = Vec::with_capacity(stage_data.len());
    for (start, end, mut rep) in stage_data {
        if end - start >= m0 {
            rep.stage_distance = to_f64(&pair_distance(x, &y, x_prime, y_prime, start, end, m0)?);
        }
        stages.push(rep);
    }
    let mut checkpoints = Vec::new();
    for &end in certify_at.iter().filter(|&&e| e >= m0 && e <= n) {
        let d = pair_distance(x, &y, x_prime, y_prime, 0, end, m0)?;
        checkpoints.push(Checkpoint {
            length: end,
            distance: to_f64(&d),
            distance_exact: format_rational(&d),
            boundary_term: 2.0 * (l1 + m0) as f64 / end as f64,
        });
    }
    let (final_distance, final_boundary_term) =
        checkpoints.last().map(|c| (c.distance, c.boundary_term)).unwrap_or((f64::NAN, f64::NAN));
    let report = LiftReport {
        check_order: m0,
        partition: "fixed-phase m-blocks anchored at l_m+1",
        fill_symbol: fill,
        lengths: schedule.lengths().to_vec(),
        stages,
        checkpoints,
        final_distance,
        final_boundary_term,
        between_boundaries_checked: false,
    };
    Ok(LiftOutcome { y, report, sources })
}

/// Lifts `x` along `(x′, y′)`; certifies `d^(m0)` at `l_2, …, l_S` and at the end.
pub fn lift(x: &Block, x_prime: &Block, y_prime: &Block, schedule: &LiftingSchedule, m0: usize) -> Result<LiftOutcome> {
    let mut at: Vec<usize> = (2..=schedule.stages()).map(|m| schedule.length(m) as usize).collect();
    at.push(x.len());
    run(x, x_prime, y_prime, schedule, m0, &at)
}

/// Schedule with every `l_m` taken from `n_subseq`: `l_1` is its first term
/// and `l_{m+1}` the first term at least `ceil(l_m/ε_m) + 1`, up to `limit`.
pub fn semigeneric_schedule(
    n_subseq: &[u64],
    eps0: &BigRational,
    ratio: &BigRational,
    limit: u64,
) -> Result<LiftingSchedule> {
    if n_subseq.is_empty() {
        return Err(Error::pre("empty length subsequence"));
    }
    if n_subseq.windows(2).any(|w| w[0] >= w[1]) || n_subseq[0] == 0 {
        return Err(Error::pre("length subsequence must be positive and strictly increasing"));
    }
    // Probe with a one-stage build to validate eps0 and ratio.
    LiftingSchedule::build(eps0, ratio, n_subseq[0], 1)?;
    let mut lengths = vec![n_subseq[0]];
    let mut eps = Vec::new();
    let mut e = eps0.clone();
    loop {
        let need = next_length(*lengths.last().unwrap(), &e)?;
        match n_subseq.iter().find(|&&v| v >= need) {
            Some(&v) if v <= limit => {
                lengths.push(v);
                eps.push(e.clone());
                e = &e * ratio;
            }
            _ => break,
        }
    }
    if eps.is_empty() {
        return Err(Error::pre("length subsequence too sparse for the growth condition"));
    }
    LiftingSchedule::from_parts(eps, lengths)
}

/// Lifting with stage lengths drawn from `n_subseq`; closeness is certified
/// only at lengths belonging to the subsequence.
pub fn lift_semigeneric(
    x: &Block,
    n_subseq: &[u64],
    x_prime: &Block,
    y_prime: &Block,
    eps0: &BigRational,
    ratio: &BigRational,
    m0: usize,
) -> Result<LiftOutcome> {
    check_inputs(x, x_prime, y_prime, m0)?;
    let schedule = semigeneric_schedule(n_subseq, eps0, ratio, x.len() as u64)?;
    let mut at: Vec<usize> = schedule.lengths()[1..].iter().map(|&l| l as usize).collect();
    if n_subseq.binary_search(&(x.len() as u64)).is_ok() && at.last() != Some(&x.len()) {
        at.push(x.len());
    }
    run(x, x_prime, y_prime, &schedule, m0, &at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::CircleNumber;
    use crate::symbolic::{gen_rotation_itinerary, Alphabet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn random_signs(n: usize, seed: u64) -> Block {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Block::new(Alphabet::signs(), (0..n).map(|_| rng.random_range(0..2)).collect()).unwrap()
    }

    fn schedule() -> LiftingSchedule {
        LiftingSchedule::build(&q(1, 2), &q(1, 2), 20, 2).unwrap()
    }

    #[test]
    fn self_matching_copies_everything() {
        let x = random_signs(500, 1);
        let yp = random_signs(500, 2);
        let out = lift(&x, &x, &yp, &schedule(), 2).unwrap();
        assert_eq!(out.y.indices()[20..], yp.indices()[20..]);
        assert!(out.report.stages.iter().all(|s| s.excess_blocks == 0));
        let c = out.report.checkpoints.last().unwrap();
        assert!(c.distance <= c.boundary_term, "{c:?}");
    }

    #[test]
    fn copies_respect_block_context_and_groups_add_up() {
        let x = random_signs(2000, 3);
        let xp = random_signs(2000, 4);
        let yp = Block::new(Alphabet::ternary(), random_signs(2000, 5).into_indices().iter().map(|&c| c * 2).collect())
            .unwrap();
        let s = LiftingSchedule::build(&q(1, 2), &q(1, 2), 20, 3).unwrap();
        let out = lift(&x, &xp, &yp, &s, 2).unwrap();
        for st in &out.report.stages {
            let m = st.block_len;
            for b in 0..st.total_blocks as usize {
                let p = st.start + b * m;
                if let Some(src) = out.sources[p] {
                    assert_eq!(x.indices()[p..p + m], xp.indices()[src..src + m]);
                    for k in 0..m {
                        assert_eq!(out.sources[p + k], Some(src + k));
                        assert_eq!(out.y.indices()[p + k], yp.indices()[src + k]);
                    }
                }
            }
            assert_eq!(st.groups.total(), (st.end - st.start - 1) as u64);
            assert_eq!(st.excess_blocks, st.excess_reference_blocks);
        }
        assert!(out.sources[..20].iter().all(Option::is_none));
        let again = lift(&x, &xp, &yp, &s, 2).unwrap();
        assert_eq!(again.y, out.y);
    }

    #[test]
    fn one_letter_alphabet_permutes_blocks() {
        let a = std::sync::Arc::new(Alphabet::from_ints(&[1]).unwrap());
        let x = Block::new(a, vec![0; 300]).unwrap();
        let yp = random_signs(300, 7);
        let out = lift(&x, &x, &yp, &schedule(), 1).unwrap();
        let ones = |b: &Block| b.indices()[20..].iter().filter(|&&c| c == 1).count();
        let leftovers: u64 = out.report.stages.iter().map(|s| s.unfilled_positions).sum();
        assert!(out.report.stages.iter().all(|s| s.excess_blocks == 0));
        assert!((ones(&out.y) as i64 - ones(&yp) as i64).unsigned_abs() <= leftovers);
    }

    #[test]
    fn sturmian_pair_becomes_close() {
        let alpha = CircleNumber::golden();
        let n = 20_000;
        let x = gen_rotation_itinerary(&alpha, &alpha, &CircleNumber::zero(), n);
        let xp = gen_rotation_itinerary(&alpha, &alpha, &CircleNumber::rational(1, 3), n);
        let s = LiftingSchedule::fitting(&q(1, 2), &q(1, 2), 100, n as u64).unwrap();
        let out = lift(&x, &xp, &xp, &s, 2).unwrap();
        assert!(out.report.final_distance < 0.05, "{:?}", out.report.checkpoints);
        assert!(out.report.stages.iter().all(|st| st.within_excess_bound));
    }

    #[test]
    fn errors() {
        let x = random_signs(100, 1);
        assert!(lift(&x, &x, &random_signs(99, 2), &schedule(), 2).is_err());
        assert!(lift(&x, &x, &x, &schedule(), 2).is_err());
        let t = Block::new(Alphabet::ternary(), vec![0; 500]).unwrap();
        let x5 = random_signs(500, 1);
        assert!(lift(&x5, &t, &x5, &schedule(), 2).is_err());
        assert!(lift_semigeneric(&x5, &[], &x5, &x5, &q(1, 2), &q(1, 2), 2).is_err());
        assert!(lift_semigeneric(&x5, &[20, 30], &x5, &x5, &q(1, 2), &q(1, 2), 2).is_err());
    }

    #[test]
    fn semigeneric_with_all_lengths_matches_lift() {
        let x = random_signs(3000, 11);
        let xp = random_signs(3000, 12);
        let all: Vec<u64> = (20..=3000).collect();
        let a = lift_semigeneric(&x, &all, &xp, &xp, &q(1, 2), &q(1, 2), 2).unwrap();
        let s = LiftingSchedule::fitting(&q(1, 2), &q(1, 2), 20, 3000).unwrap();
        let b = lift(&x, &xp, &xp, &s, 2).unwrap();
        assert_eq!(a.y, b.y);
        assert_eq!(a.report.lengths, b.report.lengths);
        let sparse = [20u64, 50, 300, 3000];
        let c = lift_semigeneric(&x, &sparse, &xp, &xp, &q(1, 2), &q(1, 2), 2).unwrap();
        assert_eq!(c.report.lengths, vec![20, 50, 300, 3000]);
        let d = lift_semigeneric(&x, &[20, 50, 300, 2000], &xp, &xp, &q(1, 2), &q(1, 2), 2).unwrap();
        assert_eq!(d.report.lengths, vec![20, 50, 300]);
        let lens: Vec<usize> = d.report.checkpoints.iter().map(|c| c.length).collect();
        assert_eq!(lens, vec![50, 300]);
        assert!(c.report.checkpoints.iter().all(|cp| sparse.contains(&(cp.length as u64))));
    }
}
