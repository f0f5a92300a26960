//! Stage lengths `l_m` and tolerances `ε_m` for the lifting construction.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::circle::format_rational;
use crate::error::{Error, Result};

/// `ε_m = eps0·ratio^{m−1}` and lengths with `l_{m+1}·ε_m > l_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingSchedule {
    eps: Vec<BigRational>,
    lengths: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScheduleSummary {
    pub eps: Vec<String>,
    pub lengths: Vec<u64>,
}

fn check_params(eps0: &BigRational, ratio: &BigRational, l1: u64) -> Result<()> {
    if !eps0.is_positive() || *eps0 >= BigRational::one() {
        return Err(Error::pre("eps0 must lie in (0,1)"));
    }
    if !ratio.is_positive() || *ratio >= BigRational::one() {
        return Err(Error::pre("ratio must lie in (0,1) so that the tolerances decrease to zero"));
    }
    if l1 == 0 {
        return Err(Error::pre("l1 must be positive"));
    }
    Ok(())
}

/// `ceil(l/ε) + 1`, the smallest length this schedule uses after `l`.
pub(crate) fn next_length(l: u64, eps: &BigRational) -> Result<u64> {
    let v = (BigRational::from_integer(l.into()) / eps).ceil().to_integer();
    v.to_u64().and_then(|v| v.checked_add(1)).ok_or(Error::LimitExceeded { requested: u64::MAX, limit: u64::MAX })
}

impl LiftingSchedule {
    /// `stages` stages: `ε_1..ε_stages` and `l_1..l_{stages+1}`.
    pub fn build(eps0: &BigRational, ratio: &BigRational, l1: u64, stages: usize) -> Result<Self> {
        check_params(eps0, ratio, l1)?;
        if stages == 0 {
            return Err(Error::pre("at least one stage is required"));
        }
        let mut eps = vec![eps0.clone()];
        let mut lengths = vec![l1];
        for m in 0..stages {
            lengths.push(next_length(lengths[m], &eps[m])?);
            if m + 1 < stages {
                eps.push(&eps[m] * ratio);
            }
        }
        Ok(LiftingSchedule { eps, lengths })
    }

    /// The longest schedule whose last length fits in `n`.
    pub fn fitting(eps0: &BigRational, ratio: &BigRational, l1: u64, n: u64) -> Result<Self> {
        check_params(eps0, ratio, l1)?;
        let mut stages = 0;
        let mut l = l1;
        let mut e = eps0.clone();
        loop {
            let next = next_length(l, &e)?;
            if next > n {
                break;
            }
            stages += 1;
            l = next;
            e = &e * ratio;
        }
        if stages == 0 {
            return Err(Error::pre(format!("length {n} is too short for even one stage")));
        }
        Self::build(eps0, ratio, l1, stages)
    }

    /// Validates explicit tolerances and lengths.
    pub fn from_parts(eps: Vec<BigRational>, lengths: Vec<u64>) -> Result<Self> {
        if eps.is_empty() || lengths.len() != eps.len() + 1 {
            return Err(Error::pre("need ε_1..ε_S and l_1..l_{S+1}"));
        }
        if eps.iter().any(|e| !e.is_positive() || *e >= BigRational::one()) || eps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::pre("tolerances must be strictly decreasing in (0,1)"));
        }
        if lengths[0] == 0 {
            return Err(Error::pre("l1 must be positive"));
        }
        for (m, e) in eps.iter().enumerate() {
            if BigRational::from_integer(lengths[m + 1].into()) * e <= BigRational::from_integer(lengths[m].into()) {
                return Err(Error::pre(format!("growth condition fails at stage {}", m + 1)));
            }
        }
        Ok(LiftingSchedule { eps, lengths })
    }

    pub fn stages(&self) -> usize {
        self.eps.len()
    }

    /// `ε_m`, 1-based.
    pub fn eps(&self, m: usize) -> &BigRational {
        &self.eps[m - 1]
    }

    /// `l_m`, 1-based, up to `m = stages + 1`.
    pub fn length(&self, m: usize) -> u64 {
        self.lengths[m - 1]
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn summary(&self) -> ScheduleSummary {
        ScheduleSummary { eps: self.eps.iter().map(format_rational).collect(), lengths: self.lengths.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn recurrence_examples() {
        let s = LiftingSchedule::build(&q(1, 2), &q(1, 2), 100, 3).unwrap();
        assert_eq!(s.lengths(), &[100, 201, 805, 6441]);
        assert_eq!(s.eps(3), &q(1, 8));
        let one = LiftingSchedule::build(&q(1, 2), &q(1, 2), 100, 1).unwrap();
        assert_eq!(one.stages(), 1);
        assert!(LiftingSchedule::build(&q(1, 2), &q(1, 1), 100, 3).is_err());
        assert!(LiftingSchedule::build(&q(1, 2), &q(1, 2), 0, 3).is_err());
    }

    #[test]
    fn fitting_schedules() {
        assert_eq!(LiftingSchedule::fitting(&q(1, 2), &q(1, 2), 100, 100_000).unwrap().stages(), 3);
        assert_eq!(LiftingSchedule::fitting(&q(1, 2), &q(1, 2), 100, 1_000_000).unwrap().stages(), 4);
        assert!(LiftingSchedule::fitting(&q(1, 2), &q(1, 2), 100, 150).is_err());
    }

    #[test]
    fn explicit_parts_are_checked() {
        assert!(LiftingSchedule::from_parts(vec![q(1, 2)], vec![10, 21]).is_ok());
        assert!(LiftingSchedule::from_parts(vec![q(1, 2)], vec![10, 20]).is_err());
        assert!(LiftingSchedule::from_parts(vec![q(1, 2), q(1, 2)], vec![10, 21, 100]).is_err());
    }
}
