//! Executable checks of the suffix-genericity and trimming/concatenation
//! lemmas. Each check reports all distances and never panics on a failed
//! hypothesis.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::measure::{dm_distance_at, CylinderWeights, EmpiricalMeasure};
use crate::circle::real::format_rational;
use crate::error::{Error, Result};
use crate::symbolic::{Block, SymbolSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaVerdict {
    /// Hypotheses and conclusion both hold.
    Holds,
    /// A hypothesis fails, so there is nothing to check.
    Vacuous,
    /// The stated precondition on the lengths is not met.
    PreconditionViolated,
    /// Hypotheses hold but the conclusion fails.
    Violated,
}

impl LemmaVerdict {
    pub fn is_violation(self) -> bool {
        self == LemmaVerdict::Violated
    }
}

fn ser(r: &BigRational) -> String {
    format_rational(r)
}

fn measure_of(space: &SymbolSpace, codes: &[u16], m: usize) -> Result<EmpiricalMeasure> {
    EmpiricalMeasure::from_codes(space.clone(), codes, m)
}

fn single(block: &Block) -> SymbolSpace {
    SymbolSpace::Single(block.alphabet().clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct SuffixReport {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    pub eps: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub d_full: BigRational,
    /// `None` when `l = 0` (the empty prefix carries no measure).
    #[serde(serialize_with = "ser_opt_rational")]
    pub d_prefix: Option<BigRational>,
    #[serde(serialize_with = "ser_rational")]
    pub d_suffix: BigRational,
    pub verdict: LemmaVerdict,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ser(r))
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ser(r)),
        None => s.serialize_none(),
    }
}

/// If `B` and `B_[1,l]` are `(m, ε)`-generic for `μ` and `l < n(1 − √ε)`,
/// then `B_[l+1,n]` is `(m, 3√ε)`-generic.
pub fn check_suffix_lemma<M: CylinderWeights + ?Sized>(
    block: &Block,
    l: usize,
    m: usize,
    eps: &BigRational,
    mu: &M,
) -> Result<SuffixReport> {
    let n = block.len();
    if m == 0 || m > n {
        return Err(Error::pre(format!("order {m} outside [1, {n}]")));
    }
    if !eps.is_positive() {
        return Err(Error::pre("ε must be positive"));
    }
    if l >= n {
        return Err(Error::pre("the suffix must be nonempty"));
    }
    let space = single(block);
    let codes = block.indices();
    let d_full = dm_distance_at(&measure_of(&space, codes, m)?, mu, m)?;
    let d_prefix = if l == 0 { None } else { Some(dm_distance_at(&measure_of(&space, &codes[..l], m)?, mu, m)?) };
    let d_suffix = dm_distance_at(&measure_of(&space, &codes[l..], m)?, mu, m)?;

    // l < n(1 − √ε)  ⇔  1 − l/n > 0 and ε < (1 − l/n)²
    let gap = BigRational::one() - BigRational::new(l.into(), n.into());
    let precondition = gap.is_positive() && *eps < &gap * &gap;
    let premise = d_full < *eps && d_prefix.as_ref().is_none_or(|d| d < eps);
    // d < 3√ε  ⇔  d² < 9ε
    let conclusion = &d_suffix * &d_suffix < BigRational::from_integer(9.into()) * eps;
    let verdict = if !precondition {
        LemmaVerdict::PreconditionViolated
    } else if !premise {
        LemmaVerdict::Vacuous
    } else if conclusion {
        LemmaVerdict::Holds
    } else {
        LemmaVerdict::Violated
    };
    Ok(SuffixReport { n, l, m, eps: eps.clone(), d_full, d_prefix, d_suffix, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrimReport {
    pub n: usize,
    pub l: usize,
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    pub distance: BigRational,
    /// `2(l + k)/n`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    pub verdict: LemmaVerdict,
}

/// `d^(m)(μ_B, μ_{B_[l+1,n−k]}) ≤ 2(l + k)/n`.
pub fn check_trim_lemma(block: &Block, l: usize, k: usize, m: usize) -> Result<TrimReport> {
    let n = block.len();
    if m == 0 {
        return Err(Error::pre("order m must be at least 1"));
    }
    if l + k >= n || n - l - k <= m {
        return Err(Error::pre(format!("trimmed length must exceed m = {m}")));
    }
    let space = single(block);
    let codes = block.indices();
    let distance = dm_distance_at(&measure_of(&space, codes, m)?, &measure_of(&space, &codes[l..n - k], m)?, m)?;
    let bound = BigRational::new((2 * (l + k)).into(), n.into());
    let verdict = if distance <= bound { LemmaVerdict::Holds } else { LemmaVerdict::Violated };
    Ok(TrimReport { n, l, k, m, distance, bound, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcatReport {
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    pub eps: BigRational,
    pub joint_length: usize,
    /// `d^(m)(μ_B, μ_C)`.
    #[serde(serialize_with = "ser_rational")]
    pub d_first: BigRational,
    /// `d^(m)(μ_B′, μ_C′)`.
    #[serde(serialize_with = "ser_rational")]
    pub d_second: BigRational,
    /// `d^(m)(μ_BB′, μ_CC′)`.
    #[serde(serialize_with = "ser_rational")]
    pub d_concat: BigRational,
    /// `2ε`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    /// `ε + 2(m − 1)/N`, which always holds under the hypotheses.
    #[serde(serialize_with = "ser_rational")]
    pub sharp_bound: BigRational,
    pub verdict: LemmaVerdict,
}

/// If `d(μ_B, μ_C) < ε`, `d(μ_B′, μ_C′) < ε` and the joint length exceeds
/// `m/ε`, then `d(μ_BB′, μ_CC′) < 2ε`.
///
/// The constant `2ε` is not guaranteed when the joint length is close to
/// `m/ε`; the report carries the bound `ε + 2(m−1)/N` that always holds.
pub fn check_concat_lemma(
    b: &Block,
    c: &Block,
    b2: &Block,
    c2: &Block,
    m: usize,
    eps: &BigRational,
) -> Result<ConcatReport> {
    if b.len() != c.len() {
        return Err(Error::LengthMismatch { left: b.len(), right: c.len() });
    }
    if b2.len() != c2.len() {
        return Err(Error::LengthMismatch { left: b2.len(), right: c2.len() });
    }
    if m == 0 || b.len() <= m || b2.len() <= m {
        return Err(Error::pre(format!("every block must be longer than m = {m}")));
    }
    if !eps.is_positive() {
        return Err(Error::pre("ε must be positive"));
    }
    let space = single(b);
    let d = |x: &Block, y: &Block| -> Result<BigRational> {
        dm_distance_at(&measure_of(&space, x.indices(), m)?, &measure_of(&space, y.indices(), m)?, m)
    };
    let d_first = d(b, c)?;
    let d_second = d(b2, c2)?;
    let d_concat = d(&b.concat(b2)?, &c.concat(c2)?)?;
    let joint_length = b.len() + b2.len();
    let bound = eps * BigRational::from_integer(2.into());
    let sharp_bound = eps + BigRational::new((2 * (m - 1)).into(), joint_length.into());
    let long_enough = BigRational::from_integer(joint_length.into()) * eps > BigRational::from_integer(m.into());
    let premise = d_first < *eps && d_second < *eps && long_enough;
    let verdict = if !premise {
        LemmaVerdict::Vacuous
    } else if d_concat < bound {
        LemmaVerdict::Holds
    } else {
        LemmaVerdict::Violated
    };
    Ok(ConcatReport { m, eps: eps.clone(), joint_length, d_first, d_second, d_concat, bound, sharp_bound, verdict })
}

/// Smallest `ε` (plus a relative margin) making the concatenation hypotheses true.
pub fn tight_eps(d_first: &BigRational, d_second: &BigRational, margin: &BigRational) -> BigRational {
    let base = d_first.max(d_second).clone();
    if base.is_zero() {
        return margin.clone();
    }
    base * (BigRational::one() + margin)
}
