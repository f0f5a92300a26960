//! Turning flag values and files into library values.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::sync::Arc;

use ergocorr::circle::{cf_expand, parse_rational, CircleNumber, QSequence, Rational};
use ergocorr::cocycle::StepCocycle;
use ergocorr::joinings::{BlockMeasure, JoiningMeasure, LoadedMeasure, MeasureDoc};
use ergocorr::symbolic::io::read_sequence;
use ergocorr::symbolic::{Alphabet, Block};
use num_traits::ToPrimitive;

use crate::args::{CocycleSpec, GlobalOpts};
use crate::error::{CliError, CliResult};

pub struct Inputs<'a> {
    pub global: &'a GlobalOpts,
}

impl<'a> Inputs<'a> {
    pub fn new(global: &'a GlobalOpts) -> Self {
        Inputs { global }
    }

    pub fn circle(&self, spec: &str) -> CliResult<CircleNumber> {
        let x = CircleNumber::parse(spec, self.global.precision_bits)?;
        if self.global.rational && !x.is_rational() {
            return Err(CliError::Precondition(format!("{spec} is irrational but --rational was given")));
        }
        Ok(x)
    }

    /// `--alpha`, falling back to `--quadratic`.
    pub fn alpha(&self, spec: &Option<String>) -> CliResult<CircleNumber> {
        match spec.as_ref().or(self.global.quadratic.as_ref()) {
            Some(s) => self.circle(s),
            None => Err(CliError::Precondition("--alpha is required (or a global --quadratic)".into())),
        }
    }

    pub fn cocycle(&self, spec: &CocycleSpec) -> CliResult<StepCocycle> {
        let t = self.circle(&spec.t)?;
        match (&spec.tprime, &spec.u) {
            (None, None) => Ok(StepCocycle::two_jump(&t)),
            (Some(tp), Some(u)) => Ok(StepCocycle::four_jump(&t, &self.circle(tp)?, &self.circle(u)?)),
            _ => Err(CliError::Precondition("--tprime and --u go together".into())),
        }
    }
}

pub fn rational(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

pub fn rational_list(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|t| rational(t.trim())).collect()
}

fn open(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn sequence(path: &Path) -> CliResult<Block> {
    read_sequence(BufReader::new(open(path)?)).map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })
}

pub fn measure_doc(path: &Path) -> CliResult<MeasureDoc> {
    MeasureDoc::from_json(&read_text(path)?).map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })
}

pub fn loaded_measure(path: &Path) -> CliResult<LoadedMeasure> {
    measure_doc(path)?.load().map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })
}

pub fn block_measure(path: &Path) -> CliResult<BlockMeasure> {
    measure_doc(path)?.to_block_measure().map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })
}

pub fn joining(path: &Path) -> CliResult<JoiningMeasure> {
    Ok(JoiningMeasure::from_measure(block_measure(path)?)?)
}

pub fn alphabet(spec: &str) -> CliResult<Arc<Alphabet>> {
    match spec {
        "signs" => Ok(Alphabet::signs()),
        "ternary" => Ok(Alphabet::ternary()),
        "quarter-signs" => Ok(Alphabet::quarter_signs()),
        header => Ok(Arc::new(Alphabet::parse_header(header)?)),
    }
}

fn parse_count(s: &str, what: &str) -> CliResult<u64> {
    s.trim().parse().map_err(|_| CliError::Precondition(format!("bad {what} {s:?}")))
}

/// Expands a length-list grammar into a strictly increasing list.
pub fn lengths(spec: &str) -> CliResult<Vec<u64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let mut out: Vec<u64> = match parts.as_slice() {
        ["log", a, b, rest @ ..] => {
            let (a, b) = (parse_count(a, "start")?, parse_count(b, "end")?);
            let points = match rest {
                [] => 20,
                [p] => parse_count(p, "point count")?,
                _ => return Err(CliError::Precondition(format!("bad grid {spec:?}"))),
            };
            if a == 0 || b < a || points == 0 {
                return Err(CliError::Precondition(format!("bad grid {spec:?}")));
            }
            let ratio = (b as f64 / a as f64).ln();
            let steps = (points - 1).max(1) as f64;
            (0..points).map(|k| ((a as f64) * (ratio * k as f64 / steps).exp()).round() as u64).chain([b]).collect()
        }
        ["lin", a, b, step] => {
            let (a, b, step) = (parse_count(a, "start")?, parse_count(b, "end")?, parse_count(step, "step")?);
            if step == 0 || b < a {
                return Err(CliError::Precondition(format!("bad grid {spec:?}")));
            }
            (a..=b).step_by(step as usize).collect()
        }
        ["fib", count] => {
            let count = parse_count(count, "count")? as usize;
            QSequence::fibonacci(count)
                .terms()
                .iter()
                .map(|q| q.to_u64().ok_or_else(|| CliError::Precondition("Fibonacci term exceeds 64 bits".into())))
                .collect::<CliResult<_>>()?
        }
        [list] => list.split(',').map(|t| parse_count(t, "length")).collect::<CliResult<_>>()?,
        _ => return Err(CliError::Precondition(format!("bad length list {spec:?}"))),
    };
    if !spec.starts_with("log:") && out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Precondition(format!("lengths in {spec:?} must increase strictly")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `q_k` terms: `fib:count` or a comma list, kept exact.
pub fn q_sequence(spec: &str) -> CliResult<QSequence> {
    if let Some(count) = spec.strip_prefix("fib:") {
        return Ok(QSequence::fibonacci(parse_count(count, "count")? as usize));
    }
    let terms: Vec<u64> = spec.split(',').map(|t| parse_count(t, "term")).collect::<CliResult<_>>()?;
    Ok(QSequence::from_u64(&terms)?)
}

/// `q_1 … q_depth` of `α` as machine integers.
pub fn convergent_times(alpha: &CircleNumber, depth: usize) -> CliResult<Vec<u64>> {
    let cf = cf_expand(alpha, depth)?;
    (1..=depth)
        .map(|k| cf.q(k).to_u64().ok_or_else(|| CliError::Precondition(format!("q_{k} exceeds 64 bits"))))
        .collect()
}

pub fn to_usize(v: &[u64]) -> Vec<usize> {
    v.iter().map(|&n| n as usize).collect()
}
