//! Command-line grammar.
//!
//! Circle points (`--alpha`, `--t`, `--s0`, …) accept `golden`, `sqrt2m1`,
//! `cf:[a1,a2,(b1,b2)]`, `rat:p/q`, `dec:0.xxxx@bits` and bare rationals
//! such as `1/3`. Length lists accept `log:a:b[:points]`, `lin:a:b:step`,
//! `fib:count` or a comma-separated list.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ergocorr", version, about = "Correlations, joinings, generic lifting and cocycle ergodicity checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write the main CSV/JSON artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for the parallel library routines.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Bits used for `dec:` inputs without an explicit `@bits` and for random parameters.
    #[arg(long, global = true, env = "ERGOCORR_PRECISION_BITS", default_value_t = 128)]
    pub precision_bits: u32,

    /// Require every circle point to be rational.
    #[arg(long, global = true, conflicts_with = "quadratic")]
    pub rational: bool,

    /// Rotation number used wherever `--alpha` is omitted.
    #[arg(long, global = true, value_name = "ALPHA")]
    pub quadratic: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correlation of two sequence files, at one length or along a grid.
    Corr(CorrArgs),
    /// Finite-scale Besicovitch distance between two sequence files.
    Dbar(DbarArgs),
    /// Generate a sequence file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Empirical measures, distances, genericity and semi-generation.
    #[command(subcommand)]
    Empirical(EmpiricalCommand),
    /// Check the suffix, trimming and concatenation lemmas on given blocks.
    #[command(subcommand)]
    Lemmas(LemmaCommand),
    /// Build invariant block measures as JSON documents.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Canonical joinings, their correlation and the coupling bound.
    #[command(subcommand)]
    Joining(JoiningCommand),
    /// Build a generic second row over a given first row.
    #[command(subcommand)]
    Lift(LiftCommand),
    /// Continued fractions, circle norms and Weyl averages.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Step cocycles and their ergodicity tests.
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Seeded Monte Carlo recipes.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Args)]
pub struct CorrArgs {
    #[arg(long)]
    pub seq_a: PathBuf,
    #[arg(long)]
    pub seq_b: PathBuf,
    /// Lengths at which to evaluate; omit for the whole common length.
    #[arg(long)]
    pub n_grid: Option<String>,
    /// Label the curve by whether the last third of `|corr|` stays below this level.
    #[arg(long, value_name = "TOL")]
    pub classify: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DbarArgs {
    #[arg(long)]
    pub seq_a: PathBuf,
    #[arg(long)]
    pub seq_b: PathBuf,
    /// Largest length; defaults to the shorter file.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub grid_points: usize,
}

/// `--t` alone gives the two-jump cocycle; with `--tprime` and `--u` the four-jump one.
#[derive(Debug, Args)]
pub struct CocycleSpec {
    #[arg(long)]
    pub t: String,
    #[arg(long)]
    pub tprime: Option<String>,
    #[arg(long)]
    pub u: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Coding of a rotation orbit by the arc `[0, t)`.
    Rotation {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "0")]
        s0: String,
        #[arg(long)]
        n: usize,
    },
    /// Fibre itinerary of a step cocycle extension.
    Cocycle {
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        phi: CocycleSpec,
        #[arg(long, default_value = "0")]
        s0: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        kappa0: i8,
        #[arg(long)]
        n: usize,
    },
    /// The Möbius function `μ(1) … μ(n)`.
    Mobius {
        #[arg(long)]
        n: usize,
    },
    /// Products of neighbouring symbols of a `±1` file.
    CodePi {
        #[arg(long)]
        input: PathBuf,
    },
    /// Four-symbol sliding code of a `±1` file.
    CodePiPrime {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum EmpiricalCommand {
    /// Block frequencies of order `m` as a measure document.
    Measure {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// `d^(m)` between two measure documents.
    Distance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Defaults to the common order of both documents.
        #[arg(long)]
        order: Option<usize>,
    },
    /// `(m, ε)`-genericity of a sequence file for a measure document.
    Generic {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        eps: String,
    },
    /// Distances between empirical measures along a length list.
    Scan {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum LemmaCommand {
    /// Genericity of a suffix given genericity of the block and its prefix.
    Suffix {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        prefix_len: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        eps: String,
    },
    /// Trimming (`--seq`, `--left`, `--right`) and concatenation (`--first` …)
    /// parts; give the flags of either part or of both.
    TrimConcat {
        #[arg(long)]
        order: usize,
        #[arg(long, requires_all = ["left", "right"])]
        seq: Option<PathBuf>,
        #[arg(long)]
        left: Option<usize>,
        #[arg(long)]
        right: Option<usize>,
        #[arg(long, requires_all = ["first_ref", "second", "second_ref", "eps"])]
        first: Option<PathBuf>,
        #[arg(long)]
        first_ref: Option<PathBuf>,
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long)]
        second_ref: Option<PathBuf>,
        #[arg(long)]
        eps: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Invariant measure on the orbit of a periodic point.
    Periodic {
        /// Sequence file holding one period.
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Product measure with the given letter probabilities.
    Bernoulli {
        /// `signs`, `ternary`, `quarter-signs` or an `#alphabet …` header.
        #[arg(long)]
        alphabet: String,
        /// Comma-separated rationals, one per letter.
        #[arg(long)]
        probs: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Point mass at a constant sequence.
    Point {
        #[arg(long)]
        alphabet: String,
        /// Letter name.
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum JoiningCommand {
    /// Independent joining `μ × ν`.
    Product {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
    },
    /// Diagonal self-joining of `ν`.
    Diagonal {
        #[arg(long)]
        nu: PathBuf,
    },
    /// `p·ν_Δ + (1−p)·(μ′ × ν)`.
    Mixture {
        #[arg(long)]
        p: String,
        #[arg(long)]
        nu: PathBuf,
        #[arg(long)]
        mu_prime: PathBuf,
    },
    /// `∫ x₁·conj(y₁) dξ − ∫x₁ dμ·conj(∫y₁ dν)` of a joining document.
    Corr {
        #[arg(long)]
        joining: PathBuf,
    },
    /// Upper bound for `|corr|` over all joinings of two measures.
    Bound {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        #[arg(long, default_value_t = 360)]
        grid: usize,
    },
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(long, default_value = "1/2")]
    pub eps0: String,
    #[arg(long, default_value = "1/2")]
    pub ratio: String,
}

#[derive(Debug, Args)]
pub struct LiftInputs {
    /// First row to lift over.
    #[arg(long)]
    pub x: PathBuf,
    /// Reference first row.
    #[arg(long)]
    pub x_prime: PathBuf,
    /// Reference second row.
    #[arg(long)]
    pub y_prime: PathBuf,
    /// Order of the certified distance.
    #[arg(long, default_value_t = 2)]
    pub m0: usize,
    /// Where to write the lifted row.
    #[arg(long)]
    pub y_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LiftCommand {
    /// Tolerances and stage lengths.
    Schedule {
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 100)]
        l1: u64,
        /// Number of stages.
        #[arg(long, conflicts_with = "fit", required_unless_present = "fit")]
        stages: Option<usize>,
        /// Longest schedule ending at most here.
        #[arg(long)]
        fit: Option<u64>,
    },
    /// Lift along the longest schedule fitting the first row.
    Run {
        #[command(flatten)]
        inputs: LiftInputs,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 100)]
        l1: u64,
    },
    /// Lift with stage lengths drawn from a length list.
    Semigeneric {
        #[command(flatten)]
        inputs: LiftInputs,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long)]
        lengths: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CfCommand {
    /// Distance to the nearest integer.
    Norm {
        #[arg(long)]
        x: String,
    },
    /// Partial quotients and convergents.
    Expand {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        depth: usize,
    },
    /// Recurrence and approximation inequalities of the convergents.
    Verify {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        depth: usize,
        /// Above this `q_k`, best approximation is checked on sampled multiples.
        #[arg(long, default_value_t = 100_000)]
        exhaustive_cap: u64,
    },
    /// `(1/K)Σ e(n q_k x + m q_k y)`.
    Weyl {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Length list for `q_k`, e.g. `fib:1000`.
        #[arg(long, default_value = "fib:1000")]
        q_seq: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CocycleCommand {
    /// The cocycle `−1` on the given arcs, as its jump points.
    Arcs {
        #[command(flatten)]
        phi: CocycleSpec,
    },
    /// `φ^{(n)}(s) = φ(s)φ(s+α)…φ(s+(n−1)α)`.
    Nstep {
        #[command(flatten)]
        phi: CocycleSpec,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        n: usize,
    },
    /// `‖φ − 1‖_{L¹}`, of `φ^{(n)}` when `--n` is given.
    L1 {
        #[command(flatten)]
        phi: CocycleSpec,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// `L¹(φ^{(n)}, 1)` along a time list, by default the denominators `q_k`.
    L1test {
        #[command(flatten)]
        phi: CocycleSpec,
        #[arg(long)]
        alpha: Option<String>,
        /// Use `q_1 … q_depth`.
        #[arg(long, conflicts_with = "times", required_unless_present = "times")]
        depth: Option<usize>,
        #[arg(long)]
        times: Option<String>,
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
    },
    /// Necessary conditions for non-ergodicity of the four-jump cocycle.
    Fourjump {
        #[arg(long)]
        t: String,
        #[arg(long)]
        tprime: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1e-3)]
        gamma_tol: f64,
        /// Per-k table; defaults to the `--out` path with a `.csv` extension.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Equidistribution of `(q_k(t−t′), q_k(t+t′))`.
    Density {
        #[arg(long)]
        t: String,
        #[arg(long)]
        tprime: String,
        #[arg(long, default_value = "fib:10000")]
        q_seq: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Mean `|corr|` between random two-jump cocycle itineraries and a probe.
    Example2 {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        length: usize,
        /// Probe sequence file; by default a rotation coding.
        #[arg(long, conflicts_with_all = ["probe_t", "probe_s0"])]
        probe: Option<PathBuf>,
        #[arg(long, default_value = "1/2")]
        probe_t: String,
        #[arg(long, default_value = "dec:0.1234567890123456789@128")]
        probe_s0: String,
    },
    /// Average of the Sturmian row against the coded cocycle row.
    Example3 {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        length: usize,
    },
    /// `∫∫ φ_α·φ_t`, exactly and by Monte Carlo.
    Integral {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
    },
}
