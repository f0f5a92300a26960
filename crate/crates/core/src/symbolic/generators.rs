//! Deterministic sequence producers.

use std::sync::Arc;

use super::alphabet::Alphabet;
use super::block::Block;
use crate::circle::orbit::Orbit;
use crate::circle::CircleNumber;
use crate::cocycle::StepCocycle;
use crate::error::{Error, Result};

/// Largest index the Möbius sieve will materialize.
pub const MOBIUS_CAP: usize = 1_000_000_000;

fn sign_index(v: i8) -> u16 {
    u16::from(v > 0)
}

/// `y_i = φ_t(s0 + (i−1)α)` with `φ_t = −1` on `[0, t)`; `t = α` gives the
/// Sturmian coding.
pub fn gen_rotation_itinerary(alpha: &CircleNumber, t: &CircleNumber, s0: &CircleNumber, n: usize) -> Block {
    let phi = StepCocycle::two_jump(t);
    let values = phi.eval_orbit(&Orbit::forward(s0, alpha), n);
    Block::new(Alphabet::signs(), values.into_iter().map(sign_index).collect()).expect("sign indices")
}

/// `x_m = κ0·Π_{i=0}^{m−2} φ(s0 + iα)`; the empty product makes `x_1 = κ0`.
pub fn gen_cocycle_itinerary(
    phi: &StepCocycle,
    alpha: &CircleNumber,
    s0: &CircleNumber,
    kappa0: i8,
    n: usize,
) -> Result<Block> {
    if kappa0 != 1 && kappa0 != -1 {
        return Err(Error::pre("initial fibre value must be ±1"));
    }
    let steps = phi.eval_orbit(&Orbit::forward(s0, alpha), n.saturating_sub(1));
    let mut data = Vec::with_capacity(n);
    let mut x = kappa0;
    if n > 0 {
        data.push(sign_index(x));
    }
    for v in steps {
        x *= v;
        data.push(sign_index(x));
    }
    Ok(Block::new(Alphabet::signs(), data).expect("sign indices"))
}

/// `μ(1), …, μ(n)` by a linear smallest-prime-factor sieve.
pub fn mobius_values(n: usize) -> Result<Vec<i8>> {
    if n == 0 {
        return Err(Error::pre("Möbius prefix needs n ≥ 1"));
    }
    if n > MOBIUS_CAP {
        return Err(Error::LimitExceeded { requested: n as u64, limit: MOBIUS_CAP as u64 });
    }
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu.remove(0);
    Ok(mu)
}

/// Möbius prefix over the alphabet `{−1, 0, 1}`.
pub fn gen_mobius(n: usize) -> Result<Block> {
    let data = mobius_values(n)?.into_iter().map(|v| (v + 1) as u16).collect();
    Block::new(Alphabet::ternary(), data)
}

pub fn gen_periodic(period: &Block, n: usize) -> Result<Block> {
    if period.is_empty() {
        return Err(Error::pre("period must be nonempty"));
    }
    let data = period.indices().iter().copied().cycle().take(n).collect();
    Block::new(period.alphabet().clone(), data)
}

pub fn gen_constant(alphabet: Arc<Alphabet>, index: u16, n: usize) -> Result<Block> {
    Block::new(alphabet, vec![index; n])
}

/// How a sequence is produced.
#[derive(Clone, Debug)]
pub enum Generator {
    Rotation {
        alpha: CircleNumber,
        t: CircleNumber,
        s0: CircleNumber,
    },
    Cocycle {
        phi: StepCocycle,
        alpha: CircleNumber,
        s0: CircleNumber,
        kappa0: i8,
    },
    Mobius,
    Periodic(Block),
    Constant {
        alphabet: Arc<Alphabet>,
        index: u16,
    },
    /// A fixed finite block, e.g. read from a file.
    Materialized(Block),
}

/// A deterministic producer with an explicit materialization limit.
#[derive(Clone, Debug)]
pub struct SymbolicSequence {
    generator: Generator,
    limit: usize,
}

impl SymbolicSequence {
    pub fn new(generator: Generator, limit: usize) -> Self {
        let limit = match &generator {
            Generator::Materialized(b) => limit.min(b.len()),
            Generator::Mobius => limit.min(MOBIUS_CAP),
            _ => limit,
        };
        SymbolicSequence { generator, limit }
    }

    pub fn from_block(block: Block) -> Self {
        let n = block.len();
        Self::new(Generator::Materialized(block), n)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn alphabet(&self) -> Arc<Alphabet> {
        match &self.generator {
            Generator::Rotation { .. } | Generator::Cocycle { .. } => Alphabet::signs(),
            Generator::Mobius => Alphabet::ternary(),
            Generator::Periodic(b) | Generator::Materialized(b) => b.alphabet().clone(),
            Generator::Constant { alphabet, .. } => alphabet.clone(),
        }
    }

    /// `x_1 … x_n`.
    pub fn prefix(&self, n: usize) -> Result<Block> {
        if n > self.limit {
            return Err(Error::LimitExceeded { requested: n as u64, limit: self.limit as u64 });
        }
        match &self.generator {
            Generator::Rotation { alpha, t, s0 } => Ok(gen_rotation_itinerary(alpha, t, s0, n)),
            Generator::Cocycle { phi, alpha, s0, kappa0 } => gen_cocycle_itinerary(phi, alpha, s0, *kappa0, n),
            Generator::Mobius if n == 0 => Ok(Block::empty(Alphabet::ternary())),
            Generator::Mobius => gen_mobius(n),
            Generator::Periodic(b) => gen_periodic(b, n),
            Generator::Constant { alphabet, index } => gen_constant(alphabet.clone(), *index, n),
            Generator::Materialized(b) => b.prefix(n),
        }
    }
}
