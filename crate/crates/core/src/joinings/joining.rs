//! Joinings of two block measures and the order-1 correlation functional.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::block_measure::{BlockMeasure, Level};
use crate::error::{Error, Result};
use crate::symbolic::alphabet::{modulus_sq, Symbol};
use crate::symbolic::{ExactComplex, SymbolSpace};

/// A measure on `K × K′` together with the two measures it joins.
#[derive(Clone, Debug)]
pub struct JoiningMeasure {
    measure: BlockMeasure,
    mu: BlockMeasure,
    nu: BlockMeasure,
}

fn pair_space(mu: &BlockMeasure, nu: &BlockMeasure) -> Result<SymbolSpace> {
    let (SymbolSpace::Single(a), SymbolSpace::Single(b)) = (mu.space(), nu.space()) else {
        return Err(Error::pre("joinings are built from measures on single alphabets"));
    };
    if a.len() * b.len() > u16::MAX as usize + 1 {
        return Err(Error::pre("product alphabet too large"));
    }
    Ok(SymbolSpace::Pair(a.clone(), b.clone()))
}

impl JoiningMeasure {
    /// Wraps a measure on a product space, recording its own marginals.
    pub fn from_measure(measure: BlockMeasure) -> Result<Self> {
        let (mu, nu) = measure.marginals()?;
        Ok(JoiningMeasure { measure, mu, nu })
    }

    /// Wraps a measure and checks that it projects onto `mu` and `nu`.
    pub fn with_marginals(measure: BlockMeasure, mu: BlockMeasure, nu: BlockMeasure) -> Result<Self> {
        let j = JoiningMeasure { measure, mu, nu };
        if !j.marginals_match()? {
            return Err(Error::pre("measure does not project onto the given marginals"));
        }
        Ok(j)
    }

    pub fn measure(&self) -> &BlockMeasure {
        &self.measure
    }

    pub fn mu(&self) -> &BlockMeasure {
        &self.mu
    }

    pub fn nu(&self) -> &BlockMeasure {
        &self.nu
    }

    /// Whether both projections equal the stored marginals at every order.
    pub fn marginals_match(&self) -> Result<bool> {
        let (left, right) = self.measure.marginals()?;
        let order = self.measure.max_order();
        Ok(self.mu.max_order() >= order
            && self.nu.max_order() >= order
            && left == self.mu.truncate(order)?
            && right == self.nu.truncate(order)?)
    }
}

/// `μ × ν`, truncated to the smaller order.
pub fn product_joining(mu: &BlockMeasure, nu: &BlockMeasure) -> Result<JoiningMeasure> {
    let space = pair_space(mu, nu)?;
    let order = mu.max_order().min(nu.max_order());
    let mut levels = Vec::with_capacity(order);
    for m in 1..=order {
        let mut level = Level::new();
        for (a, pa) in mu.level(m)? {
            for (b, pb) in nu.level(m)? {
                let w: Vec<u16> = a.iter().zip(b).map(|(&i, &j)| space.encode(i, j)).collect();
                level.insert(w, pa * pb);
            }
        }
        levels.push(level);
    }
    let measure = BlockMeasure::from_levels(space, levels)?;
    Ok(JoiningMeasure { measure, mu: mu.truncate(order)?, nu: nu.truncate(order)? })
}

/// The identity joining `ν_Δ`, carried by the diagonal.
pub fn diagonal_joining(nu: &BlockMeasure) -> Result<JoiningMeasure> {
    let space = pair_space(nu, nu)?;
    let measure = nu.map_letters(space.clone(), |c| space.encode(c, c));
    measure.validate()?;
    Ok(JoiningMeasure { measure, mu: nu.clone(), nu: nu.clone() })
}

/// `p·ν_Δ + (1−p)·(μ′ × ν)`, a joining of `p·ν + (1−p)·μ′` with `ν`.
pub fn mixture_joining(p: &BigRational, nu: &BlockMeasure, mu_prime: &BlockMeasure) -> Result<JoiningMeasure> {
    if !p.is_positive() || *p > BigRational::one() {
        return Err(Error::pre(format!("mixture weight {p} outside (0,1]")));
    }
    if nu.space() != mu_prime.space() {
        return Err(Error::AlphabetMismatch("the mixed measure must share the alphabet of nu".into()));
    }
    let q = BigRational::one() - p;
    let diag = diagonal_joining(nu)?;
    let prod = product_joining(mu_prime, nu)?;
    let measure = BlockMeasure::mixture(&[(p.clone(), diag.measure()), (q.clone(), prod.measure())])?;
    let mu = BlockMeasure::mixture(&[(p.clone(), nu), (q, mu_prime)])?;
    let order = measure.max_order();
    Ok(JoiningMeasure { measure, mu: mu.truncate(order)?, nu: nu.truncate(order)? })
}

fn mean(symbols: &[Symbol], probs: &[BigRational]) -> ExactComplex {
    symbols.iter().zip(probs).fold(ExactComplex::zero(), |acc, (z, p)| acc + z.scale(p.clone()))
}

/// `∫x₁·conj(y₁)dξ − ∫x₁dμ · ∫conj(y₁)dν`, exact, from order-1 weights.
pub fn joining_corr(xi: &JoiningMeasure) -> Result<ExactComplex> {
    let space = xi.measure.space();
    let SymbolSpace::Pair(a, b) = space else {
        return Err(Error::pre("joining must live on a product space"));
    };
    let mut cross = ExactComplex::zero();
    for (w, p) in xi.measure.level(1)? {
        let (i, j) = space.decode(w[0]);
        cross += (a.symbol(i) * b.symbol(j).conj()).scale(p.clone());
    }
    let mx = mean(a.symbols(), &xi.mu.order1());
    let my = mean(b.symbols(), &xi.nu.order1());
    Ok(cross - mx * my.conj())
}

/// `∫|x₁|²dν − |∫x₁dν|²`, the value of the identity joining.
pub fn symbol_variance(nu: &BlockMeasure) -> Result<BigRational> {
    let SymbolSpace::Single(a) = nu.space() else {
        return Err(Error::pre("variance needs a single alphabet"));
    };
    let probs = nu.order1();
    let second: BigRational = a.symbols().iter().zip(&probs).map(|(z, p)| modulus_sq(z) * p).sum();
    Ok(second - modulus_sq(&mean(a.symbols(), &probs)))
}

/// Order-1 marginal probabilities of a joining, keyed by symbol pair.
pub fn order1_table(xi: &JoiningMeasure) -> Result<BTreeMap<(u16, u16), BigRational>> {
    let space = xi.measure.space();
    Ok(xi.measure.level(1)?.iter().map(|(w, p)| (space.decode(w[0]), p.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::alphabet::int_symbol;
    use crate::symbolic::{Alphabet, Block};

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn alternating() -> BlockMeasure {
        BlockMeasure::periodic(&Block::from_signs(&[1, -1]).unwrap(), 4).unwrap()
    }

    #[test]
    fn product_is_uncorrelated_with_exact_marginals() {
        let mu = BlockMeasure::periodic(&Block::from_signs(&[1, 1, -1]).unwrap(), 4).unwrap();
        let nu = alternating();
        let xi = product_joining(&mu, &nu).unwrap();
        assert!(xi.marginals_match().unwrap());
        assert_eq!(joining_corr(&xi).unwrap(), int_symbol(0));
        assert_eq!(xi.measure().prob(&[3, 3]), mu.prob(&[1, 1]) * nu.prob(&[1, 1]));
    }

    #[test]
    fn point_masses_give_point_masses() {
        let a = Alphabet::signs();
        let x = BlockMeasure::point_mass(a.clone(), 1, 3).unwrap();
        let y = BlockMeasure::point_mass(a, 0, 3).unwrap();
        let xi = product_joining(&x, &y).unwrap();
        assert_eq!(xi.measure().level(1).unwrap().len(), 1);
        assert_eq!(xi.measure().prob(&[2, 2, 2]), q(1, 1));
    }

    #[test]
    fn diagonal_of_alternating_orbit() {
        let xi = diagonal_joining(&alternating()).unwrap();
        let t = order1_table(&xi).unwrap();
        assert_eq!(t[&(0, 0)], q(1, 2));
        assert_eq!(t[&(1, 1)], q(1, 2));
        assert_eq!(t.len(), 2);
        assert_eq!(joining_corr(&xi).unwrap(), int_symbol(1));
        assert!(xi.marginals_match().unwrap());
    }

    #[test]
    fn mixture_closed_form() {
        let nu = alternating();
        let mu_prime = BlockMeasure::point_mass(Alphabet::signs(), 1, 4).unwrap();
        let xi = mixture_joining(&q(1, 2), &nu, &mu_prime).unwrap();
        assert!(xi.marginals_match().unwrap());
        assert_eq!(joining_corr(&xi).unwrap(), int_symbol(1).scale(q(1, 2)));
        let one = mixture_joining(&q(1, 1), &nu, &mu_prime).unwrap();
        assert_eq!(one.measure(), diagonal_joining(&nu).unwrap().measure());
        assert!(mixture_joining(&q(0, 1), &nu, &mu_prime).is_err());
        let fix = mixture_joining(&q(1, 3), &mu_prime, &nu).unwrap();
        assert_eq!(joining_corr(&fix).unwrap(), int_symbol(0));
    }
}
