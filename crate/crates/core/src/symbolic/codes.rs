//! The two-letter sliding codes turning a `±1` cocycle itinerary into a
//! semicocycle (`x_n x_{n+1}`) and into a four-symbol conjugate subshift.

use super::alphabet::Alphabet;
use super::block::Block;
use crate::error::{Error, Result};

fn signs_of(x: &Block) -> Result<Vec<i8>> {
    if x.len() < 2 {
        return Err(Error::pre("the code needs a block of length at least 2"));
    }
    x.signs().ok_or_else(|| Error::pre("the code is defined on ±1 symbols only"))
}

/// `Π(x)_n = x_n x_{n+1}`, over `{−1, +1}`.
pub fn code_pi(x: &Block) -> Result<Block> {
    let s = signs_of(x)?;
    let out: Vec<i8> = s.windows(2).map(|w| w[0] * w[1]).collect();
    Block::from_signs(&out)
}

/// `Π′(x)_n = (3/4)x_n + (1/4)x_n x_{n+1}`, over `{−1, −1/2, 1/2, 1}`.
pub fn code_pi_prime(x: &Block) -> Result<Block> {
    let s = signs_of(x)?;
    // (x_n, x_n x_{n+1}) ↦ value: (−1,−1) → −1, (−1,1) → −1/2, (1,−1) → 1/2, (1,1) → 1
    let data = s
        .windows(2)
        .map(|w| match (w[0], w[0] * w[1]) {
            (-1, -1) => 0,
            (-1, _) => 1,
            (_, -1) => 2,
            _ => 3,
        })
        .collect();
    Block::new(Alphabet::quarter_signs(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::alphabet::real_symbol;
    use num_rational::BigRational;

    fn values(b: &Block) -> Vec<BigRational> {
        b.symbols().map(|z| z.re.clone()).collect()
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn pi_examples() {
        let c = Block::from_signs(&[1, 1, 1]).unwrap();
        assert_eq!(code_pi(&c).unwrap().signs().unwrap(), vec![1, 1]);
        let alt = Block::from_signs(&[1, -1, 1, -1]).unwrap();
        assert_eq!(code_pi(&alt).unwrap().signs().unwrap(), vec![-1, -1, -1]);
        let b = Block::from_signs(&[1, 1, -1]).unwrap();
        assert_eq!(code_pi(&b).unwrap().signs().unwrap(), vec![1, -1]);
        assert!(code_pi(&Block::from_signs(&[1]).unwrap()).is_err());
    }

    #[test]
    fn pi_prime_examples() {
        let alt = Block::from_signs(&[1, -1, 1, -1]).unwrap();
        assert_eq!(values(&code_pi_prime(&alt).unwrap()), vec![q(1, 2), q(-1, 1), q(1, 2)]);
        let b = Block::from_signs(&[1, 1, -1]).unwrap();
        assert_eq!(values(&code_pi_prime(&b).unwrap()), vec![q(1, 1), q(1, 2)]);
        let c = Block::from_signs(&[1, 1, 1, 1]).unwrap();
        assert_eq!(values(&code_pi_prime(&c).unwrap()), vec![q(1, 1); 3]);
    }

    #[test]
    fn pi_prime_matches_formula_and_rejects_other_symbols() {
        let x = Block::from_signs(&[-1, -1, 1, 1, -1, 1]).unwrap();
        let s = x.signs().unwrap();
        let out = code_pi_prime(&x).unwrap();
        for (n, z) in out.symbols().enumerate() {
            let expected = q(3, 4) * q(s[n] as i64, 1) + q(1, 4) * q((s[n] * s[n + 1]) as i64, 1);
            assert_eq!(*z, real_symbol(expected));
        }
        let m = crate::symbolic::generators::gen_mobius(10).unwrap();
        assert!(code_pi_prime(&m).is_err());
    }
}
