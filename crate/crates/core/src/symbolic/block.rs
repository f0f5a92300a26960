//! Finite words over an alphabet, stored as symbol indices.

use std::sync::Arc;

use num_complex::Complex64;

use super::alphabet::{int_symbol, Alphabet, Symbol};
use crate::error::{Error, Result};

/// A finite block `x_1 … x_n`; the API indexes from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    alphabet: Arc<Alphabet>,
    data: Vec<u16>,
}

impl Block {
    pub fn new(alphabet: Arc<Alphabet>, data: Vec<u16>) -> Result<Self> {
        if let Some(&bad) = data.iter().find(|&&i| i as usize >= alphabet.len()) {
            return Err(Error::pre(format!("symbol index {bad} outside an alphabet of size {}", alphabet.len())));
        }
        Ok(Block { alphabet, data })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Block { alphabet, data: Vec::new() }
    }

    pub fn from_symbols(alphabet: Arc<Alphabet>, symbols: &[Symbol]) -> Result<Self> {
        let data = symbols
            .iter()
            .map(|z| alphabet.index_of(z).ok_or_else(|| Error::pre("symbol not in alphabet")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Block { alphabet, data })
    }

    /// A block over the standard `{−1, +1}` alphabet.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let data = signs
            .iter()
            .map(|&s| match s {
                -1 => Ok(0),
                1 => Ok(1),
                _ => Err(Error::pre(format!("{s} is not a sign"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Block { alphabet: Alphabet::signs(), data })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn indices(&self) -> &[u16] {
        &self.data
    }

    pub fn into_indices(self) -> Vec<u16> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        self.alphabet.symbol(self.data[i])
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> + '_ {
        self.data.iter().map(|&i| self.alphabet.symbol(i))
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        let table = self.alphabet.to_c64();
        self.data.iter().map(|&i| table[i as usize]).collect()
    }

    /// `±1` values when every symbol is real `±1`.
    pub fn signs(&self) -> Option<Vec<i8>> {
        let table: Vec<Option<i8>> = self
            .alphabet
            .symbols()
            .iter()
            .map(|z| {
                if *z == int_symbol(1) {
                    Some(1)
                } else if *z == int_symbol(-1) {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect();
        self.data.iter().map(|&i| table[i as usize]).collect()
    }

    /// Sub-block `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if start > end || end > self.len() {
            return Err(Error::pre(format!("range {start}..{end} outside a block of length {}", self.len())));
        }
        Ok(Block { alphabet: self.alphabet.clone(), data: self.data[start..end].to_vec() })
    }

    pub fn prefix(&self, n: usize) -> Result<Self> {
        self.slice(0, n)
    }

    pub fn concat(&self, other: &Block) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch("concatenated blocks use different alphabets".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Block { alphabet: self.alphabet.clone(), data })
    }
}

/// Index space of words: a single alphabet or a product `K × K′`, where the
/// pair `(i, j)` is encoded as `i·|K′| + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolSpace {
    Single(Arc<Alphabet>),
    Pair(Arc<Alphabet>, Arc<Alphabet>),
}

impl SymbolSpace {
    pub fn size(&self) -> usize {
        match self {
            SymbolSpace::Single(a) => a.len(),
            SymbolSpace::Pair(a, b) => a.len() * b.len(),
        }
    }

    pub fn encode(&self, i: u16, j: u16) -> u16 {
        match self {
            SymbolSpace::Single(_) => i,
            SymbolSpace::Pair(_, b) => i * b.len() as u16 + j,
        }
    }

    pub fn decode(&self, code: u16) -> (u16, u16) {
        match self {
            SymbolSpace::Single(_) => (code, 0),
            SymbolSpace::Pair(_, b) => (code / b.len() as u16, code % b.len() as u16),
        }
    }

    pub fn left(&self) -> &Arc<Alphabet> {
        match self {
            SymbolSpace::Single(a) | SymbolSpace::Pair(a, _) => a,
        }
    }

    pub fn right(&self) -> Option<&Arc<Alphabet>> {
        match self {
            SymbolSpace::Single(_) => None,
            SymbolSpace::Pair(_, b) => Some(b),
        }
    }
}

/// Zips two equal-length blocks into codes over `K × K′`.
pub fn pair_codes(x: &Block, y: &Block) -> Result<(SymbolSpace, Vec<u16>)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let space = SymbolSpace::Pair(x.alphabet.clone(), y.alphabet.clone());
    if space.size() > u16::MAX as usize + 1 {
        return Err(Error::pre("product alphabet too large"));
    }
    let codes = x.data.iter().zip(&y.data).map(|(&i, &j)| space.encode(i, j)).collect();
    Ok((space, codes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slicing_and_concatenation() {
        let b = Block::from_signs(&[1, -1, 1, 1]).unwrap();
        assert_eq!(b.slice(1, 3).unwrap().signs().unwrap(), vec![-1, 1]);
        assert!(b.slice(3, 5).is_err());
        let c = b.concat(&b.prefix(2).unwrap()).unwrap();
        assert_eq!(c.signs().unwrap(), vec![1, -1, 1, 1, 1, -1]);
        assert!(Block::new(Alphabet::signs(), vec![2]).is_err());
    }

    #[test]
    fn pair_encoding_round_trips() {
        let x = Block::from_signs(&[1, -1, -1]).unwrap();
        let y = Block::new(Alphabet::ternary(), vec![0, 2, 1]).unwrap();
        let (space, codes) = pair_codes(&x, &y).unwrap();
        assert_eq!(space.size(), 6);
        let back: Vec<(u16, u16)> = codes.iter().map(|&c| space.decode(c)).collect();
        assert_eq!(back, vec![(1, 0), (0, 2), (0, 1)]);
    }
}
