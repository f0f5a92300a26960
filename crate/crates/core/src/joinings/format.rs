//! JSON documents for cylinder weights, shared by empirical and block measures.
//!
//! ```json
//! {"alphabet": [{"name": "-1", "re": "-1", "im": "0"}, …],
//!  "right_alphabet": null,
//!  "product_table": null,
//!  "max_order": 3,
//!  "source_length": null,
//!  "cylinders": [{"word": [0, 1], "weight": "1/2"}, …]}
//! ```
//! Words are lists of symbol indices. On a product space `right_alphabet` is
//! present and `product_table` lists `code ↦ (left, right)` explicitly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::block_measure::{BlockMeasure, Level};
use crate::circle::{format_rational, parse_rational};
use crate::empirical::{CylinderWeights, EmpiricalMeasure};
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, SymbolSpace};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SymbolDoc {
    pub name: String,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairDoc {
    pub code: u16,
    pub left: u16,
    pub right: u16,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CylinderDoc {
    pub word: Vec<u16>,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MeasureDoc {
    pub alphabet: Vec<SymbolDoc>,
    pub right_alphabet: Option<Vec<SymbolDoc>>,
    pub product_table: Option<Vec<PairDoc>>,
    pub max_order: usize,
    /// Length of the source block for empirical measures.
    pub source_length: Option<u64>,
    pub cylinders: Vec<CylinderDoc>,
}

fn alphabet_doc(a: &Alphabet) -> Vec<SymbolDoc> {
    a.symbols()
        .iter()
        .zip(a.names())
        .map(|(z, n)| SymbolDoc { name: n.clone(), re: format_rational(&z.re), im: format_rational(&z.im) })
        .collect()
}

fn alphabet_from_doc(doc: &[SymbolDoc]) -> Result<Arc<Alphabet>> {
    let symbols = doc
        .iter()
        .map(|s| Ok(Complex::new(parse_rational(&s.re)?, parse_rational(&s.im)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(Alphabet::new(symbols, Some(doc.iter().map(|s| s.name.clone()).collect()))?))
}

fn space_doc(space: &SymbolSpace) -> (Vec<SymbolDoc>, Option<Vec<SymbolDoc>>, Option<Vec<PairDoc>>) {
    match space {
        SymbolSpace::Single(a) => (alphabet_doc(a), None, None),
        SymbolSpace::Pair(a, b) => {
            let table = (0..space.size() as u16)
                .map(|code| {
                    let (left, right) = space.decode(code);
                    PairDoc { code, left, right }
                })
                .collect();
            (alphabet_doc(a), Some(alphabet_doc(b)), Some(table))
        }
    }
}

impl MeasureDoc {
    pub fn from_block_measure(mu: &BlockMeasure) -> Self {
        let (alphabet, right_alphabet, product_table) = space_doc(mu.space());
        let cylinders =
            mu.entries().map(|(w, p)| CylinderDoc { word: w.clone(), weight: format_rational(p) }).collect();
        MeasureDoc {
            alphabet,
            right_alphabet,
            product_table,
            max_order: mu.max_order(),
            source_length: None,
            cylinders,
        }
    }

    /// Only the order-`m` counts are recorded, as weights `count/n`.
    pub fn from_empirical(mu: &EmpiricalMeasure) -> Self {
        use crate::empirical::CylinderWeights;
        let (alphabet, right_alphabet, product_table) = space_doc(mu.space());
        let cylinders = mu
            .counts()
            .keys()
            .map(|w| CylinderDoc { word: w.clone(), weight: format_rational(&mu.weight(w)) })
            .collect();
        MeasureDoc {
            alphabet,
            right_alphabet,
            product_table,
            max_order: mu.order(),
            source_length: Some(mu.source_length()),
            cylinders,
        }
    }

    pub fn space(&self) -> Result<SymbolSpace> {
        let left = alphabet_from_doc(&self.alphabet)?;
        let space = match &self.right_alphabet {
            None => SymbolSpace::Single(left),
            Some(r) => SymbolSpace::Pair(left, alphabet_from_doc(r)?),
        };
        if let Some(table) = &self.product_table {
            if table.len() != space.size() || table.iter().any(|e| space.decode(e.code) != (e.left, e.right)) {
                return Err(Error::Parse("product table disagrees with the code convention".into()));
            }
        }
        Ok(space)
    }

    /// Rebuilds a validated block measure; every order `1..=max_order` must be present.
    pub fn to_block_measure(&self) -> Result<BlockMeasure> {
        if self.max_order == 0 {
            return Err(Error::Parse("max_order must be positive".into()));
        }
        let mut levels = vec![Level::new(); self.max_order];
        for c in &self.cylinders {
            let m = c.word.len();
            if m == 0 || m > self.max_order {
                return Err(Error::Parse(format!("word {:?} has order outside 1..={}", c.word, self.max_order)));
            }
            let w: BigRational = parse_rational(&c.weight)?;
            levels[m - 1].insert(c.word.clone(), w);
        }
        BlockMeasure::from_levels(self.space()?, levels)
    }

    /// Weights of one order, as recorded; suits documents written from
    /// empirical measures, which carry a single order.
    pub fn to_frequencies(&self) -> Result<FrequencyTable> {
        let order = self.max_order;
        let mut weights = BTreeMap::new();
        let mut total = BigRational::from_integer(0.into());
        for c in self.cylinders.iter().filter(|c| c.word.len() == order) {
            let w = parse_rational(&c.weight)?;
            if w.is_negative() {
                return Err(Error::Parse(format!("negative weight for word {:?}", c.word)));
            }
            total += &w;
            weights.insert(c.word.clone(), w);
        }
        if total > BigRational::one() {
            return Err(Error::Parse("weights of one order sum to more than 1".into()));
        }
        let space = self.space()?;
        if weights.keys().flatten().any(|&c| c as usize >= space.size()) {
            return Err(Error::Parse("word letter outside the alphabet".into()));
        }
        Ok(FrequencyTable { space, order, weights })
    }

    /// A block measure for documents without `source_length`, otherwise the
    /// recorded frequencies.
    pub fn load(&self) -> Result<LoadedMeasure> {
        match self.source_length {
            Some(_) => Ok(LoadedMeasure::Frequencies(self.to_frequencies()?)),
            None => Ok(LoadedMeasure::Block(self.to_block_measure()?)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Cylinder weights of a single order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    space: SymbolSpace,
    order: usize,
    weights: BTreeMap<Vec<u16>, BigRational>,
}

impl CylinderWeights for FrequencyTable {
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
        Ok(self.weights.clone())
    }
}

#[derive(Clone, Debug)]
pub enum LoadedMeasure {
    Block(BlockMeasure),
    Frequencies(FrequencyTable),
}

impl LoadedMeasure {
    pub fn weights(&self) -> &dyn CylinderWeights {
        match self {
            LoadedMeasure::Block(b) => b,
            LoadedMeasure::Frequencies(f) => f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::joinings::{diagonal_joining, product_joining};
    use crate::symbolic::Block;

    #[test]
    fn round_trips() {
        let mu = BlockMeasure::periodic(&Block::from_signs(&[1, 1, -1]).unwrap(), 4).unwrap();
        let doc = MeasureDoc::from_block_measure(&mu);
        let back = MeasureDoc::from_json(&doc.to_json()).unwrap().to_block_measure().unwrap();
        assert_eq!(back, mu);
        let xi = product_joining(&mu, &diagonal_joining(&mu).unwrap().nu().clone()).unwrap();
        let doc = MeasureDoc::from_block_measure(xi.measure());
        assert_eq!(doc.product_table.as_ref().unwrap().len(), 4);
        assert_eq!(MeasureDoc::from_json(&doc.to_json()).unwrap().to_block_measure().unwrap(), *xi.measure());
    }

    #[test]
    fn rejects_bad_documents() {
        let mu = BlockMeasure::periodic(&Block::from_signs(&[1, -1]).unwrap(), 2).unwrap();
        let mut doc = MeasureDoc::from_block_measure(&mu);
        doc.cylinders[0].weight = "3/4".into();
        assert!(doc.to_block_measure().is_err());
    }

    #[test]
    fn empirical_documents_keep_their_order() {
        use crate::empirical::{dm_distance, empirical_measure};
        let b = Block::from_signs(&[1, -1, -1, 1, 1, 1, -1]).unwrap();
        let emp = empirical_measure(&b, 2).unwrap();
        let doc = MeasureDoc::from_json(&MeasureDoc::from_empirical(&emp).to_json()).unwrap();
        let loaded = doc.load().unwrap();
        assert!(matches!(loaded, LoadedMeasure::Frequencies(_)));
        assert_eq!(dm_distance(loaded.weights(), &emp).unwrap(), BigRational::from_integer(0.into()));
        assert!(loaded.weights().weights_at(1).is_err());
    }
}
