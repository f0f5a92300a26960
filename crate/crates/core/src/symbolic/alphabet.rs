//! Finite alphabets of exact Gaussian-rational symbols in the closed unit disc.

use std::fmt;
use std::sync::Arc;

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::circle::real::{format_rational, parse_rational};
use crate::error::{Error, Result};

pub type Symbol = Complex<BigRational>;

pub fn real_symbol(r: BigRational) -> Symbol {
    Complex::new(r, BigRational::zero())
}

pub fn int_symbol(v: i64) -> Symbol {
    real_symbol(BigRational::from_integer(v.into()))
}

pub fn symbol_to_c64(z: &Symbol) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Exact `|z|²`.
pub fn modulus_sq(z: &Symbol) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    names: Vec<String>,
}

fn default_name(z: &Symbol) -> String {
    if z.im.is_zero() {
        format_rational(&z.re)
    } else {
        format!(
            "{}{}{}i",
            format_rational(&z.re),
            if z.im < BigRational::zero() { "" } else { "+" },
            format_rational(&z.im)
        )
    }
}

impl Alphabet {
    /// Validates a symbol list; `names` default to the rendered values.
    pub fn new(symbols: Vec<Symbol>, names: Option<Vec<String>>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::pre("alphabet must be nonempty"));
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::pre("alphabet too large"));
        }
        for (i, z) in symbols.iter().enumerate() {
            if modulus_sq(z) > BigRational::one() {
                return Err(Error::pre(format!("symbol {} lies outside the unit disc", default_name(z))));
            }
            if symbols[..i].contains(z) {
                return Err(Error::pre(format!("duplicate symbol {}", default_name(z))));
            }
        }
        let names = match names {
            Some(n) if n.len() == symbols.len() => n,
            Some(_) => return Err(Error::pre("one name per symbol required")),
            None => symbols.iter().map(default_name).collect(),
        };
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(char::is_whitespace) || names[..i].contains(n) {
                return Err(Error::pre(format!("bad or duplicate token name {n:?}")));
            }
        }
        Ok(Alphabet { symbols, names })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| int_symbol(v)).collect(), None)
    }

    /// `{−1, +1}`: index 0 is −1, index 1 is +1.
    pub fn signs() -> Arc<Self> {
        Arc::new(Self::from_ints(&[-1, 1]).expect("valid"))
    }

    /// `{−1, 0, 1}`.
    pub fn ternary() -> Arc<Self> {
        Arc::new(Self::from_ints(&[-1, 0, 1]).expect("valid"))
    }

    /// `{−1, −1/2, 1/2, 1}`.
    pub fn quarter_signs() -> Arc<Self> {
        let h = |p: i64, q: i64| real_symbol(BigRational::new(p.into(), q.into()));
        Arc::new(Self::new(vec![h(-1, 1), h(-1, 2), h(1, 2), h(1, 1)], None).expect("valid"))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, i: u16) -> &Symbol {
        &self.symbols[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u16) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, z: &Symbol) -> Option<u16> {
        self.symbols.iter().position(|s| s == z).map(|i| i as u16)
    }

    pub fn index_of_name(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|s| s == name).map(|i| i as u16)
    }

    pub fn is_real(&self) -> bool {
        self.symbols.iter().all(|z| z.im.is_zero())
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.symbols.iter().map(symbol_to_c64).collect()
    }

    /// `#alphabet name=re,im;…` header of the sequence file format.
    pub fn header(&self) -> String {
        let body: Vec<String> = self
            .symbols
            .iter()
            .zip(&self.names)
            .map(|(z, n)| format!("{n}={},{}", format_rational(&z.re), format_rational(&z.im)))
            .collect();
        format!("#alphabet {}", body.join(";"))
    }

    pub fn parse_header(line: &str) -> Result<Self> {
        let body = line
            .trim()
            .strip_prefix("#alphabet")
            .ok_or_else(|| Error::Parse("missing #alphabet header".into()))?
            .trim();
        let mut symbols = Vec::new();
        let mut names = Vec::new();
        for entry in body.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (name, value) =
                entry.split_once('=').ok_or_else(|| Error::Parse(format!("alphabet entry {entry:?} lacks '='")))?;
            let (re, im) = value.split_once(',').unwrap_or((value, "0"));
            symbols.push(Complex::new(parse_rational(re)?, parse_rational(im)?));
            names.push(name.trim().to_string());
        }
        Self::new(symbols, Some(names))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}
