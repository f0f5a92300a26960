//! Sequence files: a `#alphabet name=re,im;…` header, then one token per line.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::sync::Arc;

use super::alphabet::Alphabet;
use super::block::Block;
use crate::error::{Error, Result};

pub fn read_sequence<R: BufRead>(reader: R) -> Result<Block> {
    let mut lines = reader.lines();
    let header = loop {
        match lines.next() {
            Some(line) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
            None => return Err(Error::Parse("empty sequence file".into())),
        }
    };
    let alphabet = Arc::new(Alphabet::parse_header(&header)?);
    let mut data = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let idx = alphabet
            .index_of_name(token)
            .ok_or_else(|| Error::Parse(format!("line {}: unknown token {token:?}", lineno + 2)))?;
        data.push(idx);
    }
    Block::new(alphabet, data)
}

pub fn format_sequence(block: &Block) -> String {
    let alphabet = block.alphabet();
    let mut out = alphabet.header();
    out.push('\n');
    for &i in block.indices() {
        let _ = writeln!(out, "{}", alphabet.name(i));
    }
    out
}

pub fn write_sequence<W: Write>(mut writer: W, block: &Block) -> Result<()> {
    writer.write_all(format_sequence(block).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let b = Block::from_signs(&[1, -1, -1, 1]).unwrap();
        let text = format_sequence(&b);
        assert!(text.starts_with("#alphabet -1=-1,0;1=1,0\n"));
        assert_eq!(read_sequence(text.as_bytes()).unwrap(), b);
    }

    #[test]
    fn malformed_files() {
        assert!(read_sequence("".as_bytes()).is_err());
        assert!(read_sequence("1\n-1\n".as_bytes()).is_err());
        assert!(read_sequence("#alphabet a=1,0;b=-1,0\na\nc\n".as_bytes()).is_err());
    }
}
