use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite window of a binary sequence, anchored at a lattice index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    origin: i64,
    symbols: Vec<u8>,
}

impl Word {
    /// Panics if a symbol is not 0 or 1.
    pub fn new(origin: i64, symbols: Vec<u8>) -> Self {
        assert!(
            symbols.iter().all(|&s| s <= 1),
            "word symbols must be 0 or 1"
        );
        Self { origin, symbols }
    }

    pub fn parse_at(origin: i64, s: &str) -> Result<Self> {
        let symbols = s
            .bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                other => Err(Error::Parse(format!(
                    "invalid symbol {:?} in word",
                    other as char
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { origin, symbols })
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == 1).count()
    }

    /// Window positions (0-based) holding a 1.
    pub fn one_positions(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| (s == 1).then_some(i))
            .collect()
    }

    /// Lattice index of window position `pos`.
    pub fn index_of(&self, pos: usize) -> i64 {
        self.origin + pos as i64
    }

    pub fn as_string(&self) -> String {
        self.symbols.iter().map(|&s| char::from(b'0' + s)).collect()
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Copy with the symbol at `pos` flipped.
    pub fn flipped(&self, pos: usize) -> Self {
        let mut symbols = self.symbols.clone();
        symbols[pos] ^= 1;
        Self {
            origin: self.origin,
            symbols,
        }
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self {
            origin: self.origin + start as i64,
            symbols: self.symbols[start..start + len].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_at(0, s)
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    origin: i64,
    symbols: String,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr {
            origin: self.origin,
            symbols: self.as_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(deserializer)?;
        Word::parse_at(repr.origin, &repr.symbols).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_form() {
        let w = Word::parse_at(1, "0100101001001").unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"origin":1,"symbols":"0100101001001"}"#);
        assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w);
    }

    #[test]
    fn rejects_other_symbols() {
        assert!("0120".parse::<Word>().is_err());
        assert!(serde_json::from_str::<Word>(r#"{"origin":0,"symbols":"0a"}"#).is_err());
    }

    #[test]
    fn helpers() {
        let w = Word::parse_at(5, "10110").unwrap();
        assert_eq!(w.ones(), 3);
        assert_eq!(w.one_positions(), vec![0, 2, 3]);
        assert_eq!(w.index_of(2), 7);
        assert_eq!(w.flipped(1).to_string(), "11110");
        assert_eq!(w.slice(1, 3), Word::parse_at(6, "011").unwrap());
    }
}
