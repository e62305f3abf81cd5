use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of the four marked points `{1,2,3,4}`; element `i` is bit `i-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkSubset(u8);

impl MarkSubset {
    pub const EMPTY: MarkSubset = MarkSubset(0);
    pub const FULL: MarkSubset = MarkSubset(0b1111);

    pub fn from_bits(bits: u8) -> Result<Self> {
        if bits > 0b1111 {
            return Err(Error::Invalid(format!("bitmask {bits} exceeds four marks")));
        }
        Ok(MarkSubset(bits))
    }

    /// Panics on elements outside `1..=4`.
    pub fn of(elems: &[u8]) -> Self {
        MarkSubset(elems.iter().fold(0, |acc, &i| {
            assert!((1..=4).contains(&i), "mark {i} out of range");
            acc | 1 << (i - 1)
        }))
    }

    pub fn singleton(i: u8) -> Self {
        Self::of(&[i])
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self) -> Self {
        MarkSubset(!self.0 & 0b1111)
    }

    pub fn union(self, o: Self) -> Self {
        MarkSubset(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        MarkSubset(self.0 & o.0)
    }

    pub fn sym_diff(self, o: Self) -> Self {
        MarkSubset(self.0 ^ o.0)
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.len() as i64)
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        (1..=4).filter(move |&i| self.contains(i))
    }

    pub fn all() -> impl Iterator<Item = MarkSubset> {
        (0..16).map(MarkSubset)
    }

    /// Ordering key used wherever a pair `{I, I^c}` needs a representative.
    pub fn size_key(self) -> (usize, u8) {
        (self.len(), self.0)
    }

    /// Digits only, `∅` for the empty set: `{1,3}` becomes `13`.
    pub fn compact(self) -> String {
        if self.is_empty() {
            "∅".to_string()
        } else {
            self.elements().map(|i| char::from(b'0' + i)).collect()
        }
    }

    /// Parses `{1,3}`, `{}`, `13` or `∅`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "∅" || t == "{}" || t == "e" {
            return Ok(MarkSubset::EMPTY);
        }
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let mut bits = 0u8;
        for ch in inner.chars().filter(|c| *c != ',' && !c.is_whitespace()) {
            let d = ch.to_digit(10).filter(|d| (1..=4).contains(d));
            let Some(d) = d else {
                return Err(Error::Parse(format!("bad mark subset {s:?}")));
            };
            let bit = 1u8 << (d - 1);
            if bits & bit != 0 {
                return Err(Error::Parse(format!("repeated mark in {s:?}")));
            }
            bits |= bit;
        }
        Ok(MarkSubset(bits))
    }
}

impl fmt::Display for MarkSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for MarkSubset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_compact(s)
    }
}

impl Serialize for MarkSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MarkSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Even, Parity::Odd]
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!(
                "parity must be even or odd, got {other:?}"
            ))),
        }
    }
}
