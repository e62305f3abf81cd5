//! Names for the orbit families of the nilpotent and bulk loci.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polytope::{MarkSubset, Parity};

/// An unordered pair `{I, I^c}`, stored by its smaller member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(MarkSubset);

impl Partition {
    pub fn new(part: MarkSubset) -> Self {
        let c = part.complement();
        Partition(if part.size_key() <= c.size_key() {
            part
        } else {
            c
        })
    }

    pub fn small(&self) -> MarkSubset {
        self.0
    }

    pub fn large(&self) -> MarkSubset {
        self.0.complement()
    }

    pub fn contains(&self, s: MarkSubset) -> bool {
        s == self.0 || s == self.0.complement()
    }

    /// Parity of the member sizes: even for `{12|34}`, odd for `{1|234}`.
    pub fn parity(&self) -> Parity {
        self.0.parity()
    }

    /// The four partitions of a parity.
    pub fn all(parity: Parity) -> Vec<Partition> {
        let mut out: Vec<Partition> = MarkSubset::all()
            .filter(|s| s.parity() == parity)
            .map(Partition::new)
            .collect();
        out.sort();
        out.dedup();
        out.sort_by_key(|p| p.0.size_key());
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.small(), self.large())
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// `{1,2}|{3,4}` or `12|34`; one side suffices.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').unwrap_or((s, ""));
        let a = MarkSubset::parse_compact(a)?;
        if !b.trim().is_empty() && MarkSubset::parse_compact(b)? != a.complement() {
            return Err(Error::Parse(format!("{s:?} is not a partition")));
        }
        Ok(Partition::new(a))
    }
}

/// Which orbit family of the model a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentLabel {
    /// A special `Φ = 0` orbit.
    N(MarkSubset),
    /// The generic `Φ = 0` orbits.
    NGeneric,
    /// Nilpotent with the first summand as invariant line.
    K(MarkSubset),
    /// Nilpotent with any other invariant line. `tag` separates the two
    /// `{1,2,3,4}` blocks of even degree: `m2 − deg L`.
    L {
        set: MarkSubset,
        tag: Option<u8>,
    },
    /// Bulk orbits over a branch value.
    H(Partition),
    BulkGeneric,
    /// `Φ = 0` orbits that are unstable for every weight.
    QOther,
    /// Nilpotent orbits that are unstable for every weight.
    NilOther,
}

impl ComponentLabel {
    pub fn l(set: MarkSubset) -> Self {
        ComponentLabel::L { set, tag: None }
    }

    /// The subset carried by an `N`, `K` or `L` label.
    pub fn subset(&self) -> Option<MarkSubset> {
        match self {
            ComponentLabel::N(s) | ComponentLabel::K(s) | ComponentLabel::L { set: s, .. } => {
                Some(*s)
            }
            _ => None,
        }
    }

    pub fn is_block(&self) -> bool {
        matches!(self, ComponentLabel::K(_) | ComponentLabel::L { .. })
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::N(s) => write!(f, "N{s}"),
            ComponentLabel::NGeneric => f.write_str("N_gen"),
            ComponentLabel::K(s) => write!(f, "K{s}"),
            ComponentLabel::L { set, tag: None } => write!(f, "L{set}"),
            ComponentLabel::L { set, tag: Some(t) } => write!(f, "L{set},{t}"),
            ComponentLabel::H(p) => write!(f, "H{p}"),
            ComponentLabel::BulkGeneric => f.write_str("bulk"),
            ComponentLabel::QOther => f.write_str("Q_other"),
            ComponentLabel::NilOther => f.write_str("nil_other"),
        }
    }
}

impl FromStr for ComponentLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "N_gen" => return Ok(ComponentLabel::NGeneric),
            "bulk" => return Ok(ComponentLabel::BulkGeneric),
            "Q_other" => return Ok(ComponentLabel::QOther),
            "nil_other" => return Ok(ComponentLabel::NilOther),
            _ => {}
        }
        let bad = || Error::Parse(format!("bad component label {s:?}"));
        let (head, rest) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        match head {
            "N" => Ok(ComponentLabel::N(rest.parse()?)),
            "K" => Ok(ComponentLabel::K(rest.parse()?)),
            "H" => Ok(ComponentLabel::H(rest.parse()?)),
            "L" => {
                let (set, tag) = match rest.rsplit_once(',') {
                    Some((a, b)) if a.ends_with('}') => {
                        (a, Some(b.trim().parse::<u8>().map_err(|_| bad())?))
                    }
                    _ => (rest, None),
                };
                Ok(ComponentLabel::L {
                    set: set.parse()?,
                    tag,
                })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        let labels = [
            ComponentLabel::N(MarkSubset::of(&[1, 2])),
            ComponentLabel::NGeneric,
            ComponentLabel::K(MarkSubset::EMPTY),
            ComponentLabel::l(MarkSubset::of(&[2, 3, 4])),
            ComponentLabel::L {
                set: MarkSubset::FULL,
                tag: Some(1),
            },
            ComponentLabel::H(Partition::new(MarkSubset::of(&[3, 4]))),
            ComponentLabel::BulkGeneric,
            ComponentLabel::QOther,
            ComponentLabel::NilOther,
        ];
        for l in labels {
            assert_eq!(l.to_string().parse::<ComponentLabel>().unwrap(), l, "{l}");
        }
        assert_eq!(
            ComponentLabel::H(Partition::new(MarkSubset::of(&[3, 4]))).to_string(),
            "H{1,2}|{3,4}"
        );
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(Parity::Even).len(), 4);
        assert_eq!(Partition::all(Parity::Odd)[0].to_string(), "{1}|{2,3,4}");
        assert_eq!(Partition::all(Parity::Even)[0].to_string(), "{}|{1,2,3,4}");
        assert_eq!(
            "34".parse::<Partition>().unwrap(),
            Partition::new(MarkSubset::of(&[1, 2]))
        );
    }
}
