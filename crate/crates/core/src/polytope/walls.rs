use std::fmt;
use std::str::FromStr;

use super::subset::{MarkSubset, Parity};
use super::weights::{beta_at_vertex, beta_sum, WeightVector};
use crate::algebra::{qi, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallKind {
    Boundary,
    Interior,
}

/// The hyperplane `H_{I,k} = {β_I = k}` in canonical labelling.
///
/// Two labels name the same hyperplane: `(I, |I|−3) ~ (I^c, |I^c|−1)` and
/// `(I, |I|−2) ~ (I^c, |I^c|−2)`. Boundary walls keep the `|I|−3` label (the
/// subset whose exterior chamber the wall cuts off); interior walls keep the
/// smaller subset, ties broken by bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    subset: MarkSubset,
    level: i64,
}

impl Wall {
    /// Canonicalizes any label `(I, k)` with `k ∈ {|I|−1, |I|−2, |I|−3}`.
    pub fn new(subset: MarkSubset, level: i64) -> Result<Self> {
        let n = subset.len() as i64;
        let c = subset.complement();
        let w = if level == n - 3 {
            Wall { subset, level }
        } else if level == n - 1 {
            Wall {
                subset: c,
                level: c.len() as i64 - 3,
            }
        } else if level == n - 2 {
            if subset.size_key() <= c.size_key() {
                Wall { subset, level }
            } else {
                Wall {
                    subset: c,
                    level: c.len() as i64 - 2,
                }
            }
        } else {
            return Err(Error::Invalid(format!(
                "level {level} is not a wall level for {subset}"
            )));
        };
        Ok(w)
    }

    pub fn subset(&self) -> MarkSubset {
        self.subset
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn kind(&self) -> WallKind {
        if self.level == self.subset.len() as i64 - 2 {
            WallKind::Interior
        } else {
            WallKind::Boundary
        }
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.level)
    }

    /// The other label naming the same hyperplane.
    pub fn alias(&self) -> (MarkSubset, i64) {
        (self.subset.complement(), -self.level)
    }

    /// `β_I − k`; zero exactly on the wall.
    pub fn offset(&self, b: &WeightVector) -> Rational {
        beta_sum(b, self.subset) - qi(self.level)
    }

    pub fn contains(&self, b: &WeightVector) -> bool {
        beta_sum(b, self.subset) == qi(self.level)
    }

    pub fn contains_vertex(&self, v: MarkSubset) -> bool {
        beta_at_vertex(self.subset, v) == self.level
    }

    /// For boundary walls, the subset `I` of the exterior chamber `C_I` it bounds.
    pub fn exterior_subset(&self) -> Option<MarkSubset> {
        (self.kind() == WallKind::Boundary).then_some(self.subset)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{{{},{}}}", self.subset, self.level)
    }
}

impl FromStr for Wall {
    type Err = Error;
    /// Parses `H_{{1,2},0}` or the short form `12:0`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix("H_{")
            .and_then(|r| r.strip_suffix('}'))
            .or_else(|| t.strip_prefix("H{").and_then(|r| r.strip_suffix('}')));
        let (set, lvl) = match body {
            Some(b) => {
                let close = b
                    .rfind('}')
                    .ok_or_else(|| Error::Parse(format!("bad wall {s:?}")))?;
                let lvl = b[close + 1..].trim_start_matches(',');
                (&b[..=close], lvl)
            }
            None => t
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("bad wall {s:?}")))?,
        };
        let subset = MarkSubset::parse_compact(set)?;
        let level: i64 = lvl
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad wall level in {s:?}")))?;
        Wall::new(subset, level).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All canonical walls of a parity: 8 boundary then 4 interior, each group
/// sorted by subset size then bitmask.
pub fn wall_list(parity: Parity) -> Vec<Wall> {
    let mut out: Vec<Wall> = Vec::new();
    for s in MarkSubset::all() {
        let n = s.len() as i64;
        for level in [n - 1, n - 2, n - 3] {
            if Parity::of(level) != parity {
                continue;
            }
            let w = Wall::new(s, level).expect("valid level");
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out.sort_by_key(|w| (w.kind(), w.subset.size_key(), w.level));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_walls_per_parity() {
        for p in Parity::both() {
            let ws = wall_list(p);
            assert_eq!(ws.len(), 12);
            assert_eq!(
                ws.iter().filter(|w| w.kind() == WallKind::Boundary).count(),
                8
            );
            assert!(ws.iter().all(|w| w.parity() == p));
        }
    }

    #[test]
    fn identifications() {
        let a = Wall::new(MarkSubset::of(&[2, 3, 4]), 2).unwrap();
        assert_eq!(a, Wall::new(MarkSubset::of(&[1]), -2).unwrap());
        let b = Wall::new(MarkSubset::of(&[3, 4]), 0).unwrap();
        assert_eq!(b.subset(), MarkSubset::of(&[1, 2]));
        let c = Wall::new(MarkSubset::of(&[1, 2, 3]), 1).unwrap();
        assert_eq!(c.subset(), MarkSubset::of(&[4]));
        assert_eq!(c.level(), -1);
        assert_eq!(c.kind(), WallKind::Interior);
        assert!(Wall::new(MarkSubset::of(&[1]), 3).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for p in Parity::both() {
            for w in wall_list(p) {
                assert_eq!(w.to_string().parse::<Wall>().unwrap(), w);
            }
        }
        assert_eq!("34:0".parse::<Wall>().unwrap().to_string(), "H_{{1,2},0}");
    }
}
