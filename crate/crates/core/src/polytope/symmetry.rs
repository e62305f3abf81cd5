use std::fmt;

use num_traits::One;

use super::chamber::{Chamber, PartitionSet};
use super::subset::MarkSubset;
use super::weights::WeightVector;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// A signed permutation of the coordinates: first permute (`i ↦ perm[i-1]`),
/// then reflect `β_r ↦ 1 − β_r` for `r` in `refl`. On subsets this is
/// `I ↦ π(I) Δ R`. Even `|R|` gives the D4 symmetries of either polytope;
/// odd `|R|` swaps the two parities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: [u8; 4],
    refl: MarkSubset,
}

impl SignedPerm {
    pub fn new(perm: [u8; 4], refl: MarkSubset) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if !(1..=4).contains(&p) || std::mem::replace(&mut seen[usize::from(p - 1)], true) {
                return Err(Error::Invalid(format!(
                    "{perm:?} is not a permutation of 1..4"
                )));
            }
        }
        Ok(SignedPerm { perm, refl })
    }

    pub fn identity() -> Self {
        SignedPerm {
            perm: [1, 2, 3, 4],
            refl: MarkSubset::EMPTY,
        }
    }

    /// The transposition of `i` and `j`.
    pub fn transposition(i: u8, j: u8) -> Self {
        let mut perm = [1, 2, 3, 4];
        perm.swap(usize::from(i - 1), usize::from(j - 1));
        SignedPerm {
            perm,
            refl: MarkSubset::EMPTY,
        }
    }

    pub fn reflection(refl: MarkSubset) -> Self {
        SignedPerm {
            perm: [1, 2, 3, 4],
            refl,
        }
    }

    pub fn perm(&self) -> [u8; 4] {
        self.perm
    }

    pub fn refl(&self) -> MarkSubset {
        self.refl
    }

    /// Preserves each parity.
    pub fn is_d4(&self) -> bool {
        self.refl.len().is_multiple_of(2)
    }

    pub fn image_of(&self, i: u8) -> u8 {
        self.perm[usize::from(i - 1)]
    }

    pub fn permute(&self, s: MarkSubset) -> MarkSubset {
        MarkSubset::of(&s.elements().map(|i| self.image_of(i)).collect::<Vec<_>>())
    }

    pub fn apply_subset(&self, s: MarkSubset) -> MarkSubset {
        self.permute(s).sym_diff(self.refl)
    }

    pub fn apply_weight(&self, b: &WeightVector) -> WeightVector {
        let mut out: [Rational; 4] = Default::default();
        for i in 1..=4u8 {
            out[usize::from(self.image_of(i) - 1)] = b.get(i).clone();
        }
        for r in self.refl.elements() {
            let slot = &mut out[usize::from(r - 1)];
            *slot = Rational::one() - &*slot;
        }
        WeightVector::raw(out)
    }

    /// Chamber image; for odd `|R|` the image lives in the other parity.
    pub fn apply_chamber(&self, c: &Chamber) -> Chamber {
        let parity = if self.is_d4() {
            c.parity()
        } else {
            c.parity().flip()
        };
        match c {
            Chamber::Exterior { subset, .. } => Chamber::Exterior {
                parity,
                subset: self.apply_subset(*subset),
            },
            Chamber::Interior(p) => {
                let sets: Vec<MarkSubset> =
                    p.sets().iter().map(|&s| self.apply_subset(s)).collect();
                Chamber::Interior(
                    PartitionSet::new(parity, &sets)
                        .expect("signed permutations map partition sets"),
                )
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = other.perm.map(|p| self.image_of(p));
        SignedPerm {
            perm,
            refl: self.permute(other.refl).sym_diff(self.refl),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = [0u8; 4];
        for i in 1..=4u8 {
            perm[usize::from(self.image_of(i) - 1)] = i;
        }
        let inv = SignedPerm {
            perm,
            refl: MarkSubset::EMPTY,
        };
        SignedPerm {
            perm,
            refl: inv.permute(self.refl),
        }
    }

    /// All 384 signed permutations.
    pub fn all() -> Vec<SignedPerm> {
        let mut out = Vec::with_capacity(384);
        for perm in permutations() {
            for refl in MarkSubset::all() {
                out.push(SignedPerm { perm, refl });
            }
        }
        out
    }

    /// The 192 parity-preserving ones.
    pub fn all_d4() -> Vec<SignedPerm> {
        Self::all().into_iter().filter(SignedPerm::is_d4).collect()
    }
}

fn permutations() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4u8 {
        for b in (1..=4).filter(|&b| b != a) {
            for c in (1..=4).filter(|&c| c != a && c != b) {
                let d = 10 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// D4 action on chambers; rejects odd reflection counts.
pub fn d4_apply(g: &SignedPerm, c: &Chamber) -> Result<Chamber> {
    if !g.is_d4() {
        return Err(Error::Invalid(
            "an odd number of reflections swaps the parities; use parity_swap".into(),
        ));
    }
    Ok(g.apply_chamber(c))
}

pub fn d4_apply_weight(g: &SignedPerm, b: &WeightVector) -> Result<WeightVector> {
    if !g.is_d4() {
        return Err(Error::Invalid(
            "an odd number of reflections swaps the parities; use parity_swap".into(),
        ));
    }
    Ok(g.apply_weight(b))
}

/// The reflection `β_1 ↦ 1 − β_1`, which maps even chambers to odd ones and back.
pub fn parity_swap(c: &Chamber) -> Chamber {
    SignedPerm::reflection(MarkSubset::singleton(1)).apply_chamber(c)
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}{}{})·r{}",
            self.perm[0], self.perm[1], self.perm[2], self.perm[3], self.refl
        )
    }
}
