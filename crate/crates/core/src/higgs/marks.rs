use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{qi, BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};
use crate::polytope::{MarkSubset, Parity};

/// Splitting type `O(m1) ⊕ O(m2)` with `m1 ≥ m2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Splitting {
    pub m1: i64,
    pub m2: i64,
}

impl Splitting {
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        if m1 < m2 {
            return Err(Error::Invalid(format!(
                "splitting needs m1 >= m2, got ({m1},{m2})"
            )));
        }
        Ok(Splitting { m1, m2 })
    }

    /// The splitting of degree `d` with `m1 − m2 = delta`.
    pub fn with_gap(d: i64, delta: i64) -> Result<Self> {
        if delta < 0 || (d - delta).rem_euclid(2) != 0 {
            return Err(Error::Invalid(format!(
                "no splitting of degree {d} with gap {delta}"
            )));
        }
        Splitting::new((d + delta) / 2, (d - delta) / 2)
    }

    pub fn degree(&self) -> i64 {
        self.m1 + self.m2
    }

    pub fn gap(&self) -> i64 {
        self.m1 - self.m2
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.degree())
    }

    pub fn evenly_split(&self) -> bool {
        self.gap() <= 1
    }

    /// Degree of the `v` slot.
    pub fn v_degree(&self) -> usize {
        (self.gap() + 2) as usize
    }

    /// Degree of the `w` slot, absent when the gap exceeds 2.
    pub fn w_degree(&self) -> Option<usize> {
        let d = 2 - self.gap();
        (d >= 0).then_some(d as usize)
    }

    /// The two splittings of a parity carrying stable points, for base `m`:
    /// even `(m,m)`, `(m+1,m−1)`; odd `(m+1,m)`, `(m+2,m−1)`.
    pub fn admissible(parity: Parity, m: i64) -> [Splitting; 2] {
        match parity {
            Parity::Even => [
                Splitting { m1: m, m2: m },
                Splitting {
                    m1: m + 1,
                    m2: m - 1,
                },
            ],
            Parity::Odd => [
                Splitting { m1: m + 1, m2: m },
                Splitting {
                    m1: m + 2,
                    m2: m - 1,
                },
            ],
        }
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// The marked points `z1, 0, 1, ∞` and the quartic `P = ℓ1ℓ2ℓ3ℓ4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedPoints {
    z1: Rational,
}

impl MarkedPoints {
    pub fn new(z1: Rational) -> Result<Self> {
        if z1.is_zero() || z1.is_one() {
            return Err(Error::Invalid(format!(
                "z1 = {z1} collides with another marked point"
            )));
        }
        Ok(MarkedPoints { z1 })
    }

    pub fn z1(&self) -> &Rational {
        &self.z1
    }

    pub fn point(&self, i: u8) -> ProjPoint {
        match i {
            1 => ProjPoint::affine(self.z1.clone()),
            2 => ProjPoint::affine(qi(0)),
            3 => ProjPoint::affine(qi(1)),
            4 => ProjPoint::infinity(),
            _ => panic!("mark {i} out of range"),
        }
    }

    pub fn points(&self) -> [ProjPoint; 4] {
        [1, 2, 3, 4].map(|i| self.point(i))
    }

    /// `ℓ1 = Z0 − z1 Z1`, `ℓ2 = Z0`, `ℓ3 = Z0 − Z1`, `ℓ4 = Z1`.
    pub fn linear(&self, i: u8) -> BinaryForm {
        match i {
            1 => BinaryForm::linear(qi(1), -self.z1.clone()),
            2 => BinaryForm::linear(qi(1), qi(0)),
            3 => BinaryForm::linear(qi(1), qi(-1)),
            4 => BinaryForm::linear(qi(0), qi(1)),
            _ => panic!("mark {i} out of range"),
        }
    }

    /// `Π_{i∈I} ℓ_i`.
    pub fn linear_product(&self, set: MarkSubset) -> BinaryForm {
        set.elements()
            .fold(BinaryForm::one(), |acc, i| &acc * &self.linear(i))
    }

    pub fn quartic(&self) -> BinaryForm {
        self.linear_product(MarkSubset::FULL)
    }

    /// `P'(z_i)` for the affine cubic `P(z,1) = (z − z1) z (z − 1)`; finite marks only.
    pub fn quartic_derivative(&self, i: u8) -> Rational {
        assert!(i != 4, "no affine derivative at infinity");
        let zi = self.point(i).a().clone();
        (1..=3u8)
            .filter(|&k| k != i)
            .fold(Rational::one(), |acc, k| acc * (&zi - self.point(k).a()))
    }
}

impl Default for MarkedPoints {
    fn default() -> Self {
        MarkedPoints { z1: qi(2) }
    }
}
