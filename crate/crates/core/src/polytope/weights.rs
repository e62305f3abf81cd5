use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::subset::{MarkSubset, Parity};
use crate::algebra::{parse_rational, q, qi, Rational};
use crate::error::{Error, Result};

/// Parabolic weights `β_1..β_4 ∈ [0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector([Rational; 4]);

impl WeightVector {
    pub fn new(b: [Rational; 4]) -> Result<Self> {
        for (i, x) in b.iter().enumerate() {
            if x.is_negative() || *x >= Rational::one() {
                return Err(Error::Invalid(format!(
                    "β_{} = {x} is outside [0,1)",
                    i + 1
                )));
            }
        }
        Ok(WeightVector(b))
    }

    /// No range check; for points of the closed cube such as vertices.
    pub(crate) fn raw(b: [Rational; 4]) -> Self {
        WeightVector(b)
    }

    pub fn from_ratios(v: [(i64, i64); 4]) -> Result<Self> {
        Self::new(v.map(|(n, d)| q(n, d)))
    }

    pub fn get(&self, i: u8) -> &Rational {
        &self.0[usize::from(i - 1)]
    }

    pub fn as_array(&self) -> &[Rational; 4] {
        &self.0
    }

    /// Numerators over the least common denominator, and that denominator.
    pub(crate) fn scaled(&self) -> ([BigInt; 4], BigInt) {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        (self.0.clone().map(|x| x.numer() * (&den / x.denom())), den)
    }

    /// All coordinates strictly inside `(0,1)`.
    pub fn is_open(&self) -> bool {
        self.0
            .iter()
            .all(|x| x.is_positive() && *x < Rational::one())
    }

    /// Convex combination `Σ w_k p_k / Σ w_k`.
    pub fn barycenter(points: &[(Rational, WeightVector)]) -> WeightVector {
        let total = points.iter().fold(Rational::zero(), |acc, (w, _)| acc + w);
        let mut out: [Rational; 4] = Default::default();
        for (w, p) in points {
            for (o, x) in out.iter_mut().zip(&p.0) {
                *o += w * x;
            }
        }
        WeightVector(out.map(|x| x / &total))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;
    /// Four comma-separated rationals, e.g. `1/10,2/10,3/10,5/10`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected four weights, got {}",
                parts.len()
            )));
        }
        let mut b: [Rational; 4] = Default::default();
        for (slot, p) in b.iter_mut().zip(parts) {
            *slot = parse_rational(p)?;
        }
        WeightVector::new(b)
    }
}

/// `β_I = Σ_{i∈I} β_i − Σ_{i∉I} β_i`.
pub fn beta_sum(b: &WeightVector, set: MarkSubset) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=4 {
        if set.contains(i) {
            acc += b.get(i);
        } else {
            acc -= b.get(i);
        }
    }
    acc
}

/// The cube corner `v_I`: coordinate 1 exactly on `I^c`.
pub fn vertex_of_subset(set: MarkSubset) -> WeightVector {
    WeightVector::raw([1u8, 2, 3, 4].map(|i| if set.contains(i) { qi(0) } else { qi(1) }))
}

/// `β_I` at the vertex `v_J`, as an integer.
pub fn beta_at_vertex(set: MarkSubset, vertex: MarkSubset) -> i64 {
    let ones = vertex.complement();
    set.intersection(ones).len() as i64 - set.complement().intersection(ones).len() as i64
}

/// The apex `(1/2,1/2,1/2,1/2)`.
pub fn apex() -> WeightVector {
    WeightVector::raw([q(1, 2), q(1, 2), q(1, 2), q(1, 2)])
}

/// Existence of a semistable parabolic bundle of degree `d` with weights `β`:
/// `β_I ≤ |I| − 1` whenever `|I| − 1 ≡ d (mod 2)`.
pub fn semistable_parabolic_exists(b: &WeightVector, d: i64) -> bool {
    MarkSubset::all()
        .filter(|s| Parity::of(s.len() as i64 - 1) == Parity::of(d))
        .all(|s| beta_sum(b, s) <= qi(s.len() as i64 - 1))
}

/// The strict version of [`semistable_parabolic_exists`].
pub fn stable_parabolic_bound(b: &WeightVector, d: i64) -> bool {
    MarkSubset::all()
        .filter(|s| Parity::of(s.len() as i64 - 1) == Parity::of(d))
        .all(|s| beta_sum(b, s) < qi(s.len() as i64 - 1))
}

/// Lift to SU(2) weights `α_{i1} = (1 − β_i)/2`, `α_{i2} = 1 − α_{i1}`.
pub fn beta_to_su2(b: &WeightVector) -> Result<[(Rational, Rational); 4]> {
    if !b.is_open() {
        return Err(Error::DegenerateWeight);
    }
    Ok(b.0.clone().map(|x| {
        let a1 = (Rational::one() - x) / qi(2);
        let a2 = Rational::one() - &a1;
        (a1, a2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_sum_examples() {
        let half = WeightVector::from_ratios([(1, 2); 4]).unwrap();
        assert_eq!(beta_sum(&half, MarkSubset::of(&[1, 3])), qi(0));
        let b = WeightVector::from_ratios([(1, 10), (2, 10), (3, 10), (5, 10)]).unwrap();
        assert_eq!(beta_sum(&b, MarkSubset::of(&[1, 2])), q(-1, 2));
        assert_eq!(beta_sum(&b, MarkSubset::FULL), q(11, 10));
    }

    #[test]
    fn vertices() {
        assert_eq!(
            vertex_of_subset(MarkSubset::of(&[1, 2])).to_string(),
            "0,0,1,1"
        );
        assert_eq!(vertex_of_subset(MarkSubset::EMPTY).to_string(), "1,1,1,1");
        assert_eq!(vertex_of_subset(MarkSubset::FULL).to_string(), "0,0,0,0");
        for s in MarkSubset::all() {
            for v in MarkSubset::all() {
                assert_eq!(qi(beta_at_vertex(s, v)), beta_sum(&vertex_of_subset(v), s));
            }
        }
    }

    #[test]
    fn semistable_existence_examples() {
        let b = WeightVector::from_ratios([(1, 10), (2, 10), (3, 10), (5, 10)]).unwrap();
        assert!(semistable_parabolic_exists(&b, 0));
        let c = WeightVector::from_ratios([(9, 10), (1, 20), (1, 20), (1, 20)]).unwrap();
        assert!(!semistable_parabolic_exists(&c, 0));
        let h = WeightVector::from_ratios([(1, 2); 4]).unwrap();
        assert!(semistable_parabolic_exists(&h, 1));
    }

    #[test]
    fn su2_lift() {
        let h = WeightVector::from_ratios([(1, 2); 4]).unwrap();
        assert_eq!(beta_to_su2(&h).unwrap()[0], (q(1, 4), q(3, 4)));
        let z = WeightVector::from_ratios([(0, 1), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(beta_to_su2(&z), Err(Error::DegenerateWeight));
        assert!(WeightVector::from_ratios([(1, 1), (1, 2), (1, 2), (1, 2)]).is_err());
    }
}
