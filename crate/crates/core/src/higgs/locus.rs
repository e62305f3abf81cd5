use std::fmt;

use num_traits::Zero;

use super::field::HiggsField;
use super::line::{first_summand_set, has_line_through};
use super::marks::{MarkedPoints, Splitting};
use crate::algebra::{cross_ratio, nullspace, BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};
use crate::polytope::MarkSubset;

/// Position of a flag configuration relative to the orbit strata of `Φ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QpLocus {
    /// Generic orbits, separated by the invariant.
    UPrime,
    /// The non-generic orbits that still admit no covering pair.
    UMinusUPrime,
    X,
    Y,
    Other,
}

impl fmt::Display for QpLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QpLocus::UPrime => "U'",
            QpLocus::UMinusUPrime => "U\\U'",
            QpLocus::X => "X",
            QpLocus::Y => "Y",
            QpLocus::Other => "other",
        })
    }
}

fn equal_on(flags: &[ProjPoint; 4], set: MarkSubset) -> bool {
    let mut it = set.elements().map(|i| &flags[usize::from(i - 1)]);
    match it.next() {
        Some(first) => it.all(|f| f == first),
        None => true,
    }
}

/// Whether some `L ≅ O(m1)` and `L' ≅ O(m2)` together pass through all four flags.
pub fn has_covering_pair(flags: &[ProjPoint; 4], s: Splitting, marks: &MarkedPoints) -> bool {
    if s.gap() == 0 {
        MarkSubset::all().any(|i| equal_on(flags, i) && equal_on(flags, i.complement()))
    } else {
        let e1 = first_summand_set(flags);
        has_line_through(flags, e1.complement(), s.m2, s, marks)
    }
}

pub fn qp_locus(flags: &[ProjPoint; 4], s: Splitting, marks: &MarkedPoints) -> Result<QpLocus> {
    if s.gap() >= 3 {
        return Err(Error::NoStratification);
    }
    let in_u = !has_covering_pair(flags, s, marks);
    let e1 = first_summand_set(flags);
    let b = |set: MarkSubset| has_line_through(flags, set, s.m2, s, marks);
    let locus = match s.gap() {
        0 => {
            let pairs = [[1u8, 2], [1, 3], [1, 4]].map(|p| MarkSubset::of(&p));
            let distinct = MarkSubset::all()
                .filter(|t| t.len() == 2)
                .all(|t| !equal_on(flags, t));
            let triple = MarkSubset::all().any(|t| t.len() == 3 && equal_on(flags, t));
            let all = equal_on(flags, MarkSubset::FULL);
            let two_pairs = pairs
                .iter()
                .any(|&p| equal_on(flags, p) && equal_on(flags, p.complement()));
            if in_u {
                if distinct && !has_line_through(flags, MarkSubset::FULL, s.m2 - 1, s, marks) {
                    QpLocus::UPrime
                } else {
                    QpLocus::UMinusUPrime
                }
            } else if all {
                QpLocus::Other
            } else if two_pairs {
                QpLocus::X
            } else if triple {
                QpLocus::Y
            } else {
                QpLocus::Other
            }
        }
        1 => {
            let triples = MarkSubset::all().filter(|t| t.len() == 3);
            if in_u {
                if e1.is_empty() && triples.into_iter().all(|t| !b(t)) {
                    QpLocus::UPrime
                } else {
                    QpLocus::UMinusUPrime
                }
            } else if e1.len() == 1 && b(e1.complement()) {
                QpLocus::X
            } else if e1.len() == 2 || (e1.is_empty() && b(MarkSubset::FULL)) {
                QpLocus::Y
            } else {
                QpLocus::Other
            }
        }
        _ => {
            if in_u {
                QpLocus::UMinusUPrime
            } else if e1.is_empty() {
                QpLocus::X
            } else if e1.len() == 1 {
                QpLocus::Y
            } else {
                QpLocus::Other
            }
        }
    };
    Ok(locus)
}

/// The orbit invariant on `U(E)`: the cross-ratio when the summands agree,
/// and for gap 1 the slope left at `z1` after normalizing at `0, 1, ∞`.
pub fn orbit_invariant(
    flags: &[ProjPoint; 4],
    s: Splitting,
    marks: &MarkedPoints,
) -> Result<ProjPoint> {
    if s.gap() >= 2 {
        return Err(Error::Invalid(format!("no orbit invariant on {s}")));
    }
    if has_covering_pair(flags, s, marks) {
        return Err(Error::Invalid("flags are outside U(E)".into()));
    }
    if s.gap() == 0 {
        return cross_ratio(&flags[0], &flags[1], &flags[2], &flags[3]);
    }
    let e1 = first_summand_set(flags);
    if let Some(i) = e1.elements().next() {
        return Ok(marks.point(i));
    }
    let z1 = marks.z1();
    let f: Vec<&Rational> = flags.iter().map(|p| p.a()).collect();
    let n = f[0] - f[1] - z1 * (f[2] - f[1]);
    let d = f[3] - f[2] + f[1];
    let one = Rational::from_integer(1.into());
    ProjPoint::new(z1 * (&n - (z1 - &one) * &d), n)
}

/// Invariant value attached to the orbit family `X` of a partition: the
/// common limit of the invariant along its two neighbouring `B` loci.
pub fn branch_value(s: Splitting, part: MarkSubset, marks: &MarkedPoints) -> Result<ProjPoint> {
    let small = if part.size_key() <= part.complement().size_key() {
        part
    } else {
        part.complement()
    };
    let zero = Rational::zero();
    match (s.gap(), small.len()) {
        (0, 2) => {
            let with_one = if small.contains(1) {
                small
            } else {
                small.complement()
            };
            Ok(match with_one.bits() {
                0b0011 => ProjPoint::affine(zero),
                0b0101 => ProjPoint::affine(Rational::from_integer(1.into())),
                _ => ProjPoint::infinity(),
            })
        }
        (1, 1) => Ok(marks.point(small.elements().next().expect("singleton"))),
        (2, 0) => Ok(marks.point(1)),
        _ => Err(Error::Invalid(format!(
            "{small} does not index an X-orbit on {s}"
        ))),
    }
}

/// Basis of all fields `Φ` compatible with the given flags: nilpotent
/// residues whose kernels contain `F_i`.
pub fn compatible_fields(
    flags: &[ProjPoint; 4],
    s: Splitting,
    marks: &MarkedPoints,
) -> Vec<HiggsField> {
    let nv = s.v_degree() + 1;
    let nw = s.w_degree().map_or(0, |k| k + 1);
    let nf = 3 + nv + nw;
    let n = nf + 4;
    let mono = |deg: usize, p: &ProjPoint| {
        BinaryForm::zero(deg)
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let mut e = BinaryForm::zero(deg);
                let mut c = e.coeffs().to_vec();
                c[k] = Rational::from_integer(1.into());
                e = BinaryForm::new(c);
                e.eval(p)
            })
            .collect::<Vec<_>>()
    };
    let mut rows = Vec::new();
    for i in 1..=4u8 {
        let p = marks.point(i);
        let f = &flags[usize::from(i - 1)];
        let (a, b) = (f.a(), f.b());
        let lam = nf + usize::from(i - 1);
        let slot = |offset: usize, deg: usize, target: Rational| {
            let mut row = vec![Rational::zero(); n];
            for (k, m) in mono(deg, &p).into_iter().enumerate() {
                row[offset + k] = m;
            }
            row[lam] = -target;
            row
        };
        rows.push(slot(0, 2, a * b));
        rows.push(slot(3, s.v_degree(), a * a));
        match s.w_degree() {
            Some(k) => rows.push(slot(3 + nv, k, b * b)),
            None => {
                let mut row = vec![Rational::zero(); n];
                row[lam] = b * b;
                rows.push(row);
            }
        }
    }
    nullspace(&rows, n)
        .into_iter()
        .map(|x| HiggsField::from_vec(s, &x[..nf]))
        .collect()
}
