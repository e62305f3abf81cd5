use num_traits::{One, Zero};

use super::field::{nilpotent_kernel, HiggsField, Qph};
use super::locus::compatible_fields;
use super::marks::{MarkedPoints, Splitting};
use crate::algebra::{qi, BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};
use crate::label::{ComponentLabel, Partition};
use crate::polytope::MarkSubset;

/// What to build a representative of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSpec {
    /// A point of the named family; `modulus` picks the point inside it
    /// (a slope for affine-line families, a point for projective-line
    /// families, the scalar for the punctured line, the invariant for the
    /// generic families).
    Block {
        label: ComponentLabel,
        splitting: Splitting,
        modulus: Option<ProjPoint>,
    },
    /// The Hitchin-section point over `q` for a partition.
    Hitchin {
        partition: Partition,
        q: Rational,
        splitting: Splitting,
    },
}

fn e1() -> ProjPoint {
    ProjPoint::infinity()
}

fn e2() -> ProjPoint {
    ProjPoint::affine(Rational::zero())
}

fn slope(x: Rational) -> ProjPoint {
    ProjPoint::affine(x)
}

fn idx(i: u8) -> usize {
    usize::from(i - 1)
}

/// A non-marked point used when no modulus is given.
pub fn default_point(marks: &MarkedPoints) -> ProjPoint {
    let c = if *marks.z1() == qi(-1) {
        qi(-2)
    } else {
        qi(-1)
    };
    ProjPoint::affine(c)
}

fn affine_modulus(m: &Option<ProjPoint>) -> Result<Rational> {
    match m {
        None => Ok(Rational::one()),
        Some(p) => p
            .slope()
            .cloned()
            .ok_or_else(|| Error::Invalid("modulus must be finite here".into())),
    }
}

fn unrealizable(label: &ComponentLabel, s: Splitting) -> Error {
    Error::Invalid(format!("{label} has no points on {s}"))
}

/// A point of the named family or Hitchin section.
pub fn canonical_representative(spec: &RepSpec, marks: &MarkedPoints) -> Result<Qph> {
    match spec {
        RepSpec::Hitchin {
            partition,
            q,
            splitting,
        } => hitchin_point(*partition, q, *splitting, marks),
        RepSpec::Block {
            label,
            splitting,
            modulus,
        } => block_point(label, *splitting, modulus, marks),
    }
}

fn hitchin_point(part: Partition, q: &Rational, s: Splitting, marks: &MarkedPoints) -> Result<Qph> {
    if q.is_zero() {
        return Err(Error::Invalid("Hitchin sections need q ≠ 0".into()));
    }
    let small = part.small();
    if s.gap() != 2 - small.len() as i64 {
        return Err(Error::Invalid(format!(
            "partition {part} lives on splittings of gap {}",
            2 - small.len() as i64
        )));
    }
    let (vset, wset) = if s.gap() == 0 {
        (small, part.large())
    } else {
        (part.large(), small)
    };
    let v = marks.linear_product(vset);
    let w = marks.linear_product(wset).scale(q);
    let phi = HiggsField::new(s, BinaryForm::zero(2), v, Some(w))?;
    let probe = Qph::bare(s, marks.clone(), marks.points()).with_phi(phi.clone());
    let flags = [1u8, 2, 3, 4].map(|i| {
        nilpotent_kernel(&probe.residue(i)).expect("residues of a Hitchin point are nonzero")
    });
    Qph::new(s, marks.clone(), flags, phi)
}

fn block_point(
    label: &ComponentLabel,
    s: Splitting,
    modulus: &Option<ProjPoint>,
    marks: &MarkedPoints,
) -> Result<Qph> {
    let gap = s.gap();
    let point = || modulus.clone().unwrap_or_else(|| default_point(marks));
    let ell_z = || BinaryForm::vanishing_at(&point());
    let mut flags = [e2(), e2(), e2(), e2()];
    let phi;
    match *label {
        ComponentLabel::N(set) => {
            phi = HiggsField::zero(s);
            let rest: Vec<u8> = set.complement().elements().collect();
            match (gap, set.len()) {
                (0, 2) => {
                    set.elements().for_each(|i| flags[idx(i)] = e1());
                    flags[idx(rest[1])] = slope(qi(1));
                }
                (0, 4) => flags = marks.points(),
                (2, 0) => flags[0] = slope(qi(1)),
                (1, 1) => {
                    set.elements().for_each(|i| flags[idx(i)] = e1());
                    flags[idx(rest[2])] = slope(qi(1));
                }
                (1, 3) => flags[idx(rest[0])] = slope(qi(1)),
                _ => return Err(unrealizable(label, s)),
            }
        }
        ComponentLabel::NGeneric => {
            phi = HiggsField::zero(s);
            flags = generic_flags(s, modulus, marks)?;
        }
        ComponentLabel::BulkGeneric => {
            flags = generic_flags(s, modulus, marks)?;
            let basis = compatible_fields(&flags, s, marks);
            phi = basis
                .into_iter()
                .find(|f| !f.is_nilpotent())
                .ok_or_else(|| unrealizable(label, s))?;
        }
        ComponentLabel::H(part) => {
            let q = modulus
                .as_ref()
                .and_then(|p| p.slope().cloned())
                .unwrap_or_else(Rational::one);
            return hitchin_point(part, &q, s, marks);
        }
        ComponentLabel::K(set) => {
            let rest: Vec<u8> = set.complement().elements().collect();
            set.elements().for_each(|i| flags[idx(i)] = e1());
            let v = match (gap, set.len()) {
                (1, 1) => {
                    flags[idx(rest[2])] = slope(affine_modulus(modulus)?);
                    marks.linear_product(set.complement())
                }
                (1, 2) | (2, 1) | (3, 0) => &marks.linear_product(set.complement()) * &ell_z(),
                (2, 0) => {
                    flags[0] = slope(affine_modulus(modulus)?);
                    marks.quartic()
                }
                _ => return Err(unrealizable(label, s)),
            };
            phi = HiggsField::upper(s, v)?;
        }
        ComponentLabel::L { set, tag } => {
            let rest: Vec<u8> = set.complement().elements().collect();
            match (gap, set.len(), tag) {
                (0, 2, None) => {
                    set.elements().for_each(|i| flags[idx(i)] = e1());
                    flags[idx(rest[0])] = slope(affine_modulus(modulus)?);
                    phi = HiggsField::upper(s, marks.linear_product(set.complement()))?;
                }
                (0, 3, None) => {
                    set.elements().for_each(|i| flags[idx(i)] = e1());
                    phi = HiggsField::upper(s, &marks.linear_product(set.complement()) * &ell_z())?;
                }
                (0, 4, Some(1)) => {
                    let c = affine_modulus(modulus)?;
                    if c.is_zero() {
                        return Err(Error::Invalid(
                            "the punctured-line modulus must be nonzero".into(),
                        ));
                    }
                    let mono = |k: usize| {
                        let mut co = vec![Rational::zero(); 3];
                        co[k] = c.clone();
                        BinaryForm::new(co)
                    };
                    phi = HiggsField::new(s, mono(1), mono(0), Some(mono(2)))?;
                    flags = marks.points();
                }
                (2, 4, Some(0)) => phi = HiggsField::lower(s, BinaryForm::one())?,
                (1, 4, None) => phi = HiggsField::lower(s, ell_z())?,
                (1, 3, None) => {
                    let f = affine_modulus(modulus)?;
                    flags[idx(rest[0])] = ProjPoint::new(Rational::one(), f)?;
                    phi = HiggsField::lower(s, marks.linear_product(set.complement()))?;
                }
                _ => return Err(unrealizable(label, s)),
            }
        }
        ComponentLabel::QOther | ComponentLabel::NilOther => return Err(unrealizable(label, s)),
    }
    Qph::new(s, marks.clone(), flags, phi)
}

/// Every family with points on the splitting, in a fixed order.
pub fn realizable_labels(s: Splitting) -> Vec<ComponentLabel> {
    use ComponentLabel as C;
    let sized = |k: usize| MarkSubset::all().filter(move |t| t.len() == k);
    let mut out = Vec::new();
    match s.gap() {
        0 => {
            out.extend(sized(2).map(C::N));
            out.push(C::N(MarkSubset::FULL));
            out.push(C::NGeneric);
            out.extend(sized(2).map(C::l));
            out.extend(sized(3).map(C::l));
            out.push(C::L {
                set: MarkSubset::FULL,
                tag: Some(1),
            });
            out.extend(
                Partition::all(crate::polytope::Parity::Even)
                    .into_iter()
                    .filter(|p| !p.small().is_empty())
                    .map(C::H),
            );
            out.push(C::BulkGeneric);
        }
        1 => {
            out.extend(sized(1).map(C::N));
            out.extend(sized(3).map(C::N));
            out.push(C::NGeneric);
            out.extend(sized(1).map(C::K));
            out.extend(sized(2).map(C::K));
            out.extend(sized(3).map(C::l));
            out.push(C::l(MarkSubset::FULL));
            out.extend(
                Partition::all(crate::polytope::Parity::Odd)
                    .into_iter()
                    .map(C::H),
            );
            out.push(C::BulkGeneric);
        }
        2 => {
            out.push(C::N(MarkSubset::EMPTY));
            out.push(C::K(MarkSubset::EMPTY));
            out.extend(sized(1).map(C::K));
            out.push(C::L {
                set: MarkSubset::FULL,
                tag: Some(0),
            });
            out.push(C::H(Partition::new(MarkSubset::EMPTY)));
        }
        3 => out.push(C::K(MarkSubset::EMPTY)),
        _ => {}
    }
    out
}

/// Flags in `U'` with prescribed invariant.
fn generic_flags(
    s: Splitting,
    modulus: &Option<ProjPoint>,
    marks: &MarkedPoints,
) -> Result<[ProjPoint; 4]> {
    let c = modulus.clone().unwrap_or_else(|| default_point(marks));
    let c = match c.slope() {
        Some(x) if !marks.points().contains(&c) => x.clone(),
        _ => {
            return Err(Error::Invalid(format!(
                "generic orbits have invariant off the marks, got {c}"
            )))
        }
    };
    match s.gap() {
        0 => Ok([slope(c), e2(), slope(qi(1)), e1()]),
        1 => {
            let z1 = marks.z1();
            let x = z1 * (z1 - qi(1)) / (z1 - &c);
            Ok([slope(x), e2(), e2(), slope(qi(1))])
        }
        _ => Err(Error::Invalid(format!("no generic orbits on {s}"))),
    }
}
