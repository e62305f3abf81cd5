//! The stability oracle and the combinatorial prediction it is checked against.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{qi, Rational};
use crate::error::{Error, Result};
use crate::higgs::{
    first_summand_set, flags_subset, has_covering_pair, kernel_line, line_space, qp_locus,
    LineSubbundle, QpLocus, Qph,
};
use crate::label::{ComponentLabel, Partition};
use crate::polytope::{beta_sum, Chamber, MarkSubset, Parity, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    /// Every `(I, j)` with `β_I = d − 2j`.
    StrictlySemistable {
        witnesses: Vec<(MarkSubset, i64)>,
    },
    /// The first `(I, j)` of maximal excess.
    Unstable {
        witness: (MarkSubset, i64),
    },
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable)
    }

    pub fn to_json(&self) -> Value {
        let (name, ws): (&str, Vec<(MarkSubset, i64)>) = match self {
            Verdict::Stable => ("stable", Vec::new()),
            Verdict::StrictlySemistable { witnesses } => ("strict", witnesses.clone()),
            Verdict::Unstable { witness } => ("unstable", vec![*witness]),
        };
        let ws: Vec<Value> = ws.iter().map(|(s, j)| json!([s.to_string(), j])).collect();
        json!({"verdict": name, "witnesses": ws})
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Stable => f.write_str("stable"),
            Verdict::StrictlySemistable { witnesses } => {
                let ws: Vec<String> = witnesses
                    .iter()
                    .map(|(s, j)| format!("({s}, {j})"))
                    .collect();
                write!(f, "strictly semistable {}", ws.join(" "))
            }
            Verdict::Unstable { witness: (s, j) } => write!(f, "unstable ({s}, {j})"),
        }
    }
}

/// Invariant lines that can destabilize, as `(I, j)` pairs. For `Φ = 0` this
/// is every pair with a nonzero degree-`j` solution through `F_I`, for `j`
/// in `[⌈(d−4)/2⌉, m2] ∪ {m1}`; a solution with common zeros is dominated by
/// its saturation, so the maximum excess is unchanged.
pub fn destabilizing_candidates(x: &Qph) -> Result<Vec<(MarkSubset, i64)>> {
    x.check_membership()?;
    if x.phi.is_zero() {
        let s = x.splitting;
        let d = s.degree();
        let lo = (d - 4).div_euclid(2) + (d - 4).rem_euclid(2);
        let mut degrees: Vec<i64> = (lo..=s.m2).collect();
        if s.m1 > s.m2 {
            degrees.push(s.m1);
        }
        let mut out = Vec::new();
        for j in degrees {
            for set in MarkSubset::all() {
                if !line_space(&x.flags, set, j, s, &x.marks).is_trivial() {
                    out.push((set, j));
                }
            }
        }
        Ok(out)
    } else if x.phi.is_nilpotent() {
        let l = kernel_line(&x.phi, x.splitting)?;
        Ok(vec![(flags_subset(&l, x), l.j)])
    } else {
        Ok(Vec::new())
    }
}

/// `β_I − (d − 2j)`.
pub fn excess(b: &WeightVector, set: MarkSubset, j: i64, d: i64) -> Rational {
    beta_sum(b, set) - qi(d - 2 * j)
}

pub fn verdict_from(candidates: &[(MarkSubset, i64)], b: &WeightVector, d: i64) -> Verdict {
    let mut best: Option<(Rational, (MarkSubset, i64))> = None;
    let mut tight = Vec::new();
    for &(set, j) in candidates {
        let e = excess(b, set, j, d);
        if e.is_zero() {
            tight.push((set, j));
        }
        if best.as_ref().is_none_or(|(m, _)| e > *m) {
            best = Some((e, (set, j)));
        }
    }
    match best {
        Some((e, w)) if e.is_positive() => Verdict::Unstable { witness: w },
        Some((e, _)) if e.is_zero() => Verdict::StrictlySemistable { witnesses: tight },
        _ => Verdict::Stable,
    }
}

pub fn destabilizing_search(x: &Qph, b: &WeightVector) -> Result<Verdict> {
    let c = destabilizing_candidates(x)?;
    Ok(verdict_from(&c, b, x.splitting.degree()))
}

/// Stable for some weight.
pub fn conditionally_stable(x: &Qph) -> Result<bool> {
    x.check_membership()?;
    if x.phi.is_zero() {
        return Ok(!has_covering_pair(&x.flags, x.splitting, &x.marks));
    }
    if !x.phi.is_nilpotent() {
        return Ok(true);
    }
    let l = kernel_line(&x.phi, x.splitting)?;
    let outside = flags_subset(&l, x).complement().len() as i64;
    Ok(-outside < x.splitting.degree() - 2 * l.j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    /// `Φ = 0`.
    Q,
    /// Nilpotent, invariant line the first summand of a non-balanced splitting.
    R,
    /// Nilpotent with invariant line of degree `j` otherwise.
    S(i64),
    Bulk,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Q => f.write_str("Q"),
            Stratum::R => f.write_str("R"),
            Stratum::S(j) => write!(f, "S_{j}"),
            Stratum::Bulk => f.write_str("bulk"),
        }
    }
}

fn invariant_line(x: &Qph) -> Result<Option<LineSubbundle>> {
    if x.phi.is_zero() || !x.phi.is_nilpotent() {
        return Ok(None);
    }
    kernel_line(&x.phi, x.splitting).map(Some)
}

pub fn stratum_label(x: &Qph) -> Result<Stratum> {
    x.check_membership()?;
    if x.phi.is_zero() {
        return Ok(Stratum::Q);
    }
    match invariant_line(x)? {
        None => Ok(Stratum::Bulk),
        Some(l) if l.j == x.splitting.m1 && x.splitting.gap() > 0 => Ok(Stratum::R),
        Some(l) => Ok(Stratum::S(l.j)),
    }
}

fn equal_pair_partition(x: &Qph) -> Option<Partition> {
    [[1u8, 2], [1, 3], [1, 4]]
        .into_iter()
        .map(|p| MarkSubset::of(&p))
        .find_map(|p| {
            let [a, b]: [u8; 2] = p.elements().collect::<Vec<_>>().try_into().ok()?;
            let [c, d]: [u8; 2] = p
                .complement()
                .elements()
                .collect::<Vec<_>>()
                .try_into()
                .ok()?;
            (x.flag(a) == x.flag(b) && x.flag(c) == x.flag(d)).then(|| Partition::new(p))
        })
}

pub fn component_label(x: &Qph) -> Result<ComponentLabel> {
    let s = x.splitting;
    match stratum_label(x)? {
        Stratum::Q => {
            if s.gap() >= 3 {
                return Ok(ComponentLabel::QOther);
            }
            Ok(match qp_locus(&x.flags, s, &x.marks)? {
                QpLocus::UPrime => ComponentLabel::NGeneric,
                QpLocus::UMinusUPrime => ComponentLabel::N(special_orbit(x)),
                _ => ComponentLabel::QOther,
            })
        }
        Stratum::Bulk => {
            let locus = if s.gap() <= 2 {
                qp_locus(&x.flags, s, &x.marks)?
            } else {
                QpLocus::Other
            };
            if locus != QpLocus::X {
                return Ok(ComponentLabel::BulkGeneric);
            }
            let part = match s.gap() {
                0 => equal_pair_partition(x).expect("X flags pair up"),
                1 => Partition::new(first_summand_set(&x.flags)),
                _ => Partition::new(MarkSubset::EMPTY),
            };
            Ok(ComponentLabel::H(part))
        }
        stratum => {
            if !conditionally_stable(x)? {
                return Ok(ComponentLabel::NilOther);
            }
            let l = kernel_line(&x.phi, s)?;
            let set = flags_subset(&l, x);
            if stratum == Stratum::R {
                return Ok(ComponentLabel::K(set));
            }
            let tag =
                (set == MarkSubset::FULL && s.parity() == Parity::Even).then(|| (s.m2 - l.j) as u8);
            Ok(ComponentLabel::L { set, tag })
        }
    }
}

/// `I` of the special orbit `N_I` for flags in `U \ U'`.
fn special_orbit(x: &Qph) -> MarkSubset {
    let s = x.splitting;
    match s.gap() {
        0 => MarkSubset::all()
            .find(|p| {
                p.len() == 2
                    && p.elements()
                        .map(|i| x.flag(i))
                        .collect::<std::collections::HashSet<_>>()
                        .len()
                        == 1
            })
            .unwrap_or(MarkSubset::FULL),
        1 => {
            let e1 = first_summand_set(&x.flags);
            if !e1.is_empty() {
                e1
            } else {
                MarkSubset::all()
                    .find(|t| {
                        t.len() == 3
                            && crate::higgs::has_line_through(&x.flags, *t, s.m2, s, &x.marks)
                    })
                    .expect("U \\ U' with no first-summand flag has a triple on a line")
            }
        }
        _ => MarkSubset::EMPTY,
    }
}

/// Whether a family's subset has the cardinality parity of the chamber's
/// partition sets (vertical) or the opposite one (horizontal).
fn is_vertical(set: MarkSubset, parity: Parity) -> bool {
    set.parity() == parity
}

/// The combinatorial stability prediction for a family in a chamber.
pub fn predicted_stability(label: &ComponentLabel, chamber: &Chamber) -> Result<bool> {
    let parity = chamber.parity();
    let interior = matches!(chamber, Chamber::Interior(_));
    match label {
        ComponentLabel::BulkGeneric => Ok(true),
        ComponentLabel::H(p) => {
            if p.parity() != parity {
                return Err(Error::Invalid(format!(
                    "H{p} does not occur in {parity} degree"
                )));
            }
            Ok(true)
        }
        ComponentLabel::QOther | ComponentLabel::NilOther => Ok(false),
        ComponentLabel::NGeneric => Ok(interior),
        ComponentLabel::N(set) => {
            if !is_vertical(*set, parity) {
                return Err(Error::Invalid(format!(
                    "{label} does not occur in {parity} degree"
                )));
            }
            Ok(interior && chamber.effective_partition_set().contains(*set))
        }
        ComponentLabel::K(set) | ComponentLabel::L { set, .. } => {
            if let ComponentLabel::L { tag: Some(_), .. } = label {
                if parity != Parity::Even {
                    return Err(Error::Invalid(format!(
                        "{label} does not occur in odd degree"
                    )));
                }
            }
            if is_vertical(*set, parity) {
                Ok(chamber.effective_partition_set().contains(*set))
            } else {
                Ok(matches!(chamber, Chamber::Exterior { subset, .. } if subset == set))
            }
        }
    }
}
