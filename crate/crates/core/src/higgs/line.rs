use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{HiggsField, Qph};
use super::marks::{MarkedPoints, Splitting};
use crate::algebra::{bf_gcd_all, nullspace, qi, BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};
use crate::polytope::MarkSubset;

/// A saturated line sub-bundle `O(j) → O(m1) ⊕ O(m2)` given by `(s1, s2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineSubbundle {
    pub j: i64,
    pub s1: BinaryForm,
    /// Absent when `m2 − j < 0`.
    pub s2: Option<BinaryForm>,
}

impl LineSubbundle {
    pub fn new(
        splitting: Splitting,
        j: i64,
        s1: BinaryForm,
        s2: Option<BinaryForm>,
    ) -> Result<Self> {
        let d1 = splitting.m1 - j;
        let d2 = splitting.m2 - j;
        let ok = d1 >= 0
            && s1.degree() as i64 == d1
            && match &s2 {
                Some(f) => f.degree() as i64 == d2,
                None => d2 < 0,
            };
        if !ok {
            return Err(Error::Invalid(format!(
                "section degrees do not match a degree {j} line in {splitting}"
            )));
        }
        let l = LineSubbundle { j, s1, s2 };
        if !l.is_saturated() {
            return Err(Error::Invalid("sections have a common zero".into()));
        }
        Ok(l)
    }

    /// The first summand `(1, 0)`.
    pub fn first_summand(s: Splitting) -> Self {
        let s2 = (s.m2 >= s.m1).then(|| BinaryForm::zero(0));
        LineSubbundle {
            j: s.m1,
            s1: BinaryForm::one(),
            s2,
        }
    }

    /// The second summand `(0, 1)`.
    pub fn second_summand(s: Splitting) -> Self {
        LineSubbundle {
            j: s.m2,
            s1: BinaryForm::zero(s.gap() as usize),
            s2: Some(BinaryForm::one()),
        }
    }

    pub fn is_saturated(&self) -> bool {
        pair_gcd_degree(&self.s1, self.s2.as_ref()).is_some_and(|k| k == 0)
    }

    /// `[s1(p) : s2(p)]`.
    pub fn eval(&self, p: &ProjPoint) -> ProjPoint {
        let b = self.s2.as_ref().map_or_else(Rational::zero, |f| f.eval(p));
        ProjPoint::new(self.s1.eval(p), b).expect("saturated sections never vanish together")
    }
}

impl fmt::Display for LineSubbundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j = {}: ({}, ", self.j, self.s1)?;
        match &self.s2 {
            Some(s) => write!(f, "{s})"),
            None => f.write_str("-)"),
        }
    }
}

/// Degree of `gcd(s1, s2)`; `None` when both vanish.
fn pair_gcd_degree(s1: &BinaryForm, s2: Option<&BinaryForm>) -> Option<usize> {
    bf_gcd_all(std::iter::once(s1).chain(s2)).map(|g| g.degree())
}

/// The invariant line `L(Φ)` of a nonzero nilpotent field.
pub fn kernel_line(phi: &HiggsField, s: Splitting) -> Result<LineSubbundle> {
    if phi.is_zero() || !phi.is_nilpotent() {
        return Err(Error::NoInvariantLine);
    }
    if phi.u.is_zero() && phi.v.is_zero() {
        return Ok(LineSubbundle::second_summand(s));
    }
    let g = bf_gcd_all([&phi.v, &phi.u]).expect("v or u is nonzero");
    let e = g.degree() as i64;
    let j = s.m2 - 2 + e;
    let s1 = phi.v.div_exact(&g).expect("gcd divides v");
    let s2 = if s.m2 - j < 0 {
        None
    } else if phi.u.is_zero() {
        Some(BinaryForm::zero((s.m2 - j) as usize))
    } else {
        Some(phi.u.div_exact(&g).expect("gcd divides u"))
    };
    Ok(LineSubbundle { j, s1, s2 })
}

/// `σ = gcd(u, v, w)` and its degree.
pub fn higgs_divisor(phi: &HiggsField) -> Result<(BinaryForm, usize)> {
    if phi.is_zero() || !phi.is_nilpotent() {
        return Err(Error::NoInvariantLine);
    }
    let g = bf_gcd_all([&phi.u, &phi.v].into_iter().chain(phi.w.as_ref())).expect("nonzero field");
    let k = g.degree();
    Ok((g, k))
}

/// `{i : L(z_i) = F_i}`.
pub fn flags_subset(l: &LineSubbundle, x: &Qph) -> MarkSubset {
    flags_met(l, &x.flags, &x.marks)
}

pub fn flags_met(l: &LineSubbundle, flags: &[ProjPoint; 4], marks: &MarkedPoints) -> MarkSubset {
    let hits: Vec<u8> = (1..=4u8)
        .filter(|&i| l.eval(&marks.point(i)) == flags[usize::from(i - 1)])
        .collect();
    MarkSubset::of(&hits)
}

/// Coefficient counts `(m1 − j + 1, m2 − j + 1)`, clamped at zero.
fn slot_sizes(s: Splitting, j: i64) -> (usize, usize) {
    (
        (s.m1 - j + 1).max(0) as usize,
        (s.m2 - j + 1).max(0) as usize,
    )
}

/// Values of the monomials `Z0^(n−k) Z1^k` at `p`.
fn monomials(n: usize, p: &ProjPoint) -> Vec<Rational> {
    if n == 0 {
        return Vec::new();
    }
    let deg = n - 1;
    if p.is_infinity() {
        return (0..n)
            .map(|k| {
                if k == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
    }
    let x = p.a();
    let mut pw = vec![Rational::one(); n];
    for k in 1..n {
        pw[k] = &pw[k - 1] * x;
    }
    (0..n).map(|k| pw[deg - k].clone()).collect()
}

/// Coefficient vectors of all `(s1, s2)` of degree `j` with `L(z_i) ⊆ F_i`
/// for `i ∈ I` (not necessarily saturated).
#[derive(Clone, Debug)]
pub struct LineSpace {
    pub j: i64,
    pub n1: usize,
    pub n2: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl LineSpace {
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    fn split(&self, x: &[Rational]) -> (BinaryForm, Option<BinaryForm>) {
        let s1 = BinaryForm::new(x[..self.n1].to_vec());
        let s2 = (self.n2 > 0).then(|| BinaryForm::new(x[self.n1..].to_vec()));
        (s1, s2)
    }

    fn combine(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n1 + self.n2];
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += ck * x;
            }
        }
        out
    }

    /// Candidate coefficient vectors: basis vectors, seeded random integer
    /// vectors, then the full grid `{0..=D}^k` where `D` bounds the degree of
    /// the resultant. A nonzero polynomial of degree `D` cannot vanish on the
    /// whole grid, so exhausting it proves no better member exists.
    fn candidates(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        let k = self.basis.len();
        let d = (self.n1 + self.n2).saturating_sub(2) as i64;
        let unit = (0..k).map(move |i| (0..k).map(|l| qi(i64::from(l == i))).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let random: Vec<Vec<Rational>> = (0..32)
            .map(|_| (0..k).map(|_| qi(rng.gen_range(1..=97))).collect())
            .collect();
        let side = (d + 1) as u64;
        let total = side.checked_pow(k as u32).unwrap_or(u64::MAX).min(1 << 20);
        let grid = (1..total).map(move |mut idx| {
            (0..k)
                .map(|_| {
                    let c = (idx % side) as i64;
                    idx /= side;
                    qi(c)
                })
                .collect::<Vec<_>>()
        });
        unit.chain(random)
            .chain(grid)
            .map(move |c| self.combine(&c))
    }

    /// The gcd degree of a generic member. If members evaluate to
    /// independent vectors at a generic point, a generic member vanishes only
    /// on the base locus, the gcd of every basis component. Otherwise all
    /// members are `f·(a, b)` with `deg f` fixed, and any member will do.
    fn generic_gcd_degree(&self) -> Option<usize> {
        let pairs: Vec<(BinaryForm, Option<BinaryForm>)> =
            self.basis.iter().map(|b| self.split(b)).collect();
        let independent = pairs.iter().enumerate().any(|(a, (p1, p2))| {
            pairs[a + 1..].iter().any(|(q1, q2)| match (p2, q2) {
                (Some(p2), Some(q2)) => !(&(p1 * q2) - &(p2 * q1)).is_zero(),
                _ => false,
            })
        });
        if independent {
            bf_gcd_all(
                pairs
                    .iter()
                    .flat_map(|(a, b)| std::iter::once(a).chain(b.as_ref())),
            )
            .map(|g| g.degree())
        } else {
            let (s1, s2) = pairs.first()?;
            pair_gcd_degree(s1, s2.as_ref())
        }
    }

    /// A member with the fewest common zeros, divided by its gcd. The scan
    /// stops at the generic gcd degree, which some candidate attains.
    pub fn best_line(&self) -> Option<LineSubbundle> {
        let floor = self.generic_gcd_degree()?;
        let mut best: Option<(usize, BinaryForm, Option<BinaryForm>)> = None;
        for x in self.candidates() {
            let (s1, s2) = self.split(&x);
            let Some(e) = pair_gcd_degree(&s1, s2.as_ref()) else {
                continue;
            };
            if best.as_ref().is_none_or(|b| e < b.0) {
                best = Some((e, s1, s2));
                if e <= floor {
                    break;
                }
            }
        }
        let (e, s1, s2) = best?;
        let g = bf_gcd_all(std::iter::once(&s1).chain(s2.as_ref())).expect("nonzero");
        let s1 = s1.div_exact(&g).expect("gcd divides");
        let j = self.j + e as i64;
        let s2 = s2.and_then(|f| {
            if f.degree() < e {
                None
            } else if f.is_zero() {
                Some(BinaryForm::zero(f.degree() - e))
            } else {
                Some(f.div_exact(&g).expect("gcd divides"))
            }
        });
        Some(LineSubbundle { j, s1, s2 })
    }

    /// Whether some member is saturated of degree exactly `j`.
    pub fn has_saturated(&self) -> bool {
        self.best_line().is_some_and(|l| l.j == self.j)
    }
}

pub fn line_space(
    flags: &[ProjPoint; 4],
    set: MarkSubset,
    j: i64,
    s: Splitting,
    marks: &MarkedPoints,
) -> LineSpace {
    let (n1, n2) = slot_sizes(s, j);
    let n = n1 + n2;
    if n == 0 {
        return LineSpace {
            j,
            n1,
            n2,
            basis: Vec::new(),
        };
    }
    let rows: Vec<Vec<Rational>> = set
        .elements()
        .map(|i| {
            let p = marks.point(i);
            let f = &flags[usize::from(i - 1)];
            let mut row: Vec<Rational> = monomials(n1, &p).into_iter().map(|m| m * f.b()).collect();
            row.extend(monomials(n2, &p).into_iter().map(|m| -(m * f.a())));
            row
        })
        .collect();
    LineSpace {
        j,
        n1,
        n2,
        basis: nullspace(&rows, n),
    }
}

/// A saturated line through `F_i, i ∈ I`, searched at degree `j`. Its degree
/// exceeds `j` when every solution has common zeros.
pub fn interpolate(
    flags: &[ProjPoint; 4],
    set: MarkSubset,
    j: i64,
    s: Splitting,
    marks: &MarkedPoints,
) -> Option<LineSubbundle> {
    line_space(flags, set, j, s, marks).best_line()
}

/// `B_{I,j}`: some saturated line of degree exactly `j` passes through `F_i, i ∈ I`.
pub fn has_line_through(
    flags: &[ProjPoint; 4],
    set: MarkSubset,
    j: i64,
    s: Splitting,
    marks: &MarkedPoints,
) -> bool {
    line_space(flags, set, j, s, marks).has_saturated()
}

/// `{i : F_i = [1:0]}`; the marks where the flag is the first summand.
pub fn first_summand_set(flags: &[ProjPoint; 4]) -> MarkSubset {
    let hits: Vec<u8> = (1..=4u8)
        .filter(|&i| flags[usize::from(i - 1)].is_infinity())
        .collect();
    MarkSubset::of(&hits)
}
