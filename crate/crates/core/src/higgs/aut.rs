use num_traits::Zero;

use super::field::{HiggsField, Mat2, Qph};
use super::line::LineSubbundle;
use super::marks::Splitting;
use crate::algebra::{BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};

/// An automorphism `[[a, q],[c, d]]` of `O(m1) ⊕ O(m2)`; `q` has degree
/// `m1 − m2` and `c` is only allowed when the summands agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutElement {
    pub a: Rational,
    pub q: BinaryForm,
    pub c: Rational,
    pub d: Rational,
}

impl AutElement {
    pub fn new(s: Splitting, a: Rational, q: BinaryForm, c: Rational, d: Rational) -> Result<Self> {
        if q.degree() as i64 != s.gap() {
            return Err(Error::Invalid(format!("q must have degree {}", s.gap())));
        }
        let g = AutElement { a, q, c, d };
        let invertible = if s.gap() == 0 {
            !g.constant_det().is_zero()
        } else {
            g.c.is_zero() && !g.a.is_zero() && !g.d.is_zero()
        };
        if !invertible {
            return Err(Error::Invalid("automorphism is not invertible".into()));
        }
        Ok(g)
    }

    pub fn identity(s: Splitting) -> Self {
        AutElement {
            a: Rational::from_integer(1.into()),
            q: BinaryForm::zero(s.gap() as usize),
            c: Rational::zero(),
            d: Rational::from_integer(1.into()),
        }
    }

    /// `ad − cq`, meaningful as a number because `cq` is only nonzero when `q` is constant.
    fn constant_det(&self) -> Rational {
        &self.a * &self.d - &self.c * self.q.top()
    }

    pub fn matrix_at(&self, p: &ProjPoint) -> Mat2 {
        [
            [self.a.clone(), self.q.eval(p)],
            [self.c.clone(), self.d.clone()],
        ]
    }

    fn forms(&self) -> FormMat {
        let c = (!self.c.is_zero()).then(|| BinaryForm::constant(self.c.clone()));
        [
            [
                Some(BinaryForm::constant(self.a.clone())),
                Some(self.q.clone()),
            ],
            [c, Some(BinaryForm::constant(self.d.clone()))],
        ]
    }

    fn inverse_forms(&self) -> FormMat {
        let inv = self.constant_det().recip();
        let c = (!self.c.is_zero()).then(|| BinaryForm::constant(-&self.c * &inv));
        [
            [
                Some(BinaryForm::constant(&self.d * &inv)),
                Some(self.q.scale(&-&inv)),
            ],
            [c, Some(BinaryForm::constant(&self.a * &inv))],
        ]
    }

    pub fn apply_line(&self, l: &LineSubbundle) -> LineSubbundle {
        let mut s1 = l.s1.scale(&self.a);
        if let Some(s2) = &l.s2 {
            s1 = &s1 + &(&self.q * s2);
        }
        let s2 = l.s2.as_ref().map(|s2| {
            let mut t = s2.scale(&self.d);
            if !self.c.is_zero() {
                t = &t + &l.s1.scale(&self.c);
            }
            t
        });
        LineSubbundle { j: l.j, s1, s2 }
    }
}

/// Matrices of forms; `None` entries are structurally zero.
type FormMat = [[Option<BinaryForm>; 2]; 2];

fn mat_mul(x: &FormMat, y: &FormMat) -> FormMat {
    let entry = |i: usize, j: usize| {
        let mut acc: Option<BinaryForm> = None;
        for k in 0..2 {
            if let (Some(p), Some(q)) = (&x[i][k], &y[k][j]) {
                let t = p * q;
                acc = Some(match acc {
                    Some(a) => &a + &t,
                    None => t,
                });
            }
        }
        acc
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

fn field_forms(phi: &HiggsField) -> FormMat {
    [
        [Some(phi.u.clone()), Some(-&phi.v)],
        [phi.w.clone(), Some(-&phi.u)],
    ]
}

/// `g·Φ·g⁻¹`.
pub fn conjugate(g: &AutElement, phi: &HiggsField, s: Splitting) -> HiggsField {
    let m = mat_mul(&mat_mul(&g.forms(), &field_forms(phi)), &g.inverse_forms());
    let [[u, v], [w, _]] = m;
    let u = u.unwrap_or_else(|| BinaryForm::zero(2));
    let v = v
        .map(|f| -&f)
        .unwrap_or_else(|| BinaryForm::zero(s.v_degree()));
    let w = s
        .w_degree()
        .map(|k| w.unwrap_or_else(|| BinaryForm::zero(k)));
    HiggsField { u, v, w }
}

/// The action of `g` on a model point: flags move by `g(z_i)`, `Φ ↦ gΦg⁻¹`.
pub fn apply_automorphism(g: &AutElement, x: &Qph) -> Result<Qph> {
    let s = x.splitting;
    if g.q.degree() as i64 != s.gap()
        || (s.gap() > 0 && !g.c.is_zero())
        || g.constant_det().is_zero()
    {
        return Err(Error::Invalid(
            "automorphism does not fit the splitting".into(),
        ));
    }
    let mut flags = x.flags.clone();
    for (i, f) in flags.iter_mut().enumerate() {
        *f = f.transform(&g.matrix_at(&x.marks.point(i as u8 + 1)))?;
    }
    Ok(Qph {
        splitting: s,
        marks: x.marks.clone(),
        flags,
        phi: conjugate(g, &x.phi, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;
    use crate::higgs::line::kernel_line;
    use crate::higgs::marks::MarkedPoints;

    #[test]
    fn swap_moves_upper_to_lower() {
        let s = Splitting::new(0, 0).unwrap();
        let m = MarkedPoints::default();
        let v = &m.linear(3) * &m.linear(4);
        let phi = HiggsField::upper(s, v.clone()).unwrap();
        let x = Qph::new(
            s,
            m.clone(),
            ["inf", "inf", "5", "7"].map(|p| p.parse().unwrap()),
            phi,
        )
        .unwrap();
        let g = AutElement::new(s, qi(0), BinaryForm::one(), qi(1), qi(0)).unwrap();
        let y = apply_automorphism(&g, &x).unwrap();
        assert_eq!(y.phi, HiggsField::lower(s, -&v).unwrap());
        assert_eq!(
            kernel_line(&y.phi, s).unwrap(),
            LineSubbundle::second_summand(s)
        );
        assert_eq!(apply_automorphism(&AutElement::identity(s), &x).unwrap(), x);
    }

    #[test]
    fn rejects_singular() {
        let s = Splitting::new(1, 0).unwrap();
        assert!(AutElement::new(s, qi(1), BinaryForm::zero(1), qi(1), qi(1)).is_err());
        assert!(AutElement::new(s, qi(0), BinaryForm::zero(1), qi(0), qi(1)).is_err());
    }
}
