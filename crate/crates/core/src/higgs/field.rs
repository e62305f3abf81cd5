use std::fmt;

use num_traits::Zero;

use super::marks::{MarkedPoints, Splitting};
use crate::algebra::{BinaryForm, ProjPoint, Rational};
use crate::error::{Error, Result};

/// A 2×2 matrix of rationals, row-major.
pub type Mat2 = [[Rational; 2]; 2];

pub fn mat_is_zero(m: &Mat2) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

/// The kernel of a nonzero nilpotent `[[p,q],[r,−p]]`.
pub fn nilpotent_kernel(m: &Mat2) -> Option<ProjPoint> {
    if mat_is_zero(m) {
        return None;
    }
    let (p, q) = (&m[0][0], &m[0][1]);
    if p.is_zero() && q.is_zero() {
        Some(ProjPoint::affine(Rational::zero()))
    } else {
        ProjPoint::new(q.clone(), -p.clone()).ok()
    }
}

/// `Φ = [[u, −v],[w, −u]]`. `w` is `None` when its degree would be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiggsField {
    pub u: BinaryForm,
    pub v: BinaryForm,
    pub w: Option<BinaryForm>,
}

impl HiggsField {
    pub fn new(
        splitting: Splitting,
        u: BinaryForm,
        v: BinaryForm,
        w: Option<BinaryForm>,
    ) -> Result<Self> {
        let f = HiggsField { u, v, w };
        f.check_degrees(splitting)?;
        Ok(f)
    }

    pub fn zero(splitting: Splitting) -> Self {
        HiggsField {
            u: BinaryForm::zero(2),
            v: BinaryForm::zero(splitting.v_degree()),
            w: splitting.w_degree().map(BinaryForm::zero),
        }
    }

    /// Strictly upper triangular `[[0, −v],[0, 0]]`.
    pub fn upper(splitting: Splitting, v: BinaryForm) -> Result<Self> {
        Self::new(
            splitting,
            BinaryForm::zero(2),
            v,
            splitting.w_degree().map(BinaryForm::zero),
        )
    }

    /// Strictly lower triangular `[[0, 0],[w, 0]]`.
    pub fn lower(splitting: Splitting, w: BinaryForm) -> Result<Self> {
        Self::new(
            splitting,
            BinaryForm::zero(2),
            BinaryForm::zero(splitting.v_degree()),
            Some(w),
        )
    }

    pub fn check_degrees(&self, s: Splitting) -> Result<()> {
        let ok = self.u.degree() == 2
            && self.v.degree() == s.v_degree()
            && self.w.as_ref().map(BinaryForm::degree) == s.w_degree();
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "form degrees do not fit the splitting {s}"
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero() && self.w.as_ref().is_none_or(BinaryForm::is_zero)
    }

    /// `v·w − u²` as a quartic.
    pub fn det_form(&self) -> BinaryForm {
        let sq = &self.u * &self.u;
        match &self.w {
            Some(w) => &(&self.v * w) - &sq,
            None => -&sq,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.det_form().is_zero()
    }

    pub fn scale(&self, t: &Rational) -> Self {
        HiggsField {
            u: self.u.scale(t),
            v: self.v.scale(t),
            w: self.w.as_ref().map(|w| w.scale(t)),
        }
    }

    /// `M(p) = [[u, −v],[w, −u]]` evaluated at the canonical representative of `p`.
    pub fn value_at(&self, p: &ProjPoint) -> Mat2 {
        let u = self.u.eval(p);
        let w = self.w.as_ref().map_or_else(Rational::zero, |w| w.eval(p));
        [[u.clone(), -self.v.eval(p)], [w, -u]]
    }

    /// Coefficient vector `u ‖ v ‖ w`.
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.u.coeffs().to_vec();
        out.extend(self.v.coeffs().iter().cloned());
        if let Some(w) = &self.w {
            out.extend(w.coeffs().iter().cloned());
        }
        out
    }

    pub fn from_vec(s: Splitting, x: &[Rational]) -> Self {
        let nv = s.v_degree() + 1;
        let u = BinaryForm::new(x[..3].to_vec());
        let v = BinaryForm::new(x[3..3 + nv].to_vec());
        let w = s.w_degree().map(|_| BinaryForm::new(x[3 + nv..].to_vec()));
        HiggsField { u, v, w }
    }
}

impl fmt::Display for HiggsField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}, v = {}, w = ", self.u, self.v)?;
        match &self.w {
            Some(w) => write!(f, "{w}"),
            None => f.write_str("-"),
        }
    }
}

/// A point of the quasi-parabolic Higgs model on a fixed splitting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qph {
    pub splitting: Splitting,
    pub marks: MarkedPoints,
    pub flags: [ProjPoint; 4],
    pub phi: HiggsField,
}

impl Qph {
    /// Validates degrees, nilpotent residues and the flag incidence.
    pub fn new(
        splitting: Splitting,
        marks: MarkedPoints,
        flags: [ProjPoint; 4],
        phi: HiggsField,
    ) -> Result<Self> {
        phi.check_degrees(splitting)?;
        let x = Qph {
            splitting,
            marks,
            flags,
            phi,
        };
        x.check_membership()?;
        x.check_incidence()?;
        Ok(x)
    }

    pub fn bare(splitting: Splitting, marks: MarkedPoints, flags: [ProjPoint; 4]) -> Self {
        Qph {
            splitting,
            marks,
            flags,
            phi: HiggsField::zero(splitting),
        }
    }

    pub fn flag(&self, i: u8) -> &ProjPoint {
        &self.flags[usize::from(i - 1)]
    }

    /// `u(z_i)² = v(z_i) w(z_i)` at every mark; reports the first failure.
    pub fn check_membership(&self) -> Result<()> {
        for i in 1..=4u8 {
            let m = self.phi.value_at(&self.marks.point(i));
            let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
            if !det.is_zero() {
                return Err(Error::NotParabolic(format!(
                    "mark {i}: residue at z{i} is not nilpotent"
                )));
            }
        }
        Ok(())
    }

    pub fn check_incidence(&self) -> Result<()> {
        for i in 1..=4u8 {
            if let Some(k) = nilpotent_kernel(&self.residue(i)) {
                if &k != self.flag(i) {
                    return Err(Error::NotParabolic(format!(
                        "mark {i}: flag at z{i} is not the residue kernel {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Res_{z_i}Φ`: `M(z_i)/P'(z_i)` at finite marks, `−M(top)` at infinity.
    pub fn residue(&self, i: u8) -> Mat2 {
        let m = self.phi.value_at(&self.marks.point(i));
        let s = if i == 4 {
            -Rational::from_integer(1.into())
        } else {
            self.marks.quartic_derivative(i).recip()
        };
        m.map(|row| row.map(|x| x * &s))
    }

    /// The `c` with `v·w − u² = c·P`.
    pub fn det_scalar(&self) -> Result<Rational> {
        self.check_membership()?;
        let det = self.phi.det_form();
        let p = self.marks.quartic();
        let k = p
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .expect("P is nonzero");
        let c = det.coeff(k) / p.coeff(k);
        if det != p.scale(&c) {
            return Err(Error::NotParabolic(
                "determinant is not a multiple of P".into(),
            ));
        }
        Ok(c)
    }

    pub fn with_phi(&self, phi: HiggsField) -> Self {
        Qph {
            phi,
            ..self.clone()
        }
    }

    pub fn scale(&self, t: &Rational) -> Self {
        self.with_phi(self.phi.scale(t))
    }

    /// `(Res_{z_i}Φ, F_i)` for all four marks.
    pub fn ev_blowup(&self) -> Result<[(Mat2, ProjPoint); 4]> {
        self.check_membership()?;
        self.check_incidence()?;
        Ok([1u8, 2, 3, 4].map(|i| (self.residue(i), self.flag(i).clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn s00() -> Splitting {
        Splitting::new(0, 0).unwrap()
    }

    fn hx0(m: &MarkedPoints) -> HiggsField {
        let v = &m.linear(1) * &m.linear(2);
        let w = &m.linear(3) * &m.linear(4);
        HiggsField::new(s00(), BinaryForm::zero(2), v, Some(w)).unwrap()
    }

    #[test]
    fn residue_at_zero_and_infinity() {
        let m = MarkedPoints::default();
        let x = Qph::bare(s00(), m.clone(), m.points()).with_phi(hx0(&m));
        assert_eq!(x.residue(2), [[qi(0), qi(0)], [q(-1, 2), qi(0)]]);
        assert_eq!(
            nilpotent_kernel(&x.residue(2)),
            Some(ProjPoint::affine(qi(0)))
        );
        assert_eq!(nilpotent_kernel(&x.residue(4)), Some(ProjPoint::infinity()));
        let zero = Qph::bare(s00(), m.clone(), m.points());
        assert!((1..=4).all(|i| mat_is_zero(&zero.residue(i))));
    }

    #[test]
    fn determinant_scalar() {
        let m = MarkedPoints::new(q(7, 3)).unwrap();
        let x = Qph::bare(s00(), m.clone(), m.points()).with_phi(hx0(&m));
        assert_eq!(x.det_scalar().unwrap(), qi(1));
        assert_eq!(x.scale(&qi(3)).det_scalar().unwrap(), qi(9));
        let tri = HiggsField::upper(s00(), &m.linear(3) * &m.linear(4)).unwrap();
        assert_eq!(x.with_phi(tri).det_scalar().unwrap(), qi(0));
        let bad = HiggsField::new(
            s00(),
            BinaryForm::new(vec![qi(1), qi(0), qi(1)]),
            BinaryForm::zero(2),
            Some(BinaryForm::zero(2)),
        )
        .unwrap();
        assert!(matches!(
            x.with_phi(bad).det_scalar(),
            Err(Error::NotParabolic(_))
        ));
    }
}
