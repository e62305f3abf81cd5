use std::fmt;

use num_traits::Zero;

use super::field::{nilpotent_kernel, Mat2};
use super::marks::Splitting;
use crate::algebra::rational::sqrt_exact;
use crate::algebra::{ProjPoint, Rational};
use crate::error::{Error, Result};

/// Orbits of the automorphism group on the fiber `{(N, F) : N F = 0}` over one mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointOrbit {
    /// `N ≠ 0` with kernel off the first summand.
    O1,
    /// `N ≠ 0` with kernel the first summand.
    O2,
    /// `N = 0`, flag off the first summand.
    O3,
    /// `N = 0`, flag the first summand.
    O4,
    /// Equal summands: `N ≠ 0`.
    Open,
    /// Equal summands: `N = 0`.
    Exceptional,
}

impl fmt::Display for PointOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointOrbit::O1 => "O1",
            PointOrbit::O2 => "O2",
            PointOrbit::O3 => "O3",
            PointOrbit::O4 => "O4",
            PointOrbit::Open => "open",
            PointOrbit::Exceptional => "exceptional",
        };
        f.write_str(s)
    }
}

pub fn orbit_stratum_of_point(n: &Mat2, flag: &ProjPoint, s: Splitting) -> Result<PointOrbit> {
    let trace = &n[0][0] + &n[1][1];
    let det = &n[0][0] * &n[1][1] - &n[0][1] * &n[1][0];
    if !trace.is_zero() || !det.is_zero() {
        return Err(Error::Invalid("residue is not nilpotent".into()));
    }
    let kernel = nilpotent_kernel(n);
    if kernel.as_ref().is_some_and(|k| k != flag) {
        return Err(Error::Invalid(
            "flag is not the kernel of the residue".into(),
        ));
    }
    let on_e1 = flag.is_infinity();
    Ok(match (s.gap() == 0, kernel.is_some(), on_e1) {
        (true, true, _) => PointOrbit::Open,
        (true, false, _) => PointOrbit::Exceptional,
        (false, true, false) => PointOrbit::O1,
        (false, true, true) => PointOrbit::O2,
        (false, false, false) => PointOrbit::O3,
        (false, false, true) => PointOrbit::O4,
    })
}

/// `(Z0, Z1) ↦ [[Z0Z1, −Z0²],[Z1², −Z0Z1]]`, the nilpotent matrix with kernel `[Z0:Z1]`.
pub fn to_blowup(z0: &Rational, z1: &Rational) -> Mat2 {
    [[z0 * z1, -(z0 * z0)], [z1 * z1, -(z0 * z1)]]
}

/// Inverse of [`to_blowup`] up to the overall sign; `None` when the square
/// roots are irrational or the matrix is not in the image.
pub fn from_blowup(n: &Mat2) -> Option<(Rational, Rational)> {
    let z0 = sqrt_exact(&-n[0][1].clone())?;
    let z1_abs = sqrt_exact(&n[1][0])?;
    let z1 = if z0.is_zero() || &z0 * &z1_abs == n[0][0] {
        z1_abs
    } else {
        -z1_abs
    };
    (to_blowup(&z0, &z1) == *n).then_some((z0, z1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn four_orbits() {
        let s = Splitting::new(2, 0).unwrap();
        let zero: Mat2 = Default::default();
        assert_eq!(
            orbit_stratum_of_point(&zero, &ProjPoint::infinity(), s).unwrap(),
            PointOrbit::O4
        );
        assert_eq!(
            orbit_stratum_of_point(&zero, &ProjPoint::affine(qi(5)), s).unwrap(),
            PointOrbit::O3
        );
        let up = to_blowup(&qi(1), &qi(0));
        assert_eq!(
            orbit_stratum_of_point(&up, &ProjPoint::infinity(), s).unwrap(),
            PointOrbit::O2
        );
        let gen = to_blowup(&qi(2), &qi(3));
        assert_eq!(
            orbit_stratum_of_point(&gen, &"2/3".parse().unwrap(), s).unwrap(),
            PointOrbit::O1
        );
        assert!(orbit_stratum_of_point(&gen, &ProjPoint::infinity(), s).is_err());
        assert!(super::super::field::mat_is_zero(&zero));
    }

    #[test]
    fn round_trip_up_to_sign() {
        for (a, b) in [(2, 3), (-2, 3), (0, 5), (4, 0), (-1, -7)] {
            let (x, y) = from_blowup(&to_blowup(&qi(a), &qi(b))).unwrap();
            assert!((x.clone(), y.clone()) == (qi(a), qi(b)) || (x, y) == (qi(-a), qi(-b)));
        }
    }
}
