use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A point `[a:b]` of the projective line, kept in canonical form:
/// `b = 1` for finite points, `[1:0]` for infinity. Structural equality is
/// therefore projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a: Rational,
    b: Rational,
}

impl ProjPoint {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::Invalid("[0:0] is not a projective point".into()));
            }
            return Ok(Self::infinity());
        }
        Ok(ProjPoint {
            a: a / &b,
            b: Rational::one(),
        })
    }

    /// `[x:1]`.
    pub fn affine(x: Rational) -> Self {
        ProjPoint {
            a: x,
            b: Rational::one(),
        }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn slope(&self) -> Option<&Rational> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.a)
        }
    }

    /// Image under the linear map `m` acting on column vectors `(a, b)`.
    pub fn transform(&self, m: &[[Rational; 2]; 2]) -> Result<Self> {
        let a = &m[0][0] * &self.a + &m[0][1] * &self.b;
        let b = &m[1][0] * &self.a + &m[1][1] * &self.b;
        ProjPoint::new(a, b)
            .map_err(|_| Error::Invalid("singular matrix applied to a point".into()))
    }
}

/// `a1 b2 - b1 a2`; zero iff the points coincide.
pub fn bracket(p: &ProjPoint, q: &ProjPoint) -> Rational {
    &p.a * &q.b - &p.b * &q.a
}

/// Value at `p1` of the Möbius map sending `p2, p3, p4` to `0, 1, ∞`.
///
/// Written as `[p1,p2][p3,p4] : [p1,p4][p3,p2]`, which stays meaningful when
/// one pair among `p2, p3, p4` coincides.
pub fn cross_ratio(
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
    p4: &ProjPoint,
) -> Result<ProjPoint> {
    let num = bracket(p1, p2) * bracket(p3, p4);
    let den = bracket(p1, p4) * bracket(p3, p2);
    ProjPoint::new(num, den).map_err(|_| Error::DegenerateNormalization)
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Accepts `[a:b]`, or a bare rational `x` meaning `[x:1]`, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(ProjPoint::infinity());
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected [a:b], got {s:?}")))?;
            return ProjPoint::new(parse_rational(a)?, parse_rational(b)?)
                .map_err(|e| Error::Parse(e.to_string()));
        }
        Ok(ProjPoint::affine(parse_rational(t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    fn pt(x: i64) -> ProjPoint {
        ProjPoint::affine(qi(x))
    }

    #[test]
    fn canonical_form() {
        let p = ProjPoint::new(qi(4), qi(2)).unwrap();
        assert_eq!(p, pt(2));
        assert_eq!(
            ProjPoint::new(qi(-3), qi(0)).unwrap(),
            ProjPoint::infinity()
        );
        assert!(ProjPoint::new(qi(0), qi(0)).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let inf = ProjPoint::infinity();
        assert_eq!(cross_ratio(&pt(2), &pt(0), &pt(1), &inf).unwrap(), pt(2));
        assert_eq!(cross_ratio(&pt(3), &pt(0), &pt(1), &inf).unwrap(), pt(3));
        assert_eq!(cross_ratio(&pt(5), &pt(5), &pt(1), &inf).unwrap(), pt(0));
        assert_eq!(
            cross_ratio(&pt(5), &pt(5), &pt(5), &inf),
            Err(Error::DegenerateNormalization)
        );
    }

    #[test]
    fn parse_round_trip() {
        for s in ["[3/2:1]", "[1:0]", "[-7:1]"] {
            assert_eq!(s.parse::<ProjPoint>().unwrap().to_string(), s);
        }
        assert_eq!("[2:4]".parse::<ProjPoint>().unwrap().to_string(), "[1/2:1]");
        assert!("[0:0]".parse::<ProjPoint>().is_err());
    }
}
