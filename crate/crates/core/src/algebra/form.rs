use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::proj::ProjPoint;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A homogeneous form of fixed degree `n` in `Z0, Z1`; `coeffs[k]` multiplies
/// `Z0^(n-k) Z1^k`. The degree is part of the value: `0` of degree 2 and `0`
/// of degree 3 are different forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        BinaryForm { coeffs }
    }

    pub fn zero(deg: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::zero(); deg + 1],
        }
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `a Z0 + b Z1`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    /// The linear form `b Z0 - a Z1`, vanishing exactly at `[a:b]`.
    pub fn vanishing_at(p: &ProjPoint) -> Self {
        Self::linear(p.b().clone(), -p.a().clone())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value at `[1:0]`, i.e. the `Z0^n` coefficient.
    pub fn top(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Value at the canonical representative of `p`.
    pub fn eval(&self, p: &ProjPoint) -> Rational {
        if p.is_infinity() {
            return self.coeffs[0].clone();
        }
        // Horner in Z0 with Z1 = 1.
        let x = p.a();
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = BinaryForm::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `(Z0^a Z1^b)` times `self`.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); b];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.extend(std::iter::repeat_n(Rational::zero(), a));
        BinaryForm { coeffs }
    }

    /// Number of leading coefficients (in index order) that vanish, i.e. the
    /// multiplicity of `Z1` as a factor.
    fn z1_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Rescales so the first nonzero coefficient is 1. Zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &BinaryForm) -> Option<BinaryForm> {
        if d.is_zero() || d.degree() > self.degree() {
            return None;
        }
        let (quot, rem) = poly_divmod(&self.coeffs, &d.coeffs);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let qdeg = self.degree() - d.degree();
        let mut quot = quot;
        if quot.len() > qdeg + 1 && quot[qdeg + 1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        quot.resize(qdeg + 1, Rational::zero());
        Some(BinaryForm { coeffs: quot })
    }
}

/// Greatest common divisor, normalized so its first nonzero coefficient is 1.
pub fn bf_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::GcdOfZero),
        (false, true) => Ok(f.normalized()),
        (true, false) => Ok(g.normalized()),
        (false, false) => {
            // View coeffs as a polynomial in x = Z1/Z0. A deficit between the
            // formal degree and the polynomial degree is a power of Z0.
            let z0f = f.degree() - poly_degree(&f.coeffs);
            let z0g = g.degree() - poly_degree(&g.coeffs);
            let z1 = f.z1_order().min(g.z1_order());
            let pf = &f.coeffs[f.z1_order()..=poly_degree(&f.coeffs)];
            let pg = &g.coeffs[g.z1_order()..=poly_degree(&g.coeffs)];
            let core = poly_gcd(pf, pg);
            let form = BinaryForm { coeffs: core }.shift(z0f.min(z0g), z1);
            Ok(form.normalized())
        }
    }
}

/// gcd over a list; zero forms are skipped. `None` when all are zero.
pub fn bf_gcd_all<'a>(forms: impl IntoIterator<Item = &'a BinaryForm>) -> Option<BinaryForm> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.normalized(),
            Some(a) => bf_gcd(&a, f).expect("nonzero inputs"),
        });
    }
    acc
}

fn poly_degree(p: &[Rational]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Division of ascending-power polynomials.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_degree(den);
    let lead = den[dd].clone();
    let mut rem: Vec<Rational> = num.to_vec();
    let nd = poly_degree(&rem);
    if nd < dd || rem.iter().all(Zero::is_zero) {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate().take(dd + 1) {
            let t = &c * dc;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    (quot, rem)
}

/// Monic gcd of ascending-power polynomials with nonzero inputs.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = trim(r);
    }
    let lead = x.last().expect("nonempty").clone();
    x.iter().map(|c| c / &lead).collect()
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "adding forms of different degree"
        );
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "subtracting forms of different degree"
        );
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![Rational::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm { coeffs }
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for BinaryForm {
    /// Human-readable polynomial, e.g. `Z0^2 - 2*Z0*Z1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = monomial(n - k, k);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn monomial(e0: usize, e1: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let (a, b) = (part("Z0", e0), part("Z1", e1));
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => format!("{a}*{b}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(f(&[0, 1, 0]).eval(&ProjPoint::infinity()), qi(0));
        assert_eq!(f(&[1, -2]).eval(&ProjPoint::affine(qi(2))), qi(0));
        assert_eq!(f(&[1, 0, 0]).eval(&ProjPoint::affine(qi(3))), qi(9));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            bf_gcd(&f(&[0, 1, 0, 0]), &f(&[0, 0, 1, 0])).unwrap(),
            f(&[0, 1, 0])
        );
        // (Z0 - Z1) Z1 and (Z0 - Z1) Z0
        assert_eq!(
            bf_gcd(&f(&[0, 1, -1]), &f(&[1, -1, 0])).unwrap(),
            f(&[1, -1])
        );
        assert_eq!(
            bf_gcd(&f(&[0, 3, 6]), &BinaryForm::zero(4)).unwrap(),
            f(&[0, 1, 2])
        );
        assert_eq!(
            bf_gcd(&BinaryForm::zero(1), &BinaryForm::zero(2)),
            Err(Error::GcdOfZero)
        );
    }

    #[test]
    fn gcd_keeps_powers_of_both_variables() {
        // Z0^3 Z1 (Z0 + Z1) and Z0^3 Z1^2
        let a = &f(&[1, 0, 0, 0]).shift(0, 1) * &f(&[1, 1]);
        let b = f(&[1, 0, 0, 0]).shift(0, 2);
        assert_eq!(bf_gcd(&a, &b).unwrap(), f(&[1, 0, 0, 0]).shift(0, 1));
    }

    #[test]
    fn exact_division() {
        let a = &f(&[1, -1]) * &f(&[2, 0, 5]);
        assert_eq!(a.div_exact(&f(&[1, -1])).unwrap(), f(&[2, 0, 5]));
        assert!(a.div_exact(&f(&[1, 1])).is_none());
        let z1 = f(&[0, 1]);
        assert_eq!((&z1 * &z1).div_exact(&z1).unwrap(), z1);
    }

    #[test]
    fn display() {
        assert_eq!(f(&[1, -2, 0]).to_string(), "Z0^2 - 2*Z0*Z1");
        assert_eq!(BinaryForm::new(vec![q(1, 2)]).to_string(), "1/2");
        assert_eq!(BinaryForm::zero(3).to_string(), "0");
    }
}
