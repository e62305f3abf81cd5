use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::polytope::Parity;

/// A Laurent polynomial in `z` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, Rational>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    /// `c·z^k`.
    pub fn mono(c: Rational, k: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        Laurent(m)
    }

    pub fn z(k: i64) -> Self {
        Self::mono(Rational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            let e = m.entry(*k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                m.remove(k);
            }
        }
        Laurent(m)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut acc = Laurent::zero();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                acc = acc.add(&Laurent::mono(c1 * c2, k1 + k2));
            }
        }
        acc
    }

    fn scale(&self, c: &Rational) -> Laurent {
        Laurent(
            self.0
                .iter()
                .map(|(k, x)| (*k, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        )
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(k, c)| match *k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub type LMat = [[Laurent; 2]; 2];

fn lmul(a: &LMat, b: &LMat) -> LMat {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// The transition matrix of a jumping family and the check of its
/// three-factor splitting into an evenly-split cocycle.
#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub transition: LMat,
    /// `g_0 · g_01 · g_1⁻¹`; `None` at `t = 0` where `g_1` is singular.
    pub product: Option<LMat>,
    /// The product equals the transition matrix verbatim.
    pub printed_holds: bool,
    /// The product equals the transition matrix with lower-left `t·z^m`.
    pub corrected_holds: bool,
}

pub fn jumping_cocycle(parity: Parity, m: i64, t: &Rational) -> CocycleReport {
    let top = match parity {
        Parity::Even => m + 1,
        Parity::Odd => m + 2,
    };
    let transition: LMat = [
        [Laurent::z(top), Laurent::zero()],
        [Laurent::mono(t.clone(), 0), Laurent::z(m - 1)],
    ];
    if t.is_zero() {
        return CocycleReport {
            transition,
            product: None,
            printed_holds: false,
            corrected_holds: false,
        };
    }
    let shift = match parity {
        Parity::Even => 1,
        Parity::Odd => 2,
    };
    let neg_one = -Rational::one();
    let g0: LMat = [
        [Laurent::z(0), Laurent::mono(neg_one.clone(), shift)],
        [Laurent::zero(), Laurent::mono(-t.clone(), 0)],
    ];
    let mid: LMat = [
        [Laurent::z(top - 1), Laurent::zero()],
        [Laurent::zero(), Laurent::z(m)],
    ];
    // g_1 = [[z⁻¹, −1],[−t, 0]] has determinant −t.
    let inv_det = (-t.clone()).recip();
    let g1_inv: LMat = [
        [
            Laurent::zero(),
            Laurent::mono(Rational::one(), 0).scale(&inv_det),
        ],
        [
            Laurent::mono(t.clone(), 0).scale(&inv_det),
            Laurent::z(-1).scale(&inv_det),
        ],
    ];
    let product = lmul(&lmul(&g0, &mid), &g1_inv);
    let mut corrected = transition.clone();
    corrected[1][0] = Laurent::mono(t.clone(), m);
    CocycleReport {
        printed_holds: product == transition,
        corrected_holds: product == corrected,
        product: Some(product),
        transition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn printed_form_only_at_m_zero() {
        for p in Parity::both() {
            let r = jumping_cocycle(p, 0, &qi(5));
            assert!(r.printed_holds && r.corrected_holds);
            let r = jumping_cocycle(p, 2, &qi(1));
            assert!(!r.printed_holds && r.corrected_holds);
            assert_eq!(r.product.unwrap()[1][0], Laurent::mono(qi(1), 2));
        }
    }

    #[test]
    fn zero_parameter_is_diagonal() {
        let r = jumping_cocycle(Parity::Even, 3, &qi(0));
        assert!(r.transition[1][0].is_zero() && r.transition[0][1].is_zero());
        assert!(r.product.is_none());
    }
}
