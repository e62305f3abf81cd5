//! Seeded random model points, flags, weights and group elements.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{q, qi, BinaryForm, ProjPoint, Rational};
use crate::higgs::{
    compatible_fields, AutElement, HiggsField, LineSubbundle, MarkedPoints, Qph, Splitting,
};
use crate::polytope::{Chamber, WeightVector};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| ≤ h`, `1 ≤ d ≤ h`.
pub fn rational<R: Rng>(r: &mut R, h: i64) -> Rational {
    q(r.gen_range(-h..=h), r.gen_range(1..=h))
}

pub fn nonzero_rational<R: Rng>(r: &mut R, h: i64) -> Rational {
    loop {
        let x = rational(r, h);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn point<R: Rng>(r: &mut R, h: i64) -> ProjPoint {
    if r.gen_ratio(1, 8) {
        ProjPoint::infinity()
    } else {
        ProjPoint::affine(rational(r, h))
    }
}

pub fn form<R: Rng>(r: &mut R, deg: usize, h: i64) -> BinaryForm {
    BinaryForm::new((0..=deg).map(|_| rational(r, h)).collect())
}

/// A random invertible automorphism of the splitting.
pub fn automorphism<R: Rng>(r: &mut R, s: Splitting) -> AutElement {
    loop {
        let c = if s.gap() == 0 {
            rational(r, 4)
        } else {
            Rational::zero()
        };
        let g = AutElement::new(
            s,
            nonzero_rational(r, 4),
            form(r, s.gap() as usize, 4),
            c,
            nonzero_rational(r, 4),
        );
        if let Ok(g) = g {
            return g;
        }
    }
}

/// Flags drawn from a small pool so that coincidences are frequent.
pub fn clustered_flags<R: Rng>(r: &mut R) -> [ProjPoint; 4] {
    let pool = [
        ProjPoint::infinity(),
        ProjPoint::affine(qi(0)),
        ProjPoint::affine(qi(1)),
        point(r, 5),
    ];
    [(); 4].map(|_| pool.choose(r).expect("nonempty").clone())
}

pub fn generic_flags<R: Rng>(r: &mut R) -> [ProjPoint; 4] {
    [(); 4].map(|_| point(r, 30))
}

/// Flags in the open locus `U′` of a balanced splitting.
pub fn uprime_flags<R: Rng>(r: &mut R, s: Splitting, marks: &MarkedPoints) -> [ProjPoint; 4] {
    loop {
        let f = generic_flags(r);
        if crate::higgs::qp_locus(&f, s, marks) == Ok(crate::higgs::QpLocus::UPrime) {
            return f;
        }
    }
}

/// A uniformly drawn rational point of the open cube with denominator `den`.
pub fn weight<R: Rng>(r: &mut R, den: i64) -> WeightVector {
    WeightVector::new([(); 4].map(|_| q(r.gen_range(1..den), den))).expect("inside the cube")
}

/// A weight strictly inside the chamber: a random convex combination of the
/// centroid with nearby rational perturbations, kept only if it classifies
/// back into the chamber.
pub fn weight_in<R: Rng>(r: &mut R, c: &Chamber) -> WeightVector {
    let base = c.centroid();
    for _ in 0..64 {
        let eps = q(1, r.gen_range(20..200));
        let b: [Rational; 4] = [1u8, 2, 3, 4].map(|i| base.get(i) + &eps * qi(r.gen_range(-3..=3)));
        if let Ok(w) = WeightVector::new(b) {
            if crate::polytope::classify(&w, c.parity())
                == Ok(crate::polytope::Classification::Chamber(*c))
            {
                return w;
            }
        }
    }
    base
}

fn saturated_line<R: Rng>(r: &mut R, s: Splitting, j: i64) -> LineSubbundle {
    loop {
        let s1 = form(r, (s.m1 - j) as usize, 3);
        let s2 = (s.m2 >= j).then(|| form(r, (s.m2 - j) as usize, 3));
        if let Ok(l) = LineSubbundle::new(s, j, s1, s2) {
            return l;
        }
    }
}

/// A random nonzero nilpotent field `σ·(s1, s2)⊗(s2, −s1)` with flags forced
/// where `σ` does not vanish and random elsewhere.
pub fn nilpotent<R: Rng>(r: &mut R, s: Splitting, marks: &MarkedPoints) -> Qph {
    let d = s.degree();
    let lo = (d - 2).div_euclid(2) + (d - 2).rem_euclid(2);
    let mut degrees: Vec<i64> = (lo..=s.m2).collect();
    if s.gap() > 0 {
        degrees.push(s.m1);
    }
    let j = *degrees.choose(r).expect("some degree is allowed");
    let l = saturated_line(r, s, j);
    let k = (2 * (j + 1) - d) as usize;
    let mut sigma = BinaryForm::constant(nonzero_rational(r, 3));
    for _ in 0..k {
        let factor = if r.gen_bool(0.6) {
            marks.linear(r.gen_range(1..=4))
        } else {
            BinaryForm::vanishing_at(&point(r, 6))
        };
        sigma = &sigma * &factor;
    }
    let s2 = l.s2.clone().unwrap_or_else(|| BinaryForm::zero(0));
    let u = if l.s2.is_some() {
        &(&sigma * &l.s1) * &s2
    } else {
        BinaryForm::zero(2)
    };
    let v = &(&sigma * &l.s1) * &l.s1;
    let w = s.w_degree().map(|deg| {
        if l.s2.is_some() {
            &(&sigma * &s2) * &s2
        } else {
            BinaryForm::zero(deg)
        }
    });
    let phi = HiggsField::new(s, u, v, w).expect("degrees match");
    let flags = [1u8, 2, 3, 4].map(|i| {
        let p = marks.point(i);
        if !sigma.eval(&p).is_zero() || r.gen_bool(0.4) {
            l.eval(&p)
        } else if r.gen_bool(0.5) {
            ProjPoint::infinity()
        } else {
            point(r, 5)
        }
    });
    Qph::new(s, marks.clone(), flags, phi).expect("constructed to satisfy incidence")
}

/// A random field compatible with the flags, if any nonzero one exists.
pub fn compatible<R: Rng>(
    r: &mut R,
    flags: &[ProjPoint; 4],
    s: Splitting,
    marks: &MarkedPoints,
) -> Option<Qph> {
    let basis = compatible_fields(flags, s, marks);
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].to_vec().len();
    let mut x = vec![Rational::zero(); n];
    for b in &basis {
        let c = rational(r, 4);
        for (xi, bi) in x.iter_mut().zip(b.to_vec()) {
            *xi += &c * bi;
        }
    }
    let phi = HiggsField::from_vec(s, &x);
    if phi.is_zero() {
        return None;
    }
    Qph::new(s, marks.clone(), flags.clone(), phi).ok()
}

/// Any model point: `Φ = 0`, nilpotent or compatible with random flags.
pub fn qph<R: Rng>(r: &mut R, s: Splitting, marks: &MarkedPoints) -> Qph {
    loop {
        match r.gen_range(0..4) {
            0 => return Qph::bare(s, marks.clone(), clustered_flags(r)),
            1 => return Qph::bare(s, marks.clone(), generic_flags(r)),
            2 => return nilpotent(r, s, marks),
            _ => {
                let flags = if r.gen_bool(0.5) {
                    clustered_flags(r)
                } else {
                    generic_flags(r)
                };
                if let Some(x) = compatible(r, &flags, s, marks) {
                    return x;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_samples_are_valid() {
        let mut r = rng(1);
        let m = MarkedPoints::default();
        for gap in 0..=3 {
            let s = Splitting::with_gap(4 + gap, gap).unwrap();
            for _ in 0..30 {
                let x = nilpotent(&mut r, s, &m);
                assert!(x.phi.is_nilpotent() && !x.phi.is_zero());
            }
        }
    }

    #[test]
    fn same_seed_same_samples() {
        let m = MarkedPoints::default();
        let s = Splitting::new(1, 0).unwrap();
        let a: Vec<Qph> = (0..5).scan(rng(9), |r, _| Some(qph(r, s, &m))).collect();
        let b: Vec<Qph> = (0..5).scan(rng(9), |r, _| Some(qph(r, s, &m))).collect();
        assert_eq!(a, b);
    }
}
