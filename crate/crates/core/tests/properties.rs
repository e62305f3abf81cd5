use proptest::prelude::*;

use parahiggs::algebra::{bf_gcd, cross_ratio, nullspace, q, BinaryForm, ProjPoint, Rational};
use parahiggs::higgs::{
    apply_automorphism, flags_subset, has_line_through, kernel_line, mat_is_zero, orbit_invariant,
    LineSubbundle, MarkedPoints, Qph, Splitting,
};
use parahiggs::polytope::{
    all_chambers, beta_sum, classify, neighbor_across_wall, wall_list, ChamberKind, Classification,
    MarkSubset, Parity, SignedPerm, WallKind, WeightVector,
};
use parahiggs::sample;
use parahiggs::stability::{
    component_label, conditionally_stable, destabilizing_search, predicted_stability, Verdict,
};

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(BinaryForm::new)
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop_oneof![1 => Just(ProjPoint::infinity()), 6 => rat().prop_map(ProjPoint::affine)]
}

fn weight() -> impl Strategy<Value = WeightVector> {
    prop::array::uniform4(1i64..24).prop_map(|a| WeightVector::new(a.map(|n| q(n, 24))).unwrap())
}

fn splitting() -> impl Strategy<Value = Splitting> {
    (0i64..=2, 0i64..=3).prop_map(|(m, gap)| Splitting::new(m + gap, m).unwrap())
}

fn balanced() -> impl Strategy<Value = Splitting> {
    (0i64..=2, 0i64..=1).prop_map(|(m, gap)| Splitting::new(m + gap, m).unwrap())
}

fn marks() -> MarkedPoints {
    MarkedPoints::new(q(-3, 2)).unwrap()
}

fn proportional(a: &LineSubbundle, b: &LineSubbundle) -> bool {
    match (&a.s2, &b.s2) {
        (Some(a2), Some(b2)) => a.j == b.j && (&(&a.s1 * b2) - &(a2 * &b.s1)).is_zero(),
        (None, None) => a.j == b.j,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn evaluation_is_multiplicative(f in form(4), g in form(4), p in point()) {
        prop_assert_eq!((&f * &g).eval(&p), f.eval(&p) * g.eval(&p));
    }

    #[test]
    fn gcd_divides_with_coprime_quotients(f in form(4), g in form(4), h in form(2)) {
        let (f, g) = (&f * &h, &g * &h);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = bf_gcd(&f, &g).unwrap();
        let (a, b) = (f.div_exact(&d), g.div_exact(&d));
        prop_assert!(a.is_some() && b.is_some());
        prop_assert_eq!(bf_gcd(&a.unwrap(), &b.unwrap()).unwrap().degree(), 0);
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(
        pts in prop::array::uniform4(point()),
        m in prop::array::uniform4(rat()),
    ) {
        let mat = [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]];
        prop_assume!(&mat[0][0] * &mat[1][1] != &mat[0][1] * &mat[1][0]);
        let Ok(before) = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]) else { return Ok(()) };
        let moved: Vec<ProjPoint> = pts.iter().map(|p| p.transform(&mat).unwrap()).collect();
        prop_assert_eq!(cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap(), before);
    }

    #[test]
    fn nullspace_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(rat(), 5), 1..5)) {
        for v in nullspace(&rows, 5) {
            for r in &rows {
                let dot: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, q(0, 1));
            }
        }
    }

    #[test]
    fn beta_is_antisymmetric_and_monotone(b in weight(), mask in 0u8..16, sub in 0u8..16) {
        let s = MarkSubset::from_bits(mask).unwrap();
        prop_assert_eq!(beta_sum(&b, s) + beta_sum(&b, s.complement()), q(0, 1));
        let t = MarkSubset::from_bits(mask & sub).unwrap();
        prop_assert!(beta_sum(&b, t) <= beta_sum(&b, s));
    }

    #[test]
    fn at_most_one_bound_fails(b in weight(), odd in any::<bool>()) {
        let p = if odd { Parity::Odd } else { Parity::Even };
        let failing = wall_list(p)
            .into_iter()
            .filter(|w| w.kind() == WallKind::Boundary && w.offset(&b) < q(0, 1))
            .count();
        prop_assert!(failing <= 1);
    }

    #[test]
    fn classification_is_locally_constant(seed in any::<u64>(), k in 0usize..24, odd in any::<bool>()) {
        let p = if odd { Parity::Odd } else { Parity::Even };
        let c = all_chambers(p)[k];
        let mut r = sample::rng(seed);
        let (x, y) = (sample::weight_in(&mut r, &c), sample::weight_in(&mut r, &c));
        let mid = WeightVector::new([1u8, 2, 3, 4].map(|i| (x.get(i) + y.get(i)) / q(2, 1))).unwrap();
        prop_assert_eq!(classify(&mid, p).unwrap(), Classification::Chamber(c));
    }

    #[test]
    fn signed_permutations_act(i in 0usize..384, j in 0usize..384, k in 0usize..24) {
        let all = SignedPerm::all();
        let (g, h) = (all[i], all[j]);
        for p in Parity::both() {
            let c = all_chambers(p)[k];
            prop_assert_eq!(g.compose(&h).apply_chamber(&c), g.apply_chamber(&h.apply_chamber(&c)));
        }
    }

    #[test]
    fn residues_are_nilpotent(seed in any::<u64>(), s in splitting()) {
        let x = sample::qph(&mut sample::rng(seed), s, &marks());
        for i in 1..=4u8 {
            let r = x.residue(i);
            prop_assert_eq!(&r[0][0] + &r[1][1], q(0, 1));
            prop_assert_eq!(&r[0][0] * &r[1][1] - &r[0][1] * &r[1][0], q(0, 1));
        }
    }

    #[test]
    fn kernel_line_is_invariant_and_bounded(seed in any::<u64>(), s in splitting()) {
        let x = sample::nilpotent(&mut sample::rng(seed), s, &marks());
        let l = kernel_line(&x.phi, s).unwrap();
        // Φ·(s1, s2) = (u s1 − v s2, w s1 − u s2) vanishes.
        match &l.s2 {
            Some(s2) => {
                prop_assert!((&(&x.phi.u * &l.s1) - &(&x.phi.v * s2)).is_zero());
                if let Some(w) = &x.phi.w {
                    prop_assert!((&(w * &l.s1) - &(&x.phi.u * s2)).is_zero());
                }
            }
            None => prop_assert!((&x.phi.u * &l.s1).is_zero()),
        }
        prop_assert!(l.is_saturated());
        prop_assert!(2 * (l.j + 1) >= s.degree());
        let fs = flags_subset(&l, &x);
        for i in 1..=4u8 {
            if !mat_is_zero(&x.residue(i)) {
                prop_assert!(fs.contains(i), "mark {} has a nonzero residue off the line", i);
            }
        }
    }

    #[test]
    fn automorphisms_preserve_det_and_move_kernel_lines(seed in any::<u64>(), s in splitting()) {
        let mut r = sample::rng(seed);
        let x = sample::qph(&mut r, s, &marks());
        let g = sample::automorphism(&mut r, s);
        let y = apply_automorphism(&g, &x).unwrap();
        prop_assert_eq!(y.det_scalar().unwrap(), x.det_scalar().unwrap());
        if !x.phi.is_zero() && x.phi.is_nilpotent() {
            let moved = g.apply_line(&kernel_line(&x.phi, s).unwrap());
            prop_assert!(proportional(&kernel_line(&y.phi, s).unwrap(), &moved));
        }
    }

    #[test]
    fn interpolation_feasibility_is_orbit_invariant(seed in any::<u64>(), s in splitting()) {
        let mut r = sample::rng(seed);
        let m = marks();
        let x = Qph::bare(s, m.clone(), sample::clustered_flags(&mut r));
        let y = apply_automorphism(&sample::automorphism(&mut r, s), &x).unwrap();
        for set in MarkSubset::all() {
            for j in (s.m2 - 2)..=s.m1 {
                prop_assert_eq!(
                    has_line_through(&x.flags, set, j, s, &m),
                    has_line_through(&y.flags, set, j, s, &m),
                    "I = {}, j = {}", set, j
                );
            }
        }
    }

    #[test]
    fn orbit_invariant_is_constant_on_orbits(seed in any::<u64>(), s in balanced()) {
        let mut r = sample::rng(seed);
        let m = marks();
        let x = Qph::bare(s, m.clone(), sample::uprime_flags(&mut r, s, &m));
        let c = orbit_invariant(&x.flags, s, &m).unwrap();
        for _ in 0..5 {
            let y = apply_automorphism(&sample::automorphism(&mut r, s), &x).unwrap();
            prop_assert_eq!(orbit_invariant(&y.flags, s, &m).unwrap(), c.clone());
        }
    }

    #[test]
    fn det_scales_quadratically(seed in any::<u64>(), s in balanced(), t in rat()) {
        let x = sample::qph(&mut sample::rng(seed), s, &marks());
        prop_assert_eq!(x.scale(&t).det_scalar().unwrap(), &t * &t * x.det_scalar().unwrap());
    }

    #[test]
    fn conditional_stability_matches_some_chamber(seed in any::<u64>(), s in splitting()) {
        let x = sample::qph(&mut sample::rng(seed), s, &marks());
        let label = component_label(&x).unwrap();
        let some = all_chambers(s.parity()).iter().any(|c| predicted_stability(&label, c).unwrap());
        prop_assert_eq!(conditionally_stable(&x).unwrap(), some);
    }

    #[test]
    fn instability_persists_when_the_witness_grows(seed in any::<u64>(), s in splitting(), b in weight()) {
        let x = sample::qph(&mut sample::rng(seed), s, &marks());
        if let Verdict::Unstable { witness: (set, _) } = destabilizing_search(&x, &b).unwrap() {
            // Push each coordinate halfway toward the end favouring the witness.
            let grown = WeightVector::new([1u8, 2, 3, 4].map(|i| {
                let v = b.get(i);
                let end = if set.contains(i) { q(1, 1) } else { q(0, 1) };
                (v + &end) / q(2, 1) + if set.contains(i) { -q(1, 1000) } else { q(1, 1000) }
            }))
            .unwrap();
            prop_assert!(beta_sum(&grown, set) >= beta_sum(&b, set));
            prop_assert!(!destabilizing_search(&x, &grown).unwrap().is_stable());
        }
    }

    #[test]
    fn crossing_an_interior_wall_toggles_type(k in 0usize..24, odd in any::<bool>()) {
        let p = if odd { Parity::Odd } else { Parity::Even };
        let c = all_chambers(p)[k];
        for w in c.bounding_walls() {
            let n = neighbor_across_wall(&c, &w).unwrap();
            prop_assert_eq!(neighbor_across_wall(&n, &w).unwrap(), c);
            if c.kind() != ChamberKind::Exterior && n.kind() != ChamberKind::Exterior {
                prop_assert_ne!(c.kind(), n.kind());
            }
        }
    }
}
