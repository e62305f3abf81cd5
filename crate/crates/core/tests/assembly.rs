use parahiggs::algebra::{qi, ProjPoint, Rational};
use parahiggs::assembly::{
    assembly_kit, bulk_cover_coords, euler_characteristic, facet_point, fixed_loci, glue,
    hitchin_sections, hn_strata, hn_stratum, s_equivalence, tail_limits, wall_cross, wall_point,
    SplitKind,
};
use parahiggs::higgs::{
    canonical_representative, compatible_fields, MarkedPoints, Qph, RepSpec, Splitting,
};
use parahiggs::label::{ComponentLabel, Partition};
use parahiggs::polytope::{
    all_chambers, classify, d4_apply, wall_crossing_graph, wall_list, Chamber, Classification,
    MarkSubset, Parity, SignedPerm,
};
use parahiggs::sample;
use parahiggs::stability::{destabilizing_search, Verdict};

fn rep(split: SplitKind, label: ComponentLabel, parity: Parity, marks: &MarkedPoints) -> Qph {
    let s = split.at(parity, 0);
    canonical_representative(
        &RepSpec::Block {
            label,
            splitting: s,
            modulus: None,
        },
        marks,
    )
    .unwrap()
}

#[test]
fn wall_points_lie_on_one_wall() {
    for p in Parity::both() {
        for w in wall_list(p) {
            let b = wall_point(&w);
            assert_eq!(
                classify(&b, p).unwrap(),
                Classification::OnWalls(vec![w]),
                "{w}"
            );
        }
    }
}

#[test]
fn flagged_families_are_strictly_semistable_on_their_wall() {
    let marks = MarkedPoints::default();
    for p in Parity::both() {
        let g = wall_crossing_graph(p);
        for w in wall_list(p) {
            let se = s_equivalence(&w).unwrap();
            for (i, j, _) in g.edges.iter().filter(|e| e.2 == w) {
                let side = if matches!(g.nodes[*i], Chamber::Interior(_)) {
                    g.nodes[*i]
                } else {
                    g.nodes[*j]
                };
                let b = facet_point(&w, &side).unwrap();
                for (split, label) in &se.flagged {
                    let v = destabilizing_search(&rep(*split, *label, p, &marks), &b).unwrap();
                    assert!(
                        matches!(v, Verdict::StrictlySemistable { .. }),
                        "{w} at {side}: {label} is {v}"
                    );
                }
                // Stable families on either side that are not flagged stay stable on the wall.
                for c in [g.nodes[*i], g.nodes[*j]] {
                    for comp in assembly_kit(&c).components {
                        if se.flagged.contains(&(comp.split, comp.label)) {
                            continue;
                        }
                        let v = destabilizing_search(&rep(comp.split, comp.label, p, &marks), &b)
                            .unwrap();
                        assert!(v.is_stable(), "{w} from {c}: {} is {v}", comp.label);
                    }
                }
            }
        }
    }
}

#[test]
fn every_chamber_is_d4_with_euler_six() {
    for p in Parity::both() {
        for c in all_chambers(p) {
            let cfg = glue(&assembly_kit(&c)).unwrap();
            assert_eq!(euler_characteristic(&cfg), 6);
            let fixed = fixed_loci(&c).unwrap();
            assert_eq!(fixed.iter().filter(|f| f.dimension == 1).count(), 1);
            assert_eq!(fixed.iter().filter(|f| f.dimension == 0).count(), 4);
        }
    }
}

#[test]
fn wall_crossing_is_an_involution() {
    for p in Parity::both() {
        let g = wall_crossing_graph(p);
        for (i, j, w) in &g.edges {
            let there = wall_cross(&g.nodes[*i], &g.nodes[*j]).unwrap();
            let back = wall_cross(&g.nodes[*j], &g.nodes[*i]).unwrap();
            assert_eq!(there.wall, *w);
            assert!(!there.exchanged.is_empty());
            let swapped: Vec<(String, String)> = back
                .exchanged
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect();
            let mut a = there.exchanged.clone();
            let mut b = swapped;
            a.sort();
            b.sort();
            assert_eq!(a, b);
            assert_eq!(there.fixed, back.fixed);
        }
        let ext = all_chambers(p)
            .into_iter()
            .find(|c| matches!(c, Chamber::Exterior { .. }))
            .unwrap();
        let far = all_chambers(p)
            .into_iter()
            .filter(|c| matches!(c, Chamber::Exterior { .. }))
            .nth(1)
            .unwrap();
        assert!(wall_cross(&ext, &far).is_err());
    }
}

#[test]
fn kits_are_d4_equivariant() {
    for p in Parity::both() {
        for c in all_chambers(p) {
            let tails = assembly_kit(&c).tail_subsets();
            for g in SignedPerm::all_d4().into_iter().step_by(5) {
                let img = d4_apply(&g, &c).unwrap();
                let mut want: Vec<MarkSubset> = tails.iter().map(|&s| g.apply_subset(s)).collect();
                want.sort_by_key(|s| s.size_key());
                assert_eq!(assembly_kit(&img).tail_subsets(), want, "{g} on {c}");
            }
        }
    }
}

#[test]
fn hn_strata_shapes() {
    let mut nodes_seen = Vec::new();
    for p in Parity::both() {
        for c in all_chambers(p) {
            let [bal, jump]: [_; 2] = hn_strata(&c, 0).try_into().unwrap();
            assert!(bal.nonempty && bal.dimension == 2 && bal.nodes == 0);
            match p {
                Parity::Even => {
                    assert!(
                        jump.nonempty && jump.dimension == 1 && jump.nodes <= 2,
                        "{c}"
                    );
                    nodes_seen.push(jump.nodes);
                }
                Parity::Odd => {
                    let is_empty_ext =
                        c == Chamber::exterior(Parity::Odd, MarkSubset::EMPTY).unwrap();
                    assert_eq!(jump.nonempty, is_empty_ext, "{c}");
                    if is_empty_ext {
                        assert_eq!((jump.dimension, jump.nodes), (1, 0));
                    }
                }
            }
            let far = Splitting::with_gap(
                if p == Parity::Even { 4 } else { 5 },
                4 + (p == Parity::Odd) as i64,
            )
            .unwrap();
            assert!(!hn_stratum(&c, far).nonempty);
        }
    }
    nodes_seen.sort();
    nodes_seen.dedup();
    assert_eq!(nodes_seen, [0, 1, 2]);
}

#[test]
fn hitchin_sections_land_on_tail_fixed_points() {
    for p in Parity::both() {
        for c in all_chambers(p) {
            let hs = hitchin_sections(&c).unwrap();
            assert_eq!(hs.len(), 4);
            let eff = c.effective_partition_set();
            for h in hs {
                let member = if eff.contains(h.partition.small()) {
                    h.partition.small()
                } else {
                    h.partition.large()
                };
                assert_eq!(tail_limits(&c, member).unwrap().1, h.value_at_zero);
                let open = !(p == Parity::Even && h.partition.small().is_empty());
                assert_eq!(h.in_open_stratum, open);
            }
        }
    }
}

/// Number of orbits with given flags and `det = q` among compatible fields,
/// counted by solving `t² det₀ = q` on a 1-dimensional space or noting the
/// scaling action on the 2-dimensional branch locus.
fn fibre_size(x: &Qph, q: &Rational) -> usize {
    let space = compatible_fields(&x.flags, x.splitting, &x.marks);
    match space.len() {
        1 => {
            let d0 = x.with_phi(space[0].clone()).det_scalar().unwrap();
            let ratio = q / d0;
            if parahiggs::algebra::sqrt_exact(&ratio).is_some() {
                2
            } else {
                0
            }
        }
        2 => 1,
        n => panic!("unexpected compatible space of dimension {n}"),
    }
}

#[test]
fn bulk_cover_is_two_to_one_off_branch_values() {
    let marks = MarkedPoints::default();
    let mut rng = sample::rng(5);
    for d in [0i64, 1] {
        let s = Splitting::with_gap(d, d).unwrap();
        for _ in 0..10 {
            let x = sample::qph(&mut rng, s, &marks);
            let Ok((c, q)) = bulk_cover_coords(&x) else {
                continue;
            };
            let branch: Vec<ProjPoint> = Partition::all(s.parity())
                .into_iter()
                .filter_map(|p| parahiggs::higgs::branch_value(s, p.small(), &marks).ok())
                .collect();
            assert!(!branch.contains(&c));
            assert_eq!(fibre_size(&x, &q), 2);
        }
        for p in Partition::all(s.parity()) {
            let q = qi(3);
            let Ok(h) = canonical_representative(
                &RepSpec::Hitchin {
                    partition: p,
                    q: q.clone(),
                    splitting: s,
                },
                &marks,
            ) else {
                continue;
            };
            let (c, det) = bulk_cover_coords(&h).unwrap();
            assert_eq!(
                c,
                parahiggs::higgs::branch_value(s, p.small(), &marks).unwrap()
            );
            assert_eq!(fibre_size(&h, &det), 1);
        }
    }
}
