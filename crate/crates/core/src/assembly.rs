//! Nilpotent-cone assembly: per-chamber kits of stable families, their
//! glueing into a D4 configuration, and what changes across walls.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{ProjPoint, Rational};
use crate::error::{Error, Result};
use crate::higgs::{
    branch_value, has_covering_pair, orbit_invariant, realizable_labels, Qph, Splitting,
};
use crate::label::{ComponentLabel, Partition};
use crate::polytope::{
    apex, vertex_of_subset, wall_crossing_graph, Chamber, MarkSubset, Parity, Wall, WallKind,
    WeightVector,
};
use crate::stability::predicted_stability;

/// The two splittings of a parity that carry stable points, relative to a base `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitKind {
    /// `(m,m)` or `(m+1,m)`.
    Balanced,
    /// `(m+1,m−1)` or `(m+2,m−1)`.
    Jumped,
}

impl SplitKind {
    pub fn at(self, parity: Parity, m: i64) -> Splitting {
        let [b, j] = Splitting::admissible(parity, m);
        match self {
            SplitKind::Balanced => b,
            SplitKind::Jumped => j,
        }
    }

    pub fn of(s: Splitting) -> Option<SplitKind> {
        match s.gap() {
            0 | 1 => Some(SplitKind::Balanced),
            2 | 3 => Some(SplitKind::Jumped),
            _ => None,
        }
    }

    pub fn name(self, parity: Parity) -> &'static str {
        match (self, parity) {
            (SplitKind::Balanced, Parity::Even) => "(m,m)",
            (SplitKind::Jumped, Parity::Even) => "(m+1,m-1)",
            (SplitKind::Balanced, Parity::Odd) => "(m+1,m)",
            (SplitKind::Jumped, Parity::Odd) => "(m+2,m-1)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoType {
    Point,
    AffineLine,
    PuncturedLine,
    Sphere,
    SphereMinus4,
}

impl IsoType {
    pub fn euler(self) -> i64 {
        match self {
            IsoType::Point | IsoType::AffineLine => 1,
            IsoType::PuncturedLine => 0,
            IsoType::Sphere => 2,
            IsoType::SphereMinus4 => -2,
        }
    }

    pub fn dimension(self) -> usize {
        usize::from(self != IsoType::Point)
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoType::Point => "point",
            IsoType::AffineLine => "C",
            IsoType::PuncturedLine => "C*",
            IsoType::Sphere => "CP1",
            IsoType::SphereMinus4 => "CP1-4pts",
        })
    }
}

/// Orbit space of a family: `Bl`-type arithmetic for blocks, points for
/// special `Φ = 0` orbits, the punctured sphere for the generic ones.
pub fn iso_type(label: &ComponentLabel, s: Splitting) -> Option<IsoType> {
    let gap = s.gap();
    match label {
        ComponentLabel::N(_) => Some(IsoType::Point),
        ComponentLabel::NGeneric => Some(IsoType::SphereMinus4),
        ComponentLabel::K(set) => match set.len() as i64 + gap {
            2 => Some(IsoType::AffineLine),
            3 => Some(IsoType::Sphere),
            _ => None,
        },
        ComponentLabel::L { tag: Some(1), .. } => Some(IsoType::PuncturedLine),
        ComponentLabel::L { tag: Some(_), .. } => Some(IsoType::Point),
        ComponentLabel::L { set, tag: None } => match set.len() as i64 - gap {
            2 => Some(IsoType::AffineLine),
            3 => Some(IsoType::Sphere),
            _ => None,
        },
        _ => None,
    }
}

/// Where a family sits in the glued configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Central,
    Tail(MarkSubset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescriptor {
    pub label: ComponentLabel,
    pub split: SplitKind,
    pub iso: IsoType,
    pub role: Role,
    /// `(other piece, point)` incidences of the closure.
    pub attachments: Vec<(String, String)>,
    /// The C*-fixed point of a tail piece, if it contains one.
    pub fixed_point: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyKit {
    pub chamber: Chamber,
    pub components: Vec<ComponentDescriptor>,
}

impl AssemblyKit {
    pub fn on(&self, split: SplitKind) -> impl Iterator<Item = &ComponentDescriptor> {
        self.components.iter().filter(move |c| c.split == split)
    }

    pub fn tail_subsets(&self) -> Vec<MarkSubset> {
        let mut out: Vec<MarkSubset> = self
            .components
            .iter()
            .filter_map(|c| match c.role {
                Role::Tail(s) => Some(s),
                Role::Central => None,
            })
            .collect();
        out.sort_by_key(|s| s.size_key());
        out.dedup();
        out
    }
}

/// Name of the point where the `I`-tail meets the central component.
fn attach_point(chamber: &Chamber, set: MarkSubset) -> String {
    match chamber {
        Chamber::Interior(_) => ComponentLabel::N(set).to_string(),
        Chamber::Exterior { subset, .. } => format!("b{}·{}", subset, set),
    }
}

fn fixed_point_name(label: &ComponentLabel) -> String {
    match label {
        ComponentLabel::K(s) => format!("K+{s}"),
        ComponentLabel::L { set, tag: None } => format!("L+{set}"),
        other => other.to_string(),
    }
}

fn split_labels(parity: Parity) -> Vec<(SplitKind, ComponentLabel)> {
    let mut out = Vec::new();
    for kind in [SplitKind::Balanced, SplitKind::Jumped] {
        for l in realizable_labels(kind.at(parity, 0)) {
            out.push((kind, l));
        }
    }
    out
}

/// Stable families of the nilpotent cone in a chamber.
pub fn assembly_kit(chamber: &Chamber) -> AssemblyKit {
    let parity = chamber.parity();
    let mut components = Vec::new();
    for (split, label) in split_labels(parity) {
        let Some(iso) = iso_type(&label, split.at(parity, 0)) else {
            continue;
        };
        if !predicted_stability(&label, chamber).expect("labels of the parity") {
            continue;
        }
        let set = label.subset();
        let vertical = set.is_some_and(|s| s.parity() == parity);
        let role = match label {
            ComponentLabel::N(_) | ComponentLabel::NGeneric => Role::Central,
            _ if vertical => Role::Tail(set.expect("block subset")),
            _ => Role::Central,
        };
        let mut attachments = Vec::new();
        let mut fixed_point = None;
        if let Role::Tail(s) = role {
            attachments.push(("central".to_string(), attach_point(chamber, s)));
            if iso != IsoType::PuncturedLine {
                fixed_point = Some(fixed_point_name(&label));
            }
        }
        components.push(ComponentDescriptor {
            label,
            split,
            iso,
            role,
            attachments,
            fixed_point,
        });
    }
    components.sort_by_key(|c| (c.split, c.role, c.label));
    AssemblyKit {
        chamber: *chamber,
        components,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedComponent {
    pub name: String,
    pub pieces: Vec<(ComponentLabel, IsoType)>,
    /// Points added from other pieces when closing up.
    pub closure_points: Vec<String>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D4Configuration {
    pub chamber: Chamber,
    pub central: GluedComponent,
    pub tails: Vec<GluedComponent>,
    /// `(tail index, point)` where a tail meets the central component.
    pub intersections: Vec<(usize, String)>,
}

fn not_d4(why: String) -> Error {
    Error::NotD4(why)
}

/// Closes up the kit: tails attach at their `N_I` (or the bottom point in
/// exterior chambers), punctured tails absorb their cross-splitting partner.
pub fn glue(kit: &AssemblyKit) -> Result<D4Configuration> {
    let central_pieces: Vec<(ComponentLabel, IsoType)> = kit
        .components
        .iter()
        .filter(|c| c.role == Role::Central)
        .map(|c| (c.label, c.iso))
        .collect();
    let central_euler: i64 = central_pieces.iter().map(|p| p.1.euler()).sum();
    let central = GluedComponent {
        name: "central".into(),
        pieces: central_pieces,
        closure_points: Vec::new(),
        euler: central_euler,
    };
    let mut tails = Vec::new();
    let mut intersections = Vec::new();
    for (k, set) in kit.tail_subsets().into_iter().enumerate() {
        let pieces: Vec<&ComponentDescriptor> = kit
            .components
            .iter()
            .filter(|c| c.role == Role::Tail(set))
            .collect();
        let points: Vec<String> = pieces
            .iter()
            .flat_map(|c| c.attachments.iter().map(|a| a.1.clone()))
            .collect();
        let mut uniq = points.clone();
        uniq.dedup();
        if uniq.len() != 1 {
            return Err(not_d4(format!(
                "tail {set} meets the central component at {uniq:?}"
            )));
        }
        let point = uniq.remove(0);
        if matches!(kit.chamber, Chamber::Interior(_))
            && !central.pieces.iter().any(|p| p.0.to_string() == point)
        {
            return Err(not_d4(format!(
                "attachment {point} is not on the central component"
            )));
        }
        let euler = pieces.iter().map(|c| c.iso.euler()).sum::<i64>() + 1;
        intersections.push((k, point.clone()));
        tails.push(GluedComponent {
            name: format!("tail{set}"),
            pieces: pieces.iter().map(|c| (c.label, c.iso)).collect(),
            closure_points: vec![point],
            euler,
        });
    }
    let cfg = D4Configuration {
        chamber: kit.chamber,
        central,
        tails,
        intersections,
    };
    check_d4(&cfg)?;
    Ok(cfg)
}

/// Five rational curves, the central one meeting each of four tails once.
pub fn check_d4(cfg: &D4Configuration) -> Result<()> {
    if cfg.tails.len() != 4 {
        return Err(not_d4(format!("{} tails", cfg.tails.len())));
    }
    for c in std::iter::once(&cfg.central).chain(&cfg.tails) {
        if c.euler != 2 {
            return Err(not_d4(format!(
                "{} has Euler characteristic {}",
                c.name, c.euler
            )));
        }
    }
    let mut pts: Vec<&String> = cfg.intersections.iter().map(|i| &i.1).collect();
    pts.sort();
    pts.dedup();
    if pts.len() != 4 || cfg.intersections.len() != 4 {
        return Err(not_d4(
            "tails do not meet the central component at four distinct points".into(),
        ));
    }
    let mut labels: Vec<ComponentLabel> = cfg
        .tails
        .iter()
        .flat_map(|t| t.pieces.iter().map(|p| p.0))
        .collect();
    let n = labels.len();
    labels.sort();
    labels.dedup();
    if labels.len() != n {
        return Err(not_d4("two tails share a piece".into()));
    }
    Ok(())
}

/// Total Euler characteristic of the glued configuration.
pub fn euler_characteristic(cfg: &D4Configuration) -> i64 {
    cfg.central.euler + cfg.tails.iter().map(|t| t.euler).sum::<i64>()
        - cfg.intersections.len() as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossingMap {
    pub from: Chamber,
    pub to: Chamber,
    pub wall: Wall,
    /// `(component before, component after)`.
    pub exchanged: Vec<(String, String)>,
    pub fixed: Vec<String>,
}

fn component_name(c: &GluedComponent) -> String {
    let parts: Vec<String> = c.pieces.iter().map(|p| p.0.to_string()).collect();
    format!("[{}]", parts.join("+"))
}

fn tail_for(cfg: &D4Configuration, set: MarkSubset) -> Option<&GluedComponent> {
    cfg.tails.iter().find(|t| t.name == format!("tail{set}"))
}

pub fn wall_cross(c1: &Chamber, c2: &Chamber) -> Result<WallCrossingMap> {
    if c1.parity() != c2.parity() {
        return Err(Error::Invalid(
            "chambers of different parity are never adjacent".into(),
        ));
    }
    let wall = wall_crossing_graph(c1.parity())
        .shared_wall(c1, c2)
        .ok_or_else(|| Error::Invalid(format!("{c1} and {c2} are not adjacent")))?;
    let g1 = glue(&assembly_kit(c1))?;
    let g2 = glue(&assembly_kit(c2))?;
    let mut exchanged = Vec::new();
    let mut moved = Vec::new();
    match wall.kind() {
        WallKind::Interior => {
            let (s, t) = (wall.subset(), wall.subset().complement());
            let (a, b) = if tail_for(&g1, s).is_some() {
                (s, t)
            } else {
                (t, s)
            };
            let (ta, tb) = tail_for(&g1, a)
                .zip(tail_for(&g2, b))
                .ok_or_else(|| Error::Invalid(format!("{wall} does not swap tails {a} and {b}")))?;
            if ta.euler != tb.euler {
                return Err(Error::Invalid(format!(
                    "{wall} exchanges curves of different type"
                )));
            }
            exchanged.push((component_name(ta), component_name(tb)));
            exchanged.push((ta.closure_points[0].clone(), tb.closure_points[0].clone()));
            moved.push(a);
            let relabel = |l: ComponentLabel| {
                if l == ComponentLabel::N(a) {
                    ComponentLabel::N(b)
                } else {
                    l
                }
            };
            let mut before: Vec<ComponentLabel> =
                g1.central.pieces.iter().map(|p| relabel(p.0)).collect();
            let mut after: Vec<ComponentLabel> = g2.central.pieces.iter().map(|p| p.0).collect();
            before.sort();
            after.sort();
            if before != after {
                return Err(Error::Invalid(format!(
                    "{wall} changes the central component"
                )));
            }
        }
        WallKind::Boundary => {
            exchanged.push((component_name(&g1.central), component_name(&g2.central)));
        }
    }
    let mut fixed = Vec::new();
    if wall.kind() == WallKind::Interior {
        fixed.push("central".to_string());
    }
    for t in g1
        .tails
        .iter()
        .filter(|t| !moved.iter().any(|m| t.name == format!("tail{m}")))
    {
        let same = g2
            .tails
            .iter()
            .any(|u| u.pieces == t.pieces && u.closure_points == t.closure_points);
        let relabeled =
            wall.kind() == WallKind::Boundary && g2.tails.iter().any(|u| u.pieces == t.pieces);
        if !same && !relabeled {
            return Err(Error::Invalid(format!(
                "crossing {wall} moves {}",
                component_name(t)
            )));
        }
        fixed.push(component_name(t));
    }
    fixed.sort();
    Ok(WallCrossingMap {
        from: *c1,
        to: *c2,
        wall,
        exchanged,
        fixed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDescriptor {
    pub splitting: Splitting,
    pub nonempty: bool,
    pub dimension: usize,
    pub nodes: usize,
    pub components: Vec<ComponentLabel>,
}

/// The Harder–Narasimhan stratum of one splitting at a chamber.
pub fn hn_stratum(chamber: &Chamber, s: Splitting) -> StratumDescriptor {
    let parity = chamber.parity();
    let empty = StratumDescriptor {
        splitting: s,
        nonempty: false,
        dimension: 0,
        nodes: 0,
        components: Vec::new(),
    };
    if s.parity() != parity || s.gap() >= 4 {
        return empty;
    }
    let mut components: Vec<ComponentLabel> = realizable_labels(s)
        .into_iter()
        .filter(|l| predicted_stability(l, chamber).unwrap_or(false))
        .collect();
    components.sort();
    if components.is_empty() {
        return empty;
    }
    let bulk = components
        .iter()
        .any(|l| matches!(l, ComponentLabel::H(_) | ComponentLabel::BulkGeneric));
    let (dimension, nodes) = match s.gap() {
        0 | 1 => (2, 0),
        2 => {
            // The Hitchin line closes up at K+∅ when K∅ is stable, and K∅
            // then meets the horizontal K_i of an exterior chamber.
            let k_empty = components.contains(&ComponentLabel::K(MarkSubset::EMPTY));
            let k_single = components
                .iter()
                .filter(|l| matches!(l, ComponentLabel::K(t) if t.len() == 1))
                .count();
            (1, if k_empty { 1 + k_single } else { 0 })
        }
        _ => (usize::from(bulk) + 1, 0),
    };
    StratumDescriptor {
        splitting: s,
        nonempty: true,
        dimension,
        nodes,
        components,
    }
}

pub fn hn_strata(chamber: &Chamber, m: i64) -> Vec<StratumDescriptor> {
    let p = chamber.parity();
    [SplitKind::Balanced, SplitKind::Jumped]
        .map(|k| hn_stratum(chamber, k.at(p, m)))
        .to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocus {
    pub name: String,
    pub dimension: usize,
    /// For tail fixed points: the tail whose `t → ∞` limit it is.
    pub tail: Option<MarkSubset>,
}

/// C*-fixed components: the central curve and one point per tail.
pub fn fixed_loci(chamber: &Chamber) -> Result<Vec<FixedLocus>> {
    let kit = assembly_kit(chamber);
    let cfg = glue(&kit)?;
    let mut out = vec![FixedLocus {
        name: component_name(&cfg.central),
        dimension: 1,
        tail: None,
    }];
    for set in kit.tail_subsets() {
        let pts: Vec<&ComponentDescriptor> = kit
            .components
            .iter()
            .filter(|c| c.role == Role::Tail(set) && c.fixed_point.is_some())
            .collect();
        for c in pts {
            out.push(FixedLocus {
                name: c.fixed_point.clone().expect("filtered"),
                dimension: 0,
                tail: Some(set),
            });
        }
    }
    Ok(out)
}

/// Limits of `t·x` inside a tail: `t → 0` lands on the central component,
/// `t → ∞` on the tail's fixed point.
pub fn tail_limits(chamber: &Chamber, set: MarkSubset) -> Option<(String, String)> {
    let kit = assembly_kit(chamber);
    let fixed = kit
        .components
        .iter()
        .find(|c| c.role == Role::Tail(set) && c.fixed_point.is_some())?;
    Some((attach_point(chamber, set), fixed.fixed_point.clone()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinSection {
    pub partition: Partition,
    pub branch: ComponentLabel,
    /// The fixed point reached as `q → 0`.
    pub value_at_zero: String,
    pub splitting: SplitKind,
    pub in_open_stratum: bool,
}

pub fn hitchin_sections(chamber: &Chamber) -> Result<Vec<HitchinSection>> {
    let parity = chamber.parity();
    let kit = assembly_kit(chamber);
    let eff = chamber.effective_partition_set();
    Partition::all(parity)
        .into_iter()
        .map(|p| {
            let member = if eff.contains(p.small()) {
                p.small()
            } else {
                p.large()
            };
            let value = kit
                .components
                .iter()
                .find_map(|c| {
                    (c.role == Role::Tail(member))
                        .then_some(c.fixed_point.clone())
                        .flatten()
                })
                .ok_or_else(|| Error::Invalid(format!("tail {member} has no fixed point")))?;
            let split = if parity == Parity::Even && p.small().is_empty() {
                SplitKind::Jumped
            } else {
                SplitKind::Balanced
            };
            Ok(HitchinSection {
                partition: p,
                branch: ComponentLabel::H(p),
                value_at_zero: value,
                splitting: split,
                in_open_stratum: split == SplitKind::Balanced,
            })
        })
        .collect()
}

/// A rational point in the relative interior of the facet that `chamber`
/// has on `w`.
pub fn facet_point(w: &Wall, chamber: &Chamber) -> Result<WeightVector> {
    if !chamber.bounding_walls().contains(w) {
        return Err(Error::Invalid(format!("{w} does not bound {chamber}")));
    }
    let one = Rational::from_integer(1.into());
    let pts: Vec<WeightVector> = match (w.kind(), chamber) {
        (WallKind::Boundary, _) => (1..=4u8)
            .map(|i| vertex_of_subset(w.subset().sym_diff(MarkSubset::singleton(i))))
            .collect(),
        (WallKind::Interior, Chamber::Interior(p)) => std::iter::once(apex())
            .chain(
                p.sets()
                    .iter()
                    .filter(|&&s| s != w.subset() && s != w.subset().complement())
                    .map(|&s| vertex_of_subset(s)),
            )
            .collect(),
        (WallKind::Interior, Chamber::Exterior { .. }) => {
            return Err(Error::Invalid(format!(
                "exterior chamber {chamber} has no interior facet"
            )))
        }
    };
    Ok(WeightVector::barycenter(
        &pts.into_iter()
            .map(|v| (one.clone(), v))
            .collect::<Vec<_>>(),
    ))
}

/// The facet point of the first chamber bordering `w`.
pub fn wall_point(w: &Wall) -> WeightVector {
    let g = wall_crossing_graph(w.parity());
    let (i, j, _) = g
        .edges
        .iter()
        .find(|e| e.2 == *w)
        .expect("every wall carries a facet");
    let c = if matches!(g.nodes[*i], Chamber::Interior(_)) {
        g.nodes[*i]
    } else {
        g.nodes[*j]
    };
    facet_point(w, &c).expect("edge chamber bounds its wall")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SEquivalence {
    pub wall: Wall,
    pub weight: WeightVector,
    /// Families that become strictly semistable on the wall.
    pub flagged: Vec<(SplitKind, ComponentLabel)>,
    /// Pairs identified pointwise.
    pub identified: Vec<(String, String)>,
}

pub fn s_equivalence(w: &Wall) -> Result<SEquivalence> {
    let parity = w.parity();
    let g = wall_crossing_graph(parity);
    let (i, j, _) = *g
        .edges
        .iter()
        .find(|e| e.2 == *w)
        .ok_or_else(|| Error::Invalid(format!("{w} has no facet")))?;
    let (a, b) = (g.nodes[i], g.nodes[j]);
    let ka = assembly_kit(&a);
    let kb = assembly_kit(&b);
    let mut flagged = Vec::new();
    let mut identified = Vec::new();
    match w.kind() {
        WallKind::Boundary => {
            let ext = if matches!(a, Chamber::Exterior { .. }) {
                &ka
            } else {
                &kb
            };
            let int = if matches!(a, Chamber::Exterior { .. }) {
                &kb
            } else {
                &ka
            };
            let central = |k: &AssemblyKit| {
                k.components
                    .iter()
                    .filter(|c| c.role == Role::Central)
                    .map(|c| (c.split, c.label))
                    .collect::<Vec<_>>()
            };
            let (ce, ci) = (central(ext), central(int));
            identified.push((names(&ce), names(&ci)));
            flagged.extend(ce);
            flagged.extend(ci);
        }
        WallKind::Interior => {
            let (s, t) = (w.subset(), w.subset().complement());
            let tail = |k: &AssemblyKit, x: MarkSubset| {
                k.components
                    .iter()
                    .filter(|c| c.role == Role::Tail(x))
                    .map(|c| (c.split, c.label))
                    .collect::<Vec<_>>()
            };
            let (ta, tb) = if ka.tail_subsets().contains(&s) {
                (tail(&ka, s), tail(&kb, t))
            } else {
                (tail(&kb, s), tail(&ka, t))
            };
            identified.push((names(&ta), names(&tb)));
            identified.push((
                ComponentLabel::N(s).to_string(),
                ComponentLabel::N(t).to_string(),
            ));
            identified.push((
                format!("X{}", Partition::new(s)),
                format!("X{}", Partition::new(s)),
            ));
            flagged.extend(ta);
            flagged.extend(tb);
            for x in [s, t] {
                if let Some(split) = [SplitKind::Balanced, SplitKind::Jumped]
                    .into_iter()
                    .find(|k| realizable_labels(k.at(parity, 0)).contains(&ComponentLabel::N(x)))
                {
                    flagged.push((split, ComponentLabel::N(x)));
                }
            }
        }
    }
    flagged.sort();
    flagged.dedup();
    Ok(SEquivalence {
        wall: *w,
        weight: wall_point(w),
        flagged,
        identified,
    })
}

fn names(v: &[(SplitKind, ComponentLabel)]) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.1.to_string()).collect();
    format!("[{}]", parts.join("+"))
}

/// `(orbit invariant, det)` of a bulk point; on `X(E)` the invariant is the
/// branch value of its partition.
pub fn bulk_cover_coords(x: &Qph) -> Result<(ProjPoint, Rational)> {
    let det = x.det_scalar()?;
    if det.is_zero() {
        return Err(Error::Invalid("bulk coordinates need det ≠ 0".into()));
    }
    let s = x.splitting;
    if s.gap() > 1 {
        return Err(Error::Invalid(format!(
            "bulk coordinates are defined on balanced splittings, got {s}"
        )));
    }
    if !has_covering_pair(&x.flags, s, &x.marks) {
        return Ok((orbit_invariant(&x.flags, s, &x.marks)?, det));
    }
    match crate::stability::component_label(x)? {
        ComponentLabel::H(p) => Ok((branch_value(s, p.small(), &x.marks)?, det)),
        other => Err(Error::Invalid(format!(
            "bulk point of type {other} has no cover coordinate"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{all_chambers, ChamberKind};

    #[test]
    fn type_b_even_kit() {
        let c: Chamber = "int:even:{1234,12,13,23}".parse().unwrap();
        let kit = assembly_kit(&c);
        let bal: Vec<String> = kit
            .on(SplitKind::Balanced)
            .map(|c| format!("{}:{}", c.label, c.iso))
            .collect();
        assert_eq!(
            bal,
            [
                "N{1,2}:point",
                "N{1,3}:point",
                "N{2,3}:point",
                "N{1,2,3,4}:point",
                "N_gen:CP1-4pts",
                "L{1,2}:C",
                "L{1,3}:C",
                "L{2,3}:C",
                "L{1,2,3,4},1:C*"
            ]
        );
        let jumped: Vec<String> = kit
            .on(SplitKind::Jumped)
            .map(|c| c.label.to_string())
            .collect();
        assert_eq!(jumped, ["L{1,2,3,4},0"]);
    }

    #[test]
    fn odd_kits() {
        let a: Chamber = "int:odd:{1,134,124,123}".parse().unwrap();
        let kit = assembly_kit(&a);
        assert_eq!(kit.on(SplitKind::Jumped).count(), 0);
        let tails: Vec<String> = kit
            .components
            .iter()
            .filter(|c| c.role != Role::Central)
            .map(|c| format!("{}:{}", c.label, c.iso))
            .collect();
        assert_eq!(tails, ["K{1}:C", "L{1,2,3}:C", "L{1,2,4}:C", "L{1,3,4}:C"]);
        let e: Chamber = "ext:odd:{}".parse().unwrap();
        assert!(assembly_kit(&e)
            .on(SplitKind::Jumped)
            .any(|c| c.label == ComponentLabel::K(MarkSubset::EMPTY) && c.iso == IsoType::Sphere));
    }

    #[test]
    fn every_chamber_glues_to_d4() {
        for p in Parity::both() {
            for c in all_chambers(p) {
                let cfg = glue(&assembly_kit(&c)).unwrap();
                assert_eq!(euler_characteristic(&cfg), 6, "{c}");
                if c.kind() == ChamberKind::Exterior {
                    assert!(!cfg
                        .central
                        .pieces
                        .iter()
                        .any(|p| matches!(p.0, ComponentLabel::N(_))));
                }
            }
        }
    }
}
