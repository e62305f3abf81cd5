use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::subset::{MarkSubset, Parity};
use super::walls::{wall_list, Wall, WallKind};
use super::weights::{apex, beta_at_vertex, vertex_of_subset, WeightVector};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// The four complementary pairs `{I, I^c}` with `|I|` of the given parity,
/// each stored by its smaller member, in a fixed order.
pub fn partition_pairs(parity: Parity) -> [MarkSubset; 4] {
    let mut reps: Vec<MarkSubset> = MarkSubset::all()
        .filter(|s| s.parity() == parity && s.size_key() < s.complement().size_key())
        .collect();
    reps.sort_by_key(|s| s.size_key());
    reps.try_into().expect("four pairs per parity")
}

/// Index of the pair containing `s`.
pub fn pair_index(s: MarkSubset) -> usize {
    let reps = partition_pairs(s.parity());
    reps.iter()
        .position(|&r| r == s || r == s.complement())
        .expect("every subset lies in a pair")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChamberType {
    A,
    B,
}

impl fmt::Display for ChamberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChamberType::A => "A",
            ChamberType::B => "B",
        })
    }
}

/// The tetrahedron spanned by the four vertices `v_I` of a partition set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TetraCell {
    /// Lies in the cube facet `β_coord = value`.
    Face { coord: u8, value: u8 },
    /// Lies in this boundary wall.
    Wall(Wall),
}

impl fmt::Display for TetraCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TetraCell::Face { coord, value } => write!(f, "β_{coord}={value}"),
            TetraCell::Wall(w) => write!(f, "{w}"),
        }
    }
}

/// One subset from each partition pair; slot `k` belongs to pair `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSet {
    parity: Parity,
    sets: [MarkSubset; 4],
}

impl PartitionSet {
    /// Accepts the four subsets in any order.
    pub fn new(parity: Parity, subsets: &[MarkSubset]) -> Result<Self> {
        if subsets.len() != 4 {
            return Err(Error::Invalid("a partition set has four members".into()));
        }
        let mut slots: [Option<MarkSubset>; 4] = [None; 4];
        for &s in subsets {
            if s.parity() != parity {
                return Err(Error::Invalid(format!(
                    "{s} does not have {parity} cardinality"
                )));
            }
            let k = pair_index(s);
            if slots[k].replace(s).is_some() {
                return Err(Error::Invalid(format!("two members from the pair of {s}")));
            }
        }
        Ok(PartitionSet {
            parity,
            sets: slots.map(|s| s.expect("all four pairs filled")),
        })
    }

    /// The `k`-th bit of `choice` selects the complement in pair `k`.
    pub fn from_choice(parity: Parity, choice: u8) -> Self {
        let reps = partition_pairs(parity);
        let sets = std::array::from_fn(|k| {
            if choice >> k & 1 == 1 {
                reps[k].complement()
            } else {
                reps[k]
            }
        });
        PartitionSet { parity, sets }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn sets(&self) -> &[MarkSubset; 4] {
        &self.sets
    }

    pub fn contains(&self, s: MarkSubset) -> bool {
        self.sets.contains(&s)
    }

    /// Replaces the member of `s`'s pair by `s`.
    pub fn with(&self, s: MarkSubset) -> Self {
        let mut out = *self;
        out.sets[pair_index(s)] = s;
        out
    }

    pub fn cell(&self) -> TetraCell {
        for coord in 1..=4u8 {
            for value in 0..=1u8 {
                let on_face = self
                    .sets
                    .iter()
                    .all(|&s| (!s.contains(coord)) as u8 == value);
                if on_face {
                    return TetraCell::Face { coord, value };
                }
            }
        }
        for w in wall_list(self.parity) {
            if w.kind() == WallKind::Boundary && self.sets.iter().all(|&s| w.contains_vertex(s)) {
                return TetraCell::Wall(w);
            }
        }
        unreachable!("every partition set spans a face tetrahedron or a boundary-wall tetrahedron")
    }

    pub fn chamber_type(&self) -> ChamberType {
        match self.cell() {
            TetraCell::Face { .. } => ChamberType::A,
            TetraCell::Wall(_) => ChamberType::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chamber {
    Interior(PartitionSet),
    Exterior { parity: Parity, subset: MarkSubset },
}

/// Coarse kind used for colouring and census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChamberKind {
    Exterior,
    TypeA,
    TypeB,
}

impl Chamber {
    pub fn parity(&self) -> Parity {
        match self {
            Chamber::Interior(p) => p.parity,
            Chamber::Exterior { parity, .. } => *parity,
        }
    }

    pub fn kind(&self) -> ChamberKind {
        match self {
            Chamber::Exterior { .. } => ChamberKind::Exterior,
            Chamber::Interior(p) => match p.chamber_type() {
                ChamberType::A => ChamberKind::TypeA,
                ChamberType::B => ChamberKind::TypeB,
            },
        }
    }

    pub fn exterior(parity: Parity, subset: MarkSubset) -> Result<Self> {
        if subset.parity() == parity {
            return Err(Error::Invalid(format!("exterior {parity} chambers are indexed by subsets of opposite cardinality parity, got {subset}")));
        }
        Ok(Chamber::Exterior { parity, subset })
    }

    /// The partition set relevant to stability questions: the chamber's own for
    /// interior chambers, and that of the adjacent type-B chamber otherwise.
    pub fn effective_partition_set(&self) -> PartitionSet {
        match self {
            Chamber::Interior(p) => *p,
            Chamber::Exterior { parity, subset } => exterior_link(*parity, *subset),
        }
    }

    /// A rational point strictly inside the chamber.
    pub fn centroid(&self) -> WeightVector {
        let one = Rational::one();
        let mut pts: Vec<(Rational, WeightVector)> = Vec::new();
        match self {
            Chamber::Interior(p) => {
                pts.push((one.clone(), apex()));
                for &s in &p.sets {
                    pts.push((one.clone(), vertex_of_subset(s)));
                }
            }
            Chamber::Exterior { subset, .. } => {
                pts.push((one.clone(), vertex_of_subset(*subset)));
                for i in 1..=4 {
                    pts.push((
                        one.clone(),
                        vertex_of_subset(subset.sym_diff(MarkSubset::singleton(i))),
                    ));
                }
            }
        }
        WeightVector::barycenter(&pts)
    }

    /// `+1`/`-1` side of every wall of the parity, read off the centroid.
    pub fn sign_vector(&self) -> Vec<(Wall, i8)> {
        let c = self.centroid();
        wall_list(self.parity())
            .into_iter()
            .map(|w| {
                let s = if w.offset(&c).is_positive() { 1 } else { -1 };
                (w, s)
            })
            .collect()
    }

    /// The boundary walls and interior walls this chamber has a facet on.
    pub fn bounding_walls(&self) -> Vec<Wall> {
        match self {
            Chamber::Interior(p) => {
                let mut ws: Vec<Wall> = wall_list(p.parity)
                    .into_iter()
                    .filter(|w| w.kind() == WallKind::Interior)
                    .collect();
                if let TetraCell::Wall(w) = p.cell() {
                    ws.push(w);
                }
                ws
            }
            Chamber::Exterior { subset, .. } => {
                vec![Wall::new(*subset, subset.len() as i64 - 3).expect("boundary level")]
            }
        }
    }
}

/// `𝓘(I)`: the subsets `I'` of the parity whose vertex lies on `H_{I,|I|−3}`.
pub fn exterior_link(parity: Parity, subset: MarkSubset) -> PartitionSet {
    let level = subset.len() as i64 - 3;
    let members: Vec<MarkSubset> = MarkSubset::all()
        .filter(|&v| v.parity() == parity && beta_at_vertex(subset, v) == level)
        .collect();
    PartitionSet::new(parity, &members).expect("boundary wall carries one vertex per pair")
}

impl fmt::Display for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.compact()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chamber::Interior(p) => write!(f, "int:{}:{}", p.parity, p),
            Chamber::Exterior { parity, subset } => {
                write!(f, "ext:{}:{{{}}}", parity, subset.compact())
            }
        }
    }
}

impl FromStr for Chamber {
    type Err = Error;
    /// `int:even:{1234,12,13,23}` or `ext:even:{234}`; `∅`, `{}` or `e` for the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad chamber {s:?}"));
        let mut it = s.trim().splitn(3, ':');
        let (kind, parity, body) = (
            it.next().ok_or_else(bad)?,
            it.next().ok_or_else(bad)?,
            it.next().ok_or_else(bad)?,
        );
        let parity: Parity = parity.parse()?;
        let inner = body
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let subsets: Vec<MarkSubset> = inner
            .split(',')
            .map(|p| MarkSubset::parse_compact(if p.trim().is_empty() { "∅" } else { p }))
            .collect::<Result<_>>()?;
        match kind {
            "int" => Ok(Chamber::Interior(
                PartitionSet::new(parity, &subsets).map_err(|e| Error::Parse(e.to_string()))?,
            )),
            "ext" if subsets.len() == 1 => {
                Chamber::exterior(parity, subsets[0]).map_err(|e| Error::Parse(e.to_string()))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Chamber(Chamber),
    OnWalls(Vec<Wall>),
}

/// Locates `β` in the wall arrangement of the given parity.
pub fn classify(b: &WeightVector, parity: Parity) -> Result<Classification> {
    if !b.is_open() {
        return Err(Error::DegenerateWeight);
    }
    // Signs only, so clear denominators once: `den·(β_I − k)`.
    let (num, den) = b.scaled();
    let offset = |s: MarkSubset, k: i64| -> BigInt {
        let mut acc = -(&den * k);
        for i in 1..=4u8 {
            let x = &num[usize::from(i - 1)];
            if s.contains(i) {
                acc += x
            } else {
                acc -= x
            }
        }
        acc
    };
    let walls = wall_list(parity);
    let offsets: Vec<BigInt> = walls
        .iter()
        .map(|w| offset(w.subset(), w.level()))
        .collect();
    let on: Vec<Wall> = walls
        .iter()
        .zip(&offsets)
        .filter(|(_, o)| o.is_zero())
        .map(|(w, _)| *w)
        .collect();
    if !on.is_empty() {
        return Ok(Classification::OnWalls(on));
    }
    for (w, o) in walls.iter().zip(&offsets) {
        if w.kind() == WallKind::Boundary && o.is_negative() {
            return Ok(Classification::Chamber(Chamber::Exterior {
                parity,
                subset: w.subset(),
            }));
        }
    }
    let mut members = Vec::with_capacity(4);
    for rep in partition_pairs(parity) {
        let n = rep.len() as i64;
        members.push(if offset(rep, n - 2).is_negative() {
            rep
        } else {
            rep.complement()
        });
    }
    Ok(Classification::Chamber(Chamber::Interior(
        PartitionSet::new(parity, &members)?,
    )))
}

/// Row of the partition-set tables: set, type, and tetrahedral cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub set: PartitionSet,
    pub chamber_type: ChamberType,
    pub cell: TetraCell,
}

pub fn partition_set_table(parity: Parity) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = (0..16u8)
        .map(|c| {
            let set = PartitionSet::from_choice(parity, c);
            TableRow {
                set,
                chamber_type: set.chamber_type(),
                cell: set.cell(),
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.chamber_type, r.set));
    rows
}

/// The 24 chambers of a parity: 8 exterior, then 16 interior.
pub fn all_chambers(parity: Parity) -> Vec<Chamber> {
    let mut out: Vec<Chamber> = MarkSubset::all()
        .filter(|s| s.parity() != parity)
        .map(|subset| Chamber::Exterior { parity, subset })
        .collect();
    out.extend(
        partition_set_table(parity)
            .into_iter()
            .map(|r| Chamber::Interior(r.set)),
    );
    out
}

/// The chamber on the other side of `w`.
pub fn neighbor_across_wall(c: &Chamber, w: &Wall) -> Result<Chamber> {
    if w.parity() != c.parity() || !c.bounding_walls().contains(w) {
        return Err(Error::Invalid(format!("{w} does not bound {c}")));
    }
    Ok(match (c, w.kind()) {
        (Chamber::Interior(p), WallKind::Interior) => {
            let cur = p.sets[pair_index(w.subset())];
            Chamber::Interior(p.with(cur.complement()))
        }
        (Chamber::Interior(_), WallKind::Boundary) => Chamber::Exterior {
            parity: c.parity(),
            subset: w.subset(),
        },
        (Chamber::Exterior { parity, subset }, _) => {
            Chamber::Interior(exterior_link(*parity, *subset))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(parity: Parity, s: &[&[u8]]) -> PartitionSet {
        PartitionSet::new(
            parity,
            &s.iter().map(|x| MarkSubset::of(x)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn wv(v: [(i64, i64); 4]) -> WeightVector {
        WeightVector::from_ratios(v).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&wv([(1, 10), (2, 10), (3, 10), (5, 10)]), Parity::Even).unwrap();
        let expect = set(Parity::Even, &[&[1, 2, 3, 4], &[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(c, Classification::Chamber(Chamber::Interior(expect)));
        assert_eq!(expect.chamber_type(), ChamberType::B);

        let c = classify(&wv([(9, 10), (1, 20), (1, 20), (1, 20)]), Parity::Even).unwrap();
        assert_eq!(
            c,
            Classification::Chamber(Chamber::Exterior {
                parity: Parity::Even,
                subset: MarkSubset::of(&[2, 3, 4])
            })
        );

        let c = classify(&wv([(1, 2), (1, 2), (1, 2), (1, 4)]), Parity::Odd).unwrap();
        let expect = set(Parity::Odd, &[&[4], &[2, 3, 4], &[1, 3, 4], &[1, 2, 4]]);
        assert_eq!(c, Classification::Chamber(Chamber::Interior(expect)));
        assert_eq!(expect.chamber_type(), ChamberType::A);

        match classify(&wv([(1, 2); 4]), Parity::Even).unwrap() {
            Classification::OnWalls(ws) => {
                assert_eq!(ws.len(), 4);
                assert!(ws.iter().all(|w| w.kind() == WallKind::Interior));
            }
            other => panic!("expected walls, got {other:?}"),
        }
        assert_eq!(
            classify(&wv([(0, 1), (1, 2), (1, 2), (1, 2)]), Parity::Even),
            Err(Error::DegenerateWeight)
        );
    }

    #[test]
    fn display_round_trip() {
        for p in Parity::both() {
            for c in all_chambers(p) {
                assert_eq!(c.to_string().parse::<Chamber>().unwrap(), c);
            }
        }
        let c: Chamber = "int:even:{1234,12,13,23}".parse().unwrap();
        assert_eq!(c.to_string(), "int:even:{1234,12,13,23}");
        assert_eq!(
            "ext:even:{234}".parse::<Chamber>().unwrap().to_string(),
            "ext:even:{234}"
        );
        assert!("ext:even:{23}".parse::<Chamber>().is_err());
    }

    #[test]
    fn centroids_classify_back() {
        for p in Parity::both() {
            for c in all_chambers(p) {
                assert_eq!(
                    classify(&c.centroid(), p).unwrap(),
                    Classification::Chamber(c),
                    "{c}"
                );
            }
        }
    }

    #[test]
    fn neighbor_examples() {
        let c = Chamber::Interior(set(
            Parity::Even,
            &[&[1, 2, 3, 4], &[1, 2], &[1, 3], &[2, 3]],
        ));
        let w = Wall::new(MarkSubset::of(&[1, 2]), 0).unwrap();
        let n = neighbor_across_wall(&c, &w).unwrap();
        assert_eq!(n.to_string(), "int:even:{1234,34,13,23}");
        assert_eq!(neighbor_across_wall(&n, &w).unwrap(), c);

        let e = Chamber::Exterior {
            parity: Parity::Even,
            subset: MarkSubset::of(&[2, 3, 4]),
        };
        let w = Wall::new(MarkSubset::of(&[2, 3, 4]), 0).unwrap();
        let n = neighbor_across_wall(&e, &w).unwrap();
        assert_eq!(
            n,
            Chamber::Interior(set(
                Parity::Even,
                &[&[1, 2, 3, 4], &[3, 4], &[2, 4], &[2, 3]]
            ))
        );
        assert_eq!(neighbor_across_wall(&n, &w).unwrap(), e);
    }

    #[test]
    fn table_census() {
        for p in Parity::both() {
            let t = partition_set_table(p);
            assert_eq!(t.len(), 16);
            assert_eq!(
                t.iter()
                    .filter(|r| r.chamber_type == ChamberType::A)
                    .count(),
                8
            );
        }
    }
}
