use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::chamber::{all_chambers, Chamber, ChamberKind};
use super::subset::Parity;
use super::walls::Wall;
use crate::algebra::lp::{maximize, Cmp, Constraint, LpOutcome};
use crate::algebra::{qi, Rational};

/// The dual graph of the chamber decomposition of one parity.
#[derive(Clone, Debug)]
pub struct ChamberGraph {
    pub parity: Parity,
    pub nodes: Vec<Chamber>,
    /// `(i, j, wall)` with `i < j`; the shared 3-cell lies in `wall`.
    pub edges: Vec<(usize, usize, Wall)>,
}

impl ChamberGraph {
    pub fn index_of(&self, c: &Chamber) -> Option<usize> {
        self.nodes.iter().position(|n| n == c)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b, _)| *a == i || *b == i)
            .count()
    }

    /// The wall shared by two chambers, if they are adjacent.
    pub fn shared_wall(&self, a: &Chamber, b: &Chamber) -> Option<Wall> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        let (i, j) = (i.min(j), i.max(j));
        self.edges
            .iter()
            .find(|(x, y, _)| *x == i && *y == j)
            .map(|e| e.2)
    }

    pub fn count_kind(&self, k: ChamberKind) -> usize {
        self.nodes.iter().filter(|c| c.kind() == k).count()
    }
}

/// Coefficients of `β ↦ β_I` as a row.
fn wall_row(w: &Wall) -> Vec<Rational> {
    (1..=4u8)
        .map(|i| {
            if w.subset().contains(i) {
                qi(1)
            } else {
                qi(-1)
            }
        })
        .collect()
}

/// Whether the closures of two chambers whose sign vectors differ only at
/// `wall` share a 3-dimensional cell. Solves `max t` subject to lying on
/// `wall` and clearing every other defining inequality by `t`; the cell is
/// 3-dimensional iff the optimum is positive.
fn shares_facet(signs: &[(Wall, i8)], wall: &Wall) -> bool {
    // Variables: β1..β4, t.
    let mut cons: Vec<Constraint> = Vec::new();
    let with_t = |mut row: Vec<Rational>, t: Rational| {
        row.push(t);
        row
    };
    cons.push(Constraint {
        coeffs: with_t(wall_row(wall), qi(0)),
        cmp: Cmp::Eq,
        rhs: qi(wall.level()),
    });
    for (w, s) in signs {
        if w == wall {
            continue;
        }
        // s·(β_I − k) ≥ t  ⇔  s·β_I − t ≥ s·k
        let row: Vec<Rational> = wall_row(w)
            .into_iter()
            .map(|x| x * qi(i64::from(*s)))
            .collect();
        cons.push(Constraint {
            coeffs: with_t(row, qi(-1)),
            cmp: Cmp::Ge,
            rhs: qi(i64::from(*s) * w.level()),
        });
    }
    for i in 0..4 {
        let mut lo = vec![Rational::zero(); 5];
        lo[i] = Rational::one();
        lo[4] = qi(-1);
        cons.push(Constraint {
            coeffs: lo,
            cmp: Cmp::Ge,
            rhs: qi(0),
        });
        let mut hi = vec![Rational::zero(); 5];
        hi[i] = Rational::one();
        hi[4] = Rational::one();
        cons.push(Constraint {
            coeffs: hi,
            cmp: Cmp::Le,
            rhs: qi(1),
        });
    }
    let mut obj = vec![Rational::zero(); 5];
    obj[4] = Rational::one();
    match maximize(&obj, &cons) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("t is bounded by the cube"),
    }
}

fn build(parity: Parity) -> ChamberGraph {
    let nodes = all_chambers(parity);
    let signs: Vec<Vec<(Wall, i8)>> = nodes.iter().map(Chamber::sign_vector).collect();
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let differing: Vec<Wall> = signs[i]
                .iter()
                .zip(&signs[j])
                .filter(|(a, b)| a.1 != b.1)
                .map(|(a, _)| a.0)
                .collect();
            // Distinct hyperplanes meet in codimension 2, so one differing
            // wall is necessary for a shared 3-cell.
            if differing.len() == 1 && shares_facet(&signs[i], &differing[0]) {
                edges.push((i, j, differing[0]));
            }
        }
    }
    ChamberGraph {
        parity,
        nodes,
        edges,
    }
}

/// The wall-crossing graph, computed once per parity.
pub fn wall_crossing_graph(parity: Parity) -> &'static ChamberGraph {
    static EVEN: OnceLock<ChamberGraph> = OnceLock::new();
    static ODD: OnceLock<ChamberGraph> = OnceLock::new();
    match parity {
        Parity::Even => EVEN.get_or_init(|| build(Parity::Even)),
        Parity::Odd => ODD.get_or_init(|| build(Parity::Odd)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::chamber::neighbor_across_wall;
    use crate::polytope::walls::WallKind;

    #[test]
    fn census_and_degrees() {
        for p in Parity::both() {
            let g = wall_crossing_graph(p);
            assert_eq!(g.nodes.len(), 24);
            for k in [
                ChamberKind::Exterior,
                ChamberKind::TypeA,
                ChamberKind::TypeB,
            ] {
                assert_eq!(g.count_kind(k), 8);
            }
            for (i, c) in g.nodes.iter().enumerate() {
                let expect = match c.kind() {
                    ChamberKind::Exterior => 1,
                    ChamberKind::TypeA => 4,
                    ChamberKind::TypeB => 5,
                };
                assert_eq!(g.degree(i), expect, "{c}");
            }
            assert_eq!(g.edges.len(), 40);
        }
    }

    #[test]
    fn edges_match_combinatorial_rule() {
        for p in Parity::both() {
            let g = wall_crossing_graph(p);
            for (i, j, w) in &g.edges {
                assert_eq!(neighbor_across_wall(&g.nodes[*i], w).unwrap(), g.nodes[*j]);
            }
            for w in g
                .edges
                .iter()
                .map(|e| e.2)
                .filter(|w| w.kind() == WallKind::Interior)
            {
                assert_eq!(g.edges.iter().filter(|e| e.2 == w).count(), 8);
            }
        }
    }
}
