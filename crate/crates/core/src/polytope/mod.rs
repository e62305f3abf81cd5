//! The even and odd weight polytopes: walls, chambers, partition sets, the
//! wall-crossing graph and the D4 symmetry.

pub mod chamber;
pub mod graph;
pub mod subset;
pub mod symmetry;
pub mod walls;
pub mod weights;

pub use chamber::{
    all_chambers, classify, exterior_link, neighbor_across_wall, partition_pairs,
    partition_set_table, Chamber, ChamberKind, ChamberType, Classification, PartitionSet, TableRow,
    TetraCell,
};
pub use graph::{wall_crossing_graph, ChamberGraph};
pub use subset::{MarkSubset, Parity};
pub use symmetry::{d4_apply, d4_apply_weight, parity_swap, SignedPerm};
pub use walls::{wall_list, Wall, WallKind};
pub use weights::{
    apex, beta_sum, beta_to_su2, semistable_parabolic_exists, stable_parabolic_bound,
    vertex_of_subset, WeightVector,
};
