//! Quasi-parabolic Higgs data on a split rank-2 bundle over the projective line.

pub mod aut;
pub mod blowup;
pub mod cocycle;
pub mod field;
pub mod line;
pub mod locus;
pub mod marks;
pub mod repr;

pub use aut::{apply_automorphism, conjugate, AutElement};
pub use blowup::{from_blowup, orbit_stratum_of_point, to_blowup, PointOrbit};
pub use cocycle::{jumping_cocycle, CocycleReport, Laurent};
pub use field::{mat_is_zero, nilpotent_kernel, HiggsField, Mat2, Qph};
pub use line::{
    first_summand_set, flags_met, flags_subset, has_line_through, higgs_divisor, interpolate,
    kernel_line, line_space, LineSpace, LineSubbundle,
};
pub use locus::{
    branch_value, compatible_fields, has_covering_pair, orbit_invariant, qp_locus, QpLocus,
};
pub use marks::{MarkedPoints, Splitting};
pub use repr::{canonical_representative, default_point, realizable_labels, RepSpec};
