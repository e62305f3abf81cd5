//! Exact scalars, projective points, binary forms and linear algebra.

pub mod form;
pub mod linalg;
pub mod lp;
pub mod proj;
pub mod rational;

pub use form::{bf_gcd, bf_gcd_all, BinaryForm};
pub use linalg::nullspace;
pub use proj::{cross_ratio, ProjPoint};
pub use rational::{parse_rational, q, qi, sqrt_exact, Rational};
