//! Exact-arithmetic toolkit for point selection in geometric hypergraphs:
//! simplex-family classification, simplicial partitions, piercing-point
//! selection, semi-algebraic Turán extraction and halving/k-set counts.

pub mod error;
pub mod extremal;
pub mod family;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod partition;
pub mod rational;
pub mod sample;
pub mod selection;
pub mod turan;

pub use error::{Error, Result};
pub use geometry::{
    hyperplane_through, orientation, perturb_general_position, point_in_simplex, Closure,
    OrientedHyperplane, Point, PointSet, Sign, Simplex,
};
pub use lp::{linear_feasible, Feasibility, LinearConstraint, Relation};
pub use rational::Rational;
