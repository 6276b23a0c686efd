//! Vanishing ideals of finite point sets, lower bounds for almost covers by
//! hyperplanes, and an exact minimum almost-cover solver.
//!
//! An almost cover of a finite set `V ⊆ F^n` at a point `v ∈ V` is a family
//! of affine hyperplanes whose union contains `V \ {v}` but not `v`.

pub mod bounds;
pub mod cover;
pub mod error;
pub mod families;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod vanishing;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use geometry::{Hyperplane, Point, PointSet};
