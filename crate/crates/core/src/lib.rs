//! Orthogonal Vectors and its fine-grained reductions to geometric
//! problems: bichromatic closest pair, nearest-neighbor search and the
//! discrete Fréchet distance.
//!
//! Every reduction is an ordinary function from an [`OvInstance`] to an
//! instance of the target problem, and every target problem has an exact
//! solver, so each "iff" can be checked mechanically against the
//! brute-force OV oracle (see [`reduction::verify_reduction`]).
//!
//! Arithmetic is exact throughout: coordinates are [`Rat`]s and distances
//! are compared squared ([`SqDist`]).

pub mod bench;
pub mod error;
pub mod frechet;
pub mod gen;
pub mod io;
pub mod model;
pub mod ov;
pub mod proximity;
pub mod rat;
pub mod reduction;

pub use error::{Error, Result};
pub use frechet::{
    brute_force_frechet_sq, brute_force_frechet_sq_capped, frechet_decide, frechet_sq,
    frechet_sq_value, FrechetResult, Traversal,
};
pub use model::{inner_product, squared_euclidean, BitVector, Curve2, OvInstance, Point2, PointD, SqDist};
pub use ov::{ov_count, ov_decide, ov_decide_blocked, plan_unbalanced, OvWitness, UnbalancedPlan};
pub use rat::Rat;
