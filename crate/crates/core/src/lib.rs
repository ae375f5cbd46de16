//! Exact orbit classification of valence-two Killing tensors on the
//! Euclidean and Minkowski planes under the group of transformations that
//! preserve the type of the associated separable web.

pub mod classify;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod tensor;
pub mod testkit;
pub mod web;

pub use classify::{classify, same_orbit, ClassificationReport, OrbitClass, SingularSet};
pub use error::{Error, Result};
pub use linalg::{rat_det, rat_rank, RatMatrix};
pub use poly::Poly;
pub use rational::Rational;
pub use tensor::{KTParams, MetricSignature, Point2};
