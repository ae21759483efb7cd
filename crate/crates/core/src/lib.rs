//! Exact coincidence theory for k ≥ 2 maps into a manifold.
//!
//! * [`exterior`]: integer exterior algebra, the cohomology ring of tori.
//! * [`group_ring`]: ℤ[π^{k-1}] with the π^k action and augmentation.
//! * [`lefschetz`]: coincidence classes for torus, sphere and fact models.
//! * [`solver`] and [`snf`]: the affine coincidence solver used as an
//!   independent check of the torus classes.
//! * [`decider`]: deformability verdicts.
//! * [`batch`] and [`sampling`]: randomized batch cross-checks, run on rayon
//!   when the `parallel` feature is enabled.

pub mod batch;
pub mod decider;
pub mod error;
pub mod exterior;
pub mod group_ring;
pub mod lefschetz;
pub mod matrix;
pub mod sampling;
pub mod snf;
pub mod solver;

pub use error::{Error, Result};
pub use exterior::ExteriorElement;
pub use matrix::IntegerMatrix;

/// How data-parallel loops run. `Parallel` falls back to sequential
/// execution when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}
