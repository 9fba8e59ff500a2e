//! The combinatorial side at finite depth.
//!
//! Infinite shrinking arguments are modeled on a finite ground set: points
//! are depth-`K` subsets of `[0, N)`, cylinders pair a frozen stem with a
//! shrinking reservoir, and graphs live on points. Where the infinite
//! theory guarantees a monochromatic or independent sub-reservoir outright,
//! the finite searches are exhaustive and return `None` (NOT-FOUND) when no
//! witness exists at the requested size; fixtures are therefore chosen
//! where the searches succeed, and every returned witness is re-verified.
//!
//! All searches scan candidate subsets in lexicographic order and return
//! the first success, so results are deterministic and reproducible.

mod fusion;
mod pgraph;
mod point;

pub use fusion::{
    fusion_limit, fusion_pipeline, kn_bookkeeping, verify_pipeline, FusionState, InvFamReadError,
    InvolutionFamily, KnBookkeeping, PipelineOutcome, PipelineRun, INVFAM_FORMAT,
};
pub use pgraph::{
    e0_shrink, independent_cylinder, monochromatic_shrink, star_graph, PointGraph,
};
pub use point::{combinations, cylinder_points, Cylinder, CylinderPoints, FinitePoint};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllentuckError {
    #[error("tuple must be strictly increasing: {tuple:?}")]
    NotIncreasing { tuple: Vec<usize> },
    #[error("stem {stem:?} must lie entirely below reservoir {reservoir:?}")]
    StemAboveReservoir {
        stem: Vec<usize>,
        reservoir: Vec<usize>,
    },
    #[error("edge joins point {point} to itself")]
    SelfLoopPoint { point: FinitePoint },
    #[error("point {point} has depth {}, expected {expected}", .point.depth())]
    WrongDepth {
        point: FinitePoint,
        expected: usize,
    },
    #[error("element {element} is outside the ground set of size {ground}")]
    ElementOutOfGround { element: usize, ground: usize },
    #[error("involution {index} maps {point} in two different ways")]
    ConflictingImage { index: usize, point: FinitePoint },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("{stages} pipeline stages need stems past depth {depth}")]
    PipelineDepthExceeded { stages: usize, depth: usize },
    #[error(
        "stage {stage}: shrink target {target} is below the {needed} reservoir elements later cylinders need"
    )]
    ReservoirExhausted {
        stage: usize,
        target: usize,
        needed: usize,
    },
    #[error("fusion invariant violated at stage {stage}")]
    FusionViolation { stage: usize },
}
