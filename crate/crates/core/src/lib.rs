//! Exact regularity analysis of polyhedral subdivisions and fans.
//!
//! The crate decides regularity and recursive regularity of subdivisions of
//! point configurations and of polyhedral fans, computes finest regular
//! coarsenings and regularity trees, checks acyclicity of the in-front
//! (visibility) relation, and builds floodlight covering assignments.  Two
//! applications sit on top: redundant cables of spider webs and universal
//! embeddings of drawable directional graphs.
//!
//! Everything is computed in exact rational arithmetic; all certificates
//! (height functions, dual multipliers, cycle coefficients, transport duals)
//! are verified exactly before they are returned.
//!
//! The numeric core is generic over the [`Scalar`] trait, implemented for
//! every `num_rational::Ratio<I>`; [`Rational`] (arbitrary precision) is the
//! default type parameter everywhere.

pub mod applications;
pub mod complex;
pub mod error;
pub mod floodlight;
pub mod io;
pub mod lp;
pub mod matching;
pub mod matrix;
pub mod rectree;
pub mod regularity;
pub mod relaxation;
pub mod scalar;
pub mod visibility;

pub use applications::{
    check_embedding, embed_drawable, forcing_cycle, spiderweb_redundant_cables, DirectionalGraph,
    DrawableEmbedding, EdgeMargin, EmbeddingReport, ForcingCycle, SpiderWeb, WebAnalysis,
};
pub use complex::{
    fan_from_section, Coarsening, ComplexKind, Facet, Fan, PointConfiguration, Subdivision,
    ValidationOptions, Violation, Wall,
};
pub use error::{Error, Result};
pub use floodlight::{
    covering_assignment, line_assignment, overlap_check, sample_coverage, uncovered_region_2d,
    uncovered_witness, universality_search, Assignment, CoverageSample, CoveringOutcome,
    CoveringPlan, LineOutcome, OverlapReport, UniversalityOutcome,
};
pub use lp::{
    gordan, gordan_relaxed, lp_solve, Bound, GordanWitness, LinearProgram, LpOutcome, LpStatus,
    Relation,
};
pub use matrix::{LinearSolution, Matrix};
pub use rectree::{is_recursively_regular, regularity_tree, NodeStatus, RegularityTree, TreeNode};
pub use regularity::{
    finest_regular_coarsening, is_regular, lift_project_2d, regularity_system, restrict,
    FinestRegularCoarsening, HeightFunction, RegularityVerdict, Restriction,
};
pub use relaxation::{
    minimum_relaxation, verify_dual_certificate, Certificate, RelaxableSystem, RelaxationResult,
};
pub use scalar::Scalar;
pub use visibility::{
    acyclic_all_directions, acyclic_from_section_point, acyclic_in_direction, infront_digraph,
    AllDirectionsVerdict, CycleCertificate, DirectionVerdict, InFrontArc, InFrontDigraph,
};

/// Arbitrary-precision exact rational, the default scalar.
pub type Rational = num_rational::BigRational;

/// Matrix of arbitrary-precision rationals.
pub type RatMatrix = Matrix<Rational>;
