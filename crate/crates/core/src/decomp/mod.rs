//! Interval spheres, the decomposition of cofibrant objects, and Betti diagrams.

mod betti;
mod sphere;
mod split;

pub use betti::{diagrams_from_spheres, normalize, off_diagonal, spheres_of, BettiDiagram};
pub use sphere::{hom_from_sphere, is_cofibration_from_sphere, IntervalSphere};
pub use split::{
    betti, decompose_cofibrant, decompose_with_summands, is_minimal, is_minimal_cover, min_betti,
    minimal_representative_tame, rebuild_from_betti, Summand,
};
