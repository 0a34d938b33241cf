//! Chain complexes over a prime field and the constructions on them.

mod complex;
mod constructions;
mod factor;
mod map;

pub use complex::{ChainComplex, HomologyData, HomologyDegree};
pub use constructions::{
    cofiber, cofiber_map, comparison_morphism, cone, desuspend, desuspend_by, desuspend_map,
    desuspend_map_by, kernel, path, pushout, quotient, quotient_mono, sum_inclusions,
    sum_projections, suspend, suspend_by, suspend_map, suspend_map_by, ChainPushout, CofiberData,
    HomotopySquare, QuotientData,
};
pub use factor::{
    factor_through_cone, factor_through_path, invert, kernel_embedding, lift,
    minimal_factorisation_chain, minimal_representative_chain, standard_decomposition,
    ChainFactorisation, StandardDecomposition,
};
pub use map::ChainMap;
