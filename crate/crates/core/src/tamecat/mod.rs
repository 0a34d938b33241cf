//! Tame `[0,∞)`-parametrised chain complexes, their maps, factorisations and covers.

mod complex;
mod factor;
mod map;
mod param;

pub use complex::{common_grid, TameComplex};
pub use factor::{
    constant_on, factorise, lift_tame, minimal_cover, minimal_factorisation_tame, sum_inclusions,
    sum_projections, MinimalCover, TameFactorisation, TameMinimalFactorisation,
};
pub use map::{TameCofiber, TameMap};
pub use param::{merge_grids, validate_grid, Param};
