//! Latin cubes and squares, their signs, and the identities tying their
//! signed counts to hyperdeterminants.

mod cube;
mod hyper;
mod square;

pub use cube::{
    alon_tarsi_delta_3d, enumerate_latin_cubes, latin_census, latin_census_by_relabeling, unipotent_delta,
    CubeFamily, LatinCensus, LatinCube, PermutationMatrix3D,
};
pub use hyper::{
    count_by_inclusion_exclusion, hyperdet, hyperper, symbol_delta_by_inclusion_exclusion, Array3,
    HYPER_ORDER_CAP, INCLUSION_EXCLUSION_CAP,
};
pub use square::{enumerate_latin_squares, latin_square_delta, LatinSquare, SQUARE_ORDER_CAP};
