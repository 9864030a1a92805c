//! Frieze patterns of type Lambda and their realizations by dissected surfaces.

pub mod frieze;
pub mod matchings;
pub mod realize;
pub mod ring;
pub mod surface;
pub mod tpaths;
