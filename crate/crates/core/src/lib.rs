//! Plane graphs as rotation systems, missing-edge counts, certified
//! extraction of near-triangulations, exact cycle oracles, the dense
//! constructions behind the cycle bounds, and seeded verification suites.
//!
//! Ids are 0-based here and 1-based in files. The guide under `book/` walks
//! through each module; its snippets run as doctests of this crate.

pub mod bounds;
pub mod connectivity;
pub mod cycles;
pub mod error;
pub mod extractor;
pub mod generators;
pub mod holes;
pub mod io;
pub mod plane;
pub mod verify;

pub use error::{Error, Result};
pub use extractor::{
    check_witness, extract_near_triangulation, Extraction, NearTriangulationWitness,
};
pub use plane::{CycleRef, PlaneGraph};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/plane-graphs.md")]
    mod plane_graphs {}
    #[doc = include_str!("../../../book/src/holes.md")]
    mod holes {}
    #[doc = include_str!("../../../book/src/extraction.md")]
    mod extraction {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    mod cycles {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
