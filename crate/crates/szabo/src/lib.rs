//! Szabó's geometric spectral sequence for knots and links, over the
//! two-element field.
//!
//! The pipeline: a planar diagram ([`diagram::LinkDiagram`]) is resolved into
//! the cube of resolutions ([`cube`]), faces of the cube are classified into
//! the map families ([`maps`]), the filtered chain complex is assembled
//! ([`complex`]) and the pages `E^k` are computed by iterated cancellation
//! ([`spectral`]).

pub mod canon;
pub mod complex;
pub mod cube;
pub mod diagram;
pub mod fixtures;
pub mod gf2;
pub mod khovanov;
pub mod maps;
pub mod poly;
pub mod spectral;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: estimated {estimate} generators > cap {cap}")]
    ResourceLimit { estimate: u64, cap: u64 },
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
