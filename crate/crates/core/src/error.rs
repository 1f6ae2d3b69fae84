use thiserror::Error;

use crate::encoder::EncodeError;
use crate::exppoly::ParseError;
use crate::ring::RingError;
use crate::serialize::DocumentError;
use crate::torus::TorusError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected a point with {expected} coordinates, got {found}")]
pub struct ArityError {
    pub expected: usize,
    pub found: usize,
}

impl ArityError {
    pub fn check(expected: usize, found: usize) -> Result<(), Self> {
        if expected == found {
            Ok(())
        } else {
            Err(Self { expected, found })
        }
    }
}

/// Any failure the pipeline can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Arity(#[from] ArityError),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
