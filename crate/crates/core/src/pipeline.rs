//! The full compilation chain: equations, ring-linear system, integer-linear
//! system, torus system.

use crate::descent::{descend_system, IntegerLinearSystem};
use crate::encoder::{assemble, EncodeOptions, RingLinearSystem};
use crate::error::Result;
use crate::exppoly::ExpPolySystem;
use crate::torus::{exponentiate, TorusSystem};

/// Every representation of one source system.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub source: ExpPolySystem,
    pub options: EncodeOptions,
    pub ring: RingLinearSystem,
    pub integer: IntegerLinearSystem,
    pub torus: TorusSystem,
}

impl Compiled {
    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }
}

pub fn compile(source: ExpPolySystem, options: EncodeOptions) -> Result<Compiled> {
    let ring = assemble(&source, options)?;
    let integer = descend_system(&ring);
    let torus = exponentiate(&integer)?;
    Ok(Compiled {
        source,
        options,
        ring,
        integer,
        torus,
    })
}

/// Parses a system file and compiles it.
pub fn compile_str(text: &str, options: EncodeOptions) -> Result<Compiled> {
    compile(ExpPolySystem::parse(text)?, options)
}
