//! Compile systems of exponential-polynomial equations into monomial
//! dynamical systems on algebraic tori, and check that the return set of the
//! dynamical system is exactly the solution set of the equations.
//!
//! The pipeline has four representations of the same system:
//!
//! 1. [`exppoly::ExpPolySystem`]: equations such as
//!    `(1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1 = 0` over an order `Z[g]/(m)`,
//!    kept in monomial and binomial normal forms.
//! 2. [`encoder::RingLinearSystem`]: commuting matrices `psi_i` over the ring,
//!    a start vector and a target kernel, built block by block.
//! 3. [`descent::IntegerLinearSystem`]: the same system over `Z`, via the
//!    regular representation of the ring.
//! 4. [`torus::TorusSystem`]: commuting monomial maps on `G_m^N`, the start
//!    point `2^a`, and a target subgroup cut out by characters.
//!
//! [`verify`] computes the return set of each level over a finite box and
//! compares them.
//!
//! ```
//! use expoly::{compile_str, verify, EncodeOptions};
//!
//! let text = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";
//! let compiled = compile_str(text, EncodeOptions::default()).unwrap();
//! assert_eq!(compiled.torus.dimension(), 36);
//!
//! let region = verify::BoxRegion::new(6, 2);
//! let report = verify::cross_check(&compiled, region, &verify::Level::ALL).unwrap();
//! assert!(report.agreement);
//! ```

pub mod descent;
pub mod encoder;
pub mod error;
pub mod exppoly;
pub mod matrix;
pub mod pipeline;
pub mod ring;
pub mod serialize;
pub mod torus;
pub mod verify;

pub use encoder::EncodeOptions;
pub use error::{Error, Result};
pub use exppoly::ExpPolySystem;
pub use pipeline::{compile, compile_str, Compiled};
pub use ring::{RingElement, RingSpec};
