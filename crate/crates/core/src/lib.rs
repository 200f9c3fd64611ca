//! Exact computations with Weyl cycles on blow-ups of projective space at
//! general points: Weyl orbits of divisors and curves, Cremona actions,
//! base-locus multiplicities, intersections on the blow-up of `X^4_8` along
//! its Weyl curves, and the Weyl expected dimension, with a finite-field
//! interpolation oracle for cross-checks.

pub mod baselocus;
pub mod chow;
pub mod cone;
pub mod dimension;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{CurveClass, DivisorClass, IndexSet};
