//! Exact computation of q-deformed rationals, the q-deformed modular group,
//! quiver closure polynomials and Jones polynomials of rational links.

pub mod error;
pub mod fractions;
pub mod knots;
pub mod laurent;
pub mod qmod;
pub mod qrat;
pub mod quivers;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
pub use fractions::{ContinuedFraction, Fraction};
pub use laurent::LaurentPoly;
pub use qmod::{GenWord, QMatrix, TraceType};
pub use qrat::{QRational, Side};
pub use quivers::Quiver;
