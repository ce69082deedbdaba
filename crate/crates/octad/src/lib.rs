//! Exact arithmetic for conic and composition algebras over commutative
//! rings, integral octonion orders, Zorn vector matrices and cubic Jordan
//! algebras (including the Tits constructions), with a polynomial identity
//! checker that works at generic elements.

pub mod cayley;
pub mod coeff;
pub mod conic;
pub mod cubic;
pub mod error;
pub mod her3;
pub mod identity;
pub mod linalg;
pub mod quadform;
pub mod scalar;
pub mod tits;
pub mod zorders;
pub mod zorn;

pub use conic::{ConicAlgebra, ConicElement, ConicHandle, ConicIdempotent, ConicIdentity};
pub use error::{Error, Result};
pub use identity::{CheckMode, Identity, Verdict, Witness, DEFAULT_SEED};
pub use quadform::{BilinearForm, QuadraticForm};
pub use scalar::{RingDescriptor, Scalar};
