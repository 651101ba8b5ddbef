//! Exact computations for parametric centers of the Abel equation
//! `y' = p(x)y³ + q(x)y²` on a real interval: return-map coefficients and
//! their parameter strata, polynomial moments, `[a,b]`-decompositions and the
//! composition condition, zero-moment subspaces, and trigonometric moments.

pub mod error;
pub mod acceptance;
pub mod center;
pub mod decomp;
pub mod exact;
pub mod moments;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod trig;

pub use error::{Error, Result};
pub use exact::{kernel_basis, Matrix, Scalar};
pub use poly::{Interval, PcPair, Poly};
