//! Exact symbolic computation in the first Weyl algebra `A₁ = C[x][∂]`.
//!
//! The crate builds, from the ground up, the machinery needed to study
//! commuting ordinary differential operators with polynomial coefficients:
//!
//! - [`exactalg`]: rationals and the parameter/`x` polynomial rings,
//! - [`weyl`]: normal-ordered operators, commutators, total symbols, adjoints,
//!   and randomized identity verification,
//! - [`aut`]: automorphisms of `A₁` and the affine form-preservation solver,
//! - [`catalog`]: the explicit operator families (`L4b`, `L10b`, Mironov,
//!   Chebyshev) and the genus-two spectral curve coefficients,
//! - [`spectral`]: curve derivation and verification, Jacobian rank and the
//!   dominance scan,
//! - [`centralizer`]: commuting operators of prescribed order by exact linear
//!   algebra.

pub mod aut;
pub mod budget;
pub mod catalog;
pub mod centralizer;
mod error;
pub mod exactalg;
pub mod linalg;
pub mod spectral;
pub mod weyl;

pub use error::{Error, Result};
pub use exactalg::{int, rat, MPoly, ParamPoint, ParamPoly, Rational, UPoly, XPoly};
pub use weyl::verify::{Mode, Verdict};
pub use weyl::{TotalSymbol, WeylOp};
