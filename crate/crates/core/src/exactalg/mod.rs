//! Exact rational arithmetic and the polynomial rings built on it.

pub mod mpoly;
pub mod rational;
pub mod upoly;
pub mod xpoly;

pub use mpoly::{Monomial, MPoly, ParamPoint, ParamPoly, NPARAMS};
pub use rational::{int, parse_rational, rat, Rational};
pub use upoly::UPoly;
pub use xpoly::XPoly;

/// `∂p/∂a_j` for a 1-based parameter index `j` in `1..=6`.
pub fn ppoly_partial(p: &ParamPoly, j: usize) -> crate::Result<ParamPoly> {
    if !(1..=NPARAMS).contains(&j) {
        return Err(crate::Error::Usage(format!(
            "parameter index {j} out of range 1..={NPARAMS}"
        )));
    }
    Ok(p.partial(j - 1))
}

/// Convenience: a rational point from integers.
pub fn int_point(v: [i64; NPARAMS]) -> ParamPoint {
    v.map(int)
}
