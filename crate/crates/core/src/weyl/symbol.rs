use std::fmt;
use std::ops::Add;

use crate::exactalg::{MPoly, XPoly};

/// Total symbol: the normal form read as a commutative polynomial in
/// `(x, ξ)`, with `coeffs[i]` the coefficient of `ξ^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalSymbol<const N: usize> {
    coeffs: Vec<XPoly<N>>,
}

impl<const N: usize> TotalSymbol<N> {
    pub(crate) fn from_coeffs(mut coeffs: Vec<XPoly<N>>) -> Self {
        while coeffs.last().is_some_and(XPoly::is_zero) {
            coeffs.pop();
        }
        TotalSymbol { coeffs }
    }

    /// Total degree in `(x, ξ)`; `None` for the zero symbol.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| d + i))
            .max()
    }

    pub fn coeff(&self, xpow: usize, xipow: usize) -> MPoly<N> {
        self.coeffs
            .get(xipow)
            .map(|c| c.coeff(xpow))
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<'a, const N: usize> Add<&'a TotalSymbol<N>> for &'a TotalSymbol<N> {
    type Output = TotalSymbol<N>;
    fn add(self, rhs: &'a TotalSymbol<N>) -> TotalSymbol<N> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TotalSymbol::from_coeffs(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => XPoly::zero(),
                })
                .collect(),
        )
    }
}

impl<const N: usize> fmt::Display for TotalSymbol<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Same layout as the operator form with `xi` in place of `D`.
        let op = super::WeylOp::from_coeffs(self.coeffs.clone());
        f.write_str(&op.to_string().replace('D', "xi"))
    }
}
