//! Polynomials in `x` with multivariate-polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::mpoly::MPoly;
use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct XPoly<const N: usize> {
    coeffs: Vec<MPoly<N>>,
}

impl<const N: usize> XPoly<N> {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: MPoly<N>) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![MPoly::zero(), MPoly::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: MPoly<N>, k: usize) -> Self {
        let mut coeffs = vec![MPoly::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// Coefficients indexed by x-degree; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<MPoly<N>>) -> Self {
        while coeffs.last().is_some_and(MPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[MPoly<N>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MPoly<N>> {
        self.coeffs
    }

    pub fn get(&self, k: usize) -> Option<&MPoly<N>> {
        self.coeffs.get(k)
    }

    pub fn coeff(&self, k: usize) -> MPoly<N> {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// x-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&MPoly<N>> {
        self.coeffs.last()
    }

    /// Formal derivative d/dx.
    pub fn diff(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn scale(&self, c: &MPoly<N>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XPoly { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(MPoly::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Specializes every parameter coefficient at `point`.
    pub fn eval_params(&self, point: &[Rational; N]) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().map(|c| MPoly::constant(c.eval(point))).collect(),
        )
    }

    /// Evaluates at a value of `x` in the coefficient ring.
    pub fn eval_x(&self, x: &MPoly<N>) -> MPoly<N> {
        let mut acc = MPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl FnMut(&MPoly<N>) -> MPoly<N>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, const N: usize> Add<&'a XPoly<N>> for &'a XPoly<N> {
    type Output = XPoly<N>;
    fn add(self, rhs: &'a XPoly<N>) -> XPoly<N> {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), MPoly::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o += c;
        }
        XPoly::from_coeffs(out)
    }
}

impl<'a, const N: usize> Sub<&'a XPoly<N>> for &'a XPoly<N> {
    type Output = XPoly<N>;
    fn sub(self, rhs: &'a XPoly<N>) -> XPoly<N> {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), MPoly::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        XPoly::from_coeffs(out)
    }
}

impl<'a, const N: usize> Mul<&'a XPoly<N>> for &'a XPoly<N> {
    type Output = XPoly<N>;
    fn mul(self, rhs: &'a XPoly<N>) -> XPoly<N> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![MPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl<const N: usize> Neg for &XPoly<N> {
    type Output = XPoly<N>;
    fn neg(self) -> XPoly<N> {
        XPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<const N: usize> fmt::Display for XPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}
