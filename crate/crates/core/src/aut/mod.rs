//! Automorphisms of `A₁` and the affine form-preservation analysis.
//!
//! An automorphism is stored by the images of `x` and `∂`; the generator
//! word it was built from is kept for display only.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Rational, UPoly, XPoly};
use crate::weyl::WeylOp;

pub mod affine;
pub mod polysolve;

pub use affine::{affine_form_constraints, AffineReport, AFFINE_NAMES};

/// Generators of `Aut(A₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x ↦ x + P(∂)`, `∂ ↦ ∂`
    Phi1(UPoly),
    /// `x ↦ x`, `∂ ↦ ∂ + P(x)`
    Phi2(UPoly),
    /// `x ↦ a x + b ∂`, `∂ ↦ c ∂ + d x` with `ac − bd = 1`
    Phi3 { a: Rational, b: Rational, c: Rational, d: Rational },
    /// `x ↦ x + c1`, `∂ ↦ ∂ + c2`
    Shift { c1: Rational, c2: Rational },
}

impl Generator {
    pub fn phi3(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = &a * &c - &b * &d;
        if !det.is_one() {
            return Err(Error::InvalidGenerator(format!("phi3 has ac - bd = {det}, expected 1")));
        }
        Ok(Generator::Phi3 { a, b, c, d })
    }

    /// Images of `x` and `∂`.
    pub fn images<const N: usize>(&self) -> (WeylOp<N>, WeylOp<N>) {
        let k = |r: &Rational| MPoly::<N>::constant(r.clone());
        let (x, d) = (WeylOp::x(), WeylOp::d());
        match self {
            Generator::Phi1(p) => {
                let pd = WeylOp::from_coeffs(p.coeffs().iter().map(|c| XPoly::constant(k(c))).collect());
                (&x + &pd, d)
            }
            Generator::Phi2(p) => {
                let px = XPoly::from_coeffs(p.coeffs().iter().map(k).collect());
                (x, &d + &WeylOp::from_xpoly(px))
            }
            Generator::Phi3 { a, b, c, d: dd } => (
                &WeylOp::term(k(a), 1, 0) + &WeylOp::term(k(b), 0, 1),
                &WeylOp::term(k(c), 0, 1) + &WeylOp::term(k(dd), 1, 0),
            ),
            Generator::Shift { c1, c2 } => (
                &x + &WeylOp::constant(k(c1)),
                &d + &WeylOp::constant(k(c2)),
            ),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Phi1(p) => write!(f, "phi1:{}", p.fmt_var("D")),
            Generator::Phi2(p) => write!(f, "phi2:{}", p.fmt_var("x")),
            Generator::Phi3 { a, b, c, d } => write!(f, "phi3:{a},{b},{c},{d}"),
            Generator::Shift { c1, c2 } => write!(f, "shift:{c1},{c2}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Automorphism<const N: usize = { crate::exactalg::NPARAMS }> {
    image_x: WeylOp<N>,
    image_d: WeylOp<N>,
    word: Vec<Generator>,
}

impl<const N: usize> PartialEq for Automorphism<N> {
    fn eq(&self, other: &Self) -> bool {
        self.image_x == other.image_x && self.image_d == other.image_d
    }
}

impl<const N: usize> Eq for Automorphism<N> {}

impl<const N: usize> Automorphism<N> {
    pub fn identity() -> Self {
        Automorphism { image_x: WeylOp::x(), image_d: WeylOp::d(), word: Vec::new() }
    }

    pub fn generator(g: Generator) -> Result<Self> {
        if let Generator::Phi3 { a, b, c, d } = &g {
            Generator::phi3(a.clone(), b.clone(), c.clone(), d.clone())?;
        }
        let (image_x, image_d) = g.images();
        Self::checked(image_x, image_d, vec![g])
    }

    /// Composes the word left to right, so the rightmost generator acts
    /// first.
    pub fn from_word(word: &[Generator]) -> Result<Self> {
        let mut out = Self::identity();
        for g in word {
            out = out.compose(&Self::generator(g.clone())?)?;
        }
        Ok(out)
    }

    /// Automorphism with the given images, checked against `[∂', x'] = 1`.
    pub fn from_images(image_x: WeylOp<N>, image_d: WeylOp<N>) -> Result<Self> {
        Self::checked(image_x, image_d, Vec::new())
    }

    fn checked(image_x: WeylOp<N>, image_d: WeylOp<N>, word: Vec<Generator>) -> Result<Self> {
        if image_d.commutator(&image_x)? != WeylOp::one() {
            return Err(Error::InvalidGenerator("images violate [D, x] = 1".into()));
        }
        Ok(Automorphism { image_x, image_d, word })
    }

    pub fn image_x(&self) -> &WeylOp<N> {
        &self.image_x
    }

    pub fn image_d(&self) -> &WeylOp<N> {
        &self.image_d
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    /// `[φ(∂), φ(x)]`, which is 1 for every automorphism.
    pub fn ccr_residual(&self) -> Result<WeylOp<N>> {
        Ok(&self.image_d.commutator(&self.image_x)? - &WeylOp::one())
    }

    /// `self ∘ other`: applies `self` to the images of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(Automorphism {
            image_x: self.apply(&other.image_x)?,
            image_d: self.apply(&other.image_d)?,
            word,
        })
    }

    /// Substitutes the images into the normal form: each `a_i(x) ∂^i`
    /// becomes `a_i(φ(x)) φ(∂)^i`.
    pub fn apply(&self, op: &WeylOp<N>) -> Result<WeylOp<N>> {
        let xdeg = op.x_degree().unwrap_or(0);
        let xp = self.image_x.powers(xdeg as u32)?;
        let mut dp = WeylOp::one();
        let mut out = WeylOp::zero();
        for (i, coeff) in op.coeffs().iter().enumerate() {
            if i > 0 {
                dp = dp.mul(&self.image_d)?;
            }
            if coeff.is_zero() {
                continue;
            }
            let mut s = WeylOp::zero();
            for (j, c) in coeff.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    s = &s + &xp[j].scale(c);
                }
            }
            out = &out + &s.mul(&dp)?;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.image_x == WeylOp::x() && self.image_d == WeylOp::d()
    }
}

impl<const N: usize> fmt::Display for Automorphism<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}, D -> {}", self.image_x, self.image_d)
    }
}

/// Formats a generator word as `g1;g2;...`.
pub fn format_word(word: &[Generator]) -> String {
    word.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}
