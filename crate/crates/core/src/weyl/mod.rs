//! Normal-form arithmetic in the first Weyl algebra.
//!
//! An operator is stored as `Σ a_i(x) ∂^i` with every coefficient written to
//! the left of the ∂-power. Coefficients are polynomials in `x` over the
//! parameter ring `MPoly<N>`.

mod symbol;
pub mod verify;

pub use symbol::TotalSymbol;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::budget;
use crate::error::Result;
use crate::exactalg::mpoly::TermAcc;
use crate::exactalg::{MPoly, Rational, XPoly, NPARAMS};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeylOp<const N: usize = NPARAMS> {
    coeffs: Vec<XPoly<N>>,
}

impl<const N: usize> WeylOp<N> {
    pub fn zero() -> Self {
        WeylOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(MPoly::one())
    }

    pub fn x() -> Self {
        Self::from_xpoly(XPoly::x())
    }

    pub fn d() -> Self {
        Self::term(MPoly::one(), 0, 1)
    }

    pub fn constant(c: MPoly<N>) -> Self {
        Self::from_xpoly(XPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(MPoly::from_int(n))
    }

    pub fn from_xpoly(p: XPoly<N>) -> Self {
        Self::from_coeffs(vec![p])
    }

    /// `c * x^xpow * ∂^dpow`
    pub fn term(c: MPoly<N>, xpow: usize, dpow: usize) -> Self {
        let mut coeffs = vec![XPoly::zero(); dpow];
        coeffs.push(XPoly::monomial(c, xpow));
        Self::from_coeffs(coeffs)
    }

    /// Coefficients indexed by ∂-power; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<XPoly<N>>) -> Self {
        while coeffs.last().is_some_and(XPoly::is_zero) {
            coeffs.pop();
        }
        WeylOp { coeffs }
    }

    /// Builds an operator from `(dpow, xpow, coefficient)` triples; repeated
    /// positions are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, MPoly<N>)>) -> Self {
        let mut grid: Vec<Vec<MPoly<N>>> = Vec::new();
        for (i, p, c) in terms {
            if grid.len() <= i {
                grid.resize(i + 1, Vec::new());
            }
            if grid[i].len() <= p {
                grid[i].resize(p + 1, MPoly::zero());
            }
            grid[i][p] += &c;
        }
        Self::from_coeffs(grid.into_iter().map(XPoly::from_coeffs).collect())
    }

    pub fn coeffs(&self) -> &[XPoly<N>] {
        &self.coeffs
    }

    pub fn coeff(&self, dpow: usize) -> Option<&XPoly<N>> {
        self.coeffs.get(dpow)
    }

    /// Coefficient of `x^xpow ∂^dpow`.
    pub fn coeff_at(&self, dpow: usize, xpow: usize) -> MPoly<N> {
        self.coeffs
            .get(dpow)
            .and_then(|c| c.get(xpow))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in ∂; `None` stands for the zero operator (order −∞).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&XPoly<N>> {
        self.coeffs.last()
    }

    /// Highest x-degree over all coefficients.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(XPoly::degree).max()
    }

    /// Highest total parameter degree over all coefficients.
    pub fn param_degree(&self) -> u32 {
        self.terms()
            .filter_map(|(_, _, c)| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// True when every coefficient is a rational constant.
    pub fn is_specialized(&self) -> bool {
        self.terms().all(|(_, _, c)| c.is_constant())
    }

    /// Nonzero terms `(dpow, xpow, coefficient)` in descending
    /// (∂-power, x-power) order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &MPoly<N>)> + '_ {
        self.coeffs.iter().enumerate().rev().flat_map(|(i, xp)| {
            xp.coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(p, c)| (i, p, c))
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms().map(|(_, _, c)| c.len()).sum()
    }

    pub fn scale(&self, s: &MPoly<N>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale_rational(s)).collect())
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&MPoly<N>) -> MPoly<N>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.map_coeffs(&mut f)).collect())
    }

    /// Evaluates every parameter coefficient at `point`.
    pub fn specialize(&self, point: &[Rational; N]) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.eval_params(point)).collect())
    }

    /// Normal-ordered product `self · rhs`, using
    /// `∂^i x^q = Σ_k C(i,k) q!/(q-k)! x^(q-k) ∂^(i-k)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let (Some(oa), Some(ob)) = (self.order(), rhs.order()) else {
            return Ok(Self::zero());
        };
        let da = self.x_degree().unwrap_or(0);
        let db = rhs.x_degree().unwrap_or(0);
        let mut acc: Vec<Vec<TermAcc<N>>> = (0..=oa + ob)
            .map(|_| (0..=da + db).map(|_| TermAcc::new()).collect())
            .collect();
        for (i, ai) in self.coeffs.iter().enumerate() {
            for (p, a) in ai.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, bj) in rhs.coeffs.iter().enumerate() {
                    for (q, b) in bj.coeffs().iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let kmax = i.min(q);
                        if kmax == 0 {
                            a.mul_into(b, &Rational::one(), &mut acc[i + j][p + q]);
                            continue;
                        }
                        let prod = a * b;
                        let mut factor = BigInt::one();
                        for k in 0..=kmax {
                            if k > 0 {
                                factor = factor * BigInt::from((i - k + 1) * (q - k + 1))
                                    / BigInt::from(k);
                            }
                            let f = Rational::from_integer(factor.clone());
                            prod.add_into(&mut acc[i + j - k][p + q - k], &f);
                        }
                    }
                }
            }
            budget::check(acc.iter().flatten().map(TermAcc::len).sum())?;
        }
        let out = Self::from_coeffs(
            acc.into_iter()
                .map(|row| XPoly::from_coeffs(row.into_iter().map(TermAcc::into_poly).collect()))
                .collect(),
        );
        Ok(out)
    }

    /// Coefficient of `x^xpow ∂^dpow` in `self · rhs`, without forming the
    /// whole product.
    pub fn mul_coeff_at(&self, rhs: &Self, dpow: usize, xpow: usize) -> MPoly<N> {
        let mut acc = TermAcc::new();
        for (i, ai) in self.coeffs.iter().enumerate() {
            for (j, bj) in rhs.coeffs.iter().enumerate() {
                // k = i + j - dpow must lie in 0..=min(i, q)
                let Some(k) = (i + j).checked_sub(dpow) else { continue };
                if k > i {
                    continue;
                }
                for (p, a) in ai.coeffs().iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    // q = xpow - p + k
                    let Some(q) = (xpow + k).checked_sub(p) else { continue };
                    if q < k {
                        continue;
                    }
                    let Some(b) = bj.get(q) else { continue };
                    if b.is_zero() {
                        continue;
                    }
                    let f = binomial(i, k) * falling(q, k);
                    a.mul_into(b, &Rational::from_integer(f), &mut acc);
                }
            }
        }
        acc.into_poly()
    }

    /// `[self, rhs] = self·rhs − rhs·self`
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.mul(rhs)? - &rhs.mul(self)?)
    }

    /// `self^n` by left-to-right repeated multiplication.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// All powers `self^0 ..= self^n`.
    pub fn powers(&self, n: u32) -> Result<Vec<Self>> {
        let mut out = vec![Self::one()];
        for k in 0..n as usize {
            let next = out[k].mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    /// `Σ c_i X^i` by Horner's scheme; `cs[i]` is the coefficient of `X^i`.
    pub fn subst_constpoly(cs: &[MPoly<N>], x: &Self) -> Result<Self> {
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = &acc.mul(x)? + &Self::constant(c.clone());
        }
        Ok(acc)
    }

    pub fn total_symbol(&self) -> TotalSymbol<N> {
        TotalSymbol::from_coeffs(self.coeffs.clone())
    }

    /// Formal adjoint `Σ (−1)^i ∂^i ∘ a_i(x)`, re-normal-ordered.
    pub fn adjoint(&self) -> Self {
        let mut out: Vec<XPoly<N>> = vec![XPoly::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            let mut deriv = a.clone();
            for k in 0..=i {
                if deriv.is_zero() {
                    break;
                }
                let f = Rational::from_integer(binomial(i, k)) * &sign;
                out[i - k] = &out[i - k] + &deriv.scale_rational(&f);
                deriv = deriv.diff();
            }
        }
        Self::from_coeffs(out)
    }

    /// Writes the canonical text form with the given parameter names.
    pub fn fmt_with(&self, names: &[&str], f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, p, c) in self.terms() {
            let mut factors = String::new();
            if p > 0 {
                factors.push('x');
                if p > 1 {
                    factors.push_str(&format!("^{p}"));
                }
            }
            if i > 0 {
                if !factors.is_empty() {
                    factors.push('*');
                }
                factors.push('D');
                if i > 1 {
                    factors.push_str(&format!("^{i}"));
                }
            }
            let mut coeff = String::new();
            c.fmt_with(names, &mut coeff)?;
            if c.len() > 1 && !factors.is_empty() {
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "({coeff})*{factors}")?;
            } else if c.len() > 1 {
                if !first {
                    if let Some(rest) = coeff.strip_prefix('-') {
                        f.write_str(" - ")?;
                        f.write_str(rest)?;
                    } else {
                        f.write_str(" + ")?;
                        f.write_str(&coeff)?;
                    }
                } else {
                    f.write_str(&coeff)?;
                }
            } else {
                let (m, r) = &c.terms()[0];
                let neg = r.is_negative();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                let mut body = String::new();
                MPoly::monomial(*m, r.abs()).fmt_with(names, &mut body)?;
                if factors.is_empty() {
                    f.write_str(&body)?;
                } else if body == "1" {
                    f.write_str(&factors)?;
                } else {
                    write!(f, "{body}*{factors}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

fn falling(q: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(q - t))
}

impl<const N: usize> fmt::Display for WeylOp<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=N).map(|i| format!("a{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        self.fmt_with(&names, f)
    }
}

impl<'a, const N: usize> Add<&'a WeylOp<N>> for &'a WeylOp<N> {
    type Output = WeylOp<N>;
    fn add(self, rhs: &'a WeylOp<N>) -> WeylOp<N> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOp::from_coeffs(
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

impl<'a, const N: usize> Sub<&'a WeylOp<N>> for &'a WeylOp<N> {
    type Output = WeylOp<N>;
    fn sub(self, rhs: &'a WeylOp<N>) -> WeylOp<N> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOp::from_coeffs(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a - b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => -b,
                    (None, None) => XPoly::zero(),
                })
                .collect(),
        )
    }
}

impl<const N: usize> Add for WeylOp<N> {
    type Output = WeylOp<N>;
    fn add(self, rhs: WeylOp<N>) -> WeylOp<N> {
        &self + &rhs
    }
}

impl<const N: usize> Sub for WeylOp<N> {
    type Output = WeylOp<N>;
    fn sub(self, rhs: WeylOp<N>) -> WeylOp<N> {
        &self - &rhs
    }
}

impl<const N: usize> Neg for &WeylOp<N> {
    type Output = WeylOp<N>;
    fn neg(self) -> WeylOp<N> {
        WeylOp { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<const N: usize> Neg for WeylOp<N> {
    type Output = WeylOp<N>;
    fn neg(self) -> WeylOp<N> {
        -&self
    }
}
