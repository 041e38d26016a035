//! Sparse multivariate polynomials over the rationals.
//!
//! `MPoly<N>` holds terms keyed by exponent `N`-tuples, sorted in
//! graded-lexicographic descending order with no zero coefficients. The
//! parameter ring of the crate is `ParamPoly = MPoly<6>` (variables
//! `a1..a6`); the affine constraint solver uses a wider instance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::rational::Rational;

pub const NPARAMS: usize = 6;

pub type ParamPoly = MPoly<NPARAMS>;

/// A point at which the six parameters are specialized.
pub type ParamPoint = [Rational; NPARAMS];

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<const N: usize>(pub [u16; N]);

impl<const N: usize> Monomial<N> {
    pub const ONE: Self = Monomial([0; N]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Self) -> Self {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }
}

impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Hash-map accumulator used by products; converted to canonical form once.
#[derive(Default)]
pub(crate) struct TermAcc<const N: usize> {
    map: FxHashMap<Monomial<N>, Rational>,
}

impl<const N: usize> TermAcc<N> {
    pub(crate) fn new() -> Self {
        TermAcc { map: FxHashMap::default() }
    }

    pub(crate) fn len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub(crate) fn add(&mut self, m: Monomial<N>, c: Rational) {
        match self.map.get_mut(&m) {
            Some(v) => *v += c,
            None => {
                self.map.insert(m, c);
            }
        }
    }

    pub(crate) fn into_poly(self) -> MPoly<N> {
        let mut terms: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        MPoly { terms }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly<const N: usize> {
    terms: Vec<(Monomial<N>, Rational)>,
}

impl<const N: usize> MPoly<N> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::rational::int(n))
    }

    pub fn monomial(m: Monomial<N>, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// The variable with 0-based index `i`.
    pub fn var(i: usize) -> Self {
        assert!(i < N, "variable index {i} out of range");
        Self::monomial(Monomial::var(i), Rational::one())
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<N>, Rational)>) -> Self {
        let mut acc = TermAcc::new();
        for (m, c) in terms {
            acc.add(m, c);
        }
        acc.into_poly()
    }

    pub fn terms(&self) -> &[(Monomial<N>, Rational)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial<N>) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<&(Monomial<N>, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var] as u32).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of the variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..N).filter(|&v| self.involves(v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial<N>, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &Rational| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, conv(c))));
        MPoly { terms: out }
    }

    pub(crate) fn add_into(&self, acc: &mut TermAcc<N>, factor: &Rational) {
        for (m, c) in &self.terms {
            acc.add(*m, c * factor);
        }
    }

    /// Adds `factor * self * other` into `acc`.
    pub(crate) fn mul_into(&self, other: &Self, factor: &Rational, acc: &mut TermAcc<N>) {
        for (m1, c1) in &self.terms {
            let c1f = c1 * factor;
            for (m2, c2) in &other.terms {
                acc.add(m1.mul(m2), &c1f * c2);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the 0-based variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0;
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), c * Rational::from_integer(k.into()))
            });
        // Lowering one exponent keeps distinct monomials distinct but may
        // reorder them.
        let mut terms: Vec<_> = terms.collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        MPoly { terms }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let powers: Vec<Vec<Rational>> = (0..N)
            .map(|v| {
                let d = self.degree_in(v) as usize;
                let mut p = Vec::with_capacity(d + 1);
                p.push(Rational::one());
                for k in 1..=d {
                    let next = &p[k - 1] * &point[v];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            sum += t;
        }
        sum
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        if !self.involves(var) {
            return self.clone();
        }
        let d = self.degree_in(var) as usize;
        let mut powers = vec![Self::one()];
        for k in 1..=d {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut acc = TermAcc::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[var] as usize;
            rest.0[var] = 0;
            for (pm, pc) in powers[e].terms() {
                acc.add(rest.mul(pm), c * pc);
            }
        }
        acc.into_poly()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?.clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / &lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(MPoly { terms: quot })
    }

    /// Writes the polynomial using the given variable names.
    pub fn fmt_with(&self, names: &[&str], f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if m.is_one() || !a.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(names[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Display for MPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=N).map(|i| format!("a{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        self.fmt_with(&names, f)
    }
}

impl<const N: usize> From<Rational> for MPoly<N> {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a, const N: usize> Add<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn add(self, rhs: &'a MPoly<N>) -> MPoly<N> {
        self.merge(rhs, false)
    }
}

impl<'a, const N: usize> Sub<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn sub(self, rhs: &'a MPoly<N>) -> MPoly<N> {
        self.merge(rhs, true)
    }
}

impl<'a, const N: usize> Mul<&'a MPoly<N>> for &'a MPoly<N> {
    type Output = MPoly<N>;
    fn mul(self, rhs: &'a MPoly<N>) -> MPoly<N> {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut acc = TermAcc::new();
        self.mul_into(rhs, &Rational::one(), &mut acc);
        acc.into_poly()
    }
}

impl<const N: usize> Neg for &MPoly<N> {
    type Output = MPoly<N>;
    fn neg(self) -> MPoly<N> {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<const N: usize> Neg for MPoly<N> {
    type Output = MPoly<N>;
    fn neg(mut self) -> MPoly<N> {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr<MPoly<N>> for MPoly<N> {
            type Output = MPoly<N>;
            fn $m(self, rhs: MPoly<N>) -> MPoly<N> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, const N: usize> $tr<&'a MPoly<N>> for MPoly<N> {
            type Output = MPoly<N>;
            fn $m(self, rhs: &'a MPoly<N>) -> MPoly<N> {
                (&self).$m(rhs)
            }
        }
        impl<'a, const N: usize> $tr<MPoly<N>> for &'a MPoly<N> {
            type Output = MPoly<N>;
            fn $m(self, rhs: MPoly<N>) -> MPoly<N> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<const N: usize> AddAssign<&MPoly<N>> for MPoly<N> {
    fn add_assign(&mut self, rhs: &MPoly<N>) {
        *self = &*self + rhs;
    }
}

impl<const N: usize> SubAssign<&MPoly<N>> for MPoly<N> {
    fn sub_assign(&mut self, rhs: &MPoly<N>) {
        *self = &*self - rhs;
    }
}
