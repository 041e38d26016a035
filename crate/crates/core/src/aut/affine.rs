//! Which affine automorphisms keep `L4b` inside its own family?
//!
//! The map `x ↦ αx + β∂ + C1`, `∂ ↦ γ∂ + δx + C2` with symbolic
//! `(α, β, γ, δ, C1, C2)` is applied to `L4b` specialized at a rational
//! point, and the result is matched against the `L4b` template with free
//! parameters `t1..t6`. The matching equations, taken in descending
//! `(∂-power, x-power)` order and followed by `αγ − βδ − 1`, are handed to
//! the branching solver.

use std::fmt;

use num_traits::Zero;

use super::polysolve::{solve, AlgebraicComponent, Diagnostic, SolveReport};
use super::Automorphism;
use crate::catalog::{l4b_template, make_l4b, Genus};
use crate::error::{Error, Result};
use crate::exactalg::{MPoly, ParamPoint, Rational};
use crate::weyl::WeylOp;

pub const AFFINE_VARS: usize = 12;

pub const AFFINE_NAMES: [&str; AFFINE_VARS] =
    ["alpha", "beta", "gamma", "delta", "C1", "C2", "t1", "t2", "t3", "t4", "t5", "t6"];

pub type AffinePoly = MPoly<AFFINE_VARS>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReport {
    pub params: ParamPoint,
    pub genus: Genus,
    pub equations: Vec<AffinePoly>,
    pub solutions: SolveReport<AFFINE_VARS>,
}

impl AffineReport {
    /// `(α, β, γ, δ, C1, C2) = (1, 0, 1, 0, 0, 0)` with `t = params`.
    pub fn identity_solution(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = [1, 0, 1, 0, 0, 0].iter().map(|&k| Rational::from_integer(k.into())).collect();
        v.extend(self.params.iter().cloned());
        v
    }

    pub fn contains_identity(&self) -> bool {
        self.solutions.rational.contains(&self.identity_solution())
    }

    /// True when the identity is the only solution over the algebraic
    /// closure and the solver finished every branch.
    pub fn identity_only(&self) -> bool {
        self.solutions.is_finite_rational() && self.solutions.rational == [self.identity_solution()]
    }

    pub fn extra_rational(&self) -> Vec<&Vec<Rational>> {
        let id = self.identity_solution();
        self.solutions.rational.iter().filter(|s| **s != id).collect()
    }
}

fn fmt_solution(s: &[Rational]) -> String {
    AFFINE_NAMES.iter().zip(s).map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for AffineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        writeln!(f, "point: {}", pt.join(","))?;
        writeln!(f, "equations: {}", self.equations.len())?;
        writeln!(f, "branches: {}", self.solutions.branches)?;
        writeln!(f, "rational solutions: {}", self.solutions.rational.len())?;
        for s in &self.solutions.rational {
            writeln!(f, "  {}", fmt_solution(s))?;
        }
        writeln!(f, "algebraic components: {}", self.solutions.algebraic.len())?;
        for c in &self.solutions.algebraic {
            let mut s = String::new();
            fmt_component(c, &mut s)?;
            writeln!(f, "  {s}")?;
        }
        for d in &self.solutions.diagnostics {
            writeln!(f, "diagnostic: {}", fmt_diagnostic(d))?;
        }
        write!(f, "identity only: {}", self.identity_only())
    }
}

fn fmt_component(c: &AlgebraicComponent<AFFINE_VARS>, s: &mut String) -> fmt::Result {
    c.fmt_with(&AFFINE_NAMES, s)
}

fn fmt_diagnostic(d: &Diagnostic<AFFINE_VARS>) -> String {
    match d {
        Diagnostic::NotFinite { free } => {
            let names: Vec<&str> = free.iter().map(|&v| AFFINE_NAMES[v]).collect();
            format!("failed to finitize, free variables {}", names.join(","))
        }
        Diagnostic::Stuck { equations } => {
            format!("failed to finitize, {} equations left", equations.len())
        }
        Diagnostic::NestedExtension { var, poly } => {
            format!("nested extension needed for {}: {}", AFFINE_NAMES[*var], poly.fmt_var(AFFINE_NAMES[*var]))
        }
        Diagnostic::BranchLimit { limit } => format!("branch limit {limit} reached"),
    }
}

fn lift(op: &WeylOp) -> WeylOp<AFFINE_VARS> {
    WeylOp::from_terms(op.terms().map(|(i, j, c)| (i, j, MPoly::constant(c.constant_term()))))
}

/// The matching equations for `L4b` at `params`.
pub fn affine_equations(params: &ParamPoint, g: Genus) -> Result<Vec<AffinePoly>> {
    let v = AffinePoly::var;
    let term = |c: AffinePoly, xpow, dpow| WeylOp::<AFFINE_VARS>::term(c, xpow, dpow);
    let image_x = &(&term(v(0), 1, 0) + &term(v(1), 0, 1)) + &term(v(4), 0, 0);
    let image_d = &(&term(v(2), 0, 1) + &term(v(3), 1, 0)) + &term(v(5), 0, 0);
    // The CCR holds only modulo αγ − βδ = 1, so the images are used unchecked.
    let phi = Automorphism { image_x, image_d, word: Vec::new() };
    let l = lift(&make_l4b(g).specialize(params));
    let moved = phi.apply(&l)?;
    let template = l4b_template(g, &std::array::from_fn(|i| v(6 + i)));
    let diff = &moved - &template;
    let mut eqs: Vec<AffinePoly> = diff.terms().map(|(_, _, c)| c.clone()).collect();
    eqs.push(&(&(&v(0) * &v(2)) - &(&v(1) * &v(3))) - &AffinePoly::one());
    Ok(eqs)
}

/// Solves for all affine maps carrying `L4b(params)` to some `L4b(t)`.
pub fn affine_form_constraints(params: &ParamPoint, g: Genus) -> Result<AffineReport> {
    if params[0].is_zero() {
        return Err(Error::Precondition("affine analysis requires a1 != 0".into()));
    }
    let equations = affine_equations(params, g)?;
    let solutions = solve(equations.clone());
    Ok(AffineReport { params: params.clone(), genus: g, equations, solutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, int_point, UPoly};

    #[test]
    fn refuses_a1_zero() {
        let r = affine_form_constraints(&int_point([0, 1, 2, 3, 4, 5]), Genus::TWO);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_is_a_solution() {
        let p = int_point([1, 2, 3, 5, 7, 0]);
        let eqs = affine_equations(&p, Genus::TWO).unwrap();
        let r = AffineReport {
            params: p.clone(),
            genus: Genus::TWO,
            equations: eqs.clone(),
            solutions: SolveReport::default(),
        };
        let id: [Rational; AFFINE_VARS] = r.identity_solution().try_into().unwrap();
        assert!(eqs.iter().all(|e| e.eval(&id).is_zero()));
    }

    #[test]
    fn solution_set_at_generic_point() {
        let p = int_point([1, 2, 3, 5, 7, 0]);
        let r = affine_form_constraints(&p, Genus::TWO).unwrap();
        assert!(r.contains_identity());
        assert!(r.solutions.diagnostics.is_empty(), "{r}");
        // x -> -x, D -> -D keeps the family with (a3, a4) negated
        let mut flip: Vec<Rational> = [-1, 0, -1, 0, 0, 0].map(int).to_vec();
        flip.extend([1, 2, -3, -5, 7, 0].map(int));
        assert_eq!(r.extra_rational(), vec![&flip]);
        // x -> -i x, D -> i D
        assert_eq!(r.solutions.algebraic.len(), 1);
        let c = &r.solutions.algebraic[0];
        assert_eq!(c.minpoly, UPoly::from_ints(&[1, 0, 1]));
        assert!(c.satisfies(&r.equations));
        assert!(!r.identity_only());
        for s in &r.solutions.rational {
            let s: [Rational; AFFINE_VARS] = s.clone().try_into().unwrap();
            assert!(r.equations.iter().all(|e| e.eval(&s).is_zero()));
        }
    }
}
