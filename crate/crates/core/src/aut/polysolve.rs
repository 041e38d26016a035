//! Branching solver for polynomial systems with finitely many solutions.
//!
//! Each branch carries substitutions `v := e` and at most one algebraic
//! variable `θ` constrained by a squarefree `f(θ) = 0`. Coefficients in
//! `Q[θ]/(f)` are handled in the dynamic-evaluation style: whenever an
//! inversion meets a zero divisor, `f` is split and both factors are
//! followed. Rules, in priority order:
//!
//! 1. a single-term equation `c·m = 0` branches on each variable of `m`;
//! 2. an equation linear in `v` with constant coefficient is solved for `v`;
//! 3. an equation in one variable splits off its rational roots, and the
//!    remaining factor becomes `f`;
//! 4. an equation linear in `v` with coefficient in `Q[θ]` is solved by
//!    inverting modulo `f`;
//! 5. an equation with a nontrivial monomial content `m·q` branches on the
//!    variables of `m` and on `q = 0`.
//!
//! Branches where no rule applies, or that end with free variables, are
//! reported as diagnostics instead of solutions.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{MPoly, Monomial, Rational, UPoly};

pub const DEFAULT_BRANCH_LIMIT: usize = 20_000;

/// Values of every variable as polynomials in `θ = var`, reduced modulo
/// `minpoly`, which has no rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicComponent<const N: usize> {
    pub var: usize,
    pub minpoly: UPoly,
    pub values: Vec<UPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic<const N: usize> {
    /// All equations were consumed but these variables stayed free.
    NotFinite { free: Vec<usize> },
    /// No rule applies to any of the remaining equations.
    Stuck { equations: Vec<MPoly<N>> },
    /// A second algebraic extension would be needed.
    NestedExtension { var: usize, poly: UPoly },
    BranchLimit { limit: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveReport<const N: usize> {
    pub rational: Vec<Vec<Rational>>,
    pub algebraic: Vec<AlgebraicComponent<N>>,
    pub diagnostics: Vec<Diagnostic<N>>,
    pub branches: usize,
}

impl<const N: usize> SolveReport<N> {
    /// True when the solution set is a finite list of rational points.
    pub fn is_finite_rational(&self) -> bool {
        self.algebraic.is_empty() && self.diagnostics.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Branch<const N: usize> {
    eqs: Vec<MPoly<N>>,
    subs: Vec<(usize, MPoly<N>)>,
    ext: Option<(usize, UPoly)>,
}

enum Step<const N: usize> {
    Done,
    Split(Vec<Branch<N>>),
    Diagnose(Diagnostic<N>),
}

pub fn solve<const N: usize>(equations: Vec<MPoly<N>>) -> SolveReport<N> {
    solve_with_limit(equations, DEFAULT_BRANCH_LIMIT)
}

pub fn solve_with_limit<const N: usize>(equations: Vec<MPoly<N>>, limit: usize) -> SolveReport<N> {
    let mut report = SolveReport::default();
    let mut stack = vec![Branch { eqs: equations, subs: Vec::new(), ext: None }];
    while let Some(mut br) = stack.pop() {
        report.branches += 1;
        if report.branches > limit {
            report.diagnostics.push(Diagnostic::BranchLimit { limit });
            break;
        }
        if !normalize(&mut br) {
            continue;
        }
        match step(br.clone()) {
            Step::Split(children) => stack.extend(children.into_iter().rev()),
            Step::Diagnose(d) => report.diagnostics.push(d),
            Step::Done => finalize(br, &mut report),
        }
    }
    report.rational.sort();
    report.rational.dedup();
    let mut seen = Vec::new();
    report.algebraic.retain(|c| {
        let fresh = !seen.contains(c);
        if fresh {
            seen.push(c.clone());
        }
        fresh
    });
    report.diagnostics.dedup();
    report
}

/// Coefficients of `p` as a polynomial in `var`.
fn split_var<const N: usize>(p: &MPoly<N>, var: usize) -> Vec<MPoly<N>> {
    let mut parts: Vec<Vec<(Monomial<N>, Rational)>> = vec![Vec::new(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut rest = *m;
        let k = rest.0[var] as usize;
        rest.0[var] = 0;
        parts[k].push((rest, c.clone()));
    }
    parts.into_iter().map(MPoly::from_terms).collect()
}

fn join_var<const N: usize>(parts: &[MPoly<N>], var: usize) -> MPoly<N> {
    let mut out = MPoly::zero();
    for (k, c) in parts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut m = Monomial::ONE;
        m.0[var] = k as u16;
        out += &c.mul_monomial(&m, &Rational::one());
    }
    out
}

/// Reduces the `var`-degree of `p` below `deg f` using monic `f`.
fn reduce_mod<const N: usize>(p: &MPoly<N>, var: usize, f: &UPoly) -> MPoly<N> {
    let n = f.degree().expect("nonzero modulus");
    if (p.degree_in(var) as usize) < n {
        return p.clone();
    }
    let mut parts = split_var(p, var);
    for k in (n..parts.len()).rev() {
        let top = std::mem::take(&mut parts[k]);
        if top.is_zero() {
            continue;
        }
        for (j, fj) in f.coeffs()[..n].iter().enumerate() {
            if !fj.is_zero() {
                parts[k - n + j] -= &top.scale(fj);
            }
        }
    }
    parts.truncate(n);
    join_var(&parts, var)
}

fn make_monic<const N: usize>(p: &MPoly<N>) -> MPoly<N> {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

impl<const N: usize> Branch<N> {
    fn assign(&mut self, var: usize, value: &MPoly<N>) {
        for e in self.eqs.iter_mut() {
            *e = e.substitute(var, value);
        }
        for (_, e) in self.subs.iter_mut() {
            *e = e.substitute(var, value);
        }
        self.subs.push((var, value.clone()));
    }

    fn with_assign(&self, var: usize, value: &MPoly<N>) -> Self {
        let mut b = self.clone();
        if self.ext.as_ref().is_some_and(|(t, _)| *t == var) {
            // θ is pinned through its polynomial instead.
            b.eqs.push(&MPoly::var(var) - value);
        } else {
            b.assign(var, value);
        }
        b
    }

    fn with_modulus(&self, f: UPoly) -> Self {
        let mut b = self.clone();
        let t = self.ext.as_ref().expect("extension present").0;
        b.ext = Some((t, f));
        b
    }
}

/// Simplifies a branch in place; `false` means it is inconsistent.
fn normalize<const N: usize>(br: &mut Branch<N>) -> bool {
    loop {
        if let Some((t, f)) = br.ext.clone() {
            if f.degree() == Some(1) {
                let root = -f.coeff(0) / f.coeff(1);
                br.ext = None;
                br.assign(t, &MPoly::constant(root));
                continue;
            }
            for e in br.eqs.iter_mut() {
                *e = reduce_mod(e, t, &f);
            }
            for (_, e) in br.subs.iter_mut() {
                *e = reduce_mod(e, t, &f);
            }
        }
        let mut eqs: Vec<MPoly<N>> = Vec::with_capacity(br.eqs.len());
        for e in br.eqs.drain(..) {
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                return false;
            }
            let e = make_monic(&e);
            if !eqs.contains(&e) {
                eqs.push(e);
            }
        }
        br.eqs = eqs;
        let Some((t, f)) = br.ext.clone() else {
            return true;
        };
        let pos = br.eqs.iter().position(|e| e.variables() == [t]);
        let Some(i) = pos else {
            return true;
        };
        let u = UPoly::from_mpoly(&br.eqs.remove(i), t).expect("univariate in θ");
        let g = f.gcd(&u);
        if g.degree() == Some(0) {
            return false;
        }
        br.ext = Some((t, g));
    }
}

fn step<const N: usize>(br: Branch<N>) -> Step<N> {
    if br.eqs.is_empty() {
        return Step::Done;
    }
    let theta = br.ext.as_ref().map(|(t, _)| *t);

    // 1. single-term equations
    if let Some(e) = br.eqs.iter().find(|e| e.len() == 1) {
        let children = e.variables().into_iter().map(|v| br.with_assign(v, &MPoly::zero()));
        return Step::Split(children.collect());
    }

    // 2. linear with constant coefficient
    for (i, e) in br.eqs.iter().enumerate() {
        for v in e.variables() {
            if Some(v) == theta || e.degree_in(v) != 1 {
                continue;
            }
            let parts = split_var(e, v);
            if let Some(a) = parts[1].constant_value() {
                let value = parts[0].scale(&(-a.recip()));
                let mut b = br.clone();
                b.eqs.remove(i);
                b.assign(v, &value);
                return Step::Split(vec![b]);
            }
        }
    }

    // 3. univariate equations
    for (i, e) in br.eqs.iter().enumerate() {
        let vars = e.variables();
        if vars.len() != 1 || Some(vars[0]) == theta {
            continue;
        }
        let v = vars[0];
        let h = UPoly::from_mpoly(e, v).expect("univariate").squarefree();
        let mut rest = br.clone();
        rest.eqs.remove(i);
        let roots = h.rational_roots().unwrap_or_default();
        let mut cofactor = h.clone();
        for r in &roots {
            cofactor = cofactor.div_rem(&UPoly::from_coeffs(vec![-r.clone(), Rational::one()])).0;
        }
        let mut children: Vec<Branch<N>> = roots
            .iter()
            .map(|r| rest.with_assign(v, &MPoly::constant(r.clone())))
            .collect();
        if cofactor.degree().unwrap_or(0) > 0 {
            if theta.is_some() {
                return Step::Diagnose(Diagnostic::NestedExtension { var: v, poly: cofactor });
            }
            let mut b = rest.clone();
            b.ext = Some((v, cofactor.monic()));
            children.push(b);
        }
        return Step::Split(children);
    }

    // 4. linear with coefficient in Q[θ]
    if let Some((t, f)) = br.ext.clone() {
        for (i, e) in br.eqs.iter().enumerate() {
            for v in e.variables() {
                if v == t || e.degree_in(v) != 1 {
                    continue;
                }
                let parts = split_var(e, v);
                let Some(a) = UPoly::from_mpoly(&parts[1], t) else {
                    continue;
                };
                let g = f.gcd(&a);
                if g.degree() == Some(0) {
                    let inv = a.inverse_mod(&f).expect("coprime");
                    let value = reduce_mod(&(&parts[0] * &inv.to_mpoly(t)).scale(&-Rational::one()), t, &f);
                    let mut b = br.clone();
                    b.eqs.remove(i);
                    b.assign(v, &value);
                    return Step::Split(vec![b]);
                }
                let other = f.div_rem(&g).0.monic();
                return Step::Split(vec![br.with_modulus(g), br.with_modulus(other)]);
            }
        }
    }

    // 5. monomial content
    for (i, e) in br.eqs.iter().enumerate() {
        let mut content = e.terms()[0].0;
        for (m, _) in e.terms() {
            for (a, b) in content.0.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(*b);
            }
        }
        if content.is_one() {
            continue;
        }
        let vars: Vec<usize> = (0..N).filter(|&v| content.0[v] > 0).collect();
        let mut children: Vec<Branch<N>> =
            vars.iter().map(|&v| br.with_assign(v, &MPoly::zero())).collect();
        let mut b = br.clone();
        let q = e.div_exact(&MPoly::monomial(content, Rational::one())).expect("content divides");
        b.eqs[i] = q;
        children.push(b);
        return Step::Split(children);
    }

    Step::Diagnose(Diagnostic::Stuck { equations: br.eqs })
}

fn finalize<const N: usize>(br: Branch<N>, report: &mut SolveReport<N>) {
    let theta = br.ext.as_ref().map(|(t, _)| *t);
    let free: Vec<usize> = (0..N)
        .filter(|&v| Some(v) != theta && !br.subs.iter().any(|(s, _)| *s == v))
        .collect();
    if !free.is_empty() {
        report.diagnostics.push(Diagnostic::NotFinite { free });
        return;
    }
    let value_of = |v: usize| -> MPoly<N> {
        if Some(v) == theta {
            return MPoly::var(v);
        }
        br.subs.iter().find(|(s, _)| *s == v).expect("assigned").1.clone()
    };
    let Some((t, f)) = br.ext.clone() else {
        let point = (0..N).map(|v| value_of(v).constant_term()).collect();
        report.rational.push(point);
        return;
    };
    let values: Vec<UPoly> = (0..N)
        .map(|v| UPoly::from_mpoly(&value_of(v), t).expect("values depend on θ only"))
        .collect();
    let roots = f.rational_roots().unwrap_or_default();
    let mut cofactor = f.clone();
    for r in &roots {
        report.rational.push(values.iter().map(|u| u.eval(r)).collect());
        cofactor = cofactor.div_rem(&UPoly::from_coeffs(vec![-r.clone(), Rational::one()])).0;
    }
    if cofactor.degree().unwrap_or(0) > 0 {
        let minpoly = cofactor.monic();
        let values = values.iter().map(|u| u.rem(&minpoly)).collect();
        report.algebraic.push(AlgebraicComponent { var: t, minpoly, values });
    }
}

impl<const N: usize> AlgebraicComponent<N> {
    /// Checks every equation on the component, modulo `minpoly`.
    pub fn satisfies(&self, eqs: &[MPoly<N>]) -> bool {
        eqs.iter().all(|e| {
            let mut p = e.clone();
            for v in (0..N).filter(|&v| v != self.var) {
                p = p.substitute(v, &self.values[v].to_mpoly(self.var));
            }
            UPoly::from_mpoly(&p, self.var).is_some_and(|u| u.rem(&self.minpoly).is_zero())
        })
    }

    pub fn fmt_with(&self, names: &[&str], f: &mut impl fmt::Write) -> fmt::Result {
        let theta = names[self.var];
        write!(f, "{} = 0:", self.minpoly.fmt_var(theta))?;
        for (v, u) in self.values.iter().enumerate() {
            write!(f, " {}={}", names[v], u.fmt_var(theta))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    type P = MPoly<3>;

    fn v(i: usize) -> P {
        P::var(i)
    }

    fn c(n: i64) -> P {
        P::from_int(n)
    }

    #[test]
    fn linear_system() {
        // x + y = 3, x - y = 1, z = 2x
        let eqs = vec![&(&v(0) + &v(1)) - &c(3), &(&v(0) - &v(1)) - &c(1), &v(2) - &(&c(2) * &v(0))];
        let r = solve(eqs);
        assert!(r.is_finite_rational());
        assert_eq!(r.rational, vec![vec![int(2), int(1), int(4)]]);
    }

    #[test]
    fn monomial_branching() {
        // x*y = 0, x + y = 1, z = 0
        let eqs = vec![&v(0) * &v(1), &(&v(0) + &v(1)) - &c(1), v(2)];
        let r = solve(eqs);
        assert_eq!(r.rational, vec![vec![int(0), int(1), int(0)], vec![int(1), int(0), int(0)]]);
    }

    #[test]
    fn algebraic_component() {
        // x^4 = 1, x*y = 1, z = y^2
        let eqs = vec![&v(0).pow(4) - &c(1), &(&v(0) * &v(1)) - &c(1), &v(2) - &v(1).pow(2)];
        let r = solve(eqs.clone());
        assert_eq!(r.rational, vec![vec![int(-1), int(-1), int(1)], vec![int(1), int(1), int(1)]]);
        assert_eq!(r.algebraic.len(), 1);
        let comp = &r.algebraic[0];
        assert_eq!(comp.var, 0);
        assert_eq!(comp.minpoly, UPoly::from_ints(&[1, 0, 1]));
        // y = 1/x = -x, z = y^2 = -1
        assert_eq!(comp.values[1], UPoly::from_ints(&[0, -1]));
        assert_eq!(comp.values[2], UPoly::from_ints(&[-1]));
        assert!(comp.satisfies(&eqs));
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn zero_divisor_splits_modulus() {
        // x^3 - 2x = 0 gives x = 0 and x^2 = 2; (x^2 - 2) y = x... only on x = 0
        let eqs = vec![
            &v(0).pow(3) - &(&c(2) * &v(0)),
            &(&(&v(0).pow(2) - &c(2)) * &v(1)) - &(&v(0) * &v(2)),
            &v(2) - &c(1),
        ];
        let r = solve(eqs);
        // x = 0: -2y = 0
        assert_eq!(r.rational, vec![vec![int(0), int(0), int(1)]]);
        // x^2 = 2: 0 = x, inconsistent
        assert!(r.algebraic.is_empty());
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn inconsistent_and_free() {
        let r = solve(vec![&v(0) - &c(1), &v(0) - &c(2), v(1), v(2)]);
        assert!(r.rational.is_empty() && r.algebraic.is_empty() && r.diagnostics.is_empty());
        let r = solve(vec![&v(0) - &c(1), v(1)]);
        assert_eq!(r.diagnostics, vec![Diagnostic::NotFinite { free: vec![2] }]);
    }

    #[test]
    fn rational_quadratic_roots() {
        let eqs = vec![&(&c(4) * &v(0).pow(2)) - &c(9), v(1), v(2)];
        let r = solve(eqs);
        assert_eq!(r.rational, vec![vec![rat(-3, 2), int(0), int(0)], vec![rat(3, 2), int(0), int(0)]]);
    }

    #[test]
    fn reduction_mod_f() {
        let f = UPoly::from_ints(&[1, 0, 1]);
        let p = &v(0).pow(3) + &v(1);
        assert_eq!(reduce_mod(&p, 0, &f), &v(1) - &v(0));
    }
}
