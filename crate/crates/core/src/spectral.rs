//! Burchnall–Chaundy relations `Y² = X⁵ + c4 X⁴ + ... + c0` and the
//! Jacobian of the map from parameters to curve coefficients.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::error::{Error, Result};
use crate::exactalg::{int, ParamPoint, ParamPoly, Rational, NPARAMS};
use crate::linalg::{dense_rank, SparseMatrix};
use crate::weyl::verify::{check_identity, sample_coordinate, Mode, Verdict};
use crate::weyl::WeylOp;

pub const CURVE_DEGREE: usize = 5;
pub const DEFAULT_RETRIES: usize = 3;

/// `w² = z⁵ + c[4] z⁴ + ... + c[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    pub c: [ParamPoly; CURVE_DEGREE],
}

impl SpectralCurve {
    pub fn new(c: [ParamPoly; CURVE_DEGREE]) -> Self {
        SpectralCurve { c }
    }

    pub fn zero() -> Self {
        SpectralCurve { c: std::array::from_fn(|_| ParamPoly::zero()) }
    }

    /// The curve of the catalog pair `(L4b, L10b)`.
    pub fn catalog() -> Self {
        SpectralCurve { c: catalog::curve_coeffs().c }
    }

    pub fn specialize(&self, point: &ParamPoint) -> Self {
        SpectralCurve { c: std::array::from_fn(|i| ParamPoly::constant(self.c[i].eval(point))) }
    }

    pub fn is_specialized(&self) -> bool {
        self.c.iter().all(ParamPoly::is_constant)
    }

    /// `[c0, ..., c4, 1]`
    pub fn monic_coeffs(&self) -> Vec<ParamPoly> {
        let mut v = self.c.to_vec();
        v.push(ParamPoly::one());
        v
    }

    fn degree_bound(&self, x: &WeylOp, y: &WeylOp) -> u32 {
        let dx = x.param_degree();
        let mut bound = (2 * y.param_degree()).max(CURVE_DEGREE as u32 * dx);
        for (k, c) in self.c.iter().enumerate() {
            bound = bound.max(c.total_degree().unwrap_or(0) + k as u32 * dx);
        }
        bound
    }
}

impl fmt::Display for SpectralCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^2 = z^5")?;
        for k in (0..CURVE_DEGREE).rev() {
            if !self.c[k].is_zero() {
                write!(f, " + ({})", self.c[k])?;
                match k {
                    0 => {}
                    1 => write!(f, "*z")?,
                    _ => write!(f, "*z^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Where the curve is derived: over the parameter ring, or after
/// specializing both operators at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveMode {
    Symbolic,
    RationalPoint(ParamPoint),
}

/// Finds the monic quintic relation between commuting `x` and `y`.
///
/// The coefficients are solved top down: `c_k` is read off the leading
/// `∂`-row of `X^k` in the running residual, where lower powers of `X`
/// cannot contribute. The full identity is then checked exactly.
pub fn derive_curve(x: &WeylOp, y: &WeylOp, mode: &CurveMode) -> Result<SpectralCurve> {
    let (x, y) = match mode {
        CurveMode::Symbolic => (x.clone(), y.clone()),
        CurveMode::RationalPoint(p) => (x.specialize(p), y.specialize(p)),
    };
    if !x.commutator(&y)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let (Some(m), Some(n)) = (x.order(), y.order()) else {
        return Err(Error::NoRelation("zero operator".into()));
    };
    if m == 0 || 2 * n != CURVE_DEGREE * m {
        return Err(Error::NoRelation(format!(
            "orders ({m}, {n}) admit no monic quintic relation"
        )));
    }
    let powers = x.powers(CURVE_DEGREE as u32)?;
    let mut residual = &y.mul(&y)? - &powers[CURVE_DEGREE];
    let mut c: [ParamPoly; CURVE_DEGREE] = std::array::from_fn(|_| ParamPoly::zero());
    for k in (0..CURVE_DEGREE).rev() {
        let row = m * k;
        let xk = &powers[k];
        let top = xk.coeff(row).expect("power has full order");
        let target = residual.coeff(row).cloned().unwrap_or_default();
        c[k] = solve_row(top.coeffs(), target.coeffs())
            .ok_or_else(|| Error::NoRelation(format!("no pivot for z^{k}")))?;
        residual = &residual - &xk.scale(&c[k]);
    }
    if !residual.is_zero() {
        return Err(Error::NoRelation("residual does not vanish".into()));
    }
    Ok(SpectralCurve { c })
}

/// Curve of the pair `(x, m)` where `m` is only known up to scaling and
/// adding a polynomial in `x` of degree at most 2.
///
/// Solves `M² + p(X) M = q(X)` with `deg p ≤ 2`, `deg q ≤ 5` by exact
/// linear algebra over the specialized coefficients; the monic quintic is
/// then `F = q + p²/4` divided by its leading coefficient.
pub fn derive_curve_normalized(x: &WeylOp, m: &WeylOp) -> Result<SpectralCurve> {
    if !x.is_specialized() || !m.is_specialized() {
        return Err(Error::Precondition("normalized curve needs rational coefficients".into()));
    }
    if !x.commutator(m)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let (Some(a), Some(b)) = (x.order(), m.order()) else {
        return Err(Error::NoRelation("zero operator".into()));
    };
    if a == 0 || 2 * b != CURVE_DEGREE * a {
        return Err(Error::NoRelation(format!("orders ({a}, {b}) admit no quintic relation")));
    }
    let powers = x.powers(CURVE_DEGREE as u32)?;
    // unknowns p0 p1 p2 q0..q5, then the M² column
    let mut cols: Vec<WeylOp> = Vec::new();
    for pk in &powers[..3] {
        cols.push(pk.mul(m)?);
    }
    for pk in &powers {
        cols.push(-pk);
    }
    cols.push(m.mul(m)?);
    let ncols = cols.len();
    let mut rows: std::collections::BTreeMap<(usize, usize), Vec<(usize, Rational)>> = Default::default();
    for (j, op) in cols.iter().enumerate() {
        for (dp, xp, c) in op.terms() {
            rows.entry((dp, xp)).or_default().push((j, c.constant_term()));
        }
    }
    let mut mat = SparseMatrix::new(ncols);
    for (_, r) in rows {
        mat.push_row(r);
    }
    let ns = mat.nullspace();
    let last = ncols - 1;
    let v = match ns.as_slice() {
        [v] if !v[last].is_zero() => v,
        _ => return Err(Error::NoRelation(format!("relation space has dimension {}", ns.len()))),
    };
    let s = v[last].recip();
    let p: Vec<Rational> = (0..3).map(|k| &v[k] * &s).collect();
    let q: Vec<Rational> = (3..9).map(|k| &v[k] * &s).collect();
    let mut f = q;
    for i in 0..3 {
        for j in 0..3 {
            f[i + j] += &p[i] * &p[j] / Rational::from_integer(4.into());
        }
    }
    let lead = f[CURVE_DEGREE].clone();
    if lead.is_zero() {
        return Err(Error::NoRelation("degenerate leading coefficient".into()));
    }
    Ok(SpectralCurve { c: std::array::from_fn(|i| ParamPoly::constant(&f[i] / &lead)) })
}

/// Finds `c` with `c * top = target` coefficientwise in `x`, using the first
/// position (descending `x`-power) of `top` that admits exact division.
fn solve_row(top: &[ParamPoly], target: &[ParamPoly]) -> Option<ParamPoly> {
    let zero = ParamPoly::zero();
    let at = |v: &[ParamPoly], i: usize| v.get(i).unwrap_or(&zero).clone();
    let mut order: Vec<usize> = (0..top.len()).filter(|&i| !top[i].is_zero()).collect();
    order.sort_by_key(|&i| (!top[i].is_constant(), std::cmp::Reverse(i)));
    for i in order {
        if let Some(c) = at(target, i).div_exact(&top[i]) {
            return Some(c);
        }
    }
    None
}

/// Checks `Y² = X⁵ + Σ c_k X^k`.
pub fn verify_curve(x: &WeylOp, y: &WeylOp, curve: &SpectralCurve, mode: Mode) -> Result<Verdict> {
    let coeffs = curve.monic_coeffs();
    check_identity(mode, curve.degree_bound(x, y), |pt| {
        let (x, y, cs) = match pt {
            None => (x.clone(), y.clone(), coeffs.clone()),
            Some(p) => (
                x.specialize(p),
                y.specialize(p),
                coeffs.iter().map(|c| ParamPoly::constant(c.eval(p))).collect(),
            ),
        };
        Ok(&y.mul(&y)? - &WeylOp::subst_constpoly(&cs, &x)?)
    })
}

/// `entries[i][j] = ∂c_i/∂a_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    pub entries: [[ParamPoly; NPARAMS]; CURVE_DEGREE],
}

pub fn jacobian_matrix(curve: &SpectralCurve) -> JacobianMatrix {
    JacobianMatrix {
        entries: std::array::from_fn(|i| std::array::from_fn(|j| curve.c[i].partial(j))),
    }
}

impl JacobianMatrix {
    pub fn eval(&self, point: &ParamPoint) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|row| row.iter().map(|e| e.eval(point)).collect()).collect()
    }

    pub fn rank_at_point(&self, point: &ParamPoint) -> usize {
        dense_rank(&self.eval(point))
    }
}

pub fn rank_at_point(j: &JacobianMatrix, point: &ParamPoint) -> usize {
    j.rank_at_point(point)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanPoint {
    pub point: ParamPoint,
    pub rank: usize,
    /// Drawn to replace an earlier rank-deficient point.
    pub retry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub points: Vec<ScanPoint>,
    pub max_rank: usize,
    pub retries_used: usize,
}

impl ScanReport {
    fn from_points(points: Vec<ScanPoint>) -> Self {
        let max_rank = points.iter().map(|p| p.rank).max().unwrap_or(0);
        let retries_used = points.iter().filter(|p| p.retry).count();
        ScanReport { points, max_rank, retries_used }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceReport {
    pub seed: u64,
    /// Points with `a1 != 0`.
    pub unrestricted: ScanReport,
    /// Points with `a1 = 0`.
    pub restricted: ScanReport,
}

/// Samples `trials` points with `a1 != 0` and `trials` points with `a1 = 0`,
/// recording the exact Jacobian rank at each. Up to `DEFAULT_RETRIES`
/// rank-deficient unrestricted points are replaced by fresh draws; the
/// deficient points stay in the report.
pub fn dominance_scan(trials: usize, seed: u64) -> Result<DominanceReport> {
    dominance_scan_with(&jacobian_matrix(&SpectralCurve::catalog()), trials, seed, DEFAULT_RETRIES)
}

pub fn dominance_scan_with(
    jac: &JacobianMatrix,
    trials: usize,
    seed: u64,
    max_retries: usize,
) -> Result<DominanceReport> {
    if trials == 0 {
        return Err(Error::Usage("dominance scan needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |restricted: bool| -> ParamPoint {
        std::array::from_fn(|i| {
            if i == 0 {
                if restricted {
                    return int(0);
                }
                loop {
                    let v = sample_coordinate(&mut rng);
                    if v != 0 {
                        return int(v);
                    }
                }
            }
            int(sample_coordinate(&mut rng))
        })
    };
    let mut free = Vec::new();
    let mut retries = 0;
    for _ in 0..trials {
        let mut retry = false;
        loop {
            let point = draw(false);
            let rank = jac.rank_at_point(&point);
            free.push(ScanPoint { point, rank, retry });
            if rank == CURVE_DEGREE || retries == max_retries {
                break;
            }
            retries += 1;
            retry = true;
        }
    }
    let restricted = (0..trials)
        .map(|_| {
            let point = draw(true);
            let rank = jac.rank_at_point(&point);
            ScanPoint { point, rank, retry: false }
        })
        .collect();
    Ok(DominanceReport {
        seed,
        unrestricted: ScanReport::from_points(free),
        restricted: ScanReport::from_points(restricted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_l10b, make_l4b, make_p, Genus};
    use crate::exactalg::{int_point, rat};

    #[test]
    fn pure_powers() {
        let x = WeylOp::term(ParamPoly::one(), 0, 2);
        let y = WeylOp::term(ParamPoly::one(), 0, 5);
        let c = derive_curve(&x, &y, &CurveMode::Symbolic).unwrap();
        assert_eq!(c, SpectralCurve::zero());
        let v = verify_curve(&x, &y, &c, Mode::Symbolic).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn refusals() {
        let x = WeylOp::x();
        let d = WeylOp::d();
        assert_eq!(derive_curve(&x, &d, &CurveMode::Symbolic), Err(Error::NotCommuting));
        let d3 = d.pow(3).unwrap();
        assert!(matches!(derive_curve(&d, &d3, &CurveMode::Symbolic), Err(Error::NoRelation(_))));
    }

    #[test]
    fn degenerate_point() {
        let pt = int_point([1, 0, 0, 0, 0, 0]);
        let mode = CurveMode::RationalPoint(pt.clone());
        let c = derive_curve(&make_l4b(Genus::TWO), &make_l10b().unwrap(), &mode).unwrap();
        let vals: Vec<_> = c.c.iter().map(|p| p.constant_term()).collect();
        assert_eq!(vals, [0, 0, 0, 9, 6].map(int).to_vec());
        // (P^5 + 3P^3)^2 = X^5 + 6X^4 + 9X^3 with X = P^2
        let p = make_p().specialize(&pt);
        let y = &p.pow(5).unwrap() + &p.pow(3).unwrap().scale_rational(&int(3));
        assert!(verify_curve(&p.pow(2).unwrap(), &y, &c, Mode::Symbolic).unwrap().passed);
    }

    #[test]
    fn perturbed_curve_fails() {
        let x = make_l4b(Genus::TWO);
        let y = make_l10b().unwrap();
        let mut curve = SpectralCurve::catalog();
        let mode = Mode::Random { trials: 3, seed: 1 };
        assert!(verify_curve(&x, &y, &curve, mode).unwrap().passed);
        curve.c[0] = &curve.c[0] + &ParamPoly::one();
        let v = verify_curve(&x, &y, &curve, mode).unwrap();
        assert!(!v.passed);
        assert_eq!(v.failing_trial, Some(0));
    }

    #[test]
    fn normalized_curve() {
        let pt = int_point([2, -3, 1, 4, 5, -6]);
        let x = make_l4b(Genus::TWO).specialize(&pt);
        let y = make_l10b().unwrap().specialize(&pt);
        // m = 3 Y - 2 X^2 + 7
        let m = &(&y.scale_rational(&int(3)) - &x.pow(2).unwrap().scale_rational(&int(2))) + &WeylOp::from_int(7);
        let c = derive_curve_normalized(&x, &m).unwrap();
        assert_eq!(c, SpectralCurve::catalog().specialize(&pt));
        assert!(derive_curve_normalized(&x, &x.pow(2).unwrap()).is_err());
    }

    #[test]
    fn jacobian_entries() {
        let j = jacobian_matrix(&SpectralCurve::catalog());
        assert_eq!(j.entries[4][5], ParamPoly::from_int(-5));
        assert_eq!(j.entries[4][0].eval(&int_point([0; 6])), int(0));
        assert_eq!(j.rank_at_point(&[1, 2, 3, 5, 7, 11].map(int)), 5);
        let p = [int(1), rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11)];
        assert_eq!(j.rank_at_point(&p), 5);
        let zero = JacobianMatrix { entries: std::array::from_fn(|_| std::array::from_fn(|_| ParamPoly::zero())) };
        assert_eq!(zero.rank_at_point(&int_point([1; 6])), 0);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = dominance_scan(2, 5).unwrap();
        assert_eq!(a, dominance_scan(2, 5).unwrap());
        assert_eq!(a.unrestricted.max_rank, 5);
        assert!(a.restricted.max_rank < 5);
        assert!(a.restricted.points.iter().all(|p| p.point[0] == int(0)));
        assert!(dominance_scan(0, 5).is_err());
    }
}
