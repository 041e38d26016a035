//! Operators of bounded order commuting with a given operator.
//!
//! The unknown `M = Σ m_ij x^j ∂^i` (with `j ≤ D_i`) enters `[L, M]`
//! linearly, so the commuting `M` form the nullspace of an exact rational
//! system. Unknowns are ordered like normal-form terms, highest `∂`-power
//! first, so each basis element is led by its top term.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{int, ParamPoint, ParamPoly, Rational};
use crate::linalg::{SparseMatrix, SparseRow};
use crate::spectral::{derive_curve_normalized, SpectralCurve};
use crate::weyl::verify::sample_coordinate;
use crate::weyl::WeylOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    /// `degree_bounds[i]` bounds the `x`-degree of the `∂^i` coefficient.
    degree_bounds: Vec<usize>,
}

impl Ansatz {
    pub fn new(degree_bounds: Vec<usize>) -> Result<Self> {
        if degree_bounds.is_empty() {
            return Err(Error::Usage("ansatz needs at least one degree bound".into()));
        }
        Ok(Ansatz { degree_bounds })
    }

    pub fn uniform(order: usize, bound: usize) -> Self {
        Ansatz { degree_bounds: vec![bound; order + 1] }
    }

    pub fn order(&self) -> usize {
        self.degree_bounds.len() - 1
    }

    pub fn degree_bounds(&self) -> &[usize] {
        &self.degree_bounds
    }

    pub fn unknown_count(&self) -> usize {
        self.degree_bounds.iter().map(|d| d + 1).sum()
    }

    /// `(dpow, xpow)` of every unknown in column order.
    pub fn unknowns(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.unknown_count());
        for i in (0..self.degree_bounds.len()).rev() {
            for j in (0..=self.degree_bounds[i]).rev() {
                out.push((i, j));
            }
        }
        out
    }

    /// Operator with the given unknown values.
    pub fn operator(&self, values: &[Rational]) -> WeylOp {
        WeylOp::from_terms(
            self.unknowns()
                .into_iter()
                .zip(values)
                .map(|((i, j), v)| (i, j, ParamPoly::constant(v.clone()))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreePolicy {
    /// `D_i = max(0, ⌈n·s/m⌉ − i) + 2⌈n/4⌉` for `L` of order `m` and
    /// symbol degree `s`; `D_i = (n − i) + 2⌈n/4⌉` when `m = 0`.
    Default,
    Uniform(usize),
    Explicit(Vec<usize>),
}

impl DegreePolicy {
    pub fn ansatz(&self, l: &WeylOp, n: usize) -> Result<Ansatz> {
        match self {
            DegreePolicy::Default => {
                let slack = 2 * n.div_ceil(4);
                let m = l.order().unwrap_or(0);
                let s = l.total_symbol().degree().unwrap_or(0);
                let top = if m == 0 { n } else { (n * s).div_ceil(m) };
                Ansatz::new((0..=n).map(|i| top.saturating_sub(i) + slack).collect())
            }
            DegreePolicy::Uniform(d) => Ok(Ansatz::uniform(n, *d)),
            DegreePolicy::Explicit(v) => {
                if v.len() != n + 1 {
                    return Err(Error::Usage(format!(
                        "order {n} needs {} degree bounds, got {}",
                        n + 1,
                        v.len()
                    )));
                }
                Ansatz::new(v.clone())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommutationSystem {
    pub operator: WeylOp,
    pub ansatz: Ansatz,
    /// One row per normal-form position of `[L, M]`, one column per unknown.
    pub matrix: SparseMatrix,
}

type Column = Vec<((usize, usize), Rational)>;

/// Linearizes `[L, M] = 0` in the unknown coefficients of `M`.
pub fn build_commutation_system(l: &WeylOp, ansatz: &Ansatz) -> Result<CommutationSystem> {
    if !l.is_specialized() {
        return Err(Error::Precondition("operator must have rational coefficients".into()));
    }
    let unknowns = ansatz.unknowns();
    let columns: Vec<Result<Column>> = unknowns
        .par_iter()
        .map(|&(i, j)| {
            let mono = WeylOp::term(ParamPoly::one(), j, i);
            let c = l.commutator(&mono)?;
            Ok(c.terms().map(|(p, q, v)| ((p, q), v.constant_term())).collect())
        })
        .collect();
    let mut rows: BTreeMap<std::cmp::Reverse<(usize, usize)>, SparseRow> = BTreeMap::new();
    for (col, entries) in columns.into_iter().enumerate() {
        for (pos, v) in entries? {
            rows.entry(std::cmp::Reverse(pos)).or_default().push((col, v));
        }
    }
    let mut matrix = SparseMatrix::new(unknowns.len());
    for (_, r) in rows {
        matrix.push_row(r);
    }
    Ok(CommutationSystem { operator: l.clone(), ansatz: ansatz.clone(), matrix })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingBasis {
    /// Reduced echelon basis, each element re-verified to commute.
    pub basis: Vec<WeylOp>,
    /// Nullspace vectors that failed the commutator check.
    pub rejected: usize,
}

impl CommutingBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn solve_nullspace(system: &CommutationSystem) -> Result<CommutingBasis> {
    let mut basis = Vec::new();
    let mut rejected = 0;
    for v in system.matrix.nullspace() {
        let m = system.ansatz.operator(&v);
        if system.operator.commutator(&m)?.is_zero() {
            basis.push(m);
        } else {
            rejected += 1;
        }
    }
    Ok(CommutingBasis { basis, rejected })
}

#[derive(Clone, Debug)]
pub struct CentralizerReport {
    pub point: Option<ParamPoint>,
    pub operator: WeylOp,
    pub order: usize,
    pub ansatz: Ansatz,
    pub unknowns: usize,
    pub equations: usize,
    pub basis: CommutingBasis,
    /// Basis elements of exact order `order`.
    pub witnesses: Vec<WeylOp>,
    pub curve: Option<SpectralCurve>,
}

impl CentralizerReport {
    pub fn found(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

impl fmt::Display for CentralizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.point {
            let s: Vec<String> = p.iter().map(ToString::to_string).collect();
            writeln!(f, "point: {}", s.join(","))?;
        }
        writeln!(f, "order: {}", self.order)?;
        let b: Vec<String> = self.ansatz.degree_bounds().iter().map(ToString::to_string).collect();
        writeln!(f, "degree bounds: {}", b.join(","))?;
        writeln!(f, "unknowns: {} equations: {}", self.unknowns, self.equations)?;
        writeln!(f, "commuting dimension: {}", self.basis.dimension())?;
        if self.basis.rejected > 0 {
            writeln!(f, "rejected: {}", self.basis.rejected)?;
        }
        if self.found() {
            writeln!(f, "found: {} of order {}", self.witnesses.len(), self.order)?;
            for w in &self.witnesses {
                writeln!(f, "witness: {w}")?;
            }
        } else {
            writeln!(f, "not found: no element of order {} within the bounds", self.order)?;
        }
        if let Some(c) = &self.curve {
            writeln!(f, "curve: {c}")?;
        }
        Ok(())
    }
}

/// Specializes `l` at `point` when needed, solves the ansatz chosen by
/// `policy`, and keeps the basis elements of exact order `n`. When `l` has
/// order 4 and `n = 10`, the curve of the pair is derived as well.
pub fn find_commuting_operators(
    l: &WeylOp,
    n: usize,
    policy: &DegreePolicy,
    point: Option<&ParamPoint>,
) -> Result<CentralizerReport> {
    if n == 0 {
        return Err(Error::Usage("target order must be at least 1".into()));
    }
    let op = if l.is_specialized() {
        l.clone()
    } else {
        let p = point.ok_or_else(|| {
            Error::Precondition("symbolic operator needs a parameter point".into())
        })?;
        l.specialize(p)
    };
    let ansatz = policy.ansatz(&op, n)?;
    let system = build_commutation_system(&op, &ansatz)?;
    let basis = solve_nullspace(&system)?;
    let witnesses: Vec<WeylOp> = basis.basis.iter().filter(|m| m.order() == Some(n)).cloned().collect();
    let curve = match (op.order(), witnesses.first()) {
        (Some(4), Some(m)) if n == 10 => Some(derive_curve_normalized(&op, m)?),
        _ => None,
    };
    Ok(CentralizerReport {
        point: point.cloned(),
        operator: op,
        order: n,
        unknowns: ansatz.unknown_count(),
        equations: system.matrix.nrows(),
        ansatz,
        basis,
        witnesses,
        curve,
    })
}

/// Seeded point in `[-999, 999]^6` with `a1·a4 != 0`.
pub fn random_alpha(seed: u64) -> ParamPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let p: ParamPoint = std::array::from_fn(|_| int(sample_coordinate(&mut rng)));
        if p[0] != int(0) && p[3] != int(0) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_l4b, make_mironov_l4, Genus};

    #[test]
    fn centralizer_of_d() {
        let sys = build_commutation_system(&WeylOp::d(), &Ansatz::uniform(1, 1)).unwrap();
        let b = solve_nullspace(&sys).unwrap();
        assert_eq!(b.dimension(), 2);
        assert_eq!(b.basis, vec![WeylOp::d(), WeylOp::one()]);
    }

    #[test]
    fn centralizer_of_x() {
        let sys = build_commutation_system(&WeylOp::x(), &Ansatz::uniform(1, 1)).unwrap();
        let b = solve_nullspace(&sys).unwrap();
        assert_eq!(b.basis, vec![WeylOp::x(), WeylOp::one()]);
    }

    #[test]
    fn broken_row_is_caught() {
        let l = make_l4b(Genus::TWO).specialize(&random_alpha(3));
        let sys = build_commutation_system(&l, &Ansatz::uniform(2, 4)).unwrap();
        let b = solve_nullspace(&sys).unwrap();
        assert_eq!(b.basis, vec![WeylOp::one()]);
        let mut broken = sys.clone();
        assert_eq!(sys.matrix.ncols(), 15);
        let rows: Vec<_> = sys.matrix.rows()[..5].to_vec();
        broken.matrix = SparseMatrix::new(sys.matrix.ncols());
        for r in rows {
            broken.matrix.push_row(r);
        }
        let b = solve_nullspace(&broken).unwrap();
        assert!(b.rejected > 0);
        assert!(b.basis.iter().all(|m| l.commutator(m).unwrap().is_zero()));
    }

    #[test]
    fn default_policy() {
        let l = make_l4b(Genus::TWO).specialize(&random_alpha(1));
        let a = DegreePolicy::Default.ansatz(&l, 10).unwrap();
        assert_eq!(a.degree_bounds()[10], 16);
        assert_eq!(a.degree_bounds()[0], 26);
        assert!(DegreePolicy::Explicit(vec![1, 2]).ansatz(&l, 3).is_err());
        let a = Ansatz::new(vec![1, 0]).unwrap();
        assert_eq!(a.unknowns(), vec![(1, 0), (0, 1), (0, 0)]);
    }

    #[test]
    fn mironov_genus_one() {
        let l = make_mironov_l4(Genus::new(1).unwrap(), &[int(0), int(0), int(0), int(1)]);
        let r = find_commuting_operators(&l, 6, &DegreePolicy::Default, None).unwrap();
        assert!(r.found(), "{r}");
        assert!(r.witnesses.iter().all(|m| l.commutator(m).unwrap().is_zero()));
    }

    #[test]
    fn l4b_genus_one() {
        let p = random_alpha(11);
        let r = find_commuting_operators(&make_l4b(Genus::new(1).unwrap()), 6, &DegreePolicy::Default, Some(&p))
            .unwrap();
        assert!(r.found(), "{r}");
    }
}
