//! Exact and randomized verification of operator identities.
//!
//! In random mode the six parameters are specialized at points drawn
//! uniformly from the integers in `[-999, 999]` with a seeded ChaCha stream.
//! A nonzero residual whose coefficients have parameter degree at most `d`
//! survives a single trial with probability at most `d / 1999`
//! (Schwartz–Zippel); independent trials multiply.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::WeylOp;
use crate::budget;
use crate::error::Result;
use crate::exactalg::{int, ParamPoint};

pub const SAMPLE_BOUND: i64 = 999;
pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Random { trials: usize, seed: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Random { .. } => "random",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub mode: Mode,
    pub passed: bool,
    /// Index of the first failing trial in random mode.
    pub failing_trial: Option<usize>,
    /// Parameter-degree bound used for the failure probability.
    pub degree_bound: u32,
}

impl Verdict {
    pub fn trials(&self) -> usize {
        match self.mode {
            Mode::Symbolic => 0,
            Mode::Random { trials, .. } => trials,
        }
    }

    /// Upper bound on the probability that a false identity passes every
    /// trial; zero in symbolic mode.
    pub fn failure_bound(&self) -> f64 {
        match self.mode {
            Mode::Symbolic => 0.0,
            Mode::Random { trials, .. } => {
                single_trial_bound(self.degree_bound).powi(trials as i32)
            }
        }
    }
}

/// `d / |S|` for the sample set `[-999, 999]`, capped at 1.
pub fn single_trial_bound(degree: u32) -> f64 {
    (degree as f64 / (2 * SAMPLE_BOUND + 1) as f64).min(1.0)
}

/// Uniform integer in `[-SAMPLE_BOUND, SAMPLE_BOUND]` from the stream.
pub fn sample_coordinate(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)
}

/// Deterministic sequence of sample points for `seed`.
pub fn sample_points(count: usize, seed: u64) -> Vec<ParamPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| int(sample_coordinate(&mut rng))))
        .collect()
}

/// Checks that `residual` vanishes. In symbolic mode it is called once
/// with `None`; in random mode once per sample point. Trials run in
/// parallel; the verdict does not depend on scheduling.
pub fn check_identity<F>(mode: Mode, degree_bound: u32, residual: F) -> Result<Verdict>
where
    F: Fn(Option<&ParamPoint>) -> Result<WeylOp> + Sync,
{
    match mode {
        Mode::Symbolic => {
            let r = residual(None)?;
            Ok(Verdict { mode, passed: r.is_zero(), failing_trial: None, degree_bound })
        }
        Mode::Random { trials, seed } => {
            let points = sample_points(trials, seed);
            let cap = budget::term_cap();
            let outcomes: Vec<Result<bool>> = points
                .par_iter()
                .map(|p| budget::with_term_cap(cap, || residual(Some(p)).map(|r| r.is_zero())))
                .collect();
            let mut failing_trial = None;
            for (k, o) in outcomes.into_iter().enumerate() {
                if !o? && failing_trial.is_none() {
                    failing_trial = Some(k);
                }
            }
            Ok(Verdict { mode, passed: failing_trial.is_none(), failing_trial, degree_bound })
        }
    }
}

/// Verifies `[a, b] = 0`.
pub fn verify_commute(a: &WeylOp, b: &WeylOp, mode: Mode) -> Result<Verdict> {
    let bound = a.param_degree() + b.param_degree();
    check_identity(mode, bound, |pt| match pt {
        None => a.commutator(b),
        Some(p) => a.specialize(p).commutator(&b.specialize(p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ParamPoly;

    #[test]
    fn points_are_deterministic_and_in_range() {
        let a = sample_points(5, 7);
        assert_eq!(a, sample_points(5, 7));
        assert_ne!(a, sample_points(5, 8));
        for p in &a {
            for c in p {
                assert!(c.numer().magnitude() <= &num_bigint::BigUint::from(999u32));
            }
        }
    }

    #[test]
    fn commuting_and_noncommuting_pairs() {
        let x = WeylOp::x();
        let d = WeylOp::d();
        let v = verify_commute(&x, &d, Mode::Random { trials: 3, seed: 1 }).unwrap();
        assert!(!v.passed);
        assert_eq!(v.failing_trial, Some(0));
        let a = WeylOp::term(ParamPoly::var(0), 0, 2);
        let v = verify_commute(&a, &d, Mode::Symbolic).unwrap();
        assert!(v.passed);
        assert_eq!(v.failure_bound(), 0.0);
    }

    #[test]
    fn failure_bound_shrinks_with_trials() {
        let v = Verdict {
            mode: Mode::Random { trials: 2, seed: 0 },
            passed: true,
            failing_trial: None,
            degree_bound: 20,
        };
        let single = single_trial_bound(20);
        assert!((v.failure_bound() - single * single).abs() < 1e-15);
    }
}
