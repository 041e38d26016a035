//! Seeded property suites shared by the `properties` and `acceptance`
//! targets. Each suite runs `CASES` generated instances.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use weylkit::aut::{Automorphism, Generator};
use weylkit::exactalg::Monomial;
use weylkit::{rat, ParamPoly, Rational, UPoly, WeylOp};
use weylkit_cli::json::{decode_operator, encode_operator, operator_from_json, operator_to_json};
use weylkit_cli::{format_canonical, parse_ast, parse_expr, Expr};

pub const CASES: u32 = 128;

pub type Suite = fn(u64) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("ring axioms", ring_axioms),
    ("leibniz and jacobi", leibniz),
    ("order additivity", order_additivity),
    ("symbol additivity", symbol_additivity),
    ("symbol multiplicativity", symbol_multiplicativity),
    ("adjoint involution and anti-homomorphism", adjoint),
    ("automorphism ccr", automorphism_ccr),
    ("automorphism homomorphism", automorphism_homomorphism),
    ("automorphism composition", automorphism_composition),
    ("parser round trip", parser_roundtrip),
    ("expression tree round trip", ast_roundtrip),
    ("json round trip", json_roundtrip),
];

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(seed),
        ..Config::default()
    })
}

fn check<S: Strategy>(
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(seed, CASES).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sums of at most three terms `c * a_k^e`.
pub fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0usize..7, 1u16..=2, rational()), 0..=3).prop_map(|terms| {
        ParamPoly::from_terms(terms.into_iter().map(|(k, e, c)| {
            let mut m = [0u16; 6];
            if k < 6 {
                m[k] = e;
            }
            (Monomial(m), c)
        }))
    })
}

pub fn weyl_op() -> impl Strategy<Value = WeylOp> {
    prop::collection::vec((0usize..=3, 0usize..=3, param_poly()), 0..=4)
        .prop_map(WeylOp::from_terms)
}

fn nonzero_op() -> impl Strategy<Value = WeylOp> {
    weyl_op().prop_filter("nonzero", |a| !a.is_zero())
}

fn upoly(max_degree: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(rational(), 1..=max_degree + 1).prop_map(UPoly::from_coeffs)
}

pub fn generator(max_degree: usize) -> impl Strategy<Value = Generator> {
    prop_oneof![
        upoly(max_degree).prop_map(Generator::Phi1),
        upoly(max_degree).prop_map(Generator::Phi2),
        (nonzero_rational(), rational(), rational()).prop_map(|(a, b, d)| {
            let c = (Rational::from_integer(1.into()) + &b * &d) / &a;
            Generator::phi3(a, b, c, d).expect("determinant is one by construction")
        }),
        (rational(), rational()).prop_map(|(c1, c2)| Generator::Shift { c1, c2 }),
    ]
}

pub fn word(max_len: usize, max_degree: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(max_degree), 1..=max_len)
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..=12, 1i64..=5).prop_map(|(n, d)| Expr::Rational(rat(n, d))),
        Just(Expr::X),
        Just(Expr::D),
        (0usize..6).prop_map(Expr::Param),
    ]
}

pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec((any::<bool>(), inner.clone()), 1..=3).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Product),
            (inner, 0u32..=2).prop_map(|(b, e)| Expr::Power(Box::new(b), e)),
        ]
    })
}

fn err(e: weylkit::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn ring_axioms(seed: u64) -> Result<(), String> {
    check(seed, (weyl_op(), weyl_op(), weyl_op()), |(a, b, c)| {
        let ab_c = a.mul(&b).map_err(err)?.mul(&c).map_err(err)?;
        let a_bc = a.mul(&b.mul(&c).map_err(err)?).map_err(err)?;
        prop_assert_eq!(ab_c, a_bc);
        let left = a.mul(&(&b + &c)).map_err(err)?;
        prop_assert_eq!(left, &a.mul(&b).map_err(err)? + &a.mul(&c).map_err(err)?);
        let right = (&a + &b).mul(&c).map_err(err)?;
        prop_assert_eq!(right, &a.mul(&c).map_err(err)? + &b.mul(&c).map_err(err)?);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(a.mul(&WeylOp::one()).map_err(err)?, a.clone());
        prop_assert_eq!(WeylOp::one().mul(&a).map_err(err)?, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        Ok(())
    })
}

pub fn leibniz(seed: u64) -> Result<(), String> {
    check(seed, (weyl_op(), weyl_op(), weyl_op()), |(a, b, c)| {
        let bc = b.mul(&c).map_err(err)?;
        let lhs = a.commutator(&bc).map_err(err)?;
        let ab = a.commutator(&b).map_err(err)?;
        let ac = a.commutator(&c).map_err(err)?;
        let rhs = &ab.mul(&c).map_err(err)? + &b.mul(&ac).map_err(err)?;
        prop_assert_eq!(lhs, rhs);
        let j1 = a.commutator(&b.commutator(&c).map_err(err)?).map_err(err)?;
        let j2 = b.commutator(&c.commutator(&a).map_err(err)?).map_err(err)?;
        let j3 = c.commutator(&ab).map_err(err)?;
        prop_assert!((&(&j1 + &j2) + &j3).is_zero());
        Ok(())
    })
}

pub fn order_additivity(seed: u64) -> Result<(), String> {
    check(seed, (nonzero_op(), nonzero_op()), |(a, b)| {
        let ab = a.mul(&b).map_err(err)?;
        prop_assert_eq!(ab.order(), Some(a.order().unwrap() + b.order().unwrap()));
        Ok(())
    })
}

pub fn symbol_additivity(seed: u64) -> Result<(), String> {
    check(seed, (weyl_op(), weyl_op()), |(a, b)| {
        prop_assert_eq!((&a + &b).total_symbol(), &a.total_symbol() + &b.total_symbol());
        Ok(())
    })
}

pub fn symbol_multiplicativity(seed: u64) -> Result<(), String> {
    check(seed, (nonzero_op(), nonzero_op()), |(a, b)| {
        let d = a.mul(&b).map_err(err)?.total_symbol().degree();
        prop_assert_eq!(d, Some(a.total_symbol().degree().unwrap() + b.total_symbol().degree().unwrap()));
        Ok(())
    })
}

pub fn adjoint(seed: u64) -> Result<(), String> {
    check(seed, (weyl_op(), weyl_op()), |(a, b)| {
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let lhs = a.mul(&b).map_err(err)?.adjoint();
        prop_assert_eq!(lhs, b.adjoint().mul(&a.adjoint()).map_err(err)?);
        Ok(())
    })
}

pub fn automorphism_ccr(seed: u64) -> Result<(), String> {
    check(seed, word(4, 3), |w| {
        let phi = Automorphism::<6>::from_word(&w).map_err(err)?;
        prop_assert!(phi.ccr_residual().map_err(err)?.is_zero());
        Ok(())
    })
}

pub fn automorphism_homomorphism(seed: u64) -> Result<(), String> {
    check(seed, (word(2, 2), weyl_op(), weyl_op()), |(w, a, b)| {
        let phi = Automorphism::<6>::from_word(&w).map_err(err)?;
        let lhs = phi.apply(&a.mul(&b).map_err(err)?).map_err(err)?;
        let rhs = phi.apply(&a).map_err(err)?.mul(&phi.apply(&b).map_err(err)?).map_err(err)?;
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(phi.apply(&(&a + &b)).map_err(err)?, &phi.apply(&a).map_err(err)? + &phi.apply(&b).map_err(err)?);
        Ok(())
    })
}

pub fn automorphism_composition(seed: u64) -> Result<(), String> {
    check(seed, (word(2, 2), word(2, 2), weyl_op()), |(v, w, a)| {
        let phi = Automorphism::<6>::from_word(&v).map_err(err)?;
        let psi = Automorphism::<6>::from_word(&w).map_err(err)?;
        let joined: Vec<Generator> = v.iter().chain(&w).cloned().collect();
        let both = Automorphism::<6>::from_word(&joined).map_err(err)?;
        prop_assert_eq!(&both, &phi.compose(&psi).map_err(err)?);
        prop_assert_eq!(both.apply(&a).map_err(err)?, phi.apply(&psi.apply(&a).map_err(err)?).map_err(err)?);
        Ok(())
    })
}

pub fn parser_roundtrip(seed: u64) -> Result<(), String> {
    check(seed, weyl_op(), |a| {
        let text = format_canonical(&a);
        let back = parse_expr(&text).map_err(|e| TestCaseError::fail(format!("{text:?}: {e}")))?;
        prop_assert_eq!(back, a);
        Ok(())
    })
}

pub fn ast_roundtrip(seed: u64) -> Result<(), String> {
    check(seed, expr(), |e| {
        let text = e.to_string();
        let again = parse_ast(&text).map_err(|e| TestCaseError::fail(format!("{text:?}: {e}")))?;
        let (x, y) = (e.to_weyl().map_err(err)?, again.to_weyl().map_err(err)?);
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(parse_expr(&format_canonical(&x)).map_err(|e| TestCaseError::fail(e.to_string()))?, x);
        Ok(())
    })
}

pub fn json_roundtrip(seed: u64) -> Result<(), String> {
    check(seed, weyl_op(), |a| {
        let doc = encode_operator(&a);
        let back = decode_operator(&doc).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(encode_operator(&back), doc);
        let text = operator_to_json(&a);
        prop_assert_eq!(operator_from_json(&text).map_err(|e| TestCaseError::fail(e.to_string()))?, a);
        Ok(())
    })
}
