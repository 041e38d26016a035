//! Explicit operators and formula families.
//!
//! `L4b`, `P`, `L10b` and the curve coefficients are symbolic in the six
//! parameters `a1..a6`. The Mironov operator and the Chebyshev family take
//! rational inputs and live in their own parameter namespace.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::{rat, MPoly, ParamPoly, Rational, UPoly, XPoly, NPARAMS};
use crate::weyl::WeylOp;

/// Genus index accepted by the catalog constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Genus(u32);

impl Genus {
    pub const TWO: Genus = Genus(2);

    pub fn new(g: u32) -> Result<Self> {
        if (1..=3).contains(&g) {
            Ok(Genus(g))
        } else {
            Err(Error::InvalidParameter(format!("genus {g} not in 1..=3")))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `g(g+1)`
    pub fn weight(self) -> i64 {
        let g = self.0 as i64;
        g * (g + 1)
    }
}

/// Coefficients of `w² = z⁵ + c4 z⁴ + ... + c0`; index `i` holds the
/// coefficient of `z^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCoeffs {
    pub b: [ParamPoly; 5],
    pub c: [ParamPoly; 5],
}

/// Polynomial in `x` over `MPoly<N>` with owned operators, used to keep the
/// long transcriptions below readable.
#[derive(Clone, Debug)]
pub(crate) struct Ex<const N: usize>(pub(crate) XPoly<N>);

impl<const N: usize> Ex<N> {
    fn konst(p: MPoly<N>) -> Self {
        Ex(XPoly::constant(p))
    }

    fn pow(&self, e: u32) -> Self {
        Ex(self.0.pow(e))
    }

    fn into_param(self) -> MPoly<N> {
        debug_assert!(self.0.degree().unwrap_or(0) == 0);
        self.0.coeff(0)
    }

    fn op(self) -> WeylOp<N> {
        WeylOp::from_xpoly(self.0)
    }
}

impl<const N: usize> Add for Ex<N> {
    type Output = Ex<N>;
    fn add(self, r: Ex<N>) -> Ex<N> {
        Ex(&self.0 + &r.0)
    }
}

impl<const N: usize> Sub for Ex<N> {
    type Output = Ex<N>;
    fn sub(self, r: Ex<N>) -> Ex<N> {
        Ex(&self.0 - &r.0)
    }
}

impl<const N: usize> Mul for Ex<N> {
    type Output = Ex<N>;
    fn mul(self, r: Ex<N>) -> Ex<N> {
        Ex(&self.0 * &r.0)
    }
}

impl<const N: usize> Neg for Ex<N> {
    type Output = Ex<N>;
    fn neg(self) -> Ex<N> {
        Ex(-&self.0)
    }
}

impl<const N: usize> Mul<Ex<N>> for i64 {
    type Output = Ex<N>;
    fn mul(self, r: Ex<N>) -> Ex<N> {
        Ex(r.0.scale_rational(&Rational::from_integer(self.into())))
    }
}

fn k<const N: usize>(n: i64, d: i64) -> Ex<N> {
    Ex::konst(MPoly::constant(rat(n, d)))
}

fn x<const N: usize>() -> Ex<N> {
    Ex(XPoly::x())
}

/// The six family parameters as expressions.
fn gens() -> [Ex<NPARAMS>; NPARAMS] {
    std::array::from_fn(|i| Ex::konst(ParamPoly::var(i)))
}

/// `P = (a1 x² + 1)∂² + (a2 x + a3)∂ + a4 x + a5` built from arbitrary
/// coefficient values.
pub fn p_template<const N: usize>(a: &[MPoly<N>; 6]) -> WeylOp<N> {
    let e = |i: usize| Ex::konst(a[i].clone());
    let c2 = e(0) * x().pow(2) + k(1, 1);
    let c1 = e(1) * x() + e(2);
    let c0 = e(3) * x() + e(4);
    WeylOp::from_coeffs(vec![c0.0, c1.0, c2.0])
}

/// `L4b = P² + a1 a4 g(g+1) x + a6` built from arbitrary coefficient values.
pub fn l4b_template<const N: usize>(g: Genus, a: &[MPoly<N>; 6]) -> WeylOp<N> {
    let p = p_template(a);
    let sq = p.mul(&p).expect("order-4 square stays far below any term cap");
    let lin = Ex::konst(&a[0] * &a[3]) * x();
    let corr = g.weight() * lin + Ex::konst(a[5].clone());
    &sq + &corr.op()
}

fn param_gens() -> [ParamPoly; 6] {
    std::array::from_fn(ParamPoly::var)
}

pub fn make_p() -> WeylOp {
    p_template(&param_gens())
}

/// `L4b = ((a1x²+1)∂² + (a2x+a3)∂ + a4x + a5)² + a1 a4 g(g+1) x + a6`
pub fn make_l4b(g: Genus) -> WeylOp {
    l4b_template(g, &param_gens())
}

/// The order-10 operator commuting with `L4b` at genus two.
///
/// Products are read left to right: coefficient, then powers of `P`, then
/// `∂`. The `∂` factor sits on the `45 a1 a4 (a1 x² + 1) P²` term; the
/// commutation test fails if it is moved onto the neighbouring `P²` term.
pub fn make_l10b() -> Result<WeylOp> {
    let [a1, a2, a3, a4, a5, _] = gens();
    let p = make_p();
    let d = WeylOp::d();
    let p2 = p.mul(&p)?;
    let p3 = p2.mul(&p)?;
    let p5 = p3.mul(&p2)?;

    // P^5 + (5/2 a1 (6x a4 + a2 + 2 a5) + 3 a1^2 - 5 a2^2/4) P^3
    let f3 = k(5, 2) * a1.clone() * (6 * x() * a4.clone() + a2.clone() + 2 * a5.clone())
        + 3 * a1.pow(2)
        - k(5, 4) * a2.pow(2);
    // + 45 a1 a4 (x^2 a1 + 1) P^2 ∂
    let f2d = 45 * a1.clone() * a4.clone() * (x().pow(2) * a1.clone() + k(1, 1));
    // + 15/2 a1 a4 (34 x a1 + 3 (x a2 + a3)) P^2
    let f2 = k(15, 2)
        * a1.clone()
        * a4.clone()
        * (34 * x() * a1.clone() + 3 * (x() * a2.clone() + a3.clone()));
    // - 30 a1 a4 (2 x^2 a1^2 + a1 (3 x^2 a2 + 6 x a3 - 10) - 3 a2) P ∂
    let f1d = -30
        * a1.clone()
        * a4.clone()
        * (2 * x().pow(2) * a1.pow(2)
            + a1.clone() * (3 * x().pow(2) * a2.clone() + 6 * x() * a3.clone() - k(10, 1))
            - 3 * a2.clone());
    let [q0, q1, q2] = l10b_q();

    let mut out = p5;
    out = &out + &f3.op().mul(&p3)?;
    out = &out + &f2d.op().mul(&p2)?.mul(&d)?;
    out = &out + &f2.op().mul(&p2)?;
    out = &out + &f1d.op().mul(&p)?.mul(&d)?;
    out = &out + &q2.op().mul(&p)?;
    out = &out + &q1.op().mul(&d)?;
    out = &out + &q0.op();
    Ok(out)
}

/// `[q0, q1, q2]` of the `L10b` formula.
fn l10b_q() -> [Ex<NPARAMS>; 3] {
    let [a1, a2, a3, a4, a5, _] = gens();
    // q0 = 15 x^2 (a1 + 3 a2) a4^2 a1^2
    //    + 3/2 x a4 (6 a1^2 + (13 a2 - 64 a5) a1 - 60 a3 a4 + 6 a2 (a2 + 20 a5)) a1^2
    //    + 3/2 a4 (9 a3 a1^2 + (8 a2 a3 + 60 a5 a3 + 58 a4) a1 + 30 a2 a4) a1
    let q0 = 15 * x().pow(2) * (a1.clone() + 3 * a2.clone()) * a4.pow(2) * a1.pow(2)
        + k(3, 2)
            * x()
            * a4.clone()
            * (6 * a1.pow(2) + (13 * a2.clone() - 64 * a5.clone()) * a1.clone()
                - 60 * a3.clone() * a4.clone()
                + 6 * a2.clone() * (a2.clone() + 20 * a5.clone()))
            * a1.pow(2)
        + k(3, 2)
            * a4.clone()
            * (9 * a3.clone() * a1.pow(2)
                + (8 * a2.clone() * a3.clone()
                    + 60 * a5.clone() * a3.clone()
                    + 58 * a4.clone())
                    * a1.clone()
                + 30 * a2.clone() * a4.clone())
            * a1.clone();
    // q1 = 15 x^2 a4 (5 a1^2 + 4 (a2 + 3 a5) a1 + 3 a2^2) a1^2
    //    - 30 x a4 ((2 a1 - 3 a2) a3 + 12 a4) a1^2
    //    + 15 a4 (5 a1^2 + 2 (3 a3^2 + 4 a2 - 6 a5) a1 + 3 a2^2) a1
    let q1 = 15
        * x().pow(2)
        * a4.clone()
        * (5 * a1.pow(2) + 4 * (a2.clone() + 3 * a5.clone()) * a1.clone() + 3 * a2.pow(2))
        * a1.pow(2)
        - 30 * x()
            * a4.clone()
            * ((2 * a1.clone() - 3 * a2.clone()) * a3.clone() + 12 * a4.clone())
            * a1.pow(2)
        + 15 * a4.clone()
            * (5 * a1.pow(2)
                + 2 * (3 * a3.pow(2) + 4 * a2.clone() - 6 * a5.clone()) * a1.clone()
                + 3 * a2.pow(2))
            * a1.clone();
    // q2 = -135 x^2 a1^2 a4^2 + 15/2 x a1 (18 a1^2 - 2 (9 a2 + 14 a5) a1 + a2^2) a4
    //    + 1/4 (a2^4 + 6 a1^3 (a2 + 2 a5)
    //           + a1 (-4 a2^3 - 8 a5 a2^2 + 54 a3 a4 a2 + 252 a4^2)
    //           + a1^2 (a2^2 + 16 a5 a2 + 16 a5^2 - 228 a3 a4))
    let q2 = -135 * x().pow(2) * a1.pow(2) * a4.pow(2)
        + k(15, 2)
            * x()
            * a1.clone()
            * (18 * a1.pow(2) - 2 * (9 * a2.clone() + 14 * a5.clone()) * a1.clone() + a2.pow(2))
            * a4.clone()
        + k(1, 4)
            * (a2.pow(4)
                + 6 * a1.pow(3) * (a2.clone() + 2 * a5.clone())
                + a1.clone()
                    * (-4 * a2.pow(3) - 8 * a5.clone() * a2.pow(2)
                        + 54 * a3.clone() * a4.clone() * a2.clone()
                        + 252 * a4.pow(2))
                + a1.pow(2)
                    * (a2.pow(2) + 16 * a5.clone() * a2.clone() + 16 * a5.pow(2)
                        - 228 * a3.clone() * a4.clone()));
    [q0, q1, q2]
}

/// The `b` and `c` coefficients of the genus-two spectral curve of
/// `(L4b, L10b)`.
pub fn curve_coeffs() -> CurveCoeffs {
    let [a1, a2, a3, a4, a5, a6] = gens();
    // b4 = 6 a1^2 + 5 (a2 + 2 a5) a1 - 5 a2^2 / 2
    let b4 = 6 * a1.pow(2) + 5 * (a2.clone() + 2 * a5.clone()) * a1.clone() - k(5, 2) * a2.pow(2);
    // b3 = 3/16 (48 a1^4 + 96 (a2 + 2 a5) a1^3 + 4 (-a2^2 + 44 a5 a2 + 44 a5^2 + 28 a3 a4) a1^2
    //      - 4 (11 a2^3 + 22 a5 a2^2 + 14 a3 a4 a2 - 28 a4^2) a1 + 11 a2^4)
    let b3 = k(3, 16)
        * (48 * a1.pow(4)
            + 96 * (a2.clone() + 2 * a5.clone()) * a1.pow(3)
            + 4 * (-a2.pow(2)
                + 44 * a5.clone() * a2.clone()
                + 44 * a5.pow(2)
                + 28 * a3.clone() * a4.clone())
                * a1.pow(2)
            - 4 * (11 * a2.pow(3)
                + 22 * a5.clone() * a2.pow(2)
                + 14 * a3.clone() * a4.clone() * a2.clone()
                - 28 * a4.pow(2))
                * a1.clone()
            + 11 * a2.pow(4));
    // b2 = 1/8 (-5 a2^6 + 3 a1 (10 a2^3 + 20 a5 a2^2 + 39 a3 a4 a2 - 78 a4^2) a2^2
    //      + 72 a1^5 (a2 + 2 a5) + 72 a1^4 (a2^2 + 6 a5 a2 + 6 a5^2 + 8 a3 a4)
    //      + 4 a1^3 (-17 a2^3 + 120 a5^2 a2 + 45 a3 a4 a2 + 80 a5^3 + 234 a4^2 + 6 (a2^2 + 39 a3 a4) a5)
    //      - 3 a1^2 (11 a2^4 + 80 a5 a2^3 + 4 (20 a5^2 + 39 a3 a4) a2^2
    //                + 12 a4 (13 a3 a5 - 10 a4) a2 + 6 a4^2 (3 a3^2 - 64 a5)))
    let b2 = k(1, 8)
        * (-5 * a2.pow(6)
            + 3 * a1.clone()
                * (10 * a2.pow(3)
                    + 20 * a5.clone() * a2.pow(2)
                    + 39 * a3.clone() * a4.clone() * a2.clone()
                    - 78 * a4.pow(2))
                * a2.pow(2)
            + 72 * a1.pow(5) * (a2.clone() + 2 * a5.clone())
            + 72 * a1.pow(4)
                * (a2.pow(2)
                    + 6 * a5.clone() * a2.clone()
                    + 6 * a5.pow(2)
                    + 8 * a3.clone() * a4.clone())
            + 4 * a1.pow(3)
                * (-17 * a2.pow(3)
                    + 120 * a5.pow(2) * a2.clone()
                    + 45 * a3.clone() * a4.clone() * a2.clone()
                    + 80 * a5.pow(3)
                    + 234 * a4.pow(2)
                    + 6 * (a2.pow(2) + 39 * a3.clone() * a4.clone()) * a5.clone())
            - 3 * a1.pow(2)
                * (11 * a2.pow(4)
                    + 80 * a5.clone() * a2.pow(3)
                    + 4 * (20 * a5.pow(2) + 39 * a3.clone() * a4.clone()) * a2.pow(2)
                    + 12 * a4.clone() * (13 * a3.clone() * a5.clone() - 10 * a4.clone()) * a2.clone()
                    + 6 * a4.pow(2) * (3 * a3.pow(2) - 64 * a5.clone())));
    // b1 = 1/16 (a2^8 - 8 a1 (a2^3 + 2 a5 a2^2 + 9 a3 a4 a2 - 18 a4^2) a2^4
    //      + 12 a1^5 (a2^3 + 48 a5^2 a2 + 78 a3 a4 a2 + 32 a5^3 + 180 a4^2 + 6 (3 a2^2 + 32 a3 a4) a5)
    //      + 36 a1^6 ((a2 + 2 a5)^2 + 12 a3 a4)
    //      + 6 a1^2 (3 a2^6 + 16 a5 a2^5 + 8 (2 a5^2 + 9 a3 a4) a2^4 + 12 a4 (8 a3 a5 - 5 a4) a2^3
    //                + 6 a4^2 (15 a3^2 - 44 a5) a2^2 - 288 a3 a4^3 a2 + 288 a4^4)
    //      + 4 a1^3 (a2^5 - 30 a5 a2^4 - 48 (2 a5^2 + 3 a3 a4) a2^3
    //                - 2 (32 a5^3 + 288 a3 a4 a5 + 153 a4^2) a2^2
    //                - 18 a4 (27 a4 a3^2 + 16 a5^2 a3 - 32 a4 a5) a2
    //                + 36 a4^2 (-3 a5 a3^2 + 24 a4 a3 + 28 a5^2))
    //      + a1^4 (-47 a2^4 - 160 a5 a2^3 + 96 (a5^2 - 6 a3 a4) a2^2
    //              + 128 (4 a5^3 + 9 a3 a4 a5 + 18 a4^2) a2
    //              + 8 (32 a5^4 + 288 a3 a4 a5^2 + 792 a4^2 a5 + 189 a3^2 a4^2)))
    let b1 = k(1, 16)
        * (a2.pow(8)
            - 8 * a1.clone()
                * (a2.pow(3)
                    + 2 * a5.clone() * a2.pow(2)
                    + 9 * a3.clone() * a4.clone() * a2.clone()
                    - 18 * a4.pow(2))
                * a2.pow(4)
            + 12 * a1.pow(5)
                * (a2.pow(3)
                    + 48 * a5.pow(2) * a2.clone()
                    + 78 * a3.clone() * a4.clone() * a2.clone()
                    + 32 * a5.pow(3)
                    + 180 * a4.pow(2)
                    + 6 * (3 * a2.pow(2) + 32 * a3.clone() * a4.clone()) * a5.clone())
            + 36 * a1.pow(6)
                * ((a2.clone() + 2 * a5.clone()).pow(2) + 12 * a3.clone() * a4.clone())
            + 6 * a1.pow(2)
                * (3 * a2.pow(6)
                    + 16 * a5.clone() * a2.pow(5)
                    + 8 * (2 * a5.pow(2) + 9 * a3.clone() * a4.clone()) * a2.pow(4)
                    + 12 * a4.clone() * (8 * a3.clone() * a5.clone() - 5 * a4.clone()) * a2.pow(3)
                    + 6 * a4.pow(2) * (15 * a3.pow(2) - 44 * a5.clone()) * a2.pow(2)
                    - 288 * a3.clone() * a4.pow(3) * a2.clone()
                    + 288 * a4.pow(4))
            + 4 * a1.pow(3)
                * (a2.pow(5) - 30 * a5.clone() * a2.pow(4)
                    - 48 * (2 * a5.pow(2) + 3 * a3.clone() * a4.clone()) * a2.pow(3)
                    - 2 * (32 * a5.pow(3)
                        + 288 * a3.clone() * a4.clone() * a5.clone()
                        + 153 * a4.pow(2))
                        * a2.pow(2)
                    - 18 * a4.clone()
                        * (27 * a4.clone() * a3.pow(2)
                            + 16 * a5.pow(2) * a3.clone()
                            - 32 * a4.clone() * a5.clone())
                        * a2.clone()
                    + 36 * a4.pow(2)
                        * (-3 * a5.clone() * a3.pow(2)
                            + 24 * a4.clone() * a3.clone()
                            + 28 * a5.pow(2)))
            + a1.pow(4)
                * (-47 * a2.pow(4) - 160 * a5.clone() * a2.pow(3)
                    + 96 * (a5.pow(2) - 6 * a3.clone() * a4.clone()) * a2.pow(2)
                    + 128 * (4 * a5.pow(3)
                        + 9 * a3.clone() * a4.clone() * a5.clone()
                        + 18 * a4.pow(2))
                        * a2.clone()
                    + 8 * (32 * a5.pow(4)
                        + 288 * a3.clone() * a4.clone() * a5.pow(2)
                        + 792 * a4.pow(2) * a5.clone()
                        + 189 * a3.pow(2) * a4.pow(2))));
    // b0 = 3/8 a1 a4 (36 (a3 (a2 + 2 a5) - 6 a4) a1^6
    //      + 6 (2 a3 a2^2 + 2 (6 a4 + 13 a3 a5) a2 + 32 a3 a5^2 + 45 a3^2 a4 - 48 a4 a5) a1^5
    //      + (-47 a3 a2^3 + 186 a4 a2^2 - 36 a3^2 a4 a2 + 128 a3 a5^3 + 1728 a3 a4^2
    //         + 96 (a2 a3 + a4) a5^2 + 24 ((15 a3^2 + 16 a2) a4 - 4 a2^2 a3) a5) a1^4
    //      + 4 (a3 a2^4 - (29 a4 + 24 a3 a5) a2^3 - 3 (15 a4 a3^2 + 16 a5^2 a3 + 2 a4 a5) a2^2
    //           - 4 (18 a4 a5 a3^2 + (4 a5^3 + 63 a4^2) a3 - 12 a4 a5^2) a2
    //           + 2 a4 (16 a5^3 + 180 a3 a4 a5 - 27 (a3^3 - 8 a4) a4)) a1^3
    //      + 6 (3 a3 a2^5 + 12 a3 a5 a2^4 + 2 (9 a4 a3^2 + 4 a5^2 a3 - 8 a4 a5) a2^3
    //           - 4 a4 (-3 a5 a3^2 + 3 a4 a3 + 4 a5^2) a2^2 - 6 a4^2 (-3 a3^3 + 20 a5 a3 + 8 a4) a2
    //           + 12 a4^3 (16 a5 - 3 a3^2)) a1^2
    //      - 2 a2^2 (4 a3 a2^4 - 6 (a4 - a3 a5) a2^3 + 3 a4 (3 a3^2 - 4 a5) a2^2
    //                - 36 a3 a4^2 a2 + 36 a4^3) a1
    //      + a2^6 (a2 a3 - 2 a4))
    let b0 = k(3, 8)
        * a1.clone()
        * a4.clone()
        * (36 * (a3.clone() * (a2.clone() + 2 * a5.clone()) - 6 * a4.clone()) * a1.pow(6)
            + 6 * (2 * a3.clone() * a2.pow(2)
                + 2 * (6 * a4.clone() + 13 * a3.clone() * a5.clone()) * a2.clone()
                + 32 * a3.clone() * a5.pow(2)
                + 45 * a3.pow(2) * a4.clone()
                - 48 * a4.clone() * a5.clone())
                * a1.pow(5)
            + (-47 * a3.clone() * a2.pow(3) + 186 * a4.clone() * a2.pow(2)
                - 36 * a3.pow(2) * a4.clone() * a2.clone()
                + 128 * a3.clone() * a5.pow(3)
                + 1728 * a3.clone() * a4.pow(2)
                + 96 * (a2.clone() * a3.clone() + a4.clone()) * a5.pow(2)
                + 24 * ((15 * a3.pow(2) + 16 * a2.clone()) * a4.clone()
                    - 4 * a2.pow(2) * a3.clone())
                    * a5.clone())
                * a1.pow(4)
            + 4 * (a3.clone() * a2.pow(4)
                - (29 * a4.clone() + 24 * a3.clone() * a5.clone()) * a2.pow(3)
                - 3 * (15 * a4.clone() * a3.pow(2)
                    + 16 * a5.pow(2) * a3.clone()
                    + 2 * a4.clone() * a5.clone())
                    * a2.pow(2)
                - 4 * (18 * a4.clone() * a5.clone() * a3.pow(2)
                    + (4 * a5.pow(3) + 63 * a4.pow(2)) * a3.clone()
                    - 12 * a4.clone() * a5.pow(2))
                    * a2.clone()
                + 2 * a4.clone()
                    * (16 * a5.pow(3) + 180 * a3.clone() * a4.clone() * a5.clone()
                        - 27 * (a3.pow(3) - 8 * a4.clone()) * a4.clone()))
                * a1.pow(3)
            + 6 * (3 * a3.clone() * a2.pow(5)
                + 12 * a3.clone() * a5.clone() * a2.pow(4)
                + 2 * (9 * a4.clone() * a3.pow(2) + 4 * a5.pow(2) * a3.clone()
                    - 8 * a4.clone() * a5.clone())
                    * a2.pow(3)
                - 4 * a4.clone()
                    * (-3 * a5.clone() * a3.pow(2) + 3 * a4.clone() * a3.clone() + 4 * a5.pow(2))
                    * a2.pow(2)
                - 6 * a4.pow(2)
                    * (-3 * a3.pow(3) + 20 * a5.clone() * a3.clone() + 8 * a4.clone())
                    * a2.clone()
                + 12 * a4.pow(3) * (16 * a5.clone() - 3 * a3.pow(2)))
                * a1.pow(2)
            - 2 * a2.pow(2)
                * (4 * a3.clone() * a2.pow(4)
                    - 6 * (a4.clone() - a3.clone() * a5.clone()) * a2.pow(3)
                    + 3 * a4.clone() * (3 * a3.pow(2) - 4 * a5.clone()) * a2.pow(2)
                    - 36 * a3.clone() * a4.pow(2) * a2.clone()
                    + 36 * a4.pow(3))
                * a1.clone()
            + a2.pow(6) * (a2.clone() * a3.clone() - 2 * a4.clone()));

    let [b0, b1, b2, b3, b4] = [b0, b1, b2, b3, b4].map(Ex::into_param);
    let s = a6.into_param();
    let s2 = s.pow(2);
    let s3 = s.pow(3);
    let s4 = s.pow(4);
    let n = |v: i64| ParamPoly::from_int(v);
    // c4 = b4 - 5 a6
    let c4 = &b4 - &(&n(5) * &s);
    // c3 = b3 - 4 b4 a6 + 10 a6^2
    let c3 = &(&b3 - &(&n(4) * &(&b4 * &s))) + &(&n(10) * &s2);
    // c2 = b2 - 3 b3 a6 + 6 b4 a6^2 - 10 a6^3
    let c2 = &(&(&b2 - &(&n(3) * &(&b3 * &s))) + &(&n(6) * &(&b4 * &s2))) - &(&n(10) * &s3);
    // c1 = b1 - 2 b2 a6 + 3 b3 a6^2 - 4 b4 a6^3 + 5 a6^4
    let c1 = &(&(&(&b1 - &(&n(2) * &(&b2 * &s))) + &(&n(3) * &(&b3 * &s2)))
        - &(&n(4) * &(&b4 * &s3)))
        + &(&n(5) * &s4);
    // c0 = b0 - a6 (b1 + a6 (a6 (b3 - b4 a6 + a6^2) - b2))
    let inner = &(&(&b3 - &(&b4 * &s)) + &s2);
    let c0 = &b0 - &(&s * &(&b1 + &(&s * &(&(&s * inner) - &b2))));
    CurveCoeffs { b: [b0, b1, b2, b3, b4], c: [c0, c1, c2, c3, c4] }
}

/// `L4 = (∂² + a3 x³ + a2 x² + a1 x + a0)² + g(g+1) a3 x` with rational
/// inputs `a = [a0, a1, a2, a3]`.
pub fn make_mironov_l4(g: Genus, a: &[Rational; 4]) -> WeylOp {
    let c = |r: &Rational| ParamPoly::constant(r.clone());
    let potential = XPoly::from_coeffs(a.iter().map(c).collect());
    let inner = &WeylOp::term(ParamPoly::one(), 0, 2) + &WeylOp::from_xpoly(potential);
    let sq = inner.mul(&inner).expect("order-4 square stays far below any term cap");
    let corr = a[3].clone() * Rational::from_integer(g.weight().into());
    &sq + &WeylOp::term(ParamPoly::constant(corr), 1, 0)
}

/// Chebyshev polynomial `T_r` via `T_r = 2y T_{r-1} - T_{r-2}`, with
/// `T_{-r} = T_r`.
pub fn chebyshev_t(r: i64) -> UPoly {
    let n = r.unsigned_abs();
    let mut prev = UPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = UPoly::var();
    let two_y = UPoly::from_ints(&[0, 2]);
    for _ in 1..n {
        let next = &(&two_y * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `L4# = ((1 − y²)∂² − 3y∂ + a T_r(y) + b)² − a r² g(g+1) T_r(y)`, written
/// in the operator variable `x` standing for `y`.
pub fn make_l4sharp(g: Genus, r: i64, a: &Rational, b: &Rational) -> Result<WeylOp> {
    use num_traits::Zero;
    if a.is_zero() {
        return Err(Error::InvalidParameter("L4sharp requires a != 0".into()));
    }
    let t = chebyshev_t(r);
    let lift = |u: &UPoly| {
        XPoly::from_coeffs(u.coeffs().iter().map(|c| ParamPoly::constant(c.clone())).collect())
    };
    let c2 = lift(&UPoly::from_ints(&[1, 0, -1]));
    let c1 = lift(&UPoly::from_ints(&[0, -3]));
    let c0 = lift(&(&t.scale(a) + &UPoly::constant(b.clone())));
    let inner = WeylOp::from_coeffs(vec![c0, c1, c2]);
    let sq = inner.mul(&inner)?;
    let k = a * Rational::from_integer((r * r * g.weight()).into());
    Ok(&sq - &WeylOp::from_xpoly(lift(&t.scale(&k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, int_point};

    #[test]
    fn l4b_shape() {
        let l = make_l4b(Genus::TWO);
        assert_eq!(l.order(), Some(4));
        assert_eq!(l.specialize(&int_point([0; 6])), WeylOp::term(ParamPoly::one(), 0, 4));
        // leading coefficient (a1 x^2 + 1)^2
        let a1 = ParamPoly::var(0);
        let lc = XPoly::from_coeffs(vec![
            ParamPoly::one(),
            ParamPoly::zero(),
            a1.scale(&int(2)),
            ParamPoly::zero(),
            a1.pow(2),
        ]);
        assert_eq!(l.leading_coeff(), Some(&lc));
    }

    #[test]
    fn l4b_is_p_squared_plus_correction() {
        let p = make_p();
        assert_eq!(p.order(), Some(2));
        let l = make_l4b(Genus::TWO);
        let rest = &l - &p.mul(&p).unwrap();
        let a1a4 = &ParamPoly::var(0) * &ParamPoly::var(3);
        let expected = &WeylOp::term(a1a4.scale(&int(6)), 1, 0) + &WeylOp::constant(ParamPoly::var(5));
        assert_eq!(rest, expected);
        let px = p.specialize(&int_point([1, 0, 0, 0, 0, 0]));
        let expected = WeylOp::from_terms([(2, 2, ParamPoly::one()), (2, 0, ParamPoly::one())]);
        assert_eq!(px, expected);
    }

    #[test]
    fn l10b_degenerate_point() {
        let pt = int_point([1, 0, 0, 0, 0, 0]);
        let l10 = make_l10b().unwrap();
        assert_eq!(l10.order(), Some(10));
        let p = make_p().specialize(&pt);
        let p3 = p.pow(3).unwrap();
        let expected = &p.pow(5).unwrap() + &p3.scale_rational(&int(3));
        assert_eq!(l10.specialize(&pt), expected);
    }

    #[test]
    fn curve_values_at_degenerate_point() {
        let cc = curve_coeffs();
        let pt = int_point([1, 0, 0, 0, 0, 0]);
        let vals: Vec<_> = cc.c.iter().map(|c| c.eval(&pt)).collect();
        assert_eq!(vals, vec![int(0), int(0), int(0), int(9), int(6)]);
    }

    #[test]
    fn curve_shift_relations() {
        let cc = curve_coeffs();
        // c4 = b4 - 5 a6 and c1 = b1 when a6 = 0
        assert_eq!(cc.c[4].partial(5), ParamPoly::from_int(-5));
        assert!(cc.b[4].partial(5).is_zero());
        let drop_a6 = |p: &ParamPoly| p.substitute(5, &ParamPoly::zero());
        assert_eq!(drop_a6(&cc.c[1]), cc.b[1]);
        let a2 = ParamPoly::var(1);
        assert_eq!(cc.b[4].substitute(0, &ParamPoly::zero()), a2.pow(2).scale(&rat(-5, 2)));
        assert_eq!(cc.c[4].eval(&int_point([1, 0, 0, 0, 0, 0])), int(6));
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_t(0), UPoly::one());
        assert_eq!(chebyshev_t(1), UPoly::var());
        assert_eq!(chebyshev_t(2), UPoly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev_t(-3), chebyshev_t(3));
        assert_eq!(chebyshev_t(3), UPoly::from_ints(&[0, -3, 0, 4]));
        // T_r(cos t) = cos(r t) at t with cos t = 1/2: T_3(1/2) = cos(π) = -1
        assert_eq!(chebyshev_t(3).eval(&rat(1, 2)), int(-1));
    }

    #[test]
    fn mironov_and_sharp_shapes() {
        let g1 = Genus::new(1).unwrap();
        let z = int(0);
        let l = make_mironov_l4(g1, &[int(1), int(2), int(3), int(0)]);
        assert_eq!(l.order(), Some(4));
        let inner = WeylOp::from_terms([
            (2, 0, ParamPoly::one()),
            (0, 2, ParamPoly::from_int(3)),
            (0, 1, ParamPoly::from_int(2)),
            (0, 0, ParamPoly::from_int(1)),
        ]);
        assert_eq!(l, inner.pow(2).unwrap());
        let s = make_l4sharp(g1, 2, &int(1), &z).unwrap();
        assert_eq!(s.order(), Some(4));
        assert!(make_l4sharp(g1, 1, &z, &z).is_err());
        // r = 0: no correction term
        let s0 = make_l4sharp(g1, 0, &int(2), &int(3)).unwrap();
        let inner = WeylOp::from_terms([
            (2, 0, ParamPoly::one()),
            (2, 2, ParamPoly::from_int(-1)),
            (1, 1, ParamPoly::from_int(-3)),
            (0, 0, ParamPoly::from_int(5)),
        ]);
        assert_eq!(s0, inner.pow(2).unwrap());
        assert!(Genus::new(4).is_err());
    }
}

#[cfg(test)]
mod identity_tests {
    use super::*;
    use crate::exactalg::{int, int_point};

    #[test]
    fn l10b_commutes_at_points() {
        let l4 = make_l4b(Genus::TWO);
        let l10 = make_l10b().unwrap();
        for p in [[1, 2, 3, 5, 7, 11], [3, -2, 5, 7, -1, 4]] {
            let pt = int_point(p);
            let c = l4.specialize(&pt).commutator(&l10.specialize(&pt)).unwrap();
            assert!(c.is_zero());
        }
    }

    #[test]
    fn curve_values_at_generic_point() {
        let cc = curve_coeffs();
        let pt = int_point([1, 2, 3, 5, 7, 11]);
        let vals: Vec<_> = cc.c.iter().map(|c| c.eval(&pt)).collect();
        assert_eq!(vals, vec![int(294475), int(37710), rat(19961, 4), int(269), int(21)]);
    }
}
