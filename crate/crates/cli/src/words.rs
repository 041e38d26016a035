//! Generator words: `phi1:D^2;phi2:x;phi3:2,0,1/2,0;shift:1,-3`.
//!
//! `phi1` takes a polynomial in `D`, `phi2` a polynomial in `x`; `phi3`
//! and `shift` take comma-separated rationals. The rightmost generator
//! acts first.

use thiserror::Error;
use weylkit::aut::Generator;
use weylkit::exactalg::parse_rational;
use weylkit::{Rational, UPoly, WeylOp};

use crate::parse::parse_expr;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("generator {index}: {reason}")]
pub struct WordError {
    pub index: usize,
    pub reason: String,
}

fn rationals(args: &str, n: usize) -> Result<Vec<Rational>, String> {
    let v: Vec<&str> = args.split(',').map(str::trim).collect();
    if v.len() != n {
        return Err(format!("expected {n} rationals, found {}", v.len()));
    }
    v.iter().map(|s| parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"))).collect()
}

/// Coefficients of a polynomial in `x` (`in_d = false`) or `D`.
fn univariate(text: &str, in_d: bool) -> Result<UPoly, String> {
    let op: WeylOp = parse_expr(text).map_err(|e| e.to_string())?;
    let mut coeffs = Vec::new();
    for (dpow, xpow, c) in op.terms() {
        let k = if in_d { dpow } else { xpow };
        if (in_d && xpow > 0) || (!in_d && dpow > 0) {
            return Err(format!("{text:?} is not a polynomial in {}", if in_d { "D" } else { "x" }));
        }
        let Some(v) = c.constant_value() else {
            return Err(format!("{text:?} has parameter coefficients"));
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::default());
        }
        coeffs[k] = v;
    }
    Ok(UPoly::from_coeffs(coeffs))
}

fn parse_generator(text: &str) -> Result<Generator, String> {
    let (name, args) = text.split_once(':').ok_or("missing ':'")?;
    match name.trim() {
        "phi1" => Ok(Generator::Phi1(univariate(args, true)?)),
        "phi2" => Ok(Generator::Phi2(univariate(args, false)?)),
        "phi3" => {
            let [a, b, c, d]: [Rational; 4] = rationals(args, 4)?.try_into().expect("length checked");
            Generator::phi3(a, b, c, d).map_err(|e| e.to_string())
        }
        "shift" => {
            let [c1, c2]: [Rational; 2] = rationals(args, 2)?.try_into().expect("length checked");
            Ok(Generator::Shift { c1, c2 })
        }
        other => Err(format!("unknown generator {other:?}")),
    }
}

pub fn parse_word(text: &str) -> Result<Vec<Generator>, WordError> {
    text.split(';')
        .enumerate()
        .map(|(index, g)| parse_generator(g).map_err(|reason| WordError { index, reason }))
        .collect()
}
