//! JSON documents for operators and spectral curves.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use weylkit::exactalg::mpoly::Monomial;
use weylkit::spectral::{SpectralCurve, CURVE_DEGREE};
use weylkit::{ParamPoly, Rational, WeylOp};

pub const OPERATOR_FORMAT: &str = "weyl_operator";
pub const CURVE_FORMAT: &str = "spectral_curve";
pub const PARAM_NAMES: [&str; 6] = ["a1", "a2", "a3", "a4", "a5", "a6"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub dpow: u64,
    pub xpow: u64,
    pub mono: [u16; 6],
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub format: String,
    pub params: Vec<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub mono: [u16; 6],
    pub num: String,
    pub den: String,
}

/// `w^2 = z^5 + c4 z^4 + ... + c0`; `coeffs[i]` holds `c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub format: String,
    pub params: Vec<String>,
    pub coeffs: Vec<Vec<CoeffRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unexpected format tag {found:?}, expected {expected:?}")]
    Format { found: String, expected: &'static str },
    #[error("unexpected parameter list {0:?}")]
    Params(Vec<String>),
    #[error("term {index}: {reason}")]
    Term { index: usize, reason: String },
    #[error("curve document needs {CURVE_DEGREE} coefficients, found {0}")]
    CoeffCount(usize),
}

fn params() -> Vec<String> {
    PARAM_NAMES.iter().map(|s| s.to_string()).collect()
}

fn coeff_records(p: &ParamPoly) -> impl Iterator<Item = ([u16; 6], String, String)> + '_ {
    p.terms().iter().map(|(m, c)| (m.0, c.numer().to_string(), c.denom().to_string()))
}

pub fn encode_operator(op: &WeylOp) -> OperatorDocument {
    let terms = op
        .terms()
        .flat_map(|(dpow, xpow, c)| {
            coeff_records(c).map(move |(mono, num, den)| TermRecord {
                dpow: dpow as u64,
                xpow: xpow as u64,
                mono,
                num,
                den,
            })
        })
        .collect();
    OperatorDocument { format: OPERATOR_FORMAT.into(), params: params(), terms }
}

fn decode_rational(num: &str, den: &str) -> Result<Rational, String> {
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    if d.is_negative() {
        return Err(format!("negative denominator {den:?}"));
    }
    if n.is_zero() {
        return Err("zero coefficient".into());
    }
    Ok(Rational::new(n, d))
}

fn check_header(format: &str, expected: &'static str, p: &[String]) -> Result<(), DecodeError> {
    if format != expected {
        return Err(DecodeError::Format { found: format.into(), expected });
    }
    if p != params().as_slice() {
        return Err(DecodeError::Params(p.to_vec()));
    }
    Ok(())
}

pub fn decode_operator(doc: &OperatorDocument) -> Result<WeylOp, DecodeError> {
    check_header(&doc.format, OPERATOR_FORMAT, &doc.params)?;
    let mut out = Vec::with_capacity(doc.terms.len());
    for (index, t) in doc.terms.iter().enumerate() {
        let err = |reason: String| DecodeError::Term { index, reason };
        let c = decode_rational(&t.num, &t.den).map_err(err)?;
        let dpow = usize::try_from(t.dpow).map_err(|_| err("dpow out of range".into()))?;
        let xpow = usize::try_from(t.xpow).map_err(|_| err("xpow out of range".into()))?;
        out.push((dpow, xpow, ParamPoly::monomial(Monomial(t.mono), c)));
    }
    Ok(WeylOp::from_terms(out))
}

pub fn encode_curve(curve: &SpectralCurve) -> CurveDocument {
    let coeffs = curve
        .c
        .iter()
        .map(|p| coeff_records(p).map(|(mono, num, den)| CoeffRecord { mono, num, den }).collect())
        .collect();
    CurveDocument { format: CURVE_FORMAT.into(), params: params(), coeffs }
}

pub fn decode_curve(doc: &CurveDocument) -> Result<SpectralCurve, DecodeError> {
    check_header(&doc.format, CURVE_FORMAT, &doc.params)?;
    if doc.coeffs.len() != CURVE_DEGREE {
        return Err(DecodeError::CoeffCount(doc.coeffs.len()));
    }
    let mut c: [ParamPoly; CURVE_DEGREE] = Default::default();
    let mut index = 0;
    for (slot, records) in c.iter_mut().zip(&doc.coeffs) {
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let q = decode_rational(&r.num, &r.den).map_err(|reason| DecodeError::Term { index, reason })?;
            terms.push((Monomial(r.mono), q));
            index += 1;
        }
        *slot = ParamPoly::from_terms(terms);
    }
    Ok(SpectralCurve::new(c))
}

pub fn operator_to_json(op: &WeylOp) -> String {
    serde_json::to_string_pretty(&encode_operator(op)).expect("document serializes") + "\n"
}

pub fn operator_from_json(text: &str) -> Result<WeylOp, DecodeError> {
    let doc: OperatorDocument = serde_json::from_str(text).map_err(|e| DecodeError::Json(e.to_string()))?;
    decode_operator(&doc)
}

pub fn curve_to_json(curve: &SpectralCurve) -> String {
    serde_json::to_string_pretty(&encode_curve(curve)).expect("document serializes") + "\n"
}

pub fn curve_from_json(text: &str) -> Result<SpectralCurve, DecodeError> {
    let doc: CurveDocument = serde_json::from_str(text).map_err(|e| DecodeError::Json(e.to_string()))?;
    decode_curve(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylkit::catalog::{make_l4b, Genus};

    #[test]
    fn roundtrip_l4b() {
        let l = make_l4b(Genus::TWO);
        let doc = encode_operator(&l);
        assert_eq!(decode_operator(&doc).unwrap(), l);
        assert_eq!(operator_from_json(&operator_to_json(&l)).unwrap(), l);
        let keys: Vec<_> = doc.terms.iter().map(|t| (t.dpow, t.xpow)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(keys, sorted);
    }

    #[test]
    fn zero_document() {
        let doc = encode_operator(&WeylOp::zero());
        assert!(doc.terms.is_empty());
        assert!(decode_operator(&doc).unwrap().is_zero());
    }

    #[test]
    fn bad_terms() {
        let mut doc = encode_operator(&make_l4b(Genus::TWO));
        doc.terms[3].den = "0".into();
        assert_eq!(
            decode_operator(&doc),
            Err(DecodeError::Term { index: 3, reason: "zero denominator".into() })
        );
        doc.terms[3].den = "1".into();
        doc.terms[5].num = "x".into();
        assert!(matches!(decode_operator(&doc), Err(DecodeError::Term { index: 5, .. })));
        doc.format = "other".into();
        assert!(matches!(decode_operator(&doc), Err(DecodeError::Format { .. })));
    }

    #[test]
    fn curve_roundtrip() {
        let c = SpectralCurve::catalog();
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
    }
}
