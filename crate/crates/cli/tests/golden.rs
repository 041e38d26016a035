//! Golden values checked through the command-line surface.

use weylkit::catalog::curve_coeffs;
use weylkit::{ParamPoly, WeylOp};
use weylkit_cli::{parse_expr, run};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("weylkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scalar(text: &str) -> ParamPoly {
    let op: WeylOp = parse_expr(text).unwrap();
    assert_eq!(op.order(), Some(0), "{text}");
    assert_eq!(op.x_degree(), Some(0), "{text}");
    op.coeff_at(0, 0)
}

const B4: &str = "6*a1^2 + 5*(a2 + 2*a5)*a1 - 5/2*a2^2";

const B3: &str = "3/16*(48*a1^4 + 96*(a2 + 2*a5)*a1^3 + 4*(- a2^2 + 44*a5*a2 + 44*a5^2 + 28*a3*a4)*a1^2 \
     - 4*(11*a2^3 + 22*a5*a2^2 + 14*a3*a4*a2 - 28*a4^2)*a1 + 11*a2^4)";

const B2: &str = "1/8*(- 5*a2^6 + 3*a1*(10*a2^3 + 20*a5*a2^2 + 39*a3*a4*a2 - 78*a4^2)*a2^2 + 72*a1^5*(a2 \
     + 2*a5) + 72*a1^4*(a2^2 + 6*a5*a2 + 6*a5^2 + 8*a3*a4) + 4*a1^3*(- 17*a2^3 + \
     120*a5^2*a2 + 45*a3*a4*a2 + 80*a5^3 + 234*a4^2 + 6*(a2^2 + 39*a3*a4)*a5) - \
     3*a1^2*(11*a2^4 + 80*a5*a2^3 + 4*(20*a5^2 + 39*a3*a4)*a2^2 + 12*a4*(13*a3*a5 - \
     10*a4)*a2 + 6*a4^2*(3*a3^2 - 64*a5)))";

const B1: &str = "1/16*(a2^8 - 8*a1*(a2^3 + 2*a5*a2^2 + 9*a3*a4*a2 - 18*a4^2)*a2^4 + 12*a1^5*(a2^3 + \
     48*a5^2*a2 + 78*a3*a4*a2 + 32*a5^3 + 180*a4^2 + 6*(3*a2^2 + 32*a3*a4)*a5) + \
     36*a1^6*((a2 + 2*a5)^2 + 12*a3*a4) + 6*a1^2*(3*a2^6 + 16*a5*a2^5 + 8*(2*a5^2 + \
     9*a3*a4)*a2^4 + 12*a4*(8*a3*a5 - 5*a4)*a2^3 + 6*a4^2*(15*a3^2 - 44*a5)*a2^2 - \
     288*a3*a4^3*a2 + 288*a4^4) + 4*a1^3*(a2^5 - 30*a5*a2^4 - 48*(2*a5^2 + 3*a3*a4)*a2^3 - \
     2*(32*a5^3 + 288*a3*a4*a5 + 153*a4^2)*a2^2 - 18*a4*(27*a4*a3^2 + 16*a5^2*a3 - \
     32*a4*a5)*a2 + 36*a4^2*(- 3*a5*a3^2 + 24*a4*a3 + 28*a5^2)) + a1^4*(- 47*a2^4 - \
     160*a5*a2^3 + 96*(a5^2 - 6*a3*a4)*a2^2 + 128*(4*a5^3 + 9*a3*a4*a5 + 18*a4^2)*a2 + \
     8*(32*a5^4 + 288*a3*a4*a5^2 + 792*a4^2*a5 + 189*a3^2*a4^2)))";

const B0: &str = "3/8*a1*a4*(36*(a3*(a2 + 2*a5) - 6*a4)*a1^6 + 6*(2*a3*a2^2 + 2*(6*a4 + 13*a3*a5)*a2 + \
     32*a3*a5^2 + 45*a3^2*a4 - 48*a4*a5)*a1^5 + (- 47*a3*a2^3 + 186*a4*a2^2 - 36*a3^2*a4*a2 \
     + 128*a3*a5^3 + 1728*a3*a4^2 + 96*(a2*a3 + a4)*a5^2 + 24*((15*a3^2 + 16*a2)*a4 - \
     4*a2^2*a3)*a5)*a1^4 + 4*(a3*a2^4 - (29*a4 + 24*a3*a5)*a2^3 - 3*(15*a4*a3^2 + \
     16*a5^2*a3 + 2*a4*a5)*a2^2 - 4*(18*a4*a5*a3^2 + (4*a5^3 + 63*a4^2)*a3 - 12*a4*a5^2)*a2 \
     + 2*a4*(16*a5^3 + 180*a3*a4*a5 - 27*(a3^3 - 8*a4)*a4))*a1^3 + 6*(3*a3*a2^5 + \
     12*a3*a5*a2^4 + 2*(9*a4*a3^2 + 4*a5^2*a3 - 8*a4*a5)*a2^3 - 4*a4*(- 3*a5*a3^2 + 3*a4*a3 \
     + 4*a5^2)*a2^2 - 6*a4^2*(- 3*a3^3 + 20*a5*a3 + 8*a4)*a2 + 12*a4^3*(16*a5 - \
     3*a3^2))*a1^2 - 2*a2^2*(4*a3*a2^4 - 6*(a4 - a3*a5)*a2^3 + 3*a4*(3*a3^2 - 4*a5)*a2^2 - \
     36*a3*a4^2*a2 + 36*a4^3)*a1 + a2^6*(a2*a3 - 2*a4))";

#[test]
fn curve_coefficients_match_hand_entry() {
    let b = [B0, B1, B2, B3, B4].map(scalar);
    let s = scalar("a6");
    let k = |n: i64| ParamPoly::from_int(n);
    let c4 = &b[4] - &(&k(5) * &s);
    let c3 = &(&b[3] - &(&(&k(4) * &b[4]) * &s)) + &(&k(10) * &s.pow(2));
    let c2 = &(&(&b[2] - &(&(&k(3) * &b[3]) * &s)) + &(&(&k(6) * &b[4]) * &s.pow(2)))
        - &(&k(10) * &s.pow(3));
    let c1 = &(&(&(&b[1] - &(&(&k(2) * &b[2]) * &s)) + &(&(&k(3) * &b[3]) * &s.pow(2)))
        - &(&(&k(4) * &b[4]) * &s.pow(3)))
        + &(&k(5) * &s.pow(4));
    let inner = &(&(&b[3] - &(&b[4] * &s)) + &s.pow(2));
    let c0 = &b[0] - &(&s * &(&b[1] + &(&s * &(&(&s * inner) - &b[2]))));
    let lib = curve_coeffs();
    assert_eq!(lib.b, b);
    assert_eq!(lib.c, [c0, c1, c2, c3, c4]);
}

#[test]
fn spec_examples() {
    assert_eq!(run_args(&["comm", "D", "x"]), (0, "1\n".into(), String::new()));
    let (code, out, _) = run_args(&["parse", "D*x"]);
    assert_eq!((code, out.as_str()), (0, "x*D + 1\n"));
    let (code, _, err) = run_args(&["parse", "x + "]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 4"), "{err}");
    let (code, out, _) = run_args(&["jacobian-rank", "--random", "10", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "max rank 5"), "{out}");
}

#[test]
fn verify_commute_catalog_pair() {
    let (code, out, _) = run_args(&[
        "verify-commute", "--catalog", "l4b,l10b", "--genus", "2", "--mode", "random", "--trials", "20",
        "--seed", "7",
    ]);
    assert_eq!(code, 0, "{out}");
    for line in ["mode: random", "trials: 20", "seed: 7", "verdict: verified"] {
        assert!(out.lines().any(|l| l == line), "missing {line:?} in {out}");
    }
}

#[test]
fn curve_at_point() {
    let (code, out, _) = run_args(&["curve", "--point", "1,2,3,5,7,11"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().take(5).collect();
    assert_eq!(lines, ["c4 = 21", "c3 = 269", "c2 = 19961/4", "c1 = 37710", "c0 = 294475"]);
}

#[test]
fn degenerate_curve() {
    let (code, out, _) = run_args(&["curve", "--point", "1,0,0,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last(), Some("w^2 = z^5 + (6)*z^4 + (9)*z^3"));
}

#[test]
fn symbol_degree_and_automorphism() {
    let (_, l4b, _) = run_args(&["catalog", "show", "l4b"]);
    let l4b = l4b.trim();
    assert_eq!(run_args(&["symbol-degree", l4b]).1, "8\n");
    let (code, out, _) = run_args(&["apply-aut", "--word", "phi1:D^2 + D", "--op", l4b]);
    assert_eq!(code, 0);
    let image = out.lines().last().unwrap();
    assert_eq!(run_args(&["symbol-degree", image]).1, "12\n");
    assert_eq!(run_args(&["symbol-degree", "0"]).1, "-inf\n");
}

#[test]
fn json_through_files() {
    let dir = std::env::temp_dir().join(format!("weylkit-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let op_path = dir.join("l10b.json");
    let (code, doc, _) = run_args(&["--json", "catalog", "show", "l10b"]);
    assert_eq!(code, 0);
    assert!(doc.ends_with("}\n"));
    std::fs::write(&op_path, &doc).unwrap();
    let arg = format!("@{}", op_path.display());
    let (code, again, _) = run_args(&["--json", "parse", &arg]);
    assert_eq!((code, again.as_str()), (0, doc.as_str()));

    let curve_path = dir.join("curve.json");
    let (_, curve, _) = run_args(&["--json", "catalog", "show", "curve"]);
    std::fs::write(&curve_path, &curve).unwrap();
    let path = curve_path.to_str().unwrap();
    let (code, out, _) = run_args(&["verify-curve", "--curve", path, "--trials", "3"]);
    assert_eq!(code, 0, "{out}");
    let bad = curve.replacen("\"num\": \"6\"", "\"num\": \"7\"", 1);
    std::fs::write(&curve_path, bad).unwrap();
    let (code, out, _) = run_args(&["verify-curve", "--curve", path, "--trials", "3"]);
    assert_eq!(code, 1, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    assert_eq!(run_args(&["jacobian-rank"]).0, 2);
    assert_eq!(run_args(&["jacobian-rank", "--point", "1,2,3"]).0, 2);
    assert_eq!(run_args(&["form-constraints", "--point", "0,1,2,3,4,5"]).0, 2);
    assert_eq!(run_args(&["apply-aut", "--word", "phi3:1,1,1,1", "--op", "x"]).0, 2);
    assert_eq!(run_args(&["catalog", "show", "l4b", "--genus", "9"]).0, 2);
    assert_eq!(run_args(&["curve", "--x", "x", "--y", "D"]).0, 1);
    assert_eq!(run_args(&["--help"]).0, 0);
}

#[test]
fn centralizer_exit_codes() {
    let (code, out, _) = run_args(&["centralizer", "--op", "D^2", "--order", "3"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run_args(&["centralizer", "--op", "D^2 + x^2*D", "--order", "3", "--degree-bound", "1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("not found"));
}
