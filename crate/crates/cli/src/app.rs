//! Argument parsing and command dispatch.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use weylkit::aut::{affine_form_constraints, format_word, Automorphism};
use weylkit::catalog::{self, Genus};
use weylkit::centralizer::{find_commuting_operators, random_alpha, DegreePolicy};
use weylkit::exactalg::parse_rational;
use weylkit::spectral::{
    derive_curve, dominance_scan, jacobian_matrix, verify_curve, CurveMode, ScanReport,
    SpectralCurve,
};
use weylkit::weyl::verify::verify_commute;
use weylkit::{budget, Mode, ParamPoint, Rational, Verdict, WeylOp};

use crate::json::{self, DecodeError};
use crate::parse::{format_canonical, parse_expr, ExprError};
use crate::words::{parse_word, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "weylkit", version, about = "Exact computations in the first Weyl algebra")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Verification mode.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Random)]
    pub mode: ModeArg,
    /// Random trials per verification.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print operators and curves as JSON documents.
    #[arg(long, global = true)]
    pub json: bool,
    /// Abort symbolic expansions past this many monomials.
    #[arg(long, global = true)]
    pub term_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogName {
    P,
    L4b,
    L10b,
    Mironov,
    L4sharp,
}

/// Operator arguments are expressions, or `@file` for a JSON document.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of an expression.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Commutator [A, B] = AB - BA.
    Comm {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Product AB.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Power A^n.
    Pow {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        n: u32,
    },
    /// Degree of the total symbol.
    SymbolDegree {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Formal adjoint.
    Adjoint {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Named operators and the curve coefficients.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check that two operators commute.
    VerifyCommute {
        /// Two catalog names instead of expressions.
        #[arg(long, value_delimiter = ',')]
        catalog: Vec<CatalogName>,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
        #[command(flatten)]
        family: FamilyOpts,
    },
    /// Derive the quintic relation between two commuting operators.
    Curve {
        #[command(flatten)]
        pair: PairOpts,
        /// Specialize at v1,...,v6 before deriving.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Check a curve against a pair of operators.
    VerifyCurve {
        #[command(flatten)]
        pair: PairOpts,
        /// Curve document; defaults to the catalog curve.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Rank of the Jacobian of the curve coefficients.
    JacobianRank {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
        point: Option<String>,
        /// Scan this many seeded points.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Apply a generator word to an operator.
    ApplyAut {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Affine maps keeping L4b inside its family.
    FormConstraints {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
    /// Commuting operators of a given order.
    Centralizer {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "catalog")]
        op: Option<String>,
        #[arg(long, required_unless_present = "op")]
        catalog: Option<CatalogName>,
        #[command(flatten)]
        family: FamilyOpts,
        #[arg(long)]
        order: usize,
        /// One bound for every coefficient, or one per power of D from D^0 up.
        #[arg(long, value_delimiter = ',')]
        degree_bound: Vec<usize>,
        /// Parameter point; drawn from --seed when omitted.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show {
        name: String,
        #[command(flatten)]
        family: FamilyOpts,
        /// Specialize at v1,...,v6.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FamilyOpts {
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
    /// Mironov: a0,a1,a2,a3. L4sharp: r,a,b.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PairOpts {
    /// First operator; defaults to L4b.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Second operator; defaults to L10b.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Core(#[from] weylkit::Error),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
}

fn core_exit(e: &weylkit::Error) -> i32 {
    match e {
        e if e.is_resource() => EXIT_RESOURCE,
        weylkit::Error::NotCommuting | weylkit::Error::NoRelation(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Expr(ExprError::Eval(e)) => core_exit(e),
            CliError::Output(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs one command. `args` starts with the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.global.term_cap {
        Some(cap) => budget::with_term_cap(cap, || dispatch(&cli, out)),
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_operator(arg: &str) -> CliResult<WeylOp> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Read { path: path.into(), source })?;
            Ok(json::operator_from_json(&text)?)
        }
        None => Ok(parse_expr(arg)?),
    }
}

fn parse_rationals(text: &str, what: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad rational {s:?} in {what}"))))
        .collect()
}

pub fn parse_point(text: &str) -> CliResult<ParamPoint> {
    let v = parse_rationals(text, "point")?;
    let n = v.len();
    v.try_into().map_err(|_| CliError::Usage(format!("a point needs 6 coordinates, got {n}")))
}

fn genus(g: u32) -> CliResult<Genus> {
    Ok(Genus::new(g)?)
}

pub fn catalog_operator(name: CatalogName, family: &FamilyOpts) -> CliResult<WeylOp> {
    let g = genus(family.genus)?;
    let coeffs = |n: usize, what: &str| -> CliResult<Vec<Rational>> {
        let text = family
            .coeffs
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("{what} needs --coeffs")))?;
        let v = parse_rationals(text, "--coeffs")?;
        if v.len() != n {
            return Err(CliError::Usage(format!("{what} needs {n} values in --coeffs, got {}", v.len())));
        }
        Ok(v)
    };
    Ok(match name {
        CatalogName::P => catalog::make_p(),
        CatalogName::L4b => catalog::make_l4b(g),
        CatalogName::L10b => catalog::make_l10b()?,
        CatalogName::Mironov => {
            let a: [Rational; 4] = coeffs(4, "mironov")?.try_into().expect("length checked");
            catalog::make_mironov_l4(g, &a)
        }
        CatalogName::L4sharp => {
            let v = coeffs(3, "l4sharp")?;
            let r = weylkit::exactalg::rational::is_integer(&v[0])
                .then(|| i64::try_from(v[0].numer()).ok())
                .flatten()
                .ok_or_else(|| CliError::Usage("l4sharp needs an integer r".into()))?;
            catalog::make_l4sharp(g, r, &v[1], &v[2])?
        }
    })
}

fn mode(opts: &GlobalOpts) -> Mode {
    match opts.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Random => Mode::Random { trials: opts.trials, seed: opts.seed },
    }
}

fn write_op(out: &mut dyn Write, op: &WeylOp, as_json: bool) -> io::Result<()> {
    if as_json {
        out.write_all(json::operator_to_json(op).as_bytes())
    } else {
        writeln!(out, "{}", format_canonical(op))
    }
}

fn write_verdict(out: &mut dyn Write, v: &Verdict, seed: u64) -> CliResult<i32> {
    writeln!(out, "mode: {}", v.mode.name())?;
    writeln!(out, "trials: {}", v.trials())?;
    writeln!(out, "seed: {seed}")?;
    if let Mode::Random { .. } = v.mode {
        writeln!(out, "degree bound: {}", v.degree_bound)?;
        writeln!(out, "failure bound: {:.3e}", v.failure_bound())?;
    }
    if v.passed {
        writeln!(out, "verdict: verified")?;
        Ok(EXIT_OK)
    } else {
        match v.failing_trial {
            Some(t) => writeln!(out, "verdict: failed at trial {t}")?,
            None => writeln!(out, "verdict: failed")?,
        }
        Ok(EXIT_FAILED)
    }
}

fn pair(p: &PairOpts) -> CliResult<(WeylOp, WeylOp)> {
    let x = match &p.x {
        Some(e) => read_operator(e)?,
        None => catalog::make_l4b(genus(p.genus)?),
    };
    let y = match &p.y {
        Some(e) => read_operator(e)?,
        None => catalog::make_l10b()?,
    };
    Ok((x, y))
}

fn write_scan(out: &mut dyn Write, label: &str, r: &ScanReport) -> io::Result<()> {
    for p in &r.points {
        let pt: Vec<String> = p.point.iter().map(ToString::to_string).collect();
        let tag = if p.retry { " (retry)" } else { "" };
        writeln!(out, "{label} point {} rank {}{tag}", pt.join(","), p.rank)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { expr } => write_op(out, &read_operator(expr)?, g.json)?,
        Command::Comm { a, b } => {
            let r = read_operator(a)?.commutator(&read_operator(b)?)?;
            write_op(out, &r, g.json)?;
        }
        Command::Mul { a, b } => {
            let r = read_operator(a)?.mul(&read_operator(b)?)?;
            write_op(out, &r, g.json)?;
        }
        Command::Pow { expr, n } => write_op(out, &read_operator(expr)?.pow(*n)?, g.json)?,
        Command::SymbolDegree { expr } => match read_operator(expr)?.total_symbol().degree() {
            Some(d) => writeln!(out, "{d}")?,
            None => writeln!(out, "-inf")?,
        },
        Command::Adjoint { expr } => write_op(out, &read_operator(expr)?.adjoint(), g.json)?,
        Command::Catalog { action } => return catalog_cmd(action, g, out),
        Command::VerifyCommute { catalog, exprs, family } => {
            let (a, b) = match (catalog.as_slice(), exprs.as_slice()) {
                ([x, y], []) => (catalog_operator(*x, family)?, catalog_operator(*y, family)?),
                ([], [x, y]) => (read_operator(x)?, read_operator(y)?),
                _ => {
                    return Err(CliError::Usage(
                        "verify-commute takes two operators or --catalog NAME,NAME".into(),
                    ))
                }
            };
            return write_verdict(out, &verify_commute(&a, &b, mode(g))?, g.seed);
        }
        Command::Curve { pair: p, point } => {
            let (x, y) = pair(p)?;
            let cm = match point {
                Some(s) => CurveMode::RationalPoint(parse_point(s)?),
                None => CurveMode::Symbolic,
            };
            let c = derive_curve(&x, &y, &cm)?;
            if g.json {
                out.write_all(json::curve_to_json(&c).as_bytes())?;
            } else {
                for (i, ci) in c.c.iter().enumerate().rev() {
                    writeln!(out, "c{i} = {ci}")?;
                }
                writeln!(out, "{c}")?;
            }
        }
        Command::VerifyCurve { pair: p, curve } => {
            let (x, y) = pair(p)?;
            let c = match curve {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                        path: path.display().to_string(),
                        source,
                    })?;
                    json::curve_from_json(&text)?
                }
                None => SpectralCurve::catalog(),
            };
            return write_verdict(out, &verify_curve(&x, &y, &c, mode(g))?, g.seed);
        }
        Command::JacobianRank { point, random } => match (point, random) {
            (Some(s), _) => {
                let p = parse_point(s)?;
                let j = jacobian_matrix(&SpectralCurve::catalog());
                writeln!(out, "rank {}", j.rank_at_point(&p))?;
            }
            (None, Some(n)) => {
                let r = dominance_scan(*n, g.seed)?;
                writeln!(out, "seed: {}", r.seed)?;
                write_scan(out, "free", &r.unrestricted)?;
                write_scan(out, "a1=0", &r.restricted)?;
                writeln!(out, "retries: {}", r.unrestricted.retries_used)?;
                writeln!(out, "restricted max rank {}", r.restricted.max_rank)?;
                writeln!(out, "max rank {}", r.unrestricted.max_rank)?;
            }
            (None, None) => return Err(CliError::Usage("jacobian-rank needs --point or --random".into())),
        },
        Command::ApplyAut { word, op } => {
            let w = parse_word(word)?;
            let phi = Automorphism::<6>::from_word(&w)?;
            let r = phi.apply(&read_operator(op)?)?;
            if !g.json {
                writeln!(out, "word: {}", format_word(&w))?;
                writeln!(out, "{phi}")?;
            }
            write_op(out, &r, g.json)?;
        }
        Command::FormConstraints { point, genus: gn } => {
            let r = affine_form_constraints(&parse_point(point)?, genus(*gn)?)?;
            writeln!(out, "{r}")?;
        }
        Command::Centralizer { op, catalog, family, order, degree_bound, alpha } => {
            let l = match (op, catalog) {
                (Some(e), _) => read_operator(e)?,
                (None, Some(name)) => catalog_operator(*name, family)?,
                (None, None) => unreachable!("clap requires --op or --catalog"),
            };
            let policy = match degree_bound.as_slice() {
                [] => DegreePolicy::Default,
                [d] => DegreePolicy::Uniform(*d),
                v => DegreePolicy::Explicit(v.to_vec()),
            };
            let point = match alpha {
                Some(s) => Some(parse_point(s)?),
                None if l.is_specialized() => None,
                None => Some(random_alpha(g.seed)),
            };
            let r = find_commuting_operators(&l, *order, &policy, point.as_ref())?;
            if g.json {
                match r.witnesses.first() {
                    Some(w) => write_op(out, w, true)?,
                    None => writeln!(out, "{r}")?,
                }
            } else {
                write!(out, "{r}")?;
            }
            return Ok(if r.found() { EXIT_OK } else { EXIT_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn catalog_cmd(action: &CatalogAction, g: &GlobalOpts, out: &mut dyn Write) -> CliResult<i32> {
    match action {
        CatalogAction::List => {
            writeln!(out, "p        (a1*x^2 + 1)*D^2 + (a2*x + a3)*D + a4*x + a5")?;
            writeln!(out, "l4b      P^2 + g(g+1)*a1*(a1*x^4 + ...), --genus")?;
            writeln!(out, "l10b     order-10 partner of l4b at genus 2")?;
            writeln!(out, "mironov  (D^2 + a3*x^3 + a2*x^2 + a1*x + a0)^2 + g(g+1)*a3*x, --coeffs a0,a1,a2,a3")?;
            writeln!(out, "l4sharp  Chebyshev family, --coeffs r,a,b")?;
            writeln!(out, "curve    coefficients c0..c4 of w^2 = z^5 + c4*z^4 + ... + c0")?;
        }
        CatalogAction::Show { name, family, params } => {
            let point = params.as_deref().map(parse_point).transpose()?;
            if name == "curve" {
                let mut c = SpectralCurve::catalog();
                if let Some(p) = &point {
                    c = c.specialize(p);
                }
                if g.json {
                    out.write_all(json::curve_to_json(&c).as_bytes())?;
                } else {
                    for (i, ci) in c.c.iter().enumerate().rev() {
                        writeln!(out, "c{i} = {ci}")?;
                    }
                }
                return Ok(EXIT_OK);
            }
            let which = CatalogName::from_str(name, true).map_err(CliError::Usage)?;
            let mut op = catalog_operator(which, family)?;
            if let Some(p) = &point {
                op = op.specialize(p);
            }
            write_op(out, &op, g.json)?;
        }
    }
    Ok(EXIT_OK)
}
