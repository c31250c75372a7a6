//! Command-line front end. Every command produces a JSON report that
//! embeds the tool version, the seed and the budgets, and an exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dissident_core::dissident::{
    dissidence_falsify, quadruple_to_triple, triple_morphism_check, DissidentMap, DissidentTriple,
    Falsification, MatrixQuadruple,
};
use dissident_core::exact::{ExactMatrix, Scalar};
use dissident_core::lifting::{
    solve_lifting, verify_lifting, Lifting, LiftingError, LiftingReport, SolveOptions,
};
use dissident_core::octonion::g2_check;
use dissident_core::qda::{
    algebra_morphism_check, division_check, induced_morphism, make_qda, quadratic_check,
    quadruple_algebra, recover_triple, AlgebraPresentation, DivisionCheck, Recovery,
};
use serde_json::{json, Value};

use crate::builtins;
use crate::format::{self, scalars, Document, FormatError, Object};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NO_LIFTING: i32 = 3;
pub const EXIT_AMBIGUOUS: i32 = 4;
pub const EXIT_ODDNESS: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "dissident",
    version,
    about = "Exact computations with dissident maps and quadratic division algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for every sampled check and random input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample budget for dissidence and division checks.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Sample points for validating a lifting.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=5))]
    pub max_degree: u32,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// One of: cross7, cross3, octonions, quaternions, identity-quadruple,
    /// degree3-example, degree5-example.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Any JSON document (map, triple, quadruple, algebra, matrix).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// A quadruple file, or `random` for a quadruple drawn from the seed.
    #[arg(long)]
    pub quadruple: Option<String>,
    #[arg(long)]
    pub triple: Option<PathBuf>,
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Division,
    Quadratic,
    Dissidence,
    G2,
    Lifting,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree of a dissident map, with its lifting and verification.
    Degree {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compute the lifting and optionally write it as JSON.
    Lift {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Division, quadratic, dissidence, G2 or lifting check.
    Check {
        #[arg(long, value_enum)]
        what: What,
        #[command(flatten)]
        input: InputArgs,
        /// Lifting document for `--what lifting`.
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Build the algebra of a triple or quadruple.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Recover the triple of a quadratic algebra.
    Recover {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build then recover (or recover then build) and compare exactly.
    Roundtrip {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check a linear map between triples or algebras.
    Morphism {
        /// `builtin:NAME`, `random-quadruple[:SEED]` or a file.
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        /// Matrix document.
        #[arg(long)]
        f: PathBuf,
    },
    /// The octonion structure constants.
    TableDump,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<LiftingError> for CliError {
    fn from(e: LiftingError) -> Self {
        let code = match e {
            LiftingError::NoLiftingFound { .. } | LiftingError::NotDissidentAt { .. } => {
                EXIT_NO_LIFTING
            }
            LiftingError::AmbiguousKernel { .. } => EXIT_AMBIGUOUS,
            LiftingError::OddnessViolation(_) => EXIT_ODDNESS,
            _ => EXIT_PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Exit code and report of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

struct Context<'a> {
    global: &'a GlobalArgs,
    command: &'static str,
    input: String,
}

impl Context<'_> {
    fn report(&self, status: &str, result: Value) -> Value {
        json!({
            "tool": "dissident",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input": self.input,
            "seed": self.global.seed,
            "budgets": {
                "trials": self.global.trials,
                "samples": self.global.samples,
                "max_degree": self.global.max_degree,
            },
            "status": status,
            "result": result,
        })
    }

    fn finish(&self, code: i32, status: &str, result: Value) -> Outcome {
        Outcome {
            code,
            report: self.report(status, result),
        }
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            max_degree: self.global.max_degree,
            samples: self.global.samples as usize,
            seed: self.global.seed,
        }
    }
}

fn read(path: &Path) -> Result<Object, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn resolve(input: &InputArgs, seed: u64) -> Result<(String, Object), CliError> {
    if let Some(name) = &input.builtin {
        return Ok((format!("builtin:{name}"), builtins::load(name)?));
    }
    if let Some(q) = &input.quadruple {
        if q == "random" {
            return Ok((
                format!("random-quadruple:{seed}"),
                Object::Quadruple(MatrixQuadruple::random(seed)),
            ));
        }
        let o = read(Path::new(q))?;
        return match o {
            Object::Quadruple(_) => Ok((q.clone(), o)),
            _ => Err(CliError::parse(format!("{q}: not a quadruple"))),
        };
    }
    if let Some(p) = &input.triple {
        let o = read(p)?;
        return match o {
            Object::Triple(_) => Ok((p.display().to_string(), o)),
            _ => Err(CliError::parse(format!("{}: not a triple", p.display()))),
        };
    }
    let p = input
        .input
        .as_ref()
        .or(input.matrix.as_ref())
        .expect("clap enforces one input");
    Ok((p.display().to_string(), read(p)?))
}

fn resolve_source(source: &str, seed: u64) -> Result<Object, CliError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(builtins::load(name)?);
    }
    if let Some(rest) = source.strip_prefix("random-quadruple") {
        let s = match rest.strip_prefix(':') {
            Some(n) => n
                .parse()
                .map_err(|_| CliError::parse(format!("bad seed in {source:?}")))?,
            None if rest.is_empty() => seed,
            None => return Err(CliError::parse(format!("bad input {source:?}"))),
        };
        return Ok(Object::Quadruple(MatrixQuadruple::random(s)));
    }
    read(Path::new(source))
}

fn as_map(o: &Object) -> Result<DissidentMap, CliError> {
    match o {
        Object::Map(m) => Ok(m.clone()),
        Object::Triple(t) => Ok(t.eta().clone()),
        Object::Quadruple(q) => Ok(quadruple_to_triple(q).eta().clone()),
        _ => Err(CliError::parse(
            "input is not a dissident map, triple or quadruple",
        )),
    }
}

fn as_triple(o: &Object) -> Result<Option<DissidentTriple>, CliError> {
    Ok(match o {
        Object::Triple(t) => Some(t.clone()),
        Object::Quadruple(q) => Some(quadruple_to_triple(q)),
        Object::Map(m) => Some(
            DissidentTriple::new(ExactMatrix::zeros(m.n(), m.n()), m.clone())
                .map_err(|e| CliError::parse(e.to_string()))?,
        ),
        _ => None,
    })
}

fn as_algebra(o: &Object) -> Result<AlgebraPresentation, CliError> {
    match o {
        Object::Algebra(a) => Ok(a.clone()),
        Object::Quadruple(q) => Ok(quadruple_algebra(q)),
        _ => match as_triple(o)? {
            Some(t) => Ok(make_qda(&t)),
            None => Err(CliError::parse("input does not describe an algebra")),
        },
    }
}

fn as_matrix(o: &Object) -> Result<ExactMatrix, CliError> {
    match o {
        Object::Matrix(m) => Ok(m.clone()),
        _ => Err(CliError::parse("input is not a matrix")),
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::check(format!("{}: {e}", path.display())))
}

fn falsification_json(f: &Falsification) -> Value {
    match f {
        Falsification::NoCounterexample { trials } => {
            json!({ "outcome": "no_counterexample", "trials": trials })
        }
        Falsification::Counterexample { v, w } => {
            json!({ "outcome": "counterexample", "v": scalars(v), "w": scalars(w) })
        }
    }
}

pub fn lifting_report_json(r: &LiftingReport) -> Value {
    json!({
        "a_homogeneous": r.homogeneous,
        "degree": r.degree,
        "b_identity_symbolic": r.identity_holds,
        "b_nonvanishing_sampled": r.nonvanishing,
        "b_lines_agree_sampled": r.lines_agree,
        "samples": r.samples,
        "c_gcd": r.gcd.as_ref().map(format::poly),
        "c_coprime": r.coprime(),
        "passed": r.passed(),
    })
}

fn lifting_doc(l: &Lifting) -> Value {
    serde_json::to_value(Document::from_object(&Object::Lifting(l.clone()))).expect("serializable")
}

fn run_lifting(ctx: &Context, input: &InputArgs, emit: Option<&Path>) -> Result<Outcome, CliError> {
    let g = ctx.global;
    let (_, obj) = resolve(input, g.seed)?;
    let eta = as_map(&obj)?;
    let falsified = dissidence_falsify(&eta, g.trials as usize, g.seed);
    if !falsified.passed() {
        return Ok(ctx.finish(
            EXIT_NO_LIFTING,
            "not-dissident",
            json!({ "dissidence": falsification_json(&falsified) }),
        ));
    }
    let solution = solve_lifting(&eta, &ctx.options())?;
    let d = solution.degree();
    let verification = verify_lifting(
        &eta,
        &solution.lifting,
        g.samples as usize,
        g.seed.wrapping_add(1),
    )?;
    if let Some(path) = emit {
        write(
            path,
            &format::to_json(&Object::Lifting(solution.lifting.clone())),
        )?;
    }
    let scan: Vec<Value> = solution
        .scan
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "kernel_dimension": s.kernel_dimension,
                "validated_dimension": s.validated_dimension,
            })
        })
        .collect();
    let result = json!({
        "n": eta.n(),
        "degree": d,
        "lifting": lifting_doc(&solution.lifting),
        "scan": scan,
        "verification": lifting_report_json(&verification),
        "dissidence": falsification_json(&falsified),
        "assessment": if verification.passed() { "consistent with dissident" } else { "lifting failed verification" },
        "nonvanishing": "sampled, not certified",
    });
    Ok(if eta.n() == 7 && d % 2 == 0 {
        ctx.finish(EXIT_ODDNESS, "oddness-violation", result)
    } else if !verification.passed() {
        ctx.finish(EXIT_CHECK_FAILED, "fail", result)
    } else {
        ctx.finish(EXIT_OK, "pass", result)
    })
}

fn pass_fail(ctx: &Context, passed: bool, result: Value) -> Outcome {
    if passed {
        ctx.finish(EXIT_OK, "pass", result)
    } else {
        ctx.finish(EXIT_CHECK_FAILED, "fail", result)
    }
}

fn run_check(
    ctx: &Context,
    what: What,
    input: &InputArgs,
    phi: Option<&Path>,
) -> Result<Outcome, CliError> {
    let g = ctx.global;
    let (_, obj) = resolve(input, g.seed)?;
    Ok(match what {
        What::Division => {
            let alg = as_algebra(&obj)?;
            let outcome = division_check(&alg, g.trials as usize, g.seed);
            let witness = match &outcome {
                DivisionCheck::NoCounterexample { .. } => Value::Null,
                DivisionCheck::Counterexample { a } => json!(scalars(a)),
            };
            pass_fail(
                ctx,
                outcome.passed(),
                json!({ "what": "division", "mode": "sampled, not certified", "counterexample": witness }),
            )
        }
        What::Quadratic => {
            let alg = as_algebra(&obj)?;
            let q = quadratic_check(&alg).map_err(|e| CliError::parse(e.to_string()))?;
            pass_fail(ctx, q, json!({ "what": "quadratic", "mode": "exact" }))
        }
        What::Dissidence => {
            let eta = as_map(&obj)?;
            let f = dissidence_falsify(&eta, g.trials as usize, g.seed);
            pass_fail(
                ctx,
                f.passed(),
                json!({ "what": "dissidence", "falsification": falsification_json(&f) }),
            )
        }
        What::G2 => {
            let s = as_matrix(&obj)?;
            let member = g2_check(&s).map_err(|e| CliError::parse(e.to_string()))?;
            pass_fail(ctx, member, json!({ "what": "g2", "mode": "exact" }))
        }
        What::Lifting => {
            let eta = as_map(&obj)?;
            let path =
                phi.ok_or_else(|| CliError::parse("--phi is required for --what lifting"))?;
            let lifting = match read(path)? {
                Object::Lifting(l) => l,
                _ => {
                    return Err(CliError::parse(format!(
                        "{}: not a lifting",
                        path.display()
                    )))
                }
            };
            let r = verify_lifting(&eta, &lifting, g.samples as usize, g.seed)?;
            pass_fail(
                ctx,
                r.passed(),
                json!({ "what": "lifting", "verification": lifting_report_json(&r) }),
            )
        }
    })
}

fn recovery_json(r: &Recovery) -> Value {
    match r {
        Recovery::Triple { triple, basis } => json!({
            "triple": Document::from_object(&Object::Triple(triple.clone())),
            "basis": basis.iter().map(|b| scalars(b)).collect::<Vec<_>>(),
        }),
        Recovery::Certificate(c) => json!({
            "certificate": {
                "orthogonal_basis": c.orthogonal_basis.iter().map(|b| scalars(b)).collect::<Vec<_>>(),
                "squared_norms": scalars(&c.squared_norms),
            }
        }),
    }
}

fn diff_vectors(label: &str, a: &[Scalar], b: &[Scalar]) -> Vec<Value> {
    let mut out: Vec<Value> = a
        .iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .take(20)
        .map(|(i, (x, y))| json!({ "at": format!("{label}[{i}]"), "expected": x.to_string(), "found": y.to_string() }))
        .collect();
    if a.len() != b.len() {
        out.push(json!({ "at": label, "expected": a.len(), "found": b.len() }));
    }
    out
}

fn run_roundtrip(ctx: &Context, input: &InputArgs) -> Result<Outcome, CliError> {
    let (_, obj) = resolve(input, ctx.global.seed)?;
    if let Object::Algebra(alg) = &obj {
        let rec = recover_triple(alg).map_err(|e| CliError::check(e.to_string()))?;
        let Some(t) = rec.triple() else {
            return Ok(ctx.finish(
                EXIT_CHECK_FAILED,
                "fail",
                json!({ "recovery": recovery_json(&rec) }),
            ));
        };
        let rebuilt = make_qda(t);
        let mut diff = diff_vectors("constants", alg.constants(), rebuilt.constants());
        diff.extend(diff_vectors("unity", alg.unity(), rebuilt.unity()));
        return Ok(pass_fail(
            ctx,
            diff.is_empty(),
            json!({ "direction": "algebra-triple-algebra", "diff": diff }),
        ));
    }
    let t = as_triple(&obj)?
        .ok_or_else(|| CliError::parse("roundtrip needs a triple, map, quadruple or algebra"))?;
    let alg = make_qda(&t);
    let rec = recover_triple(&alg).map_err(|e| CliError::check(e.to_string()))?;
    let diff = match rec.triple() {
        Some(r) => {
            let mut d = diff_vectors("xi", &t.xi().to_rows().concat(), &r.xi().to_rows().concat());
            d.extend(diff_vectors("eta", t.eta().tensor(), r.eta().tensor()));
            d
        }
        None => vec![json!({ "at": "basis", "expected": "orthonormal", "found": "certificate" })],
    };
    Ok(pass_fail(
        ctx,
        diff.is_empty(),
        json!({ "direction": "triple-algebra-triple", "diff": diff }),
    ))
}

fn run_morphism(ctx: &Context, src: &str, dst: &str, f: &Path) -> Result<Outcome, CliError> {
    let seed = ctx.global.seed;
    let (a, b) = (resolve_source(src, seed)?, resolve_source(dst, seed)?);
    let f = as_matrix(&read(f)?)?;
    let (sa, sb) = (as_triple(&a)?, as_triple(&b)?);
    if let (Some(s), Some(t)) = (&sa, &sb) {
        if f.rows() == s.n() && f.cols() == s.n() {
            let triple_ok =
                triple_morphism_check(s, t, &f).map_err(|e| CliError::parse(e.to_string()))?;
            let algebra_ok =
                algebra_morphism_check(&make_qda(s), &make_qda(t), &induced_morphism(&f))
                    .map_err(|e| CliError::parse(e.to_string()))?;
            return Ok(pass_fail(
                ctx,
                triple_ok && algebra_ok,
                json!({ "triple_morphism": triple_ok, "algebra_morphism": algebra_ok }),
            ));
        }
    }
    let (x, y) = (as_algebra(&a)?, as_algebra(&b)?);
    let ok = algebra_morphism_check(&x, &y, &f).map_err(|e| CliError::parse(e.to_string()))?;
    Ok(pass_fail(ctx, ok, json!({ "algebra_morphism": ok })))
}

fn input_label(input: &InputArgs, seed: u64) -> String {
    if let Some(b) = &input.builtin {
        format!("builtin:{b}")
    } else if let Some(q) = &input.quadruple {
        if q == "random" {
            format!("random-quadruple:{seed}")
        } else {
            q.clone()
        }
    } else {
        input
            .input
            .as_ref()
            .or(input.triple.as_ref())
            .or(input.matrix.as_ref())
            .map(|p| p.display().to_string())
            .unwrap_or_default()
    }
}

fn dispatch(ctx: &Context, command: &Command) -> Result<Outcome, CliError> {
    let seed = ctx.global.seed;
    match command {
        Command::Degree { input } => run_lifting(ctx, input, None),
        Command::Lift { input, emit } => run_lifting(ctx, input, emit.as_deref()),
        Command::Check { what, input, phi } => run_check(ctx, *what, input, phi.as_deref()),
        Command::Build { input, emit } => {
            let (_, obj) = resolve(input, seed)?;
            let alg = as_algebra(&obj)?;
            let doc = Object::Algebra(alg);
            if let Some(p) = emit {
                write(p, &format::to_json(&doc))?;
            }
            Ok(ctx.finish(
                EXIT_OK,
                "pass",
                json!({ "algebra": Document::from_object(&doc) }),
            ))
        }
        Command::Recover { input, emit } => {
            let (_, obj) = resolve(input, seed)?;
            let rec =
                recover_triple(&as_algebra(&obj)?).map_err(|e| CliError::check(e.to_string()))?;
            if let (Some(p), Some(t)) = (emit, rec.triple()) {
                write(p, &format::to_json(&Object::Triple(t.clone())))?;
            }
            let status = if rec.triple().is_some() {
                "pass"
            } else {
                "certificate"
            };
            Ok(ctx.finish(EXIT_OK, status, recovery_json(&rec)))
        }
        Command::Roundtrip { input } => run_roundtrip(ctx, input),
        Command::Morphism { src, dst, f } => run_morphism(ctx, src, dst, f),
        Command::TableDump => Ok(ctx.finish(EXIT_OK, "pass", builtins::octonion_table())),
    }
}

fn name_of(command: &Command) -> (&'static str, Option<&InputArgs>) {
    match command {
        Command::Degree { input } => ("degree", Some(input)),
        Command::Lift { input, .. } => ("lift", Some(input)),
        Command::Check { input, .. } => ("check", Some(input)),
        Command::Build { input, .. } => ("build", Some(input)),
        Command::Recover { input, .. } => ("recover", Some(input)),
        Command::Roundtrip { input } => ("roundtrip", Some(input)),
        Command::Morphism { .. } => ("morphism", None),
        Command::TableDump => ("table-dump", None),
    }
}

/// Runs a parsed command line. Errors are folded into the report.
pub fn run(cli: &Cli) -> Outcome {
    let (command, input) = name_of(&cli.command);
    let label = match (&cli.command, input) {
        (Command::Morphism { src, dst, .. }, _) => format!("{src} -> {dst}"),
        (_, Some(i)) => input_label(i, cli.global.seed),
        _ => String::new(),
    };
    let ctx = Context {
        global: &cli.global,
        command,
        input: label,
    };
    match dispatch(&ctx, &cli.command) {
        Ok(o) => o,
        Err(e) => ctx.finish(e.code, "error", json!({ "error": e.message })),
    }
}

/// Serializes a report the way the binary prints it.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}
