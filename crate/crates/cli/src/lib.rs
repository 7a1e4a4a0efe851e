//! Command-line front end for the `virasoro` library.
//!
//! [`run`] takes the argument vector and returns the exit status together
//! with what would be written to stdout and stderr, so the whole command
//! surface can be exercised from tests without spawning processes.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use virasoro::algebra::{bracket, parse_lie_element, parse_uea_element, parse_words, Generator, NormalOrderer, DEFAULT_WORD_CAP};
use virasoro::analysis::{
    build_paper_example, check_axioms, classify, default_bound_threshold, detect_trivial_factor, find_intertwiner,
    is_simple_window, primitivity, vector_to_json, Verdict,
};
use virasoro::modules::{
    build_from_spec, realization_to_json, ModuleRealization, ModuleSpec, VectorInModule, VermaSign, WeightWindow,
    DEFAULT_GEN_BOUND,
};
use virasoro::{Error, Scalar};

/// Caps the number of terms in any intermediate PBW expansion.
pub const TERM_LIMIT_ENV: &str = "VIRASORO_MAX_PBW_TERMS";
pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "virasoro",
    version,
    about = "Exact computations with weight modules over the Virasoro algebra",
    after_help = "Module specs:\n  A:a=<s>,b=<s>   Aexc:a=<s>   Bexc:a=<s>\n  verma:lambda=<s>,h=<s>,depth=<n>   antiverma:lambda=<s>,h=<s>,depth=<n>\n  dual(<spec>)   sum(<spec>;<spec>;...)\nScalars are exact elements of Q(i), e.g. 3, -1/2, 1/2+3/4i.\n\nExit status: 0 success, 1 usage or domain error, 2 verification failure.\nEnvironment: VIRASORO_MAX_PBW_TERMS caps PBW expansions (default 1000000)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Interior window of weight indices, `<kmin>..<kmax>` [default: -10..10,
    /// or exactly the levels of a lone Verma module]
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_range)]
    pub window: Option<(i64, i64)>,
    /// Extra weights realized on each side of the interior window
    #[arg(long, global = true, default_value_t = 5)]
    pub margin: i64,
    /// Largest |i| used by check-axioms
    #[arg(long = "gen-range", global = true, default_value_t = 3)]
    pub gen_range: i64,
    /// Verma depth used when a spec does not give one
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the output to this file
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lie bracket of two elements of Vir, e.g. `bracket L2 L-2`
    Bracket { x: String, y: String },
    /// PBW normal form of an element of U(Vir), e.g. `normal-order "L2 L-2"`
    NormalOrder { expr: String },
    /// Apply an element of U(Vir) to a weight vector
    Act {
        #[arg(long)]
        module: String,
        /// Weight index of the vector
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Basis vector index (ignored if --coords is given)
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
        /// Element to apply, e.g. "L1 L-1 + 2*L0"
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// The full realization (dims, action matrices, truncation flags) as JSON
    Realize {
        #[arg(long)]
        module: String,
    },
    /// Weight-space dimensions on the interior window
    Dims {
        #[arg(long)]
        module: String,
    },
    /// Verify the bracket relations on the interior window (exit 2 on failure)
    CheckAxioms {
        #[arg(long)]
        module: String,
    },
    /// Primitivity of a weight vector
    Primitive {
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
    },
    /// Simplicity on the window (weight spaces of dimension at most 1)
    Simple {
        #[arg(long)]
        module: String,
    },
    /// A module map between two modules on the same window
    Intertwiner {
        /// Source and target specs, in that order
        #[arg(long, num_args = 1, required = true)]
        module: Vec<String>,
    },
    /// Four-way classification of the window
    Classify {
        #[arg(long)]
        module: String,
        /// Largest multiplicity accepted as uniformly bounded [default: 4 x max dimension]
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The indecomposable submodule of M(0) + M*(0) + A(a) generated by v0 = v'0 + v''0 + x0
    PaperExample {
        /// The parameter of A(a); must not be an integer
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        a: String,
    },
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text.split_once("..").ok_or_else(|| format!("expected <kmin>..<kmax>, got {text:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound in {text:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound in {text:?}"))?;
    if lo > hi {
        return Err(format!("empty window {text:?}"));
    }
    Ok((lo, hi))
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: EXIT_DOMAIN, message: e.to_string() }
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure { status: EXIT_DOMAIN, message: message.into() }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: text }
            } else {
                Outcome { status, stdout: text, stderr: String::new() }
            };
        }
    };
    let (status, stdout, stderr) = match execute(&cli) {
        Ok((status, out)) => (status, out, String::new()),
        Err(f) => (f.status, String::new(), format!("error: {}\n", f.message)),
    };
    if let Some(path) = &cli.common.out {
        if let Err(e) = std::fs::write(path, &stdout) {
            return Outcome {
                status: EXIT_DOMAIN,
                stdout,
                stderr: format!("{stderr}error: cannot write --out {}: {e}\n", path.display()),
            };
        }
    }
    Outcome { status, stdout, stderr }
}

fn term_limit() -> Result<usize, Failure> {
    match std::env::var(TERM_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| domain(format!("{TERM_LIMIT_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_TERM_LIMIT),
    }
}

fn fallback_window(common: &CommonArgs) -> Result<WeightWindow, Failure> {
    let (lo, hi) = common.window.unwrap_or((-10, 10));
    Ok(WeightWindow::integral(lo, hi, common.margin)?.with_gen_bound(gen_bound(common))?)
}

fn gen_bound(common: &CommonArgs) -> i64 {
    DEFAULT_GEN_BOUND.max(2 * common.gen_range)
}

fn spec_window(spec: &ModuleSpec, common: &CommonArgs) -> Result<WeightWindow, Failure> {
    let fallback = fallback_window(common)?;
    if common.window.is_some() {
        return Ok(fallback.with_offset(spec.offset())?);
    }
    Ok(spec.natural_window(&fallback, common.depth)?)
}

fn build(text: &str, common: &CommonArgs) -> Result<(ModuleSpec, ModuleRealization), Failure> {
    let spec = ModuleSpec::parse(text).map_err(|e| domain(format!("--module: {e}")))?;
    let window = spec_window(&spec, common)?;
    let m = build_from_spec(&spec, &window, common.depth)?;
    Ok((spec, m))
}

fn parse_vector(m: &ModuleRealization, k: i64, index: usize, coords: Option<&str>) -> Result<VectorInModule, Failure> {
    let v = match coords {
        Some(text) => {
            let values = text
                .split(',')
                .map(|c| c.trim().parse::<Scalar>().map_err(|_| domain(format!("--coords: bad scalar {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            VectorInModule::new(k, values)
        }
        None => {
            if index >= m.dim(k) {
                return Err(domain(format!(
                    "--index {index} is out of range: the weight space at {k} has dimension {}",
                    m.dim(k)
                )));
            }
            m.basis_vector(k, index)
        }
    };
    m.check_vector(&v)?;
    Ok(v)
}

fn describe_vector(m: &ModuleRealization, v: &VectorInModule) -> String {
    let coords: Vec<String> = v.coords.iter().map(|c| c.to_string()).collect();
    let mut out = format!("weight index {}: [{}]", v.k, coords.join(", "));
    if let Some(names) = m.labels().and_then(|l| l.get(&v.k)) {
        let terms: Vec<String> = v
            .coords
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}*({n})") })
            .collect();
        let combo = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = write!(out, "  = {combo}");
    }
    out
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => {
            if text.ends_with('\n') {
                text
            } else {
                text + "\n"
            }
        }
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
    }
}

/// Whether dims read most naturally from the top weight downwards.
fn descending(spec: &ModuleSpec) -> bool {
    match spec {
        ModuleSpec::Verma { sign, .. } => *sign == VermaSign::Highest,
        ModuleSpec::Dual(inner) => descending(inner),
        _ => false,
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let common = &cli.common;
    let format = common.format;
    if common.gen_range < 2 {
        return Err(domain(format!("--gen-range must be at least 2, got {}", common.gen_range)));
    }
    if common.depth == 0 {
        return Err(domain("--depth must be positive"));
    }
    if common.margin < 0 {
        return Err(domain(format!("--margin must be non-negative, got {}", common.margin)));
    }
    match &cli.command {
        Command::Bracket { x, y } => {
            let x = parse_lie_element(x)?;
            let y = parse_lie_element(y)?;
            let z = bracket(&x, &y);
            let text = z.to_string();
            Ok((EXIT_OK, render(format, text.clone(), json!({"result": text}))))
        }
        Command::NormalOrder { expr } => {
            let mut engine = NormalOrderer::with_term_limit(term_limit()?);
            let u = parse_uea_element(expr, DEFAULT_WORD_CAP, &mut engine)?;
            let text = u.to_string();
            Ok((EXIT_OK, render(format, text.clone(), json!({"result": text, "terms": u.len()}))))
        }
        Command::Act { module, k, index, coords, element } => {
            let (_, m) = build(module, common)?;
            let v = parse_vector(&m, *k, *index, coords.as_deref())?;
            let image = apply_element(&m, element, &v)?;
            let text = describe_vector(&m, &image);
            Ok((EXIT_OK, render(format, text, vector_to_json(&image))))
        }
        Command::Realize { module } => {
            let (_, m) = build(module, common)?;
            let value = realization_to_json(&m);
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            Ok((EXIT_OK, render(format, text, value)))
        }
        Command::Dims { module } => {
            let (spec, m) = build(module, common)?;
            let mut ks: Vec<i64> = m.window().interior().collect();
            if descending(&spec) {
                ks.reverse();
            }
            let dims: Vec<String> = ks.iter().map(|&k| m.dim(k).to_string()).collect();
            let map: serde_json::Map<String, Value> = ks.iter().map(|&k| (k.to_string(), json!(m.dim(k)))).collect();
            let value = json!({
                "dims": map,
                "order": ks,
                "incomplete": m.incomplete().iter().filter(|k| m.window().in_interior(**k)).collect::<Vec<_>>(),
            });
            Ok((EXIT_OK, render(format, dims.join(" "), value)))
        }
        Command::CheckAxioms { module } => {
            let (_, m) = build(module, common)?;
            let report = check_axioms(&m, common.gen_range)?;
            let mut text = format!(
                "{} identities checked, {} skipped (not realized), {} violations",
                report.checked,
                report.skipped,
                report.violations.len()
            );
            for v in &report.violations {
                let _ = write!(text, "\n  [L{}, L{}] fails at weight index {}", v.i, v.j, v.k);
            }
            let status = if report.is_ok() { EXIT_OK } else { EXIT_VERIFICATION };
            Ok((status, render(format, text, report.to_json())))
        }
        Command::Primitive { module, k, index, coords } => {
            let (_, m) = build(module, common)?;
            let v = parse_vector(&m, *k, *index, coords.as_deref())?;
            let p = primitivity(&m, &v)?;
            let text = format!(
                "strongly primitive: {}\nprimitive: {}\nstrongly anti-primitive: {}\nanti-primitive: {}\nwindow limited: {}",
                p.strongly_primitive, p.primitive, p.strongly_anti_primitive, p.anti_primitive, p.window_limited
            );
            Ok((EXIT_OK, render(format, text, p.to_json())))
        }
        Command::Simple { module } => {
            let (_, m) = build(module, common)?;
            let simple = is_simple_window(&m)?;
            let text = if simple { "simple on the window" } else { "not simple: some weight vector generates a proper submodule" };
            Ok((EXIT_OK, render(format, text.to_string(), json!({"simple": simple, "windowLimited": true}))))
        }
        Command::Intertwiner { module } => {
            if module.len() != 2 {
                return Err(domain(format!("intertwiner needs exactly two --module flags, got {}", module.len())));
            }
            let (_, source) = build(&module[0], common)?;
            let (_, target) = build(&module[1], common)?;
            match find_intertwiner(&source, &target)? {
                None => Ok((EXIT_OK, render(format, "only the zero map".into(), json!({"map": null})))),
                Some(t) => {
                    let mut text = format!(
                        "{} map of total rank {}",
                        if t.invertible { "invertible" } else { "non-invertible" },
                        t.total_rank()
                    );
                    for (k, b) in &t.per_weight {
                        let entries: Vec<String> = b.entries().iter().map(|s| s.to_string()).collect();
                        let _ = write!(text, "\n  T_{k} = [{}]", entries.join(", "));
                    }
                    Ok((EXIT_OK, render(format, text, json!({"map": t.to_json()}))))
                }
            }
        }
        Command::Classify { module, bound } => {
            let (_, m) = build(module, common)?;
            let threshold = bound.unwrap_or_else(|| default_bound_threshold(&m));
            let report = classify(&m, threshold)?;
            let mut text = format!("verdict: {}", report.verdict);
            for other in &report.also_consistent_with {
                let _ = write!(text, "\nalso consistent with: {other}");
            }
            let profile: Vec<String> = report.dim_profile.iter().map(|(k, d)| format!("{k}:{d}")).collect();
            let _ = write!(text, "\ndims: {}\nwindow limited: {}", profile.join(" "), report.window_limited);
            Ok((EXIT_OK, render(format, text, report.to_json())))
        }
        Command::PaperExample { a } => paper_example(a, common),
    }
}

/// Applies each term of `element` to `v` factor by factor.
fn apply_element(m: &ModuleRealization, element: &str, v: &VectorInModule) -> Result<VectorInModule, Failure> {
    let terms = parse_words(element, DEFAULT_WORD_CAP)?;
    let mut result: Option<VectorInModule> = None;
    for (coeff, word) in terms {
        let mut w = v.clone();
        let mut scale = coeff;
        for g in word.iter().rev() {
            match g {
                Generator::L(i) => w = m.act(*i, &w)?,
                Generator::Central => scale = &scale * m.central_scalar(),
            }
        }
        let scaled: Vec<Scalar> = w.coords.iter().map(|c| c * &scale).collect();
        result = Some(match result {
            None => VectorInModule::new(w.k, scaled),
            Some(acc) if acc.k == w.k => {
                VectorInModule::new(acc.k, acc.coords.iter().zip(&scaled).map(|(a, b)| a + b).collect())
            }
            Some(_) => return Err(domain("the element must be homogeneous: its terms change the weight differently")),
        });
    }
    result.ok_or_else(|| domain("empty element"))
}

fn paper_example(a_text: &str, common: &CommonArgs) -> Result<(i32, String), Failure> {
    let a: Scalar = a_text.parse().map_err(|_| domain(format!("--a: not a scalar in Q(i): {a_text:?}")))?;
    if a.is_integer() {
        return Err(domain(format!(
            "--a {a} is an integer; the example needs A(a) with a not in Z, where A(a) has no trivial subquotient of its own"
        )));
    }
    let window = fallback_window(common)?;
    let ex = build_paper_example(&a, &window, common.depth)?;
    let v = &ex.module;
    let dims: Vec<(i64, usize)> = v.window().interior().map(|k| (k, v.dim(k))).collect();
    let prim = primitivity(v, &ex.v0)?;
    let witness = detect_trivial_factor(v)?;
    let report = classify(v, default_bound_threshold(v))?;

    let dims_text: Vec<String> = dims.iter().map(|(k, d)| format!("{k}:{d}")).collect();
    let verdict_ok = matches!(&report.verdict, Verdict::ContainsTrivialFactor { witness } if witness.k == 0);
    let summary = format!(
        "V is the submodule of M(0) + M*(0) + A({a}) generated by v0 = v'0 + v''0 + x0, realized on weight \
indices {}..{} (margin {}) with Verma depth {}. Its weight space at 0 has dimension {}. \
v0 is {}primitive and {}anti-primitive, but {}strongly primitive and {}strongly anti-primitive, \
since L1 v0 and L-1 v0 are nonzero. {} The classification verdict is {}, so the trivial module V(0) \
is the top composition factor of V, while the Verma part contributes factors of Category O, the \
anti-Verma part factors of Category O-, and A({a}) a uniformly bounded factor.",
        window.k_min,
        window.k_max,
        window.margin,
        common.depth,
        v.dim(0),
        if prim.primitive { "" } else { "not " },
        if prim.anti_primitive { "" } else { "not " },
        if prim.strongly_primitive { "" } else { "not " },
        if prim.strongly_anti_primitive { "" } else { "not " },
        match &witness {
            Some(w) => format!("A trivial factor is witnessed at weight index {}.", w.k),
            None => "No trivial factor was found on this window.".to_string(),
        },
        report.verdict,
    );
    let profile: serde_json::Map<String, Value> = dims.iter().map(|(k, d)| (k.to_string(), json!(d))).collect();
    let bundle = json!({
        "a": a.to_string(),
        "window": {"kMin": window.k_min, "kMax": window.k_max, "margin": window.margin},
        "depth": common.depth,
        "dims": profile,
        "v0": vector_to_json(&ex.v0),
        "primitivity": prim.to_json(),
        "trivialFactor": witness.as_ref().map(vector_to_json),
        "classification": report.to_json(),
        "summary": summary,
    });
    let text = format!(
        "{summary}\n\ndims: {}\n\n{}",
        dims_text.join(" "),
        serde_json::to_string_pretty(&bundle).expect("JSON values serialize")
    );
    let status = if verdict_ok { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((status, render(common.format, text, bundle)))
}
