use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use burau::braid::{Bindings, BraidWord};
use burau::burau::{eval, eval_trunc, gamma_check, gamma_coeff, gamma_report, word_coeff, GammaElement};
use burau::density::{approximate, WitnessLibrary};
use burau::json;
use burau::linalg::LaurentMatrix;
use burau::search::{search_deep, SearchConfig};
use burau::verify::run_suite;
use burau::Depth;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "burau", version, about = "Exact computations with the Burau representation")]
struct Cli {
    /// Bind a name to a word, e.g. `--let X="[A12,A23]"`; may be repeated.
    #[arg(long = "let", value_name = "NAME=WORD", global = true)]
    lets: Vec<String>,
    /// Print readable text instead of JSON lines.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WordInput {
    /// Strand count.
    #[arg(long)]
    n: Option<usize>,
    /// A braid word in the surface syntax.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// A matrix in the JSON encoding (`-` reads stdin).
    #[arg(long, conflicts_with = "word")]
    matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Alpha,
    Delta,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word exactly, or modulo s^N with --truncate.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_name = "N")]
        truncate: Option<usize>,
    },
    /// Test a matrix for membership in Gamma.
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// s-adic depth of a word or matrix.
    Depth {
        #[command(flatten)]
        input: WordInput,
        /// Work modulo s^N instead of exactly (words only).
        #[arg(long, value_name = "N")]
        truncate: Option<usize>,
    },
    /// The leading coefficient in degree k.
    Coeff {
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        k: u32,
    },
    /// The s-adic coefficients below a precision.
    Expand {
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        precision: usize,
    },
    /// Bracket of two graded elements (inline JSON or file paths).
    Bracket { left: String, right: String },
    /// Find a word agreeing with a Gamma element modulo s^(K+1).
    Approximate {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long = "K", alias = "k")]
        depth: u32,
        #[arg(long)]
        n: Option<usize>,
        /// A stored witness library; built on the fly otherwise.
        #[arg(long)]
        library: Option<PathBuf>,
        /// Skip recomputing stored library coefficients.
        #[arg(long)]
        trust: bool,
    },
    /// Search for deep commutator products.
    Search {
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Write hit lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in structural checks.
    VerifyPaper {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
    },
    /// Build a witness library.
    LibraryBuild {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every coefficient of a stored library.
    LibraryVerify {
        #[arg(long)]
        library: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Check { .. } => "check",
            Command::Depth { .. } => "depth",
            Command::Coeff { .. } => "coeff",
            Command::Expand { .. } => "expand",
            Command::Bracket { .. } => "bracket",
            Command::Approximate { .. } => "approximate",
            Command::Search { .. } => "search",
            Command::VerifyPaper { .. } => "verify-paper",
            Command::LibraryBuild { .. } => "library-build",
            Command::LibraryVerify { .. } => "library-verify",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Partial,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    summary: String,
    /// Extra text for `--human`.
    text: Option<String>,
}

impl Outcome {
    fn pass(payload: Value, summary: impl Into<String>) -> Self {
        Self { status: Status::Pass, payload, summary: summary.into(), text: None }
    }

    fn with_text(mut self, text: impl ToString) -> Self {
        self.text = Some(text.to_string());
        self
    }
}

enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Domain(burau::Error),
}

impl From<burau::Error> for Failure {
    fn from(e: burau::Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

struct Ctx {
    bindings: Bindings,
    human: bool,
}

impl Ctx {
    fn parse_word(&self, text: &str, n: usize) -> Result<BraidWord, Failure> {
        self.bindings.parse(text, n).map_err(usage)
    }

    /// Emits one streamed line (hits, check results).
    fn line(&self, value: &Value, text: &str) {
        if self.human {
            println!("{text}");
        } else {
            println!("{value}");
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

/// Parses a file; a report line from another command is unwrapped to its payload.
fn read_json(path: &Path) -> Result<Value, Failure> {
    let v: Value = serde_json::from_str(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(unwrap_report(v))
}

fn unwrap_report(mut v: Value) -> Value {
    if v.get("command").is_some() {
        if let Some(p) = v.get_mut("payload") {
            return p.take();
        }
    }
    v
}

/// Inline JSON when the argument looks like an object, a file path otherwise.
fn json_arg(arg: &str) -> Result<Value, Failure> {
    if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map(unwrap_report).map_err(usage)
    } else {
        read_json(Path::new(arg))
    }
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    std::fs::write(path, text + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))
}

enum Source {
    Word(BraidWord),
    Matrix(LaurentMatrix),
}

impl Source {
    fn load(ctx: &Ctx, input: &WordInput) -> Result<Self, Failure> {
        match (&input.word, &input.matrix) {
            (Some(w), None) => {
                let n = input.n.ok_or_else(|| usage("--word needs --n"))?;
                Ok(Source::Word(ctx.parse_word(w, n)?))
            }
            (None, Some(path)) => {
                let doc = json::gamma_from_json(&read_json(path)?, &ctx.bindings).map_err(usage)?;
                if let Some(n) = input.n {
                    if n != doc.matrix.rows() {
                        return Err(usage(format!("--n {n} does not match a {}x{} matrix", n, doc.matrix.rows())));
                    }
                }
                Ok(Source::Matrix(doc.matrix))
            }
            _ => Err(usage("give exactly one of --word or --matrix")),
        }
    }

    fn exact(&self) -> LaurentMatrix {
        match self {
            Source::Word(w) => eval(w),
            Source::Matrix(m) => m.clone(),
        }
    }

    fn truncated(&self, precision: usize) -> burau::linalg::TruncMatrix {
        match self {
            Source::Word(w) => eval_trunc(w, precision),
            Source::Matrix(m) => m.to_trunc(precision),
        }
    }
}

fn certify(m: &LaurentMatrix) -> Result<GammaElement, Failure> {
    gamma_check(m).map_err(|r| Failure::Domain(burau::Error::NotInGamma(r.to_string())))
}

fn cmd_eval(ctx: &Ctx, n: usize, word: &str, truncate: Option<usize>) -> Result<Outcome, Failure> {
    let w = ctx.parse_word(word, n)?;
    Ok(match truncate {
        None => {
            let m = eval(&w);
            Outcome::pass(json::laurent_matrix_to_json(&m), format!("beta({w}), exact")).with_text(m)
        }
        Some(p) => {
            if p == 0 {
                return Err(usage("--truncate must be positive"));
            }
            let m = eval_trunc(&w, p);
            Outcome::pass(json::trunc_matrix_to_json(&m), format!("beta({w}) modulo s^{p}")).with_text(m)
        }
    })
}

fn cmd_check(ctx: &Ctx, path: &Path) -> Result<Outcome, Failure> {
    let doc = json::gamma_from_json(&read_json(path)?, &ctx.bindings).map_err(usage)?;
    let report = gamma_report(&doc.matrix);
    let failures = report.failures();
    let payload = json!({
        "conditions": report,
        "failures": failures,
        "permutation": report.permutation.as_ref().map(|p| p.images()),
    });
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok(Outcome { status, payload, summary: format!("Gamma membership: {report}"), text: None })
}

fn depth_value(d: Depth) -> Value {
    serde_json::to_value(d).expect("depths serialize")
}

fn cmd_depth(ctx: &Ctx, input: &WordInput, truncate: Option<usize>) -> Result<Outcome, Failure> {
    let source = Source::load(ctx, input)?;
    let d = match truncate {
        Some(p) => source.truncated(p).depth(),
        None => source.exact().depth(),
    };
    let how = truncate.map_or("exact".to_string(), |p| format!("modulo s^{p}"));
    Ok(Outcome::pass(json!({ "depth": depth_value(d), "mode": how }), format!("depth {d} ({how})")))
}

fn cmd_coeff(ctx: &Ctx, input: &WordInput, k: u32) -> Result<Outcome, Failure> {
    let g = match Source::load(ctx, input)? {
        Source::Word(w) => word_coeff(&w, k)?,
        Source::Matrix(m) => gamma_coeff(&certify(&m)?, k)?,
    };
    let text = g.matrix().to_string();
    Ok(Outcome::pass(json::graded_to_json(&g), format!("coefficient in degree {k}")).with_text(text))
}

fn cmd_expand(ctx: &Ctx, input: &WordInput, precision: usize) -> Result<Outcome, Failure> {
    if precision == 0 {
        return Err(usage("--precision must be positive"));
    }
    let t = Source::load(ctx, input)?.truncated(precision);
    let coefficients: Vec<Value> = t.coefficients().iter().map(json::int_matrix_to_json).collect();
    let text = t
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| format!("(A)_({k}) =\n{c}"))
        .collect::<Vec<_>>()
        .join("\n");
    let payload = json!({ "precision": precision, "depth": depth_value(t.depth()), "coefficients": coefficients });
    Ok(Outcome::pass(payload, format!("{precision} coefficients, depth {}", t.depth())).with_text(text))
}

fn cmd_bracket(left: &str, right: &str) -> Result<Outcome, Failure> {
    let a = json::graded_from_json(&json_arg(left)?).map_err(usage)?;
    let b = json::graded_from_json(&json_arg(right)?).map_err(usage)?;
    let c = a.bracket(&b)?;
    let text = c.matrix().to_string();
    Ok(Outcome::pass(json::graded_to_json(&c), format!("bracket in degree {}", c.degree())).with_text(text))
}

fn load_library(path: &Path, trust: bool) -> Result<WitnessLibrary, Failure> {
    let v = read_json(path)?;
    json::library_from_json(&v, trust).map_err(|e| match e {
        burau::Error::Json(_) | burau::Error::Parse { .. } | burau::Error::UnknownName(_) => usage(e),
        other => Failure::Domain(other),
    })
}

fn cmd_approximate(
    ctx: &Ctx,
    path: &Path,
    depth: u32,
    n: Option<usize>,
    library: Option<&Path>,
    trust: bool,
) -> Result<Outcome, Failure> {
    let doc = json::gamma_from_json(&read_json(path)?, &ctx.bindings).map_err(usage)?;
    if let Some(n) = n {
        if n != doc.matrix.rows() {
            return Err(usage(format!("--n {n} does not match a {0}x{0} matrix", doc.matrix.rows())));
        }
    }
    let gamma = certify(&doc.matrix)?;
    let lib = match library {
        Some(p) => load_library(p, trust)?,
        None => WitnessLibrary::build(gamma.n(), depth.max(1))?,
    };
    let r = approximate(&lib, &gamma, depth)?;
    let status = if r.achieved_depth.is_at_least(depth + 1) { Status::Pass } else { Status::Fail };
    let summary = format!(
        "residual depth {} (needed {}), {} letters{}",
        r.achieved_depth,
        depth + 1,
        r.word.literal_length(),
        if r.exact_checked { ", confirmed exactly" } else { "" }
    );
    let text = format!("word: {}", r.word);
    Ok(Outcome { status, payload: json::approximation_to_json(&r), summary, text: Some(text) })
}

fn cmd_search(
    ctx: &Ctx,
    config: Option<&Path>,
    preset: Option<Preset>,
    n: usize,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let mut cfg = match (config, preset) {
        (Some(p), None) => json::search_config_from_json(&read_json(p)?, &ctx.bindings).map_err(usage)?,
        (None, Some(Preset::Alpha)) => SearchConfig::alpha_reconstruction(n).map_err(usage)?,
        (None, Some(Preset::Delta)) => SearchConfig::delta_reconstruction(n).map_err(usage)?,
        _ => return Err(usage("give exactly one of --config or --preset")),
    };
    if let Some(b) = budget {
        cfg.budget = b;
    }
    cfg.validate().map_err(usage)?;
    let report = search_deep(&cfg)?;
    let lines: Vec<Value> = report.hits.iter().map(json::hit_to_json).collect();
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            for l in &lines {
                writeln!(f, "{l}").map_err(usage)?;
            }
        }
        None => {
            for (l, h) in lines.iter().zip(&report.hits) {
                ctx.line(l, &format!("hit #{}: depth {} {}\n{}", h.index, h.depth, h.word, h.coefficient.matrix()));
            }
        }
    }
    let status = if !report.hits.is_empty() {
        Status::Pass
    } else if report.budget_exhausted {
        Status::Partial
    } else {
        Status::Fail
    };
    let summary = format!(
        "{} hits at depth >= {} from {} candidates{}",
        report.hits.len(),
        cfg.target_depth,
        report.evaluated,
        if report.budget_exhausted { " (budget exhausted)" } else { "" }
    );
    let payload = json!({
        "config": json::search_config_to_json(&cfg),
        "hits": report.hits.len(),
        "evaluated": report.evaluated,
        "budget_exhausted": report.budget_exhausted,
    });
    Ok(Outcome { status, payload, summary, text: None })
}

fn cmd_verify(ctx: &Ctx, n: usize, max_degree: u32) -> Result<Outcome, Failure> {
    let report = run_suite(n, max_degree, |c| {
        let v = json!({ "check": c.name, "status": if c.passed { "pass" } else { "fail" }, "ms": c.millis, "detail": c.detail });
        let text = format!("{:<4} {:<24} {:>7} ms  {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.millis, c.detail);
        ctx.line(&v, &text);
    })
    .map_err(usage)?;
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    let status = if failed == 0 { Status::Pass } else { Status::Fail };
    let summary = format!("{} of {} checks passed", report.checks.len() - failed, report.checks.len());
    Ok(Outcome { status, payload: serde_json::to_value(&report).map_err(usage)?, summary, text: None })
}

fn cmd_library_build(n: usize, max_degree: u32, out: Option<&Path>) -> Result<Outcome, Failure> {
    let lib = WitnessLibrary::build(n, max_degree)?;
    let doc = json::library_to_json(&lib);
    let counts: Vec<usize> = (1..=max_degree).map(|k| lib.witnesses(k).len()).collect();
    let summary = format!("library for n = {n} up to degree {max_degree}, witnesses per degree {counts:?}");
    let payload = match out {
        Some(path) => {
            write_json(path, &doc)?;
            json!({ "written": path.display().to_string(), "witnesses": counts })
        }
        None => doc,
    };
    Ok(Outcome::pass(payload, summary))
}

fn cmd_library_verify(path: &Path) -> Result<Outcome, Failure> {
    let lib = load_library(path, false)?;
    lib.verify()?;
    let summary = format!("library for n = {} verified up to degree {}", lib.n(), lib.max_degree());
    Ok(Outcome::pass(json!({ "n": lib.n(), "max_degree": lib.max_degree() }), summary))
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Eval { n, word, truncate } => cmd_eval(ctx, *n, word, *truncate),
        Command::Check { matrix } => cmd_check(ctx, matrix),
        Command::Depth { input, truncate } => cmd_depth(ctx, input, *truncate),
        Command::Coeff { input, k } => cmd_coeff(ctx, input, *k),
        Command::Expand { input, precision } => cmd_expand(ctx, input, *precision),
        Command::Bracket { left, right } => cmd_bracket(left, right),
        Command::Approximate { gamma, depth, n, library, trust } => {
            cmd_approximate(ctx, gamma, *depth, *n, library.as_deref(), *trust)
        }
        Command::Search { config, preset, n, budget, out } => {
            cmd_search(ctx, config.as_deref(), *preset, *n, *budget, out.as_deref())
        }
        Command::VerifyPaper { n, max_degree } => cmd_verify(ctx, *n, *max_degree),
        Command::LibraryBuild { n, max_degree, out } => cmd_library_build(*n, *max_degree, out.as_deref()),
        Command::LibraryVerify { library } => cmd_library_verify(library),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut bindings = Bindings::builtin();
    for assignment in &cli.lets {
        if let Err(e) = bindings.insert_assignment(assignment) {
            eprintln!("error: --let {assignment}: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { bindings, human: cli.human };
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = match dispatch(&ctx, &cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(e)) => Outcome {
            status: Status::Fail,
            payload: json!({ "error": e.to_string() }),
            summary: e.to_string(),
            text: None,
        },
    };
    let wall_time_ms = start.elapsed().as_millis() as u64;
    if cli.human {
        if let Some(text) = &outcome.text {
            println!("{text}");
        }
        println!("{}: {} ({} ms)", outcome.status.as_str(), outcome.summary, wall_time_ms);
    } else {
        let report = json!({
            "command": name,
            "status": outcome.status.as_str(),
            "payload": outcome.payload,
            "summary": outcome.summary,
            "wall_time_ms": wall_time_ms,
        });
        println!("{report}");
    }
    match outcome.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail | Status::Partial => ExitCode::from(1),
    }
}
