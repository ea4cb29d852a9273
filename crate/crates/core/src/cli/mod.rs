//! Batch command-line front end. Every subcommand writes a report to
//! standard output in text or JSON and exits with 0 when all of its
//! consistency checks pass, 1 when one fails and 2 on invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diffeo::{
    birkhoff_diffeo, character_of, effective_coupling_toy, Coord, DiffeoBirkhoff, DiffeoLoop, FaaDiBruno, FormalDiffeo,
};
use crate::error::{Error, Result};
use crate::graphs::{toy_graph_character, Catalog, GraphInstance};
use crate::hopf::{birkhoff, bphz, convolve, coproduct_generator, inverse, toy_character, Character, HopfInstance};
use crate::laurent::{Context, LaurentSeries, Rational};
use crate::resolvents::{random_pentagon, star_check, MonicCubic, MonicQuartic, StarReport};
use crate::rg::rg_report;
use crate::trees::{RootedTree, TreeInstance};

/// Residual bound for recovered roots at unit scale.
pub const ROOT_TOL: f64 = 1e-9;
/// Deviation bound for the pentagram check.
pub const STAR_TOL: f64 = 1e-9;
/// Perturbation size of random pentagrams.
pub const STAR_JITTER: f64 = 0.2;

#[derive(Parser, Debug)]
#[command(
    name = "renorm",
    version,
    about = "Hopf-algebraic renormalization in exact arithmetic",
    long_about = "Coproducts, Birkhoff and BPHZ decompositions, renormalization-group reports, \
                  formal diffeomorphisms and classical resolvents. Output is deterministic for a \
                  fixed set of arguments. Exit status: 0 when every check passes, 1 when a check \
                  fails, 2 on invalid input."
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Truncation order N of the ε-expansions.
    #[arg(long, global = true, default_value_t = 10)]
    pub order: i32,
    /// Degree bound: vertices for trees, loops for graphs, coefficients for diffeomorphisms.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Hopf algebra to work in; the coproduct command infers it from its input when omitted.
    #[arg(long, global = true, value_enum)]
    pub instance: Option<Instance>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for random sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory of graph files replacing the built-in catalog.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Coproduct of a tree (`B[o o]`), a graph name (`nested2`, `bubble{s1}`) or a coordinate (`a3`).
    Coproduct { input: String },
    /// Birkhoff decomposition of the toy character.
    Birkhoff,
    /// BPHZ recursion of the toy character, compared with its Birkhoff decomposition.
    Bphz,
    /// Residue, beta function, scattering limit and the counterterms rebuilt from beta.
    RgReport,
    /// Opposed Birkhoff decomposition of a loop of diffeomorphisms.
    DiffeoBirkhoff {
        /// Coefficient table, one `index  series` pair per line; the toy effective coupling when omitted.
        file: Option<PathBuf>,
    },
    /// Roots of a monic cubic or quartic with rational coefficients.
    #[command(subcommand)]
    Resolvent(ResolventKind),
    /// Concyclicity of the five circle intersections of a pentagram.
    StarCheck {
        /// Number of random configurations instead of explicit points.
        #[arg(long, conflicts_with = "coords")]
        random: Option<usize>,
        /// Ten coordinates x0 y0 … x4 y4.
        #[arg(allow_negative_numbers = true, num_args = 10)]
        coords: Vec<f64>,
    },
    /// Print the manual page in roff format.
    Man,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ResolventKind {
    /// X³ + bX² + cX + d.
    Cubic {
        #[arg(allow_negative_numbers = true, num_args = 3, value_names = ["B", "C", "D"])]
        coeffs: Vec<String>,
    },
    /// X⁴ + aX³ + bX² + cX + d, solved through its resolvent cubic.
    Quartic {
        #[arg(allow_negative_numbers = true, num_args = 4, value_names = ["A", "B", "C", "D"])]
        coeffs: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Instance {
    Trees,
    Graphs,
    Diffeo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// The resolved settings of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub instance: Instance,
    pub order: i32,
    pub degree: usize,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 || self.order < self.degree as i32 {
            return Err(Error::Domain(format!(
                "need order ≥ degree ≥ 1, got order {} and degree {}",
                self.order, self.degree
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// One failed check: what was compared and both values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub subject: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

/// The JSON document every subcommand emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    pub data: Value,
}

/// The input error record printed when a run cannot start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputError {
    pub command: String,
    pub error: String,
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Body {
    summary: String,
    text: String,
    data: Value,
    failures: Vec<Failure>,
}

impl Body {
    fn new(summary: impl Into<String>, text: String, data: Value, failures: Vec<Failure>) -> Self {
        Body {
            summary: summary.into(),
            text,
            data,
            failures,
        }
    }
}

fn failure(subject: impl ToString, check: &str, expected: impl ToString, actual: impl ToString) -> Failure {
    Failure {
        subject: subject.to_string(),
        check: check.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Errors that reflect bad input rather than a failed check.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::UnknownGraph(_)
            | Error::InvalidGraph(_)
            | Error::Io(_)
            | Error::UnknownParameter(_)
            | Error::Domain(_)
            | Error::Degenerate(_)
            | Error::Index { .. }
    )
}

/// Parses the arguments and runs the selected subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    execute(&cli)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Coproduct { .. } => "coproduct",
        Command::Birkhoff => "birkhoff",
        Command::Bphz => "bphz",
        Command::RgReport => "rg-report",
        Command::DiffeoBirkhoff { .. } => "diffeo-birkhoff",
        Command::Resolvent(ResolventKind::Cubic { .. }) => "resolvent cubic",
        Command::Resolvent(ResolventKind::Quartic { .. }) => "resolvent quartic",
        Command::StarCheck { .. } => "star-check",
        Command::Man => "man",
    }
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    if let Command::Man = cli.command {
        return match man_page() {
            Ok(stdout) => Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            },
        };
    }
    let result = config(cli).and_then(|cfg| {
        cfg.validate()?;
        dispatch(cli, &cfg)
    });
    match result {
        Ok(body) => {
            let status = if body.failures.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            };
            let code = if status == Status::Pass { 0 } else { 1 };
            let stdout = match cli.options.format {
                Format::Text => {
                    let mut s = body.text;
                    for f in &body.failures {
                        let _ = writeln!(
                            s,
                            "FAIL {} [{}]: expected {}, got {}",
                            f.subject, f.check, f.expected, f.actual
                        );
                    }
                    let _ = writeln!(s, "{}", body.summary);
                    s
                }
                Format::Json => {
                    let report = Report {
                        command: name.into(),
                        status,
                        summary: body.summary,
                        failures: body.failures,
                        data: body.data,
                    };
                    json_line(&report)
                }
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = if is_input_error(&e) { 2 } else { 1 };
            let record = InputError {
                command: name.into(),
                error: e.to_string(),
            };
            let stdout = match cli.options.format {
                Format::Json => json_line(&record),
                Format::Text => String::new(),
            };
            Outcome {
                code,
                stdout,
                stderr: format!("renorm {name}: {e}\n"),
            }
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

/// The manual page, generated from the parser definition.
pub fn man_page() -> Result<String> {
    let mut buf = Vec::new();
    clap_mangen::Man::new(Cli::command()).render(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

fn default_degree(instance: Instance) -> usize {
    match instance {
        Instance::Trees | Instance::Diffeo => 4,
        Instance::Graphs => 3,
    }
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let o = &cli.options;
    let instance = match (&cli.command, o.instance) {
        (_, Some(i)) => i,
        (Command::Coproduct { input }, None) => infer_instance(input),
        (_, None) => Instance::Trees,
    };
    Ok(RunConfig {
        subcommand: command_name(&cli.command).into(),
        instance,
        order: o.order,
        degree: o.degree.unwrap_or_else(|| default_degree(instance)),
        format: o.format,
        seed: o.seed,
    })
}

fn infer_instance(input: &str) -> Instance {
    if RootedTree::parse(input).is_ok() {
        Instance::Trees
    } else if parse_coord(input).is_some() {
        Instance::Diffeo
    } else {
        Instance::Graphs
    }
}

fn parse_coord(s: &str) -> Option<Coord> {
    s.strip_prefix('a')?.parse().ok().filter(|&n| n >= 1).map(Coord)
}

fn graph_instance(catalog: Option<&Path>) -> Result<GraphInstance> {
    match catalog {
        Some(dir) => GraphInstance::from_catalog(&Catalog::load_dir(dir)?),
        None => Ok(GraphInstance::builtin()),
    }
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Body> {
    let catalog = cli.options.catalog.as_deref();
    match &cli.command {
        Command::Coproduct { input } => cmd_coproduct(cfg, catalog, input),
        Command::Birkhoff => with_instance(cfg, catalog, Check::Birkhoff),
        Command::Bphz => with_instance(cfg, catalog, Check::Bphz),
        Command::RgReport => with_instance(cfg, catalog, Check::Rg),
        Command::DiffeoBirkhoff { file } => cmd_diffeo_birkhoff(cfg, file.as_deref()),
        Command::Resolvent(ResolventKind::Cubic { coeffs }) => cmd_cubic(coeffs),
        Command::Resolvent(ResolventKind::Quartic { coeffs }) => cmd_quartic(coeffs),
        Command::StarCheck { random, coords } => cmd_star_check(cfg, *random, coords),
        Command::Man => unreachable!("handled before configuration"),
    }
}

fn cmd_coproduct(cfg: &RunConfig, catalog: Option<&Path>, input: &str) -> Result<Body> {
    match cfg.instance {
        Instance::Trees => coproduct_body(&TreeInstance, &RootedTree::parse(input)?, input),
        Instance::Graphs => {
            let inst = graph_instance(catalog)?;
            let g = inst.generator(input)?;
            coproduct_body(&inst, &g, input)
        }
        Instance::Diffeo => {
            let c = parse_coord(input).ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected a<n>, got `{input}`"),
            })?;
            coproduct_body(&FaaDiBruno, &c, input)
        }
    }
}

fn coproduct_body<H: HopfInstance>(inst: &H, g: &H::Gen, input: &str) -> Result<Body> {
    let d = coproduct_generator(inst, g);
    let terms: Vec<Value> = d
        .iter()
        .map(|((a, b), c)| json!({ "left": a.to_string(), "right": b.to_string(), "coefficient": c.to_string() }))
        .collect();
    let rendered = d.to_string();
    let data = json!({ "input": input, "generator": g.to_string(), "coproduct": rendered, "terms": terms });
    Ok(Body::new(
        format!("Δ({g}) has {} terms", d.len()),
        format!("Δ({g}) = {rendered}\n"),
        data,
        vec![],
    ))
}

#[derive(Clone, Copy)]
enum Check {
    Birkhoff,
    Bphz,
    Rg,
}

fn with_instance(cfg: &RunConfig, catalog: Option<&Path>, check: Check) -> Result<Body> {
    let ctx = Context::standard();
    match cfg.instance {
        Instance::Trees => {
            let phi = toy_character(&ctx, cfg.degree, cfg.order)?;
            run_check(&TreeInstance, &phi, cfg, check)
        }
        Instance::Graphs => {
            let inst = graph_instance(catalog)?;
            let phi = toy_graph_character(&inst, &ctx, cfg.degree, cfg.order)?;
            run_check(&inst, &phi, cfg, check)
        }
        Instance::Diffeo => {
            let lp = toy_loop(&ctx, cfg)?;
            run_check(&FaaDiBruno, &character_of(&lp)?, cfg, check)
        }
    }
}

fn toy_loop(ctx: &Context, cfg: &RunConfig) -> Result<DiffeoLoop> {
    let phi = toy_character(ctx, cfg.degree, cfg.order)?;
    effective_coupling_toy(&phi, cfg.degree)
}

fn run_check<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>, cfg: &RunConfig, check: Check) -> Result<Body> {
    match check {
        Check::Birkhoff => birkhoff_body(inst, phi),
        Check::Bphz => bphz_body(inst, phi),
        Check::Rg => rg_body(inst, phi, cfg.degree),
    }
}

fn row_text(out: &mut String, g: &impl ToString, fields: &[(&str, String)]) {
    let _ = writeln!(out, "{}", g.to_string());
    for (k, v) in fields {
        let _ = writeln!(out, "  {k:<3} = {v}");
    }
}

fn birkhoff_body<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>) -> Result<Body> {
    let pair = birkhoff(inst, phi)?;
    let rebuilt = convolve(inst, &inverse(inst, &pair.negative)?, &pair.positive)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (g, v) in phi.values() {
        let (minus, plus) = (pair.negative.value(g)?, pair.positive.value(g)?);
        if minus != &minus.pole_part() {
            failures.push(failure(g, "φ₋ is a pure pole part", minus.pole_part(), minus));
        }
        if !plus.pole_part().is_zero() {
            failures.push(failure(g, "φ₊ is regular", "0", plus.pole_part()));
        }
        let back = rebuilt.value(g)?;
        if !back.agrees_with(v) {
            failures.push(failure(g, "φ₋⁻¹ ⋆ φ₊ = φ", v, back));
        }
        let fields = [
            ("φ", v.to_string()),
            ("φ₋", minus.to_string()),
            ("φ₊", plus.to_string()),
        ];
        row_text(&mut text, g, &fields);
        rows.push(json!({ "generator": g.to_string(), "degree": inst.degree(g), "phi": fields[0].1, "minus": fields[1].1, "plus": fields[2].1 }));
    }
    let ok = failures.is_empty();
    let summary = format!("φ = φ₋⁻¹ ⋆ φ₊ on all {} generators: {}", rows.len(), pass_fail(ok));
    Ok(Body::new(summary, text, json!({ "rows": rows }), failures))
}

fn bphz_body<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>) -> Result<Body> {
    let pair = birkhoff(inst, phi)?;
    let triple = bphz(inst, phi)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (g, v) in phi.values() {
        let (minus, plus) = (pair.negative.value(g)?, pair.positive.value(g)?);
        let c = triple.counterterm.value(g)?;
        let bar = triple.prepared.value(g)?;
        let r = triple.renormalized.value(g)?;
        if c != minus {
            failures.push(failure(g, "C = φ₋", minus, c));
        }
        if r != plus {
            failures.push(failure(g, "R = φ₊", plus, r));
        }
        let fields = [
            ("φ", v.to_string()),
            ("φ₋", minus.to_string()),
            ("φ₊", plus.to_string()),
            ("C", c.to_string()),
            ("R̄", bar.to_string()),
            ("R", r.to_string()),
        ];
        row_text(&mut text, g, &fields);
        rows.push(json!({
            "generator": g.to_string(),
            "degree": inst.degree(g),
            "phi": fields[0].1,
            "minus": fields[1].1,
            "plus": fields[2].1,
            "counterterm": fields[3].1,
            "prepared": fields[4].1,
            "renormalized": fields[5].1,
        }));
    }
    let ok = failures.is_empty();
    let summary = format!("C = φ₋ and R = φ₊ on all generators: {}", pass_fail(ok));
    Ok(Body::new(summary, text, json!({ "rows": rows }), failures))
}

fn rg_body<H: HopfInstance>(inst: &H, phi: &Character<H::Gen>, degree: usize) -> Result<Body> {
    let report = rg_report(inst, phi, degree)?;
    let rows = report.rows(inst);
    let mut text = String::new();
    let mut failures = Vec::new();
    if report.l_independence_witness != 0 {
        failures.push(failure(
            "φ₋",
            "L-degree of the counterterms",
            0,
            report.l_independence_witness,
        ));
    }
    for r in &rows {
        let fields = [
            ("Res", r.residue.clone()),
            ("β", r.beta.clone()),
            ("φ₋", r.minus_birkhoff.clone()),
            ("β→φ₋", r.minus_from_beta.clone()),
            ("F∞", r.ft.clone()),
            ("ok", r.matches.to_string()),
        ];
        let _ = writeln!(text, "{} (degree {})", r.generator, r.degree);
        for (k, v) in fields {
            let _ = writeln!(text, "  {k:<5} = {v}");
        }
        if !r.matches {
            failures.push(failure(
                &r.generator,
                "φ₋ rebuilt from β",
                &r.minus_birkhoff,
                &r.minus_from_beta,
            ));
        }
    }
    let ok = failures.is_empty();
    let summary = format!(
        "counterterms rebuilt from β on all {} generators: {}",
        rows.len(),
        pass_fail(ok)
    );
    let data = json!({ "lDegree": report.l_independence_witness, "rows": serde_json::to_value(&rows)? });
    Ok(Body::new(summary, text, data, failures))
}

/// Reads `index  series` lines; `#` starts a comment, missing indices are zero.
pub fn parse_coefficient_table(ctx: &Context, text: &str) -> Result<DiffeoLoop> {
    let mut entries: Vec<(usize, LaurentSeries)> = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        let start = offset;
        offset += line.len() + 1;
        if body.is_empty() {
            continue;
        }
        let (idx, rest) = body.split_once(char::is_whitespace).ok_or_else(|| Error::Parse {
            pos: start,
            msg: "expected `index series`".into(),
        })?;
        let n: usize = idx.parse().ok().filter(|&n| n >= 1).ok_or_else(|| Error::Parse {
            pos: start,
            msg: format!("bad index `{idx}`"),
        })?;
        if entries.iter().any(|(m, _)| *m == n) {
            return Err(Error::Parse {
                pos: start,
                msg: format!("index {n} given twice"),
            });
        }
        let series = LaurentSeries::parse(ctx, rest.trim()).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: start + pos, msg },
            other => other,
        })?;
        entries.push((n, series));
    }
    let k = entries.iter().map(|(n, _)| *n).max().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "empty table".into(),
    })?;
    let one = LaurentSeries::one(ctx);
    let mut coeffs = vec![LaurentSeries::zero(ctx, None); k];
    for (n, s) in entries {
        coeffs[n - 1] = s;
    }
    Ok(FormalDiffeo::new(&one, coeffs))
}

fn cmd_diffeo_birkhoff(cfg: &RunConfig, file: Option<&Path>) -> Result<Body> {
    let ctx = Context::standard();
    let lp = match file {
        Some(path) => parse_coefficient_table(&ctx, &std::fs::read_to_string(path)?)?,
        None => toy_loop(&ctx, cfg)?,
    };
    let d = birkhoff_diffeo(&lp)?;
    diffeo_body(&lp, &d)
}

fn diffeo_body(lp: &DiffeoLoop, d: &DiffeoBirkhoff) -> Result<Body> {
    let mut failures = Vec::new();
    let back = d.reconstruct()?;
    let renormalized = d.renormalized();
    let mut text = String::new();
    let mut rows = Vec::new();
    for n in 1..=lp.order() {
        let (a, neg, pos) = (lp.coeff(n), d.negative.coeff(n), d.positive.coeff(n));
        if !back.coeff(n).agrees_with(a) {
            failures.push(failure(
                format!("a{n}"),
                "positive ∘ negative⁻¹ = loop",
                a,
                back.coeff(n),
            ));
        }
        if neg != &neg.pole_part() {
            failures.push(failure(
                format!("a{n}"),
                "negative is a pure pole part",
                neg.pole_part(),
                neg,
            ));
        }
        if !pos.pole_part().is_zero() {
            failures.push(failure(format!("a{n}"), "positive is regular", "0", pos.pole_part()));
        }
        let at_zero = match &renormalized {
            Ok(r) => r.coeff(n).to_string(),
            Err(e) => e.to_string(),
        };
        let fields = [
            ("loop", a.to_string()),
            ("neg", neg.to_string()),
            ("pos", pos.to_string()),
            ("ε=0", at_zero),
        ];
        let _ = writeln!(text, "a{n}");
        for (k, v) in &fields {
            let _ = writeln!(text, "  {k:<4} = {v}");
        }
        rows.push(json!({
            "index": n,
            "loop": fields[0].1,
            "negative": fields[1].1,
            "positive": fields[2].1,
            "renormalized": fields[3].1,
        }));
    }
    let ok = failures.is_empty();
    let summary = format!(
        "loop = positive ∘ negative⁻¹ through g^{}: {}",
        2 * lp.order() + 1,
        pass_fail(ok)
    );
    Ok(Body::new(
        summary,
        text,
        json!({ "order": lp.order(), "rows": rows }),
        failures,
    ))
}

fn parse_rationals(coeffs: &[String]) -> Result<Vec<Rational>> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Rational::from_str(s.trim()).map_err(|_| Error::Parse {
                pos: i,
                msg: format!("`{s}` is not a rational number"),
            })
        })
        .collect()
}

/// Text rendering; imaginary parts at rounding level are dropped.
fn show_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-12 * (1.0 + z.re.abs()) {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

fn roots_body(poly: String, roots: &[Complex64], residuals: &[f64], extra: Option<(String, Vec<Complex64>)>) -> Body {
    let max = residuals.iter().copied().fold(0.0, f64::max);
    let mut failures = Vec::new();
    for (z, r) in roots.iter().zip(residuals) {
        if !(*r < ROOT_TOL) {
            failures.push(failure(
                show_complex(*z),
                "relative residual",
                format!("< {ROOT_TOL}"),
                r,
            ));
        }
    }
    let mut text = format!("{poly}\n");
    for (z, r) in roots.iter().zip(residuals) {
        let _ = writeln!(text, "  root {}  (residual {r:e})", show_complex(*z));
    }
    let pts = |zs: &[Complex64]| zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
    let mut data = json!({ "polynomial": poly, "roots": pts(roots), "residuals": residuals, "maxResidual": max });
    if let Some((res, res_roots)) = extra {
        let _ = writeln!(text, "resolvent cubic {res}");
        for z in &res_roots {
            let _ = writeln!(text, "  root {}", show_complex(*z));
        }
        data["resolventCubic"] = json!({ "polynomial": res, "roots": pts(&res_roots) });
    }
    let summary = format!(
        "max residual {max:e} < {ROOT_TOL:e}: {}",
        pass_fail(failures.is_empty())
    );
    Body::new(summary, text, data, failures)
}

fn show_poly(var: &str, coeffs: &[Rational]) -> String {
    let deg = coeffs.len();
    let mut s = format!("{var}^{deg}");
    for (i, c) in coeffs.iter().enumerate() {
        let k = deg - 1 - i;
        if c == &Rational::from_integer(0.into()) {
            continue;
        }
        let (sign, abs) = if c < &Rational::from_integer(0.into()) {
            ("-", -c.clone())
        } else {
            ("+", c.clone())
        };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let _ = write!(s, " {sign} {abs}{}{mono}", if k > 0 { "*" } else { "" });
    }
    s
}

fn cmd_cubic(coeffs: &[String]) -> Result<Body> {
    let v = parse_rationals(coeffs)?;
    let cubic = MonicCubic {
        b: v[0].clone(),
        c: v[1].clone(),
        d: v[2].clone(),
    };
    let roots = cubic.roots();
    let residuals: Vec<f64> = roots.iter().map(|&z| cubic.residual(z)).collect();
    Ok(roots_body(show_poly("X", &v), &roots, &residuals, None))
}

fn cmd_quartic(coeffs: &[String]) -> Result<Body> {
    let v = parse_rationals(coeffs)?;
    let quartic = MonicQuartic {
        a: v[0].clone(),
        b: v[1].clone(),
        c: v[2].clone(),
        d: v[3].clone(),
    };
    let roots = quartic.roots();
    let residuals: Vec<f64> = roots.iter().map(|&z| quartic.residual(z)).collect();
    let res = quartic.depressed().0.resolvent_cubic();
    let res_text = show_poly("X", &[res.b.clone(), res.c.clone(), res.d.clone()]);
    Ok(roots_body(
        show_poly("X", &v),
        &roots,
        &residuals,
        Some((res_text, res.roots().to_vec())),
    ))
}

fn star_text(r: &StarReport) -> String {
    let mut s = String::new();
    for (i, p) in r.points.iter().enumerate() {
        let _ = writeln!(s, "  M{i} = ({}, {})", p.re, p.im);
    }
    s
}

fn cmd_star_check(cfg: &RunConfig, random: Option<usize>, coords: &[f64]) -> Result<Body> {
    match random {
        Some(n) => {
            if n == 0 {
                return Err(Error::Domain("--random needs at least one configuration".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut worst: Option<StarReport> = None;
            for _ in 0..n {
                let r = star_check(random_pentagon(&mut rng, STAR_JITTER))?;
                if worst.as_ref().is_none_or(|w| r.max_deviation > w.max_deviation) {
                    worst = Some(r);
                }
            }
            let worst = worst.expect("at least one configuration");
            let mut failures = Vec::new();
            if !(worst.max_deviation < STAR_TOL) {
                failures.push(failure(
                    "worst configuration",
                    "max deviation",
                    format!("< {STAR_TOL}"),
                    worst.max_deviation,
                ));
            }
            let mut data = serde_json::to_value(&worst)?;
            data["configurations"] = json!(n);
            data["seed"] = json!(cfg.seed);
            let text = format!(
                "worst of {n} configurations (seed {}):\n{}",
                cfg.seed,
                star_text(&worst)
            );
            let summary = format!(
                "max deviation {:e} < {STAR_TOL:e}: {}",
                worst.max_deviation,
                pass_fail(failures.is_empty())
            );
            Ok(Body::new(summary, text, data, failures))
        }
        None => {
            if coords.len() != 10 {
                return Err(Error::Domain("star-check needs ten coordinates or --random N".into()));
            }
            let mut pts = [Complex64::new(0.0, 0.0); 5];
            for (i, p) in pts.iter_mut().enumerate() {
                *p = crate::resolvents::point(coords[2 * i], coords[2 * i + 1])?;
            }
            let r = star_check(pts)?;
            let mut failures = Vec::new();
            if !(r.max_deviation < STAR_TOL) {
                failures.push(failure(
                    "configuration",
                    "max deviation",
                    format!("< {STAR_TOL}"),
                    r.max_deviation,
                ));
            }
            let summary = format!(
                "max deviation {:e} < {STAR_TOL:e}: {}",
                r.max_deviation,
                pass_fail(failures.is_empty())
            );
            Ok(Body::new(summary, star_text(&r), serde_json::to_value(&r)?, failures))
        }
    }
}
