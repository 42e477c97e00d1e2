//! Command-line front end: parses polynomials and flags, dispatches to the solver and
//! verifiers, and renders human tables or JSON.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symbez::fixedpoints::{verify_catalog_by_stabilizer, CatalogReport};
use symbez::group::Space;
use symbez::poly::{parse_poly, BasisMode, MultiPoly};
use symbez::solver::{solve_p2, solve_p3, IntersectionReport, SolveError, SolveOptions};
use symbez::verify::{
    orbit_type_independence, p2_cells, random_instance, verify_p2_table, verify_p3, Verdict,
    VerificationRun, VerifyError, P2_PRODUCT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "symbez", version, about = "Orbit types of intersections of symmetric hypersurfaces")]
#[command(disable_help_flag = true, disable_help_subcommand = true)]
struct Cli {
    #[arg(long, action = ArgAction::Help, global = true, help = "Print help")]
    help: Option<bool>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a symmetric system and print its points, orbit type and real count.
    Solve(SolveArgs),
    /// Print only the orbit type of a symmetric system.
    OrbitType(SolveArgs),
    /// Check the P2 orbit-type table on random instances for every cell up to --max-product.
    VerifyTable(TableArgs),
    /// Check the P3 necessary conditions on random instances.
    VerifyP3(P3Args),
    /// Check that the orbit type does not depend on the random instance.
    Independence(IndependenceArgs),
    /// Verify the fixed-point catalog by brute-force stabilizers.
    FixedPoints(SpaceArgs),
    /// Print a random symmetric instance.
    RandomInstance(RandomArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    P2,
    P3,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::P2 => Space::P2,
            SpaceArg::P3 => Space::P3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Monomial,
    Elementary,
}

impl From<BasisArg> for BasisMode {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Monomial => BasisMode::Monomial,
            BasisArg::Elementary => BasisMode::Elementary,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in bits.
    #[arg(long, default_value_t = SolveOptions::default().precision)]
    precision: u32,
    /// Seed for charts and random instances.
    #[arg(long, default_value_t = SolveOptions::default().seed)]
    seed: u64,
    /// Distance below which a numeric point matches an exact special point.
    #[arg(long, default_value_t = SolveOptions::default().match_tolerance)]
    tolerance: f64,
    /// Emit JSON instead of tables.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn options(&self) -> Result<SolveOptions> {
        if self.precision < 64 {
            bail!("precision must be at least 64 bits");
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            bail!("tolerance must lie in (0, 1)");
        }
        let defaults = SolveOptions::default();
        Ok(SolveOptions {
            precision: self.precision,
            max_precision: defaults.max_precision.max(self.precision),
            match_tolerance: self.tolerance,
            seed: self.seed,
            ..defaults
        })
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "p2")]
    space: SpaceArg,
    #[arg(short = 'f')]
    f: String,
    #[arg(short = 'g')]
    g: String,
    /// Third polynomial, required in P3.
    #[arg(short = 'h')]
    h: Option<String>,
    #[arg(long, value_enum, default_value = "monomial")]
    basis: BasisArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "p2")]
    space: SpaceArg,
    /// Largest degree product d*e in the grid.
    #[arg(long, default_value_t = 20)]
    max_product: u32,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct P3Args {
    /// Degrees d1,d2,d3; without it every triple up to --max-product is checked.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    #[arg(long, default_value_t = 6)]
    max_product: u32,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct IndependenceArgs {
    #[arg(long, value_enum, default_value = "p2")]
    space: SpaceArg,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long)]
    max_product: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(long, value_enum, default_value = "p2")]
    space: SpaceArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, value_enum, default_value = "p2")]
    space: SpaceArg,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    /// Basis used to print the instance.
    #[arg(long, value_enum, default_value = "monomial")]
    basis: BasisArg,
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[command(flatten)]
    common: Common,
}

/// Output of a successful command, with its exit code.
struct Rendered {
    text: String,
    code: i32,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

/// Runs the command line `argv` (program name first), writing results to `out` and
/// errors, prefixed with `error:`, to `err`. Returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = writeln!(err, "error: {first}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok(r) => {
            let _ = write!(out, "{}", r.text);
            if r.code != EXIT_OK {
                let _ = writeln!(err, "error: verification did not pass");
            }
            r.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", format_error(&e));
            exit_code(&e)
        }
    }
}

fn format_error(e: &anyhow::Error) -> String {
    e.chain().map(ToString::to_string).collect::<Vec<_>>().join(": ")
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<SolveError>() {
        Some(s) if s.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: Command) -> Result<Rendered> {
    match cmd {
        Command::Solve(a) => solve_cmd(&a, false),
        Command::OrbitType(a) => solve_cmd(&a, true),
        Command::VerifyTable(a) => table_cmd(&a),
        Command::VerifyP3(a) => p3_cmd(&a),
        Command::Independence(a) => independence_cmd(&a),
        Command::FixedPoints(a) => fixed_points_cmd(&a),
        Command::RandomInstance(a) => random_cmd(&a),
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn parse(src: &str, name: &str, space: Space, basis: BasisMode) -> Result<MultiPoly> {
    parse_poly(src, space.nvars(), basis).with_context(|| format!("cannot parse -{name}"))
}

fn solve_cmd(a: &SolveArgs, orbit_only: bool) -> Result<Rendered> {
    let opts = a.common.options()?;
    let space = Space::from(a.space);
    let basis = BasisMode::from(a.basis);
    let f = parse(&a.f, "f", space, basis)?;
    let g = parse(&a.g, "g", space, basis)?;
    let report = match (space, &a.h) {
        (Space::P2, None) => solve_p2(&f, &g, &opts)?,
        (Space::P2, Some(_)) => bail!("-h is only used in P3"),
        (Space::P3, None) => bail!("P3 needs three polynomials (-f, -g, -h)"),
        (Space::P3, Some(h)) => solve_p3(&f, &g, &parse(h, "h", space, basis)?, &opts)?,
    };
    let text = match (orbit_only, a.common.json) {
        (false, true) => to_json(&report.to_json()),
        (false, false) => render_report(&report),
        (true, true) => to_json(&json!({
            "space": report.space,
            "degrees": report.degrees,
            "orbit_type": report.orbit_type.to_string(),
            "transverse": report.transverse,
        })),
        (true, false) => format!("{}\n", report.orbit_type),
    };
    Ok(Rendered::ok(text))
}

fn complex(re: f64, im: f64) -> String {
    let clean = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

fn render_report(r: &IntersectionReport) -> String {
    let mut s = String::new();
    let degrees: Vec<String> = r.degrees.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "space: {}  degrees: {}  bezout: {}", r.space, degrees.join(", "), r.bezout);
    let _ = writeln!(s, "{} points:", r.points.len());
    let _ = writeln!(
        s,
        "  {:<3} {:<40} {:<4} {:<5} {:<5} {:<5} {:<9} {:<9} status",
        "#", "point", "mult", "stab", "orbit", "real", "residual", "jacobian"
    );
    for (k, p) in r.points.iter().enumerate() {
        let shown = match &p.exact {
            Some(e) => e.to_string(),
            None => {
                let cs: Vec<String> = p.numeric.to_f64().iter().map(|&(re, im)| complex(re, im)).collect();
                format!("[{}]", cs.join(" : "))
            }
        };
        let _ = writeln!(
            s,
            "  {:<3} {:<40} {:<4} {:<5} {:<5} {:<5} {:<9.2e} {:<9.2e} {}",
            k,
            shown,
            p.multiplicity,
            p.stabilizer.name(),
            p.orbit_id,
            if p.is_real { "yes" } else { "no" },
            p.residual,
            p.jacobian_score,
            format!("{:?}", p.status).to_lowercase(),
        );
    }
    let _ = writeln!(s, "orbit type: {}", r.orbit_type);
    let _ = writeln!(s, "real points: {}", r.real_count);
    let _ = writeln!(s, "transverse: {}", if r.transverse { "yes" } else { "no" });
    let _ = writeln!(s, "status: {}", format!("{:?}", r.status).to_lowercase());
    if let Some(c) = &r.obstruction {
        let _ = writeln!(s, "obstruction: {c}");
    }
    if !r.complete {
        let _ = writeln!(
            s,
            "incomplete: {} of {} points found with multiplicity",
            r.total_multiplicity(),
            r.bezout
        );
    }
    s
}

fn verdict_code(runs: &[VerificationRun]) -> i32 {
    if runs.iter().all(|r| r.verdict == Verdict::Pass) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn render_runs(runs: &[VerificationRun], json: bool) -> Rendered {
    let code = verdict_code(runs);
    if json {
        let v = if runs.len() == 1 {
            runs[0].to_json()
        } else {
            Value::Array(runs.iter().map(VerificationRun::to_json).collect())
        };
        return Rendered { text: to_json(&v), code };
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:<28} {:<13} {:>9} {:>6} {:>6} {:>7} {:>8}",
        "degrees", "expected", "verdict", "confirmed", "contra", "resamp", "vacuous", "errors"
    );
    for r in runs {
        let degrees: Vec<String> = r.params.degrees.iter().map(ToString::to_string).collect();
        let c = &r.counts;
        let _ = writeln!(
            s,
            "{:<10} {:<28} {:<13} {:>9} {:>6} {:>6} {:>7} {:>8}",
            format!("({})", degrees.join(",")),
            r.params.expected.as_deref().unwrap_or("-"),
            r.verdict.to_string(),
            c.confirmed,
            c.contradictions,
            c.rejected,
            c.vacuous,
            c.errors
        );
    }
    for r in runs {
        for t in r.trials.iter().filter(|t| t.outcome == symbez::verify::Outcome::Contradiction) {
            let _ = writeln!(
                s,
                "contradiction {:?} trial {}: {}",
                r.params.degrees,
                t.index,
                t.detail.as_deref().unwrap_or("")
            );
        }
    }
    let passed = runs.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let _ = writeln!(s, "{passed}/{} runs pass", runs.len());
    Rendered { text: s, code }
}

fn table_cmd(a: &TableArgs) -> Result<Rendered> {
    if matches!(a.space, SpaceArg::P3) {
        bail!("P3 has no expected orbit-type table; use verify-p3");
    }
    if a.max_product > P2_PRODUCT_CAP {
        return Err(VerifyError::DegreeCap { product: a.max_product as u64, cap: P2_PRODUCT_CAP as u64 }.into());
    }
    let opts = a.common.options()?;
    let runs = p2_cells(a.max_product)
        .into_iter()
        .map(|(d, e)| verify_p2_table(d, e, a.trials, a.common.seed, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render_runs(&runs, a.common.json))
}

fn p3_triples(max: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for d1 in 1..=max {
        for d2 in d1..=max / d1 {
            for d3 in d2..=max / (d1 * d2) {
                out.push([d1, d2, d3]);
            }
        }
    }
    out
}

fn p3_cmd(a: &P3Args) -> Result<Rendered> {
    let opts = a.common.options()?;
    let triples = match &a.degrees {
        Some(ds) => {
            let t: [u32; 3] = ds.as_slice().try_into().map_err(|_| anyhow!("--degrees needs three values"))?;
            vec![t]
        }
        None => p3_triples(a.max_product),
    };
    let runs = triples
        .iter()
        .map(|t| verify_p3(t, a.trials, a.common.seed, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render_runs(&runs, a.common.json))
}

fn check_degrees(space: Space, degrees: &[u32]) -> Result<()> {
    if degrees.len() != space.nvars() - 1 {
        bail!("{space} needs {} degrees, got {}", space.nvars() - 1, degrees.len());
    }
    if degrees.contains(&0) {
        bail!("degrees must be positive");
    }
    Ok(())
}

fn independence_cmd(a: &IndependenceArgs) -> Result<Rendered> {
    let space = Space::from(a.space);
    check_degrees(space, &a.degrees)?;
    let mut opts = a.common.options()?;
    if let Some(m) = a.max_product {
        opts.max_product_p3 = m as u64;
    }
    let run = orbit_type_independence(space, &a.degrees, a.trials, a.common.seed, &opts)?;
    let mut r = render_runs(std::slice::from_ref(&run), a.common.json);
    if !a.common.json {
        let types: std::collections::BTreeSet<&str> = run.confirmed_orbit_types().into_iter().collect();
        let shown: Vec<&str> = types.into_iter().collect();
        let _ = writeln!(r.text, "orbit types seen: {}", if shown.is_empty() { "none".into() } else { shown.join(" | ") });
        if let Some(n) = &run.note {
            let _ = writeln!(r.text, "note: {n}");
        }
    }
    Ok(r)
}

fn render_catalog(r: &CatalogReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<6} {:<7} {:<36} detail", "class", "result", "subject");
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{:<6} {:<7} {:<36} {}",
            c.class.name(),
            if c.passed { "ok" } else { "FAILED" },
            c.subject,
            c.detail
        );
    }
    for (class, points) in &r.finite_fixed_points {
        let ps: Vec<String> = points.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "fixed points of {}: {}", class.name(), ps.join(", "));
    }
    let _ = writeln!(s, "catalog {}: {}", r.space, if r.passed() { "pass" } else { "fail" });
    s
}

fn fixed_points_cmd(a: &SpaceArgs) -> Result<Rendered> {
    let report = verify_catalog_by_stabilizer(a.space.into());
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let text = if a.json {
        to_json(&serde_json::to_value(&report).context("serializing catalog report")?)
    } else {
        render_catalog(&report)
    };
    Ok(Rendered { text, code })
}

fn random_cmd(a: &RandomArgs) -> Result<Rendered> {
    let space = Space::from(a.space);
    check_degrees(space, &a.degrees)?;
    let fs = random_instance(space, &a.degrees, a.common.seed, a.index);
    let shown: Vec<String> = match a.basis {
        BasisArg::Monomial => fs.iter().map(ToString::to_string).collect(),
        BasisArg::Elementary => fs
            .iter()
            .map(|f| f.to_elementary_basis().map(|e| e.to_string()))
            .collect::<Result<_, _>>()
            .context("rewriting in the elementary basis")?,
    };
    let text = if a.common.json {
        to_json(&json!({
            "space": space,
            "degrees": a.degrees,
            "seed": a.common.seed,
            "index": a.index,
            "basis": if matches!(a.basis, BasisArg::Monomial) { "monomial" } else { "elementary" },
            "polynomials": shown,
        }))
    } else {
        let flags = ["-f", "-g", "-h"];
        shown.iter().zip(flags).map(|(p, flag)| format!("{flag} \"{p}\"\n")).collect()
    };
    Ok(Rendered::ok(text))
}
