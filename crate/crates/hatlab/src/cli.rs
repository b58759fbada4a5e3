//! The `hatlab` command line.
//!
//! Exit codes: 0 winning, sampled clean, valid or found; 1 disproved,
//! losing, invalid or none found; 2 undecided or over budget; 3 input error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hatlab_core::cert::{self, RoyalPetunia};
use hatlab_core::error::Error;
use hatlab_core::solve::{brute_force_decide, Decision, SolveLimits, DEFAULT_MAX_PLACEMENTS, DEFAULT_NODE_BUDGET};
use hatlab_core::verify::DEFAULT_PLACEMENT_BUDGET;
use hatlab_core::{
    check_certificate, search_phf, verify_phf, HatGame, LosingCertificate, Outcome, PhfArray, PhfCheck, Recipe,
    SearchOutcome, Strategy,
};

use crate::bundled::{bundled_phf, FileResolver};
use crate::formats::{read_json, to_canonical_json, write_json, Digest};
use crate::parallel::{verify_exhaustive_par, verify_sampled_par, Parallelism};
use crate::report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hatlab", version, about = "Build, verify and refute hat guessing strategies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: one per hardware thread)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Placement budget for verify, node budget for solve and phf-search
    #[arg(long, global = true, value_parser = parse_count)]
    pub budget: Option<u128>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report file; for `build`, the output directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a strategy from a recipe file or an inline `KIND key=value ...`
    Build {
        #[arg(long)]
        recipe: Option<PathBuf>,
        inline: Vec<String>,
    },
    /// Verify a strategy (recipe file) against its game
    Verify {
        #[arg(long)]
        strategy: PathBuf,
        /// Game the strategy must be for
        #[arg(long)]
        game: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1_000_000, value_parser = parse_u64)]
        samples: u64,
    },
    /// Decide a small game by exhaustive strategy search
    Solve {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_PLACEMENTS)]
        max_placements: u128,
        /// Write the winning lookup strategy as a recipe
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Check a losing certificate file, or build and check `BUILDER key=value ...`
    /// (path-losing, petal-losing, royal-petunia, alon)
    Certify {
        #[arg(long)]
        cert: Option<PathBuf>,
        builder: Vec<String>,
        /// Write the built certificate
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check the perfect hash property of a PHF file or bundled array
    PhfVerify {
        phf: Option<PathBuf>,
        #[arg(long)]
        bundled: Option<String>,
    },
    /// Search for a PHF(N; k, v, t)
    PhfSearch { n: usize, k: usize, v: u32, t: u32 },
}

/// Accepts plain integers, `_` separators and `AeB` shorthands like `2e10`.
fn parse_count(s: &str) -> Result<u128, String> {
    let s = s.replace('_', "");
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u128 = m.parse().map_err(|e| format!("{e}"))?;
        let e: u32 = e.parse().map_err(|e| format!("{e}"))?;
        return 10u128.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or_else(|| "count overflows".into());
    }
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_u64(s: &str) -> Result<u64, String> {
    parse_count(s).and_then(|v| u64::try_from(v).map_err(|e| format!("{e}")))
}

/// `KIND key=value ...`; values are JSON when they parse as JSON, strings
/// otherwise.
fn parse_inline(args: &[String]) -> Result<(String, Map<String, Value>)> {
    let (kind, rest) = args.split_first().ok_or_else(|| anyhow!("missing kind"))?;
    let mut map = Map::new();
    for a in rest {
        let (k, v) = a.split_once('=').ok_or_else(|| anyhow!("expected key=value, got {a:?}"))?;
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.into()));
        map.insert(k.replace('-', "_"), value);
    }
    Ok((kind.replace('-', "_"), map))
}

struct Run {
    report: RunReport,
    text: Vec<String>,
}

impl Run {
    fn new(report: RunReport) -> Self {
        Run { report, text: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    execute(&cli, stdout, stderr)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Build { recipe, inline } => cmd_build(cli, recipe.as_deref(), inline),
        Command::Verify { strategy, game, mode, samples } => cmd_verify(cli, strategy, game.as_deref(), *mode, *samples),
        Command::Solve { game, max_placements, strategy_out } => {
            cmd_solve(cli, game, *max_placements, strategy_out.as_deref())
        }
        Command::Certify { cert, builder, emit } => cmd_certify(cert.as_deref(), builder, emit.as_deref()),
        Command::PhfVerify { phf, bundled } => cmd_phf_verify(phf.as_deref(), bundled.as_deref()),
        Command::PhfSearch { n, k, v, t } => cmd_phf_search(cli, *n, *k, *v, *t),
    };
    let mut run = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_INPUT;
        }
    };
    run.report.wall_time_secs = Some(start.elapsed().as_secs_f64());
    let code = run.report.exit_code;
    if let Some(out) = cli.out.as_deref().filter(|_| !matches!(cli.command, Command::Build { .. })) {
        if let Err(e) = write_json(out, &run.report) {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_INPUT;
        }
    }
    let _ = match cli.format {
        Format::Json => write!(stdout, "{}", to_canonical_json(&run.report).unwrap_or_default()),
        Format::Text => run.text.iter().try_for_each(|l| writeln!(stdout, "{l}")),
    };
    code
}

fn budget_exceeded(e: &anyhow::Error) -> Option<(Option<u128>, u128)> {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { required, budget }) => Some((*required, *budget)),
        _ => None,
    }
}

fn load_recipe(path: &Path) -> Result<(Strategy, Recipe, Digest)> {
    let (recipe, digest): (Recipe, Digest) = read_json(path)?;
    let strategy = recipe.build(&FileResolver::for_file(path))?;
    Ok((strategy, recipe, digest))
}

fn histogram(values: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

fn cmd_build(cli: &Cli, recipe_path: Option<&Path>, inline: &[String]) -> Result<Run> {
    let mut report = RunReport::new("build");
    let (strategy, recipe) = match (recipe_path, inline.is_empty()) {
        (Some(p), true) => {
            let (s, r, d) = load_recipe(p)?;
            report.inputs.push(d);
            (s, r)
        }
        (None, false) => {
            let (kind, mut map) = parse_inline(inline)?;
            map.insert("kind".into(), Value::String(kind));
            let recipe: Recipe = serde_json::from_value(Value::Object(map)).context("inline recipe")?;
            (recipe.build(&FileResolver::new("."))?, recipe)
        }
        _ => bail!("give either --recipe FILE or an inline recipe, not both"),
    };
    let game = strategy.game();
    let h = histogram(&game.hatness);
    let g = histogram(&game.guesses);
    let mut files = Vec::new();
    if let Some(dir) = &cli.out {
        for (name, value) in [
            ("game.json", serde_json::to_value(game)?),
            ("strategy.json", serde_json::to_value(&recipe)?),
            ("provenance.json", serde_json::to_value(strategy.provenance())?),
        ] {
            let path = dir.join(name);
            write_json(&path, &value)?;
            files.push(path.display().to_string());
        }
    }
    report.params.insert("recipe".into(), serde_json::to_value(&recipe)?);
    report.result = json!({
        "vertices": game.vertex_count(),
        "arcs": game.graph.arc_count(),
        "hatness_histogram": h,
        "guess_histogram": g,
        "hint": game.hint,
        "provenance": strategy.provenance().kind,
        "files": files,
    });
    if let Some(dir) = &cli.out {
        write_json(&dir.join("report.json"), &report)?;
    }
    let mut run = Run::new(report);
    run.line(format!("{}: {} vertices, {} arcs", recipe.kind(), game.vertex_count(), game.graph.arc_count()));
    run.line(format!("hatness histogram: {h:?}"));
    run.line(format!("guess histogram: {g:?}"));
    for f in &files {
        run.line(format!("wrote {f}"));
    }
    Ok(run)
}

fn cmd_verify(cli: &Cli, strategy_path: &Path, game_path: Option<&Path>, mode: Mode, samples: u64) -> Result<Run> {
    let (strategy, _, digest) = load_recipe(strategy_path)?;
    let mut report = RunReport::new("verify").param("mode", format!("{mode:?}").to_lowercase());
    report.inputs.push(digest);
    if let Some(gp) = game_path {
        let (game, d): (HatGame, Digest) = read_json(gp)?;
        report.inputs.push(d);
        if game != *strategy.game() {
            bail!("the strategy is for a different game than {}", gp.display());
        }
    }
    let par = Parallelism(cli.threads);
    let verdict = match mode {
        Mode::Exhaustive => {
            let budget = cli.budget.unwrap_or(DEFAULT_PLACEMENT_BUDGET);
            report = report.param("budget", budget.to_string());
            verify_exhaustive_par(&strategy, budget, par).map_err(anyhow::Error::from)
        }
        Mode::Sampled => {
            report = report.param("samples", samples);
            report.seed = Some(cli.seed);
            verify_sampled_par(&strategy, samples, cli.seed, par).map_err(anyhow::Error::from)
        }
    };
    let mut run;
    match verdict {
        Ok(mut v) => {
            v.wall_time_secs = None;
            if v.outcome == Outcome::Disproved && !v.witness_disproves(&strategy)? {
                bail!("internal error: witness does not re-check");
            }
            report.exit_code = match v.outcome {
                Outcome::WinningVerified | Outcome::SampledClean => EXIT_OK,
                Outcome::Disproved => EXIT_NEGATIVE,
                Outcome::Undecided => EXIT_UNDECIDED,
            };
            report.result = serde_json::to_value(&v)?;
            run = Run::new(report);
            run.line(format!("{}: {} placements checked", to_kebab(v.outcome), v.placements_checked));
            if let Some(w) = &v.witness {
                run.line(format!("witness: {w:?}"));
            }
        }
        Err(e) => {
            let Some((required, budget)) = budget_exceeded(&e) else { return Err(e) };
            report.exit_code = EXIT_UNDECIDED;
            report.result = json!({
                "outcome": "undecided",
                "required": required.map(|r| r.to_string()),
                "budget": budget.to_string(),
            });
            run = Run::new(report);
            run.line(format!("undecided: {e}"));
        }
    }
    Ok(run)
}

fn to_kebab(o: Outcome) -> String {
    serde_json::to_value(o).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn cmd_solve(cli: &Cli, game_path: &Path, max_placements: u128, strategy_out: Option<&Path>) -> Result<Run> {
    let (game, digest): (HatGame, Digest) = read_json(game_path)?;
    let node_budget = u64::try_from(cli.budget.unwrap_or(DEFAULT_NODE_BUDGET as u128)).unwrap_or(u64::MAX);
    let limits = SolveLimits { node_budget, max_placements };
    let mut report = RunReport::new("solve").param("node_budget", node_budget).param("max_placements", max_placements);
    report.inputs.push(digest);
    let r = match brute_force_decide(&game, limits) {
        Ok(r) => r,
        Err(e) => {
            let e = anyhow::Error::from(e);
            let Some((required, budget)) = budget_exceeded(&e) else { return Err(e) };
            report.exit_code = EXIT_UNDECIDED;
            report.result = json!({"decision": "undecided", "required": required.map(|r| r.to_string()), "budget": budget.to_string()});
            let mut run = Run::new(report);
            run.line(format!("undecided: {e}"));
            return Ok(run);
        }
    };
    let (decision, code) = match &r.decision {
        Decision::Winning(_) => ("winning", EXIT_OK),
        Decision::Losing => ("losing", EXIT_NEGATIVE),
        Decision::Undecided => ("undecided", EXIT_UNDECIDED),
    };
    if let (Decision::Winning(l), Some(p)) = (&r.decision, strategy_out) {
        write_json(p, &Recipe::LiteralLookup(l.clone()))?;
    }
    report.exit_code = code;
    report.result = json!({
        "decision": decision,
        "nodes": r.nodes,
        "strategy_space": r.strategy_space.map(|s| s.to_string()),
    });
    let mut run = Run::new(report);
    run.line(format!("{decision} after {} nodes", r.nodes));
    Ok(run)
}

fn int(map: &Map<String, Value>, key: &str) -> Result<u64> {
    map.get(key).and_then(Value::as_u64).ok_or_else(|| anyhow!("builder needs integer {key}="))
}

fn cmd_certify(cert_path: Option<&Path>, builder: &[String], emit: Option<&Path>) -> Result<Run> {
    let mut report = RunReport::new("certify");
    let certificate: LosingCertificate = match (cert_path, builder.is_empty()) {
        (Some(p), true) => {
            let (c, d) = read_json(p)?;
            report.inputs.push(d);
            c
        }
        (None, false) => {
            let (kind, map) = parse_inline(builder)?;
            report.params.insert("builder".into(), Value::String(kind.clone()));
            for (k, v) in &map {
                report.params.insert(k.clone(), v.clone());
            }
            match kind.as_str() {
                "path_losing" => cert::path_losing(int(&map, "s")? as u32, int(&map, "n")? as usize)?,
                "petal_losing" => cert::petal_losing(int(&map, "s")? as u32, int(&map, "n")? as usize)?,
                "alon" => cert::alon_cert(map.get("edges").and_then(Value::as_u64).unwrap_or(1) as usize)?,
                "royal_petunia" => {
                    let s = int(&map, "s")? as u32;
                    let petunia: RoyalPetunia = match map.get("file").and_then(Value::as_str) {
                        Some(f) => {
                            let (p, d) = read_json(Path::new(f))?;
                            report.inputs.push(d);
                            p
                        }
                        None => serde_json::from_value(map.get("petunia").cloned().unwrap_or(Value::Null))
                            .context("royal-petunia needs file=PATH or petunia=JSON")?,
                    };
                    cert::royal_petunia(s, &petunia)?
                }
                other => bail!("unknown certificate builder {other:?}"),
            }
        }
        _ => bail!("give either --cert FILE or a builder, not both"),
    };
    if let Some(p) = emit {
        write_json(p, &certificate)?;
    }
    let check = check_certificate(&certificate);
    report.exit_code = if check.valid { EXIT_OK } else { EXIT_NEGATIVE };
    report.result = serde_json::to_value(&check)?;
    let mut run = Run::new(report);
    match &check.violation {
        None => run.line(format!(
            "valid: {} rule nodes, game on {} vertices{}",
            check.nodes,
            certificate.game.vertex_count(),
            if check.trusted.is_empty() { String::new() } else { format!(", {} leaves trusted", check.trusted.len()) }
        )),
        Some(v) => run.line(format!("invalid at {:?} ({}): {}", v.path, v.rule, v.message)),
    }
    Ok(run)
}

fn cmd_phf_verify(path: Option<&Path>, bundled: Option<&str>) -> Result<Run> {
    let mut report = RunReport::new("phf-verify");
    let array: PhfArray = match (path, bundled) {
        (Some(p), None) => {
            let (a, d) = read_json(p)?;
            report.inputs.push(d);
            a
        }
        (None, Some(name)) => {
            report = report.param("bundled", name);
            bundled_phf(name).ok_or_else(|| anyhow!("no bundled PHF named {name:?}"))?
        }
        _ => bail!("give either a PHF file or --bundled NAME"),
    };
    let check = verify_phf(&array)?;
    let mut run;
    match check {
        PhfCheck::Valid => {
            report.result = json!({"valid": true, "rows": array.row_count(), "columns": array.column_count()});
            run = Run::new(report);
            run.line(format!("valid PHF({}; {}, {}, {})", array.row_count(), array.column_count(), array.v, array.t));
        }
        PhfCheck::Invalid { columns } => {
            report.exit_code = EXIT_NEGATIVE;
            report.result = json!({"valid": false, "columns": columns});
            run = Run::new(report);
            run.line(format!("invalid: columns {columns:?} are never separated"));
        }
    }
    Ok(run)
}

fn cmd_phf_search(cli: &Cli, n: usize, k: usize, v: u32, t: u32) -> Result<Run> {
    let budget = u64::try_from(cli.budget.unwrap_or(DEFAULT_NODE_BUDGET as u128)).unwrap_or(u64::MAX);
    let mut report = RunReport::new("phf-search")
        .param("n", n)
        .param("k", k)
        .param("v", v)
        .param("t", t)
        .param("node_budget", budget);
    let outcome = search_phf(n, k, v, t, budget)?;
    let line;
    (report.exit_code, report.result, line) = match outcome {
        SearchOutcome::Found(a) => {
            (EXIT_OK, json!({"outcome": "found", "phf": a}), format!("found PHF({n}; {k}, {v}, {t})"))
        }
        SearchOutcome::NoneFound => (EXIT_NEGATIVE, json!({"outcome": "none-found"}), "none found".into()),
        SearchOutcome::BudgetExceeded => {
            (EXIT_UNDECIDED, json!({"outcome": "budget-exceeded"}), format!("budget of {budget} nodes exceeded"))
        }
    };
    let mut run = Run::new(report);
    run.line(line);
    Ok(run)
}
