//! `latgame`: solve, classify and verify lattice games on `N^d`.
//!
//! Every command consumes the canonical rule-set JSON
//! `{"d": 3, "moves": [[1,0,0],[0,1,0]]}` from a file or standard input and
//! emits JSON on standard output (`--format text` for a human-readable
//! form). Exit codes are stable for scripting: 0 on success or "property
//! holds", 1 when a violation was found or the rule set is not a legal
//! game, 2 on usage, I/O or resource errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_games::{
    bean_count_weights, box_weight, check_indistinguishability_from_zero,
    check_mod2_periodicity, check_monoid_closure, classify, find_monoid_counterexample_with,
    nim_rules, random, rational, rules_from_octal, solve_p0_capped, solve_region_capped,
    validate, Error, OctalCode, Outcome, Position, PropertyReport, RuleSet, SolveStats,
    SolvedBox, Violation, WeightCertificate, DEFAULT_DIM_CAP, DEFAULT_REGION_CAP,
};
use num::rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const REGION_CAP_ENV: &str = "LATGAME_MAX_REGION";

#[derive(Parser)]
#[command(
    name = "latgame",
    version,
    about = "Solve, classify and verify lattice games on N^d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the game axioms; exit 1 when the rule set is not a legal game
    Validate(ValidateCmd),
    /// Report squarefree / weakly-squarefree / neither, with witnesses
    Classify(ClassifyCmd),
    /// Compute P0 = P over {0,1}^d for a validated squarefree game
    Solve(SolveCmd),
    /// Outcome (P or N) of one position
    Outcome(OutcomeCmd),
    /// Stream the brute-force outcome table of a weight-bounded region
    Oracle(OracleCmd),
    /// Check a property over a region; exit 1 when violations exist
    Check(CheckCmd),
    /// Translate an octal code into the rule-set JSON other commands consume
    EncodeOctal(EncodeOctalCmd),
    /// Search for a monoid-closure counterexample; exit 1 when one is found
    Counterexample(CounterexampleCmd),
    /// Time the box solver across a sweep of dimensions
    Bench(BenchCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FormatArg {
    /// Output format; json is the stable interchange form
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct IoArgs {
    /// Rule-set JSON file; "-" or omitted reads standard input
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
    #[command(flatten)]
    fmt: FormatArg,
}

#[derive(Args)]
struct ValidateCmd {
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ClassifyCmd {
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct SolveCmd {
    #[command(flatten)]
    io: IoArgs,
    /// Weight certificate as comma-separated rationals (default: computed)
    #[arg(long, value_name = "CSV")]
    weight: Option<String>,
    /// Dimension cap for the 2^d outcome table
    #[arg(long, value_name = "D", default_value_t = DEFAULT_DIM_CAP)]
    max_dim: usize,
}

#[derive(Args)]
struct OutcomeCmd {
    /// Rule-set JSON file; "-" or omitted reads standard input
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
    /// Output format; text (the default here) prints just P or N
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Position as comma-separated coordinates, e.g. 3,1,1
    #[arg(long, value_name = "CSV")]
    position: String,
    #[arg(long, value_name = "CSV")]
    weight: Option<String>,
    #[arg(long, value_name = "D", default_value_t = DEFAULT_DIM_CAP)]
    max_dim: usize,
}

#[derive(Args)]
struct OracleCmd {
    #[command(flatten)]
    io: IoArgs,
    /// Region budget W; the table covers {p : w.p <= W}
    #[arg(long, value_name = "RATIONAL")]
    budget: String,
    #[arg(long, value_name = "CSV")]
    weight: Option<String>,
    /// Emit only P-positions
    #[arg(long)]
    p_only: bool,
    /// Region position cap (LATGAME_MAX_REGION overrides the default)
    #[arg(long, value_name = "N")]
    max_region: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Outcomes agree with their coordinatewise mod-2 reductions
    Mod2,
    /// P + P stays P and P + N stays N
    Monoid,
    /// Translation by --position preserves outcomes
    EquivZero,
}

#[derive(Args)]
struct CheckCmd {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_enum)]
    property: Property,
    /// Region budget W (default: twice the box weight)
    #[arg(long, value_name = "RATIONAL")]
    budget: Option<String>,
    #[arg(long, value_name = "CSV")]
    weight: Option<String>,
    /// Base position for equiv-zero
    #[arg(long, value_name = "CSV")]
    position: Option<String>,
    #[arg(long, value_name = "N")]
    max_region: Option<usize>,
}

#[derive(Args)]
struct EncodeOctalCmd {
    /// Octal code, e.g. 0.333
    #[arg(long, value_name = "CODE")]
    code: String,
    /// Largest heap size (the board dimension)
    #[arg(long, value_name = "D")]
    max_heap: usize,
    #[command(flatten)]
    fmt: FormatArg,
}

#[derive(Args)]
struct CounterexampleCmd {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_name = "RATIONAL")]
    budget: String,
    #[arg(long, value_name = "CSV")]
    weight: Option<String>,
    #[arg(long, value_name = "N")]
    max_region: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Nim,
    Random,
}

#[derive(Args)]
struct BenchCmd {
    #[arg(long, default_value_t = 12)]
    min_d: usize,
    #[arg(long, default_value_t = 20)]
    max_d: usize,
    #[arg(long, default_value_t = 4)]
    step: usize,
    /// Timed repetitions per dimension; the fastest run is reported
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = Family::Nim)]
    family: Family,
    /// Extra heap moves per dimension for the random family
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "D", default_value_t = DEFAULT_DIM_CAP)]
    max_dim: usize,
    #[command(flatten)]
    fmt: FormatArg,
}

/// A failed command: game-level failures exit 1, usage failures exit 2.
enum Failure {
    Game(String),
    Usage(String),
}

impl Failure {
    fn usage(e: impl Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSquarefree(_) | Error::InvalidGame { .. } => Failure::Game(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(c) => cmd_validate(c),
        Command::Classify(c) => cmd_classify(c),
        Command::Solve(c) => cmd_solve(c),
        Command::Outcome(c) => cmd_outcome(c),
        Command::Oracle(c) => cmd_oracle(c),
        Command::Check(c) => cmd_check(c),
        Command::EncodeOctal(c) => cmd_encode_octal(c),
        Command::Counterexample(c) => cmd_counterexample(c),
        Command::Bench(c) => cmd_bench(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Game(msg)) => {
            eprintln!("latgame: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("latgame: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_rules(rules: &Option<PathBuf>) -> Result<RuleSet, Failure> {
    let from_stdin = match rules {
        None => true,
        Some(p) => p.as_os_str() == "-",
    };
    let text = if from_stdin {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        buf
    } else {
        let path = rules.as_ref().unwrap();
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("parsing rule-set JSON: {e}")))
}

fn parse_position(csv: &str) -> Result<Position, Failure> {
    let coords = csv
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("parsing position {csv:?}: {e}")))?;
    Ok(Position::new(coords))
}

fn parse_budget(s: &str) -> Result<BigRational, Failure> {
    rational::parse_rational(s).map_err(|e| Failure::Usage(format!("parsing budget: {e}")))
}

/// Resolve the weight certificate: an explicit `--weight` is verified
/// against the rule set; otherwise validation must pass and its certificate
/// is used.
fn resolve_weight(rs: &RuleSet, flag: &Option<String>) -> Result<WeightCertificate, Failure> {
    match flag {
        Some(csv) => {
            let entries =
                rational::parse_rational_csv(csv).map_err(|e| Failure::Usage(format!("parsing weights: {e}")))?;
            let w = WeightCertificate::new(entries).map_err(Failure::usage)?;
            w.verify(rs).map_err(Failure::usage)?;
            Ok(w)
        }
        None => {
            let report = validate(rs);
            if !report.is_valid_game() {
                return Err(Failure::Game(
                    Error::InvalidGame {
                        pointed: report.pointed,
                        missing_axes: report.missing_axes.iter().copied().collect(),
                    }
                    .to_string(),
                ));
            }
            Ok(report
                .certificate
                .expect("valid games carry a certificate"))
        }
    }
}

fn region_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(REGION_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|e| Failure::Usage(format!("{REGION_CAP_ENV}={v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_REGION_CAP),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(Failure::usage)?;
    println!("{text}");
    Ok(())
}

fn coords_csv(p: &Position) -> String {
    p.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_validate(cmd: ValidateCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let report = validate(&rs);
    match cmd.io.fmt.format {
        Format::Json => emit_json(&report)?,
        Format::Text => {
            println!("pointed: {}", report.pointed);
            println!("contains_orthant: {}", report.contains_orthant);
            match &report.certificate {
                Some(w) => println!(
                    "certificate: {}",
                    w.entries()
                        .iter()
                        .map(rational::format_rational)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => println!("certificate: none"),
            }
            println!(
                "missing_axes: {}",
                report
                    .missing_axes
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
    }
    Ok(if report.is_valid_game() { 0 } else { 1 })
}

fn cmd_classify(cmd: ClassifyCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let classification = classify(&rs);
    match cmd.io.fmt.format {
        Format::Json => emit_json(&classification)?,
        Format::Text => {
            let level = match classification.level {
                lattice_games::SquarefreeLevel::Squarefree => "squarefree",
                lattice_games::SquarefreeLevel::WeaklySquarefreeOnly => "weakly_squarefree_only",
                lattice_games::SquarefreeLevel::NotWeaklySquarefree => "not_weakly_squarefree",
            };
            println!("level: {level}");
            for w in &classification.witnesses {
                println!(
                    "witness: move={:?} p={} q={}",
                    w.mv.deltas(),
                    w.p,
                    w.q
                );
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SolveOutput {
    p0: Vec<Vec<u64>>,
    stats: SolveStats,
}

fn solve_box(rs: &RuleSet, weight: &Option<String>, max_dim: usize) -> Result<SolvedBox, Failure> {
    let w = resolve_weight(rs, weight)?;
    Ok(solve_p0_capped(rs, &w, max_dim)?)
}

fn cmd_solve(cmd: SolveCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let sb = solve_box(&rs, &cmd.weight, cmd.max_dim)?;
    let p0: Vec<Vec<u64>> = sb
        .p0_positions()
        .into_iter()
        .map(|p| p.coords().to_vec())
        .collect();
    match cmd.io.fmt.format {
        Format::Json => emit_json(&SolveOutput {
            p0,
            stats: sb.stats(),
        })?,
        Format::Text => {
            for p in &p0 {
                println!(
                    "{}",
                    p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                );
            }
            let st = sb.stats();
            println!("positions_computed: {}", st.positions_computed);
            println!("option_evaluations: {}", st.option_evaluations);
            println!("peak_table_entries: {}", st.peak_table_entries);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct OutcomeOutput {
    position: Vec<u64>,
    outcome: Outcome,
}

fn cmd_outcome(cmd: OutcomeCmd) -> CmdResult {
    let rs = read_rules(&cmd.rules)?;
    let position = parse_position(&cmd.position)?;
    let sb = solve_box(&rs, &cmd.weight, cmd.max_dim)?;
    let outcome = sb.outcome(&position).map_err(Failure::usage)?;
    match cmd.format {
        Format::Json => emit_json(&OutcomeOutput {
            position: position.coords().to_vec(),
            outcome,
        })?,
        Format::Text => println!("{outcome}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct OracleRow<'a> {
    position: &'a [u64],
    outcome: Outcome,
}

fn cmd_oracle(cmd: OracleCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let w = resolve_weight(&rs, &cmd.weight)?;
    let budget = parse_budget(&cmd.budget)?;
    let cap = region_cap(cmd.max_region)?;
    let sr = solve_region_capped(&rs, &w, &budget, cap)?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (p, o) in sr.entries() {
        if cmd.p_only && !o.is_p() {
            continue;
        }
        let line = match cmd.io.fmt.format {
            Format::Json => serde_json::to_string(&OracleRow {
                position: p.coords(),
                outcome: o,
            })
            .map_err(Failure::usage)?,
            Format::Text => format!("{} {o}", coords_csv(p)),
        };
        writeln!(out, "{line}").map_err(|e| Failure::Usage(format!("writing output: {e}")))?;
    }
    Ok(0)
}

fn cmd_check(cmd: CheckCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let w = resolve_weight(&rs, &cmd.weight)?;
    let budget = match &cmd.budget {
        Some(s) => parse_budget(s)?,
        None => BigRational::from_integer(2.into()) * box_weight(&w),
    };
    let cap = region_cap(cmd.max_region)?;
    let sr = solve_region_capped(&rs, &w, &budget, cap)?;

    let report: PropertyReport = match cmd.property {
        Property::Mod2 => check_mod2_periodicity(&sr),
        Property::Monoid => check_monoid_closure(&sr),
        Property::EquivZero => {
            let csv = cmd.position.as_ref().ok_or_else(|| {
                Failure::Usage("--position is required for --property equiv-zero".into())
            })?;
            let base = parse_position(csv)?;
            check_indistinguishability_from_zero(&sr, &base).map_err(Failure::usage)?
        }
    };

    match cmd.io.fmt.format {
        Format::Json => emit_json(&report)?,
        Format::Text => {
            println!("checked_pairs: {}", report.checked_pairs);
            println!("violations: {}", report.violations.len());
            for v in &report.violations {
                println!("{}", describe_violation(v));
            }
        }
    }
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::Monoid {
            p,
            q,
            sum,
            outcome_p,
            outcome_q,
            outcome_sum,
        } => format!("monoid: {p}[{outcome_p}] + {q}[{outcome_q}] = {sum}[{outcome_sum}]"),
        Violation::Mod2 {
            p,
            reduced,
            outcome_p,
            outcome_reduced,
        } => format!("mod2: {p}[{outcome_p}] vs {reduced}[{outcome_reduced}]"),
        Violation::Translation {
            base,
            q,
            translated,
            outcome_q,
            outcome_translated,
        } => format!("translation: {base} + {q}[{outcome_q}] = {translated}[{outcome_translated}]"),
    }
}

fn cmd_encode_octal(cmd: EncodeOctalCmd) -> CmdResult {
    let code = OctalCode::parse(&cmd.code, cmd.max_heap).map_err(Failure::usage)?;
    for pos in code.ignored_digit_positions() {
        eprintln!(
            "latgame: warning: octal digit at position {pos} exceeds max heap size {}; ignored",
            cmd.max_heap
        );
    }
    let rs = rules_from_octal(&code).map_err(Failure::usage)?;
    match cmd.fmt.format {
        Format::Json => emit_json(&rs)?,
        Format::Text => {
            println!("d: {}", rs.d());
            for mv in rs.moves() {
                println!(
                    "move: {}",
                    mv.deltas()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CounterexampleOutput {
    found: bool,
    violation: Option<Violation>,
}

fn cmd_counterexample(cmd: CounterexampleCmd) -> CmdResult {
    let rs = read_rules(&cmd.io.rules)?;
    let w = resolve_weight(&rs, &cmd.weight)?;
    let budget = parse_budget(&cmd.budget)?;
    let cap = region_cap(cmd.max_region)?;
    let violation = find_monoid_counterexample_with(&rs, &w, &budget, cap)?;
    let found = violation.is_some();
    match cmd.io.fmt.format {
        Format::Json => emit_json(&CounterexampleOutput {
            found,
            violation: violation.clone(),
        })?,
        Format::Text => match &violation {
            Some(v) => println!("{}", describe_violation(v)),
            None => println!("no violation within budget"),
        },
    }
    Ok(if found { 1 } else { 0 })
}

#[derive(Serialize)]
struct BenchRow {
    d: usize,
    moves: usize,
    wall_ms: f64,
    positions_computed: u64,
    option_evaluations: u64,
}

fn cmd_bench(cmd: BenchCmd) -> CmdResult {
    if cmd.min_d == 0 || cmd.min_d > cmd.max_d {
        return Err(Failure::Usage("need 1 <= min-d <= max-d".into()));
    }
    if cmd.step == 0 {
        return Err(Failure::Usage("--step must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cmd.seed);
    let mut rows = Vec::new();
    let mut d = cmd.min_d;
    while d <= cmd.max_d {
        let (rs, w) = match cmd.family {
            Family::Nim => (nim_rules(d), bean_count_weights(d)),
            Family::Random => {
                let extra = (cmd.density * d as f64).round().max(1.0) as usize;
                (
                    random::random_heap_rule_set(&mut rng, d, extra),
                    bean_count_weights(d),
                )
            }
        };
        let mut best: Option<Duration> = None;
        let mut stats: Option<SolveStats> = None;
        for _ in 0..cmd.reps.max(1) {
            let t0 = Instant::now();
            let sb = solve_p0_capped(&rs, &w, cmd.max_dim)?;
            let dt = t0.elapsed();
            best = Some(best.map_or(dt, |b| b.min(dt)));
            stats = Some(sb.stats());
        }
        let st = stats.unwrap();
        rows.push(BenchRow {
            d,
            moves: rs.len(),
            wall_ms: best.unwrap().as_secs_f64() * 1e3,
            positions_computed: st.positions_computed,
            option_evaluations: st.option_evaluations,
        });
        d += cmd.step;
    }
    match cmd.fmt.format {
        Format::Json => emit_json(&rows)?,
        Format::Text => {
            println!("{:>4} {:>7} {:>12} {:>16} {:>18}", "d", "moves", "wall_ms", "positions", "option_evals");
            for r in &rows {
                println!(
                    "{:>4} {:>7} {:>12.3} {:>16} {:>18}",
                    r.d, r.moves, r.wall_ms, r.positions_computed, r.option_evaluations
                );
            }
        }
    }
    Ok(0)
}
