//! `smatch` command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or usage error,
//! 3 instance too small, 4 unstable matching, 5 generator exhausted.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use smatch_core::analytics::{bench_table, to_csv, BenchMode};
use smatch_core::generate::{
    planted_worst_case, random_instance_seeded, rng_from_seed, worst_case_by_rejection,
    DEFAULT_ATTEMPT_CAP,
};
use smatch_core::pargsa::pargsa_solve_with;
use smatch_core::pargsa::Schedule;
use smatch_core::{
    fixtures, gsa_solve, is_stable, mod_gsa, parse_instance, parse_matching, serialize_instance,
    Engine, Error, ManId, Matching, ModGsaResult, Orientation, PreferenceInstance, Stability,
    WomanId,
};

#[derive(Parser, Debug)]
#[command(name = "smatch", version, about = "Stable matching solver, pair-deletion refinement and step benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance with deferred acceptance
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = OrientationArg::Men)]
        orientation: OrientationArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Sequential)]
        engine: EngineArg,
    },
    /// Delete the pair whose removal gives the lowest men's score
    ModGsa {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = EngineArg::Sequential)]
        engine: EngineArg,
    },
    /// Same as `mod-gsa --engine parallel`
    ParGsa {
        #[command(flatten)]
        source: Source,
    },
    /// Check a matching for blocking pairs
    Verify {
        /// `INSTANCE MATCHING`, or just `MATCHING` together with --fixture
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        /// Delete the couple `MAN,WOMAN` from the instance before checking
        #[arg(long, value_name = "MAN,WOMAN")]
        delete: Option<String>,
    },
    /// Generate an instance file on standard output
    Gen {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenMode::Random)]
        mode: GenMode,
        /// Attempt cap for worst-case rejection sampling
        #[arg(long, default_value_t = DEFAULT_ATTEMPT_CAP)]
        attempts: u64,
    },
    /// Emit the step-count table as CSV
    Bench {
        n_min: u64,
        n_max: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Analytic)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Instance file
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    file: Option<PathBuf>,
    /// Built-in instance: paper-4x4, two-by-two or singleton
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrientationArg {
    Men,
    Women,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EngineArg {
    Sequential,
    Parallel,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenMode {
    Random,
    #[value(alias = "worst_case")]
    WorstCase,
    /// Constructed worst case, any n >= 3
    Planted,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Analytic,
    Empirical,
    Both,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Men => Orientation::MenPropose,
            OrientationArg::Women => Orientation::WomenPropose,
        }
    }
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Sequential => Engine::Sequential,
            EngineArg::Parallel => Engine::Parallel,
        }
    }
}

impl From<ModeArg> for BenchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Analytic => BenchMode::Analytic,
            ModeArg::Empirical => BenchMode::Empirical,
            ModeArg::Both => BenchMode::Both,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::NotPermutation { .. }
            | Error::InvalidInstance(_)
            | Error::NotOneToOne(_)
            | Error::UnknownId { .. }
            | Error::InvalidRange(_) => 2,
            Error::InstanceTooSmall { .. } => 3,
            Error::GeneratorExhausted { .. } => 5,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

// Reported outcome that is not an error but still sets a non-zero status.
struct Report {
    stdout: String,
    code: u8,
}

impl From<String> for Report {
    fn from(stdout: String) -> Self {
        Report { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Solve {
            source,
            orientation,
            engine,
        } => cmd_solve(&load(&source)?, orientation.into(), engine.into()).map(Report::from),
        Command::ModGsa { source, engine } => {
            cmd_mod_gsa(&load(&source)?, engine.into()).map(Report::from)
        }
        Command::ParGsa { source } => cmd_mod_gsa(&load(&source)?, Engine::Parallel).map(Report::from),
        Command::Verify {
            files,
            fixture,
            delete,
        } => cmd_verify(&files, fixture.as_deref(), delete.as_deref()),
        Command::Gen {
            n,
            seed,
            mode,
            attempts,
        } => cmd_gen(n, seed, mode, attempts).map(Report::from),
        Command::Bench {
            n_min,
            n_max,
            mode,
            seed,
        } => {
            let mode = mode.into();
            let rows = bench_table(n_min, n_max, mode, seed)?;
            Ok(to_csv(&rows, mode).into())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn fixture(name: &str) -> Result<PreferenceInstance, Failure> {
    fixtures::by_name(name).ok_or_else(|| Failure::new(2, format!("unknown fixture {name:?}")))
}

fn load(source: &Source) -> Result<PreferenceInstance, Failure> {
    match (&source.fixture, &source.file) {
        (Some(name), _) => fixture(name),
        (None, Some(path)) => Ok(parse_instance(&read(path)?)?),
        (None, None) => Err(Failure::new(2, "no instance given")),
    }
}

fn write_pairs(out: &mut String, m: &Matching, indent: &str) {
    for (man, woman) in m.pairs() {
        let _ = writeln!(out, "{indent}{man} -> {woman}");
    }
}

fn cmd_solve(inst: &PreferenceInstance, orientation: Orientation, engine: Engine) -> Result<String, Failure> {
    let (m, c) = match engine {
        Engine::Sequential => gsa_solve(inst, orientation),
        Engine::Parallel => pargsa_solve_with(inst, orientation, Schedule::Concurrent),
    };
    if !is_stable(inst, &m)?.is_stable() {
        return Err(Failure::new(1, "engine produced an unstable matching"));
    }
    let mut out = String::new();
    write_pairs(&mut out, &m, "");
    let _ = writeln!(out, "proposals: {}", c.proposals);
    Ok(out)
}

fn cmd_mod_gsa(inst: &PreferenceInstance, engine: Engine) -> Result<String, Failure> {
    let r: ModGsaResult = mod_gsa(inst, engine)?;
    let mut out = String::new();
    if !r.worst_case.unique_stable {
        out.push_str("WARNING: instance is not a worst-case scenario (more than one stable matching)\n");
    }
    let _ = writeln!(out, "engine: {}", r.engine);
    let _ = writeln!(
        out,
        "baseline: score={} proposals={}",
        r.baseline_score, r.baseline_proposals.proposals
    );
    write_pairs(&mut out, &r.baseline, "  ");
    out.push_str("trials:\n");
    for t in &r.trials {
        let (m, w) = t.deleted_pair;
        let _ = writeln!(
            out,
            "  ({m},{w}) score={} proposals={}",
            t.trial_score, t.proposals.proposals
        );
    }
    let chosen = r.chosen();
    let (m, w) = chosen.deleted_pair;
    let _ = writeln!(out, "chosen: ({m},{w}) score={}", chosen.trial_score);
    let _ = writeln!(out, "improved: {}", r.improved);
    out.push_str("final matching:\n");
    write_pairs(&mut out, &chosen.matching, "  ");
    let _ = writeln!(out, "excluded couple: ({m},{w})");
    Ok(out)
}

fn parse_couple(text: &str) -> Result<(ManId, WomanId), Failure> {
    let bad = || Failure::new(2, format!("expected MAN,WOMAN ids, got {text:?}"));
    let (m, w) = text.split_once(',').ok_or_else(bad)?;
    let id = |s: &str| s.trim().trim_start_matches(['M', 'W', 'm', 'w']).parse::<u32>().map_err(|_| bad());
    Ok((ManId(id(m)?), WomanId(id(w)?)))
}

fn cmd_verify(files: &[PathBuf], fixture_name: Option<&str>, delete: Option<&str>) -> Result<Report, Failure> {
    let (mut inst, matching_path) = match (fixture_name, files) {
        (Some(name), [matching]) => (fixture(name)?, matching),
        (None, [instance, matching]) => (parse_instance(&read(instance)?)?, matching),
        (Some(_), _) => return Err(Failure::new(2, "with --fixture give only the matching file")),
        (None, _) => return Err(Failure::new(2, "expected INSTANCE MATCHING")),
    };
    if let Some(couple) = delete {
        let (m, w) = parse_couple(couple)?;
        inst = inst.delete_pair(m, w)?;
    }
    let matching = parse_matching(&read(matching_path)?)?;
    Ok(match is_stable(&inst, &matching)? {
        Stability::Stable => Report {
            stdout: "STABLE\n".into(),
            code: 0,
        },
        Stability::Blocked(m, w) => Report {
            stdout: format!("UNSTABLE: blocking pair ({m},{w})\n"),
            code: 4,
        },
    })
}

fn cmd_gen(n: usize, seed: u64, mode: GenMode, attempts: u64) -> Result<String, Failure> {
    if n < 1 {
        return Err(Failure::new(3, "n must be at least 1"));
    }
    let inst = match mode {
        GenMode::Random => random_instance_seeded(n, seed),
        GenMode::WorstCase => {
            let (inst, used) = worst_case_by_rejection(n, seed, attempts)?;
            eprintln!("worst-case instance found after {used} attempts");
            inst
        }
        GenMode::Planted => planted_worst_case(n, &mut rng_from_seed(seed))?,
    };
    Ok(serialize_instance(&inst))
}
