use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use valforge::places::FieldDescriptor;
use valforge::report::{self, ExitKind};
use valforge::scenario::Scenario;
use valforge::Error;

#[derive(Parser)]
#[command(name = "valforge", version, about = "Valuations from K2-mod-p symbols over Q and F_q(t)")]
struct Cli {
    /// Omit timing fields so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The local symbol of {x, y} at one place.
    Symbol {
        #[arg(long)]
        field: FieldDescriptor,
        #[arg(long)]
        place: String,
        #[arg(short, default_value_t = 2)]
        p: u64,
        #[arg(short, allow_hyphen_values = true)]
        x: String,
        #[arg(short, allow_hyphen_values = true)]
        y: String,
    },
    /// Run the full construction on a scenario file.
    Construct { scenario: PathBuf },
    /// Search for a global failure of the hypotheses.
    Search {
        scenario: PathBuf,
        /// Search over the global field (the only mode).
        #[arg(long)]
        global: bool,
    },
    /// Kronecker dimension, 1-defectless check and the local dimension
    /// report.
    Invariants {
        field: FieldDescriptor,
        #[arg(long)]
        place: Option<String>,
        #[arg(short)]
        p: Option<u64>,
        /// Claimed Kronecker dimension, as `n=1` or `1`.
        #[arg(long, value_parser = parse_n)]
        prop2: Option<u32>,
    },
    /// Quick consistency battery.
    Selftest,
}

fn parse_n(s: &str) -> Result<u32, String> {
    s.strip_prefix("n=").unwrap_or(s).parse().map_err(|e| format!("{e}"))
}

fn emit<T: Serialize>(value: &T, pretty: bool, summary: impl FnOnce() -> String) {
    if pretty {
        print!("{}", summary());
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    }
}

fn fail(e: &Error) -> ExitKind {
    let kind = ExitKind::of_error(e);
    let body = serde_json::json!({ "error": e.to_string(), "exit": kind as u8 });
    eprintln!("{body}");
    kind
}

fn configure_threads() {
    if let Some(n) = std::env::var("VALFORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> ExitKind {
    let timing = !cli.no_timing;
    let pretty = cli.pretty;
    match cli.command {
        Command::Symbol { field, place, p, x, y } => match report::symbol_report(field, &place, &x, &y, p) {
            Ok(r) => {
                emit(&r, pretty, || {
                    format!(
                        "{{{}, {}}} at {}: {} (class {} mod {})\n",
                        r.x, r.y, r.symbol.place, r.symbol.value, r.symbol.class, r.p
                    )
                });
                ExitKind::Success
            }
            Err(e) => fail(&e),
        },
        Command::Construct { scenario } => {
            match Scenario::load(&scenario).and_then(|s| report::run_construct(&s, timing)) {
                Ok(r) => {
                    emit(&r, pretty, || r.summary());
                    r.exit()
                }
                Err(e) => fail(&e),
            }
        }
        Command::Search { scenario, .. } => match Scenario::load(&scenario).and_then(|s| report::run_search(&s, timing)) {
            Ok(r) => {
                emit(&r, pretty, || r.summary());
                r.exit()
            }
            Err(e) => fail(&e),
        },
        Command::Invariants { field, place, p, prop2 } => {
            match report::invariants_report(field, place.as_deref(), p, prop2) {
                Ok(r) => {
                    emit(&r, pretty, || {
                        let mut s = format!("{}: Kronecker dimension {}\n", r.field, r.kronecker_dimension);
                        if let Some(d) = &r.defectless {
                            s += &format!("{}: 1-defectless {}\n", d.place, d.one_defectless);
                        }
                        if let Some(sh) = &r.prop2 {
                            s += &format!(
                                "{} ({}): rank {}, cup product {}, value group {}, verdict {}\n",
                                sh.place, sh.scope, sh.h1_rank, sh.cup_product, sh.value_group, sh.verdict
                            );
                        }
                        s
                    });
                    ExitKind::Success
                }
                Err(e) => fail(&e),
            }
        }
        Command::Selftest => {
            let r = report::selftest();
            emit(&r, pretty, || {
                r.checks
                    .iter()
                    .map(|c| format!("{} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name))
                    .collect()
            });
            if r.passed {
                ExitKind::Success
            } else {
                ExitKind::Violation
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitKind::Usage as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    ExitCode::from(run(cli) as u8)
}
