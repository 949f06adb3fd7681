use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pathchrom_core::constructions::mycielski;
use pathchrom_core::dp::{
    path_chromatic_at_most_with, path_chromatic_number_with, special_enumeration_with, DpConfig,
};
use pathchrom_core::io::{self as gio, LoadedDecomposition};
use pathchrom_core::{
    chromatic_decision, chromatic_number, decomposition_chromatic_number, make_complete,
    make_cycle, r_product, validate_tree_decomposition, Decomposition, Execution, Graph,
};
use pathchrom_verify::report::{to_json, SCHEMA_VERSION};
use pathchrom_verify::{
    claims, default_plan, recheck, run_claim, run_plan, ClaimReport, Params, ReportSet, RunOptions,
};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "pathchrom",
    version,
    about = "Exact path-chromatic numbers, decompositions and claim checks"
)]
struct Cli {
    /// Graph file format; by default `.json` files (or text starting with `{`) are JSON, the rest DIMACS.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Let the subset DP go past 28 vertices (up to 34).
    #[arg(long, global = true)]
    size_override: bool,
    /// Worker threads for `verify all`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for the randomized test corpora.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Record wall-clock times (reports are no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dimacs,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number with an optimal colouring.
    Chromatic { file: PathBuf },
    /// Path-chromatic number, or the decision `χ_P <= K` with `--max-k`.
    PathChromatic {
        file: PathBuf,
        #[arg(long)]
        max_k: Option<usize>,
        /// Include a witness enumeration.
        #[arg(long)]
        witness: bool,
    },
    /// Search for a special enumeration.
    Special { file: PathBuf },
    /// Emit a graph from one of the built-in families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Decomposition utilities.
    Decomp {
        #[command(subcommand)]
        action: DecompAction,
    },
    /// Run a claim (`verify <id> key=value ...`), every claim (`verify all`), or list them (`verify list`).
    Verify { claim: String, params: Vec<String> },
    /// Re-validate the certificates in a report file without searching.
    Recheck { file: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Mycielski {
        k: usize,
    },
    /// `R_m(G)` for the graph in `file`.
    Rm {
        m: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum DecompAction {
    /// Validate a decomposition file against a graph and report its chromatic number.
    Check {
        graph: PathBuf,
        decomposition: PathBuf,
    },
}

/// Exit status 2: bad input or usage.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<ExitCode, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Chromatic { file } => {
            let g = read_graph(file, cli.format)?;
            let chi = chromatic_number(&g);
            let coloring = chromatic_decision(&g, chi).expect("χ colours suffice");
            emit(
                cli,
                &json!({ "schema": SCHEMA_VERSION, "order": g.order(), "chromatic_number": chi, "coloring": coloring.colors }),
            )
        }
        Command::PathChromatic {
            file,
            max_k,
            witness,
        } => {
            let g = read_graph(file, cli.format)?;
            let config = dp_config(cli);
            let report = match max_k {
                Some(k) => path_chromatic_at_most_with(&g, *k, &config)?,
                None => path_chromatic_number_with(&g, &config)?,
            };
            let mut out = json!({
                "schema": SCHEMA_VERSION,
                "order": g.order(),
                "states_explored": report.states_explored,
                "bag_cache_hits": report.bag_cache_hits,
            });
            match max_k {
                Some(k) => {
                    out["max_k"] = json!(k);
                    out["at_most"] = json!(report.decision());
                }
                None => out["path_chromatic_number"] = json!(report.value()),
            }
            if *witness {
                out["witness"] = json!(report.witness);
            }
            if cli.timings {
                out["elapsed_ms"] = json!(report.elapsed.as_millis() as u64);
            }
            emit(cli, &out)
        }
        Command::Special { file } => {
            let g = read_graph(file, cli.format)?;
            let config = dp_config(cli);
            let value = path_chromatic_number_with(&g, &config)?.value();
            let special = special_enumeration_with(&g, &config)?;
            emit(
                cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "path_chromatic_number": value,
                    "special": special.decision(),
                    "witness": special.witness,
                }),
            )
        }
        Command::Construct { family } => {
            let g = match family {
                Family::Cycle { n } => make_cycle(*n)?,
                Family::Complete { n } => make_complete(*n)?,
                Family::Mycielski { k } => mycielski(*k)?.graph,
                Family::Rm { m, file } => r_product(&read_graph(file, cli.format)?, *m)?
                    .graph()
                    .clone(),
            };
            let text = match cli.format.unwrap_or(Format::Dimacs) {
                Format::Dimacs => gio::write_dimacs(&g),
                Format::Json => gio::graph_to_json(&g),
            };
            write_out(cli, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decomp {
            action:
                DecompAction::Check {
                    graph,
                    decomposition,
                },
        } => {
            let g = read_graph(graph, cli.format)?;
            let loaded = gio::decomposition_from_json(&read_text(decomposition)?)?;
            let (kind, violation, chi) = match &loaded {
                LoadedDecomposition::Path(p) => ("path", p.validate(&g)?, chi_if_valid(&g, p)?),
                LoadedDecomposition::Tree(t) => (
                    "tree",
                    validate_tree_decomposition(&g, t)?,
                    chi_if_valid(&g, t)?,
                ),
            };
            let valid = violation.is_none();
            emit(
                cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "kind": kind,
                    "valid": valid,
                    "violation": violation.map(|v| json!({ "detail": v.to_string(), "axiom": v })),
                    "chromatic_number": chi,
                }),
            )?;
            Ok(if valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { claim, params } => verify(cli, claim, params),
        Command::Recheck { file } => {
            let text = read_text(file)?;
            let reports: Vec<ClaimReport> = match serde_json::from_str::<ReportSet>(&text) {
                Ok(set) => set.reports,
                Err(_) => vec![serde_json::from_str::<ClaimReport>(&text)?],
            };
            let mut bad = 0;
            for r in &reports {
                match recheck(r) {
                    Ok(()) => println!("ok      {} {}", r.claim_id, r.verdict.label()),
                    Err(e) => {
                        bad += 1;
                        println!("REJECT  {} {e}", r.claim_id);
                    }
                }
            }
            Ok(if bad == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn chi_if_valid(g: &Graph, d: &dyn Decomposition) -> Result<Option<usize>, UsageError> {
    Ok(match d.validate(g)? {
        None => Some(decomposition_chromatic_number(g, d)?),
        Some(_) => None,
    })
}

fn verify(cli: &Cli, claim: &str, params: &[String]) -> CliResult {
    let opts = RunOptions {
        size_override: cli.size_override,
        seed: cli.seed,
        timings: cli.timings,
        execution: Execution::default(),
    };
    match claim {
        "list" => {
            let mut text = String::new();
            for c in claims::CLAIMS {
                let defaults: Vec<String> =
                    c.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                text += &format!(
                    "{:<24} {}\n{:<24} defaults: {}\n",
                    c.id,
                    c.statement,
                    "",
                    defaults.join(" ")
                );
            }
            write_out(cli, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        "all" => {
            if !params.is_empty() {
                return Err(UsageError("`verify all` takes no parameters".into()));
            }
            let set = ReportSet::new(run_plan(&default_plan(), &opts, cli.jobs)?);
            write_out(cli, &to_json(&set))?;
            for r in &set.reports {
                eprintln!("{:<8} {:<24} {}", r.verdict.label(), r.claim_id, r.summary);
            }
            Ok(if set.any_failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        id => {
            let report = run_claim(id, &parse_params(params)?, &opts)?;
            write_out(cli, &to_json(&report))?;
            Ok(if report.verdict.is_fail() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn parse_params(raw: &[String]) -> Result<Params, UsageError> {
    raw.iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| UsageError(format!("parameter `{p}` is not key=value")))?;
            let v = v.parse::<u64>().map_err(|_| {
                UsageError(format!(
                    "parameter `{k}` needs a non-negative integer, got `{v}`"
                ))
            })?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn dp_config(cli: &Cli) -> DpConfig {
    DpConfig {
        execution: Execution::default(),
        size_override: cli.size_override,
    }
}

fn read_text(path: &Path) -> Result<String, UsageError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, UsageError> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| {
        let json_name = path.extension().is_some_and(|e| e == "json");
        if json_name || text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Dimacs
        }
    });
    let parsed = match format {
        Format::Dimacs => gio::parse_dimacs(&text),
        Format::Json => gio::graph_from_json(&text),
    };
    parsed.map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> CliResult {
    write_out(cli, &to_json(value))?;
    Ok(ExitCode::SUCCESS)
}

/// Standard output, or `--out` written through a temporary file and renamed
/// so readers never see a partial report.
fn write_out(cli: &Cli, text: &str) -> Result<(), UsageError> {
    match &cli.out {
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.clone().into_os_string();
            tmp.push(".tmp");
            fs::write(&tmp, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            fs::rename(&tmp, path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok(())
        }
    }
}
