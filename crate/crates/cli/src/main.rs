//! Thin command-line driver: enumeration, action evaluation, orbit tracing,
//! DOT export, and verification campaigns. Exit codes: 0 success, 1
//! verification failure, 2 usage error.

use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use dmcrystal::cactus::{ActionTable, GeneratorWord};
use dmcrystal::heap::{enumerate_rpps, rpp_crystal, Heap};
use dmcrystal::tableau::{enumerate_rows, row_crystal, RowTableau};
use dmcrystal::verify::{run_all, Suite, SuiteConfig};
use dmcrystal::weyl::Weight;
use dmcrystal::CrystalGraph;

#[derive(Parser)]
#[command(name = "dmcrystal", version, about = "Type D crystal combinatorics: tableaux, RPPs, toggles, and the cactus action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Row,
    Rpp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CrystalArgs {
    /// Rank m of the type D diagram (m >= 3)
    #[arg(short = 'm', long = "rank")]
    rank: usize,
    /// Height n (row length)
    #[arg(short = 'n', long = "height")]
    height: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List all elements of B(n·w1) with their weights
    Enumerate {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[arg(long, value_enum, default_value = "row")]
        model: Model,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Apply a generator word to an element; prints the image or "0"
    Act {
        #[command(flatten)]
        crystal: CrystalArgs,
        /// Word such as "c{2,3,4} t1 r2 f3 e1", applied right-to-left
        #[arg(long)]
        word: String,
        /// Element in tableau text form, e.g. "1,2,-3"
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Iterate a word from an element until it returns, printing the cycle
    Orbit {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// DOT export of the crystal graph
    ExportDot {
        #[command(flatten)]
        crystal: CrystalArgs,
        #[arg(long, value_enum, default_value = "row")]
        model: Model,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run verification suites; nonzero exit on any failure
    Verify {
        /// Ranks to verify (repeatable)
        #[arg(short = 'm', long = "rank")]
        ranks: Vec<usize>,
        /// Heights to verify (repeatable)
        #[arg(short = 'n', long = "height")]
        heights: Vec<usize>,
        /// Suite names (repeatable); defaults to all
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Braid-alternate budget for the type D suite
        #[arg(long)]
        alternates: Option<usize>,
        /// Seed for randomized path-independence checks
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt one toggle entry to prove the harness can fail
        #[arg(long)]
        fault: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<String>,
        /// JSON config file mirroring these flags; flags win
        #[arg(long)]
        config: Option<String>,
    },
}

/// JSON mirror of the verify flags.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    ranks: Option<Vec<usize>>,
    heights: Option<Vec<usize>>,
    suites: Option<Vec<String>>,
    alternates: Option<usize>,
    seed: Option<u64>,
}

struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Enumerate { crystal, model, format, out } => {
            let (m, n) = crystal_params(&crystal, None)?;
            emit(out.as_deref(), &enumerate_text(m, n, model, format))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Act { crystal, word, element } => {
            let (at_ctx, b, w) = action_context(&crystal, &word, &element)?;
            let AtCtx { graph, rows, index, .. } = &at_ctx;
            let mut at = ActionTable::new(graph, |i, x| index[&rows[x].toggle(i)]);
            let image = at.evaluate(&w, b).map_err(|e| UsageError(e.to_string()))?;
            match image {
                Some(t) => println!("{}", graph.label(t)),
                None => println!("0"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { crystal, word, element } => {
            let (at_ctx, b, w) = action_context(&crystal, &word, &element)?;
            let AtCtx { graph, rows, index, .. } = &at_ctx;
            let mut at = ActionTable::new(graph, |i, x| index[&rows[x].toggle(i)]);
            println!("{}", graph.label(b));
            let mut cur = b;
            let mut steps = 0usize;
            loop {
                match at.evaluate(&w, cur).map_err(|e| UsageError(e.to_string()))? {
                    None => {
                        println!("0");
                        println!("orbit hits 0 after {} step(s)", steps + 1);
                        return Ok(ExitCode::SUCCESS);
                    }
                    Some(t) => {
                        steps += 1;
                        if t == b {
                            println!("orbit length: {steps}");
                            return Ok(ExitCode::SUCCESS);
                        }
                        println!("{}", graph.label(t));
                        cur = t;
                        // a permutation word returns within the crystal size
                        if steps > graph.len() {
                            println!("no return after {steps} steps; stopping");
                            return Ok(ExitCode::SUCCESS);
                        }
                    }
                }
            }
        }
        Command::ExportDot { crystal, model, out } => {
            let (m, n) = crystal_params(&crystal, None)?;
            let dot = match model {
                Model::Row => row_crystal(m, n).to_dot(),
                Model::Rpp => {
                    let heap = Heap::minuscule(m);
                    rpp_crystal(&heap, n as u32, &Weight::epsilon(m, 0)).to_dot()
                }
            };
            emit(out.as_deref(), &dot)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { ranks, heights, suites, alternates, seed, fault, format, out, config } => {
            let cfg = build_config(ranks, heights, suites, alternates, seed, fault, config)?;
            let report = run_all(&cfg);
            match format {
                Format::Text => print!("{}", report.summary()),
                Format::Json => println!("{}", report.to_json()),
            }
            if let Some(path) = out {
                fs::write(&path, report.to_json())
                    .map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn crystal_params(args: &CrystalArgs, inferred: Option<usize>) -> Result<(usize, usize), UsageError> {
    if args.rank < 3 {
        return Err(UsageError(format!("rank must be >= 3, got {}", args.rank)));
    }
    let n = match (args.height, inferred) {
        (Some(n), Some(h)) if n != h => {
            return Err(UsageError(format!(
                "--height {n} does not match the element height {h}"
            )))
        }
        (Some(n), _) => n,
        (None, Some(h)) => h,
        (None, None) => return Err(UsageError("--height is required".into())),
    };
    Ok((args.rank, n))
}

struct AtCtx {
    graph: CrystalGraph,
    rows: Vec<RowTableau>,
    index: HashMap<RowTableau, usize>,
}

fn action_context(
    crystal: &CrystalArgs,
    word: &str,
    element: &str,
) -> Result<(AtCtx, usize, GeneratorWord), UsageError> {
    if crystal.rank < 3 {
        return Err(UsageError(format!("rank must be >= 3, got {}", crystal.rank)));
    }
    let row = RowTableau::parse(crystal.rank, element)
        .map_err(|e| UsageError(format!("--element: {e}")))?;
    let (m, n) = crystal_params(crystal, Some(row.height()))?;
    let graph = row_crystal(m, n);
    let rows = enumerate_rows(m, n);
    let index: HashMap<RowTableau, usize> =
        rows.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
    let b = index[&row];
    let w = GeneratorWord::parse(word, graph.diagram())
        .map_err(|e| UsageError(format!("--word: {e}")))?;
    Ok((AtCtx { graph, rows, index }, b, w))
}

fn enumerate_text(m: usize, n: usize, model: Model, format: Format) -> String {
    match (model, format) {
        (Model::Row, Format::Text) => {
            let rows = enumerate_rows(m, n);
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("{r}\t{}\n", r.weight()));
            }
            out.push_str(&format!("total {}\n", rows.len()));
            out
        }
        (Model::Rpp, Format::Text) => {
            let heap = Heap::minuscule(m);
            let lambda = Weight::epsilon(m, 0);
            let rpps = enumerate_rpps(&heap, n as u32);
            let mut out = String::new();
            for r in &rpps {
                out.push_str(&format!("{}\t{}\n", r.text(), r.weight(&heap, &lambda)));
            }
            out.push_str(&format!("total {}\n", rpps.len()));
            out
        }
        (Model::Row, Format::Json) => {
            let rows = enumerate_rows(m, n);
            let elements: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "element": r.to_string(),
                        "weight": r.weight(),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "count": rows.len(), "elements": elements });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        (Model::Rpp, Format::Json) => {
            let heap = Heap::minuscule(m);
            let lambda = Weight::epsilon(m, 0);
            let rpps = enumerate_rpps(&heap, n as u32);
            let elements: Vec<serde_json::Value> = rpps
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r.to_file(&heap)).unwrap();
                    v["weight"] = serde_json::to_value(r.weight(&heap, &lambda)).unwrap();
                    v
                })
                .collect();
            let doc = serde_json::json!({ "count": rpps.len(), "elements": elements });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    ranks: Vec<usize>,
    heights: Vec<usize>,
    suites: Vec<String>,
    alternates: Option<usize>,
    seed: Option<u64>,
    fault: bool,
    config_path: Option<String>,
) -> Result<SuiteConfig, UsageError> {
    let file: FileConfig = match config_path {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| UsageError(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("bad config {path}: {e}")))?
        }
        None => FileConfig::default(),
    };
    let defaults = SuiteConfig::default();
    let parse_suites = |names: Vec<String>| -> Result<Vec<Suite>, UsageError> {
        names
            .iter()
            .map(|s| {
                Suite::parse(s).ok_or_else(|| {
                    let all: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                    UsageError(format!("unknown suite \"{s}\"; expected one of {}", all.join(", ")))
                })
            })
            .collect()
    };
    let suites = if !suites.is_empty() {
        parse_suites(suites)?
    } else if let Some(names) = file.suites {
        parse_suites(names)?
    } else {
        defaults.suites.clone()
    };
    let ranks = if !ranks.is_empty() {
        ranks
    } else {
        file.ranks.unwrap_or(defaults.ranks.clone())
    };
    let heights = if !heights.is_empty() {
        heights
    } else {
        file.heights.unwrap_or(defaults.heights.clone())
    };
    for &m in &ranks {
        if m < 3 {
            return Err(UsageError(format!("rank must be >= 3, got {m}")));
        }
    }
    for &n in &heights {
        if n < 1 {
            return Err(UsageError(format!("height must be >= 1, got {n}")));
        }
    }
    Ok(SuiteConfig {
        ranks,
        heights,
        suites,
        alternates_budget: alternates.or(file.alternates).unwrap_or(defaults.alternates_budget),
        seed: seed.or(file.seed).unwrap_or(defaults.seed),
        fault,
    })
}

fn emit(out: Option<&str>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| UsageError(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
