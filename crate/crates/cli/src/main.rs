use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cosetspec::case_doc::parse_case;
use cosetspec::catalog::{parse_families, run_catalog, run_cases, CaseOutcome};
use cosetspec::pipeline::{build_case, AnalyzeOptions};
use cosetspec::report::{exit_code, to_csv_string, to_json_string};
use cosetspec::spectral::build_bipartite;

#[derive(Parser)]
#[command(name = "cosetspec", version, about = "Singular-value checks for vertex-transitive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one case document.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Relative slack for λ₁ = k|G_v|, the converse bound and ‖𝒜f‖ ≤ λ₂‖f‖ [default: 1e-9]
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// [default: 4000]
        #[arg(long)]
        max_vertices: Option<usize>,
        /// [default: 1000000]
        #[arg(long)]
        max_group_order: Option<u128>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Print the bipartite adjacency matrix to stderr.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Run built-in families, e.g. `complete,kneser:5..6`, or `all`.
    Catalog {
        #[arg(long, default_value = "all")]
        families: String,
        /// Report path; a `.json` extension selects JSON, anything else CSV.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn render(outcomes: &[CaseOutcome], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => to_csv_string(outcomes)?,
        Format::Json => to_json_string(outcomes)?,
    })
}

fn report_failures(outcomes: &[CaseOutcome]) {
    for o in outcomes {
        match o {
            CaseOutcome::Failed { error, .. } => eprintln!("error: {error}"),
            CaseOutcome::Ok(r) if !r.normative_ok => eprintln!("check failed: {}", r.name),
            CaseOutcome::Ok(_) => {}
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, tol, seed, max_vertices, max_group_order, format, dump_matrix } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let spec = parse_case(&text).with_context(|| format!("parsing {}", input.display()))?;
            let mut opts = AnalyzeOptions::default().overridden_by(&spec.options);
            opts.tol = tol.unwrap_or(opts.tol);
            opts.seed = seed.unwrap_or(opts.seed);
            opts.max_vertices = max_vertices.unwrap_or(opts.max_vertices);
            opts.max_group_order = max_group_order.unwrap_or(opts.max_group_order);
            anyhow::ensure!(opts.tol >= 0.0 && opts.tol.is_finite(), "tolerance must be a finite non-negative number");

            let mut spec = spec;
            spec.options = Default::default();
            let outcomes = run_cases(std::slice::from_ref(&spec), &opts, 1)?;
            if let [CaseOutcome::Failed { error, .. }] = outcomes.as_slice() {
                return Err(error.clone().into());
            }
            if dump_matrix {
                let case = build_case(&spec, &opts)?;
                let adj = build_bipartite(case.connection_set(), case.vertex_count())?;
                eprint!("{}", adj.dump());
            }
            print!("{}", render(&outcomes, format)?);
            report_failures(&outcomes);
            Ok(exit_code(&outcomes) as u8)
        }
        Command::Catalog { families, out, jobs, seed } => {
            let families = parse_families(&families)?;
            let mut opts = AnalyzeOptions::default();
            opts.seed = seed.unwrap_or(opts.seed);
            let outcomes = run_catalog(&families, &opts, jobs)?;
            let format = match out.extension().and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                _ => Format::Csv,
            };
            fs::write(&out, render(&outcomes, format)?).with_context(|| format!("writing {}", out.display()))?;
            report_failures(&outcomes);
            Ok(exit_code(&outcomes) as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
