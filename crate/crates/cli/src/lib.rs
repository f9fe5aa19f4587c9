//! Batch front end: argument parsing, file handling and output formatting
//! around the `edgeiso` library. All numbers come from library calls.

pub mod render;
pub mod suites;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use edgeiso::bounds::{self, find_plateaus, Precision};
use edgeiso::exact::{self, cells_json, EnumerationBudget, ExactError, HARD_MAX_VOLUME};
use edgeiso::io::cellset_from_json;
use edgeiso::lattice::{boundary_edges, edge_boundary, vertex_boundary, CellSet};
use edgeiso::reduction::{normalize, ReductionError};
use edgeiso::staircase;
use rayon::prelude::*;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "edgeiso",
    version,
    about = "Edge-isoperimetric computations on integer lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (at least 1).
    #[arg(long, global = true, env = "EDGEISO_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Picture to draw next to a set.
    #[arg(long, global = true, value_enum, default_value_t = RenderKind::None)]
    pub render: RenderKind,

    /// Largest volume searched exhaustively.
    #[arg(long, global = true, default_value_t = exact::DEFAULT_MAX_VOLUME)]
    pub budget_cells: usize,

    /// Precision cap, in bits, for certified floors and ceilings.
    #[arg(long, global = true, default_value_t = edgeiso::interval::DEFAULT_CAP_BITS)]
    pub precision_bits: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Edge and vertex boundary of a set file.
    Boundary {
        file: PathBuf,
        /// Also list every boundary edge.
        #[arg(long)]
        edges: bool,
    },
    /// Bounds, staircase optimum and (within budget) exact optimum per volume.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Runs of consecutive volumes with equal optimal staircase perimeter.
    Plateaus {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        min_len: u64,
    },
    /// Reduce a king-quadrant set to a staircase and print the trace.
    Normalize { file: PathBuf },
    /// Run a named invariant suite.
    Check { suite: String },
    /// Draw a planar set.
    Render { file: PathBuf },
    /// Exhaustive optima for volumes 1..=n.
    Exact {
        #[arg(long)]
        n: usize,
    },
    /// Optimal staircase parameters per volume.
    Staircase {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Ascii,
    Svg,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        let code = match e {
            ExactError::BudgetExceeded { .. } | ExactError::OptimaOverflow { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<bounds::BoundsError> for Failure {
    fn from(e: bounds::BoundsError) -> Self {
        Failure::invariant(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn read_set(path: &PathBuf) -> Result<CellSet, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    cellset_from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn picture(set: &CellSet, kind: RenderKind) -> Result<String, Failure> {
    let drawn = match kind {
        RenderKind::Ascii => render::ascii(set),
        RenderKind::Svg => render::svg(set),
        RenderKind::None => return Ok(String::new()),
    };
    drawn.map_err(|e| Failure::usage(e.to_string()))
}

fn to_json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

fn cmd_boundary(cli: &Cli, file: &PathBuf, edges: bool, out: &mut Vec<u8>) -> Result<(), Failure> {
    let set = read_set(file)?;
    let (e, v) = (edge_boundary(&set), vertex_boundary(&set));
    let list: Vec<(Vec<i64>, Vec<i64>)> = if edges {
        boundary_edges(&set)
            .into_iter()
            .map(|(p, q)| (p.coords().to_vec(), q.coords().to_vec()))
            .collect()
    } else {
        Vec::new()
    };
    match cli.format {
        Format::Json => {
            let mut doc = json!({"edge": e, "vertex": v});
            if edges {
                doc["edges"] = json!(list);
            }
            out.extend(to_json_line(doc).bytes());
        }
        Format::Csv => {
            writeln!(out, "edge={e} vertex={v}")?;
            for (p, q) in &list {
                writeln!(out, "{p:?} {q:?}")?;
            }
        }
    }
    out.extend(picture(&set, cli.render)?.bytes());
    Ok(())
}

fn precision(cli: &Cli) -> Result<Precision, Failure> {
    if cli.precision_bits < 16 {
        return Err(Failure::usage("--precision-bits must be at least 16"));
    }
    let cap = cli.precision_bits;
    Ok(Precision {
        start_bits: Precision::default().start_bits.min(cap),
        cap_bits: cap,
    })
}

fn check_range(from: u64, to: u64) -> Result<(), Failure> {
    if from == 0 || from > to {
        return Err(Failure::usage(format!(
            "need 1 <= --from <= --to, got {from}..{to}"
        )));
    }
    Ok(())
}

fn cmd_table(cli: &Cli, from: u64, to: u64, out: &mut Vec<u8>) -> Result<(), Failure> {
    check_range(from, to)?;
    let reach = (cli.budget_cells as u64).min(to);
    let exact_values: Vec<u32> = if from <= reach {
        let budget = EnumerationBudget::with_max_volume(cli.budget_cells);
        exact::run(reach as usize, &budget)?.values()
    } else {
        Vec::new()
    };
    let lookup = |n: u64| exact_values.get(n as usize - 1).map(|&v| v as u64);
    let rows = bounds::table(from, to, &lookup, precision(cli)?)?;
    match cli.format {
        Format::Csv => bounds::write_csv(&mut *out, &rows)?,
        Format::Json => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "lower": r.lower,
                        "lower_scope": "bounded sets",
                        "staircase_opt": r.staircase_opt,
                        "exact_opt": r.exact_opt,
                        "upper": r.upper,
                        "gap": r.gap(),
                        "relax_value": r.relax.as_ref().map(|m| m.value.mid_f64()),
                        "relax_a1": r.relax.as_ref().map(|m| m.a1.mid_f64()),
                        "relax_c": r.relax.as_ref().map(|m| m.c.mid_f64()),
                    })
                })
                .collect();
            out.extend(to_json_line(json!(docs)).bytes());
        }
    }
    Ok(())
}

fn cmd_plateaus(cli: &Cli, n: u64, min_len: u64, out: &mut Vec<u8>) -> Result<(), Failure> {
    let runs = find_plateaus(n, min_len);
    match cli.format {
        Format::Csv => {
            writeln!(out, "start,length,value")?;
            for p in &runs {
                writeln!(out, "{},{},{}", p.start, p.length, p.value)?;
            }
        }
        Format::Json => {
            let docs: Vec<_> = runs
                .iter()
                .map(|p| json!({"start": p.start, "length": p.length, "value": p.value}))
                .collect();
            out.extend(to_json_line(json!(docs)).bytes());
        }
    }
    Ok(())
}

fn cmd_normalize(cli: &Cli, file: &PathBuf, out: &mut Vec<u8>) -> Result<(), Failure> {
    let set = read_set(file)?;
    let result = normalize(&set).map_err(|e| match e {
        ReductionError::NotKingQuadrant | ReductionError::Empty => Failure::usage(e.to_string()),
        other => Failure::invariant(other.to_string()),
    })?;
    let p = result.params;
    let b = edge_boundary(&result.set);
    match cli.format {
        Format::Csv => {
            writeln!(
                out,
                "a1={} c={} k={} ak={} boundary={b}",
                p.a1, p.c, p.k, p.ak
            )?;
            out.extend(result.trace.to_json_lines().bytes());
        }
        Format::Json => {
            let doc = json!({
                "params": {"a1": p.a1, "c": p.c, "k": p.k, "ak": p.ak},
                "boundary": b,
                "trace": serde_json::to_value(&result.trace.steps).expect("trace"),
            });
            out.extend(to_json_line(doc).bytes());
        }
    }
    out.extend(picture(&result.set, cli.render)?.bytes());
    Ok(())
}

fn cmd_check(cli: &Cli, suite: &str, out: &mut Vec<u8>) -> Result<(), Failure> {
    let Some(r) = suites::run_suite(suite, cli.budget_cells) else {
        return Err(Failure::usage(format!(
            "unknown suite `{suite}`; available: {}",
            suites::SUITES.join(", ")
        )));
    };
    let status = if r.passed { "pass" } else { "FAIL" };
    writeln!(out, "{suite}: {status} ({})", r.detail)?;
    if r.passed {
        Ok(())
    } else {
        Err(Failure::invariant(format!("suite `{suite}` failed")))
    }
}

fn cmd_render(cli: &Cli, file: &PathBuf, out: &mut Vec<u8>) -> Result<(), Failure> {
    let set = read_set(file)?;
    let kind = match cli.render {
        RenderKind::None => RenderKind::Ascii,
        k => k,
    };
    out.extend(picture(&set, kind)?.bytes());
    Ok(())
}

fn cmd_exact(cli: &Cli, n: usize, out: &mut Vec<u8>) -> Result<(), Failure> {
    if cli.budget_cells > HARD_MAX_VOLUME {
        return Err(Failure::usage(format!(
            "--budget-cells is at most {HARD_MAX_VOLUME}"
        )));
    }
    let budget = EnumerationBudget::with_max_volume(cli.budget_cells);
    let result = exact::run(n, &budget)?;
    match cli.format {
        Format::Csv => result.write_csv(&mut *out)?,
        Format::Json => {
            let docs: Vec<_> = result
                .levels
                .iter()
                .map(|lv| {
                    let witness: serde_json::Value = lv
                        .optima
                        .first()
                        .map(|w| serde_json::from_str(&cells_json(w)).expect("json"))
                        .unwrap_or(serde_json::Value::Null);
                    json!({
                        "n": lv.n,
                        "min_boundary": lv.min_boundary,
                        "optima_count": lv.optima_up_to_reflection(),
                        "witness": witness,
                    })
                })
                .collect();
            out.extend(to_json_line(json!(docs)).bytes());
        }
    }
    Ok(())
}

fn cmd_staircase(cli: &Cli, from: u64, to: u64, out: &mut Vec<u8>) -> Result<(), Failure> {
    check_range(from, to)?;
    let rows: Vec<_> = (from..=to)
        .into_par_iter()
        .map(staircase::optimize)
        .collect();
    match cli.format {
        Format::Csv => staircase::write_csv(&mut *out, &rows)?,
        Format::Json => {
            let docs: Vec<_> = rows
                .iter()
                .map(|r| {
                    let p = r.params;
                    json!({"n": r.n, "a1": p.a1, "c": p.c, "k": p.k, "ak": p.ak, "perimeter": r.perimeter})
                })
                .collect();
            out.extend(to_json_line(json!(docs)).bytes());
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<(), Failure> {
    match &cli.command {
        Command::Boundary { file, edges } => cmd_boundary(cli, file, *edges, out),
        Command::Table { from, to } => cmd_table(cli, *from, *to, out),
        Command::Plateaus { n, min_len } => cmd_plateaus(cli, *n, *min_len, out),
        Command::Normalize { file } => cmd_normalize(cli, file, out),
        Command::Check { suite } => cmd_check(cli, suite, out),
        Command::Render { file } => cmd_render(cli, file, out),
        Command::Exact { n } => cmd_exact(cli, *n, out),
        Command::Staircase { from, to } => cmd_staircase(cli, *from, *to, out),
    }
}

/// Runs one command and returns everything it printed. On failure the
/// partial output is kept alongside the error.
pub fn execute(cli: &Cli) -> (Vec<u8>, Result<(), Failure>) {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t as usize);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return (Vec::new(), Err(Failure::usage(e.to_string()))),
    };
    let mut out = Vec::new();
    let status = pool.install(|| dispatch(cli, &mut out));
    (out, status)
}

/// Parses arguments, runs the command, writes the output and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (bytes, status) = execute(&cli);
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("edgeiso: {e}");
        return EXIT_USAGE;
    }
    match status {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("edgeiso: {}", f.message);
            f.code
        }
    }
}
