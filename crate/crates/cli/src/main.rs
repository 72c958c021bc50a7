mod analysis;
mod settings;
mod verify;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use snarkit::constructions::{generate, treelike_snark, TreelikeSpec};
use snarkit::graph::{parse_graph_line, write_edge_list, write_graph_line};

use analysis::{Analysis, Context};
use settings::{Flags, Format, Settings, THREADS_ENV};

const SCHEMA: u64 = 1;
const CHUNK: usize = 256;
const EXIT_FAILURE: u8 = 1;
const EXIT_INDETERMINATE: u8 = 3;

/// Exact snark parameters for cubic graphs read as graph6/sparse6 lines.
#[derive(Parser, Debug)]
#[command(name = "snarkit", version)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, size, girth, cyclic connectivity, canonical digest.
    Info(Input),
    /// Chromatic index with a colouring.
    Chi(Input),
    /// Perfect matching index and S4 / S5+ classification.
    Chie(Input),
    /// Least number of perfect matchings whose addition gives Class I.
    L(Input),
    /// Least number of copies of one matching giving Class I.
    Lm {
        #[command(flatten)]
        input: Input,
        /// Index into the enumerated matching list (all if omitted).
        #[arg(long)]
        matching: Option<usize>,
    },
    /// Per-matching table of G + tM up to --tmax.
    Frumious(Input),
    /// Shortest cycle cover.
    Scc(Input),
    /// A cycle double cover from four matchings or through a 2-factor.
    Cdc(Input),
    /// Three perfect matchings with no edge common to all.
    FanRaspaud(Input),
    /// Membership of t in sp(G) and sp2(G).
    Sp(Input),
    /// Several analyses per graph.
    Batch {
        #[command(flatten)]
        input: Input,
        /// Comma-separated analyses.
        #[arg(long, value_delimiter = ',', default_value = "info,chie")]
        select: Vec<String>,
    },
    /// Print a generated graph as one graph6/sparse6 line.
    Construct {
        /// Generator name, or "treelike" with --spec.
        name: String,
        parameter: Option<usize>,
        /// Tree specification for "treelike" (JSON).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Print the "n m / u v mult" edge list instead.
        #[arg(long)]
        edge_list: bool,
    },
    /// Re-check every witness in a report stream.
    Verify(Input),
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Input file; standard input when omitted or "-".
    input: Option<PathBuf>,
}

fn open(input: &Input) -> Result<Box<dyn BufRead>> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Ok(Box::new(BufReader::new(f)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

struct Record {
    value: Value,
    rows: Vec<[String; 3]>,
    indeterminate: bool,
    failed: bool,
}

fn analyse(index: usize, line: &str, selected: &[Analysis], settings: &Settings, matching: Option<usize>) -> Record {
    let start = Instant::now();
    let g = match parse_graph_line(line) {
        Ok(g) => g,
        Err(e) => {
            return Record {
                value: json!({ "schema": SCHEMA, "index": index, "error": e.to_string() }),
                rows: vec![["-".into(), "error".into(), e.to_string()]],
                indeterminate: false,
                failed: true,
            }
        }
    };
    let mut cx = Context::new(&g, settings, matching);
    let mut results = serde_json::Map::new();
    let mut rows = Vec::new();
    let (mut indeterminate, mut failed) = (false, false);
    for &a in selected {
        let t = Instant::now();
        match analysis::run(a, &mut cx) {
            Ok(o) => {
                indeterminate |= o.indeterminate;
                let mut v = o.value;
                if let Value::Object(m) = &mut v {
                    m.insert("elapsed_ms".into(), json!(t.elapsed().as_secs_f64() * 1e3));
                }
                results.insert(a.name().into(), v);
                rows.push([a.name().into(), o.summary, format!("{:.3}", t.elapsed().as_secs_f64() * 1e3)]);
            }
            Err(e) => {
                failed = true;
                results.insert(a.name().into(), json!({ "error": e.to_string() }));
                rows.push([a.name().into(), format!("error: {e}"), String::new()]);
            }
        }
    }
    let value = json!({
        "schema": SCHEMA,
        "index": index,
        "graph": line,
        "digest": g.digest(),
        "n": g.order(),
        "m": g.edge_count(),
        "results": results,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    let digest = g.digest();
    Record {
        value,
        rows: rows
            .into_iter()
            .map(|[a, s, t]| [format!("{}\t{a}", &digest[..16]), s, t])
            .collect(),
        indeterminate,
        failed,
    }
}

/// Reads graph lines in chunks, analyses each chunk in parallel and writes
/// records in input order.
fn pipeline(input: &Input, selected: &[Analysis], settings: &Settings, matching: Option<usize>) -> Result<u8> {
    let reader = open(input)?;
    let mut out = io::stdout();
    let mut csv = match settings.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["index", "digest", "analysis", "summary", "elapsed_ms"])?;
            Some(w)
        }
        Format::Json => None,
    };
    let (mut indeterminate, mut failed) = (false, false);
    let mut lines = reader
        .lines()
        .map(|l| l.map(|s| s.trim().to_string()))
        .filter(|l| !matches!(l, Ok(s) if s.is_empty() || s.starts_with('#')));
    let mut index = 0;
    loop {
        let chunk: Vec<String> = lines.by_ref().take(CHUNK).collect::<io::Result<_>>()?;
        if chunk.is_empty() {
            break;
        }
        let records: Vec<Record> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, line)| analyse(index + i, line, selected, settings, matching))
            .collect();
        for (i, r) in records.into_iter().enumerate() {
            indeterminate |= r.indeterminate;
            failed |= r.failed;
            match &mut csv {
                Some(w) => {
                    for [dg, summary, ms] in &r.rows {
                        let (digest, name) = dg.split_once('\t').unwrap_or(("-", dg));
                        w.write_record([(index + i).to_string().as_str(), digest, name, summary, ms])?;
                    }
                    w.flush()?;
                }
                None => writeln!(out, "{}", serde_json::to_string(&r.value)?)?,
            }
        }
        index += chunk.len();
        out.flush()?;
    }
    Ok(if failed {
        EXIT_FAILURE
    } else if indeterminate {
        EXIT_INDETERMINATE
    } else {
        0
    })
}

fn verify_stream(input: &Input) -> Result<u8> {
    let reader = open(input)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let outcome = serde_json::from_str::<Value>(&line)
            .map_err(anyhow::Error::from)
            .and_then(|v| verify::verify_record(&v));
        let v = match outcome {
            Ok(checked) => json!({ "schema": SCHEMA, "line": i, "verified": true, "witnesses": checked }),
            Err(e) => {
                failed = true;
                json!({ "schema": SCHEMA, "line": i, "verified": false, "problem": format!("{e:#}") })
            }
        };
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
    }
    Ok(if failed { EXIT_FAILURE } else { 0 })
}

fn construct(name: &str, parameter: Option<usize>, spec: Option<&PathBuf>, edge_list: bool) -> Result<u8> {
    let g = if name == "treelike" {
        let path = spec.context("treelike needs --spec")?;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        treelike_snark(&TreelikeSpec::from_json(&text)?)?
    } else {
        generate(name, parameter)?
    };
    if edge_list {
        print!("{}", write_edge_list(&g));
    } else {
        println!("{}", write_graph_line(&g));
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let settings = Settings::resolve(&cli.flags, std::env::var(THREADS_ENV).ok())?;
    if let Some(n) = settings.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let single = |a: Analysis, input: &Input| pipeline(input, &[a], &settings, None);
    match &cli.command {
        Command::Info(i) => single(Analysis::Info, i),
        Command::Chi(i) => single(Analysis::Chi, i),
        Command::Chie(i) => single(Analysis::Chie, i),
        Command::L(i) => single(Analysis::L, i),
        Command::Lm { input, matching } => pipeline(input, &[Analysis::Lm], &settings, *matching),
        Command::Frumious(i) => single(Analysis::Frumious, i),
        Command::Scc(i) => single(Analysis::Scc, i),
        Command::Cdc(i) => single(Analysis::Cdc, i),
        Command::FanRaspaud(i) => single(Analysis::FanRaspaud, i),
        Command::Sp(i) => single(Analysis::Sp, i),
        Command::Batch { input, select } => {
            let selected = select
                .iter()
                .map(|s| s.trim().parse())
                .collect::<Result<Vec<Analysis>>>()?;
            pipeline(input, &selected, &settings, None)
        }
        Command::Construct { name, parameter, spec, edge_list } => {
            construct(name, *parameter, spec.as_ref(), *edge_list)
        }
        Command::Verify(i) => verify_stream(i),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("snarkit: {e:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
