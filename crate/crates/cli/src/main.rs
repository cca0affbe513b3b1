use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use spectral_certifier::classify::{classify, Check};
use spectral_certifier::energy::bound_report;
use spectral_certifier::families::catalog;
use spectral_certifier::graph::Graph;
use spectral_certifier::io::{parse_graph_text, write_edge_list, write_graph6, write_report, ReportFormat};
use spectral_certifier::recipe::build_recipe;
use spectral_certifier::spectra::{exact_spectrum, float_spectrum, DEFAULT_CLUSTER_TOLERANCE};
use spectral_certifier::survey::{run_survey, Source, SurveyConfig, SurveySummary};

const THREADS_ENV: &str = "SPECTRAL_CERTIFIER_THREADS";

#[derive(Parser)]
#[command(name = "spectral-certifier", version, about = "Build, classify and certify graphs with few absolute eigenvalues")]
struct Cli {
    /// Omit the timestamp from JSON output.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a catalog key or recipe.
    Construct {
        recipe: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        output: GraphFormat,
        /// Write to this path instead of stdout.
        #[arg(short = 'o', long)]
        path: Option<String>,
    },
    /// Print the spectrum of each input graph.
    Spectrum {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOLERANCE)]
        tolerance: f64,
    },
    /// Print the full report of each input graph.
    Classify {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Print energy and bound values of each input graph.
    Bounds {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Classify every graph of a graph6 stream or of the built-in enumeration.
    Scan(ScanArgs),
    /// Run every check and exit nonzero on any failure.
    Verify(ScanArgs),
    /// List catalog entries.
    Catalog {
        /// Also certify each entry's spectrum.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// graph6 file, or `-` for stdin; ignored with --builtin.
    #[arg(default_value = "-")]
    input: String,
    /// Order range such as `2..7`, enumerating every labeled graph.
    #[arg(long)]
    builtin: Option<String>,
    /// Include disconnected graphs.
    #[arg(long)]
    all_graphs: bool,
    /// Permit order 8 in the built-in enumeration.
    #[arg(long)]
    allow_order_eight: bool,
    /// Comma-separated check ids; default all.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Print the full summary as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_graphs(path: &str) -> Result<Vec<Graph>> {
    let text = read_input(path)?;
    let graphs = parse_graph_text(&text)?;
    if graphs.is_empty() {
        bail!("no graphs in input");
    }
    Ok(graphs)
}

fn timestamp(no_timestamp: bool) -> Option<String> {
    if no_timestamp {
        return None;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs().to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").with_context(|| format!("expected a range like 2..7, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn survey_config(args: &ScanArgs) -> Result<SurveyConfig> {
    let mut config = SurveyConfig { connected_only: !args.all_graphs, ..SurveyConfig::default() };
    config.allow_order_eight = args.allow_order_eight;
    config.workers = match std::env::var(THREADS_ENV) {
        Ok(v) => v.parse().with_context(|| format!("{THREADS_ENV}={v} is not a count"))?,
        Err(_) => args.threads.unwrap_or(1),
    };
    if let Some(list) = &args.checks {
        config.checks = list
            .split(',')
            .map(|id| Check::from_id(id.trim()).with_context(|| format!("unknown check `{id}`")))
            .collect::<Result<_>>()?;
    }
    match &args.builtin {
        Some(r) => (config.n_min, config.n_max) = parse_range(r)?,
        None => config.source = Source::Graph6(read_input(&args.input)?.lines().map(str::to_string).collect()),
    }
    Ok(config)
}

fn print_summary(out: &mut impl Write, s: &SurveySummary, json: bool, no_timestamp: bool) -> Result<()> {
    if json {
        let mut v = serde_json::to_value(s)?;
        v["schema"] = 1.into();
        if no_timestamp {
            v.as_object_mut().expect("object").remove("wall_time_ms");
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        return Ok(());
    }
    writeln!(out, "graphs_scanned={}", s.graphs_scanned)?;
    writeln!(out, "uncertified={}", s.uncertified)?;
    writeln!(out, "prefiltered={}", s.prefiltered)?;
    for (p, c) in &s.pattern_counts {
        writeln!(out, "pattern {p}={c}")?;
    }
    for (c, t) in &s.check_tallies {
        writeln!(out, "check {c}: pass={} fail={} n/a={}", t.pass, t.fail, t.not_applicable)?;
    }
    writeln!(out, "G_members={}", s.g_members.len())?;
    writeln!(out, "H_members={}", s.h_members.len())?;
    for f in &s.failures {
        writeln!(out, "FAIL {} {}: {}", f.check, f.graph6, f.detail)?;
    }
    for k in &s.skips {
        writeln!(out, "SKIP {}: {}", k.record, k.reason)?;
    }
    writeln!(out, "failures={}", s.failures.len())?;
    writeln!(out, "skips={}", s.skips.len())?;
    if !no_timestamp {
        writeln!(out, "wall_time_ms={}", s.wall_time_ms)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Construct { recipe, output, path } => {
            let g = build_recipe(&recipe)?;
            let text = match output {
                GraphFormat::Graph6 => format!("{}\n", write_graph6(&g)?),
                GraphFormat::Edges => write_edge_list(&g),
            };
            match path {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {p}"))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Spectrum { input, exact, float, tolerance } => {
            for g in read_graphs(&input)? {
                if float {
                    writeln!(out, "{}", float_spectrum(&g, tolerance)?)?;
                    continue;
                }
                let s = exact_spectrum(&g)?;
                if exact && !s.is_certified() {
                    bail!("spectrum could not be certified exactly: {s}");
                }
                writeln!(out, "{s}")?;
            }
        }
        Command::Classify { input, format } => {
            let format: ReportFormat = format.parse()?;
            let reports = read_graphs(&input)?.iter().map(classify).collect::<Result<Vec<_>, _>>()?;
            write_report(&mut out, &reports, format, timestamp(cli.no_timestamp).as_deref())?;
        }
        Command::Bounds { input } => {
            for g in read_graphs(&input)? {
                let b = bound_report(&g)?;
                writeln!(out, "{}", serde_json::to_string(&b)?)?;
            }
        }
        Command::Scan(args) | Command::Verify(args) => {
            let config = survey_config(&args)?;
            let summary = run_survey(&config)?;
            print_summary(&mut out, &summary, args.json, cli.no_timestamp)?;
            if !summary.is_clean() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Catalog { check } => {
            let mut bad = 0;
            for e in catalog() {
                if check {
                    let got = exact_spectrum(&e.graph)?;
                    let ok = got.exact().map(|s| s.entries()) == Some(e.expected.entries());
                    bad += usize::from(!ok);
                    writeln!(out, "{}\t{}\t{}\t{}", e.key, e.recipe, got, if ok { "ok" } else { "MISMATCH" })?;
                } else {
                    writeln!(out, "{}\t{}\t{}", e.key, e.recipe, e.expected)?;
                }
            }
            if bad > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
