//! `tempnet`: run the analysis pipeline headlessly and export the view data
//! as JSON, optionally serving it over HTTP afterwards.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::Parser;
use tempnet_core::ingest::{parse_edge_list, parse_metadata, IngestOptions};
use tempnet_core::sampling::{SamplingMethod, SamplingSpec};
use tempnet_core::slicing::{default_window, suggest_slice_counts};
use tempnet_core::{analyze, build_network, views, AnalysisConfig, Error, TemporalNetwork};
use tempnet_server::AppState;

#[derive(Debug, Parser)]
#[command(name = "tempnet", version, about = "Temporal community analysis")]
struct Args {
    /// Edge list: `source target timestamp` per line.
    #[arg(long, required_unless_present = "serve")]
    edges: Option<PathBuf>,

    /// Node labels: `node,label` per line.
    #[arg(long)]
    metadata: Option<PathBuf>,

    /// Number of uniform timeslices; defaults to the suggested count.
    #[arg(long)]
    timeslices: Option<usize>,

    #[arg(long, default_value_t = 3)]
    min_community_size: usize,

    /// none | node:F | edge:F | snowball[:SEEDS[:WAVES]]
    #[arg(long, default_value = "none")]
    sampling: SamplingMethod,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Minimum overlap similarity for linking communities across slices.
    #[arg(long, default_value_t = 0.5)]
    tau: f64,

    /// Write the JSON export here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Start the HTTP server afterwards, preloaded with the result.
    #[arg(long)]
    serve: bool,

    /// Server port; defaults to $PORT or 8080.
    #[arg(long)]
    port: Option<u16>,

    /// Print the suggested slice counts (min default max) and exit.
    #[arg(long)]
    suggest_only: bool,

    /// Divide raw timestamps by this bin width.
    #[arg(long, default_value_t = 1)]
    time_bin: i64,

    /// Skip the first record of the edge list.
    #[arg(long)]
    header: bool,

    /// Zero-based source,target,timestamp column indices.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    columns: Vec<usize>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn ingest_failure(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, error: e.into() }
}

fn usage_failure(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: e.into() }
}

fn classify(e: Error) -> Failure {
    match e {
        Error::InvalidConfig(_) | Error::InvalidSampling(_) | Error::InvalidSliceCount { .. } => usage_failure(e),
        _ => ingest_failure(e),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(args: Args) -> Result<(), Failure> {
    if args.columns.len() != 3 {
        return Err(usage_failure(anyhow!("--columns takes three indices, got {}", args.columns.len())));
    }
    let ingest = IngestOptions {
        has_header: args.header,
        source_column: args.columns[0],
        target_column: args.columns[1],
        timestamp_column: args.columns[2],
        time_bin: args.time_bin,
        ..Default::default()
    };
    ingest.validate().map_err(usage_failure)?;
    let config = AnalysisConfig {
        slice_count: args.timeslices,
        min_community_size: args.min_community_size,
        sampling: SamplingSpec::new(args.sampling, args.seed),
        seed: args.seed,
        tau: args.tau,
        ..Default::default()
    };
    config.validate().map_err(usage_failure)?;

    let Some(edges) = &args.edges else {
        return serve(Arc::new(AppState::default()), args.port);
    };
    let net = load(edges, args.metadata.as_deref(), &ingest)?;

    if args.suggest_only {
        let s = suggest_slice_counts(&net, default_window(&net), config.suggestion_baseline);
        println!("{} {} {}", s.min_count, s.default_count, s.max_count);
        return Ok(());
    }

    let clock = Instant::now();
    let result = analyze(&net, &config).map_err(classify)?;
    let export = views::export(&result).map_err(ingest_failure)?;
    let json = serde_json::to_string(&export).map_err(ingest_failure)?;
    let summary = format!(
        "{} slices, {} communities, mean modularity {:.4}, {:.2} s",
        result.slices.len(),
        result.communities.len(),
        result.mean_modularity,
        clock.elapsed().as_secs_f64()
    );
    match &args.out {
        Some(path) => {
            std::fs::write(path, json)
                .with_context(|| format!("writing {}", path.display()))
                .map_err(ingest_failure)?;
            println!("{summary}");
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(ingest_failure)?;
            eprintln!("{summary}");
        }
    }

    if args.serve {
        let state = Arc::new(AppState::default());
        let id = state.insert(result);
        eprintln!("analysis id {id}");
        serve(state, args.port)?;
    }
    Ok(())
}

fn load(edges: &Path, metadata: Option<&Path>, opts: &IngestOptions) -> Result<TemporalNetwork, Failure> {
    let text = std::fs::read(edges)
        .with_context(|| format!("reading {}", edges.display()))
        .map_err(ingest_failure)?;
    let parsed = parse_edge_list(&text, opts).map_err(|e| match &e {
        Error::NoValidEdges { issues } => {
            report_issues(edges, issues);
            ingest_failure(e)
        }
        _ => usage_failure(e),
    })?;
    report_issues(edges, &parsed.issues);

    let labels = match metadata {
        Some(path) => {
            let text = std::fs::read(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(ingest_failure)?;
            let meta = parse_metadata(&text);
            report_issues(path, &meta.issues);
            Some(meta.labels)
        }
        None => None,
    };
    let (net, report) = build_network(parsed.edges, labels.as_ref()).map_err(ingest_failure)?;
    if !report.metadata_dropped.is_empty() {
        eprintln!("warning: {} metadata entries name no node", report.metadata_dropped.len());
    }
    Ok(net)
}

fn report_issues(path: &Path, issues: &[tempnet_core::ingest::LineIssue]) {
    for issue in issues.iter().take(10) {
        eprintln!("warning: {}:{}: {}", path.display(), issue.line, issue.kind);
    }
    if issues.len() > 10 {
        eprintln!("warning: {} more malformed lines", issues.len() - 10);
    }
}

fn serve(state: Arc<AppState>, port: Option<u16>) -> Result<(), Failure> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let port = port.unwrap_or_else(tempnet_server::port_from_env);
    let runtime = tokio::runtime::Runtime::new().map_err(ingest_failure)?;
    runtime
        .block_on(tempnet_server::serve(state, port))
        .map_err(|e| Failure {
            code: 1,
            error: anyhow!(e).context(format!("serving on port {port}")),
        })
}
