//! Command-line front end: ingest N-Triples files, classify the graphs
//! against each other, optionally run inference, and emit the network.
//!
//! Exit codes: 0 on success, 1 on input errors (with a `file:line:column`
//! diagnostic on standard error), 2 on usage errors.

use clap::{Parser, ValueEnum};
use rdf_relate::{
    build_network, export_dot, export_json, parse_document, ClassificationMode, InferenceConfig,
    NetworkError, RdfGraph, RelationNetwork,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rdf-relate",
    version,
    about = "Classify set-theoretic relationships between RDF graphs",
    after_help = "Each input file is one graph in N-Triples syntax. The graph id defaults to \
the file stem; `name=path` assigns an explicit id."
)]
struct Cli {
    /// Input N-Triples files (`path` or `name=path`)
    #[arg(required = true, value_name = "FILE")]
    inputs: Vec<String>,

    /// Classification mode
    #[arg(long, value_enum, default_value_t = ModeArg::Lenient)]
    mode: ModeArg,

    /// Apply the RDF Schema rules before classifying
    #[arg(long)]
    infer: bool,

    /// Extra schema triples (N-Triples file), joined in during inference
    #[arg(long, value_name = "PATH", requires = "infer")]
    schema: Option<PathBuf>,

    /// Also apply the domain rule during inference
    #[arg(long, requires = "infer")]
    enable_domain: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write the output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Lenient,
    Strict,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Tsv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { message, code }) => {
            eprintln!("rdf-relate: {message}");
            ExitCode::from(code)
        }
    }
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 1,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 2,
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut graphs = Vec::new();
    for input in &cli.inputs {
        let (id, path) = split_input(input);
        graphs.push(load_graph(&id, path)?);
    }

    let inference = if cli.infer {
        let extra_schema = match &cli.schema {
            Some(path) => {
                let id = file_stem(path);
                load_graph(&id, path)?.triples().clone()
            }
            None => rdf_relate::TripleSet::new("schema"),
        };
        Some(InferenceConfig {
            enable_domain: cli.enable_domain,
            extra_schema,
            ..InferenceConfig::default()
        })
    } else {
        None
    };

    let mode = match cli.mode {
        ModeArg::Lenient => ClassificationMode::Lenient,
        ModeArg::Strict => ClassificationMode::Strict,
    };

    let network = build_network(&graphs, mode, inference.as_ref()).map_err(|e| match e {
        NetworkError::DuplicateGraphId(_) => Failure::usage(e.to_string()),
        other => Failure::input(other.to_string()),
    })?;

    let output = match cli.format {
        FormatArg::Json => export_json(&network),
        FormatArg::Dot => export_dot(&network),
        FormatArg::Tsv => export_tsv(&network),
    };

    match &cli.out {
        Some(path) => fs::write(path, output)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{output}"),
    }
    Ok(())
}

/// `name=path` assigns an explicit graph id; a bare path uses its stem.
fn split_input(input: &str) -> (String, &Path) {
    match input.split_once('=') {
        Some((name, path)) if !name.is_empty() => (name.to_owned(), Path::new(path)),
        _ => {
            let path = Path::new(input);
            (file_stem(path), path)
        }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

fn load_graph(id: &str, path: &Path) -> Result<RdfGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let triples = parse_document(&text, id).map_err(|e| {
        Failure::input(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.kind
        ))
    })?;
    Ok(RdfGraph::new(triples))
}

/// One line per directed edge: `from<TAB>to<TAB>kinds<TAB>dimension`.
fn export_tsv(network: &RelationNetwork) -> String {
    let mut out = String::new();
    for edge in network.edges() {
        let kinds: Vec<&str> = edge.kinds.iter().map(|k| k.name()).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            edge.from,
            edge.to,
            kinds.join(","),
            edge.dimension
        ));
    }
    out
}
