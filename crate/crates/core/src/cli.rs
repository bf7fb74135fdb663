//! The `gnstat` command line.
//!
//! Exit status: 0 success, 1 usage or I/O problem, 2 parse error,
//! 3 unsafe rule, 4 verification mismatch, 5 RIF rules requested.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::inference::{incremental_reduce, reduce};
use crate::provenance::{
    emit_description, load_regime, verify, DatasetRef, FileResolver, NormalisationKind,
    NormalisationSpec, RuleFormat, RuleSource, Vocabulary,
};
use crate::rdf::{is_absolute_iri, parse_turtle, serialize_turtle, Diff, Graph};
use crate::rules::{compile_schema_report, RuleSet};
use crate::stats::{compute_stats, data_closure, format_decimal, NamespaceDecl, StatsReport};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSAFE_RULE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_UNSUPPORTED: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "gnstat",
    version,
    about = "Redundancy statistics for RDF graphs under rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RuleArgs {
    /// N3 rules file (repeatable)
    #[arg(long = "rules", value_name = "FILE")]
    rules: Vec<String>,
    /// Schema graph compiled into rules and used as background facts (repeatable)
    #[arg(long = "dlogic", value_name = "FILE")]
    dlogic: Vec<String>,
    /// RIF rules file; recognised but not supported (exit 5)
    #[arg(long = "rif", value_name = "FILE")]
    rif: Vec<String>,
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Turtle data file
    #[arg(long, value_name = "FILE")]
    data: String,
    #[command(flatten)]
    rules: RuleArgs,
    /// Namespace owned by the dataset (repeatable)
    #[arg(long = "ns", value_name = "IRI")]
    ns: Vec<String>,
    /// Replace blank nodes with IRIs under this base
    #[arg(long, value_name = "IRI")]
    skolem_base: Option<String>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Table,
    Turtle,
    Tsv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Normalisation {
    None,
    Closure,
    MiniRdf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the closure of the data under the rules
    Closure {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write the data with every entailed triple removed
    Minimize {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Report cardinalities, redundancy and out-link densities
    Stats {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
        /// Dataset IRI for the turtle format
        #[arg(long, value_name = "IRI")]
        dataset: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Update a minimal graph for inserted and deleted triples
    DiffMinimize {
        #[arg(long, value_name = "FILE")]
        prev_min: String,
        #[arg(long, value_name = "FILE")]
        insert: Option<String>,
        #[arg(long, value_name = "FILE")]
        delete: Option<String>,
        /// The new version of the full graph
        #[arg(long, value_name = "FILE")]
        full: String,
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long, value_name = "IRI")]
        skolem_base: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a dataset description carrying the statistics
    Describe {
        #[command(flatten)]
        data: DataArgs,
        /// Dataset IRI (defaults to the data file's file: IRI)
        #[arg(long, value_name = "IRI")]
        dataset: Option<String>,
        /// Defaults to mini-rdf when rules are given, none otherwise
        #[arg(long, value_enum)]
        normalisation: Option<Normalisation>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Recompute a description's statistics and compare them
    Verify {
        #[arg(long, value_name = "FILE")]
        description: PathBuf,
        /// Directory relative locators resolve against (default: current directory)
        #[arg(long, value_name = "DIR")]
        base_dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let vocab = match std::env::var("GN_BASE") {
        Ok(base) => match Vocabulary::new(base) {
            Ok(v) => v,
            Err(e) => {
                let _ = writeln!(stderr, "error: GN_BASE: {e}");
                return EXIT_USAGE;
            }
        },
        Err(_) => Vocabulary::default(),
    };
    match execute(cli.command, &vocab, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Syntax(_)
        | Error::SyntaxIn { .. }
        | Error::InvalidTriple(_)
        | Error::Description(_) => EXIT_PARSE,
        Error::UnsafeRule { .. } | Error::BlankInHead { .. } => EXIT_UNSAFE_RULE,
        Error::UnsupportedRif(_) => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

fn resolver() -> FileResolver {
    FileResolver::new(".")
}

fn read_graph(path: &str, skolem_base: Option<&str>) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Unresolvable {
        locator: path.to_string(),
        reason: e.to_string(),
    })?;
    let graph = parse_turtle(&text).map_err(|e| Error::from(e).in_input(path))?;
    match skolem_base {
        Some(base) => graph.skolemize(base),
        None => Ok(graph),
    }
}

fn rule_spec(args: &RuleArgs, kind: NormalisationKind) -> Result<NormalisationSpec> {
    let sources = args
        .rules
        .iter()
        .map(|p| RuleSource::new(RuleFormat::N3, p.as_str()))
        .chain(
            args.dlogic
                .iter()
                .map(|p| RuleSource::new(RuleFormat::DLogic, p.as_str())),
        )
        .chain(
            args.rif
                .iter()
                .map(|p| RuleSource::new(RuleFormat::Rif, p.as_str())),
        )
        .collect();
    NormalisationSpec::new(kind, sources)
}

fn default_kind(args: &RuleArgs) -> NormalisationKind {
    if args.rules.is_empty() && args.dlogic.is_empty() && args.rif.is_empty() {
        NormalisationKind::None
    } else {
        NormalisationKind::MiniRdf
    }
}

/// Rules and background graph named on the command line.
fn load_rules(args: &RuleArgs, stderr: &mut dyn Write) -> Result<(RuleSet, Graph)> {
    let (rules, aux) = load_regime(&rule_spec(args, default_kind(args))?, &resolver())?;
    for ignored in compile_schema_report(&aux).ignored {
        let _ = writeln!(
            stderr,
            "warning: schema triple not compiled into a rule: {ignored}"
        );
    }
    Ok((rules, aux))
}

fn namespaces(ns: &[String]) -> Result<Option<NamespaceDecl>> {
    if ns.is_empty() {
        Ok(None)
    } else {
        NamespaceDecl::new(ns.iter().cloned()).map(Some)
    }
}

fn write_output(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dataset_iri(given: Option<String>, data: &str) -> Result<String> {
    if let Some(iri) = given {
        return Ok(iri);
    }
    let absolute = std::fs::canonicalize(data)?;
    let iri = format!("file://{}", absolute.display());
    if is_absolute_iri(&iri) && crate::rdf::Term::iri(iri.as_str()).is_ok() {
        Ok(iri)
    } else {
        Err(Error::Description(format!(
            "cannot use {iri} as the dataset IRI; pass --dataset"
        )))
    }
}

fn report_table(report: &StatsReport, tsv: bool) -> String {
    let mut rows = vec![
        ("published", report.published_cardinality.to_string()),
        ("closure", report.closure_cardinality.to_string()),
        ("minimal", report.minimal_cardinality.to_string()),
        ("redundancy", format_decimal(report.redundancy)),
    ];
    if let Some(d) = report.out_link_density_plus {
        rows.push(("out_link_density_plus", format_decimal(d)));
    }
    if let Some(d) = report.out_link_density_minus {
        rows.push(("out_link_density_minus", format_decimal(d)));
    }
    let mut out = String::new();
    if tsv {
        out.push_str("statistic\tvalue\n");
        for (name, value) in rows {
            out.push_str(&format!("{name}\t{value}\n"));
        }
    } else {
        let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        out.push_str(&format!("{:width$}  value\n", "statistic"));
        for (name, value) in rows {
            out.push_str(&format!("{name:width$}  {value}\n"));
        }
    }
    out
}

fn describe(
    data: &DataArgs,
    dataset: Option<String>,
    kind: NormalisationKind,
    vocab: &Vocabulary,
    stderr: &mut dyn Write,
) -> Result<String> {
    let ns = namespaces(&data.ns)?;
    let spec = rule_spec(&data.rules, kind)?;
    let (rules, aux) = load_rules(&data.rules, stderr)?;
    let graph = read_graph(&data.data, data.skolem_base.as_deref())?;
    let report = compute_stats(&graph, &rules, &aux, ns.as_ref())?;
    let dataset = DatasetRef {
        iri: dataset_iri(dataset, &data.data)?,
        data_dump: data.data.clone(),
        namespaces: ns,
    };
    Ok(emit_description(&dataset, &report, &spec, vocab))
}

fn execute(
    command: Command,
    vocab: &Vocabulary,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    match command {
        Command::Closure { data, out } => {
            let (rules, aux) = load_rules(&data.rules, stderr)?;
            let graph = read_graph(&data.data, data.skolem_base.as_deref())?;
            let closed = data_closure(&graph, &rules, &aux);
            let _ = writeln!(stderr, "derived {} triple(s)", closed.len() - graph.len());
            write_output(&out, &serialize_turtle(&closed), stdout)?;
        }
        Command::Minimize { data, out } => {
            let (rules, aux) = load_rules(&data.rules, stderr)?;
            let graph = read_graph(&data.data, data.skolem_base.as_deref())?;
            write_output(
                &out,
                &serialize_turtle(&reduce(&graph, &rules, &aux)),
                stdout,
            )?;
        }
        Command::Stats {
            data,
            format,
            dataset,
            out,
        } => {
            let text = match format {
                ReportFormat::Turtle => {
                    describe(&data, dataset, default_kind(&data.rules), vocab, stderr)?
                }
                ReportFormat::Table | ReportFormat::Tsv => {
                    let ns = namespaces(&data.ns)?;
                    let (rules, aux) = load_rules(&data.rules, stderr)?;
                    let graph = read_graph(&data.data, data.skolem_base.as_deref())?;
                    let report = compute_stats(&graph, &rules, &aux, ns.as_ref())?;
                    report_table(&report, matches!(format, ReportFormat::Tsv))
                }
            };
            write_output(&out, &text, stdout)?;
        }
        Command::DiffMinimize {
            prev_min,
            insert,
            delete,
            full,
            rules,
            skolem_base,
            out,
        } => {
            let (rules, aux) = load_rules(&rules, stderr)?;
            let skolem = skolem_base.as_deref();
            let optional = |path: &Option<String>| match path {
                Some(p) => read_graph(p, skolem),
                None => Ok(Graph::new()),
            };
            let diff = Diff::new(optional(&insert)?, optional(&delete)?);
            let outcome = incremental_reduce(
                &read_graph(&prev_min, skolem)?,
                &diff,
                &rules,
                &aux,
                &read_graph(&full, skolem)?,
            );
            let _ = writeln!(stderr, "fallback_used={}", outcome.fallback_used);
            write_output(&out, &serialize_turtle(&outcome.graph), stdout)?;
        }
        Command::Describe {
            data,
            dataset,
            normalisation,
            out,
        } => {
            let kind = match normalisation {
                Some(Normalisation::None) => NormalisationKind::None,
                Some(Normalisation::Closure) => NormalisationKind::Closure,
                Some(Normalisation::MiniRdf) => NormalisationKind::MiniRdf,
                None => default_kind(&data.rules),
            };
            let text = describe(&data, dataset, kind, vocab, stderr)?;
            write_output(&out, &text, stdout)?;
        }
        Command::Verify {
            description,
            base_dir,
            out,
        } => {
            let text = std::fs::read_to_string(&description).map_err(|e| Error::Unresolvable {
                locator: description.display().to_string(),
                reason: e.to_string(),
            })?;
            let resolver =
                FileResolver::new(base_dir.unwrap_or_else(|| Path::new(".").to_path_buf()));
            let verification = verify(&text, &resolver, vocab)
                .map_err(|e| e.in_input(&description.display().to_string()))?;
            let mut report = String::new();
            for check in &verification.checks {
                report.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    if check.matches { "ok" } else { "MISMATCH" },
                    check.dimension.iri(vocab),
                    check.stated,
                    check.recomputed
                ));
            }
            write_output(&out, &report, stdout)?;
            if !verification.is_success() {
                let _ = writeln!(
                    stderr,
                    "error: stated statistics differ from recomputed values"
                );
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(0)
}
