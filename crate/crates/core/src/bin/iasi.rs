use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iasi_core::catalog::{run_catalog_checks, write_jsonl, CatalogOptions};
use iasi_core::construct::{
    construct_arbitrary, ConstructError, ConstructionParams, LabelSizes, MultiplierPolicy,
    OffsetPolicy,
};
use iasi_core::document::{load_document, load_graph, save_document, Metadata, TOOL_VERSION};
use iasi_core::dot::export_dot;
use iasi_core::graph::summarize_indices;
use iasi_core::transform::{
    contract_edge, reduce_topologically, subdivide, to_line_graph, to_total_graph, TransformError,
};
use iasi_core::verify::{
    check_gcd_invariant, check_multiplier_condition, check_singleton_endpoint_rule,
    classify_arithmetic_with, verify_iasi, SemiReading,
};
use iasi_core::{Edge, VertexId};

#[derive(Parser)]
#[command(
    name = "iasi",
    version,
    about = "Arithmetic integer additive set-indexers of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an arithmetic labeling of a graph document.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d0: u64,
        /// Label size, or an inclusive `min,max` range.
        #[arg(long, value_parser = parse_sizes)]
        sizes: (usize, usize),
        #[arg(long, default_value = "fixed")]
        policy: MultiplierPolicy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        /// `auto`, `sidon`, `geometric` or a comma-separated list of first terms.
        #[arg(long, default_value = "auto")]
        offsets: OffsetPolicy,
    },
    /// Check that vertex and edge labels are pairwise distinct.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Report weak/strong edges, uniformity and arithmetic classes.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Semi-arithmetic requires every edge label to be non-AP.
        #[arg(long)]
        strict_semi: bool,
    },
    Transform {
        #[arg(long)]
        op: Op,
        #[arg(long, value_parser = parse_edge)]
        edge: Option<Edge>,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run every check over all small connected graphs.
    Catalog {
        #[arg(long)]
        max_n: usize,
        /// One or more of fixed, random, maximal.
        #[arg(long, value_delimiter = ',', default_value = "fixed,maximal")]
        policy: Vec<MultiplierPolicy>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        records: PathBuf,
        #[arg(long, default_value_t = 1)]
        d0: u64,
        #[arg(long, value_parser = parse_sizes, default_value = "3")]
        sizes: (usize, usize),
        /// Skip the transformation checks.
        #[arg(long)]
        no_transforms: bool,
        /// Also run the probes for statements with known counterexamples.
        #[arg(long)]
        probes: bool,
        /// Record wall time per check (records are then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Permit max-n 7.
        #[arg(long)]
        allow_n7: bool,
    },
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Contract,
    Reduce,
    Subdivide,
    Line,
    Total,
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once(',') {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => parse(s).map(|a| (a, a)),
    }
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected u,v, got {s:?}"))?;
    Ok(Edge::new(a.trim(), b.trim()))
}

/// Exit status plus the JSON summary printed on stdout.
struct Report {
    code: u8,
    body: Value,
}

impl Report {
    fn ok(pass: bool, body: Value) -> Self {
        Self {
            code: if pass { 0 } else { 1 },
            body,
        }
    }

    fn error(code: u8, kind: &str, message: impl ToString) -> Self {
        Self {
            code,
            body: json!({"status": "error", "kind": kind, "message": message.to_string()}),
        }
    }
}

fn input_error(e: impl ToString) -> Report {
    Report::error(2, "input", e)
}

fn metadata(seed: Option<u64>, params: Value) -> Metadata {
    Metadata {
        seed,
        params: Some(params),
        tool_version: Some(TOOL_VERSION.to_owned()),
    }
}

fn run(command: Command) -> Report {
    match command {
        Command::Construct {
            input,
            d0,
            sizes,
            policy,
            seed,
            output,
            offsets,
        } => {
            let graph = match load_graph(&input) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let params = ConstructionParams {
                base_difference: d0,
                label_sizes: LabelSizes::Range {
                    min: sizes.0,
                    max: sizes.1,
                },
                multiplier_policy: policy,
                seed,
                offsets,
            };
            let c = match construct_arbitrary(&graph, &params) {
                Ok(c) => c,
                Err(e @ ConstructError::InvalidParams(_)) => return input_error(e),
                Err(e) => return Report::error(1, "construct", e),
            };
            let meta = metadata(Some(seed), json!(params));
            if let Err(e) = save_document(&c.labeled, meta, &output) {
                return Report::error(2, "io", e);
            }
            Report::ok(
                true,
                json!({
                    "status": "ok",
                    "output": output,
                    "differences": c.differences,
                    "fallbacks": c.fallbacks,
                }),
            )
        }
        Command::Verify { input } => {
            let doc = match load_document(&input) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let v = verify_iasi(&doc.labeled);
            Report::ok(
                v.is_iasi,
                json!({
                    "status": if v.is_iasi { "pass" } else { "fail" },
                    "is_iasi": v.is_iasi,
                    "collision": v.collision,
                    "indices": summarize_indices(&doc.labeled),
                    "warnings": doc.warnings,
                }),
            )
        }
        Command::Classify { input, strict_semi } => {
            let doc = match load_document(&input) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let lg = &doc.labeled;
            let reading = if strict_semi {
                SemiReading::Strict
            } else {
                SemiReading::Some
            };
            let report = classify_arithmetic_with(lg, reading);
            let multiplier =
                check_multiplier_condition(lg).map_or_else(|e| json!({"error": e}), |m| json!(m));
            let gcd = check_gcd_invariant(lg).map_or_else(|e| json!({"error": e}), |g| json!(g));
            let singleton = check_singleton_endpoint_rule(lg);
            Report::ok(
                report.is_iasi,
                json!({
                    "status": if report.is_iasi { "pass" } else { "fail" },
                    "report": report,
                    "multiplier_condition": multiplier,
                    "gcd_invariant": gcd,
                    "singleton_rule": singleton,
                    "warnings": doc.warnings,
                }),
            )
        }
        Command::Transform {
            op,
            edge,
            vertex,
            input,
            output,
        } => {
            let doc = match load_document(&input) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let lg = &doc.labeled;
            let result = match op {
                Op::Contract | Op::Subdivide => {
                    let Some(e) = edge else {
                        return input_error("--edge u,v is required for this op");
                    };
                    if matches!(op, Op::Contract) {
                        contract_edge(lg, &e)
                    } else {
                        subdivide(lg, &e)
                    }
                }
                Op::Reduce => {
                    let Some(v) = vertex else {
                        return input_error("--vertex is required for reduce");
                    };
                    reduce_topologically(lg, &VertexId::from(v.as_str()))
                }
                Op::Line => to_line_graph(lg),
                Op::Total => to_total_graph(lg),
            };
            match result {
                Ok(out) => {
                    let meta = metadata(doc.metadata.seed, json!({"transform_of": input}));
                    if let Err(e) = save_document(&out, meta, &output) {
                        return Report::error(2, "io", e);
                    }
                    Report::ok(
                        true,
                        json!({
                            "status": "ok",
                            "output": output,
                            "vertices": out.graph().vertex_count(),
                            "edges": out.graph().edge_count(),
                        }),
                    )
                }
                Err(
                    e @ (TransformError::UnknownEdge(_)
                    | TransformError::UnknownVertex(_)
                    | TransformError::Precondition(_)),
                ) => input_error(e),
                Err(TransformError::Collision(c)) => Report {
                    code: 1,
                    body: json!({"status": "error", "kind": "collision", "collision": c}),
                },
                Err(TransformError::NotPreserved(r)) => Report {
                    code: 1,
                    body: json!({"status": "error", "kind": "not_preserved", "report": r}),
                },
                Err(e) => Report::error(1, "transform", e),
            }
        }
        Command::Catalog {
            max_n,
            policy,
            seed,
            records,
            d0,
            sizes,
            no_transforms,
            probes,
            timings,
            allow_n7,
        } => {
            if max_n >= 7 && !allow_n7 {
                return input_error("max-n 7 needs --allow-n7");
            }
            let mut opts = CatalogOptions::new(max_n, policy, seed);
            opts.base_difference = d0;
            opts.sizes = sizes;
            opts.transforms = !no_transforms;
            opts.probes = probes;
            opts.timings = timings;
            let (recs, summary) = match run_catalog_checks(&opts) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let written =
                File::create(&records).and_then(|f| write_jsonl(&recs, BufWriter::new(f)));
            if let Err(e) = written {
                return Report::error(2, "io", format!("{}: {e}", records.display()));
            }
            let code = summary.exit_code() as u8;
            Report {
                code,
                body: json!({
                    "status": if code == 0 { "pass" } else { "fail" },
                    "records": records,
                    "summary": summary,
                }),
            }
        }
        Command::ExportDot { input, output } => {
            let doc = match load_document(&input) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            match export_dot(&doc.labeled, &output) {
                Ok(()) => Report::ok(true, json!({"status": "ok", "output": output})),
                Err(e) => Report::error(2, "io", format!("{}: {e}", output.display())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(cli.command);
    println!("{}", report.body);
    if report.code != 0 {
        if let Some(msg) = report.body.get("message").and_then(Value::as_str) {
            eprintln!("iasi: {msg}");
        }
    }
    ExitCode::from(report.code)
}
