//! `scfvc` — strong conflict-free vertex-connection coloring toolbox.
//!
//! Exit codes are a stable contract:
//! - `verify`: 0 the coloring is a strong cfvc coloring, 1 it is not, 2 input error
//! - `solve`: 0 yes, 1 no, 3 node budget exhausted, 2 input error
//! - `extract`: 0 assignment recovered, 1 coloring fails verification, 2 input error
//! - everything else: 0 success, 2 input error

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use scfvc::graph::{
    greedy_vertex_cover, parse_graph, parse_vertex_set, write_graph, Graph, VertexCover,
};
use scfvc::reduce::{
    build_reduction_dp, build_reduction_vc, coloring_to_assignment, parse_cnf,
    random_positive_cnf, Assignment, ReductionArtifact, ReductionSidecar,
};
use scfvc::solver::{
    kernelize, solve_fpt, solve_k, svcfc_number, Decision, SolveConfig, SolveOutcome,
};
use scfvc::verify::{parse_coloring, verify_strong_cfvc, write_coloring};
use scfvc::fixtures;

#[derive(Parser)]
#[command(name = "scfvc", version, about = "Decide and certify strong conflict-free vertex-connection colorability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring file against a graph file and report bad pairs.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Decide strong cfvc k-colorability, or compute the minimum k.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Number of colors to test.
        #[arg(long, conflicts_with = "min", required_unless_present = "min")]
        k: Option<usize>,
        /// Compute svcfc(G), the least number of colors.
        #[arg(long)]
        min: bool,
        /// Use the vertex-cover-parameterized pipeline (kernelize first).
        #[arg(long, requires = "k")]
        fpt: bool,
        /// Vertex cover file for --fpt (1-indexed ids, whitespace separated).
        #[arg(long, requires = "fpt")]
        cover: Option<PathBuf>,
        /// Node budget; exhausting it exits with code 3.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the certificate coloring to this file on a yes answer.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Explore search branches on multiple threads.
        #[arg(long)]
        parallel: bool,
        /// Disable canonical color-class symmetry breaking.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Apply the twin reduction rule and write the kernel plus its trace.
    Kernelize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Vertex cover file; a greedy 2-approximation is used if absent.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Compile a positive CNF formula into a gadget graph instance.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// vc: vertex-cover modulator; dp: distance-to-path modulator.
        #[arg(long)]
        variant: String,
        #[arg(long)]
        out: PathBuf,
        /// JSON sidecar mapping vertices to gadget roles.
        #[arg(long)]
        map: PathBuf,
    },
    /// Recover an NAE assignment from a strong cfvc 3-coloring of an instance.
    Extract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Write a built-in instance.
    Generate {
        #[command(subcommand)]
        what: GenerateWhat,
    },
    /// Timing and size tables for the solver families.
    Bench {
        /// paths | reductions
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max: usize,
        /// CSV output file (stdout if absent).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenerateWhat {
    /// The path on n vertices.
    Path {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// The complete bipartite graph with sides m and n.
    CompleteBipartite {
        m: usize,
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// The bundled 10-vertex twin example: strongly cfvc 3-colorable, but not
    /// after deleting the twin u.
    Fig1 {
        /// Delete the twin vertex u (vertex 5 in the file).
        #[arg(long)]
        minus_u: bool,
        /// Also write the known strong cfvc 3-coloring to this file.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output graph file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// One-line diagnostics naming the offending file; every input failure maps
/// to exit code 2.
struct CliError(String);

impl CliError {
    fn in_file(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError(format!("{}: {}", path.display(), err))
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError(msg)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::in_file(path, e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::in_file(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::in_file(path, e))
}

fn emit(out: &Option<PathBuf>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify { graph, coloring } => {
            let g = load_graph(&graph)?;
            let f = parse_coloring(&read(&coloring)?)
                .map_err(|e| CliError::in_file(&coloring, e))?;
            let report =
                verify_strong_cfvc(&g, &f).map_err(|e| CliError::in_file(&coloring, e))?;
            print!("{}", report.to_text());
            Ok(if report.is_strong_cfvc() { 0 } else { 1 })
        }
        Command::Solve {
            graph,
            k,
            min,
            fpt,
            cover,
            budget,
            out,
            parallel,
            no_symmetry,
        } => {
            let g = load_graph(&graph)?;
            let cfg = SolveConfig {
                node_budget: budget,
                symmetry_breaking: !no_symmetry,
                fast_fail_verify: true,
                parallel,
            };
            let outcome = if min {
                svcfc_number(&g, &cfg).map_err(|e| CliError::in_file(&graph, e))?
            } else {
                let k = k.expect("clap enforces --k unless --min");
                if fpt {
                    let cover_set = match &cover {
                        Some(path) => {
                            let members = parse_vertex_set(&read(path)?, g.n())
                                .map_err(|e| CliError::in_file(path, e))?;
                            Some(VertexCover::new(members))
                        }
                        None => None,
                    };
                    solve_fpt(&g, k, cover_set.as_ref(), &cfg)
                        .map_err(|e| CliError::in_file(&graph, e))?
                } else {
                    solve_k(&g, k, &cfg).map_err(|e| CliError::in_file(&graph, e))?
                }
            };
            print!("{}", outcome.to_text());
            if let (Some(path), Some(cert)) = (&out, &outcome.certificate) {
                // Defense in depth: never write an unchecked certificate.
                let recheck = verify_strong_cfvc(&g, cert)
                    .map_err(|e| CliError::in_file(&graph, e))?;
                if !recheck.is_strong_cfvc() {
                    return Err(CliError("internal error: certificate failed re-verification".into()));
                }
                write_file(path, &write_coloring(cert))?;
            }
            Ok(match outcome.decision {
                Decision::Yes => 0,
                Decision::No => 1,
                Decision::BudgetExhausted => 3,
            })
        }
        Command::Kernelize {
            graph,
            k,
            cover,
            out,
            trace,
        } => {
            let g = load_graph(&graph)?;
            let cover_set = match &cover {
                Some(path) => {
                    let members = parse_vertex_set(&read(path)?, g.n())
                        .map_err(|e| CliError::in_file(path, e))?;
                    VertexCover::new(members)
                }
                None => greedy_vertex_cover(&g),
            };
            let (kernel, kernel_trace) =
                kernelize(&g, k, &cover_set).map_err(|e| CliError::in_file(&graph, e))?;
            write_file(&out, &write_graph(&kernel))?;
            write_file(&trace, &kernel_trace.to_text())?;
            println!(
                "kernel {} -> {} vertices ({} removed)",
                g.n(),
                kernel.n(),
                kernel_trace.removals.len()
            );
            Ok(0)
        }
        Command::Reduce {
            cnf,
            variant,
            out,
            map,
        } => {
            let formula = parse_cnf(&read(&cnf)?).map_err(|e| CliError::in_file(&cnf, e))?;
            let art = match variant.as_str() {
                "vc" => build_reduction_vc(&formula),
                "dp" => build_reduction_dp(&formula),
                other => return Err(CliError(format!("unknown variant `{other}`, expected vc or dp"))),
            }
            .map_err(|e| CliError::in_file(&cnf, e))?;
            let unused = formula.unused_variables();
            if !unused.is_empty() {
                let names: Vec<String> = unused.iter().map(|v| format!("v{}", v + 1)).collect();
                eprintln!(
                    "warning: variables occurring in no clause become pendant vertices: {}",
                    names.join(" ")
                );
            }
            write_file(&out, &write_graph(&art.graph))?;
            let sidecar = art.sidecar();
            let json = serde_json::to_string_pretty(&sidecar)
                .expect("sidecar serialization cannot fail");
            write_file(&map, &json)?;
            println!(
                "{} instance: {} vertices, {} edges, modulator {}",
                art.variant,
                art.graph.n(),
                art.graph.num_edges(),
                art.modulator.len()
            );
            Ok(0)
        }
        Command::Extract {
            graph,
            map,
            coloring,
        } => {
            let g = load_graph(&graph)?;
            let sidecar: ReductionSidecar = serde_json::from_str(&read(&map)?)
                .map_err(|e| CliError::in_file(&map, e))?;
            let art = ReductionArtifact::from_graph_and_sidecar(g, &sidecar)
                .map_err(|e| CliError::in_file(&map, e))?;
            let f = parse_coloring(&read(&coloring)?)
                .map_err(|e| CliError::in_file(&coloring, e))?;
            match coloring_to_assignment(&art, &f) {
                Ok(assignment) => {
                    println!("{}", format_assignment(&assignment));
                    Ok(0)
                }
                Err(err @ scfvc::reduce::ReduceError::ColoringFailsVerification { .. })
                | Err(err @ scfvc::reduce::ReduceError::NotThreeColors(_)) => {
                    eprintln!("error: {err}");
                    Ok(1)
                }
                Err(err) => Err(CliError::in_file(&coloring, err)),
            }
        }
        Command::Generate { what } => {
            match what {
                GenerateWhat::Path { n, out } => {
                    if n == 0 {
                        return Err(CliError("path needs at least one vertex".into()));
                    }
                    emit(&out.out, &write_graph(&Graph::path(n)))?;
                }
                GenerateWhat::CompleteBipartite { m, n, out } => {
                    if m == 0 || n == 0 {
                        return Err(CliError("both sides need at least one vertex".into()));
                    }
                    emit(&out.out, &write_graph(&Graph::complete_bipartite(m, n)))?;
                }
                GenerateWhat::Fig1 {
                    minus_u,
                    coloring,
                    out,
                } => {
                    let g = if minus_u {
                        fixtures::nonmonotone_example_minus_u()
                    } else {
                        fixtures::nonmonotone_example()
                    };
                    emit(&out.out, &write_graph(&g))?;
                    if let Some(path) = coloring {
                        if minus_u {
                            return Err(CliError(
                                "no bundled coloring for the --minus-u instance (it is not 3-colorable)".into(),
                            ));
                        }
                        write_file(&path, &write_coloring(&fixtures::nonmonotone_example_coloring()))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Bench { suite, max, csv } => {
            let table = match suite.as_str() {
                "paths" => bench_paths(max),
                "reductions" => bench_reductions(max),
                other => {
                    return Err(CliError(format!(
                        "unknown suite `{other}`, expected paths or reductions"
                    )))
                }
            };
            emit(&csv, &table)?;
            Ok(0)
        }
    }
}

fn format_assignment(a: &Assignment) -> String {
    a.values
        .iter()
        .enumerate()
        .map(|(i, &b)| format!("v{}={}", i + 1, if b { "T" } else { "F" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn decision_word(d: Decision) -> &'static str {
    match d {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::BudgetExhausted => "budget",
    }
}

fn csv_row(table: &mut String, instance: &str, n: usize, k: usize, out: &SolveOutcome, millis: u128) {
    writeln!(
        table,
        "{instance},{n},{k},{},{},{millis}",
        decision_word(out.decision),
        out.nodes_explored
    )
    .unwrap();
}

fn bench_paths(max: usize) -> String {
    let cfg = SolveConfig::default();
    let mut table = String::from("instance,n,k,decision,nodes,millis\n");
    for n in 1..=max.max(1) {
        let g = Graph::path(n);
        let start = Instant::now();
        let out = svcfc_number(&g, &cfg).expect("paths are connected");
        let k = out.certificate.as_ref().map_or(0, |c| c.k);
        csv_row(&mut table, &format!("path-{n}"), n, k, &out, start.elapsed().as_millis());
    }
    table
}

fn bench_reductions(max: usize) -> String {
    let cfg = SolveConfig::default();
    let mut table = String::from("instance,n,k,decision,nodes,millis\n");
    for size in 1..=max.max(1) {
        let vars = (2 + size).min(8);
        let cnf = random_positive_cnf(vars, size, 2, 1000 + size as u64)
            .expect("parameters are feasible");
        let art = build_reduction_vc(&cnf).expect("generated clauses have size >= 2");
        let n = art.graph.n();
        let start = Instant::now();
        let out = solve_k(&art.graph, 3, &cfg).expect("instances are connected");
        csv_row(
            &mut table,
            &format!("reduce-vc-v{vars}c{size}"),
            n,
            3,
            &out,
            start.elapsed().as_millis(),
        );
        // Kernel shrinkage record for the same instance.
        let cover = VertexCover::new(art.modulator.clone());
        let (kernel, _) = kernelize(&art.graph, 3, &cover).expect("modulator is a cover");
        let start = Instant::now();
        let kout = solve_k(&kernel, 3, &cfg).expect("kernels stay connected");
        csv_row(
            &mut table,
            &format!("reduce-vc-v{vars}c{size}-kernel"),
            kernel.n(),
            3,
            &kout,
            start.elapsed().as_millis(),
        );
    }
    table
}
