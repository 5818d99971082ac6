//! Command-line front end for batch kernelization and reproduction runs.
//!
//! Exit-code protocol: 0 means a kernel (or requested output) was written,
//! 10 means the instance was decided YES, 20 means decided NO, and 1 is an
//! error. Harnesses can branch on the code without parsing output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dpvc_core::graph::{Graph, VertexId};
use dpvc_core::instance::PvcInstance;
use dpvc_core::instances;
use dpvc_core::io::{parse_graph, write_graph};
use dpvc_core::kernel_general::kernelize_general;
use dpvc_core::kernel_small::{audit_kernel_size, degree_bound, edge_bound, kernelize_small};
use dpvc_core::oracle::solve_branching;
use dpvc_core::paths::{greedy_packing, PackingOutcome};
use dpvc_core::stats::KernelStats;

const EXIT_YES: u8 = 10;
const EXIT_NO: u8 = 20;

#[derive(Parser)]
#[command(
    name = "dpvc",
    version,
    about = "d-path vertex cover kernelization toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Small,
    General,
    /// `small` for d ∈ {4, 5}, `general` otherwise.
    Auto,
}

impl Method {
    fn resolve(self, d: usize) -> Method {
        match self {
            Method::Auto if d == 4 || d == 5 => Method::Small,
            Method::Auto => Method::General,
            fixed => fixed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an instance to an equivalent kernel.
    Kernelize {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        input: PathBuf,
        /// Kernel graph file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Machine-readable statistics record.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Decide an instance exactly; prints a witness cover on YES.
    Solve {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
    /// Generate random instances, kernelize each, and cross-check the
    /// kernel against the exact oracle.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Upper bound on the random edge count (default 2n).
        #[arg(long)]
        mmax: Option<usize>,
    },
    /// Emit generated instances in the graph format.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Size and structure audit of an already-reduced instance.
    Audit {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Uniform random graph with exactly m edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// q-star.
    Star {
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Triangle {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two adjacent star centers with p and q leaves.
    Distar {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Star with two of its leaves joined into a triangle.
    StarTriangle {
        #[arg(long)]
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hub vertex with `count` pendant matching edges.
    Pendant {
        #[arg(long)]
        count: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Vertex Cover to d-PVC transformation of an input graph.
    VcTransform {
        #[arg(long)]
        d: usize,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &PathBuf) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn emit(graph: &Graph, output: Option<&PathBuf>) -> Result<()> {
    let text = write_graph(graph);
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// External (1-based, compacted) index of an internal vertex id.
fn external_index(g: &Graph, v: VertexId) -> usize {
    g.vertices().position(|u| u == v).expect("live vertex") + 1
}

fn run_kernelize(
    d: usize,
    k: usize,
    method: Method,
    input: PathBuf,
    output: Option<PathBuf>,
    stats_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let graph = load(&input)?;
    let inst = PvcInstance::new(graph, d, k);
    let (reduced, stats): (PvcInstance, KernelStats) = match method.resolve(d) {
        Method::Small => {
            let (red, _, stats) = kernelize_small(&inst)?;
            (red, stats)
        }
        Method::General => kernelize_general(&inst)?,
        Method::Auto => unreachable!("resolved above"),
    };
    if let Some(path) = stats_path {
        fs::write(&path, stats.to_json())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    match reduced.decided {
        Some(true) => {
            eprintln!("decided YES during kernelization");
            Ok(ExitCode::from(EXIT_YES))
        }
        Some(false) => {
            eprintln!("decided NO during kernelization");
            Ok(ExitCode::from(EXIT_NO))
        }
        None => {
            emit(&reduced.graph, output.as_ref())?;
            eprintln!(
                "kernel: n={} m={} k={} (was n={} m={} k={})",
                stats.n_out, stats.m_out, stats.k, stats.n_in, stats.m_in, k
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_solve(d: usize, k: usize, input: PathBuf) -> Result<ExitCode> {
    let graph = load(&input)?;
    let decision = solve_branching(&graph, d, k)?;
    if decision.yes {
        let witness = decision.witness.unwrap_or_default();
        let labels: Vec<String> = witness
            .iter()
            .map(|&v| external_index(&graph, v).to_string())
            .collect();
        println!("YES");
        println!("witness: {}", labels.join(" "));
        Ok(ExitCode::from(EXIT_YES))
    } else {
        println!("NO");
        Ok(ExitCode::from(EXIT_NO))
    }
}

fn run_verify(
    d: usize,
    kmax: usize,
    n: usize,
    count: usize,
    seed: u64,
    method: Method,
    mmax: Option<usize>,
) -> Result<ExitCode> {
    let resolved = method.resolve(d);
    if resolved == Method::Small && d != 4 && d != 5 {
        bail!("method small requires d ∈ {{4, 5}}");
    }
    let mmax = mmax.unwrap_or(2 * n).min(n * (n - 1) / 2);
    let mut failures = 0usize;
    for index in 0..count {
        let instance_seed = seed.wrapping_mul(1_000_003).wrapping_add(index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
        let m = rng.random_range(0..=mmax);
        let graph = instances::random_instance(n, m, instance_seed)?;
        let mut line = format!("instance {index} seed {instance_seed} n {n} m {m}:");
        for k in 0..=kmax {
            let expect = solve_branching(&graph, d, k)?.yes;
            let inst = PvcInstance::new(graph.clone(), d, k);
            let reduced = match resolved {
                Method::Small => kernelize_small(&inst)?.0,
                Method::General => kernelize_general(&inst)?.0,
                Method::Auto => unreachable!(),
            };
            let got = match reduced.decided {
                Some(answer) => answer,
                None => solve_branching(&reduced.graph, d, reduced.k)?.yes,
            };
            if got == expect {
                line.push_str(&format!(" k={k} OK"));
            } else {
                line.push_str(&format!(" k={k} MISMATCH(oracle={expect})"));
                failures += 1;
            }
        }
        println!("{line}");
    }
    if failures == 0 {
        println!("verify: all {count} instances agree with the oracle");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: {failures} mismatches");
        Ok(ExitCode::FAILURE)
    }
}

fn run_gen(what: GenCommand) -> Result<ExitCode> {
    match what {
        GenCommand::Random { n, m, seed, output } => {
            emit(&instances::random_instance(n, m, seed)?, output.as_ref())?
        }
        GenCommand::Star { q, output } => emit(&instances::star(q), output.as_ref())?,
        GenCommand::Triangle { output } => emit(&instances::triangle(), output.as_ref())?,
        GenCommand::Distar { p, q, output } => emit(&instances::di_star(p, q), output.as_ref())?,
        GenCommand::StarTriangle { q, output } => {
            emit(&instances::star_with_triangle(q), output.as_ref())?
        }
        GenCommand::Pendant { count, output } => {
            let mut g = Graph::with_vertices(1);
            instances::attach_pendant_matching(&mut g, VertexId(0), count);
            emit(&g, output.as_ref())?
        }
        GenCommand::VcTransform { d, input, output } => {
            let g = load(&input)?;
            emit(&instances::vc_to_dpvc(&g, d)?, output.as_ref())?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_audit(d: usize, k: usize, input: PathBuf) -> Result<ExitCode> {
    let graph = load(&input)?;
    let inst = PvcInstance::new(graph, d, k);
    match greedy_packing(&inst.graph, d, k)? {
        PackingOutcome::PathFree => {
            println!("instance is already free of {d}-vertex paths");
            Ok(ExitCode::from(EXIT_YES))
        }
        PackingOutcome::Exceeded => {
            println!("greedy packing exceeds k={k}: the instance is a NO instance");
            Ok(ExitCode::from(EXIT_NO))
        }
        PackingOutcome::Packing(packing) => {
            let audit = audit_kernel_size(&inst, &packing)?;
            println!("packing_size {}", packing.size());
            println!("components_star {}", audit.components_star);
            println!("components_triangle {}", audit.components_triangle);
            println!("components_small {}", audit.components_small);
            println!(
                "components_star_with_triangle {}",
                audit.components_star_with_triangle
            );
            println!("components_di_star {}", audit.components_di_star);
            println!("edges_on_packing {}", audit.edges_on_packing);
            println!("edges_outside_packing {}", audit.edges_outside_packing);
            println!("max_degree {}", audit.max_degree);
            let mut ok = true;
            if let Some(bound) = edge_bound(d, k) {
                let m = inst.graph.edge_count();
                println!("edge_bound {bound}");
                println!("edge_bound_satisfied {}", m <= bound);
                println!("degree_bound {}", degree_bound(d, k));
                println!(
                    "degree_bound_satisfied {}",
                    audit.max_degree <= degree_bound(d, k)
                );
                ok = m <= bound && audit.max_degree <= degree_bound(d, k);
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kernelize {
            d,
            k,
            method,
            input,
            output,
            stats,
        } => run_kernelize(d, k, method, input, output, stats),
        Command::Solve { d, k, input } => run_solve(d, k, input),
        Command::Verify {
            d,
            kmax,
            n,
            count,
            seed,
            method,
            mmax,
        } => run_verify(d, kmax, n, count, seed, method, mmax),
        Command::Gen { what } => run_gen(what),
        Command::Audit { d, k, input } => run_audit(d, k, input),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
