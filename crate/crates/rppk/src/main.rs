use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rppk::bench::{read_optima, run_bench, write_csv, write_quartiles, OPTIMA_FILE};
use rppk::edgelist::write_edgelist;
use rppk::pipeline::{
    check_extension, check_tour, kernelize_prepared, prepare, read_instance, solve, stats, Method,
};
use rppk::solution::{parse_solution, write_walk};
use rppk::synth::{berlin_proxy, ur_instance};
use rppk::trace::{parse_trace, write_trace};
use rppk_core::graph::ClosedWalk;
use rppk_core::kernel::{GammaBound, KernelOptions};
use rppk_core::ratio::{parse_rational, Rational};
use rppk_core::solver::{lift_to_graph, lower_bound};

/// Approximate kernelization for the Rural Postman Problem.
#[derive(Parser)]
#[command(name = "rppk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaArg {
    /// ω(R)
    R,
    /// the combined lower bound
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Approx32,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Kernelize an instance, writing the kernel and its trace.
    Kernelize {
        #[arg(long, value_parser = rational)]
        eps: Rational,
        #[arg(long)]
        weight_reduce: bool,
        #[arg(long, value_enum, default_value = "r")]
        gamma_bound: GammaArg,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(short, long)]
        trace: PathBuf,
    },
    /// Solve an instance; the tour is written in the instance's own ids.
    Solve {
        #[arg(long, value_enum, default_value = "approx32")]
        method: MethodArg,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lift a kernel solution to a tour of the original instance.
    Lift {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        trace: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a tour or extension against an instance.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Benchmark every instance in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_parser = rational)]
        eps: Rational,
        #[arg(long)]
        csv: PathBuf,
        /// `name,opt` file; defaults to optima.csv in the directory.
        #[arg(long)]
        optima: Option<PathBuf>,
        #[arg(long)]
        quartiles: Option<PathBuf>,
        #[arg(long)]
        weight_reduce: bool,
        #[arg(long, value_enum, default_value = "r")]
        gamma_bound: GammaArg,
    },
    /// Print instance statistics.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write a synthetic instance in the canonical format.
    Generate {
        #[command(subcommand)]
        kind: Generate,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Random geometric instance.
    Ur {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Street grid of 5097 vertices with three required components.
    BerlinProxy {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    match parse_rational(s) {
        Some(r) if r > Rational::from_integer(0) => Ok(r),
        Some(_) => Err("must be positive".into()),
        None => Err(format!("not a number: {s:?}")),
    }
}

fn options(weight_reduce: bool, gamma: GammaArg) -> KernelOptions {
    KernelOptions {
        weight_reduction: weight_reduce,
        gamma_bound: match gamma {
            GammaArg::R => GammaBound::Required,
            GammaArg::Max => GammaBound::LowerBound,
        },
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(Into::into),
    }
}

fn load(path: &Path) -> Result<rppk::pipeline::Loaded> {
    let loaded = read_instance(path).with_context(|| format!("reading {}", path.display()))?;
    for w in &loaded.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(loaded)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Kernelize {
            eps,
            weight_reduce,
            gamma_bound,
            input,
            output,
            trace,
        } => {
            let inst = load(&input)?.instance;
            let prep = prepare(&inst)?.ok_or_else(|| anyhow!("instance has no required edges"))?;
            let k = kernelize_prepared(&prep, eps, options(weight_reduce, gamma_bound))?;
            let kernel = &k.kernel.instance;
            fs::write(&output, write_edgelist(&kernel.to_instance()))?;
            fs::write(&trace, write_trace(&k.kernel.trace))?;
            eprintln!(
                "kernel: {} vertices, {} required edges, {} ms (closure {} ms)",
                kernel.vertex_count(),
                kernel.required().len(),
                k.elapsed.as_millis(),
                prep.elapsed.as_millis()
            );
        }
        Command::Solve {
            method,
            input,
            output,
        } => {
            let inst = load(&input)?.instance;
            let walk = match prepare(&inst)? {
                None => ClosedWalk::default(),
                Some(prep) => solve(
                    &prep,
                    match method {
                        MethodArg::Approx32 => Method::Approx32,
                        MethodArg::Exact => Method::Exact,
                    },
                )?,
            };
            eprintln!("weight {}", walk.weight());
            emit(output.as_deref(), &write_walk(&walk))?;
        }
        Command::Lift {
            input,
            trace,
            solution,
            output,
        } => {
            let inst = load(&input)?.instance;
            let trace = parse_trace(&fs::read_to_string(&trace)?).context("reading trace")?;
            let sol =
                parse_solution(&fs::read_to_string(&solution)?).context("reading solution")?;
            let prep = prepare(&inst)?.ok_or_else(|| anyhow!("instance has no required edges"))?;
            let walk = lift_to_graph(&prep.closure, &prep.metric, &trace, &sol)?;
            check_tour(&inst, &walk).map_err(|e| anyhow!("lifted tour is invalid: {e}"))?;
            eprintln!("weight {}", walk.weight());
            emit(output.as_deref(), &write_walk(&walk))?;
        }
        Command::Verify { input, solution } => {
            let inst = load(&input)?.instance;
            let sol =
                parse_solution(&fs::read_to_string(&solution)?).context("reading solution")?;
            let weight = match sol {
                rppk_core::solver::KernelSolution::Tour(w) => {
                    check_tour(&inst, &w).map_err(|e| anyhow!(e))?;
                    w.weight()
                }
                rppk_core::solver::KernelSolution::Extension(s) => {
                    check_extension(&inst, &s).map_err(|e| anyhow!(e))?;
                    inst.required().total_weight() + s.total_weight()
                }
            };
            println!("ok weight {weight}");
        }
        Command::Bench {
            dir,
            eps,
            csv,
            optima,
            quartiles,
            weight_reduce,
            gamma_bound,
        } => {
            let optima_path = optima.unwrap_or_else(|| dir.join(OPTIMA_FILE));
            let optima = if optima_path.exists() {
                read_optima(&optima_path).map_err(|e| anyhow!(e))?
            } else {
                Default::default()
            };
            let rows = run_bench(&dir, eps, options(weight_reduce, gamma_bound), &optima)
                .with_context(|| format!("reading {}", dir.display()))?;
            for row in &rows {
                if let Err(e) = &row.result {
                    eprintln!("failed: {}: {e}", row.name);
                }
            }
            write_csv(&rows, !optima.is_empty(), fs::File::create(&csv)?)?;
            if let Some(q) = quartiles {
                write_quartiles(&rows, fs::File::create(q)?)?;
            }
        }
        Command::Stats { input } => {
            let inst = load(&input)?.instance;
            let s = stats(&inst);
            println!("V {}", s.vertices);
            println!("VR {}", s.required_vertices);
            println!("R {}", s.required_edges);
            println!("b {}", s.b);
            println!("c {}", s.c);
            println!("wR {}", s.required_weight);
            let lb = match prepare(&inst)? {
                Some(p) => lower_bound(&p.metric)?,
                None => 0,
            };
            println!("lower_bound {lb}");
        }
        Command::Generate { kind, output } => {
            let inst = match kind {
                Generate::Ur { n, d, p, seed } => {
                    if !(0.0..=1.0).contains(&p) || n < 2 || d == 0 {
                        bail!("need n >= 2, d >= 1 and 0 <= p <= 1");
                    }
                    ur_instance(n, d, p, seed)
                }
                Generate::BerlinProxy { seed } => berlin_proxy(seed),
            };
            emit(output.as_deref(), &write_edgelist(&inst))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
