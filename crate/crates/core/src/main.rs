use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsprep::bench::{magnus_plan, run_point, run_sweep, sort_rows, synthesize, write_csv, Method, SweepConfig, MAGNUS_BITS};
use qsprep::cliffordt::{compile_with_stats, SynthesisConfig, ToffoliMode};
use qsprep::sim::DEFAULT_QUBIT_BUDGET;
use qsprep::states::{BenchmarkSpec, Family};
use qsprep::verify::{parse_tags, run_check};
use qsprep::{Circuit, Error};

#[derive(Parser)]
#[command(name = "qsprep", version, about = "State-preparation compiler and resource estimator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize one state with one method and write the logical circuit.
    Synth {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        method: Method,
        /// Alias-table width for sampling methods.
        #[arg(long, default_value_t = 10)]
        b: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower a circuit file to Clifford+T at tolerance 2^-b.
    Compile {
        input: PathBuf,
        #[arg(long)]
        b: u32,
        #[command(flatten)]
        lowering: LoweringArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print logical and compiled counts without simulating.
    Estimate {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        b: u32,
        #[command(flatten)]
        lowering: LoweringArgs,
    },
    /// Matched-precision sweep written as CSV.
    Bench {
        #[command(flatten)]
        state: StateArgs,
        /// Comma-separated methods; all four when omitted.
        #[arg(long, value_delimiter = ',')]
        method: Vec<Method>,
        /// Comma-separated b values.
        #[arg(long, value_delimiter = ',', conflicts_with = "b_range")]
        b: Vec<u32>,
        /// Inclusive range `lo:hi`.
        #[arg(long)]
        b_range: Option<String>,
        #[command(flatten)]
        lowering: LoweringArgs,
        #[arg(long, default_value_t = DEFAULT_QUBIT_BUDGET)]
        budget_qubits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run acceptance checks: `all`, `quick`, numbers or ranges such as `4-7`.
    Verify {
        #[arg(default_value = "quick")]
        tags: String,
    },
}

#[derive(Args)]
struct StateArgs {
    /// w, dicke, dense_random, sparse_uniform, sparse_random, t_friendly,
    /// thc_toy, thc_file:PATH, syk or magnus.
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Dicke weight or Magnus order.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl StateArgs {
    fn spec(&self) -> qsprep::Result<BenchmarkSpec> {
        BenchmarkSpec::new(self.family.clone(), self.n, self.k.unwrap_or(0), self.seed)
    }
}

#[derive(Args)]
struct LoweringArgs {
    /// Toffoli lowering: gidney or textbook.
    #[arg(long, default_value = "gidney")]
    backend_mode: ToffoliMode,
    /// Charge non-exact rotations by the cost model instead of synthesizing them.
    #[arg(long)]
    fallback_cost_model: bool,
}

fn parse_range(s: &str) -> qsprep::Result<Vec<u32>> {
    let bad = || Error::Parameter(format!("b range must look like `4:10`, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (u32, u32) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn emit(out: Option<&Path>, text: &str) -> qsprep::Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> qsprep::Result<bool> {
    match cli.command {
        Command::Synth { state, method, b, out } => {
            let spec = state.spec()?;
            let circuit = synthesize(&spec.generate()?, method, b)?;
            eprint!("{}", circuit.report());
            emit(out.as_deref(), &circuit.to_text())?;
        }
        Command::Compile { input, b, lowering, out } => {
            let circuit = Circuit::from_text(&fs::read_to_string(&input)?)?;
            let cfg = SynthesisConfig::new(b)?
                .with_mode(lowering.backend_mode)
                .with_cost_model(lowering.fallback_cost_model);
            let compiled = compile_with_stats(&circuit, &cfg)?;
            match out {
                Some(p) => {
                    fs::write(p, compiled.circuit.to_text())?;
                    print!("{}", compiled.report);
                }
                None => print!("{}", compiled.circuit.to_text()),
            }
            eprintln!(
                "rotations: exact {} approximate {} placeholder {}; estimated T {}",
                compiled.stats.exact_rotations,
                compiled.stats.approximate_rotations,
                compiled.stats.placeholder_rotations,
                compiled.stats.estimated_t
            );
        }
        Command::Estimate { state, method, b, lowering } => {
            let spec = state.spec()?;
            let cfg = SweepConfig {
                toffoli_mode: lowering.backend_mode,
                cost_model: lowering.fallback_cost_model,
                simulate: false,
                ..SweepConfig::default()
            };
            let row = run_point(&spec, &spec.generate()?, method, b, &cfg)?;
            println!("family: {}", row.family);
            println!("method: {}", row.method);
            println!("b: {}", row.b);
            println!("t_proxy: {}", row.t_proxy);
            println!("compiled_T: {}", row.compiled_t);
            println!("total_gates: {}", row.total_gates);
            println!("qubits: {}", row.qubits);
        }
        Command::Bench { state, method, b, b_range, lowering, budget_qubits, out } => {
            let methods = if method.is_empty() { Method::ALL.to_vec() } else { method };
            let explicit = match (&b_range, b.is_empty()) {
                (Some(r), _) => Some(parse_range(r)?),
                (None, false) => Some(b),
                (None, true) => None,
            };
            let cfg = SweepConfig {
                budget_qubits,
                toffoli_mode: lowering.backend_mode,
                cost_model: lowering.fallback_cost_model,
                simulate: true,
            };
            let mut rows = Vec::new();
            if state.family == Family::Magnus && state.k.is_none() {
                let bs = explicit.unwrap_or_else(|| MAGNUS_BITS.to_vec());
                for (spec, ms) in magnus_plan(&methods) {
                    rows.extend(run_sweep(&spec, &ms, &bs, &cfg)?);
                }
            } else {
                let default = if state.family == Family::Magnus { MAGNUS_BITS.to_vec() } else { (4..=12).collect() };
                rows = run_sweep(&state.spec()?, &methods, &explicit.unwrap_or(default), &cfg)?;
            }
            sort_rows(&mut rows);
            match out {
                Some(p) => write_csv(&rows, fs::File::create(p)?)?,
                None => write_csv(&rows, io::stdout().lock())?,
            }
        }
        Command::Verify { tags } => {
            let mut all = true;
            for id in parse_tags(&tags)? {
                let outcome = run_check(id);
                println!("{outcome}");
                all &= outcome.passed;
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) => 2,
        Error::Validation(_) | Error::Structural(_) | Error::Parse { .. } => 3,
        Error::Capacity { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
