use std::io::Write;
use std::path::{Path, PathBuf};

use anonhist::lowerbound::{
    bits_from_hex, bits_to_string, decode_exhaustive, decode_nearest, encode, generate_packing,
    EncodingSpec,
};
use anonhist::mechanism::{MechanismKind, ReleaseConfig};
use anonhist::noise::stream;
use anonhist::text::{format_lines, parse_partition};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::audit::sensitivity_audit;
use crate::error::{BenchError, Result};
use crate::experiment::{run_error_experiment, Shape};
use crate::oracle::brute_force_project;

#[derive(Debug, Parser)]
#[command(
    name = "anonhist",
    version,
    about = "Private release of anonymized histograms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Release one noised partition read from a file.
    Release(ReleaseArgs),
    /// Estimate the mean ℓ1 error of a mechanism.
    Eval(EvalArgs),
    /// Encode a bit string (hex) as a partition.
    Encode {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        bits: String,
    },
    /// Decode a partition to the nearest bit string.
    Decode {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        input: PathBuf,
        /// Search all 2^m bit strings instead of decoding bit by bit.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Generate a certified packing of partitions.
    Pack {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        attempts: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exhaustively check the sensitivity of the rank-split map.
    Audit {
        #[arg(long)]
        n: u64,
    },
    /// Exhaustive reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Nearest partition of size at most n to an integer vector (JSON array).
    Project {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct ReleaseArgs {
    #[arg(long)]
    pub eps: f64,
    #[arg(
        long,
        conflicts_with = "unknown_n",
        required_unless_present = "unknown_n"
    )]
    pub n: Option<u64>,
    #[arg(long)]
    pub unknown_n: bool,
    /// Defaults to alg2 with --unknown-n, alg1 otherwise.
    #[arg(long)]
    pub mechanism: Option<MechanismKind>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "alg1")]
    pub mechanism: MechanismKind,
    #[arg(long, conflicts_with = "shape")]
    pub input: Option<PathBuf>,
    /// Without --input or --shape, all three shapes are reported.
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    /// Record wall-clock time (makes the report non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Release(args) => release(args, out),
        Command::Eval(args) => eval(args, out),
        Command::Encode { n, delta, bits } => {
            let spec = EncodingSpec::new(n, delta)?;
            let p = encode(&spec, &bits_from_hex(&bits, spec.m)?)?;
            writeln!(out, "{}", serde_json::to_string(&p)?)?;
            Ok(())
        }
        Command::Decode {
            n,
            delta,
            input,
            exhaustive,
        } => {
            let spec = EncodingSpec::new(n, delta)?;
            let p = parse_partition(&read(&input)?)?;
            let bits = if exhaustive {
                decode_exhaustive(&spec, &p)?
            } else {
                decode_nearest(&spec, &p)
            };
            writeln!(out, "{}", bits_to_string(&bits))?;
            Ok(())
        }
        Command::Pack {
            n,
            delta,
            attempts,
            seed,
        } => {
            let packing = generate_packing(n, delta, attempts, &mut stream(seed, 0))?;
            write_json(out, &packing)
        }
        Command::Audit { n } => write_json(out, &sensitivity_audit(n)?),
        Command::Oracle(OracleCommand::Project { n, input }) => {
            let v: Vec<i64> = serde_json::from_str(&read(&input)?)
                .map_err(|e| anonhist::Error::Parse(format!("json: {e}")))?;
            let (partition, cost) = brute_force_project(&v, n)?;
            write_json(out, &ProjectOutput { partition, cost })
        }
    }
}

#[derive(Serialize)]
struct ProjectOutput {
    partition: anonhist::partition::IntegerPartition,
    cost: u64,
}

fn release(args: ReleaseArgs, out: &mut dyn Write) -> Result<()> {
    let mechanism_kind = args.mechanism.unwrap_or(if args.unknown_n {
        MechanismKind::Alg2
    } else {
        MechanismKind::Alg1
    });
    let config = ReleaseConfig {
        epsilon: args.eps,
        size_bound: args.n,
        mechanism_kind,
        seed: args.seed,
    };
    let p = parse_partition(&read(&args.input)?)?;
    let released = config.release(&p, &mut stream(args.seed, 0))?;
    out.write_all(format_lines(&released).as_bytes())?;
    Ok(())
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> Result<()> {
    let config = ReleaseConfig {
        epsilon: args.eps,
        size_bound: (args.mechanism != MechanismKind::Alg2).then_some(args.n),
        mechanism_kind: args.mechanism,
        seed: args.seed,
    };
    let run = |p, label: &str| run_error_experiment(&config, &p, label, args.trials, args.timing);
    if let Some(path) = &args.input {
        let p = parse_partition(&read(path)?)?;
        write_json(out, &run(p, &path.display().to_string())?)
    } else if let Some(shape) = args.shape {
        write_json(out, &run(shape.build(args.n), shape.name())?)
    } else {
        let reports = Shape::ALL
            .iter()
            .map(|s| run(s.build(args.n), s.name()))
            .collect::<Result<Vec<_>>>()?;
        write_json(out, &reports)
    }
}
