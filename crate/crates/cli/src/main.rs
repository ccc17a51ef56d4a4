use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kloosterman_core::congruences::predict;
use kloosterman_core::export::{write_classification_csv, write_gauss_csv, write_spectrum_csv, write_spectrum_json};
use kloosterman_core::gauss::{gamma2, gauss_sum, gk_holds, stickelberger_holds, wt2, GaussTable};
use kloosterman_core::{
    ksum_all, ksum_naive, run_verify, run_zeros, Error, FieldCtx, IntResidue, RingCtx, Theorem,
    VerifyOptions,
};

#[derive(Parser)]
#[command(name = "kloost", version, about = "Exact binary Kloosterman sums and their congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Defining polynomial, trace data and bases of GF(2^n).
    FieldInfo {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_hex)]
        poly: Option<u64>,
    },
    /// One Kloosterman sum.
    Ksum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        #[arg(long, value_parser = parse_hex)]
        poly: Option<u64>,
    },
    /// The full spectrum (or the classification table with --classify).
    Ktable {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_hex)]
        poly: Option<u64>,
        /// Emit predicted classes next to each exact value (CSV only).
        #[arg(long)]
        classify: bool,
    },
    /// Predicted class of K(a) for one modulus, compared with the exact value.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        #[arg(long = "mod")]
        modulus: u32,
        #[arg(long, value_parser = parse_hex)]
        poly: Option<u64>,
    },
    /// Exhaustive check of one congruence statement over a range of degrees.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Ring precision for the Galois-ring checks.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Every a with K(a) = 0, via congruence sieving.
    Zeros {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Gauss sums g(j) in GR(2^k, n) with their Stickelberger and Gross-Koblitz checks.
    Gauss {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: Option<u64>,
    },
    /// The 2-adic Gamma function at x mod 2^precision.
    Gamma2 {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("{s:?} is not hexadecimal: {e}"))
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Io(e.to_string())
}

fn run(command: Command) -> Result<Outcome, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::FieldInfo { n, poly } => {
            let ctx = FieldCtx::new(n, poly)?;
            let dual: Vec<String> = ctx.dual_basis().iter().map(|d| d.to_string()).collect();
            writeln!(out, "field: {}", ctx.spec_string()).map_err(io_err)?;
            writeln!(out, "order: {}", ctx.order()).map_err(io_err)?;
            writeln!(out, "trace_mask: {:#x}", ctx.trace_mask()).map_err(io_err)?;
            writeln!(out, "primitive: {}", ctx.primitive_element()).map_err(io_err)?;
            writeln!(out, "dual_basis: {}", dual.join(" ")).map_err(io_err)?;
            if n % 2 == 1 {
                writeln!(out, "cube_root_exponent: {}", ctx.cube_root_exponent()).map_err(io_err)?;
            }
        }
        Command::Ksum { n, a, poly } => {
            let ctx = FieldCtx::new(n, poly)?;
            let a = ctx.parse_element(&a)?;
            writeln!(out, "{}", ksum_naive(&ctx, a)).map_err(io_err)?;
        }
        Command::Ktable { n, format, out: path, poly, classify } => {
            let ctx = FieldCtx::new(n, poly)?;
            let spec = ksum_all(&ctx)?;
            let sink: Box<dyn Write> = match path {
                Some(p) => Box::new(File::create(&p).map_err(io_err)?),
                None => Box::new(io::stdout()),
            };
            let sink = BufWriter::new(sink);
            match (format, classify) {
                (Format::Csv, false) => write_spectrum_csv(&ctx, &spec, sink)?,
                (Format::Json, false) => write_spectrum_json(&ctx, &spec, sink)?,
                (Format::Csv, true) => {
                    write_classification_csv(&RingCtx::new(ctx, 4)?, &spec, sink)?
                }
                (Format::Json, true) => {
                    return Err(Error::Config("--classify writes CSV only".into()))
                }
            }
        }
        Command::Classify { n, a, modulus, poly } => {
            let ring = RingCtx::new(FieldCtx::new(n, poly)?, 4)?;
            let a = ring.base().parse_element(&a)?;
            let class = predict(&ring, a, modulus)?;
            let k = ksum_naive(ring.base(), a);
            let ok = class.contains(k);
            writeln!(out, "a={a} K={k} predicted={class} match={ok}").map_err(io_err)?;
            if !ok {
                return Ok(Outcome::Fail);
            }
        }
        Command::Verify { theorem, n_min, n_max, k, json } => {
            let theorem: Theorem = theorem.parse()?;
            let (lo, hi) = theorem.default_range();
            let report = run_verify(
                theorem,
                n_min.unwrap_or(lo),
                n_max.unwrap_or(hi),
                &VerifyOptions { precision: k },
            )?;
            if json {
                writeln!(out, "{}", report.to_json()).map_err(io_err)?;
            } else {
                write!(out, "{}", report.render_text()).map_err(io_err)?;
            }
            if !report.pass {
                return Ok(Outcome::Fail);
            }
        }
        Command::Zeros { n, json } => {
            let search = run_zeros(n)?;
            if json {
                writeln!(out, "{}", search.to_json()).map_err(io_err)?;
            } else {
                for z in &search.zeros {
                    writeln!(out, "{z}").map_err(io_err)?;
                }
                eprintln!(
                    "n={} sieve={} candidates={} zeros={} matches_ground_truth={}",
                    search.n,
                    search.sieve.join("+"),
                    search.candidates,
                    search.zeros.len(),
                    search.matches_ground_truth
                );
            }
            if !search.matches_ground_truth {
                return Ok(Outcome::Fail);
            }
        }
        Command::Gauss { n, k, j } => {
            let ring = RingCtx::new(FieldCtx::new(n, None)?, k)?;
            match j {
                Some(j) => {
                    let g = gauss_sum(&ring, j)?;
                    let wt = wt2(j);
                    let stick = if wt < k { stickelberger_holds(g, j)?.to_string() } else { String::new() };
                    let gk = if k >= wt + 3 { gk_holds(g, n, j)?.to_string() } else { String::new() };
                    writeln!(out, "j,wt2,g_mod_2k,stickelberger_ok,gk_ok").map_err(io_err)?;
                    writeln!(out, "{j},{wt},{},{stick},{gk}", g.value()).map_err(io_err)?;
                }
                None => write_gauss_csv(&GaussTable::new(ring)?, BufWriter::new(out))?,
            }
        }
        Command::Gamma2 { x, precision } => {
            if !(1..=32).contains(&precision) {
                return Err(Error::Config(format!("precision must be in 1..=32, got {precision}")));
            }
            let arg = IntResidue::new(x, precision);
            writeln!(out, "{}", gamma2(arg)).map_err(io_err)?;
        }
    }
    Ok(Outcome::Pass)
}
