//! `xplus` — a command-line tool for exact experiments with integer
//! distributions: the plus rearrangement, dispersion functionals and their
//! minimizers, exhaustive minimality oracles, convolutions, concentration
//! comparisons, and local-limit-theorem scans.
//!
//! Inputs and outputs are JSON (probabilities as exact fraction strings) or
//! CSV for scans. Every failure carries a stable machine-readable code on
//! stderr: exit status 1 flags validation errors, 2 flags budget errors.

mod error;
mod sweep;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use xplus_core::json::{self, parse_fraction};
use xplus_core::scalar::Scalar;
use xplus_core::sums::{ConvMode, SignMode};
use xplus_core::{
    check_main_inequality, compare_concentration, concentration, concentration_float, convolve,
    dispersion, llt_scan, plus_rearrangement, proof_chain, self_convolve, verify_theorem,
    DispersionFunction, IntDist, Minimizers, Pmf,
};

use error::CliError;

#[derive(Parser)]
#[command(name = "xplus", version, about = "Exact rearrangement and dispersion experiments on integer distributions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rearrange a distribution into its plus form.
    Rearrange {
        /// Input distribution JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dispersion value and minimizer set of a distribution.
    Dispersion {
        #[arg(long = "in")]
        input: PathBuf,
        /// Cost function: identity | square | power:<p>.
        #[arg(long, default_value = "square")]
        f: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the rearrangement inequality on one distribution.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "square")]
        f: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the sorted-dot-product chain for a distribution and center.
    ProofChain {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "square")]
        f: String,
        /// Center value (fraction like 3/2, or decimal for float mode);
        /// defaults to an exact minimizer for the chosen cost.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively verify plus-form minimality for a probability multiset.
    Oracle {
        /// Probability multiset as a JSON list of fractions, e.g. '["2/3","1/3"]'.
        #[arg(long)]
        probs: String,
        /// Integer window `lo:hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "square")]
        f: String,
        /// Cap on the raw assignment count.
        #[arg(long = "budget-enum", default_value_t = xplus_core::oracle::DEFAULT_ENUMERATION_BUDGET)]
        budget_enum: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolve two distributions, or a distribution with itself n times.
    Convolve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Second distribution (pairwise convolution).
        #[arg(long, conflicts_with = "n")]
        with: Option<PathBuf>,
        /// Number of i.i.d. copies to sum.
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// exact | float.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long = "budget-exact-bits", default_value_t = xplus_core::sums::DEFAULT_EXACT_BIT_BUDGET)]
        budget_exact_bits: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Concentration function of a distribution or of its n-fold sum.
    Concentration {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// exact | float.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long = "budget-exact-bits", default_value_t = xplus_core::sums::DEFAULT_EXACT_BIT_BUDGET)]
        budget_exact_bits: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare Q(ΣXᵢ) with the best Q(Σ aᵢXᵢ⁺) over sign patterns.
    Compare {
        /// Input distribution(s); repeat for non-identical summands.
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        /// With a single --in, the number of i.i.d. copies.
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// search | all-plus.
        #[arg(long, default_value = "search")]
        signs: String,
        #[arg(long = "budget-signs", default_value_t = xplus_core::sums::DEFAULT_SIGN_BUDGET)]
        budget_signs: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local-limit-theorem ratio scan; emits CSV `n,q_n,ratio`.
    LltScan {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated copy counts, e.g. 16,64,256,1024,4096.
        #[arg(long)]
        ns: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random sweep of inequality checks with oracle spot-checks.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value = "square")]
        f: String,
        #[arg(long = "budget-enum", default_value_t = xplus_core::oracle::DEFAULT_ENUMERATION_BUDGET)]
        budget_enum: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json_line());
            ExitCode::from(err.exit_class)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Rearrange { input, out } => {
            let d = read_dist(&input)?;
            emit_json(&plus_rearrangement(&d), &out)
        }
        Cmd::Dispersion { input, f, out } => {
            let d = read_dist(&input)?;
            let f = parse_f(&f)?;
            emit_json(
                &WithFunction {
                    f: f.to_string(),
                    body: dispersion(&d, &f),
                },
                &out,
            )
        }
        Cmd::Check { input, f, out } => {
            let d = read_dist(&input)?;
            let f = parse_f(&f)?;
            emit_json(
                &WithFunction {
                    f: f.to_string(),
                    body: check_main_inequality(&d, &f),
                },
                &out,
            )
        }
        Cmd::ProofChain { input, f, a, out } => {
            let d = read_dist(&input)?;
            let f = parse_f(&f)?;
            let center = match a {
                Some(text) => parse_center(&text)?,
                None => default_center(&d, &f),
            };
            emit_json(
                &WithFunction {
                    f: f.to_string(),
                    body: proof_chain(&d, &f, &center),
                },
                &out,
            )
        }
        Cmd::Oracle {
            probs,
            window,
            f,
            budget_enum,
            out,
        } => {
            let probs = parse_probs(&probs)?;
            let (lo, hi) = parse_window(&window)?;
            let f = parse_f(&f)?;
            let report = verify_theorem(&probs, lo..=hi, &f, budget_enum)?;
            emit_json(&report, &out)
        }
        Cmd::Convolve {
            input,
            with,
            n,
            mode,
            budget_exact_bits,
            out,
        } => {
            let d = read_dist(&input)?;
            if let Some(path) = with {
                let e = read_dist(&path)?;
                return emit_json(&convolve(&d, &e), &out);
            }
            ensure_positive_copies(n)?;
            match self_convolve(&d, n, parse_mode(&mode)?, budget_exact_bits)? {
                Pmf::Exact(sum) => emit_json(&sum, &out),
                Pmf::Float(pmf) => emit_json(&FloatPmfOut::from(&pmf), &out),
            }
        }
        Cmd::Concentration {
            input,
            n,
            mode,
            budget_exact_bits,
            out,
        } => {
            let d = read_dist(&input)?;
            ensure_positive_copies(n)?;
            let report = match self_convolve(&d, n, parse_mode(&mode)?, budget_exact_bits)? {
                Pmf::Exact(sum) => concentration(&sum),
                Pmf::Float(pmf) => concentration_float(&pmf),
            };
            emit_json(&report, &out)
        }
        Cmd::Compare {
            input,
            n,
            signs,
            budget_signs,
            out,
        } => {
            ensure_positive_copies(n)?;
            let mut ds = Vec::new();
            for path in &input {
                ds.push(read_dist(path)?);
            }
            if ds.len() == 1 && n > 1 {
                let d = ds[0].clone();
                ds = vec![d; n as usize];
            }
            let mode = match signs.as_str() {
                "search" => SignMode::Search,
                "all-plus" => SignMode::AllPlus,
                other => {
                    return Err(CliError::bad_argument(format!(
                        "unknown sign mode `{other}` (expected search or all-plus)"
                    )))
                }
            };
            let report = compare_concentration(&ds, mode, budget_signs)?;
            emit_json(&report, &out)
        }
        Cmd::LltScan { input, ns, out } => {
            let d = read_dist(&input)?;
            let ns = parse_ns(&ns)?;
            let rows = llt_scan(&d, &ns)?;
            let mut csv = String::from("n,q_n,ratio\n");
            for row in rows {
                csv.push_str(&format!("{},{},{}\n", row.n, row.q_n, row.ratio));
            }
            emit_text(csv, &out)
        }
        Cmd::Sweep {
            seed,
            count,
            f,
            budget_enum,
            out,
        } => {
            let f = parse_f(&f)?;
            let report = sweep::run_sweep(seed, count, &f, budget_enum);
            let failed = report.checks_failed > 0 || report.oracle_failures > 0;
            emit_json(&report, &out)?;
            if failed {
                return Err(CliError::sweep_failures());
            }
            Ok(())
        }
    }
}

/// Envelope that labels a report with the cost function it used.
#[derive(Serialize)]
struct WithFunction<T: Serialize> {
    f: String,
    #[serde(flatten)]
    body: T,
}

/// Dense float PMF in wire form.
#[derive(Serialize)]
struct FloatPmfOut {
    mode: &'static str,
    offset: i64,
    probs: Vec<f64>,
    total_mass: f64,
}

impl From<&xplus_core::FloatPmf> for FloatPmfOut {
    fn from(p: &xplus_core::FloatPmf) -> Self {
        FloatPmfOut {
            mode: "float",
            offset: p.min_value(),
            probs: p.probs().to_vec(),
            total_mass: p.total_mass(),
        }
    }
}

fn read_dist(path: &PathBuf) -> Result<IntDist, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    Ok(json::parse_dist(&text)?)
}

fn parse_f(text: &str) -> Result<DispersionFunction, CliError> {
    text.parse::<DispersionFunction>()
        .map_err(CliError::bad_argument)
}

fn parse_mode(text: &str) -> Result<ConvMode, CliError> {
    match text {
        "exact" => Ok(ConvMode::Exact),
        "float" => Ok(ConvMode::Float),
        other => Err(CliError::bad_argument(format!(
            "unknown mode `{other}` (expected exact or float)"
        ))),
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || {
        CliError::bad_argument(format!(
            "bad window `{text}` (expected `<lo>:<hi>` with lo ≤ hi)"
        ))
    };
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.parse().map_err(|_| bad())?;
    let hi: i64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_probs(text: &str) -> Result<Vec<xplus_core::Rational>, CliError> {
    let entries: Vec<String> = serde_json::from_str(text).map_err(|e| {
        CliError::bad_argument(format!("--probs must be a JSON list of fraction strings: {e}"))
    })?;
    entries
        .iter()
        .map(|s| parse_fraction(s).map_err(CliError::from))
        .collect()
}

fn parse_ns(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .filter(|part| !part.is_empty())
        .map(|part| {
            let n: u64 = part
                .trim()
                .parse()
                .map_err(|_| CliError::bad_argument(format!("bad copy count `{part}`")))?;
            if n == 0 {
                return Err(CliError::bad_argument("copy counts must be ≥ 1".to_string()));
            }
            Ok(n)
        })
        .collect()
}

fn parse_center(text: &str) -> Result<Scalar, CliError> {
    if text.contains(['.', 'e', 'E']) {
        let x: f64 = text
            .parse()
            .map_err(|_| CliError::bad_argument(format!("bad center `{text}`")))?;
        return Ok(Scalar::Approx(x));
    }
    Ok(Scalar::Exact(parse_fraction(text)?))
}

fn default_center(d: &IntDist, f: &DispersionFunction) -> Scalar {
    match f {
        DispersionFunction::Identity => Scalar::Exact(d.median_set().lo),
        DispersionFunction::Square => Scalar::Exact(d.mean()),
        DispersionFunction::Power(_) => match dispersion(d, f).minimizers {
            Minimizers::ApproxPoint { a, .. } => Scalar::Approx(a),
            _ => unreachable!("power costs report approximate points"),
        },
    }
}

fn ensure_positive_copies(n: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::bad_argument("--n must be ≥ 1".to_string()));
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value)
        .map_err(|e| CliError::io(format!("serialization failed: {e}")))?;
    text.push('\n');
    emit_text(text, out)
}

fn emit_text(text: String, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(format!("cannot write stdout: {e}")))
        }
    }
}
