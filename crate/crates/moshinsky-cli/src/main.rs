//! Three subcommands sit on top of the library: `eval` prints one quantity,
//! `sweep` emits a figure table (or any registered quantity) as CSV, and
//! `verify` runs the invariant suites. Exit codes: 0 success, 1 verification
//! failure, 2 usage error, 3 I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use moshinsky::sweep::{
    figure_table, format_sig, function_table, Figure, CSV_SIG_DIGITS, DEFAULT_QUAD_POINTS,
};
use moshinsky::verify::{analytic_suite, oracle_suite, roundtrip_suite, CheckReport};
use moshinsky::verify::{ANALYTIC_TOL, ORACLE_TOL, ROUNDTRIP_TOL};
use moshinsky::{Coupling, IsingCoupling};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "moshinsky",
    version,
    about = "Closed-form quantities of two harmonically coupled oscillators and their spin-pair companion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one quantity with 12 significant digits.
    ///
    /// Quantities taking --K: exact-energy, hf-energy, ecorr, ecorr-series,
    /// overlap, entropy, entropy-series, entropy-asymptotic, purity,
    /// concurrence, mu0, mu1. Taking --E: tau, k-from-ecorr,
    /// entropy-from-ecorr, concurrence-from-ecorr, ising-entropy-from-ecorr,
    /// ising-concurrence-from-ecorr. Taking --lambda: ising-entropy,
    /// ising-ecorr, ising-concurrence. Taking nothing: alpha-min.
    Eval {
        /// Quantity name from the registry above.
        quantity: String,
        /// Oscillator coupling strength, K >= 0.
        #[arg(long = "K", value_name = "K", allow_negative_numbers = true)]
        k: Option<f64>,
        /// Correlation energy, E >= 0.
        #[arg(long = "E", value_name = "E", allow_negative_numbers = true)]
        e: Option<f64>,
        /// Spin-pair coupling, lambda >= 0.
        #[arg(long, value_name = "LAMBDA", allow_negative_numbers = true)]
        lambda: Option<f64>,
    },
    /// Write a figure table (or a single quantity sweep) as CSV.
    Sweep {
        /// Stock figure name, fig1 through fig10.
        #[arg(long, conflicts_with = "quantity")]
        figure: Option<String>,
        /// Any --K quantity from the eval registry, swept over the grid.
        #[arg(long)]
        quantity: Option<String>,
        /// Lower end of the sweep grid.
        #[arg(long)]
        k_min: Option<f64>,
        /// Upper end of the sweep grid.
        #[arg(long)]
        k_max: Option<f64>,
        /// Number of grid points (>= 2), endpoints included.
        #[arg(long)]
        steps: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quadrature points for the deviation-weight figures.
        #[arg(long)]
        quad_points: Option<usize>,
    },
    /// Run the invariant suites; exit 0 on all-pass, 1 on any failure.
    Verify {
        /// Which suite: all, analytic, oracle, or roundtrip.
        suite: String,
        /// Tolerance override; each suite has its own default.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// Pull out the single parameter an eval quantity needs, rejecting calls
/// that supply the wrong flavor.
fn take_param(
    needed: &str,
    k: Option<f64>,
    e: Option<f64>,
    lambda: Option<f64>,
) -> Result<f64, String> {
    let (value, extras) = match needed {
        "--K" => (k, [e.map(|_| "--E"), lambda.map(|_| "--lambda")]),
        "--E" => (e, [k.map(|_| "--K"), lambda.map(|_| "--lambda")]),
        "--lambda" => (lambda, [k.map(|_| "--K"), e.map(|_| "--E")]),
        _ => unreachable!(),
    };
    if let Some(extra) = extras.iter().flatten().next() {
        return Err(format!("this quantity takes {needed}, not {extra}"));
    }
    match value {
        Some(v) if v.is_finite() && v >= 0.0 => Ok(v),
        Some(v) => Err(format!("{needed} must be a finite nonnegative number, got {v}")),
        None => Err(format!("this quantity needs {needed}")),
    }
}

fn eval_k_quantity(name: &str, k: Coupling) -> Option<f64> {
    use moshinsky as m;
    let v = match name {
        "exact-energy" => m::exact_energy(m::QuantumNumbers::GROUND, k),
        "hf-energy" => m::hf_energy(k),
        "ecorr" => m::correlation_energy(k),
        "ecorr-series" => m::correlation_energy_series(k),
        "overlap" => m::overlap_squared(k),
        "entropy" => m::entropy(k),
        "entropy-series" => m::entropy_series_small_k(k),
        "entropy-asymptotic" => m::entropy_asymptotic_large_k(k),
        "purity" => m::purity(k),
        "concurrence" => m::moshinsky_concurrence(k),
        "mu0" => {
            let c = m::spectral_coefficients(k);
            c.big_c.powi(3)
        }
        "mu1" => {
            let c = m::spectral_coefficients(k);
            c.big_c.powi(3) * c.small_c
        }
        _ => return None,
    };
    Some(v)
}

fn eval_e_quantity(name: &str, e: f64) -> Option<moshinsky::Result<f64>> {
    use moshinsky as m;
    let v = match name {
        "tau" => m::Tau::from_ecorr(e).map(m::Tau::value),
        "k-from-ecorr" => m::k_from_ecorr(e).map(Coupling::k),
        "entropy-from-ecorr" => m::entropy_from_ecorr(e),
        "concurrence-from-ecorr" => m::concurrence_from_ecorr(e),
        "ising-entropy-from-ecorr" => m::ising_entropy_from_ecorr(e),
        "ising-concurrence-from-ecorr" => m::ising_concurrence_from_ecorr(e),
        _ => return None,
    };
    Some(v)
}

fn eval_lambda_quantity(name: &str, lambda: IsingCoupling) -> Option<f64> {
    use moshinsky as m;
    let v = match name {
        "ising-entropy" => m::ising_entropy(lambda),
        "ising-ecorr" => m::ising_correlation_energy(lambda),
        "ising-concurrence" => m::ising_concurrence(lambda),
        _ => return None,
    };
    Some(v)
}

const K_QUANTITIES: &[&str] = &[
    "exact-energy",
    "hf-energy",
    "ecorr",
    "ecorr-series",
    "overlap",
    "entropy",
    "entropy-series",
    "entropy-asymptotic",
    "purity",
    "concurrence",
    "mu0",
    "mu1",
];
const E_QUANTITIES: &[&str] = &[
    "tau",
    "k-from-ecorr",
    "entropy-from-ecorr",
    "concurrence-from-ecorr",
    "ising-entropy-from-ecorr",
    "ising-concurrence-from-ecorr",
];
const LAMBDA_QUANTITIES: &[&str] = &["ising-entropy", "ising-ecorr", "ising-concurrence"];

fn cmd_eval(quantity: &str, k: Option<f64>, e: Option<f64>, lambda: Option<f64>) -> ExitCode {
    let value = if quantity == "alpha-min" {
        if k.is_some() || e.is_some() || lambda.is_some() {
            return usage_error("alpha-min takes no parameter");
        }
        match moshinsky::alpha_min(DEFAULT_QUAD_POINTS) {
            Ok(a) => a.value(),
            Err(err) => return usage_error(&err.to_string()),
        }
    } else if K_QUANTITIES.contains(&quantity) {
        match take_param("--K", k, e, lambda) {
            Ok(v) => eval_k_quantity(quantity, Coupling::new(v).unwrap()).unwrap(),
            Err(msg) => return usage_error(&msg),
        }
    } else if E_QUANTITIES.contains(&quantity) {
        match take_param("--E", k, e, lambda) {
            Ok(v) => match eval_e_quantity(quantity, v).unwrap() {
                Ok(value) => value,
                Err(err) => return usage_error(&err.to_string()),
            },
            Err(msg) => return usage_error(&msg),
        }
    } else if LAMBDA_QUANTITIES.contains(&quantity) {
        match take_param("--lambda", k, e, lambda) {
            Ok(v) => eval_lambda_quantity(quantity, IsingCoupling::new(v).unwrap()).unwrap(),
            Err(msg) => return usage_error(&msg),
        }
    } else {
        return usage_error(&format!(
            "unknown quantity `{quantity}`; see `moshinsky eval --help` for the registry"
        ));
    };
    println!("{}", format_sig(value, CSV_SIG_DIGITS));
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    figure: Option<&str>,
    quantity: Option<&str>,
    k_min: Option<f64>,
    k_max: Option<f64>,
    steps: Option<usize>,
    out: Option<&PathBuf>,
    quad_points: Option<usize>,
) -> ExitCode {
    let quad = quad_points.unwrap_or(DEFAULT_QUAD_POINTS);
    let table = if let Some(name) = figure {
        let Some(fig) = Figure::parse(name) else {
            return usage_error(&format!("unknown figure `{name}`; expected fig1 through fig10"));
        };
        let (def_lo, def_hi, def_steps) = fig.default_range();
        let lo = k_min.unwrap_or(def_lo);
        let hi = k_max.unwrap_or(def_hi);
        let n = steps.unwrap_or(def_steps);
        figure_table(fig, lo, hi, n, quad)
    } else if let Some(name) = quantity {
        if !K_QUANTITIES.contains(&name) {
            return usage_error(&format!(
                "unknown sweep quantity `{name}`; any --K quantity from the eval registry works"
            ));
        }
        let lo = k_min.unwrap_or(0.0);
        let hi = k_max.unwrap_or(1.0);
        let n = steps.unwrap_or(101);
        function_table("k", name, lo, hi, n, |x| {
            let k = Coupling::new(x)?;
            Ok(eval_k_quantity(name, k).unwrap())
        })
    } else {
        return usage_error("sweep needs --figure or --quantity");
    };
    let table = match table {
        Ok(t) => t,
        Err(err) => return usage_error(&err.to_string()),
    };
    if let Some(path) = out {
        let write = || -> std::io::Result<()> {
            let mut file = std::fs::File::create(path)?;
            table.write_csv(&mut file)?;
            file.flush()
        };
        if let Err(err) = write() {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(EXIT_IO);
        }
    } else {
        print!("{}", table.to_csv());
    }
    ExitCode::SUCCESS
}

fn print_reports(label: &str, reports: &[CheckReport]) -> bool {
    let mut all_ok = true;
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "{label}/{}: max err {} (tol {}) {verdict}",
            r.name,
            format_sig(r.max_err, 3),
            format_sig(r.tol, 3)
        );
        all_ok &= r.passed();
    }
    all_ok
}

fn cmd_verify(suite: &str, tol: Option<f64>) -> ExitCode {
    if let Some(t) = tol {
        // Rejects NaN along with nonpositive values.
        if !t.is_finite() || t <= 0.0 {
            return usage_error("--tol must be a finite positive number");
        }
    }
    let mut all_ok = true;
    let run_oracle = |t: f64, ok: &mut bool| match oracle_suite(t) {
        Ok(reports) => *ok &= print_reports("oracle", &reports),
        Err(err) => {
            eprintln!("error: oracle suite could not run: {err}");
            *ok = false;
        }
    };
    match suite {
        "analytic" => all_ok &= print_reports("analytic", &analytic_suite(tol.unwrap_or(ANALYTIC_TOL))),
        "oracle" => run_oracle(tol.unwrap_or(ORACLE_TOL), &mut all_ok),
        "roundtrip" => {
            all_ok &= print_reports("roundtrip", &roundtrip_suite(tol.unwrap_or(ROUNDTRIP_TOL)))
        }
        "all" => {
            all_ok &= print_reports("analytic", &analytic_suite(tol.unwrap_or(ANALYTIC_TOL)));
            run_oracle(tol.unwrap_or(ORACLE_TOL), &mut all_ok);
            all_ok &= print_reports("roundtrip", &roundtrip_suite(tol.unwrap_or(ROUNDTRIP_TOL)));
        }
        other => {
            return usage_error(&format!(
                "unknown suite `{other}`; expected all, analytic, oracle, or roundtrip"
            ))
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful exits; everything else is a
            // usage error.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval { quantity, k, e, lambda } => cmd_eval(&quantity, k, e, lambda),
        Command::Sweep {
            figure,
            quantity,
            k_min,
            k_max,
            steps,
            out,
            quad_points,
        } => cmd_sweep(
            figure.as_deref(),
            quantity.as_deref(),
            k_min,
            k_max,
            steps,
            out.as_ref(),
            quad_points,
        ),
        Command::Verify { suite, tol } => cmd_verify(&suite, tol),
    }
}
