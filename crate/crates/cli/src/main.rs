use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spinpoly::bench::{run_bench, DEFAULT_SEED};
use spinpoly::coefficients::{all_coefficients, coefficient, CoefficientPolynomial};
use spinpoly::plot::{plot_data, PlotRequest, DEFAULT_SAMPLES, DEFAULT_THETA_MAX, DEFAULT_THETA_MIN};
use spinpoly::rotation::{rotation_expm, rotation_polynomial, rotation_reference, ComplexMatrixJson};
use spinpoly::spin_algebra::Axis;
use spinpoly::vandermonde::build_vandermonde;
use spinpoly::verify::{run_verify, Suite};
use spinpoly::HalfInteger;

const THREADS_VAR: &str = "SPINPOLY_THREADS";

/// Spin rotation matrices as polynomials in the generator.
#[derive(Parser)]
#[command(name = "spinpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Polynomial,
    Eigen,
    Expm,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient polynomials A_k as exact sine series.
    Coeffs {
        #[arg(long)]
        two_j: u32,
        /// Single index; all of 0..=2j when omitted.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compute exp(i theta n.J).
    Rotate {
        #[arg(long)]
        two_j: u32,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        /// Unit axis as x,y,z.
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,1")]
        axis: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "polynomial")]
        method: Method,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_two_j: u32,
    },
    /// Sample A_k on a uniform grid as CSV.
    Plotdata {
        #[arg(long)]
        two_j: u32,
        /// Comma-separated coefficient indices.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        k: Vec<u32>,
        #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_THETA_MIN)]
        theta_min: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_THETA_MAX)]
        theta_max: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time the polynomial assembly and the eigendecomposition.
    Bench {
        /// Comma-separated list of 2j values; may be empty.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        two_j: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print V, its inverse, the dual diagonals T_n and the metric G.
    Duals {
        #[arg(long)]
        two_j: u32,
    },
}

/// Distinguishes bad input (exit 2) from a failed verification (exit 1).
enum Failure {
    Usage(String),
    Verification,
}

impl From<spinpoly::Error> for Failure {
    fn from(e: spinpoly::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn parse_axis(text: &str) -> Result<Axis, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad axis '{text}': {e}")))?;
    match parts[..] {
        [x, y, z] => Ok(Axis::new(x, y, z)?),
        _ => Err(Failure::Usage(format!("axis needs three components, got '{text}'"))),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn print_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn coefficient_csv(out: &mut impl Write, polys: &[CoefficientPolynomial]) -> io::Result<()> {
    writeln!(out, "two_j,k,epsilon,power,num,den")?;
    for p in polys {
        for t in p.to_json().terms {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                p.spin.two_j(),
                p.k,
                p.epsilon,
                t.power,
                t.num,
                t.den
            )?;
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Coeffs { two_j, k, format } => {
            let spin = HalfInteger::from_two_j(two_j);
            let polys = match k {
                Some(k) => vec![coefficient(spin, k)?],
                None => all_coefficients(spin),
            };
            match (format, k) {
                (Format::Json, Some(_)) => print_json(out, &polys[0].to_json())?,
                (Format::Json, None) => print_json(out, &polys.iter().map(|p| p.to_json()).collect::<Vec<_>>())?,
                (Format::Csv, _) => coefficient_csv(out, &polys)?,
            }
        }
        Command::Rotate {
            two_j,
            theta,
            axis,
            format,
            method,
        } => {
            if !theta.is_finite() {
                return Err(Failure::Usage(format!("theta must be finite, got {theta}")));
            }
            let spin = HalfInteger::from_two_j(two_j);
            let axis = parse_axis(&axis)?;
            let result = match method {
                Method::Polynomial => rotation_polynomial(spin, &axis, theta)?,
                Method::Eigen => rotation_reference(spin, &axis, theta)?,
                Method::Expm => rotation_expm(spin, &axis, theta)?,
            };
            let matrix = ComplexMatrixJson::from(&result.matrix);
            match format {
                Format::Json => print_json(
                    out,
                    &serde_json::json!({
                        "two_j": two_j,
                        "theta": theta,
                        "axis": axis.as_array(),
                        "matrix": matrix,
                    }),
                )?,
                Format::Csv => {
                    writeln!(out, "row,col,re,im")?;
                    for (r, (re_row, im_row)) in matrix.re.iter().zip(&matrix.im).enumerate() {
                        for (c, (re, im)) in re_row.iter().zip(im_row).enumerate() {
                            writeln!(out, "{},{},{re:.16e},{im:.16e}", r + 1, c + 1)?;
                        }
                    }
                }
            }
        }
        Command::Verify { suite, max_two_j } => {
            let report = run_verify(suite, max_two_j);
            print_json(out, &report)?;
            for check in report.failed_checks() {
                eprintln!("FAILED {}", check.name);
            }
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
        Command::Plotdata {
            two_j,
            k,
            theta_min,
            theta_max,
            samples,
            output,
        } => {
            let request = PlotRequest {
                spin: HalfInteger::from_two_j(two_j),
                k_list: k,
                theta_min,
                theta_max,
                samples,
            };
            let data = plot_data(&request)?;
            match output {
                Some(path) => data.write_csv(BufWriter::new(File::create(path)?))?,
                None => data.write_csv(&mut *out)?,
            }
        }
        Command::Bench {
            two_j,
            repetitions,
            seed,
        } => {
            print_json(out, &run_bench(&two_j, repetitions, seed)?)?;
        }
        Command::Duals { two_j } => {
            print_json(out, &build_vandermonde(HalfInteger::from_two_j(two_j)).to_json())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = configure_threads().and_then(|()| run(cli, &mut out));
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
