use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tailspan_core::report::{
    analyze_text, dataset_label, load_for_analysis, run_analyze, run_sweep, sweep_markdown,
    to_json, write_sweep_outputs,
};
use tailspan_core::spanner::{minimal_lambda_with_budget, Certificate};
use tailspan_core::synth::{equal_sparse_fourier, random_subset};
use tailspan_core::{
    bound_report, generate, greedy_span, large_spectrum, verify_span, ColumnRef, Error,
    MissingPolicy, SeriesFile, SynthKind, SynthSpec,
};

#[derive(Parser)]
#[command(
    name = "tailspan",
    version,
    about = "Additive structure of the large values of a time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Delimited text file with one value per row.
    #[arg(long)]
    input: PathBuf,
    /// Value column: header name or 0-based position.
    #[arg(long, default_value = "0")]
    column: String,
    /// Optional label column carried into the output.
    #[arg(long)]
    label_column: Option<String>,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// The file has no header row.
    #[arg(long)]
    no_header: bool,
    /// Fill missing cells by linear interpolation instead of failing.
    #[arg(long)]
    interpolate_missing: bool,
    /// Subtract the sample mean before analysis.
    #[arg(long)]
    mean_center: bool,
}

impl InputArgs {
    fn series_file(&self) -> Result<SeriesFile, Error> {
        if !self.delimiter.is_ascii() {
            return Err(Error::InvalidParameter(
                "delimiter must be a single ASCII character".into(),
            ));
        }
        Ok(SeriesFile {
            path: self.input.clone(),
            value_column: ColumnRef::parse(&self.column),
            label_column: self.label_column.as_deref().map(ColumnRef::parse),
            delimiter: self.delimiter as u8,
            has_header: !self.no_header,
            missing: if self.interpolate_missing {
                MissingPolicy::Interpolate
            } else {
                MissingPolicy::Error
            },
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fourier ratio, regime and norms of a series.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Large values, greedy spanning sets and bounds over a list of thresholds.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated thresholds, e.g. 1.04,1.05,1.06.
        #[arg(long, value_delimiter = ',', required_unless_present = "eta_range")]
        etas: Vec<f64>,
        /// Threshold grid lo:hi:step (inclusive).
        #[arg(long, conflicts_with = "etas")]
        eta_range: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spanning set with per-element certificates at one threshold.
    Span {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write a synthetic series as CSV (columns index, value, imag).
    Synth {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Character frequency.
        #[arg(long, default_value_t = 0)]
        frequency: usize,
        /// Delta position.
        #[arg(long, default_value_t = 0)]
        position: usize,
        /// Sparse spectrum support; drawn at random when absent.
        #[arg(long, value_delimiter = ',')]
        frequencies: Vec<usize>,
        /// Number of random frequencies for a sparse spectrum.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Indicator set; drawn at random when absent.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        /// Size of a random indicator set.
        #[arg(long, default_value_t = 8)]
        subset_size: usize,
        /// Noise amplitude for a mixture.
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        /// Base kind for a mixture.
        #[arg(long, value_enum, default_value_t = Kind::Character)]
        base: Kind,
        /// Real-valued noise instead of circular complex noise.
        #[arg(long)]
        real: bool,
    },
    /// Compare greedy |Lambda| with an exhaustive minimum.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        eta: f64,
        /// Largest |Gamma| the exhaustive search will accept.
        #[arg(long, default_value_t = 20)]
        max_gamma: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Character,
    Delta,
    Sparse,
    Indicator,
    Noise,
    Mixture,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let body = msg.split("\n\nUsage").next().unwrap_or("");
            let line = body.split_whitespace().collect::<Vec<_>>().join(" ");
            error_line("usage", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error_line(e.kind(), &e.to_string());
            ExitCode::FAILURE
        }
    }
}

fn error_line(kind: &str, message: &str) {
    #[derive(Serialize)]
    struct Line<'a> {
        error: &'a str,
        message: &'a str,
    }
    let line = serde_json::to_string(&Line {
        error: kind,
        message,
    })
    .unwrap_or_default();
    eprintln!("{line}");
}

fn parse_eta_range(spec: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::InvalidParameter(format!("eta range {spec:?} is not lo:hi:step"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0 && lo <= hi && lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(Error::InvalidParameter(format!(
            "eta range {spec:?} has too many points"
        )));
    }
    Ok((0..count)
        .map(|i| ((lo + i as f64 * step) * 1e10).round() / 1e10)
        .collect())
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Analyze { input, json } => {
            let report = run_analyze(&input.series_file()?, input.mean_center)?;
            if json {
                print!("{}", to_json(&report)?);
            } else {
                print!("{}", analyze_text(&report));
            }
        }
        Command::Sweep {
            input,
            etas,
            eta_range,
            out,
        } => {
            let etas = match eta_range {
                Some(r) => parse_eta_range(&r)?,
                None => etas,
            };
            let (report, signal) = run_sweep(&input.series_file()?, &etas, input.mean_center)?;
            write_sweep_outputs(&report, &signal, &out)?;
            print!("{}", sweep_markdown(&report));
        }
        Command::Span { input, eta, json } => span(&input, eta, json)?,
        Command::Synth {
            kind,
            n,
            seed,
            out,
            frequency,
            position,
            frequencies,
            k,
            subset,
            subset_size,
            amplitude,
            base,
            real,
        } => {
            let simple = |kind: Kind| -> Result<SynthSpec, Error> {
                Ok(match kind {
                    Kind::Character => SynthSpec::new(SynthKind::Character { frequency }, n, seed),
                    Kind::Delta => SynthSpec::new(SynthKind::Delta { position }, n, seed),
                    Kind::Sparse if frequencies.is_empty() => equal_sparse_fourier(n, k, seed)?,
                    Kind::Sparse => SynthSpec::new(
                        SynthKind::SparseFourier {
                            magnitudes: vec![1.0; frequencies.len()],
                            frequencies: frequencies.clone(),
                        },
                        n,
                        seed,
                    ),
                    Kind::Indicator => {
                        let subset = if subset.is_empty() {
                            random_subset(n, subset_size, seed)?
                        } else {
                            subset.clone()
                        };
                        SynthSpec::new(SynthKind::Indicator { subset }, n, seed)
                    }
                    Kind::Noise => {
                        SynthSpec::new(SynthKind::GaussianNoise { real_only: real }, n, seed)
                    }
                    Kind::Mixture => {
                        return Err(Error::InvalidParameter(
                            "mixture cannot be its own base".into(),
                        ))
                    }
                })
            };
            let spec = if kind == Kind::Mixture {
                let base = simple(base)?;
                SynthSpec::new(
                    SynthKind::Mixture {
                        base: Box::new(base.kind),
                        noise_amplitude: amplitude,
                        real_only: real,
                    },
                    n,
                    seed,
                )
            } else {
                simple(kind)?
            };
            let signal = generate(&spec)?;
            let mut csv = String::from("index,value,imag\n");
            for (i, z) in signal.values().iter().enumerate() {
                csv.push_str(&format!("{i},{},{}\n", z.re, z.im));
            }
            if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&out, csv)?;
            println!("{}", serde_json::to_string(&spec)?);
        }
        Command::Oracle {
            input,
            eta,
            max_gamma,
        } => {
            let cfg = input.series_file()?;
            let (_, signal) = load_for_analysis(&cfg, input.mean_center)?;
            let gamma = large_spectrum(&signal, eta)?;
            let budget = 1u128 << max_gamma.min(127);
            let greedy = greedy_span(&gamma, signal.len())?;
            let minimal = minimal_lambda_with_budget(&gamma, signal.len(), gamma.len(), budget)?;
            #[derive(Serialize)]
            struct OracleOut {
                eta: f64,
                gamma_size: usize,
                greedy_lambda: Vec<usize>,
                minimal_lambda: Option<Vec<usize>>,
            }
            print!(
                "{}",
                to_json(&OracleOut {
                    eta,
                    gamma_size: gamma.len(),
                    greedy_lambda: greedy.lambda,
                    minimal_lambda: minimal,
                })?
            );
        }
    }
    Ok(())
}

fn span(input: &InputArgs, eta: f64, json: bool) -> Result<(), Error> {
    let cfg = input.series_file()?;
    let (loaded, signal) = load_for_analysis(&cfg, input.mean_center)?;
    let gamma = large_spectrum(&signal, eta)?;
    let result = greedy_span(&gamma, signal.len())?;
    let verified = verify_span(&result, &gamma)?;
    let bounds = bound_report(&signal, eta)?;

    #[derive(Serialize)]
    struct SpanOut<'a> {
        dataset: String,
        n: usize,
        eta: f64,
        threshold: f64,
        gamma: Vec<usize>,
        lambda: &'a [usize],
        reach_size: usize,
        spanned: bool,
        verified: bool,
        certificates: &'a [Certificate],
        bounds: tailspan_core::BoundReport,
    }
    let out = SpanOut {
        dataset: dataset_label(&cfg, &loaded),
        n: signal.len(),
        eta,
        threshold: gamma.threshold_value(),
        gamma: gamma.indices(),
        lambda: &result.lambda,
        reach_size: result.reach.len(),
        spanned: result.all_spanned,
        verified,
        certificates: &result.certificates,
        bounds,
    };
    if json {
        print!("{}", to_json(&out)?);
        return Ok(());
    }
    println!(
        "N = {}  eta = {}  threshold = {:.6}",
        out.n, eta, out.threshold
    );
    println!(
        "|Gamma| = {}  |Lambda| = {}  |S| = {}",
        out.gamma.len(),
        out.lambda.len(),
        out.reach_size
    );
    println!("Lambda = {:?}", out.lambda);
    println!("spanned = {}  verified = {}", out.spanned, out.verified);
    match bounds.bound_simple_over_c {
        Some(b) => println!("FR = {:.4}  Bound/C = {b:.4}", bounds.fr),
        None => println!("FR = {:.4}  Bound/C = n/a (weak regime)", bounds.fr),
    }
    println!("Bound/C' = {:.4}", bounds.bound_general_over_cprime);
    for cert in out.certificates {
        let terms: Vec<String> = cert
            .coefficients
            .iter()
            .zip(out.lambda)
            .filter(|(e, _)| **e != 0)
            .map(|(e, l)| format!("{}{l}", if *e > 0 { "+" } else { "-" }))
            .collect();
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ")
        };
        println!("{:>6} = {rhs} (mod {})", cert.gamma, out.n);
    }
    Ok(())
}
