use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermoweak::export::{self, CurveMethod, Format, OccupationQuery, OutputOptions};
use thermoweak::measurement::{
    pointer_with_width, CouplingConfig, PointerKind, Simulator, SimulatorGrid, DEFAULT_POINTER_WIDTH,
};
use thermoweak::verify::run_verification;
use thermoweak::{BlackbodyMode, Error, Grid1D, ThermalState, WienConvention};

/// Quasi-probabilities, weak values and weak-measurement simulation for
/// thermal light.
#[derive(Parser)]
#[command(name = "thermoweak", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dense Margenau-Hill grid.
    MhGrid {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.01)]
        mean_n: f64,
        #[command(flatten)]
        q: QRange,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        p_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        p_max: f64,
        #[arg(long, default_value_t = 301)]
        p_count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Weak value of p² against the postselected position.
    WeakvalueCurve {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.01)]
        mean_n: f64,
        #[command(flatten)]
        q: QRange,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        output: Output,
    },
    /// Probability of a negative weak value against the occupation number.
    NegativityProb {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        mean_n_min: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
        mean_n_max: f64,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Thermal occupation of a mode, or at the Wien peak.
    Occupation {
        /// Angular frequency in rad/s.
        #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["frequency", "wien"])]
        omega: Option<f64>,
        /// Frequency in Hz.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "wien")]
        frequency: Option<f64>,
        /// Temperature in K.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "wien")]
        temperature: Option<f64>,
        #[arg(long, value_enum)]
        wien: Option<WienArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Simulate the weak measurement of p² postselected on q.
    Simulate {
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        mean_n: f64,
        /// Postselected position.
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Coupling strength(s); several values (comma separated, strictly
        /// decreasing) produce a convergence table.
        #[arg(long, allow_negative_numbers = true, value_delimiter = ',', default_value = "0.01")]
        g: Vec<f64>,
        #[arg(long, value_enum, default_value_t = PointerArg::Gaussian)]
        pointer: PointerArg,
        #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_POINTER_WIDTH)]
        pointer_width: f64,
        /// Occupation of a thermal pointer.
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        pointer_mean_n: f64,
        /// Half-width of the postselection bin; defaults to σ/50.
        #[arg(long, allow_negative_numbers = true)]
        bin_halfwidth: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the cross-oracle self-check suite.
    Verify {
        /// Perturb the named check (testing the suite itself).
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

#[derive(Args)]
struct QRange {
    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    q_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    q_max: f64,
    #[arg(long, default_value_t = 301)]
    q_count: usize,
}

impl QRange {
    fn grid(&self) -> Result<Grid1D, Error> {
        Grid1D::new(self.q_min, self.q_max, self.q_count)
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the version line so files are comparable across releases.
    #[arg(long)]
    no_header: bool,
}

impl Output {
    fn options(&self) -> OutputOptions {
        OutputOptions {
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            },
            header: !self.no_header,
        }
    }

    /// Open the destination up front so an unwritable path fails before any
    /// computation.
    fn open(&self) -> Result<Box<dyn Write>, Error> {
        Ok(match &self.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Integral,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum WienArg {
    Wavelength,
    Frequency,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointerArg {
    Gaussian,
    Thermal,
}

fn emit(output: &Output, make: impl FnOnce(&OutputOptions) -> Result<String, Error>) -> Result<(), Error> {
    let mut sink = output.open()?;
    let text = make(&output.options())?;
    sink.write_all(text.as_bytes())?;
    sink.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::MhGrid {
            mean_n,
            q,
            p_min,
            p_max,
            p_count,
            output,
        } => {
            let state = ThermalState::from_mean_n(mean_n)?;
            let (qgrid, pgrid) = (q.grid()?, Grid1D::new(p_min, p_max, p_count)?);
            emit(&output, |o| export::mh_grid(&state, &qgrid, &pgrid, o))
        }
        Command::WeakvalueCurve { mean_n, q, method, output } => {
            let state = ThermalState::from_mean_n(mean_n)?;
            let qgrid = q.grid()?;
            let method = match method {
                MethodArg::Closed => CurveMethod::Closed,
                MethodArg::Integral => CurveMethod::Integral,
                MethodArg::Both => CurveMethod::Both,
            };
            emit(&output, |o| export::weakvalue_curve(&state, &qgrid, method, o))
        }
        Command::NegativityProb {
            mean_n_min,
            mean_n_max,
            steps,
            output,
        } => {
            export::negativity_grid(mean_n_min, mean_n_max, steps)?;
            emit(&output, |o| export::negativity_curve(mean_n_min, mean_n_max, steps, o))
        }
        Command::Occupation {
            omega,
            frequency,
            temperature,
            wien,
            output,
        } => {
            let query = match (wien, omega, frequency, temperature) {
                (Some(WienArg::Wavelength), ..) => OccupationQuery::Wien(WienConvention::WavelengthPeak),
                (Some(WienArg::Frequency), ..) => OccupationQuery::Wien(WienConvention::FrequencyPeak),
                (None, Some(w), None, Some(t)) => OccupationQuery::Mode(BlackbodyMode::new(w, t)?),
                (None, None, Some(f), Some(t)) => OccupationQuery::Mode(BlackbodyMode::from_frequency(f, t)?),
                _ => {
                    return Err(Error::invalid(
                        "occupation",
                        "give --wien, or --temperature with one of --omega/--frequency",
                    ))
                }
            };
            emit(&output, |o| export::occupation(query, o))
        }
        Command::Simulate {
            mean_n,
            q,
            g,
            pointer,
            pointer_width,
            pointer_mean_n,
            bin_halfwidth,
            output,
        } => {
            let state = ThermalState::from_mean_n(mean_n)?;
            if g.windows(2).any(|w| w[1] >= w[0]) {
                return Err(Error::invalid("g", "a coupling sweep must be strictly decreasing"));
            }
            let configs = g
                .iter()
                .map(|&g| match bin_halfwidth {
                    Some(b) => CouplingConfig::new(&state, g, q, b),
                    None => CouplingConfig::with_default_bin(&state, g, q),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let kind = match pointer {
                PointerArg::Gaussian => PointerKind::Gaussian,
                PointerArg::Thermal => PointerKind::Thermal,
            };
            let pointer = pointer_with_width(kind, pointer_width, pointer_mean_n)?;
            emit(&output, |o| {
                let sim = Simulator::new(&state, SimulatorGrid::default())?;
                let reports = configs
                    .iter()
                    .map(|cfg| sim.run(&pointer, cfg))
                    .collect::<Result<Vec<_>, _>>()?;
                export::simulation(&state, kind.as_str(), &reports, o)
            })
        }
        Command::Verify { inject_fault } => {
            let report = run_verification(inject_fault.as_deref())?;
            println!("{report}");
            if report.all_passed() {
                Ok(())
            } else {
                let names: Vec<_> = report.failing().map(|c| c.name).collect();
                Err(Error::VerificationFailed(names.join(",")))
            }
        }
    }
}

fn report_error(kind: &str, message: &str) {
    let message = message.trim().replace('\\', "\\\\").replace('"', "\\\"").replace('\n', " ");
    eprintln!("error: kind={kind} message=\"{message}\"");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid usage");
            report_error("usage", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::FAILURE
        }
    }
}
