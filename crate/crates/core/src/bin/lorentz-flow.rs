use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lorentz_flow::collimation::{self, DecaySpec, SamplingMode};
use lorentz_flow::flow::{self, FlowState, IntegratorOptions};
use lorentz_flow::kinematics::{self, CompositionInput};
use lorentz_flow::oracle;
use lorentz_flow::portrait::{self, OutputFormat, PortraitSpec};
use lorentz_flow::{verify, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_SINGULAR: u8 = 4;

const ORACLE_LIMIT: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "lorentz-flow",
    version,
    about = "Lorentz boost composition, exact Thomas rotation and the induced parameter flow",
    after_help = "Exit codes: 0 success, 2 usage or invalid input, 3 internal consistency \
                  failure, 4 near-singular speed (|beta| ~ 0 off axis) or step too large."
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Integration step in rapidity.
    #[arg(long, global = true, default_value_t = 1e-3)]
    step: f64,
    /// End of the integration range in rapidity.
    #[arg(long, global = true)]
    xi_end: Option<f64>,
    /// Override the default consistency tolerance (oracle residual for
    /// `compose`, step-doubling bound for `flow`).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Read angle arguments in degrees (output is always radians).
    #[arg(long, global = true)]
    degrees: bool,
    /// Read rapidity arguments as speeds and convert with artanh.
    #[arg(long, global = true)]
    speed: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compose a boost ETA along THETA0 with a ẑ-boost XI.
    Compose {
        xi: f64,
        eta: f64,
        #[arg(allow_negative_numbers = true)]
        theta0: f64,
    },
    /// Thomas angle and its linearisation in a small second boost.
    Thomas {
        xi: f64,
        eta: f64,
        theta0: f64,
        /// Small ẑ-boost for the linearised increment.
        #[arg(long, default_value_t = 1e-4)]
        dxi: f64,
    },
    /// Integrate the flow from (THETA0, BETA0, TAU0).
    Flow {
        theta0: f64,
        #[arg(allow_negative_numbers = true)]
        beta0: f64,
        #[arg(allow_negative_numbers = true)]
        tau0: f64,
        /// Keep every N-th sample (the last is always kept).
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Direction field, trajectories and fixed points.
    Portrait {
        /// JSON portrait spec; omitted fields take the defaults.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Use the default spec (20x20 grid, 12-trajectory fan).
        #[arg(long, conflicts_with = "spec")]
        defaults: bool,
        #[arg(long)]
        n_theta: Option<usize>,
        #[arg(long)]
        n_beta: Option<usize>,
        #[arg(long)]
        record_every: Option<usize>,
    },
    /// Collimation of decay products from a parent with rapidity XI.
    Collimate {
        xi: f64,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Cos)]
        mode: Mode,
        #[arg(long, default_value_t = 36)]
        bins: usize,
        /// Daughter speed in the parent frame (1 = photons).
        #[arg(long, default_value_t = 1.0)]
        beta0: f64,
        /// Also write the JSON summary to this path.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Cross-check every route against the others.
    Verify {
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Cos,
    Theta,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NearSingularBeta { .. } | Error::StepTooLarge { .. } => EXIT_SINGULAR,
            Error::DetViolation { .. } | Error::NotOrthochronous { .. } => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lorentz-flow: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

impl Global {
    fn angle(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn rapidity(&self, v: f64) -> Result<f64, Failure> {
        if !self.speed {
            return Ok(v);
        }
        if !(-1.0 < v && v < 1.0) {
            return Err(usage(format!("speed {v} outside (-1, 1)")));
        }
        Ok(v.atanh())
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
            None => match io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    Err(usage(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            },
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Compose { xi, eta, theta0 } => {
            let input =
                CompositionInput::new(g.rapidity(*xi)?, g.rapidity(*eta)?, g.angle(*theta0))?;
            compose(g, &input)
        }
        Command::Thomas {
            xi,
            eta,
            theta0,
            dxi,
        } => {
            let input =
                CompositionInput::new(g.rapidity(*xi)?, g.rapidity(*eta)?, g.angle(*theta0))?;
            thomas(g, &input, *dxi)
        }
        Command::Flow {
            theta0,
            beta0,
            tau0,
            every,
        } => {
            let state = FlowState::from_beta(g.angle(*theta0), *beta0, g.angle(*tau0))?;
            flow_cmd(g, &state, *every)
        }
        Command::Portrait {
            spec,
            defaults: _,
            n_theta,
            n_beta,
            record_every,
        } => {
            let mut ps = match spec {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    serde_json::from_str::<PortraitSpec>(&text)
                        .map_err(|e| usage(format!("bad portrait spec: {e}")))?
                }
                None => PortraitSpec::default(),
            };
            if let Some(v) = n_theta {
                ps.n_theta = *v;
            }
            if let Some(v) = n_beta {
                ps.n_beta = *v;
            }
            if let Some(v) = record_every {
                ps.record_every = *v;
            }
            if let Some(x) = g.xi_end {
                ps.xi_end = x;
            }
            if spec.is_none() {
                ps.step = g.step;
            }
            let format = match g.format {
                None | Some(Format::Csv) => OutputFormat::Csv,
                Some(Format::Svg) => OutputFormat::Svg,
                Some(_) => return Err(usage("portrait supports --format csv or svg")),
            };
            let portrait = portrait::compute_portrait(&ps)?;
            for (i, t) in portrait.trajectories.iter().enumerate() {
                if let Err(e) = t {
                    eprintln!("lorentz-flow: trajectory {i} failed: {e}");
                }
            }
            let text = match format {
                OutputFormat::Csv => portrait::render_csv(&portrait, &ps),
                OutputFormat::Svg => portrait::render_svg(&portrait, &ps),
            };
            g.emit(&text)
        }
        Command::Collimate {
            xi,
            n,
            mode,
            bins,
            beta0,
            summary,
        } => {
            let spec = DecaySpec {
                xi: g.rapidity(*xi)?,
                samples: *n,
                mode: match mode {
                    Mode::Cos => SamplingMode::UniformCos,
                    Mode::Theta => SamplingMode::UniformTheta,
                },
                bins: *bins,
                daughter_beta: *beta0,
                seed: g.seed,
            };
            let result = collimation::collimate(&spec)?;
            let json = collimation::summary_json(&result.summary);
            if let Some(path) = summary {
                fs::write(path, &json)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            match g.format {
                None | Some(Format::Csv) => g.emit(&collimation::histogram_csv(&result.histogram)),
                Some(Format::Json) => g.emit(&json),
                Some(_) => Err(usage("collimate supports --format csv or json")),
            }
        }
        Command::Verify { n } => {
            let checks = verify::run(*n, g.seed)?;
            let text = match g.format {
                Some(Format::Json) => {
                    let mut s = serde_json::to_string_pretty(&checks).expect("serializes");
                    s.push('\n');
                    s
                }
                _ => verify::format_table(&checks),
            };
            g.emit(&text)?;
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_INCONSISTENT,
                    message: "verification failed".into(),
                })
            }
        }
    }
}

fn compose(g: &Global, input: &CompositionInput) -> Result<(), Failure> {
    let theta = kinematics::resultant_theta(input)?;
    let lambda = kinematics::resultant_rapidity(input);
    let tau = kinematics::thomas_angle(input);
    let phi = kinematics::reverse_order_phi(input)?;
    let invariant = kinematics::flow_invariant(theta, lambda);
    let o = oracle::oracle_compose(input.xi, input.eta, input.theta0)?;
    let residual = (o.lambda - lambda)
        .abs()
        .max((o.theta - theta).abs())
        .max((o.tau - tau).abs());

    let report = json!({
        "xi": input.xi,
        "eta": input.eta,
        "theta0": input.theta0,
        "lambda": lambda,
        "theta": theta,
        "tau": tau,
        "phi": phi,
        "beta": lambda.tanh(),
        "invariant": invariant,
        "oracle_residual": residual,
    });
    let text = match g.format {
        Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
        None | Some(Format::Text) => format!(
            "lambda           {lambda}\ntheta            {theta}\ntau              {tau}\n\
             phi              {phi}\nbeta             {}\ninvariant        {invariant}\n\
             oracle_residual  {residual:e}\n",
            lambda.tanh()
        ),
        Some(_) => return Err(usage("compose supports --format text or json")),
    };
    g.emit(&text)?;
    let limit = g.tolerance.unwrap_or(ORACLE_LIMIT);
    if residual > limit {
        return Err(Failure {
            code: EXIT_INCONSISTENT,
            message: format!("oracle residual {residual:e} exceeds {limit:e}"),
        });
    }
    Ok(())
}

fn thomas(g: &Global, input: &CompositionInput, dxi: f64) -> Result<(), Failure> {
    let tau = kinematics::thomas_angle(input);
    let coefficient = kinematics::infinitesimal_thomas(input.eta, input.theta0, 1.0);
    let dtau = kinematics::infinitesimal_thomas(input.eta, input.theta0, dxi);
    let exact_small = kinematics::thomas_angle(&CompositionInput { xi: dxi, ..*input });
    let report = json!({
        "tau": tau,
        "dtau_dxi_at_zero": coefficient,
        "dxi": dxi,
        "dtau_linear": dtau,
        "dtau_exact": exact_small,
    });
    let text = match g.format {
        Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
        None | Some(Format::Text) => format!(
            "tau               {tau}\ndtau/dxi at 0     {coefficient}\ndxi               {dxi:e}\n\
             dtau (linear)     {dtau:e}\ndtau (exact)      {exact_small:e}\n"
        ),
        Some(_) => return Err(usage("thomas supports --format text or json")),
    };
    g.emit(&text)
}

fn flow_cmd(g: &Global, state: &FlowState, every: usize) -> Result<(), Failure> {
    if every == 0 {
        return Err(usage("--every must be at least 1"));
    }
    let mut opts = IntegratorOptions::new(g.xi_end.unwrap_or(5.0), g.step);
    if let Some(t) = g.tolerance {
        opts.truncation_tolerance = t;
    }
    let traj = flow::integrate_with(state, &opts)?;
    let rows = portrait::recorded_indices(traj.samples.len(), every).map(|i| &traj.samples[i]);
    let text = match g.format {
        None | Some(Format::Csv) => {
            let mut out = String::from("xi,theta,beta,tau,rapidity\n");
            for s in rows {
                let st = &s.state;
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.xi,
                    st.theta(),
                    st.beta(),
                    st.tau(),
                    st.rapidity()
                ));
            }
            out
        }
        Some(Format::Json) => {
            let samples: Vec<_> = rows
                .map(|s| {
                    json!({
                        "xi": s.xi,
                        "theta": s.state.theta(),
                        "beta": s.state.beta(),
                        "tau": s.state.tau(),
                        "rapidity": s.state.rapidity(),
                    })
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&json!({ "step": traj.step, "samples": samples }))
                    .expect("json");
            s.push('\n');
            s
        }
        Some(_) => return Err(usage("flow supports --format csv or json")),
    };
    g.emit(&text)
}
