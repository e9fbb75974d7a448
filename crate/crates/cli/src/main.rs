//! Command-line front end. Every subcommand is a thin composition of library
//! calls: inputs are parsed, one or two library functions run, and the result
//! is emitted through the canonical JSON/CSV writers. No numeric logic lives
//! here.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};


use gevrey_spectral::calculus::{apply_borel, BorelFunction, SpectralModel, SpectralSet, Verdict3};
use gevrey_spectral::counterexample::{
    certify_refutation, select_escaping, selection_to_json, synthesize_bounded,
    synthesize_unbounded, Regime,
};
use gevrey_spectral::error::Error;
use gevrey_spectral::evolution::{admissible_two_sided, compute_trace, mild_solution_check};
use gevrey_spectral::gevrey::{class0_membership, class_membership, estimate_order, ClassQuery, Flavor};
use gevrey_spectral::region::{boundary_csv, search_b, Region};
use gevrey_spectral::report::{to_canonical_json_line, CsvCell, CsvTable};
use gevrey_spectral::spectrum::{parse_spectrum, SpectrumSpec};
use gevrey_spectral::state::{parse_state, StateVector};
use gevrey_spectral::verify::{
    run_verify_ol1, run_verify_smoothness_improvement, run_verify_theorem_real, DEFAULT_B_GRID,
};

#[derive(Parser)]
#[command(name = "gevrey-spectral", version, about = "Spectral-region Gevrey classification toolkit")]
struct Cli {
    /// RNG seed for seeded commands.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Spectral truncation (number of materialized atoms).
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpectrumArg {
    /// Path to the spectrum JSON document.
    #[arg(long)]
    spectrum: PathBuf,
}

#[derive(Args)]
struct StateArg {
    /// Path to the state JSON document.
    #[arg(long)]
    state: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Region criterion: search slopes making the escaping spectrum bounded.
    Classify {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[arg(long)]
        beta: f64,
        /// Symmetric slope grid (comma separated); a built-in default otherwise.
        #[arg(long, value_delimiter = ',')]
        b_grid: Vec<f64>,
        /// With --format csv: sample the region boundary up to this |Im|.
        #[arg(long, default_value_t = 10.0)]
        boundary_im_max: f64,
    },
    /// Apply a catalog Borel function to a state.
    Apply {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        state: StateArg,
        /// Function expression, e.g. "exp(t*lambda)", "lambda^2",
        /// "exp(s*abs(lambda)^(1/beta))", "indicator(abs<=2)", or products
        /// joined with '*'.
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Skip the domain check (diagnostics only).
        #[arg(long)]
        r#unsafe: bool,
    },
    /// Sample the orbit e^{tA} f over a time grid.
    Evolve {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        state: StateArg,
        /// "start:end:step" or a comma-separated list of times.
        #[arg(long, allow_hyphen_values = true)]
        t_grid: String,
        /// Also compute derivative chains up to this order.
        #[arg(long)]
        derivatives: Option<u32>,
        /// Verify the mild-solution identity over the grid span.
        #[arg(long)]
        check_mild: bool,
    },
    /// Gevrey vector-class membership.
    Gevrey {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        state: StateArg,
        #[arg(long)]
        beta: f64,
        /// Required for beta > 0; ignored by the order-zero class.
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        #[arg(long, value_delimiter = ',')]
        s_grid: Vec<f64>,
        /// Alpha grid for the order-zero (bounded-support) class.
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Vec<f64>,
    },
    /// Estimate the Gevrey order from ||A^n f|| growth.
    Estimate {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        state: StateArg,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
    },
    /// Synthesize a Roumieu-refuting initial state with certificates.
    Counterexample {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 8)]
        count: u32,
        #[arg(long, value_delimiter = ',')]
        s_grid: Vec<f64>,
    },
    /// Theorem-level verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Orders to exercise (comma separated).
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Roumieu,
    Beurling,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    #[value(name = "theorem_real", alias = "theorem-real")]
    TheoremReal,
    #[value(name = "ol1")]
    Ol1,
    #[value(name = "smoothness_improvement", alias = "smoothness-improvement")]
    SmoothnessImprovement,
    #[value(name = "self_adjoint", alias = "self-adjoint")]
    SelfAdjoint,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Io(_)) => 1,
        _ => 2,
    }
}

fn load_spectrum(path: &PathBuf) -> anyhow::Result<SpectrumSpec> {
    let bytes = std::fs::read(path).map_err(Error::Io)?;
    Ok(parse_spectrum(&bytes)?)
}

fn load_state(path: &PathBuf) -> anyhow::Result<StateVector> {
    let bytes = std::fs::read(path).map_err(Error::Io)?;
    Ok(parse_state(&bytes)?)
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::Io(e).into()),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes).map_err(|e| Error::Io(e).into())
        }
    }
}

fn model_for(spec: SpectrumSpec, truncation: Option<u32>) -> anyhow::Result<SpectralModel> {
    let n = truncation.unwrap_or(spec.truncation_default);
    Ok(SpectralModel::new(spec, n)?)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Classify {
            spectrum,
            beta,
            b_grid,
            boundary_im_max,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let n = cli.truncation.unwrap_or(spec.truncation_default);
            let grid = if b_grid.is_empty() {
                DEFAULT_B_GRID.to_vec()
            } else {
                b_grid
            };
            let verdict = search_b(&spec, beta, n, &grid)?;
            match cli.format {
                Format::Json => emit(&cli.out, &to_canonical_json_line(&verdict.to_json()))?,
                Format::Csv => {
                    let (bm, bp) = verdict.b_found.unwrap_or((grid[0], grid[0]));
                    let region = Region::new(beta, bm, bp)?;
                    emit(&cli.out, &boundary_csv(&region, boundary_im_max, 101).to_bytes())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Apply {
            spectrum,
            state,
            function,
            t,
            s,
            beta,
            r#unsafe,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let f = load_state(&state.state)?;
            let model = model_for(spec, cli.truncation)?;
            let func = parse_function(&function, t, s, beta)?;
            let result = apply_borel(&model, &func, &f, r#unsafe)?;
            emit(&cli.out, &with_newline(result.serialize_canonical(model.atoms())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve {
            spectrum,
            state,
            t_grid,
            derivatives,
            check_mild,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let f = load_state(&state.state)?;
            let model = model_for(spec, cli.truncation)?;
            let times = parse_grid(&t_grid)?;
            let trace = compute_trace(&model, &f, &times, derivatives)?;
            let mild = if check_mild && times.len() >= 2 {
                Some(mild_solution_check(
                    &model,
                    &f,
                    times[0],
                    *times.last().unwrap(),
                    129,
                )?)
            } else {
                None
            };
            match cli.format {
                Format::Json => {
                    let states: Vec<serde_json::Value> = trace
                        .times
                        .iter()
                        .zip(&trace.states)
                        .map(|(t, y)| {
                            serde_json::json!({
                                "t": t,
                                "log_norm": y.log_norm(model.atoms()),
                            })
                        })
                        .collect();
                    let value = serde_json::json!({
                        "times": trace.times,
                        "truncation": trace.truncation,
                        "certified": trace.certified,
                        "tail_bounds": trace.tail_bounds,
                        "states": states,
                        "mild_residual": mild,
                    });
                    emit(&cli.out, &to_canonical_json_line(&value))?;
                }
                Format::Csv => {
                    let orders = derivatives.unwrap_or(0);
                    let mut header = vec!["t".to_string(), "norm".to_string()];
                    for n in 1..=orders {
                        header.push(format!("norm_d{n}"));
                    }
                    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
                    let mut table = CsvTable::new(&header_refs);
                    for (i, t) in trace.times.iter().enumerate() {
                        let mut row = vec![
                            CsvCell::Float(*t),
                            CsvCell::Float(trace.states[i].norm(model.atoms())),
                        ];
                        if let Some(ds) = &trace.derivatives {
                            for n in 1..=orders as usize {
                                row.push(CsvCell::Float(ds[i][n].norm(model.atoms())));
                            }
                        }
                        table.push_row(row);
                    }
                    emit(&cli.out, &table.to_bytes())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gevrey {
            spectrum,
            state,
            beta,
            flavor,
            s_grid,
            alpha_grid,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let f = load_state(&state.state)?;
            let model = model_for(spec, cli.truncation)?;
            let verdict = if beta == 0.0 {
                let grid = if alpha_grid.is_empty() {
                    vec![1.0, 10.0, 100.0, 1000.0]
                } else {
                    alpha_grid
                };
                class0_membership(&model, &f, &grid)
            } else {
                let grid = if s_grid.is_empty() {
                    gevrey_spectral::counterexample::DEFAULT_S_GRID.to_vec()
                } else {
                    s_grid
                };
                let flavor = flavor.ok_or_else(|| Error::ParamRange {
                    name: "flavor".into(),
                    msg: "is required for beta > 0".into(),
                })?;
                class_membership(
                    &model,
                    &f,
                    &ClassQuery {
                        beta,
                        flavor: match flavor {
                            FlavorArg::Roumieu => Flavor::Roumieu,
                            FlavorArg::Beurling => Flavor::Beurling,
                        },
                        s_grid: grid,
                    },
                )?
            };
            emit(&cli.out, &to_canonical_json_line(&verdict.to_json()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate {
            spectrum,
            state,
            n_max,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let f = load_state(&state.state)?;
            let model = model_for(spec, cli.truncation)?;
            let est = estimate_order(&model, &f, n_max)?;
            match cli.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "beta_hat": est.beta_hat,
                        "alpha_hat": est.alpha_hat,
                        "c_hat": est.c_hat,
                        "residual": est.residual,
                        "n_range": {"start": est.n_range.0, "end": est.n_range.1},
                    });
                    emit(&cli.out, &to_canonical_json_line(&value))?;
                }
                Format::Csv => {
                    let mut table = CsvTable::new(&["n", "log_m_n", "fitted_log_m_n"]);
                    for &(n, y, fy) in &est.profile {
                        table.push_row(vec![
                            CsvCell::Int(n as i64),
                            CsvCell::Float(y),
                            CsvCell::Float(fy),
                        ]);
                    }
                    emit(&cli.out, &table.to_bytes())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Counterexample {
            spectrum,
            beta,
            count,
            s_grid,
        } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let n = cli.truncation.unwrap_or_else(|| {
                spec.truncation_default
                    .max(gevrey_spectral::verify::DEFAULT_TRIAL_TRUNCATION)
            });
            let selection = select_escaping(&spec, beta, count, n)?;
            let (f, _synth_cert) = match selection.regime {
                Regime::BoundedReal => {
                    let (f, _h_star, cert) = synthesize_bounded(&selection)?;
                    (f, cert)
                }
                _ => {
                    let (f, _h, _h_star, cert) = synthesize_unbounded(&selection)?;
                    (f, cert)
                }
            };
            let model = SpectralModel::new(spec, n)?;
            let grid = if s_grid.is_empty() {
                gevrey_spectral::counterexample::DEFAULT_S_GRID.to_vec()
            } else {
                s_grid
            };
            let recert = certify_refutation(&model, &f, beta, &grid)?;
            let adm = admissible_two_sided(&model, &f, &[-1.0, 1.0])?;
            let summary = serde_json::json!({
                "selection": selection_to_json(&selection),
                "certificate_valid": recert.is_valid(),
                "admissible_two_sided": adm.verdict == Verdict3::Yes,
            });
            // --out with two comma-separated paths writes the state and the
            // certificate; the summary then goes to stdout.
            match cli.out.as_ref().and_then(|p| p.to_str()) {
                Some(pair) if pair.contains(',') => {
                    let parts: Vec<&str> = pair.split(',').collect();
                    let [state_path, cert_path] = parts.as_slice() else {
                        return Err(Error::Parse {
                            what: "out".into(),
                            msg: "expected \"state.json,cert.json\"".into(),
                        }
                        .into());
                    };
                    std::fs::write(
                        state_path,
                        with_newline(f.serialize_canonical(model.atoms())),
                    )
                    .map_err(Error::Io)?;
                    std::fs::write(cert_path, to_canonical_json_line(&recert.to_json()))
                        .map_err(Error::Io)?;
                    emit(&None, &to_canonical_json_line(&summary))?;
                }
                _ => emit(&cli.out, &to_canonical_json_line(&summary))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            trials,
            beta,
        } => {
            let report = match suite {
                Suite::TheoremReal => {
                    let grid = if beta.is_empty() { vec![1.0, 2.0] } else { beta };
                    run_verify_theorem_real(trials, cli.seed, &grid)?
                }
                Suite::Ol1 => {
                    let grid = if beta.is_empty() {
                        vec![0.25, 0.5, 0.75]
                    } else {
                        beta
                    };
                    run_verify_ol1(trials, cli.seed, &grid)?
                }
                Suite::SmoothnessImprovement => {
                    run_verify_smoothness_improvement(trials, cli.seed)?
                }
                Suite::SelfAdjoint => {
                    gevrey_spectral::verify::run_verify_self_adjoint(trials, cli.seed)?
                }
            };
            emit(&cli.out, &to_canonical_json_line(&report.to_json()))?;
            if !report.disagreements.is_empty() {
                return Ok(ExitCode::from(3));
            }
            if report.inconclusives * 10 > report.trials {
                return Ok(ExitCode::from(4));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn with_newline(mut bytes: Vec<u8>) -> Vec<u8> {
    bytes.push(b'\n');
    bytes
}

/// "start:end:step" or a comma-separated list.
fn parse_grid(text: &str) -> anyhow::Result<Vec<f64>> {
    let bad = |msg: &str| -> anyhow::Error {
        Error::Parse {
            what: "t-grid".into(),
            msg: msg.into(),
        }
        .into()
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:end:step"));
        }
        let start: f64 = parts[0].parse().map_err(|_| bad("bad start"))?;
        let end: f64 = parts[1].parse().map_err(|_| bad("bad end"))?;
        let step: f64 = parts[2].parse().map_err(|_| bad("bad step"))?;
        if !(step > 0.0) || end < start {
            return Err(bad("requires step > 0 and end >= start"));
        }
        let mut out = Vec::new();
        let count = ((end - start) / step).round() as i64;
        for i in 0..=count {
            out.push(start + step * i as f64);
        }
        Ok(out)
    } else {
        text.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad("bad number")))
            .collect()
    }
}

/// Parses the catalog function grammar: factors joined by top-level '*'.
fn parse_function(text: &str, t: f64, s: f64, beta: f64) -> anyhow::Result<BorelFunction> {
    let factors = split_top_level(text)?;
    let parsed: Vec<BorelFunction> = factors
        .into_iter()
        .map(|f| parse_factor(f.trim(), t, s, beta))
        .collect::<anyhow::Result<_>>()?;
    Ok(match parsed.len() {
        1 => parsed.into_iter().next().unwrap(),
        _ => BorelFunction::Product(parsed),
    })
}

fn split_top_level(text: &str) -> anyhow::Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            what: "function".into(),
            msg: "unbalanced parentheses".into(),
        }
        .into());
    }
    parts.push(&text[start..]);
    Ok(parts)
}

fn parse_factor(text: &str, t: f64, s: f64, beta: f64) -> anyhow::Result<BorelFunction> {
    let bad = |msg: String| -> anyhow::Error {
        Error::Parse {
            what: "function".into(),
            msg,
        }
        .into()
    };
    let resolve = |token: &str| -> anyhow::Result<f64> {
        match token.trim() {
            "t" => Ok(t),
            "s" => Ok(s),
            "beta" => Ok(beta),
            lit => lit
                .parse::<f64>()
                .map_err(|_| bad(format!("cannot resolve \"{lit}\""))),
        }
    };
    if text == "1" {
        return Ok(BorelFunction::Power { n: 0 });
    }
    if text == "lambda" {
        return Ok(BorelFunction::Power { n: 1 });
    }
    if let Some(rest) = text.strip_prefix("lambda^") {
        let n: u32 = rest
            .parse()
            .map_err(|_| bad(format!("bad power \"{rest}\"")))?;
        return Ok(BorelFunction::Power { n });
    }
    if let Some(inner) = text.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        // exp(<coef>*lambda) or exp(<coef>*abs(lambda)^(1/<order>))
        if let Some(coef) = inner.strip_suffix("*lambda") {
            return Ok(BorelFunction::ExpT { t: resolve(coef)? });
        }
        if let Some((coef, tail)) = inner.split_once("*abs(lambda)^(1/") {
            let order = tail
                .strip_suffix(')')
                .ok_or_else(|| bad("expected closing parenthesis after the order".into()))?;
            return Ok(BorelFunction::ExpAbsRoot {
                s: resolve(coef)?,
                beta: resolve(order)?,
            });
        }
        return Err(bad(format!("unsupported exponential \"{inner}\"")));
    }
    if let Some(inner) = text
        .strip_prefix("indicator(")
        .and_then(|r| r.strip_suffix(')'))
    {
        if let Some(v) = inner.strip_prefix("abs<=") {
            return Ok(BorelFunction::Indicator(SpectralSet::AbsLe {
                radius: resolve(v)?,
            }));
        }
        if let Some(v) = inner.strip_prefix("re>=") {
            return Ok(BorelFunction::Indicator(SpectralSet::ReGe { x: resolve(v)? }));
        }
        if let Some(v) = inner.strip_prefix("re<") {
            return Ok(BorelFunction::Indicator(SpectralSet::ReLt { x: resolve(v)? }));
        }
        return Err(bad(format!("unsupported indicator \"{inner}\"")));
    }
    Err(bad(format!("unsupported factor \"{text}\"")))
}
