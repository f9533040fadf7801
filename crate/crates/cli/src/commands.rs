use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use twospin::algebra::hermitian_expm;
use twospin::entanglement::{scan_concurrence, theta_grid, ConcurrenceScan};
use twospin::evolution::{detect_case, params_from_time, verify_periodicity};
use twospin::geometry::{
    finite_difference_spread, metric_finite_difference_checked, metric_from_variances,
    GeneratorPair, DEFAULT_STEP,
};
use twospin::oracle::{self, VerifyConfig};
use twospin::{
    build_hamiltonian, classify_manifold, concurrence, evolve, invariants_of, metric_analytic,
    product_state, propagator, EvolutionParams, Execution, ManifoldClass, ModelKind,
    ProductPattern, ProductStateAngles,
};

use crate::args::{EvolveArgs, FigureArgs, Format, PropagatorArgs, ScanArgs, VerifyArgs};
use crate::config::{alpha_label, format_complex, parse_alphas, parse_range, RunConfig};
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Text for stdout or `--out`, and whether an oracle suite failed.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub suite_failure: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            suite_failure: false,
        }
    }
}

fn envelope(command: &str, config: &RunConfig, result: Value) -> Result<String, CliError> {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config.echo(),
    });
    if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, result) {
        doc.extend(extra);
    }
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn json_only(format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::UnsupportedFormat("csv")),
    }
}

/// 17 significant digits; parses back to the same double.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    json_only(args.common.format)?;
    let config = RunConfig::from_args(&args.common)?;
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let vc = VerifyConfig {
        gamma: config.gamma,
        samples: args.samples,
        seed: args.seed,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        fault: args.inject_fault.map(Into::into),
        ..VerifyConfig::new(config.params, config.initial)
    };
    let report = oracle::run_all(&vc);
    let body = envelope(
        "verify",
        &config,
        json!({
            "samples": vc.samples,
            "seed": vc.seed,
            "suites": report.suites,
            "passed": report.passed,
        }),
    )?;
    Ok(Outcome {
        body,
        suite_failure: !report.passed,
    })
}

pub fn evolve_cmd(args: &EvolveArgs) -> Result<Outcome, CliError> {
    let config = RunConfig::from_args(&args.common)?;
    let at = match args.t {
        Some(t) => params_from_time(config.params.coupling, config.params.field, t)?,
        None => EvolutionParams::new(
            config.angle(args.theta.unwrap_or(0.0)),
            config.angle(args.phi.unwrap_or(0.0)),
        ),
    };
    let out = evolve(&config.initial, at, config.params.alpha, config.params.kind);
    let amps = out.amplitudes();
    let body = match args.common.format {
        Format::Json => envelope(
            "evolve",
            &config,
            json!({
                "theta": at.theta,
                "phi": at.phi,
                "amplitudes": amps.map(|z| [z.re, z.im]),
                "state_arg": amps.map(format_complex).join(","),
                "concurrence": concurrence(&out),
            }),
        )?,
        Format::Csv => {
            let mut s = String::from("component,re,im\n");
            for (label, z) in ["uu", "ud", "du", "dd"].iter().zip(amps) {
                writeln!(s, "{label},{},{}", csv_number(z.re), csv_number(z.im)).unwrap();
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

pub fn propagator_cmd(args: &PropagatorArgs) -> Result<Outcome, CliError> {
    let config = RunConfig::from_args(&args.common)?;
    let u = propagator(&config.params, args.t);
    let reference = hermitian_expm(&build_hamiltonian(&config.params), args.t)?;
    let body = match args.common.format {
        Format::Json => {
            let matrix: Vec<Vec<[f64; 2]>> =
                u.0.iter()
                    .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                    .collect();
            envelope(
                "propagator",
                &config,
                json!({
                    "t": args.t,
                    "matrix": matrix,
                    "unitarity_defect": u.unitarity_defect(),
                    "exponential_defect": u.max_abs_diff(&reference),
                }),
            )?
        }
        Format::Csv => {
            let mut s = String::from("row,col,re,im\n");
            for (r, row) in u.0.iter().enumerate() {
                for (c, z) in row.iter().enumerate() {
                    writeln!(s, "{r},{c},{},{}", csv_number(z.re), csv_number(z.im)).unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

/// Base points for the flatness check: a 5 × 5 grid.
fn flatness_grid() -> Vec<EvolutionParams> {
    (0..25)
        .map(|k| EvolutionParams::new(0.2 + 0.7 * (k / 5) as f64, 0.1 + 1.3 * (k % 5) as f64))
        .collect()
}

pub const FLATNESS_TOL: f64 = 1e-9;

pub fn metric(args: &crate::args::CommonArgs) -> Result<Outcome, CliError> {
    let config = RunConfig::from_args(args)?;
    let (psi, alpha, kind) = (&config.initial, config.params.alpha, config.params.kind);
    let inv = invariants_of(psi, kind);
    let m = metric_analytic(&inv, alpha.value(), config.gamma);
    let variance = metric_from_variances(
        psi,
        &GeneratorPair::for_model(kind, alpha.value()),
        config.gamma,
    )?;
    let base = EvolutionParams::new(0.3, 0.7);
    let fd = metric_finite_difference_checked(psi, alpha, kind, base, config.gamma, DEFAULT_STEP)?;
    let spread = finite_difference_spread(
        psi,
        alpha,
        kind,
        config.gamma,
        DEFAULT_STEP,
        &flatness_grid(),
        Execution::Parallel,
    )?;
    let body = match args.format {
        Format::Json => envelope(
            "metric",
            &config,
            json!({
                "g_theta_theta": m.g_tt,
                "g_phi_phi": m.g_pp,
                "g_theta_phi": m.g_tp,
                "gamma": m.gamma,
                "A": inv.a,
                "B": inv.b,
                "D": inv.d,
                "flat": spread < FLATNESS_TOL,
                "cross_check_defects": {
                    "variance": m.max_abs_diff(&variance),
                    "finite_difference": m.max_abs_diff(&fd),
                    "finite_difference_step": DEFAULT_STEP,
                    "flatness_spread": spread,
                },
            }),
        )?,
        Format::Csv => format!(
            "g_theta_theta,g_phi_phi,g_theta_phi\n{},{},{}\n",
            csv_number(m.g_tt),
            csv_number(m.g_pp),
            csv_number(m.g_tp)
        ),
    };
    Ok(Outcome::ok(body))
}

pub fn classify(args: &crate::args::CommonArgs) -> Result<Outcome, CliError> {
    json_only(args.format)?;
    let config = RunConfig::from_args(args)?;
    let (psi, alpha, kind) = (&config.initial, config.params.alpha, config.params.kind);
    let case = detect_case(psi, alpha, kind);
    let class = classify_manifold(psi, alpha, kind, config.gamma);
    let report = verify_periodicity(psi, alpha, kind);
    let mut result = match class {
        ManifoldClass::Point => json!({}),
        ManifoldClass::Circle {
            radius,
            coordinate,
            period,
        } => json!({ "radius": radius, "coordinate": coordinate, "period": period }),
        ManifoldClass::Torus {
            theta_period,
            phi_period,
        } => json!({ "theta_period": theta_period, "phi_period": phi_period, "twist": null }),
        ManifoldClass::TwistedTorus {
            theta_period,
            phi_period,
            twist,
        } => json!({ "theta_period": theta_period, "phi_period": phi_period, "twist": twist }),
        ManifoldClass::Cylinder { phi_period } => json!({ "phi_period": phi_period }),
    };
    let extra = json!({
        "class": class.name(),
        "case": case.number(),
        "periodicity_case": case,
        "periodicity_verified": report.verified,
        "periodicity_max_defect": report.max_fidelity_defect.max(report.max_phase_defect()),
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
        r.extend(e);
    }
    Ok(Outcome::ok(envelope("classify", &config, result)?))
}

fn scan_csv(scan: &ConcurrenceScan) -> String {
    let mut s = String::with_capacity(scan.samples.len() * 48);
    s.push_str("theta,concurrence\n");
    for &(theta, c) in &scan.samples {
        writeln!(s, "{},{}", csv_number(theta), csv_number(c)).unwrap();
    }
    s
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, body)?;
    Ok(())
}

fn model_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::Heisenberg => "heisenberg",
        ModelKind::Dm => "dm",
    }
}

/// With several α and CSV output, `--out` is a directory and the returned
/// body lists the files written.
pub fn scan(args: &ScanArgs) -> Result<Outcome, CliError> {
    let config = RunConfig::from_args(&args.common)?;
    let (lo, hi, n) = match &args.theta_range {
        Some(r) => parse_range(r, config.degrees)?,
        None => (0.0, PI, 361),
    };
    let thetas = theta_grid(lo, hi, n);
    let alphas = match &args.alphas {
        Some(list) => parse_alphas(list)?,
        None => vec![(args.common.alpha.clone(), config.params.alpha)],
    };
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let kind = config.params.kind;
    let scans: Vec<(String, ConcurrenceScan)> = alphas
        .iter()
        .map(|(raw, alpha)| {
            (
                raw.clone(),
                scan_concurrence(&config.initial, *alpha, kind, &thetas, exec),
            )
        })
        .collect();

    match args.common.format {
        Format::Csv if scans.len() == 1 => Ok(Outcome::ok(scan_csv(&scans[0].1))),
        Format::Csv => {
            let dir = args.common.out.as_ref().ok_or_else(|| {
                CliError::Usage("--out <dir> is required for CSV output with several α".into())
            })?;
            let mut files = Vec::new();
            for (raw, scan) in &scans {
                let path = dir.join(format!(
                    "scan_{}_alpha_{}.csv",
                    model_name(kind),
                    alpha_label(raw)
                ));
                write_file(&path, &scan_csv(scan))?;
                files.push(json!({ "alpha": raw, "path": path }));
            }
            let body = envelope("scan", &config, json!({ "files": files }))?;
            Ok(Outcome::ok(body))
        }
        Format::Json => {
            let curves: Vec<Value> = scans
                .iter()
                .map(|(raw, scan)| {
                    let (theta, c) = scan.maximum().expect("n ≥ 2");
                    json!({
                        "alpha": raw,
                        "maximum": { "theta": theta, "concurrence": c },
                        "samples": scan.samples,
                    })
                })
                .collect();
            let body = envelope("scan", &config, json!({ "curves": curves }))?;
            Ok(Outcome::ok(body))
        }
    }
}

/// Figure 1 curves (Heisenberg) and figure 2 curves (DM) from the equatorial
/// `|+−⟩` state. Writes CSVs into `--out` and returns a JSON manifest.
pub fn figure_data(args: &FigureArgs) -> Result<Outcome, CliError> {
    if args.points < 2 {
        return Err(CliError::BadRange {
            lo: 0.0,
            hi: PI,
            n: args.points,
        });
    }
    let alphas = parse_alphas(&args.alphas)?;
    let angles = ProductStateAngles::new(PI / 2.0, 0.0, ProductPattern::PlusMinus)?;
    let psi = product_state(&angles);
    let thetas = theta_grid(0.0, PI, args.points);
    fs::create_dir_all(&args.out)?;
    let mut files = Vec::new();
    for (figure, kind) in [("fig1", ModelKind::Heisenberg), ("fig2", ModelKind::Dm)] {
        for (raw, alpha) in &alphas {
            let scan = scan_concurrence(&psi, *alpha, kind, &thetas, Execution::Parallel);
            let path: PathBuf = args.out.join(format!(
                "{figure}_{}_alpha_{}.csv",
                model_name(kind),
                alpha_label(raw)
            ));
            write_file(&path, &scan_csv(&scan))?;
            let (theta_max, c_max) = scan.maximum().expect("n ≥ 2");
            files.push(json!({
                "figure": figure,
                "model": kind,
                "alpha": raw,
                "alpha_value": alpha.value(),
                "path": path,
                "points": args.points,
                "maximum": { "theta": theta_max, "concurrence": c_max },
            }));
        }
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "figure-data",
        "state": angles,
        "files": files,
    });
    Ok(Outcome::ok(serde_json::to_string_pretty(&doc)? + "\n"))
}
