use std::fmt::Write as _;

use hecke_core::characters::{gauss_sum_closed, gauss_sum_direct, CharacterSpec};
use hecke_core::hecke::{AfeConfig, LFunction};
use hecke_core::moments::{
    headline_constant, main_term_prediction, mollified_ratio, GradientDenominator, HeadlineConfig,
    MollifierSpec, MomentConfig, Prefactor, VConvention,
};
use hecke_core::special::WKernel;
use hecke_core::survey::{density_report, run_survey, scan_real_zeros, SurveyRecord, CSV_HEADER};
use hecke_core::Exec;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::artifact::{emit_csv, emit_json, stdout, write_sidecar};
use crate::config::ConfigFile;
use crate::{
    verify, Cli, CliError, Command, ConstantArgs, DensityArgs, GaussSumArgs, GradientArg, LfunArgs,
    MomentsArgs, PlotArgs, PlotKind, PrefactorArg, SurveyArgs, VerifyArgs, ZerosArgs,
};

type Outcome = Result<(), CliError>;

pub fn run(cli: Cli) -> Outcome {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        hecke_core::exec::configure_workers(jobs);
    }
    match cli.command {
        Command::Survey(a) => survey(a, &cfg),
        Command::Zeros(a) => zeros(a, &cfg),
        Command::Lfun(a) => lfun(a),
        Command::GaussSum(a) => gauss_sum(a),
        Command::Density(a) => density(a),
        Command::Constant(a) => constant(a, &cfg),
        Command::Moments(a) => moments(a),
        Command::Verify(a) => verify_cmd(a, cli.seed, &cfg),
        Command::PlotData(a) => plot_data(a, &cfg),
    }
}

fn survey(a: SurveyArgs, cfg: &ConfigFile) -> Outcome {
    let mut sc = cfg.survey(cfg.scan(a.grid_points)?)?;
    sc.mode = a.mode.into();
    sc.include_units = a.include_units;
    sc.exec = Exec::Parallel;
    if a.max_norm > sc.norm_ceiling {
        return Err(CliError::Resource(format!(
            "max norm {} exceeds the ceiling {}; raise survey.norm_ceiling to allow it",
            a.max_norm, sc.norm_ceiling
        )));
    }
    let semantic = json!({ "max_norm": a.max_norm, "survey": sc, "record_hash": sc.config_hash() });
    match &a.out {
        Some(out) => {
            let summary = run_survey(a.max_norm, &sc, Some(out), a.checkpoint.as_deref(), |_| {})?;
            write_sidecar(out, "survey", &semantic, json!({ "summary": summary }))?;
            emit_json(None, json!({ "summary": summary }), "survey", &semantic)
        }
        None => {
            stdout(&format!("{CSV_HEADER}\n"))?;
            let mut failure = None;
            let summary = run_survey(a.max_norm, &sc, None, None, |r| {
                if failure.is_none() {
                    failure = stdout(&(r.csv_row() + "\n")).err();
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            eprintln!(
                "{}",
                serde_json::to_string(&summary).expect("summary serialises")
            );
            Ok(())
        }
    }
}

fn record_json(r: &SurveyRecord) -> Value {
    serde_json::to_value(r).expect("records serialise")
}

fn zeros(a: ZerosArgs, cfg: &ConfigFile) -> Outcome {
    let scan = cfg.scan(a.grid_points)?;
    let spec = CharacterSpec::new(a.d)?;
    let r = scan_real_zeros(&spec, &scan)?;
    let semantic = json!({ "d": a.d.to_string(), "scan": scan });
    emit_json(
        None,
        json!({ "record": record_json(&r) }),
        "zeros",
        &semantic,
    )
}

fn lfun(a: LfunArgs) -> Outcome {
    let lf = LFunction::new(&CharacterSpec::new(a.d)?, AfeConfig::default())?;
    let sigmas: Vec<f64> = match (a.sigma, a.grid) {
        (Some(s), _) => vec![s],
        (None, Some(k)) if k >= 1 => (0..=k).map(|j| j as f64 / k as f64).collect(),
        _ => return Err(CliError::Usage("--grid needs at least 1 step".into())),
    };
    let mut text = String::from("sigma,L,xi\n");
    for s in &sigmas {
        let v = lf.eval(Complex64::new(*s, 0.0))?;
        writeln!(text, "{s},{},{}", v.l.re, v.xi.re).expect("writing to a String");
    }
    let semantic = json!({ "d": a.d.to_string(), "sigma": a.sigma, "grid": a.grid });
    emit_csv(a.out.as_deref(), &text, "lfun", &semantic)
}

fn gauss_sum(a: GaussSumArgs) -> Outcome {
    let closed = gauss_sum_closed(a.r, a.n)?;
    let direct = gauss_sum_direct(a.r, a.n)?;
    let diff = (closed.numeric - direct.numeric).norm();
    let exact = closed.exact.expect("closed forms are exact");
    if a.json {
        let body = json!({
            "r": a.r.to_string(),
            "n": a.n.to_string(),
            "closed": { "coeff": exact.coeff, "radicand": exact.radicand, "value": closed.numeric.re },
            "direct": { "re": direct.numeric.re, "im": direct.numeric.im },
            "abs_difference": diff,
        });
        let semantic = json!({ "r": a.r.to_string(), "n": a.n.to_string() });
        return emit_json(None, body, "gauss-sum", &semantic);
    }
    stdout(&format!(
        "closed={}*sqrt({}) = {}\ndirect={} {:+}i\ndifference={diff:e}\n",
        exact.coeff, exact.radicand, closed.numeric.re, direct.numeric.re, direct.numeric.im
    ))
}

fn density(a: DensityArgs) -> Outcome {
    let s = density_report(a.max_norm, a.mode.into())?;
    let body = json!({
        "max_norm": s.max_norm,
        "mode": s.mode,
        "total": s.total,
        "density_ratio": s.density_ratio,
        "expected_density": s.expected_density,
    });
    emit_json(
        None,
        body,
        "density",
        &json!({ "max_norm": a.max_norm, "mode": s.mode }),
    )
}

fn constant(a: ConstantArgs, cfg: &ConfigFile) -> Outcome {
    let d = HeadlineConfig::default();
    let hc = HeadlineConfig {
        b: a.b,
        r: a.r,
        s: a.s,
        kappa: a.kappa,
        u_max: cfg.pick(None, "constant.u_max", d.u_max)?,
        rel_tol: cfg.pick(None, "constant.rel_tol", d.rel_tol)?,
        convention: VConvention {
            prefactor: match a.prefactor {
                PrefactorArg::MainTerm => Prefactor::MainTerm,
                PrefactorArg::Halved => Prefactor::Halved,
            },
            gradient: match a.gradient {
                GradientArg::UPlusIv => GradientDenominator::UPlusIv,
                GradientArg::XPlusIv => GradientDenominator::XPlusIv,
            },
        },
    };
    let r = headline_constant(&hc)?;
    if a.json {
        let semantic = serde_json::to_value(&hc).expect("config serialises");
        emit_json(
            None,
            serde_json::to_value(r).expect("result serialises"),
            "constant",
            &semantic,
        )?;
    } else {
        stdout(&format!("C={} err={:e}\n", r.c, r.error))?;
    }
    if !r.truncation_ok {
        return Err(CliError::Resource(format!(
            "tail beyond u = {} is {:e} in units of C; raise constant.u_max",
            hc.u_max, r.tail_estimate
        )));
    }
    Ok(())
}

fn moments(a: MomentsArgs) -> Outcome {
    let mc = MomentConfig::new(a.x)?;
    let m = MollifierSpec::cubic(mc.m_length(), 0.64)?;
    let delta1 = Complex64::new(a.delta1.0, a.delta1.1);
    let r = mollified_ratio(delta1, &mc, &m, Exec::Parallel)?;
    let predicted = main_term_prediction(delta1, a.x, &m)?;
    let gap = (r.ratio - predicted).abs() / predicted;
    if a.json {
        let body = json!({
            "ratio": r.ratio,
            "prediction": predicted,
            "relative_gap": gap,
            "numerator": r.numerator,
            "s1": r.s1,
            "family_size": r.family_size,
        });
        let semantic = json!({ "X": a.x, "delta1": [a.delta1.0, a.delta1.1], "b": 0.64 });
        return emit_json(None, body, "moments", &semantic);
    }
    stdout(&format!(
        "X={} delta1={}{:+}i family={}\nempirical={}  main_term={}  relative_gap={gap:.4}\n",
        a.x, a.delta1.0, a.delta1.1, r.family_size, r.ratio, predicted
    ))
}

fn verify_cmd(a: VerifyArgs, seed: u64, cfg: &ConfigFile) -> Outcome {
    let kcfg = cfg.kernel()?;
    let reports = verify::run(a.suite, seed, &kcfg);
    let pass = reports.iter().all(|r| r.pass);
    let semantic = json!({ "suite": a.suite, "seed": seed, "kernel": kcfg });
    let body = json!({ "seed": seed, "pass": pass, "suites": reports });
    emit_json(a.out.as_deref(), body, "verify", &semantic)?;
    if pass {
        Ok(())
    } else {
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.suite)
            .collect();
        Err(CliError::Verification(format!(
            "failed suites: {}",
            failed.join(", ")
        )))
    }
}

fn plot_data(a: PlotArgs, cfg: &ConfigFile) -> Outcome {
    let mut text = String::new();
    let semantic = match a.kind {
        PlotKind::XiProfile => {
            let rows = a.rows.unwrap_or(513);
            if rows < 2 {
                return Err(CliError::Usage("xi-profile needs at least 2 rows".into()));
            }
            let lf = LFunction::new(&CharacterSpec::new(a.d)?, AfeConfig::default())?;
            text.push_str("sigma,xi\n");
            for k in 0..rows {
                let s = k as f64 / (rows - 1) as f64;
                writeln!(text, "{s},{}", lf.xi_real(s)?).expect("writing to a String");
            }
            json!({ "kind": "xi_profile", "d": a.d.to_string(), "rows": rows })
        }
        PlotKind::KernelProfile => {
            let rows = a.rows.unwrap_or(200);
            if rows < 2 {
                return Err(CliError::Usage(
                    "kernel-profile needs at least 2 rows".into(),
                ));
            }
            let kcfg = cfg.kernel()?;
            let zero = Complex64::new(0.0, 0.0);
            let w = WKernel::new(zero, zero, &kcfg)?;
            let (lo, hi) = (1e-6f64.ln(), 100f64.ln());
            text.push_str("x,w\n");
            for k in 0..rows {
                let x = (lo + (hi - lo) * k as f64 / (rows - 1) as f64).exp();
                writeln!(text, "{x:e},{}", w.eval(x).re).expect("writing to a String");
            }
            json!({ "kind": "kernel_profile", "rows": rows, "kernel": kcfg })
        }
        PlotKind::ProportionCurve => {
            let mut sc = cfg.survey(cfg.scan(None)?)?;
            sc.mode = a.mode.into();
            sc.exec = Exec::Parallel;
            let mut records = Vec::new();
            run_survey(a.max_norm, &sc, None, None, |r| {
                records.push((r.norm, r.is_nonvanishing()))
            })?;
            text.push_str("norm,total,nonvanishing,fraction\n");
            let (mut total, mut good) = (0u64, 0u64);
            for (k, &(norm, ok)) in records.iter().enumerate() {
                if norm == 1 {
                    continue;
                }
                total += 1;
                good += ok as u64;
                if records.get(k + 1).is_none_or(|n| n.0 != norm) {
                    writeln!(text, "{norm},{total},{good},{}", good as f64 / total as f64)
                        .expect("writing to a String");
                }
            }
            json!({ "kind": "proportion_curve", "max_norm": a.max_norm, "survey": sc })
        }
    };
    emit_csv(a.out.as_deref(), &text, "plot-data", &semantic)
}
