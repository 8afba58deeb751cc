//! The seven commands. Each returns the process exit code: 0 when every
//! check passes (or the command is report-only), 1 when a check fails or the
//! underlying computation errors, 2 for argument preconditions the parser
//! cannot see.

use std::path::PathBuf;

use serde_json::json;

use weyl_core::error::WeylError;
use weyl_core::limits::{commutator_xp, continuum_limit_study, uncertainty_exists, WidthRule};
use weyl_core::linalg;
use weyl_core::locality::{
    apply_automorphism_operator, dispersion_check, locality_report, neighbour_plus, wave_evolve,
    LatticeField, WaveConfig,
};
use weyl_core::matrix::{conj_transpose, max_abs, max_abs_diff, to_matrix};
use weyl_core::operators::duality_audit;
use weyl_core::params::AlgebraParams;
use weyl_core::rng;
use weyl_core::Matrix;

use crate::report::{complex_json, emit, json_report, sci, Meta, OutputFormat};
use crate::verify;

/// Orders outside this window make the exhaustive identity suites either
/// degenerate or too slow for an interactive run.
pub const VERIFY_N_MIN: usize = 2;
pub const VERIFY_N_MAX: usize = 64;
/// Smallest order admitted to the continuum-limit study; below this the
/// study state's tails wrap and the error is dominated by periodization.
pub const LIMIT_N_MIN: usize = 8;
/// Frozen ceiling on the final-row error of the continuum-limit study.
pub const LIMIT_FINAL_ERROR_CEILING: f64 = 0.05;
/// Frozen floor on the delocalization index after a random-unitary kick.
pub const DELOCALIZATION_FLOOR: f64 = 0.3;
/// Spectrum preservation budget per unit order under exact-arithmetic
/// conjugation: eigenvalues match within 1e−9·n.
pub const SPECTRUM_TOL_PER_N: f64 = 1e-9;
/// Frozen ceiling on leapfrog invariant-energy drift.
pub const ENERGY_DRIFT_CEILING: f64 = 1e-6;
/// The dispersion probe always runs at √α·dt = 0.02 for 1000 steps, small
/// enough that the integrator's O((Ω·dt)²) frequency warp sits under 1e−4.
pub const DISPERSION_PROBE_STABILITY: f64 = 0.02;
pub const DISPERSION_PROBE_STEPS: usize = 1000;

pub enum CliFailure {
    /// Argument precondition violated: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Operation(String),
}

impl From<WeylError> for CliFailure {
    fn from(e: WeylError) -> Self {
        CliFailure::Operation(e.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::Operation(format!("writing report: {e}"))
    }
}

pub type CmdResult = Result<i32, CliFailure>;

pub struct OutputTarget {
    pub format: OutputFormat,
    pub path: Option<PathBuf>,
}

fn params_for(n: usize) -> Result<AlgebraParams, CliFailure> {
    AlgebraParams::new(n).map_err(|e| CliFailure::Usage(e.to_string()))
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = m
        .rows()
        .into_iter()
        .map(|row| serde_json::Value::Array(row.iter().map(|z| complex_json(*z)).collect()))
        .collect();
    serde_json::Value::Array(rows)
}

// ---------------------------------------------------------------------------
// verify

pub fn cmd_verify(n: usize, seed: u64, out: &OutputTarget) -> CmdResult {
    if !(VERIFY_N_MIN..=VERIFY_N_MAX).contains(&n) {
        return Err(CliFailure::Usage(format!(
            "--n must lie in [{VERIFY_N_MIN}, {VERIFY_N_MAX}] for the exhaustive suites (got {n})"
        )));
    }
    let params = params_for(n)?;
    let rows = verify::run_suite(params, seed);
    let all_pass = verify::all_pass(&rows);
    let meta = Meta::single("verify", n, Some(seed));

    let content = match out.format {
        OutputFormat::Json => {
            let checks: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "identity": r.identity,
                        "max_dev": r.max_dev,
                        "tol": r.tol,
                        "mode": r.mode.as_str(),
                        "pass": r.pass,
                    })
                })
                .collect();
            json_report(&meta, json!({ "checks": checks, "all_pass": all_pass }))
        }
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str("identity,max_dev,tol,mode,pass\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.identity,
                    sci(r.max_dev),
                    sci(r.tol),
                    r.mode.as_str(),
                    r.pass
                ));
            }
            s
        }
    };
    emit(&out.path, &content)?;

    if all_pass {
        Ok(0)
    } else {
        for r in rows.iter().filter(|r| !r.pass) {
            eprintln!(
                "identity failed: {} (max_dev = {}, tol = {})",
                r.identity,
                sci(r.max_dev),
                sci(r.tol)
            );
        }
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// commutator

pub fn cmd_commutator(n: usize, out: &OutputTarget) -> CmdResult {
    let params = params_for(n)?;
    let c = commutator_xp(params);
    let m = to_matrix(&c);
    let tol = params.tol();

    let anti_dev = max_abs_diff(&m, &conj_transpose(&m).mapv(|z| -z));
    let trace_abs = c.trace().norm();
    let entry_max = max_abs(&m);
    let svals = linalg::singular_values(&m).map_err(CliFailure::from)?;
    let operator_norm = svals.iter().cloned().fold(0.0f64, f64::max);
    let trace_norm: f64 = svals.iter().sum();

    let anti_hermitian = anti_dev <= tol;
    let traceless = trace_abs <= tol;
    let nonzero = operator_norm > tol;
    let all_pass = anti_hermitian && traceless && nonzero;

    let meta = Meta::single("commutator", n, None);
    let content = match out.format {
        OutputFormat::Json => json_report(
            &meta,
            json!({
                "matrix": matrix_json(&m),
                "antihermiticity_dev": anti_dev,
                "trace_abs": trace_abs,
                "entry_max": entry_max,
                "operator_norm": operator_norm,
                "trace_norm": trace_norm,
                "tol": tol,
                "anti_hermitian": anti_hermitian,
                "traceless": traceless,
                "nonzero": nonzero,
                "all_pass": all_pass,
            }),
        ),
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str(&format!("# antihermiticity_dev = {}\n", sci(anti_dev)));
            s.push_str(&format!("# trace_abs = {}\n", sci(trace_abs)));
            s.push_str(&format!("# entry_max = {}\n", sci(entry_max)));
            s.push_str(&format!("# operator_norm = {}\n", sci(operator_norm)));
            s.push_str(&format!("# trace_norm = {}\n", sci(trace_norm)));
            s.push_str(&format!("# all_pass = {all_pass}\n"));
            s.push_str("row,col,re,im\n");
            for r in 0..n {
                for col in 0..n {
                    let z = m[[r, col]];
                    s.push_str(&format!("{r},{col},{},{}\n", sci(z.re), sci(z.im)));
                }
            }
            s
        }
    };
    emit(&out.path, &content)?;

    if all_pass {
        Ok(0)
    } else {
        eprintln!(
            "commutator structure check failed: anti_hermitian={anti_hermitian} traceless={traceless} nonzero={nonzero}"
        );
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// uncertainty

pub fn cmd_uncertainty(n: usize, trials: usize, seed: u64, out: &OutputTarget) -> CmdResult {
    if trials == 0 {
        return Err(CliFailure::Usage("--trials must be at least 1".into()));
    }
    let params = params_for(n)?;
    let rep = uncertainty_exists(params, trials, seed).map_err(CliFailure::from)?;
    let pass = rep.violations == 0 && rep.witness_found;

    let meta = Meta::single("uncertainty", n, Some(seed));
    let content = match out.format {
        OutputFormat::Json => {
            let amps: Vec<serde_json::Value> = rep
                .best_state
                .amps()
                .iter()
                .map(|z| complex_json(*z))
                .collect();
            json_report(
                &meta,
                json!({
                    "trials": rep.trials,
                    "best_bound": rep.best_bound,
                    "best_product": rep.best_product,
                    "violations": rep.violations,
                    "witness_found": rep.witness_found,
                    "best_state": amps,
                    "pass": pass,
                }),
            )
        }
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str("trials,best_bound,best_product,violations,witness_found,pass\n");
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                rep.trials,
                sci(rep.best_bound),
                sci(rep.best_product),
                rep.violations,
                rep.witness_found,
                pass
            ));
            s
        }
    };
    emit(&out.path, &content)?;

    if pass {
        Ok(0)
    } else {
        eprintln!(
            "uncertainty check failed: violations={} witness_found={}",
            rep.violations, rep.witness_found
        );
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// limit

pub fn cmd_limit(n_list: &[usize], out: &OutputTarget) -> CmdResult {
    if n_list.is_empty() {
        return Err(CliFailure::Usage("--n-list must not be empty".into()));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliFailure::Usage(format!(
            "--n-list must be strictly ascending (got {n_list:?})"
        )));
    }
    if n_list[0] < LIMIT_N_MIN {
        return Err(CliFailure::Usage(format!(
            "--n-list entries must be at least {LIMIT_N_MIN} (got {})",
            n_list[0]
        )));
    }
    let rule = WidthRule::default();
    let report = continuum_limit_study(n_list, &rule).map_err(CliFailure::from)?;
    let final_error = report.rows.last().expect("list is non-empty").error;
    let pass = report.monotone_flag && final_error < LIMIT_FINAL_ERROR_CEILING;

    let meta = Meta::list("limit", n_list);
    let content = match out.format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "expectation": complex_json(r.expectation),
                        "error": r.error,
                    })
                })
                .collect();
            json_report(
                &meta,
                json!({
                    "width_scale": rule.scale,
                    "rows": rows,
                    "monotone": report.monotone_flag,
                    "final_error": final_error,
                    "final_error_ceiling": LIMIT_FINAL_ERROR_CEILING,
                    "pass": pass,
                }),
            )
        }
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str(&format!("# width_scale = {}\n", sci(rule.scale)));
            s.push_str(&format!("# monotone = {}\n", report.monotone_flag));
            s.push_str(&format!("# final_error = {}\n", sci(final_error)));
            s.push_str(&format!("# pass = {pass}\n"));
            s.push_str("n,re,im,error\n");
            for r in &report.rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.n,
                    sci(r.expectation.re),
                    sci(r.expectation.im),
                    sci(r.error)
                ));
            }
            s
        }
    };
    emit(&out.path, &content)?;

    if pass {
        Ok(0)
    } else {
        eprintln!(
            "continuum-limit check failed: monotone={} final_error={}",
            report.monotone_flag,
            sci(final_error)
        );
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// explode

pub fn cmd_explode(n: usize, seed: u64, out: &OutputTarget) -> CmdResult {
    let params = params_for(n)?;
    let np = to_matrix(&neighbour_plus(params));
    let canonical = locality_report(&np).map_err(CliFailure::from)?;

    let mut rng = rng::seeded(seed);
    let u = rng::haar_unitary(n, &mut rng);
    let conjugated_m = apply_automorphism_operator(&np, &u).map_err(CliFailure::from)?;
    let conjugated = locality_report(&conjugated_m).map_err(CliFailure::from)?;

    let spectrum_dev =
        linalg::spectrum_match_distance(&canonical.spectrum, &conjugated.spectrum);
    let spectrum_tol = SPECTRUM_TOL_PER_N * n as f64;
    // Below n = 4 the one-step band covers the whole cycle, so band energy
    // is 1 for every operator and the delocalization index cannot
    // discriminate; the thresholds are reported but not enforced.
    let degenerate_band = n < 4;
    let spectrum_ok = spectrum_dev <= spectrum_tol;
    let delocalized = conjugated.delocalization_index > DELOCALIZATION_FLOOR;
    let pass = spectrum_ok && (delocalized || degenerate_band);

    let meta = Meta::single("explode", n, Some(seed));
    let content = match out.format {
        OutputFormat::Json => json_report(
            &meta,
            json!({
                "canonical": canonical.to_json(),
                "conjugated": conjugated.to_json(),
                "spectrum_match_dev": spectrum_dev,
                "spectrum_tol": spectrum_tol,
                "delocalization_floor": DELOCALIZATION_FLOOR,
                "degenerate_band": degenerate_band,
                "spectrum_ok": spectrum_ok,
                "delocalized": delocalized,
                "pass": pass,
            }),
        ),
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str(&format!("# spectrum_match_dev = {}\n", sci(spectrum_dev)));
            s.push_str(&format!("# spectrum_tol = {}\n", sci(spectrum_tol)));
            s.push_str(&format!("# delocalization_floor = {}\n", sci(DELOCALIZATION_FLOOR)));
            s.push_str(&format!("# degenerate_band = {degenerate_band}\n"));
            s.push_str(&format!("# pass = {pass}\n"));
            s.push_str("operator,band_energy,delocalization_index\n");
            s.push_str(&format!(
                "canonical,{},{}\n",
                sci(canonical.band_energy),
                sci(canonical.delocalization_index)
            ));
            s.push_str(&format!(
                "conjugated,{},{}\n",
                sci(conjugated.band_energy),
                sci(conjugated.delocalization_index)
            ));
            s
        }
    };
    emit(&out.path, &content)?;

    if pass {
        Ok(0)
    } else {
        eprintln!(
            "explode check failed: spectrum_ok={spectrum_ok} delocalized={delocalized} (index = {})",
            sci(conjugated.delocalization_index)
        );
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// wave

#[allow(clippy::too_many_arguments)]
pub fn cmd_wave(
    n: usize,
    alpha: f64,
    dt: f64,
    steps: usize,
    seed: u64,
    sample_every: Option<usize>,
    out: &OutputTarget,
) -> CmdResult {
    let params = params_for(n)?;
    // NaN-safe: clap parses "NaN" and "inf" as valid f64 flag values
    let bad_real = |x: f64| x <= 0.0 || !x.is_finite();
    if bad_real(alpha) || bad_real(dt) {
        return Err(CliFailure::Usage(format!(
            "--alpha and --dt must be positive finite numbers (got alpha = {alpha}, dt = {dt})"
        )));
    }
    if steps == 0 {
        return Err(CliFailure::Usage("--steps must be at least 1".into()));
    }
    let sample_every = sample_every.unwrap_or_else(|| (steps / 10).max(1));
    if sample_every == 0 {
        return Err(CliFailure::Usage("--sample-every must be at least 1".into()));
    }
    let cfg = WaveConfig::new(alpha, dt, steps).with_sample_every(sample_every);

    let mut rng = rng::seeded(seed);
    let f0 = LatticeField::new(params, rng::random_smooth_field(params, &mut rng, 3))
        .map_err(CliFailure::from)?;
    let v0 = LatticeField::zeros(params);
    let traj = wave_evolve(&f0, &v0, &cfg).map_err(CliFailure::from)?;

    // Dispersion is probed at a fixed small stability number so the reported
    // frequency error reflects the lattice, not the caller's step size.
    let probe_dt = DISPERSION_PROBE_STABILITY / alpha.sqrt();
    let probe_cfg = WaveConfig::new(alpha, probe_dt, DISPERSION_PROBE_STEPS);
    let dispersion = dispersion_check(params, &probe_cfg).map_err(CliFailure::from)?;

    let drift_pass = traj.energy_drift < ENERGY_DRIFT_CEILING;

    let meta = Meta::single("wave", n, Some(seed));
    let content = match out.format {
        OutputFormat::Json => {
            let trajectory: Vec<serde_json::Value> = traj
                .recorded_steps
                .iter()
                .zip(traj.fields.iter())
                .map(|(step, field)| {
                    json!({
                        "step": step,
                        "field": field.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_report(
                &meta,
                json!({
                    "alpha": alpha,
                    "dt": dt,
                    "steps": steps,
                    "sample_every": sample_every,
                    "stability_number": cfg.stability_number(),
                    "initial_sync_energy": traj.sync_energy.first(),
                    "final_sync_energy": traj.sync_energy.last(),
                    "energy_drift": traj.energy_drift,
                    "energy_drift_ceiling": ENERGY_DRIFT_CEILING,
                    "dispersion": {
                        "probe_dt": probe_dt,
                        "probe_steps": DISPERSION_PROBE_STEPS,
                        "worst_rel_error": dispersion.worst_rel_error,
                    },
                    "trajectory": trajectory,
                    "pass": drift_pass,
                }),
            )
        }
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str(&format!("# alpha = {}\n", sci(alpha)));
            s.push_str(&format!("# dt = {}\n", sci(dt)));
            s.push_str(&format!("# steps = {steps}\n"));
            s.push_str(&format!("# sample_every = {sample_every}\n"));
            s.push_str(&format!("# stability_number = {}\n", sci(cfg.stability_number())));
            s.push_str(&format!("# energy_drift = {}\n", sci(traj.energy_drift)));
            s.push_str(&format!(
                "# dispersion_worst_rel_error = {}\n",
                sci(dispersion.worst_rel_error)
            ));
            s.push_str(&format!("# pass = {drift_pass}\n"));
            s.push_str("step,site,re,im\n");
            for (step, field) in traj.recorded_steps.iter().zip(traj.fields.iter()) {
                for (site, z) in field.iter().enumerate() {
                    s.push_str(&format!("{step},{site},{},{}\n", sci(z.re), sci(z.im)));
                }
            }
            s
        }
    };
    emit(&out.path, &content)?;

    if drift_pass {
        Ok(0)
    } else {
        eprintln!(
            "wave energy check failed: drift = {} (ceiling {})",
            sci(traj.energy_drift),
            sci(ENERGY_DRIFT_CEILING)
        );
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// duality-audit

pub fn cmd_duality_audit(n: usize, out: &OutputTarget) -> CmdResult {
    let params = params_for(n)?;
    let rep = duality_audit(params).map_err(CliFailure::from)?;

    let meta = Meta::single("duality-audit", n, None);
    let content = match out.format {
        OutputFormat::Json => json_report(
            &meta,
            json!({
                "unitarity_dev": rep.unitarity_dev,
                "sigma_min": rep.sigma_min,
                "transport_dev": rep.transport_dev,
                "best_scalar": complex_json(rep.best_scalar),
                "scalar_residual_rel": rep.scalar_residual_rel,
                "dev_from_dft": rep.dev_from_dft,
            }),
        ),
        OutputFormat::Csv => {
            let mut s = meta.csv_header();
            s.push_str(
                "unitarity_dev,sigma_min,transport_dev,best_scalar_re,best_scalar_im,scalar_residual_rel,dev_from_dft\n",
            );
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                sci(rep.unitarity_dev),
                sci(rep.sigma_min),
                sci(rep.transport_dev),
                sci(rep.best_scalar.re),
                sci(rep.best_scalar.im),
                sci(rep.scalar_residual_rel),
                sci(rep.dev_from_dft)
            ));
            s
        }
    };
    emit(&out.path, &content)?;
    Ok(0)
}

// ---------------------------------------------------------------------------

/// Shared failure-to-exit-code mapping.
pub fn finish(result: CmdResult) -> i32 {
    match result {
        Ok(code) => code,
        Err(CliFailure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliFailure::Operation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
