//! The six subcommands. Each one turns a validated [`RunConfig`] into the
//! bytes of its output file without touching the filesystem.

use std::fmt::Write as _;
use std::path::PathBuf;

use ctrnn_spectra_core::dynamics::{integrate_rk4, State};
use ctrnn_spectra_core::hamiltonian::{
    check_hamiltonicity, coefficients, contour_grid, evaluate_h, HamiltonianCoeffs, PlanarParams,
};
use ctrnn_spectra_core::oracle::{discretize, inverse_iteration, residual_norm, symmetric_spectrum, Grid};
use ctrnn_spectra_core::spectrum::{
    admissibility_of_coeffs, eigenvalue, normalize, AdmissibilityClass, ExponentVariant, Parity,
};
use ctrnn_spectra_core::Complex64;
use rayon::prelude::*;

use crate::config::{Format, RunConfig, SweepAxis};
use crate::error::CliError;
use crate::format::{csv_row, float, to_json};
use crate::report::{
    class_label, parity_label, verdict_label, AdmissibilityJson, CheckReport, CoeffsJson, EigenvalueJson,
    GridJson, SpectrumReport, VerifyCase, VerifyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Simulate,
    Check,
    Spectrum,
    Scan,
    Verify,
    Contour,
}

impl Command {
    /// The one output format each subcommand defines.
    pub fn format(self) -> Format {
        match self {
            Command::Simulate | Command::Scan | Command::Contour => Format::Csv,
            Command::Check | Command::Spectrum | Command::Verify => Format::Json,
        }
    }
}

/// Primary output plus any side files and warnings for the user.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: Vec<u8>,
    pub side_files: Vec<(PathBuf, Vec<u8>)>,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn body(body: Vec<u8>) -> Self {
        Self { body, ..Self::default() }
    }
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if let Some(f) = cfg.output.format {
        if f != cmd.format() {
            return Err(CliError::Config(format!(
                "{cmd:?} output is only defined as {:?}, not {f:?}",
                cmd.format()
            )));
        }
    }
    match cmd {
        Command::Simulate => simulate(cfg).map(Outcome::body),
        Command::Check => check(cfg).map(Outcome::body),
        Command::Spectrum => spectrum(cfg),
        Command::Scan => scan(cfg).map(Outcome::body),
        Command::Verify => verify(cfg).map(Outcome::body),
        Command::Contour => contour(cfg).map(Outcome::body),
    }
}

fn hamiltonian_coeffs(cfg: &RunConfig) -> Result<(PlanarParams, HamiltonianCoeffs), CliError> {
    let p = cfg.planar()?;
    let c = coefficients(&p, cfg.tolerances.hamiltonicity_tol)?;
    Ok((p, c))
}

pub fn simulate(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let net = cfg.network()?;
    let y0 = cfg
        .simulate
        .y0
        .clone()
        .ok_or_else(|| CliError::Config("missing key `simulate.y0`".into()))?;
    if y0.len() != net.n() {
        return Err(CliError::Config(format!(
            "key `simulate.y0` has {} entries for a {}-node network",
            y0.len(),
            net.n()
        )));
    }
    let h_coeffs = if net.n() == 2 {
        cfg.planar().ok().and_then(|p| coefficients(&p, cfg.tolerances.hamiltonicity_tol).ok())
    } else {
        None
    };
    let traj = integrate_rk4(&net, &State::new(y0, 0.0), cfg.simulate.t_end, cfg.simulate.dt)?;

    let mut out = String::from("t");
    for i in 1..=net.n() {
        let _ = write!(out, ",y{i}");
    }
    if h_coeffs.is_some() {
        out.push_str(",H");
    }
    out.push('\n');
    let mut fields = Vec::with_capacity(net.n() + 2);
    for s in &traj.states {
        fields.clear();
        fields.push(s.t);
        fields.extend_from_slice(&s.y);
        if let Some(c) = &h_coeffs {
            fields.push(evaluate_h(c, s.y[0], s.y[1]));
        }
        out.push_str(&csv_row(&fields));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

pub fn check(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let p = cfg.planar()?;
    let tol = cfg.tolerances.hamiltonicity_tol;
    let res = check_hamiltonicity(&p, tol);
    let coefficients = if res.verdict.is_hamiltonian() {
        coefficients(&p, tol).ok().map(|c| CoeffsJson::from(&c))
    } else {
        None
    };
    Ok(to_json(&CheckReport { verdict: verdict_label(res.verdict), mismatch: res.mismatch, coefficients }))
}

fn eigen_indices(m_max: usize) -> impl Iterator<Item = (Parity, usize)> {
    (0..=m_max).flat_map(|m| [(Parity::Even, m), (Parity::Odd, m)])
}

pub fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, c) = hamiltonian_coeffs(cfg)?;
    let eps = cfg.tolerances.boundary_eps;
    let variant = cfg.variant.variant();

    let mut eigenvalues = Vec::with_capacity(2 * (cfg.m_max + 1));
    for (parity, m) in eigen_indices(cfg.m_max) {
        let z = eigenvalue(&c, parity, m)?;
        eigenvalues.push(EigenvalueJson { parity: parity_label(parity), m, re: z.re, im: z.im });
    }
    let printed = admissibility_of_coeffs(&c, ExponentVariant::PaperPrinted, eps)?;
    let corrected = admissibility_of_coeffs(&c, ExponentVariant::OracleCorrected, eps).ok();

    let mut outcome = Outcome::default();
    if let Some(dir) = &cfg.output.samples_dir {
        if printed.verdict == AdmissibilityClass::Inadmissible {
            outcome
                .warnings
                .push("parameters are inadmissible; eigenfunction sampling suppressed".to_owned());
        } else {
            let grid = cfg.grid()?;
            for (parity, m) in eigen_indices(cfg.m_max) {
                match normalize(&c, parity, m, &grid, variant) {
                    Ok(psi) => {
                        let name = format!("psi_{}_{m}.csv", parity_label(parity));
                        outcome.side_files.push((dir.join(name), sample_csv(&grid, &psi)));
                    }
                    Err(e) => outcome
                        .warnings
                        .push(format!("{} m={m}: eigenfunction not sampled: {e}", parity_label(parity))),
                }
            }
        }
    }

    let report = SpectrumReport {
        coeffs: CoeffsJson::from(&c),
        variant: cfg.variant.label(),
        eigenvalues,
        admissibility: AdmissibilityJson::from(printed),
        admissibility_corrected: corrected.map(AdmissibilityJson::from),
    };
    outcome.body = to_json(&report);
    Ok(outcome)
}

fn sample_csv(grid: &Grid, psi: &[Complex64]) -> Vec<u8> {
    let mut out = String::from("y,psi_re,psi_im\n");
    for (k, z) in psi.iter().enumerate() {
        out.push_str(&csv_row(&[grid.point(k), z.re, z.im]));
        out.push('\n');
    }
    out.into_bytes()
}

pub const SCAN_PARAMS: [&str; 10] = ["w11", "w12", "w21", "w22", "tau1", "tau2", "theta1", "theta2", "i1", "i2"];

fn param_slot<'a>(p: &'a mut PlanarParams, name: &str) -> Option<&'a mut f64> {
    Some(match name {
        "w11" => &mut p.w11,
        "w12" => &mut p.w12,
        "w21" => &mut p.w21,
        "w22" => &mut p.w22,
        "tau1" => &mut p.tau1,
        "tau2" => &mut p.tau2,
        "theta1" => &mut p.theta1,
        "theta2" => &mut p.theta2,
        "i1" => &mut p.i1,
        "i2" => &mut p.i2,
        _ => return None,
    })
}

/// Evenly spaced values with both ends exact; one step means just `min`.
fn axis_values(a: &SweepAxis) -> Vec<f64> {
    if a.steps == 1 {
        return vec![a.min];
    }
    let last = (a.steps - 1) as f64;
    (0..a.steps)
        .map(|k| if k + 1 == a.steps { a.max } else { a.min + (a.max - a.min) * (k as f64 / last) })
        .collect()
}

const MAX_SCAN_ROWS: usize = 10_000_000;

fn validate_sweep(axes: &[SweepAxis]) -> Result<(), CliError> {
    let bad = |msg: String| Err(CliError::Config(msg));
    if axes.is_empty() {
        return bad("key `scan.params` must list at least one parameter".into());
    }
    let mut rows: usize = 1;
    for (k, a) in axes.iter().enumerate() {
        if !SCAN_PARAMS.contains(&a.name.as_str()) {
            return bad(format!("key `scan.params[{k}].name`: unknown parameter `{}`", a.name));
        }
        if axes[..k].iter().any(|b| b.name == a.name) {
            return bad(format!("key `scan.params[{k}].name`: `{}` listed twice", a.name));
        }
        if a.steps == 0 {
            return bad(format!("key `scan.params[{k}].steps` must be at least 1"));
        }
        if !(a.min.is_finite() && a.max.is_finite() && a.min <= a.max) {
            return bad(format!("key `scan.params[{k}]` needs finite min <= max"));
        }
        if a.name.starts_with("tau") && a.min <= 0.0 {
            return bad(format!("key `scan.params[{k}].min`: time constants must stay positive"));
        }
        rows = rows.saturating_mul(a.steps);
    }
    if rows > MAX_SCAN_ROWS {
        return bad(format!("sweep has {rows} points, more than {MAX_SCAN_ROWS}"));
    }
    Ok(())
}

/// Admissibility over the Cartesian product of the sweep axes, first axis
/// outermost. Rows are emitted in sweep-index order.
pub fn scan(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let axes = &cfg
        .scan
        .as_ref()
        .ok_or_else(|| CliError::Config("missing key `scan`".into()))?
        .params;
    validate_sweep(axes)?;
    let base = cfg.planar()?;
    let values: Vec<Vec<f64>> = axes.iter().map(axis_values).collect();
    let total: usize = values.iter().map(Vec::len).product();
    let tol = cfg.tolerances.hamiltonicity_tol;
    let eps = cfg.tolerances.boundary_eps;

    let rows: Vec<String> = (0..total)
        .into_par_iter()
        .map(|index| {
            let mut p = base;
            let mut rem = index;
            for (a, vals) in axes.iter().zip(&values).rev() {
                *param_slot(&mut p, &a.name).expect("validated name") = vals[rem % vals.len()];
                rem /= vals.len();
            }
            let mut row = csv_row(&[p.w11, p.w12, p.w21, p.w22, p.tau1, p.tau2, p.theta1, p.theta2, p.i1, p.i2]);
            match coefficients(&p, tol).and_then(|c| admissibility_of_coeffs(&c, ExponentVariant::PaperPrinted, eps)) {
                Ok(v) => {
                    let _ = write!(row, ",{},{},{}", class_label(v.verdict), float(v.re_xi1), float(v.re_xi2));
                }
                Err(_) => row.push_str(",not-hamiltonian,,"),
            }
            row
        })
        .collect();

    let mut out = String::from("w11,w12,w21,w22,tau1,tau2,theta1,theta2,i1,i2,verdict,re_xi1,re_xi2\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out.into_bytes())
}

fn residual(c: &HamiltonianCoeffs, parity: Parity, m: usize, lambda: Complex64, grid: &Grid, v: ExponentVariant) -> Option<f64> {
    let psi = normalize(c, parity, m, grid, v).ok()?;
    residual_norm(c, lambda, &psi, grid).ok().filter(|r| r.is_finite())
}

/// Analytic eigenvalues against the finite-difference operator, plus the
/// discrete residual of both exponent variants.
///
/// A symmetric operator is solved once with the Sturm solver and its
/// descending eigenvalues are matched as even 0, odd 0, even 1, and so on.
/// Otherwise each case runs inverse iteration from its analytic eigenvalue.
pub fn verify(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let (_, c) = hamiltonian_coeffs(cfg)?;
    let grid = cfg.grid()?;
    let op = discretize(&c, &grid);
    let indices: Vec<(Parity, usize)> = eigen_indices(cfg.m_max).collect();

    let sturm = if op.symmetric { Some(symmetric_spectrum(&op, indices.len())?) } else { None };

    let cases: Vec<VerifyCase> = indices
        .par_iter()
        .enumerate()
        .map(|(k, &(parity, m))| -> Result<VerifyCase, CliError> {
            let analytic = eigenvalue(&c, parity, m)?;
            let numeric = match &sturm {
                Some(vals) => Complex64::new(vals[k], 0.0),
                None => {
                    let (lambda, _) =
                        inverse_iteration(&op, analytic, cfg.tolerances.oracle_tol, cfg.tolerances.oracle_max_iter)
                            .map_err(CliError::Oracle)?;
                    lambda
                }
            };
            Ok(VerifyCase {
                parity: parity_label(parity),
                m,
                lambda_analytic: analytic.into(),
                lambda_numeric: numeric.into(),
                residual_printed_xi: residual(&c, parity, m, analytic, &grid, ExponentVariant::PaperPrinted),
                residual_corrected_xi: residual(&c, parity, m, analytic, &grid, ExponentVariant::OracleCorrected),
            })
        })
        .collect::<Result<_, _>>()?;

    Ok(to_json(&VerifyReport {
        coeffs: CoeffsJson::from(&c),
        grid: GridJson { y_min: grid.y_min(), y_max: grid.y_max(), n: grid.n_points() },
        cases,
    }))
}

pub fn contour(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let (_, c) = hamiltonian_coeffs(cfg)?;
    let spec = &cfg.contour;
    let grid = contour_grid(
        &c,
        (spec.y1_range[0], spec.y1_range[1]),
        (spec.y2_range[0], spec.y2_range[1]),
        spec.resolution,
    )?;
    let mut out = String::with_capacity(64 * spec.resolution * spec.resolution + 16);
    out.push_str("y1,y2,H\n");
    for (y1, y2, h) in grid.nodes() {
        out.push_str(&csv_row(&[y1, y2, h]));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(name: &str, min: f64, max: f64, steps: usize) -> SweepAxis {
        SweepAxis { name: name.into(), min, max, steps }
    }

    #[test]
    fn axis_endpoints_are_exact() {
        let v = axis_values(&axis("w12", -1.0, 1.0, 21));
        assert_eq!(v.len(), 21);
        assert_eq!((v[0], v[10], v[20]), (-1.0, 0.0, 1.0));
        assert_eq!(axis_values(&axis("w12", 0.3, 0.3, 1)), vec![0.3]);
    }

    #[test]
    fn malformed_sweeps_are_rejected() {
        for axes in [
            vec![],
            vec![axis("w13", 0.0, 1.0, 2)],
            vec![axis("w12", 0.0, 1.0, 0)],
            vec![axis("w12", 1.0, 0.0, 2)],
            vec![axis("w12", 0.0, 1.0, 2), axis("w12", 0.0, 1.0, 2)],
            vec![axis("tau1", 0.0, 1.0, 2)],
        ] {
            assert!(matches!(validate_sweep(&axes), Err(CliError::Config(_))), "{axes:?}");
        }
        assert!(validate_sweep(&[axis("w12", -1.0, 1.0, 21), axis("w21", -1.0, 1.0, 21)]).is_ok());
    }
}
