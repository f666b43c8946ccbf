//! Closed-form spectrum checked against the finite-difference oracle.

use ctrnn_spectra_core::hamiltonian::{
    check_hamiltonicity, HamiltonianCoeffs, PlanarParams, DEFAULT_HAMILTONICITY_TOL,
};
use ctrnn_spectra_core::oracle::{
    discretize, inverse_iteration, residual_norm, symmetric_spectrum, with_boundary, Grid,
};
use ctrnn_spectra_core::spectrum::{
    admissibility, admissibility_raw, alpha_param, beta_param, eigen_center, eigenvalue,
    hermite_argument, s_discriminant, EigenPair, ExponentVariant, Parity, DEFAULT_BOUNDARY_EPS,
};
use ctrnn_spectra_core::specfun::hermite;
use ctrnn_spectra_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HARMONIC: HamiltonianCoeffs = HamiltonianCoeffs::new(0.0, 0.0, 1.0, 1.0, 0.0);

fn random_coeffs_with_positive_s(rng: &mut ChaCha8Rng) -> HamiltonianCoeffs {
    loop {
        let c = HamiltonianCoeffs::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        if s_discriminant(&c).re > 0.1 {
            return c;
        }
    }
}

#[test]
fn index_inversion_and_spacing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = random_coeffs_with_positive_s(&mut rng);
        let root = s_discriminant(&c).re.sqrt();
        for m in 0..=5usize {
            let even = eigenvalue(&c, Parity::Even, m).unwrap();
            let odd = eigenvalue(&c, Parity::Odd, m).unwrap();
            let alpha = alpha_param(&c, even).unwrap();
            let beta = beta_param(&c, odd).unwrap();
            assert!((alpha + m as f64).norm() <= 1e-9, "alpha {alpha} for m={m}");
            assert!((beta + m as f64).norm() <= 1e-9, "beta {beta} for m={m}");

            let rel = |a: Complex64, b: f64| (a.re - b).abs() / b.abs();
            assert!(rel(even - odd, root) <= 1e-10);
            let next_even = eigenvalue(&c, Parity::Even, m + 1).unwrap();
            let next_odd = eigenvalue(&c, Parity::Odd, m + 1).unwrap();
            assert!(rel(even - next_even, 2.0 * root) <= 1e-10);
            assert!(rel(odd - next_odd, 2.0 * root) <= 1e-10);
        }
    }
}

#[test]
fn hermite_factor_parity_about_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 50 {
        let c = random_coeffs_with_positive_s(&mut rng);
        if c.c2 <= 0.0 {
            continue;
        }
        let y_star = eigen_center(&c).unwrap();
        for n in 0..8 {
            for &delta in &[0.1, 0.7, 1.9] {
                let plus = hermite(n, hermite_argument(&c, y_star + delta).unwrap());
                let minus = hermite(n, hermite_argument(&c, y_star - delta).unwrap());
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((plus - sign * minus).abs() <= 1e-10 * plus.abs().max(1e-12));
            }
        }
        checked += 1;
    }
}

#[test]
fn harmonic_oracle_eigenvalues() {
    let grid = Grid::default();
    let op = discretize(&HARMONIC, &grid);
    let vals = symmetric_spectrum(&op, 4).unwrap();
    for (v, e) in vals.iter().zip([-1.0, -3.0, -5.0, -7.0]) {
        assert!((v - e).abs() <= 2e-3, "{vals:?}");
    }
}

#[test]
fn free_particle_box() {
    let grid = Grid::new(0.0, 1.0, 200).unwrap();
    let op = discretize(&HamiltonianCoeffs::new(0.0, 0.0, 1.0, 0.0, 0.0), &grid);
    let top = symmetric_spectrum(&op, 1).unwrap()[0];
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((top + pi2).abs() <= 1e-2, "{top}");
}

#[test]
fn oracle_matches_closed_form_symmetric_family() {
    let grid = Grid::new(-12.0, 12.0, 2401).unwrap();
    for &c2 in &[0.5, 1.0, 2.0] {
        for &d2 in &[0.5, 1.0, 2.0] {
            for &d1 in &[0.0, 1.0] {
                let c = HamiltonianCoeffs::new(0.0, d1, c2, d2, 0.0);
                let numeric = symmetric_spectrum(&discretize(&c, &grid), 4).unwrap();
                let analytic = [
                    eigenvalue(&c, Parity::Even, 0).unwrap().re,
                    eigenvalue(&c, Parity::Odd, 0).unwrap().re,
                    eigenvalue(&c, Parity::Even, 1).unwrap().re,
                    eigenvalue(&c, Parity::Odd, 1).unwrap().re,
                ];
                for (n, a) in numeric.iter().zip(&analytic) {
                    assert!((n - a).abs() <= 5e-3, "c2={c2} d2={d2} d1={d1}: {numeric:?} vs {analytic:?}");
                }
            }
        }
    }
}

#[test]
fn second_order_convergence_of_lowest_eigenvalue() {
    let errs: Vec<f64> = [501, 1001, 2001]
        .iter()
        .map(|&n| {
            let grid = Grid::new(-10.0, 10.0, n).unwrap();
            let top = symmetric_spectrum(&discretize(&HARMONIC, &grid), 1).unwrap()[0];
            (top + 1.0).abs()
        })
        .collect();
    for w in errs.windows(2) {
        let factor = w[0] / w[1];
        assert!((3.5..=4.5).contains(&factor), "errors {errs:?}");
    }
}

#[test]
fn domain_enlargement_is_stable() {
    let small = Grid::new(-10.0, 10.0, 2001).unwrap();
    let large = Grid::new(-14.0, 14.0, 2801).unwrap();
    assert!((small.h() - large.h()).abs() < 1e-15);
    let a = symmetric_spectrum(&discretize(&HARMONIC, &small), 1).unwrap()[0];
    let b = symmetric_spectrum(&discretize(&HARMONIC, &large), 1).unwrap()[0];
    assert!((a - b).abs() < 1e-8, "{a} vs {b}");
}

#[test]
fn inverse_iteration_reproduces_symmetric_solver() {
    let grid = Grid::default();
    let op = discretize(&HARMONIC, &grid);
    let reference = symmetric_spectrum(&op, 4).unwrap();
    let tol = 1e-9;

    let (l, _) = inverse_iteration(&op, Complex64::new(-0.9, 0.0), tol, 200).unwrap();
    assert!((l.re - reference[0]).abs() <= 10.0 * tol);
    assert!((l.re + 1.0).abs() <= 2e-3);

    for (shift, idx) in [(-3.1, 1), (-4.8, 2), (-7.2, 3)] {
        let (l, _) = inverse_iteration(&op, Complex64::new(shift, 0.0), tol, 200).unwrap();
        assert!((l.re - reference[idx]).abs() <= 10.0 * tol, "shift {shift}: {l}");
        assert!(l.im.abs() <= 10.0 * tol);
    }

    // Midway between two levels: lands on one of the neighbours.
    let (l, _) = inverse_iteration(&op, Complex64::new(-2.0, 0.0), tol, 500).unwrap();
    assert!((l.re - reference[0]).abs() <= 10.0 * tol || (l.re - reference[1]).abs() <= 10.0 * tol);
}

#[test]
fn nonsymmetric_operator_matches_closed_form() {
    let grid = Grid::new(-12.0, 12.0, 2401).unwrap();
    let c = HamiltonianCoeffs::new(0.4, -0.3, 0.8, 1.1, 0.5);
    let op = discretize(&c, &grid);
    assert!(!op.symmetric);
    for parity in [Parity::Even, Parity::Odd] {
        for m in 0..3 {
            let analytic = eigenvalue(&c, parity, m).unwrap();
            let (numeric, v) = inverse_iteration(&op, analytic + 1e-3, 1e-9, 200).unwrap();
            assert!((numeric - analytic).norm() <= 5e-3, "{parity:?} {m}: {numeric} vs {analytic}");
            let r = residual_norm(&c, numeric, &with_boundary(&v), &grid).unwrap();
            assert!(r <= 1e-9);
        }
    }
}

/// Residual of the analytic eigenfunction under the second-order stencil.
fn analytic_residual(c: &HamiltonianCoeffs, parity: Parity, m: usize, grid: &Grid, variant: ExponentVariant) -> f64 {
    let pair = EigenPair::new(*c, parity, m, variant).unwrap();
    let psi = pair.sample(grid).unwrap();
    residual_norm(c, pair.lambda, &psi, grid).unwrap()
}

#[test]
fn corrected_eigenfunctions_residual_is_second_order() {
    // The corrected exponents solve the ODE exactly, so what remains is the
    // O(h^2) truncation error of the stencil.
    for c in [HARMONIC, HamiltonianCoeffs::new(0.4, -0.3, 0.8, 1.1, 0.5)] {
        for parity in [Parity::Even, Parity::Odd] {
            for m in 0..=2 {
                let coarse = analytic_residual(&c, parity, m, &Grid::new(-12.0, 12.0, 1201).unwrap(), ExponentVariant::OracleCorrected);
                let fine = analytic_residual(&c, parity, m, &Grid::new(-12.0, 12.0, 2401).unwrap(), ExponentVariant::OracleCorrected);
                let factor = coarse / fine;
                assert!((3.8..=4.2).contains(&factor), "{c:?} {parity:?} {m}: {coarse} / {fine}");
            }
        }
    }
}

#[test]
fn corrected_ground_state_reaches_tight_residual_on_fine_grid() {
    let grid = Grid::new(-10.0, 10.0, 20001).unwrap();
    let r = analytic_residual(&HARMONIC, Parity::Even, 0, &grid, ExponentVariant::OracleCorrected);
    assert!(r <= 1e-6, "{r}");
}

/// Exit criterion as stated: corrected eigenfunctions on the default grid
/// at residual <= 1e-6 for m <= 4 in the symmetric harmonic-type case.
#[test]
fn corrected_eigen_residual_on_default_grid() {
    let grid = Grid::default();
    let mut worst: f64 = 0.0;
    for c in [HARMONIC, HamiltonianCoeffs::new(0.0, 0.0, 0.5, 2.0, 0.0)] {
        for parity in [Parity::Even, Parity::Odd] {
            for m in 0..=4 {
                worst = worst.max(analytic_residual(&c, parity, m, &grid, ExponentVariant::OracleCorrected));
            }
        }
    }
    assert!(worst <= 1e-6, "worst residual {worst:e} exceeds 1e-6");
}

#[test]
fn printed_exponents_fail_the_ode() {
    let r = analytic_residual(&HARMONIC, Parity::Even, 0, &Grid::default(), ExponentVariant::PaperPrinted);
    assert!(r > 0.1, "{r}");
}

fn random_hamiltonian_params(rng: &mut ChaCha8Rng) -> PlanarParams {
    let tau1 = rng.gen_range(0.2..3.0);
    let tau2 = rng.gen_range(0.2..3.0);
    let w11 = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(-2.0..3.0) };
    let w22 = 1.0 - tau2 * (w11 - 1.0) / tau1;
    PlanarParams {
        tau1,
        tau2,
        w11,
        w12: rng.gen_range(-3.0..3.0),
        w21: rng.gen_range(-3.0..3.0),
        w22,
        theta1: rng.gen_range(-2.0..2.0),
        theta2: rng.gen_range(-2.0..2.0),
        i1: rng.gen_range(-2.0..2.0),
        i2: rng.gen_range(-2.0..2.0),
    }
}

#[test]
fn admissibility_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let p = random_hamiltonian_params(&mut rng);
        assert!(check_hamiltonicity(&p, DEFAULT_HAMILTONICITY_TOL).verdict.is_hamiltonian());
        let via_xi = admissibility(&p, DEFAULT_HAMILTONICITY_TOL, DEFAULT_BOUNDARY_EPS).unwrap();
        let raw = admissibility_raw(&p, DEFAULT_HAMILTONICITY_TOL, DEFAULT_BOUNDARY_EPS).unwrap();
        assert_eq!(via_xi.verdict, raw.verdict, "{p:?}");
        assert_eq!(via_xi.re_xi1 > 0.0, raw.re_xi1 > 0.0);
        assert_eq!(via_xi.re_xi2 > 0.0, raw.re_xi2 > 0.0);
    }
}
