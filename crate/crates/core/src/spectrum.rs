//! Analytic spectrum of the quantized planar Hamiltonian.
//!
//! Everything is expressed through `S = 4 C2 D2 + E2^2` and
//! `T = 2 D2 C1^2 - 2 C1 D1 E2 - 2 C2 D1^2 + 4 C2 D2 E2 + E2^3`. Square roots
//! and powers of `S` use the principal branch, so negative `S` gives complex
//! eigenvalues rather than an error.
//!
//! Two sets of Gaussian exponents are provided. [`ExponentVariant::PaperPrinted`]
//! is the closed form
//!
//! ```text
//! xi1 = S - E2 sqrt(S),   xi2 = -C1 E2 - 4 C2 D1 + 2 sqrt(S)
//! ```
//!
//! which is what the admissibility conditions are stated in terms of.
//! [`ExponentVariant::OracleCorrected`] is the pair that actually makes
//! `H_n(arg(y)) exp(-y (xi1 y + xi2))` solve the eigenvalue ODE:
//!
//! ```text
//! xi1 = (sqrt(S) - E2) / (4 C2),   xi2 = (2 C1 xi1 - D1) / sqrt(S)
//! ```
//!
//! obtained by substituting the Gaussian-times-polynomial ansatz and
//! matching the `y^2` and `y` coefficients. With it the constant term
//! reproduces the closed-form eigenvalues for every `S > 0`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmath;
use crate::error::{Error, Result};
use crate::hamiltonian::{coefficients, HamiltonianCoeffs, PlanarParams};
use crate::oracle::Grid;
use crate::specfun::{hermite, kummer_m, KummerArgs, SeriesControl};

pub const DEFAULT_BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Degree of the Hermite factor for index `m`.
    pub fn hermite_degree(self, m: usize) -> usize {
        match self {
            Parity::Even => 2 * m,
            Parity::Odd => 2 * m + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentVariant {
    PaperPrinted,
    OracleCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentParams {
    pub xi1: Complex64,
    pub xi2: Complex64,
    pub variant: ExponentVariant,
}

#[inline]
fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn s_discriminant(c: &HamiltonianCoeffs) -> Complex64 {
    cx(4.0 * c.c2 * c.d2 + c.e2 * c.e2)
}

/// `S^{3/2}` as `S * sqrt(S)` on the principal branch.
fn s_three_halves(s: Complex64) -> Complex64 {
    s * cmath::sqrt(s)
}

fn t_numerator(c: &HamiltonianCoeffs) -> f64 {
    2.0 * c.d2 * c.c1 * c.c1 - 2.0 * c.c1 * c.d1 * c.e2 - 2.0 * c.c2 * c.d1 * c.d1
        + 4.0 * c.c2 * c.d2 * c.e2
        + c.e2 * c.e2 * c.e2
}

fn nonzero_s(c: &HamiltonianCoeffs) -> Result<Complex64> {
    let s = s_discriminant(c);
    if s == cx(0.0) {
        return Err(Error::DivisionByZero("4 C2 D2 + E2^2 = 0"));
    }
    Ok(s)
}

pub fn exponent_params(c: &HamiltonianCoeffs, variant: ExponentVariant) -> Result<ExponentParams> {
    let s = s_discriminant(c);
    let root = cmath::sqrt(s);
    let (xi1, xi2) = match variant {
        ExponentVariant::PaperPrinted => (
            s - c.e2 * root,
            cx(-c.c1 * c.e2 - 4.0 * c.c2 * c.d1) + 2.0 * root,
        ),
        ExponentVariant::OracleCorrected => {
            if c.c2 == 0.0 {
                return Err(Error::DivisionByZero("C2 = 0"));
            }
            if s == cx(0.0) {
                return Err(Error::DivisionByZero("4 C2 D2 + E2^2 = 0"));
            }
            let xi1 = (root - c.e2) / (4.0 * c.c2);
            let xi2 = (2.0 * c.c1 * xi1 - c.d1) / root;
            (xi1, xi2)
        }
    };
    Ok(ExponentParams { xi1, xi2, variant })
}

/// First Kummer parameter as a function of the eigenvalue.
pub fn alpha_param(c: &HamiltonianCoeffs, lambda: Complex64) -> Result<Complex64> {
    let s = nonzero_s(c)?;
    Ok(cx(0.25) + (2.0 * s * lambda + t_numerator(c)) / (4.0 * s_three_halves(s)))
}

pub fn beta_param(c: &HamiltonianCoeffs, lambda: Complex64) -> Result<Complex64> {
    Ok(alpha_param(c, lambda)? + 0.5)
}

/// Closed-form eigenvalue. Even index `m` sets `alpha = -m`, odd sets `beta = -m`.
pub fn eigenvalue(c: &HamiltonianCoeffs, parity: Parity, m: usize) -> Result<Complex64> {
    let s = nonzero_s(c)?;
    let level = match parity {
        Parity::Even => 4.0 * m as f64 + 1.0,
        Parity::Odd => 4.0 * m as f64 + 3.0,
    };
    Ok(-0.5 * (level * s_three_halves(s) + t_numerator(c)) / s)
}

/// Point about which the Hermite factor is symmetric.
pub fn eigen_center(c: &HamiltonianCoeffs) -> Result<f64> {
    let s = nonzero_s(c)?.re;
    Ok((c.c1 * c.e2 + 2.0 * c.c2 * c.d1) / s)
}

/// Real positive `S` with `C2 > 0`, where the Hermite form is defined.
fn hermite_domain(c: &HamiltonianCoeffs) -> Result<f64> {
    let s = s_discriminant(c).re;
    if !(s > 0.0) {
        return Err(Error::EigenfunctionUndefined("4 C2 D2 + E2^2 must be positive"));
    }
    if !(c.c2 > 0.0) {
        return Err(Error::EigenfunctionUndefined("C2 must be positive"));
    }
    Ok(s)
}

/// Hermite argument `(-S y + C1 E2 + 2 C2 D1) / (sqrt(2 C2) S^{3/4})`.
pub fn hermite_argument(c: &HamiltonianCoeffs, y: f64) -> Result<f64> {
    let s = hermite_domain(c)?;
    Ok((-s * y + c.c1 * c.e2 + 2.0 * c.c2 * c.d1) / (libm::sqrt(2.0 * c.c2) * libm::pow(s, 0.75)))
}

fn gaussian_factor(xi: &ExponentParams, y: f64) -> Complex64 {
    cmath::exp(-(xi.xi1 * y + xi.xi2) * y)
}

/// Unnormalized eigenfunction `H_n(arg(y)) exp(-y (xi1 y + xi2))`.
pub fn eigenfunction(
    c: &HamiltonianCoeffs,
    parity: Parity,
    m: usize,
    y: f64,
    variant: ExponentVariant,
) -> Result<Complex64> {
    let arg = hermite_argument(c, y)?;
    let xi = exponent_params(c, variant)?;
    Ok(gaussian_factor(&xi, y) * hermite(parity.hermite_degree(m), arg))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub parity: Parity,
    pub m: usize,
    pub lambda: Complex64,
    pub coeffs: HamiltonianCoeffs,
    pub variant: ExponentVariant,
}

impl EigenPair {
    pub fn new(coeffs: HamiltonianCoeffs, parity: Parity, m: usize, variant: ExponentVariant) -> Result<Self> {
        let lambda = eigenvalue(&coeffs, parity, m)?;
        Ok(Self { parity, m, lambda, coeffs, variant })
    }

    pub fn eval(&self, y: f64) -> Result<Complex64> {
        eigenfunction(&self.coeffs, self.parity, self.m, y, self.variant)
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<Complex64>> {
        grid.points().into_iter().map(|y| self.eval(y)).collect()
    }
}

/// The arbitrary constants multiplying the two Kummer solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormalSolutionParams {
    pub a1: Complex64,
    pub a2: Complex64,
}

/// General formal solution
///
/// ```text
/// [A1 M(alpha, 1/2, u) + A2 (S y - 2 D1 C2 - C1 E2) M(alpha + 1/2, 3/2, u)] exp(-y (xi1 y + xi2))
/// u = (-S y + C1 E2 + 2 C2 D1)^2 / S^{3/2}
/// ```
pub fn formal_solution(
    c: &HamiltonianCoeffs,
    lambda: Complex64,
    fs: &FormalSolutionParams,
    y: f64,
    variant: ExponentVariant,
    ctrl: SeriesControl,
) -> Result<Complex64> {
    let s = nonzero_s(c)?;
    let xi = exponent_params(c, variant)?;
    let alpha = alpha_param(c, lambda)?;
    let shifted = -s * y + c.c1 * c.e2 + 2.0 * c.c2 * c.d1;
    let u = shifted * shifted / s_three_halves(s);

    let zero = cx(0.0);
    let mut psi = zero;
    if fs.a1 != zero {
        psi += fs.a1 * kummer_m(KummerArgs { a: alpha, b: cx(0.5), z: u }, ctrl)?;
    }
    if fs.a2 != zero {
        let linear = s * y - 2.0 * c.d1 * c.c2 - c.c1 * c.e2;
        psi += fs.a2 * linear * kummer_m(KummerArgs { a: alpha + 0.5, b: cx(1.5), z: u }, ctrl)?;
    }
    Ok(psi * gaussian_factor(&xi, y))
}

/// Trapezoidal-rule L2 norm of samples on a uniform grid.
pub fn trapezoid_norm(samples: &[Complex64], h: f64) -> f64 {
    let n = samples.len();
    let mut acc: f64 = samples.iter().map(|z| z.norm_sqr()).sum();
    if n >= 2 {
        acc -= 0.5 * (samples[0].norm_sqr() + samples[n - 1].norm_sqr());
    }
    libm::sqrt(acc * h)
}

/// Samples of the eigenfunction on `grid`, scaled to unit trapezoidal L2
/// norm. The sign is fixed so that even functions are positive just right
/// of the center and odd functions rise through it.
pub fn normalize(
    c: &HamiltonianCoeffs,
    parity: Parity,
    m: usize,
    grid: &Grid,
    variant: ExponentVariant,
) -> Result<Vec<Complex64>> {
    let pair = EigenPair::new(*c, parity, m, variant)?;
    let samples = pair.sample(grid)?;

    let center = eigen_center(c)?;
    let s = s_discriminant(c).re;
    let width = libm::sqrt(2.0 * c.c2) / libm::pow(s, 0.25);
    let probe = pair.eval(center + 1e-6 * width)?;
    let sign = if probe.re < 0.0 { -1.0 } else { 1.0 };

    normalize_samples(&samples, grid.h(), sign)
}

fn normalize_samples(samples: &[Complex64], h: f64, sign: f64) -> Result<Vec<Complex64>> {
    let norm = trapezoid_norm(samples, h);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok(samples.iter().map(|z| z * (sign / norm)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdmissibilityClass {
    AdmissibleStrict,
    AdmissibleBoundary,
    Inadmissible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityVerdict {
    pub verdict: AdmissibilityClass,
    pub re_xi1: f64,
    pub re_xi2: f64,
}

/// Decay classification from the real parts of the exponents.
///
/// Values within `eps` of zero count as zero on both sides, so a strictly
/// admissible point needs `re_xi1 > eps` and a boundary point needs
/// `|re_xi1| <= eps` with `re_xi2 > eps`.
pub fn classify(re_xi1: f64, re_xi2: f64, eps: f64) -> AdmissibilityVerdict {
    let verdict = if re_xi1 > eps {
        AdmissibilityClass::AdmissibleStrict
    } else if re_xi1.abs() <= eps && re_xi2 > eps {
        AdmissibilityClass::AdmissibleBoundary
    } else {
        AdmissibilityClass::Inadmissible
    };
    AdmissibilityVerdict { verdict, re_xi1, re_xi2 }
}

pub fn admissibility_of_coeffs(
    c: &HamiltonianCoeffs,
    variant: ExponentVariant,
    eps: f64,
) -> Result<AdmissibilityVerdict> {
    let xi = exponent_params(c, variant)?;
    Ok(classify(xi.xi1.re, xi.xi2.re, eps))
}

/// Admissibility of a Hamiltonian network from the printed exponents.
pub fn admissibility(p: &PlanarParams, hamiltonicity_tol: f64, eps: f64) -> Result<AdmissibilityVerdict> {
    let c = coefficients(p, hamiltonicity_tol)?;
    admissibility_of_coeffs(&c, ExponentVariant::PaperPrinted, eps)
}

/// Real part of the principal square root of a real number.
fn re_sqrt(q: f64) -> f64 {
    if q >= 0.0 {
        libm::sqrt(q)
    } else {
        0.0
    }
}

/// The decay conditions written directly in network weights.
///
/// Returns the left-hand sides whose signs decide `Re(xi1) > 0` and
/// `Re(xi2) > 0`, without going through the Hamiltonian coefficients.
pub fn restriction_sides(p: &PlanarParams) -> (f64, f64) {
    let (t1, t2) = (p.tau1, p.tau2);
    let a = p.w11 - 1.0;
    let cross = p.w12 * p.w21 / (t1 * t2);
    let first = a * a / (t1 * t1) - a * re_sqrt(a * a / (t1 * t1) + cross) / t1 + cross;
    let second = -2.0 * p.w12 * (p.i1 + p.theta1 * p.w11 + p.theta2 * p.w21) / (t1 * t2)
        - a * (p.i2 + p.theta1 * p.w12 + p.theta2 * p.w22) / (t1 * t2)
        + 2.0 * re_sqrt((t1 * p.w12 * p.w21 / t2 + a * a) / (t1 * t1));
    (first, second)
}

/// Same classification as [`admissibility`] computed from the raw-weight
/// conditions. Still requires a Hamiltonian network.
pub fn admissibility_raw(p: &PlanarParams, hamiltonicity_tol: f64, eps: f64) -> Result<AdmissibilityVerdict> {
    coefficients(p, hamiltonicity_tol)?;
    let (first, second) = restriction_sides(p);
    Ok(classify(first, second, eps))
}
