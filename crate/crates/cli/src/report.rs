//! Serializable report shapes.

use ctrnn_spectra_core::hamiltonian::{HamiltonianCoeffs, Verdict};
use ctrnn_spectra_core::spectrum::{AdmissibilityClass, AdmissibilityVerdict, Parity};
use ctrnn_spectra_core::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoeffsJson {
    pub c1: f64,
    pub d1: f64,
    pub c2: f64,
    pub d2: f64,
    pub e2: f64,
}

impl From<&HamiltonianCoeffs> for CoeffsJson {
    fn from(c: &HamiltonianCoeffs) -> Self {
        Self { c1: c.c1, d1: c.d1, c2: c.c2, d2: c.d2, e2: c.e2 }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub verdict: &'static str,
    pub mismatch: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoeffsJson>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AdmissibilityJson {
    pub verdict: &'static str,
    pub re_xi1: f64,
    pub re_xi2: f64,
}

impl From<AdmissibilityVerdict> for AdmissibilityJson {
    fn from(v: AdmissibilityVerdict) -> Self {
        Self { verdict: class_label(v.verdict), re_xi1: v.re_xi1, re_xi2: v.re_xi2 }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenvalueJson {
    pub parity: &'static str,
    pub m: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub coeffs: CoeffsJson,
    pub variant: &'static str,
    pub eigenvalues: Vec<EigenvalueJson>,
    /// Classification from the printed exponents.
    pub admissibility: AdmissibilityJson,
    /// Same classification from the corrected exponents; `null` where they
    /// are undefined.
    pub admissibility_corrected: Option<AdmissibilityJson>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridJson {
    pub y_min: f64,
    pub y_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCase {
    pub parity: &'static str,
    pub m: usize,
    pub lambda_analytic: ComplexJson,
    pub lambda_numeric: ComplexJson,
    pub residual_printed_xi: Option<f64>,
    pub residual_corrected_xi: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub coeffs: CoeffsJson,
    pub grid: GridJson,
    pub cases: Vec<VerifyCase>,
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Case1 => "Case1",
        Verdict::Case2 => "Case2",
        Verdict::Case3 => "Case3",
        Verdict::NotHamiltonian => "NotHamiltonian",
    }
}

pub fn class_label(c: AdmissibilityClass) -> &'static str {
    match c {
        AdmissibilityClass::AdmissibleStrict => "admissible-strict",
        AdmissibilityClass::AdmissibleBoundary => "admissible-boundary",
        AdmissibilityClass::Inadmissible => "inadmissible",
    }
}

pub fn parity_label(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}
