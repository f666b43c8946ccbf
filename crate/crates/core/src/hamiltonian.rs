//! Hamiltonian structure of the planar network in the active regime.
//!
//! With both ReLUs active the vector field is affine. It is a Hamiltonian
//! field exactly when its divergence vanishes,
//! `(w11 - 1) / tau1 + (w22 - 1) / tau2 = 0`, and the Hamiltonian is then
//!
//! ```text
//! H(y1, y2) = -C1 y1 - C2 y1^2 + D1 y2 + D2 y2^2 + E2 y1 y2
//! ```
//!
//! with `dy1/dt = dH/dy2` and `dy2/dt = -dH/dy1`. The additive constant is
//! fixed to zero.

use alloc::vec::Vec;

use crate::dynamics::NetworkParams;
use crate::error::{Error, Result};

pub const DEFAULT_HAMILTONICITY_TOL: f64 = 1e-12;

/// Parameters of a two-node network, named by their planar role.
///
/// `w12` feeds node 2 from node 1 and `w21` feeds node 1 from node 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarParams {
    pub tau1: f64,
    pub tau2: f64,
    pub w11: f64,
    pub w12: f64,
    pub w21: f64,
    pub w22: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub i1: f64,
    pub i2: f64,
}

impl PlanarParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau1 > 0.0 && self.tau2 > 0.0) {
            return Err(Error::InvalidParams("time constants must be positive"));
        }
        Ok(())
    }

    pub fn from_network(net: &NetworkParams) -> Result<Self> {
        if net.n() != 2 {
            return Err(Error::NotPlanar(net.n()));
        }
        Ok(Self {
            tau1: net.tau()[0],
            tau2: net.tau()[1],
            w11: net.weight(0, 0),
            w12: net.weight(0, 1),
            w21: net.weight(1, 0),
            w22: net.weight(1, 1),
            theta1: net.theta()[0],
            theta2: net.theta()[1],
            i1: net.inputs()[0],
            i2: net.inputs()[1],
        })
    }

    pub fn to_network(&self) -> Result<NetworkParams> {
        NetworkParams::new(
            alloc::vec![self.tau1, self.tau2],
            alloc::vec![alloc::vec![self.w11, self.w12], alloc::vec![self.w21, self.w22]],
            alloc::vec![self.theta1, self.theta2],
            alloc::vec![self.i1, self.i2],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianCoeffs {
    pub c1: f64,
    pub d1: f64,
    pub c2: f64,
    pub d2: f64,
    pub e2: f64,
}

impl HamiltonianCoeffs {
    pub const fn new(c1: f64, d1: f64, c2: f64, d2: f64, e2: f64) -> Self {
        Self { c1, d1, c2, d2, e2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `w11 = w22 = 1`.
    Case1,
    /// Divergence-free with `w22 < 1`, `w11 > 1`.
    Case2,
    /// Divergence-free with `w22 > 1`, `w11 < 1`.
    Case3,
    NotHamiltonian,
}

impl Verdict {
    pub fn is_hamiltonian(self) -> bool {
        self != Verdict::NotHamiltonian
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonicityResult {
    pub verdict: Verdict,
    /// `(w11 - 1) / tau1 - (1 - w22) / tau2`.
    pub mismatch: f64,
}

pub fn check_hamiltonicity(p: &PlanarParams, tol: f64) -> HamiltonicityResult {
    let mismatch = (p.w11 - 1.0) / p.tau1 - (1.0 - p.w22) / p.tau2;
    let verdict = if !(mismatch.abs() <= tol) {
        Verdict::NotHamiltonian
    } else if (p.w11 - 1.0).abs() <= tol && (p.w22 - 1.0).abs() <= tol {
        Verdict::Case1
    } else if p.w22 < 1.0 && p.w11 > 1.0 {
        Verdict::Case2
    } else if p.w22 > 1.0 && p.w11 < 1.0 {
        Verdict::Case3
    } else {
        // Only reachable through tolerance corners, e.g. w11 = 1 exactly
        // while w22 sits just outside the tolerance band.
        Verdict::NotHamiltonian
    };
    HamiltonicityResult { verdict, mismatch }
}

/// The `tau1` that makes `(w11, w22, tau2)` divergence-free (Cases 2 and 3).
pub fn required_tau1(tau2: f64, w11: f64, w22: f64) -> Result<f64> {
    if w22 == 1.0 {
        return Err(Error::DivisionByZero("w22 = 1"));
    }
    let tau1 = (tau2 - tau2 * w11) / (-1.0 + w22);
    if !(tau1 > 0.0) {
        return Err(Error::NonPositiveTau(tau1));
    }
    Ok(tau1)
}

pub fn coefficients(p: &PlanarParams, tol: f64) -> Result<HamiltonianCoeffs> {
    let check = check_hamiltonicity(p, tol);
    if !check.verdict.is_hamiltonian() {
        return Err(Error::NotHamiltonian { mismatch: check.mismatch });
    }
    let from_w11 = (p.w11 - 1.0) / p.tau1;
    let from_w22 = -(p.w22 - 1.0) / p.tau2;
    let scale = from_w11.abs().max(from_w22.abs()).max(1.0);
    if (from_w11 - from_w22).abs() > tol * scale {
        return Err(Error::E2Disagreement { from_w11, from_w22 });
    }
    Ok(HamiltonianCoeffs {
        c1: (p.w12 * p.theta1 + p.w22 * p.theta2 + p.i2) / p.tau2,
        d1: (p.w21 * p.theta2 + p.w11 * p.theta1 + p.i1) / p.tau1,
        c2: p.w12 / (2.0 * p.tau2),
        d2: p.w21 / (2.0 * p.tau1),
        e2: from_w11,
    })
}

#[inline]
pub fn evaluate_h(c: &HamiltonianCoeffs, y1: f64, y2: f64) -> f64 {
    -c.c1 * y1 - c.c2 * y1 * y1 + c.d1 * y2 + c.d2 * y2 * y2 + c.e2 * y1 * y2
}

/// `H` sampled on a tensor grid, row `r` at `y1[r]`, column `s` at `y2[s]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub y1: Vec<f64>,
    pub y2: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl ContourGrid {
    /// Nodes in row-major order as `(y1, y2, H)`.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.y1.iter().zip(&self.values).flat_map(move |(&a, row)| {
            self.y2.iter().zip(row).map(move |(&b, &h)| (a, b, h))
        })
    }
}

/// `resolution` evenly spaced points on `[lo, hi]`, endpoints included.
pub(crate) fn linspace(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    let span = (resolution - 1) as f64;
    (0..resolution)
        .map(|k| {
            if k + 1 == resolution {
                hi
            } else {
                lo + (hi - lo) * (k as f64) / span
            }
        })
        .collect()
}

pub fn contour_grid(
    c: &HamiltonianCoeffs,
    y1_range: (f64, f64),
    y2_range: (f64, f64),
    resolution: usize,
) -> Result<ContourGrid> {
    for (lo, hi) in [y1_range, y2_range] {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::DegenerateRange { lo, hi });
        }
    }
    if resolution < 2 {
        return Err(Error::InvalidParams("contour resolution must be at least 2"));
    }
    let y1 = linspace(y1_range.0, y1_range.1, resolution);
    let y2 = linspace(y2_range.0, y2_range.1, resolution);
    let values = y1
        .iter()
        .map(|&a| y2.iter().map(|&b| evaluate_h(c, a, b)).collect())
        .collect();
    Ok(ContourGrid { y1, y2, values })
}
