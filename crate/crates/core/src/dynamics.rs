//! Classical CTRNN dynamics with ReLU activation.
//!
//! Node `i` obeys
//! `tau_i * dy_i/dt = -y_i + sum_j w[j][i] * relu(y_j + theta_j) + I_i`
//! with constant inputs. The weight matrix is stored row-major with row `j`
//! being the source node, so `weight(j, i)` feeds node `i` from node `j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[inline]
pub fn relu(z: f64) -> f64 {
    if z > 0.0 {
        z
    } else {
        0.0
    }
}

/// Full definition of an n-node network.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams {
    n: usize,
    tau: Vec<f64>,
    weights: Vec<f64>,
    theta: Vec<f64>,
    inputs: Vec<f64>,
}

impl NetworkParams {
    /// `weights[j][i]` is the connection from node `j` into node `i`.
    pub fn new(
        tau: Vec<f64>,
        weights: Vec<Vec<f64>>,
        theta: Vec<f64>,
        inputs: Vec<f64>,
    ) -> Result<Self> {
        let n = tau.len();
        if n == 0 {
            return Err(Error::InvalidParams("network needs at least one node"));
        }
        if tau.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
            return Err(Error::InvalidParams("time constants must be positive and finite"));
        }
        for len in [weights.len(), theta.len(), inputs.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &weights {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            flat.extend_from_slice(row);
        }
        let all_finite = flat
            .iter()
            .chain(theta.iter())
            .chain(inputs.iter())
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("weights, biases and inputs must be finite"));
        }
        Ok(Self { n, tau, weights: flat, theta, inputs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn inputs(&self) -> &[f64] {
        &self.inputs
    }

    /// Weight of the connection from node `from` into node `to`.
    #[inline]
    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.weights[from * self.n + to]
    }

    /// Weight matrix as rows, row `j` holding the outgoing weights of node `j`.
    pub fn weight_rows(&self) -> Vec<Vec<f64>> {
        self.weights.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub y: Vec<f64>,
    pub t: f64,
}

impl State {
    pub fn new(y: Vec<f64>, t: f64) -> Self {
        Self { y, t }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub step: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> Option<&State> {
        self.states.last()
    }
}

/// Activation pattern of a two-node network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    ActiveActive,
    InactiveInactive,
    Mixed,
}

fn vector_field_into(params: &NetworkParams, y: &[f64], out: &mut [f64]) {
    let n = params.n;
    for (i, o) in out.iter_mut().enumerate() {
        let drive: f64 = (0..n)
            .map(|j| params.weight(j, i) * relu(y[j] + params.theta[j]))
            .sum();
        *o = (-y[i] + drive + params.inputs[i]) / params.tau[i];
    }
}

pub fn vector_field(params: &NetworkParams, state: &State) -> Result<Vec<f64>> {
    if state.y.len() != params.n {
        return Err(Error::DimensionMismatch { expected: params.n, got: state.y.len() });
    }
    let mut out = vec![0.0; params.n];
    vector_field_into(params, &state.y, &mut out);
    Ok(out)
}

pub fn regime(params: &NetworkParams, state: &State) -> Result<Regime> {
    if params.n != 2 {
        return Err(Error::NotPlanar(params.n));
    }
    if state.y.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: state.y.len() });
    }
    let active = |i: usize| state.y[i] + params.theta[i] >= 0.0;
    Ok(match (active(0), active(1)) {
        (true, true) => Regime::ActiveActive,
        (false, false) => Regime::InactiveInactive,
        _ => Regime::Mixed,
    })
}

/// Classical fixed-step RK4 from `y0.t` to `y0.t + t_end`.
///
/// The number of steps is `round(t_end / dt)`, so the final time lies within
/// half a step of the requested end. Sample times are `t0 + k * dt`, not an
/// accumulated sum. No event detection is done at the ReLU switching lines.
pub fn integrate_rk4(
    params: &NetworkParams,
    y0: &State,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    let n = params.n;
    if y0.y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: y0.y.len() });
    }
    if !(dt > 0.0) || !dt.is_finite() || !t_end.is_finite() {
        return Err(Error::InvalidParams("dt must be positive and t_end finite"));
    }
    if dt > t_end {
        return Err(Error::InvalidParams("dt must not exceed t_end"));
    }
    if y0.y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergence { time: y0.t });
    }

    let steps = libm::round(t_end / dt).max(1.0) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(y0.t);
    states.push(y0.clone());

    let mut y = y0.y.clone();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    for step in 1..=steps {
        vector_field_into(params, &y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        }
        vector_field_into(params, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        }
        vector_field_into(params, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + dt * k3[i];
        }
        vector_field_into(params, &tmp, &mut k4);
        for i in 0..n {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        let t = y0.t + step as f64 * dt;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { time: t });
        }
        times.push(t);
        states.push(State::new(y.clone(), t));
    }

    Ok(Trajectory { times, states, step: dt })
}

/// Exact solution while both nodes stay inactive:
/// `y_i(t) = I_i + K_i * exp(-(t - t0) / tau_i)` with `K_i = y0_i - I_i`.
///
/// Requires `y0` inactive and `I_i + theta_i <= 0`, which keeps the whole
/// trajectory (and its limit point) inside the inactive quadrant.
pub fn decoupled_closed_form(params: &NetworkParams, y0: &State, t: f64) -> Result<State> {
    if regime(params, y0)? != Regime::InactiveInactive {
        return Err(Error::Precondition("initial state is not in the inactive regime"));
    }
    if (0..2).any(|i| params.inputs[i] + params.theta[i] > 0.0) {
        return Err(Error::Precondition("I_i + theta_i <= 0 is required to stay inactive"));
    }
    let y = (0..2)
        .map(|i| {
            let k = y0.y[i] - params.inputs[i];
            params.inputs[i] + k * libm::exp(-(t - y0.t) / params.tau[i])
        })
        .collect();
    Ok(State::new(y, t))
}
