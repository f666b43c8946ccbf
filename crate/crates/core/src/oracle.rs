//! Finite-difference oracle for the eigenvalue ODE
//!
//! ```text
//! C2 psi'' + (C1 - E2 y) psi' + (D1 y - D2 y^2 - E2) psi = lambda psi
//! ```
//!
//! discretized with second-order central differences on a uniform grid and
//! homogeneous Dirichlet ends standing in for decay at infinity. The
//! operator is tridiagonal; it is symmetric exactly when `C1 = E2 = 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cmath;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianCoeffs;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    y_min: f64,
    y_max: f64,
    n_points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { y_min: -10.0, y_max: 10.0, n_points: 2001 }
    }
}

impl Grid {
    pub fn new(y_min: f64, y_max: f64, n_points: usize) -> Result<Self> {
        if !(y_min < y_max) || !y_min.is_finite() || !y_max.is_finite() {
            return Err(Error::DegenerateRange { lo: y_min, hi: y_max });
        }
        if n_points < 3 {
            return Err(Error::InvalidParams("grid needs at least 3 points"));
        }
        Ok(Self { y_min, y_max, n_points })
    }

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn h(&self) -> f64 {
        (self.y_max - self.y_min) / (self.n_points - 1) as f64
    }

    /// Node `k`; the last node is `y_max` exactly.
    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.n_points {
            self.y_max
        } else {
            self.y_min + k as f64 * self.h()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.point(k)).collect()
    }

    pub fn interior_len(&self) -> usize {
        self.n_points - 2
    }
}

/// `(sub, diag, sup)` weights of the stencil at grid node `k`.
fn stencil(c: &HamiltonianCoeffs, grid: &Grid, k: usize) -> (f64, f64, f64) {
    let h = grid.h();
    let y = grid.point(k);
    let second = c.c2 / (h * h);
    let drift = (c.c1 - c.e2 * y) / (2.0 * h);
    let potential = c.d1 * y - c.d2 * y * y - c.e2;
    (second - drift, -2.0 * second + potential, second + drift)
}

/// Tridiagonal matrix over the interior nodes.
///
/// Row `r` belongs to grid node `r + 1`. `sub[0]` and `sup[dim - 1]` couple
/// to the Dirichlet boundary and are not part of the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    pub grid: Grid,
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub symmetric: bool,
}

impl DiscretizedOperator {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Matrix entry `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        if row == col {
            self.diag[row]
        } else if col + 1 == row {
            self.sub[row]
        } else if row + 1 == col {
            self.sup[row]
        } else {
            0.0
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n).map(|r| (0..n).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                let mut acc = v[r] * self.diag[r];
                if r > 0 {
                    acc += v[r - 1] * self.sub[r];
                }
                if r + 1 < n {
                    acc += v[r + 1] * self.sup[r];
                }
                acc
            })
            .collect()
    }
}

pub fn discretize(c: &HamiltonianCoeffs, grid: &Grid) -> DiscretizedOperator {
    let dim = grid.interior_len();
    let mut sub = Vec::with_capacity(dim);
    let mut diag = Vec::with_capacity(dim);
    let mut sup = Vec::with_capacity(dim);
    for k in 1..=dim {
        let (l, d, u) = stencil(c, grid, k);
        sub.push(l);
        diag.push(d);
        sup.push(u);
    }
    DiscretizedOperator { grid: *grid, sub, diag, sup, symmetric: c.c1 == 0.0 && c.e2 == 0.0 }
}

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
fn count_below(diag: &[f64], off_sq: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - off_sq[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` algebraically largest eigenvalues, in descending order.
///
/// Each eigenvalue is isolated by bisection on Sturm counts until the
/// bracket stops shrinking in floating point.
pub fn symmetric_spectrum(op: &DiscretizedOperator, k: usize) -> Result<Vec<f64>> {
    if !op.symmetric {
        return Err(Error::NotSymmetric);
    }
    let n = op.dim();
    if k == 0 || k > n {
        return Err(Error::TooManyEigenvalues { requested: k, dim: n });
    }
    let off_sq: Vec<f64> = op.sup[..n - 1].iter().map(|e| e * e).collect();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in 0..n {
        let radius = if r > 0 { op.sub[r].abs() } else { 0.0 } + if r + 1 < n { op.sup[r].abs() } else { 0.0 };
        lo = lo.min(op.diag[r] - radius);
        hi = hi.max(op.diag[r] + radius);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * scale);
    lo -= f64::EPSILON * scale;
    hi += f64::EPSILON * scale;

    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // Ascending index of the j-th largest eigenvalue.
        let idx = n - 1 - j;
        let (mut a, mut b) = (lo, hi);
        // Previous (larger) eigenvalue bounds this one from above.
        if let Some(&prev) = out.last() {
            b = prev + f64::EPSILON * scale;
        }
        for _ in 0..256 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count_below(&op.diag, &off_sq, mid, pivmin) <= idx {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// LU factorization with partial pivoting of a complex tridiagonal matrix.
struct TridiagLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(
        mut dl: Vec<Complex64>,
        mut d: Vec<Complex64>,
        mut du: Vec<Complex64>,
    ) -> Result<Self> {
        let n = d.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut du2 = vec![zero; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if cmath::abs(d[i]) >= cmath::abs(dl[i]) {
                if d[i] == zero {
                    return Err(Error::SingularShift);
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == zero {
            return Err(Error::SingularShift);
        }
        Ok(Self { dl, d, du, du2, swapped })
    }

    fn solve(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            let t = b[i];
            b[i + 1] -= self.dl[i] * t;
        }
        for i in (0..n).rev() {
            let mut v = b[i];
            if i + 1 < n {
                v -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                v -= self.du2[i] * b[i + 2];
            }
            b[i] = v / self.d[i];
        }
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Scales to unit length with the largest component real and positive.
fn normalize_phase(v: &mut [Complex64]) {
    let nrm = norm2(v);
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| cmath::abs(*a).total_cmp(&cmath::abs(*b)))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = if cmath::abs(pivot) > 0.0 { pivot.conj() / cmath::abs(pivot) } else { Complex64::new(1.0, 0.0) };
    for z in v.iter_mut() {
        *z = *z * phase / nrm;
    }
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Pseudo-random start vector, fixed by `seed`.
fn start_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed;
    (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Complex64::new((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5, 0.0)
        })
        .collect()
}

/// Modified Gram-Schmidt. Returns `false` if a column collapsed.
fn orthonormalize(cols: &mut [Vec<Complex64>]) -> bool {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        for q in done.iter() {
            let r = dot(q, col);
            for (x, qi) in col.iter_mut().zip(q) {
                *x -= r * qi;
            }
        }
        let nrm = norm2(col);
        if !(nrm > 0.0) || !nrm.is_finite() {
            return false;
        }
        for x in col.iter_mut() {
            *x /= nrm;
        }
    }
    true
}

/// Eigenpairs of a 1x1 or 2x2 complex matrix, given row-major.
fn small_eigenpairs(b: &[[Complex64; 2]; 2], p: usize) -> Vec<(Complex64, [Complex64; 2])> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if p == 1 {
        return alloc::vec![(b[0][0], [one, zero])];
    }
    let half_trace = (b[0][0] + b[1][1]) * 0.5;
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let disc = cmath::sqrt(half_trace * half_trace - det);
    [half_trace + disc, half_trace - disc]
        .into_iter()
        .map(|mu| {
            let u = [b[0][1], mu - b[0][0]];
            let w = [mu - b[1][1], b[1][0]];
            let y = if cmath::abs(u[0]) + cmath::abs(u[1]) >= cmath::abs(w[0]) + cmath::abs(w[1]) { u } else { w };
            let y = if cmath::abs(y[0]) + cmath::abs(y[1]) == 0.0 { [one, zero] } else { y };
            (mu, y)
        })
        .collect()
}

/// Shifted inverse iteration for the eigenpair nearest `shift`.
///
/// Two vectors are iterated together and the answer is the Rayleigh-Ritz
/// pair on their span closest to `shift`, so a shift sitting almost midway
/// between two eigenvalues still converges. Iteration stops once
/// `|A v - lambda v| <= tol` for the unit vector `v`. A shift that makes the
/// factorization exactly singular is nudged and retried a few times. The
/// returned eigenvector lives on the interior nodes.
pub fn inverse_iteration(
    op: &DiscretizedOperator,
    shift: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<(Complex64, Vec<Complex64>)> {
    let n = op.dim();
    let lu = {
        let mut sigma = shift;
        let mut attempt = 0;
        loop {
            let dl = op.sub[1..].iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let d = op.diag.iter().map(|&x| Complex64::new(x, 0.0) - sigma).collect();
            let du = op.sup[..n - 1].iter().map(|&x| Complex64::new(x, 0.0)).collect();
            match TridiagLu::factor(dl, d, du) {
                Ok(lu) => break lu,
                Err(Error::SingularShift) if attempt < 3 => {
                    attempt += 1;
                    let bump = 1e-10 * cmath::abs(shift).max(1.0) * (1u32 << attempt) as f64;
                    sigma = shift + Complex64::new(bump, 0.0);
                }
                Err(e) => return Err(e),
            }
        }
    };

    let p = n.min(2);
    let mut basis: Vec<Vec<Complex64>> = (0..p)
        .map(|j| start_vector(n, 0x9E37_79B9_7F4A_7C15 ^ (j as u64 + 1)))
        .collect();
    if !orthonormalize(&mut basis) {
        return Err(Error::SingularShift);
    }

    for _ in 0..max_iter {
        for col in basis.iter_mut() {
            lu.solve(col);
        }
        if !orthonormalize(&mut basis) {
            return Err(Error::SingularShift);
        }
        let images: Vec<Vec<Complex64>> = basis.iter().map(|q| op.apply(q)).collect();
        let mut projected = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, q) in basis.iter().enumerate() {
            for (c, aq) in images.iter().enumerate() {
                projected[r][c] = dot(q, aq);
            }
        }
        let (lambda, y) = small_eigenpairs(&projected, p)
            .into_iter()
            .min_by(|a, b| cmath::abs(a.0 - shift).total_cmp(&cmath::abs(b.0 - shift)))
            .expect("at least one Ritz pair");

        let mut v = alloc::vec![Complex64::new(0.0, 0.0); n];
        let mut av = alloc::vec![Complex64::new(0.0, 0.0); n];
        for j in 0..p {
            for i in 0..n {
                v[i] += y[j] * basis[j][i];
                av[i] += y[j] * images[j][i];
            }
        }
        let nrm = norm2(&v);
        let resid = libm::sqrt(av.iter().zip(&v).map(|(a, x)| (a - lambda * x).norm_sqr()).sum()) / nrm;
        if resid <= tol {
            normalize_phase(&mut v);
            return Ok((lambda, v));
        }
    }
    Err(Error::InverseIterationNoConvergence(max_iter))
}

/// Embeds an interior vector between Dirichlet zeros.
pub fn with_boundary(interior: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(interior.len() + 2);
    out.push(Complex64::new(0.0, 0.0));
    out.extend_from_slice(interior);
    out.push(Complex64::new(0.0, 0.0));
    out
}

/// `|L_h psi - lambda psi|_2 / |psi|_2` over interior nodes, with `L_h` the
/// same stencil as [`discretize`] applied to the samples as given
/// (boundary samples included).
pub fn residual_norm(
    c: &HamiltonianCoeffs,
    lambda: Complex64,
    psi: &[Complex64],
    grid: &Grid,
) -> Result<f64> {
    if psi.len() != grid.n_points() {
        return Err(Error::DimensionMismatch { expected: grid.n_points(), got: psi.len() });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 1..grid.n_points() - 1 {
        let (l, d, u) = stencil(c, grid, k);
        let applied = psi[k - 1] * l + psi[k] * d + psi[k + 1] * u;
        num += (applied - lambda * psi[k]).norm_sqr();
        den += psi[k].norm_sqr();
    }
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok(libm::sqrt(num / den))
}
