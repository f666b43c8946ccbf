//! Pochhammer symbols, Kummer's confluent hypergeometric function and
//! physicists' Hermite polynomials.
//!
//! `kummer_m` sums the defining series directly, which is accurate for the
//! moderate arguments met in this crate (|z| up to a few tens). There is no
//! asymptotic expansion; large |z| with cancelling terms loses precision.

use num_complex::Complex64;

use crate::cmath;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { max_terms: 500, rel_tol: 1e-15 }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParams("series control needs max_terms >= 1 and rel_tol > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    pub a: Complex64,
    pub b: Complex64,
    pub z: Complex64,
}

impl KummerArgs {
    pub fn new(a: impl Into<Complex64>, b: impl Into<Complex64>, z: impl Into<Complex64>) -> Self {
        Self { a: a.into(), b: b.into(), z: z.into() }
    }
}

/// `Some(m)` when `x == -m` for a non-negative integer `m`.
fn non_positive_integer(x: Complex64) -> Option<u64> {
    if x.im == 0.0 && x.re <= 0.0 && x.re == libm::round(x.re) && x.re > -9.0e15 {
        Some((-x.re) as u64)
    } else {
        None
    }
}

/// Rising factorial `(a)_n = a (a + 1) ... (a + n - 1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// Successive series terms `t_n = (a)_n z^n / (n! (b)_n)` of Kummer's function.
///
/// Terms follow `t_{n+1} = t_n (a + n) z / ((b + n)(n + 1))`. Once `a + n`
/// is exactly zero every later term is exactly zero as well.
#[derive(Debug, Clone)]
pub struct KummerTerms {
    args: KummerArgs,
    n: usize,
    term: Complex64,
}

impl KummerTerms {
    pub fn new(args: KummerArgs) -> Self {
        Self { args, n: 0, term: Complex64::new(1.0, 0.0) }
    }
}

impl Iterator for KummerTerms {
    type Item = Complex64;

    fn next(&mut self) -> Option<Complex64> {
        let current = self.term;
        let nf = self.n as f64;
        let an = self.args.a + nf;
        self.term = if current == Complex64::new(0.0, 0.0) || an == Complex64::new(0.0, 0.0) {
            Complex64::new(0.0, 0.0)
        } else {
            current * an * self.args.z / ((self.args.b + nf) * (nf + 1.0))
        };
        self.n += 1;
        Some(current)
    }
}

/// Kummer's function `M(a, b, z) = sum_n (a)_n z^n / (n! (b)_n)`.
///
/// When `a` is a non-positive integer `-m` the sum stops exactly as a
/// polynomial of degree `m` in `z`.
pub fn kummer_m(args: KummerArgs, ctrl: SeriesControl) -> Result<Complex64> {
    ctrl.validate()?;
    let KummerArgs { a, b, z } = args;
    let a_terminates = non_positive_integer(a);
    if let Some(kb) = non_positive_integer(b) {
        // (b)_n first vanishes at n = kb + 1; only a shorter polynomial survives.
        match a_terminates {
            Some(ka) if ka <= kb => {}
            _ => return Err(Error::KummerPole),
        }
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if let Some(m) = a_terminates {
        if m as usize >= ctrl.max_terms {
            return Err(Error::NoConvergence(ctrl.max_terms));
        }
        return Ok(KummerTerms::new(args).take(m as usize + 1).sum());
    }

    let mut sum = Complex64::new(0.0, 0.0);
    for (n, term) in KummerTerms::new(args).take(ctrl.max_terms).enumerate() {
        sum += term;
        // Once the term ratio drops below one half the tail is bounded by a
        // geometric series, so a small term means a small remainder.
        let ratio = cmath::abs((a + n as f64) * z / ((b + n as f64) * (n as f64 + 1.0)));
        if n > 0 && ratio < 0.5 && cmath::abs(term) <= ctrl.rel_tol * cmath::abs(sum) {
            return Ok(sum);
        }
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence(ctrl.max_terms))
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub const HERMITE_KUMMER_MAX_DEGREE: usize = 150;

/// Hermite polynomial through its ₁F₁ representation:
///
/// ```text
/// H_{2k}(x)   = (-1)^k (2k)!/k!      M(-k, 1/2, x^2)
/// H_{2k+1}(x) = 2x (-1)^k (2k+1)!/k! M(-k, 3/2, x^2)
/// ```
pub fn hermite_via_kummer(n: usize, x: f64, ctrl: SeriesControl) -> Result<f64> {
    if n > HERMITE_KUMMER_MAX_DEGREE {
        return Err(Error::FactorialOverflow(n));
    }
    let k = n / 2;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    // n!/k! as the product (k+1)(k+2)...n.
    let factorial_ratio: f64 = ((k + 1)..=n).map(|j| j as f64).product();
    let a = Complex64::new(-(k as f64), 0.0);
    let z = Complex64::new(x * x, 0.0);
    if n.is_multiple_of(2) {
        let m = kummer_m(KummerArgs { a, b: Complex64::new(0.5, 0.0), z }, ctrl)?;
        Ok(sign * factorial_ratio * m.re)
    } else {
        let m = kummer_m(KummerArgs { a, b: Complex64::new(1.5, 0.0), z }, ctrl)?;
        Ok(2.0 * x * sign * factorial_ratio * m.re)
    }
}
