//! Complex elementary functions built on `libm` alone.
//!
//! `num-complex` routes `exp`, `sqrt` and `norm` through `num-traits`, which
//! picks the platform math library or `libm` depending on which features the
//! final build happens to unify. Going through `libm` directly keeps every
//! result bit-identical across builds.

use num_complex::Complex64;

pub(crate) fn abs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Principal square root; the cut lies along the negative real axis and a
/// negative real with `+0` imaginary part maps to the positive imaginary axis.
pub(crate) fn sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return if z.re >= 0.0 {
            Complex64::new(libm::sqrt(z.re), z.im)
        } else {
            Complex64::new(0.0, libm::copysign(libm::sqrt(-z.re), z.im))
        };
    }
    let t = libm::sqrt(0.5 * (abs(z) + libm::fabs(z.re)));
    if z.re >= 0.0 {
        Complex64::new(t, z.im / (2.0 * t))
    } else {
        Complex64::new(libm::fabs(z.im) / (2.0 * t), libm::copysign(t, z.im))
    }
}

pub(crate) fn exp(z: Complex64) -> Complex64 {
    let r = libm::exp(z.re);
    if z.im == 0.0 {
        return Complex64::new(r, z.im);
    }
    Complex64::new(r * libm::cos(z.im), r * libm::sin(z.im))
}
