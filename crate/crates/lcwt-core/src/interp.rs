//! Interpolation kernels for off-grid evaluation.
//!
//! Two schemes are used in the pipeline:
//!
//! * sinc (Whittaker) interpolation for time-domain samples that are exactly
//!   band-limited to the grid Nyquist band, and
//! * 4-point Lagrange cubic interpolation for smooth spectra on uniform
//!   grids, zero outside the grid.

use num_complex::Complex;

use crate::float::LcFloat;

/// Samples with magnitude below this fraction of the peak are skipped by the
/// sinc sum; the excluded terms are below double rounding.
const SUPPORT_CUTOFF: f64 = 1e-18;

/// Band-limited interpolant over uniformly spaced complex samples.
///
/// The sinc series is restricted to the contiguous window where the samples
/// carry non-negligible magnitude, so evaluation cost scales with the
/// effective support rather than the full grid.
#[derive(Debug, Clone)]
pub struct SincInterpolator<T> {
    x0: T,
    dx: T,
    samples: Vec<Complex<T>>,
    support: (usize, usize),
}

impl<T: LcFloat> SincInterpolator<T> {
    pub fn new(x0: T, dx: T, samples: Vec<Complex<T>>) -> Self {
        let peak = samples.iter().map(|v| v.norm_sqr()).fold(T::zero(), T::max);
        let cutoff = peak * T::of(SUPPORT_CUTOFF * SUPPORT_CUTOFF);
        let mut lo = 0;
        let mut hi = samples.len();
        while lo < hi && samples[lo].norm_sqr() <= cutoff {
            lo += 1;
        }
        while hi > lo && samples[hi - 1].norm_sqr() <= cutoff {
            hi -= 1;
        }
        Self {
            x0,
            dx,
            samples,
            support: (lo, hi),
        }
    }

    /// Evaluates the interpolant at `x`. Points outside the sample grid
    /// return zero.
    pub fn eval(&self, x: T) -> Complex<T> {
        let (lo, hi) = self.support;
        if lo >= hi {
            return Complex::new(T::zero(), T::zero());
        }
        let u = (x - self.x0) / self.dx;
        let n = self.samples.len();
        if u < -T::of(0.5) || u > T::from_usize(n).unwrap() - T::of(0.5) {
            return Complex::new(T::zero(), T::zero());
        }
        let nearest = u.round();
        let frac = u - nearest;
        let nearest_idx = nearest.to_isize().unwrap();
        if frac == T::zero() {
            return if nearest_idx >= 0 && (nearest_idx as usize) < n {
                self.samples[nearest_idx as usize]
            } else {
                Complex::new(T::zero(), T::zero())
            };
        }
        // sinc(u - k) = sin(pi (u - k)) / (pi (u - k)) and
        // sin(pi (u - k)) = (-1)^(nearest + k) * sin(pi * frac), so a single
        // sine evaluation serves the whole sum.
        let pi = T::PI();
        let sin_pi_frac = (pi * frac).sin();
        let mut sign = if (nearest_idx + lo as isize).rem_euclid(2) == 0 {
            T::one()
        } else {
            -T::one()
        };
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in lo..hi {
            let dk = u - T::from_usize(k).unwrap();
            acc += self.samples[k] * (sign / dk);
            sign = -sign;
        }
        acc * (sin_pi_frac / pi)
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn dx(&self) -> T {
        self.dx
    }
}

/// 4-point Lagrange cubic interpolation on a uniform grid; zero outside.
pub fn cubic_interp<T: LcFloat>(x0: T, dx: T, samples: &[Complex<T>], x: T) -> Complex<T> {
    let n = samples.len();
    if n == 0 {
        return Complex::new(T::zero(), T::zero());
    }
    let u = (x - x0) / dx;
    if u < T::zero() || u > T::from_usize(n - 1).unwrap() {
        return Complex::new(T::zero(), T::zero());
    }
    let i1 = u.floor().to_usize().unwrap().min(n - 1);
    let s = u - T::from_usize(i1).unwrap();
    if s == T::zero() {
        return samples[i1];
    }
    if n < 4 {
        // Fall back to linear for very short grids.
        let i2 = (i1 + 1).min(n - 1);
        return samples[i1] * (T::one() - s) + samples[i2] * s;
    }
    // Center the stencil: nodes i0 < i1 <= u < i2 < i3.
    let i1 = i1.clamp(1, n - 3);
    let s = u - T::from_usize(i1).unwrap();
    let one = T::one();
    let two = T::of(2.0);
    let six = T::of(6.0);
    let w0 = -s * (s - one) * (s - two) / six;
    let w1 = (s + one) * (s - one) * (s - two) / two;
    let w2 = -(s + one) * s * (s - two) / two;
    let w3 = (s + one) * s * (s - one) / six;
    samples[i1 - 1] * w0 + samples[i1] * w1 + samples[i1 + 1] * w2 + samples[i1 + 2] * w3
}
