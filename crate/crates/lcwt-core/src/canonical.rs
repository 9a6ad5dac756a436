//! Foundational value types: parameter matrices and sampled signals.
//!
//! Everything here is an immutable value after construction and safe to share
//! across threads. The inner-product primitive uses the midpoint rule with
//! weight `dt` per sample, which commutes exactly with the discrete Parseval
//! identity of the FFT-based transform path.

use num_complex::Complex;

use crate::error::{LcwtError, Result};
use crate::float::LcFloat;

/// Relative tolerance used when deciding whether two sampling grids coincide.
const GRID_MATCH_TOL: f64 = 1e-12;

/// The 2x2 real parameter matrix `(A, B; C, D)` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalMatrix<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    b_is_zero: bool,
}

impl<T: LcFloat> CanonicalMatrix<T> {
    /// Builds a matrix, enforcing `|A*D - B*C - 1| <= tol` at construction.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("C", c), ("D", d)] {
            if !v.is_finite() {
                return Err(LcwtError::InvalidMatrix(format!(
                    "entry {name} is not finite"
                )));
            }
        }
        let det = a * d - b * c;
        let deviation = (det - T::one()).abs();
        if deviation > T::det_tol() {
            return Err(LcwtError::NonUnitDeterminant {
                det: det.to_f64_lossy(),
                deviation: deviation.to_f64_lossy(),
            });
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            b_is_zero: b.abs() <= T::b_zero_tol(),
        })
    }

    /// The identity matrix `(1, 0; 0, 1)`.
    pub fn identity() -> Self {
        Self {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
            b_is_zero: true,
        }
    }

    /// Rotation `(cos t, sin t; -sin t, cos t)`.
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a: c,
            b: s,
            c: -s,
            d: c,
            b_is_zero: s.abs() <= T::b_zero_tol(),
        }
    }

    /// Upper shear `(1, b; 0, 1)`.
    pub fn shear(b: T) -> Self {
        Self {
            a: T::one(),
            b,
            c: T::zero(),
            d: T::one(),
            b_is_zero: b.abs() <= T::b_zero_tol(),
        }
    }

    /// True when `|B|` is below the degenerate-branch threshold.
    pub fn b_is_zero(&self) -> bool {
        self.b_is_zero
    }

    /// Matrix product `self * rhs`. Unit determinant is preserved by
    /// construction; the product is revalidated to guard against drift.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Self::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    /// The inverse `(D, -B; -C, A)` of a unimodular matrix.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            b_is_zero: self.b_is_zero,
        }
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    /// Errors out with the degenerate branch unless `|B|` is usable.
    pub fn require_b(&self) -> Result<T> {
        if self.b_is_zero {
            Err(LcwtError::DegenerateBranch {
                b: self.b.to_f64_lossy(),
            })
        } else {
            Ok(self.b)
        }
    }
}

/// A uniformly sampled complex signal with grid metadata.
///
/// `values[k]` is the sample at `t0 + k * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal<T> {
    t0: T,
    dt: T,
    values: Vec<Complex<T>>,
}

impl<T: LcFloat> SampledSignal<T> {
    pub fn new(t0: T, dt: T, values: Vec<Complex<T>>) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(LcwtError::InvalidSignal(format!(
                "dt = {} must be finite and > 0",
                dt.to_f64_lossy()
            )));
        }
        if !t0.is_finite() {
            return Err(LcwtError::InvalidSignal("t0 is not finite".into()));
        }
        if values.len() < 2 {
            return Err(LcwtError::InvalidSignal(format!(
                "need at least 2 samples, got {}",
                values.len()
            )));
        }
        if let Some(k) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(LcwtError::InvalidSignal(format!(
                "sample {k} is not finite"
            )));
        }
        Ok(Self { t0, dt, values })
    }

    /// Samples a function on the grid `t0 + k*dt`, `k = 0..n`.
    pub fn from_fn(t0: T, dt: T, n: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let values = (0..n)
            .map(|k| f(t0 + dt * T::from_usize(k).unwrap()))
            .collect();
        Self::new(t0, dt, values)
    }

    /// Grid centred on zero: `t_k = (k - n/2) * dt`.
    pub fn centered_from_fn(dt: T, n: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let t0 = -dt * T::from_usize(n / 2).unwrap();
        Self::from_fn(t0, dt, n, f)
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Time of sample `k`.
    pub fn t(&self, k: usize) -> T {
        self.t0 + self.dt * T::from_usize(k).unwrap()
    }

    /// True when both signals live on the same grid (t0, dt, length).
    pub fn same_grid(&self, other: &Self) -> bool {
        let tol = T::of(GRID_MATCH_TOL);
        let scale = self.dt.max(self.t0.abs()).max(T::one());
        self.len() == other.len()
            && (self.dt - other.dt).abs() <= tol * self.dt
            && (self.t0 - other.t0).abs() <= tol * scale
    }

    /// Discrete L2 norm: `sqrt(sum |x_k|^2 * dt)`.
    pub fn norm(&self) -> T {
        (self
            .values
            .iter()
            .map(|v| v.norm_sqr())
            .fold(T::zero(), |acc, e| acc + e)
            * self.dt)
            .sqrt()
    }

    /// Energy `sum |x_k|^2 * dt`.
    pub fn energy(&self) -> T {
        self.values
            .iter()
            .map(|v| v.norm_sqr())
            .fold(T::zero(), |acc, e| acc + e)
            * self.dt
    }

    /// Sup norm over samples.
    pub fn sup_norm(&self) -> T {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), T::max)
    }

    /// Discrete Lp norm `(sum |x_k|^p * dt)^(1/p)` for finite `p > 0`.
    pub fn lp_norm(&self, p: T) -> T {
        self.values
            .iter()
            .map(|v| v.norm().powf(p))
            .fold(T::zero(), |acc, e| acc + e)
            .mul_add(self.dt, T::zero())
            .powf(p.recip())
    }

    /// Returns a copy scaled by a complex constant.
    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self {
            t0: self.t0,
            dt: self.dt,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// Midpoint-rule inner product `sum x_k * conj(y_k) * dt`.
///
/// Conjugate-symmetric by construction: swapping arguments conjugates the
/// result exactly.
pub fn inner_product<T: LcFloat>(
    x: &SampledSignal<T>,
    y: &SampledSignal<T>,
) -> Result<Complex<T>> {
    if !x.same_grid(y) {
        return Err(LcwtError::GridMismatch(format!(
            "lhs (t0={}, dt={}, n={}) vs rhs (t0={}, dt={}, n={})",
            x.t0.to_f64_lossy(),
            x.dt.to_f64_lossy(),
            x.len(),
            y.t0.to_f64_lossy(),
            y.dt.to_f64_lossy(),
            y.len()
        )));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for (a, b) in x.values.iter().zip(&y.values) {
        acc += a * b.conj();
    }
    Ok(acc * x.dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    type M = CanonicalMatrix<f64>;

    fn constant(n: usize) -> SampledSignal<f64> {
        SampledSignal::from_fn(0.0, 1.0 / n as f64, n, |_| Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn unit_constant_inner_product() {
        let x = constant(1024);
        let ip = inner_product(&x, &x).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-12);
        assert_eq!(ip.im, 0.0);
    }

    #[test]
    fn fourier_modes_orthogonal() {
        let n = 1024;
        let dt = 1.0 / n as f64;
        let x = SampledSignal::from_fn(0.0, dt, n, |t| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
        })
        .unwrap();
        let y = constant(n);
        let ip = inner_product(&x, &y).unwrap();
        assert!(ip.norm() <= 1e-10, "|<x,y>| = {}", ip.norm());
    }

    #[test]
    fn gaussian_inner_product_matches_closed_form() {
        // <g, g> with g = exp(-t^2/2) is the integral of exp(-t^2) = sqrt(pi).
        // Cross-checked against a 16x finer midpoint quadrature.
        let build = |n: usize| {
            SampledSignal::centered_from_fn(16.0 / n as f64, n, |t| {
                Complex64::new((-0.5 * t * t).exp(), 0.0)
            })
            .unwrap()
        };
        let g = build(2048);
        let ip = inner_product(&g, &g).unwrap();
        let oracle = {
            let fine = build(32768);
            inner_product(&fine, &fine).unwrap().re
        };
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((ip.re - sqrt_pi).abs() < 1e-8, "got {}", ip.re);
        assert!((oracle - sqrt_pi).abs() < 1e-12);
        assert!((ip.re - oracle).abs() < 1e-8);
    }

    #[test]
    fn conjugate_symmetry() {
        let n = 256;
        let dt = 0.01;
        let x = SampledSignal::from_fn(-1.0, dt, n, |t: f64| Complex64::new(t.cos(), t.sin() * 0.3))
            .unwrap();
        let y =
            SampledSignal::from_fn(-1.0, dt, n, |t: f64| Complex64::new((2.0 * t).sin(), -t)).unwrap();
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        assert_eq!(xy, yx.conj());
    }

    #[test]
    fn grid_mismatch_rejected() {
        let x = constant(64);
        let y = SampledSignal::from_fn(0.0, 1.0 / 128.0, 128, |_| Complex64::new(1.0, 0.0))
            .unwrap();
        assert!(matches!(
            inner_product(&x, &y),
            Err(LcwtError::GridMismatch(_))
        ));
    }

    #[test]
    fn compose_inverse_is_identity() {
        let m = M::new(1.0, 2.0, 0.5, 2.0).unwrap();
        let id = m.compose(&m.inverse()).unwrap();
        assert!((id.a - 1.0).abs() < 1e-12);
        assert!(id.b.abs() < 1e-12);
        assert!(id.c.abs() < 1e-12);
        assert!((id.d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_squared() {
        let r = M::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let r2 = r.compose(&r).unwrap();
        assert_eq!((r2.a, r2.b, r2.c, r2.d), (-1.0, 0.0, 0.0, -1.0));
    }

    #[test]
    fn shear_product() {
        // (1,2;0,1)*(1,0;3,1) = (7,2;3,1), a direct 2x2 multiplication.
        let m = M::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let n = M::new(1.0, 0.0, 3.0, 1.0).unwrap();
        let p = m.compose(&n).unwrap();
        assert_eq!((p.a, p.b, p.c, p.d), (7.0, 2.0, 3.0, 1.0));
    }

    #[test]
    fn inverse_formula() {
        let r = M::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let ri = r.inverse();
        assert_eq!((ri.a, ri.b, ri.c, ri.d), (0.0, -1.0, 1.0, 0.0));
        let id = M::identity();
        let idi = id.inverse();
        assert_eq!((idi.a, idi.b, idi.c, idi.d), (1.0, 0.0, 0.0, 1.0));
        let s = M::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let si = s.inverse();
        assert_eq!((si.a, si.b, si.c, si.d), (1.0, -2.0, 0.0, 1.0));
    }

    #[test]
    fn bad_determinant_rejected() {
        assert!(matches!(
            M::new(1.0, 2.0, 0.5, 2.1),
            Err(LcwtError::NonUnitDeterminant { .. })
        ));
    }

    #[test]
    fn b_zero_flag() {
        assert!(M::identity().b_is_zero());
        assert!(!M::new(0.0, 1.0, -1.0, 0.0).unwrap().b_is_zero());
        assert!(M::new(2.0, 0.0, 3.0, 0.5).unwrap().b_is_zero());
    }
}
