//! Admissible analyzing wavelets for the linear canonical setting.
//!
//! Wavelets are constructed in the transform domain: the caller (or a named
//! builtin) supplies the spectrum `Psi(u) = (L^M psi)(u)` on a uniform grid,
//! and the time form is obtained by the exact inverse of the fast transform.
//! Admissibility — finiteness and equality of the two half-line constants
//!
//! `C+ = integral_0^inf |Psi(u)|^2 du/u`,
//! `C- = integral_{-inf}^0 |Psi(u)|^2 du/|u|`
//!
//! — is then directly controllable through the spectral decay at `u = 0`.
//!
//! Off-grid evaluation of the time form de-chirps the samples first: the
//! stored `psi` times `exp(i A t^2 / 2B)` is band-limited to the grid Nyquist
//! band by construction, so sinc interpolation of the de-chirped samples is
//! exact up to tail truncation.

use num_complex::Complex;

use crate::canonical::{CanonicalMatrix, SampledSignal};
use crate::error::{LcwtError, Result};
use crate::float::LcFloat;
use crate::interp::{cubic_interp, SincInterpolator};
use crate::lct::{ilct_fast, lct_fast, lct_kernel, LctSpectrum};

/// Log-quadrature window and resolution for the admissibility integrals.
/// The `du/u` measure is scale-invariant, so nodes are placed as
/// `u = exp(v)` with `v` uniform and the integral becomes a plain trapezoid
/// rule in `v`.
const ADMISSIBILITY_U_MIN: f64 = 1e-4;
const ADMISSIBILITY_U_MAX: f64 = 1e3;
const ADMISSIBILITY_NODES: usize = 4096;

/// Integrability threshold: `|Psi(u)|^2 ~ u^alpha` near zero must have
/// `alpha` above this for `du/u` to converge numerically.
const MIN_DECAY_EXPONENT: f64 = 0.1;

/// Default relative tolerance for `C+ = C-`.
pub const DEFAULT_ADMISSIBILITY_TOL: f64 = 1e-3;

/// Grid parameters for the wavelet factory.
///
/// `n` is the number of samples (a power of two) and `u_span` the half-width
/// of the spectral grid; the induced time step is `dt = pi |B| / u_span`.
#[derive(Debug, Clone, Copy)]
pub struct WaveletGridParams<T> {
    pub n: usize,
    pub u_span: T,
    pub admissibility_tol: T,
}

impl<T: LcFloat> Default for WaveletGridParams<T> {
    fn default() -> Self {
        Self {
            n: 4096,
            u_span: T::of(12.0),
            admissibility_tol: T::of(DEFAULT_ADMISSIBILITY_TOL),
        }
    }
}

/// First and second moments of a window density.
#[derive(Debug, Clone, Copy)]
struct Moments<T> {
    centre: T,
    radius: T,
}

/// An admissible linear canonical wavelet: time form, cached spectrum under
/// its matrix, and the admissibility constant.
#[derive(Debug, Clone)]
pub struct LcWavelet<T> {
    id: String,
    matrix: CanonicalMatrix<T>,
    time_form: SampledSignal<T>,
    spectrum: LctSpectrum<T>,
    dechirped: SincInterpolator<T>,
    c_pos: T,
    c_neg: T,
    admissibility: T,
    norm: T,
    time_moments: Moments<T>,
    spectral_moments: Moments<T>,
}

/// A sampled daughter wavelet `psi^M_{a,b}` on an analysis grid.
#[derive(Debug, Clone)]
pub struct DaughterWavelet<T> {
    pub scale: T,
    pub shift: T,
    pub samples: SampledSignal<T>,
}

/// Centres and radii of the time and transform-domain windows of a daughter,
/// plus the scale-invariant Q-factor.
#[derive(Debug, Clone, Copy)]
pub struct WindowGeometry<T> {
    pub time_centre: T,
    pub time_radius: T,
    pub lct_centre: T,
    pub lct_radius: T,
    pub q_factor: T,
}

/// Named builtin spectra. All three vanish at `u = 0` and have symmetric
/// modulus, so both half-line constants coincide exactly.
pub fn builtin_spectrum<T: LcFloat>(name: &str) -> Option<Box<dyn Fn(T) -> Complex<T>>> {
    let half = T::of(0.5);
    match name {
        "lc-mexican-hat" => Some(Box::new(move |u: T| {
            Complex::new(u * u * (-half * u * u).exp(), T::zero())
        })),
        "lc-odd-gauss" => Some(Box::new(move |u: T| {
            Complex::new(u * (-half * u * u).exp(), T::zero())
        })),
        "lc-bump" => Some(Box::new(|u: T| {
            let mag = u.abs();
            if mag <= T::of(0.5) || mag >= T::of(2.0) {
                return Complex::new(T::zero(), T::zero());
            }
            let w = mag.ln() / T::of(2.0).ln();
            let val = (T::one() - T::one() / (T::one() - w * w)).exp();
            Complex::new(val, T::zero())
        })),
        _ => None,
    }
}

impl<T: LcFloat> LcWavelet<T> {
    /// Builds one of the named builtin wavelets.
    pub fn builtin(
        name: &str,
        matrix: CanonicalMatrix<T>,
        params: WaveletGridParams<T>,
    ) -> Result<Self> {
        let spec = builtin_spectrum::<T>(name).ok_or_else(|| {
            LcwtError::InvalidSignal(format!("unknown builtin wavelet '{name}'"))
        })?;
        Self::from_spectrum_fn(name, matrix, params, |u| spec(u))
    }

    /// Builds a wavelet from a closure giving the spectrum `Psi(u)`.
    pub fn from_spectrum_fn(
        id: &str,
        matrix: CanonicalMatrix<T>,
        params: WaveletGridParams<T>,
        psi_hat: impl Fn(T) -> Complex<T>,
    ) -> Result<Self> {
        let b = matrix.require_b()?;
        if !params.n.is_power_of_two() || params.n < 16 {
            return Err(LcwtError::InvalidGrid(format!(
                "wavelet grid size {} must be a power of two >= 16",
                params.n
            )));
        }
        let n_t = T::from_usize(params.n).unwrap();
        let dxi = (params.u_span + params.u_span) / n_t;
        let xi0 = -dxi * T::from_usize(params.n / 2).unwrap();
        let values = (0..params.n)
            .map(|j| psi_hat(xi0 + dxi * T::from_usize(j).unwrap()))
            .collect();
        let spectrum = LctSpectrum::new(xi0, dxi, values, matrix)?;
        let dt = T::PI() * b.abs() / params.u_span;
        let t0 = -dt * T::from_usize(params.n / 2).unwrap();
        let time_form = ilct_fast(&spectrum, t0)?;
        Self::assemble(id, matrix, time_form, spectrum, params.admissibility_tol)
    }

    /// Builds a wavelet from explicit spectrum samples on a centred grid.
    pub fn from_spectrum_samples(
        id: &str,
        matrix: CanonicalMatrix<T>,
        dxi: T,
        samples: Vec<Complex<T>>,
        admissibility_tol: T,
    ) -> Result<Self> {
        let b = matrix.require_b()?;
        let n = samples.len();
        if !n.is_power_of_two() || n < 16 {
            return Err(LcwtError::InvalidGrid(format!(
                "spectrum length {n} must be a power of two >= 16"
            )));
        }
        let xi0 = -dxi * T::from_usize(n / 2).unwrap();
        let spectrum = LctSpectrum::new(xi0, dxi, samples, matrix)?;
        let dt = T::TAU() * b.abs() / (T::from_usize(n).unwrap() * dxi);
        let t0 = -dt * T::from_usize(n / 2).unwrap();
        let time_form = ilct_fast(&spectrum, t0)?;
        Self::assemble(id, matrix, time_form, spectrum, admissibility_tol)
    }

    /// Builds a wavelet from time-domain samples; the spectrum is computed by
    /// the fast transform.
    pub fn from_time_samples(
        id: &str,
        matrix: CanonicalMatrix<T>,
        time_form: SampledSignal<T>,
        admissibility_tol: T,
    ) -> Result<Self> {
        matrix.require_b()?;
        let spectrum = lct_fast(&time_form, &matrix)?;
        Self::assemble(id, matrix, time_form, spectrum, admissibility_tol)
    }

    /// Conjugate-linear combination `alpha psi + beta phi` of two wavelets on
    /// the same grid and matrix. The result is validated for admissibility.
    pub fn linear_combination(
        alpha: Complex<T>,
        psi: &Self,
        beta: Complex<T>,
        phi: &Self,
    ) -> Result<Self> {
        if psi.matrix != phi.matrix {
            return Err(LcwtError::InvalidMatrix(
                "wavelet combination requires a common matrix".into(),
            ));
        }
        if !psi.time_form.same_grid(&phi.time_form) {
            return Err(LcwtError::GridMismatch(
                "wavelet combination requires a common time grid".into(),
            ));
        }
        let values = psi
            .time_form
            .values()
            .iter()
            .zip(phi.time_form.values())
            .map(|(p, q)| p * alpha + q * beta)
            .collect();
        let combined = SampledSignal::new(psi.time_form.t0(), psi.time_form.dt(), values)?;
        let id = format!("combo({},{})", psi.id, phi.id);
        Self::from_time_samples(&id, psi.matrix, combined, T::of(DEFAULT_ADMISSIBILITY_TOL))
    }

    fn assemble(
        id: &str,
        matrix: CanonicalMatrix<T>,
        time_form: SampledSignal<T>,
        spectrum: LctSpectrum<T>,
        admissibility_tol: T,
    ) -> Result<Self> {
        let (c_pos, c_neg) = admissibility_from_spectrum(&spectrum)?;
        let max_c = c_pos.max(c_neg);
        if !(max_c > T::zero()) || !max_c.is_finite() {
            return Err(LcwtError::NotAdmissible {
                c_pos: c_pos.to_f64_lossy(),
                c_neg: c_neg.to_f64_lossy(),
                rel: f64::INFINITY,
                tol: admissibility_tol.to_f64_lossy(),
            });
        }
        let rel = (c_pos - c_neg).abs() / max_c;
        if rel > admissibility_tol {
            return Err(LcwtError::NotAdmissible {
                c_pos: c_pos.to_f64_lossy(),
                c_neg: c_neg.to_f64_lossy(),
                rel: rel.to_f64_lossy(),
                tol: admissibility_tol.to_f64_lossy(),
            });
        }
        let half = T::of(0.5);
        let dechirped = dechirped_interpolator(&time_form, &matrix);
        let norm = time_form.norm();
        let time_moments = signal_moments(time_form.t0(), time_form.dt(), time_form.values());
        let spectral_moments = signal_moments(spectrum.xi0(), spectrum.dxi(), spectrum.values());
        Ok(Self {
            id: id.to_string(),
            matrix,
            time_form,
            spectrum,
            dechirped,
            c_pos,
            c_neg,
            admissibility: half * (c_pos + c_neg),
            norm,
            time_moments,
            spectral_moments,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn matrix(&self) -> &CanonicalMatrix<T> {
        &self.matrix
    }

    pub fn time_form(&self) -> &SampledSignal<T> {
        &self.time_form
    }

    pub fn spectrum(&self) -> &LctSpectrum<T> {
        &self.spectrum
    }

    /// The admissibility constant `C_{psi,M}` (mean of the two half-line
    /// values, which agree within the construction tolerance).
    pub fn admissibility(&self) -> T {
        self.admissibility
    }

    /// The two half-line constants `(C+, C-)`.
    pub fn admissibility_sides(&self) -> (T, T) {
        (self.c_pos, self.c_neg)
    }

    /// Cached L2 norm of the time form.
    pub fn norm(&self) -> T {
        self.norm
    }

    /// Returns a unit-L2-norm copy.
    pub fn normalized(&self) -> Result<Self> {
        let inv = Complex::new(self.norm.recip(), T::zero());
        let scaled = self.time_form.scaled(inv);
        Self::from_time_samples(&self.id.clone(), self.matrix, scaled, T::of(1e-2))
    }

    /// Evaluates the mother wavelet at an arbitrary time by de-chirped sinc
    /// interpolation; zero outside the stored grid.
    pub fn eval_time(&self, x: T) -> Complex<T> {
        eval_dechirped(&self.dechirped, &self.matrix, x)
    }

    /// Evaluates the cached spectrum at an arbitrary frequency by cubic
    /// interpolation; zero outside the stored grid.
    pub fn eval_spectrum(&self, u: T) -> Complex<T> {
        cubic_interp(
            self.spectrum.xi0(),
            self.spectrum.dxi(),
            self.spectrum.values(),
            u,
        )
    }

    /// Samples the daughter wavelet
    /// `psi^M_{a,b}(t) = exp(-iA/2B ((t^2 - b^2) - (a(t-b))^2)) sqrt(a) psi(a(t-b))`
    /// on the grid `t0 + k dt`, `k = 0..n`.
    pub fn daughter(&self, a: T, b: T, t0: T, dt: T, n: usize) -> Result<DaughterWavelet<T>> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(LcwtError::InvalidScale {
                a: a.to_f64_lossy(),
            });
        }
        let sqrt_a = a.sqrt();
        let half = T::of(0.5);
        let coef = half * self.matrix.a / self.matrix.b;
        let samples = SampledSignal::from_fn(t0, dt, n, |t| {
            let lag = t - b;
            let phase = -coef * ((t * t - b * b) - (a * lag) * (a * lag));
            self.eval_time(a * lag) * Complex::cis(phase) * sqrt_a
        })?;
        Ok(DaughterWavelet {
            scale: a,
            shift: b,
            samples,
        })
    }

    /// Daughter on the grid of an existing signal.
    pub fn daughter_like(
        &self,
        a: T,
        b: T,
        like: &SampledSignal<T>,
    ) -> Result<DaughterWavelet<T>> {
        self.daughter(a, b, like.t0(), like.dt(), like.len())
    }

    /// Closed-form transform of a daughter:
    /// `(L^M psi^M_{a,b})(xi) = sqrt(2 pi i B)/sqrt(a) * exp(-i D (xi/a)^2 / 2B) * K_M(b, xi) * Psi(xi/a)`.
    ///
    /// The scale-dependent chirp factor is required for consistency at
    /// `a = 1, b = 0` (where the daughter is the mother itself) and for the
    /// spectral form of the transform to reproduce the time-domain one; it is
    /// verified here by the two-path test against the fast transform of the
    /// sampled daughter.
    pub fn lct_of_daughter(&self, a: T, b: T, xi: T) -> Result<Complex<T>> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(LcwtError::InvalidScale {
                a: a.to_f64_lossy(),
            });
        }
        let root = Complex::new(T::zero(), T::TAU() * self.matrix.b).sqrt();
        let kernel = lct_kernel(&self.matrix, b, xi)?;
        let u = xi / a;
        let chirp = Complex::cis(-T::of(0.5) * self.matrix.d * u * u / self.matrix.b);
        Ok(root * chirp * kernel * self.eval_spectrum(u) * a.sqrt().recip())
    }

    /// Window geometry of the daughter at `(a, b)` via the scaling laws
    /// applied to the mother's cached moments: the time window has centre
    /// `E_t/a + b` and radius `Delta_t/a`; the transform-domain window has
    /// centre `a E_u` and radius `a Delta_u`. The Q-factor
    /// `Delta_u / E_u` carries no `a` dependence at all.
    pub fn window_geometry(&self, a: T, b: T) -> Result<WindowGeometry<T>> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(LcwtError::InvalidScale {
                a: a.to_f64_lossy(),
            });
        }
        let e_u = self.spectral_moments.centre;
        let d_u = self.spectral_moments.radius;
        if e_u.abs() <= T::of(1e-9) * d_u.max(T::epsilon()) {
            return Err(LcwtError::ZeroCentre);
        }
        Ok(WindowGeometry {
            time_centre: self.time_moments.centre / a + b,
            time_radius: self.time_moments.radius / a,
            lct_centre: a * e_u,
            lct_radius: a * d_u,
            q_factor: d_u / e_u,
        })
    }

    /// Fraction of the admissibility mass of `|Psi(u)|^2 / |u|` captured when
    /// the dilation argument `u = xi/a` is restricted to
    /// `|u|` in `[1/a_max, 1/a_min]` at reference `|xi| = 1`.
    pub fn admissibility_mass_fraction(&self, a_min: T, a_max: T) -> T {
        let lo = a_max.recip();
        let hi = a_min.recip();
        let total = self.c_pos + self.c_neg;
        if !(total > T::zero()) {
            return T::zero();
        }
        let captured = half_line_quadrature(&self.spectrum, T::one(), Some((lo, hi))).0
            + half_line_quadrature(&self.spectrum, -T::one(), Some((lo, hi))).0;
        captured / total
    }

    /// Smallest `|u|` window `[u_lo, u_hi]` whose admissibility mass reaches
    /// the given fraction on both half-lines combined; used for default
    /// analysis grids.
    pub fn admissibility_band(&self, mass: T) -> (T, T) {
        admissibility_band_of(&self.spectrum, mass)
    }
}

/// De-chirped sample interpolator: `psi(t) * exp(i A t^2 / 2B)` is band-limited
/// to the grid Nyquist band whenever the wavelet was produced from a spectrum
/// on that grid, so its sinc interpolant is the right off-grid extension.
/// Evaluation re-applies the chirp: see [`eval_dechirped`].
pub(crate) fn dechirped_interpolator<T: LcFloat>(
    time_form: &SampledSignal<T>,
    matrix: &CanonicalMatrix<T>,
) -> SincInterpolator<T> {
    let half = T::of(0.5);
    SincInterpolator::new(
        time_form.t0(),
        time_form.dt(),
        time_form
            .values()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let t = time_form.t(k);
                v * Complex::cis(half * matrix.a * t * t / matrix.b)
            })
            .collect(),
    )
}

/// Off-grid wavelet evaluation through a de-chirped interpolator.
pub(crate) fn eval_dechirped<T: LcFloat>(
    interp: &SincInterpolator<T>,
    matrix: &CanonicalMatrix<T>,
    x: T,
) -> Complex<T> {
    let half = T::of(0.5);
    interp.eval(x) * Complex::cis(-half * matrix.a * x * x / matrix.b)
}

/// Centre and standard deviation of the normalized density `|x_k|^2 / ||x||^2`
/// over a uniform grid.
fn signal_moments<T: LcFloat>(x0: T, dx: T, values: &[Complex<T>]) -> Moments<T> {
    let mut mass = T::zero();
    let mut first = T::zero();
    for (k, v) in values.iter().enumerate() {
        let w = v.norm_sqr();
        mass += w;
        first += w * (x0 + dx * T::from_usize(k).unwrap());
    }
    if !(mass > T::zero()) {
        return Moments {
            centre: T::zero(),
            radius: T::zero(),
        };
    }
    let centre = first / mass;
    let mut second = T::zero();
    for (k, v) in values.iter().enumerate() {
        let d = x0 + dx * T::from_usize(k).unwrap() - centre;
        second += v.norm_sqr() * d * d;
    }
    Moments {
        centre,
        radius: (second / mass).sqrt(),
    }
}

/// Trapezoid-in-log quadrature of `|Psi(s e^v)|^2` over `v`, optionally
/// windowed to `|u|` in `[lo, hi]`; returns the integral and the node values
/// on the smallest decade for the decay fit.
fn half_line_quadrature<T: LcFloat>(
    spectrum: &LctSpectrum<T>,
    side: T,
    window: Option<(T, T)>,
) -> (T, Vec<(T, T)>) {
    let v_min = T::of(ADMISSIBILITY_U_MIN.ln());
    let v_max = T::of(ADMISSIBILITY_U_MAX.ln());
    let n = ADMISSIBILITY_NODES;
    let h = (v_max - v_min) / T::from_usize(n - 1).unwrap();
    let decade_top = T::of(ADMISSIBILITY_U_MIN * 10.0);
    let mut acc = T::zero();
    let mut decade = Vec::new();
    for i in 0..n {
        let v = v_min + h * T::from_usize(i).unwrap();
        let u = v.exp();
        if let Some((lo, hi)) = window {
            if u < lo || u > hi {
                continue;
            }
        }
        let val = cubic_interp(spectrum.xi0(), spectrum.dxi(), spectrum.values(), side * u)
            .norm_sqr();
        let w = if i == 0 || i == n - 1 {
            T::of(0.5)
        } else {
            T::one()
        };
        acc += w * val;
        if u <= decade_top {
            decade.push((u, val));
        }
    }
    (acc * h, decade)
}

/// Least-squares slope of `ln|Psi|^2` against `ln u` over the smallest decade
/// of quadrature nodes. Near-zero values are clipped to keep logs finite.
fn decay_exponent<T: LcFloat>(decade: &[(T, T)], peak: T) -> Option<T> {
    let floor = peak * T::of(1e-30);
    if decade.iter().all(|&(_, v)| v <= floor) {
        // Identically (numerically) zero near the origin: integrable.
        return None;
    }
    let n = T::from_usize(decade.len()).unwrap();
    let mut sx = T::zero();
    let mut sy = T::zero();
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(u, v) in decade {
        let x = u.ln();
        let y = v.max(floor).ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

fn admissibility_from_spectrum<T: LcFloat>(spectrum: &LctSpectrum<T>) -> Result<(T, T)> {
    let peak = spectrum
        .values()
        .iter()
        .map(|v| v.norm_sqr())
        .fold(T::zero(), T::max);
    let (c_pos, decade_pos) = half_line_quadrature(spectrum, T::one(), None);
    let (c_neg, decade_neg) = half_line_quadrature(spectrum, -T::one(), None);
    for decade in [&decade_pos, &decade_neg] {
        if let Some(alpha) = decay_exponent(decade, peak) {
            if alpha <= T::of(MIN_DECAY_EXPONENT) {
                return Err(LcwtError::DivergentAdmissibility {
                    alpha: alpha.to_f64_lossy(),
                    min_alpha: MIN_DECAY_EXPONENT,
                });
            }
        }
    }
    Ok((c_pos, c_neg))
}

/// Half-line admissibility constants
/// `(C+, C-) = (int_0^inf |Psi(u)|^2 du/u, int_-inf^0 |Psi(u)|^2 du/|u|)`
/// of an arbitrary sampled signal under the matrix `m`.
///
/// The signal is declared admissible when both values are finite, positive,
/// and agree within `tol`; this function only reports the constants and the
/// divergence check, leaving the tolerance decision to the caller.
pub fn admissibility_constant<T: LcFloat>(
    psi: &SampledSignal<T>,
    m: &CanonicalMatrix<T>,
) -> Result<(T, T)> {
    m.require_b()?;
    let spectrum = lct_fast(psi, m)?;
    admissibility_from_spectrum(&spectrum)
}

/// Pair admissibility constant
/// `C_{psi,phi,M} = int_0^inf conj(Psi(u)) Phi(u) du/u`
/// evaluated on both half-lines; errors unless the two values agree and the
/// common value is nonzero.
pub fn pair_admissibility<T: LcFloat>(
    psi: &LcWavelet<T>,
    phi: &LcWavelet<T>,
    tol: T,
) -> Result<Complex<T>> {
    if psi.matrix() != phi.matrix() {
        return Err(LcwtError::NotAPair(
            "wavelets carry different matrices".into(),
        ));
    }
    let v_min = T::of(ADMISSIBILITY_U_MIN.ln());
    let v_max = T::of(ADMISSIBILITY_U_MAX.ln());
    let n = ADMISSIBILITY_NODES;
    let h = (v_max - v_min) / T::from_usize(n - 1).unwrap();
    let mut sides = [Complex::new(T::zero(), T::zero()); 2];
    for (s, side) in [T::one(), -T::one()].into_iter().enumerate() {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            let u = (v_min + h * T::from_usize(i).unwrap()).exp();
            let w = if i == 0 || i == n - 1 {
                T::of(0.5)
            } else {
                T::one()
            };
            acc += psi.eval_spectrum(side * u).conj() * phi.eval_spectrum(side * u) * w;
        }
        sides[s] = acc * h;
    }
    let diff = (sides[0] - sides[1]).norm();
    let mag = sides[0].norm().max(sides[1].norm());
    if mag < T::of(1e-10) {
        return Err(LcwtError::NotAPair(format!(
            "pair constant ~0 (|C| = {:e})",
            mag.to_f64_lossy()
        )));
    }
    if diff > tol * mag {
        return Err(LcwtError::NotAPair(format!(
            "half-line constants differ: {:?} vs {:?}",
            (sides[0].re.to_f64_lossy(), sides[0].im.to_f64_lossy()),
            (sides[1].re.to_f64_lossy(), sides[1].im.to_f64_lossy()),
        )));
    }
    Ok((sides[0] + sides[1]) * T::of(0.5))
}

/// Smallest `|u|` interval containing the requested fraction of the combined
/// admissibility mass, grown symmetrically in log-u from the density peak.
fn admissibility_band_of<T: LcFloat>(spectrum: &LctSpectrum<T>, mass: T) -> (T, T) {
    let v_min = T::of(ADMISSIBILITY_U_MIN.ln());
    let v_max = T::of(ADMISSIBILITY_U_MAX.ln());
    let n = ADMISSIBILITY_NODES;
    let h = (v_max - v_min) / T::from_usize(n - 1).unwrap();
    // Combined density over both half-lines at |u| = e^v.
    let density: Vec<T> = (0..n)
        .map(|i| {
            let u = (v_min + h * T::from_usize(i).unwrap()).exp();
            let p = cubic_interp(spectrum.xi0(), spectrum.dxi(), spectrum.values(), u).norm_sqr();
            let q = cubic_interp(spectrum.xi0(), spectrum.dxi(), spectrum.values(), -u).norm_sqr();
            p + q
        })
        .collect();
    let total: T = density.iter().copied().sum();
    let peak = density
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(n / 2);
    let mut lo = peak;
    let mut hi = peak;
    let mut acc = density[peak];
    let target = mass * total;
    while acc < target && (lo > 0 || hi + 1 < n) {
        let grow_lo = if lo > 0 { density[lo - 1] } else { T::neg_infinity() };
        let grow_hi = if hi + 1 < n {
            density[hi + 1]
        } else {
            T::neg_infinity()
        };
        if grow_lo >= grow_hi {
            lo -= 1;
            acc += density[lo];
        } else {
            hi += 1;
            acc += density[hi];
        }
    }
    (
        (v_min + h * T::from_usize(lo).unwrap()).exp(),
        (v_min + h * T::from_usize(hi).unwrap()).exp(),
    )
}
