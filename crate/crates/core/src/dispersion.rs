//! Hilbert transforms, dispersion relations and the sum-over-poles expansion.
//!
//! Sign convention: the Hilbert transform is
//!
//! ```text
//! H[f](p) = (1/pi) PV int f(p') / (p - p') dp'
//! ```
//!
//! so `H[cos] = sin` and `H[exp(i w p)] = -i sign(w) exp(i w p)`. In terms of
//! the half-line projectors `P+`/`P-` onto the positive and negative conjugate
//! coordinate, `H[F] = i (P+ - P-) F`: a component `exp(i w p)` of a momentum
//! function comes from the conjugate coordinate `x = -w`, so the coordinate
//! sign mask `sign(x)` acts as `-sign(w)`.
//!
//! Two independent realizations are provided: [`hilbert_pv`] evaluates the PV
//! convolution on the grid, [`hilbert_spectral`] applies the sign mask to the
//! discrete Fourier coefficients. Their agreement on decaying signals is the
//! central check of this module.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{halfline_kernel, Side};
use crate::quadrature::{cauchy_at, cauchy_convolve, convolve_split_kernel, QuadratureConfig};
use crate::report::ReportEntry;
use crate::signal::{sup_norm, DomainLabel, SampledSignal, UniformGrid};

/// Relative tolerance of the causal-spectrum dispersion check.
pub const CAUSAL_TOLERANCE: f64 = 5e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HilbertMethod {
    PvConvolution,
    SpectralSign,
}

/// A signal together with its Hilbert transform on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertPair {
    original: SampledSignal,
    transform: SampledSignal,
    method: HilbertMethod,
}

impl HilbertPair {
    pub fn pv(original: SampledSignal, cfg: &QuadratureConfig) -> Result<Self> {
        let transform = hilbert_pv(&original, cfg)?;
        Ok(Self {
            original,
            transform,
            method: HilbertMethod::PvConvolution,
        })
    }

    pub fn spectral(original: SampledSignal) -> Result<Self> {
        let transform = hilbert_spectral(&original)?;
        Ok(Self {
            original,
            transform,
            method: HilbertMethod::SpectralSign,
        })
    }

    pub fn original(&self) -> &SampledSignal {
        &self.original
    }

    pub fn transform(&self) -> &SampledSignal {
        &self.transform
    }

    pub fn method(&self) -> HilbertMethod {
        self.method
    }

    /// Recovers the original from the transform with the same method
    /// (`H^-1 = -H`). Exact only for the zero-mean part under the spectral method.
    pub fn invert(&self, cfg: &QuadratureConfig) -> Result<SampledSignal> {
        let back = match self.method {
            HilbertMethod::PvConvolution => hilbert_pv(&self.transform, cfg)?,
            HilbertMethod::SpectralSign => hilbert_spectral(&self.transform)?,
        };
        Ok(back.scale(Complex64::new(-1.0, 0.0)))
    }
}

/// `H[f](p_i) = (1/pi) PV sum_j f(p_j) / (p_i - p_j) dp`.
pub fn hilbert_pv(f: &SampledSignal, cfg: &QuadratureConfig) -> Result<SampledSignal> {
    let values = cauchy_convolve(f.values(), f.grid(), Complex64::new(1.0 / PI, 0.0), cfg)?;
    f.with_values(values)
}

/// `i (P+ - P-) f` via the discrete Fourier transform: each coefficient is
/// multiplied by `-i sign(w)`. The zero-frequency bin, and the Nyquist bin of
/// an even-length grid, belong to neither half-line and are mapped to zero.
pub fn hilbert_spectral(f: &SampledSignal) -> Result<SampledSignal> {
    let n = f.len();
    let mut buf = f.values().to_vec();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for (k, v) in buf.iter_mut().enumerate() {
        let mask = if k == 0 || 2 * k == n {
            0.0
        } else if 2 * k < n {
            1.0
        } else {
            -1.0
        };
        *v *= Complex64::new(0.0, -mask * scale);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    f.with_values(buf)
}

/// Removes the components [`hilbert_spectral`] annihilates: the mean, and the
/// Nyquist component of an even-length grid. What remains satisfies `H(H f) = -f`.
pub fn remove_zero_modes(f: &SampledSignal) -> Result<SampledSignal> {
    let n = f.len();
    let mean: Complex64 = f.values().iter().sum::<Complex64>() / n as f64;
    let nyquist: Complex64 = if n.is_multiple_of(2) {
        f.values()
            .iter()
            .enumerate()
            .map(|(j, v)| if j % 2 == 0 { *v } else { -*v })
            .sum::<Complex64>()
            / n as f64
    } else {
        Complex64::new(0.0, 0.0)
    };
    let values = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let alt = if j % 2 == 0 { 1.0 } else { -1.0 };
            v - mean - nyquist * alt
        })
        .collect();
    f.with_values(values)
}

/// Convolution with the half-line kernel: keeps the positive (`Plus`) or
/// negative (`Minus`) momentum content of a coordinate-space signal.
pub fn halfline_projection(
    f: &SampledSignal,
    side: Side,
    cfg: &QuadratureConfig,
) -> Result<SampledSignal> {
    convolve_split_kernel(&halfline_kernel(side), f, cfg)
}

/// `P+ f = f/2 + (i/2) H[f]`: the one-sided-spectrum part of `f`.
pub fn analytic_projection(f: &SampledSignal, cfg: &QuadratureConfig) -> Result<SampledSignal> {
    halfline_projection(f, Side::Plus, cfg)
}

/// Right-hand side of the dispersion relation a half-line projected signal
/// satisfies.
///
/// For coordinate or time signals, projected onto positive (`Plus`) or
/// negative momenta: `+-(1/(pi i)) PV int g(x') / (x' - x) dx'`.
///
/// For momentum or frequency signals, projected onto the positive (`Plus`) or
/// negative conjugate half-line: `+-(1/(pi i)) PV int g(p') / (p - p') dp'`.
/// The spectrum of a causal time signal satisfies the `Plus` form.
pub fn dispersion_rhs(
    g: &SampledSignal,
    side: Side,
    cfg: &QuadratureConfig,
) -> Result<SampledSignal> {
    let coeff = dispersion_coeff(g.domain(), side);
    g.with_values(cauchy_convolve(g.values(), g.grid(), coeff, cfg)?)
}

/// Coefficient `c` with the relation written as `PV int c / (x - x') g(x') dx'`.
fn dispersion_coeff(domain: DomainLabel, side: Side) -> Complex64 {
    let s = side.sign();
    match domain {
        // (1/(pi i)) / (x' - x) = (i/pi) / (x - x')
        DomainLabel::Coordinate | DomainLabel::Time => Complex64::new(0.0, s / PI),
        // (1/(pi i)) / (p - p')
        DomainLabel::Momentum | DomainLabel::Frequency => Complex64::new(0.0, -s / PI),
    }
}

/// `sup |g - rhs|` over the central third, with `rhs` from [`dispersion_rhs`].
/// Small values support the hypothesis that `g` lies in the half-line subspace.
pub fn dispersion_residual(g: &SampledSignal, side: Side, cfg: &QuadratureConfig) -> Result<f64> {
    let rhs = dispersion_rhs(g, side, cfg)?;
    g.central_sup_distance(&rhs)
}

/// `F(w) = (1/sqrt(2 pi)) int exp(-i w t) u(t) dt` on `omega`, by trapezoid
/// over the time grid. When `causal_boundary` is set the integral starts at the
/// node `t = 0` with a half weight, as for a signal that jumps there.
pub fn fourier_spectrum(
    u: &SampledSignal,
    omega: &UniformGrid,
    causal_boundary: bool,
) -> Result<SampledSignal> {
    let tg = u.grid();
    let h = tg.step();
    let n = tg.count();
    let start = if causal_boundary {
        tg.node_index(0.0)
            .ok_or_else(|| Error::invalid("u", "causal boundary t = 0 is not a grid node"))?
    } else {
        0
    };
    let mut weights = vec![h; n];
    weights[start] = h / 2.0;
    weights[n - 1] = h / 2.0;
    weights.iter_mut().take(start).for_each(|w| *w = 0.0);

    let norm = 1.0 / (2.0 * PI).sqrt();
    let t0 = tg.point(start);
    let weighted: Vec<Complex64> = u
        .values()
        .iter()
        .zip(&weights)
        .map(|(v, w)| v * w)
        .collect();
    let values = omega
        .points()
        .map(|w| {
            let step_phase = Complex64::from_polar(1.0, -w * h);
            let mut phase = Complex64::from_polar(1.0, -w * t0);
            let mut acc = Complex64::new(0.0, 0.0);
            for v in &weighted[start..] {
                acc += v * phase;
                phase *= step_phase;
            }
            acc * norm
        })
        .collect();
    SampledSignal::new(*omega, values, DomainLabel::Frequency)
}

/// Frequency grid used by [`causal_spectrum_check`]: step `cfg.step`, half width
/// `L` capped at half the Nyquist frequency of the time grid.
pub fn causal_frequency_grid(time: &UniformGrid, cfg: &QuadratureConfig) -> Result<UniformGrid> {
    let nyquist = PI / time.step();
    UniformGrid::symmetric(cfg.half_width.min(0.5 * nyquist), cfg.step)
}

/// Checks that the spectrum of a time signal satisfies the causal dispersion
/// relation `F(w) = (-1/(i pi)) PV int F(w') / (w' - w) dw'`.
///
/// The residual is `sup |F - rhs| / sup |F|` over the central third of the
/// frequency grid. Samples at `t < 0` do not stop the check; their count is
/// reported as `noncausal_samples` and such input is expected to fail.
pub fn causal_spectrum_check(u: &SampledSignal, cfg: &QuadratureConfig) -> Result<ReportEntry> {
    cfg.validate()?;
    let tg = u.grid();
    let noncausal = tg
        .points()
        .zip(u.values())
        .filter(|(t, v)| *t < -0.5 * tg.step() && v.norm() > 0.0)
        .count();
    let boundary = noncausal == 0 && tg.node_index(0.0).is_some();
    let omega = causal_frequency_grid(tg, cfg)?;
    let spectrum = fourier_spectrum(u, &omega, boundary)?;
    let rhs = dispersion_rhs(&spectrum, Side::Plus, cfg)?;
    let scale = spectrum.central_sup_norm().max(sup_norm(spectrum.values()));
    let distance = spectrum.central_sup_distance(&rhs)?;
    let residual = if scale > 0.0 { distance / scale } else { 0.0 };
    Ok(ReportEntry::new(
        "causal spectrum dispersion",
        "Eq 3.20",
        residual,
        CAUSAL_TOLERANCE,
    )
    .param("noncausal_samples", noncausal as u64)
    .param("omega_max", omega.x_max())
    .param("L", cfg.half_width)
    .sides(spectrum.central_sup_norm(), rhs.central_sup_norm()))
}

/// The `P+ - P-` spectrum `-i H[F]` of a momentum-space function.
pub fn difference_spectrum(f: &SampledSignal) -> Result<SampledSignal> {
    Ok(hilbert_spectral(f)?.scale(Complex64::new(0.0, -1.0)))
}

/// Sum-over-poles value at node `p`:
/// `(1/(pi i)) PV int <p'|(P+ - P-)|f> / (p - p') dp'`, with the difference
/// spectrum from [`difference_spectrum`]. Reproduces `F(p)`.
pub fn sum_over_poles(f: &SampledSignal, p: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let grid = f.grid();
    if !(p >= grid.x_min() && p <= grid.x_max()) {
        return Err(Error::OutsideDomain {
            point: p,
            lo: grid.x_min(),
            hi: grid.x_max(),
        });
    }
    let i = grid.node_index(p).ok_or(Error::OffGrid { point: p })?;
    let diff = difference_spectrum(f)?;
    cauchy_at(diff.values(), grid, i, pole_coeff(), cfg)
}

/// [`sum_over_poles`] at every grid node.
pub fn sum_over_poles_signal(f: &SampledSignal, cfg: &QuadratureConfig) -> Result<SampledSignal> {
    let diff = difference_spectrum(f)?;
    f.with_values(cauchy_convolve(diff.values(), f.grid(), pole_coeff(), cfg)?)
}

/// `1/(pi i)`.
fn pole_coeff() -> Complex64 {
    Complex64::new(0.0, -1.0 / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Rule;
    use approx::assert_relative_eq;

    fn cfg(l: f64, h: f64) -> QuadratureConfig {
        QuadratureConfig::new(l, h, h, Rule::Trapezoid).unwrap()
    }

    fn real_signal(g: UniformGrid, f: impl Fn(f64) -> f64) -> SampledSignal {
        SampledSignal::from_real_fn(g, DomainLabel::Momentum, f).unwrap()
    }

    /// Dense half-domain oracle for the spectral method: sum over the discrete
    /// conjugate coordinates, split by sign, transform back.
    fn dense_sign_mask(f: &SampledSignal) -> Vec<Complex64> {
        let n = f.len() as i64;
        let vals = f.values();
        let mut out = vec![Complex64::new(0.0, 0.0); n as usize];
        for kk in 0..n {
            let w = if 2 * kk < n { kk } else { kk - n };
            let sign = if w == 0 || 2 * w == n || 2 * w == -n {
                0.0
            } else {
                (w as f64).signum()
            };
            if sign == 0.0 {
                continue;
            }
            let coef: Complex64 = (0..n)
                .map(|j| {
                    vals[j as usize]
                        * Complex64::from_polar(1.0, -2.0 * PI * (kk * j) as f64 / n as f64)
                })
                .sum::<Complex64>()
                / n as f64;
            for (j, o) in out.iter_mut().enumerate() {
                *o += coef
                    * Complex64::from_polar(1.0, 2.0 * PI * (kk * j as i64) as f64 / n as f64)
                    * Complex64::new(0.0, -sign);
            }
        }
        out
    }

    #[test]
    fn spectral_matches_dense_oracle() {
        for n in [16usize, 17] {
            let g = UniformGrid::new(-3.0, 0.4, n).unwrap();
            let f = SampledSignal::from_fn(g, DomainLabel::Momentum, |p| {
                Complex64::new((0.7 * p).sin() + 0.2, (-p * p).exp())
            })
            .unwrap();
            let fast = hilbert_spectral(&f).unwrap();
            let slow = dense_sign_mask(&f);
            for (a, b) in fast.values().iter().zip(&slow) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_phase_shifts_exponentials() {
        let n = 64;
        let g = UniformGrid::new(0.0, 0.1, n).unwrap();
        for k in [3i64, -5] {
            let w = 2.0 * PI * k as f64 / (n as f64 * 0.1);
            let f = SampledSignal::from_fn(g, DomainLabel::Momentum, |p| {
                Complex64::new(0.0, w * p).exp()
            })
            .unwrap();
            let h = hilbert_spectral(&f).unwrap();
            let expected = f.scale(Complex64::new(0.0, -(k as f64).signum()));
            assert!(h.sub(&expected).unwrap().sup_norm() < 1e-12);
        }
        let constant = real_signal(g, |_| 2.5);
        assert!(hilbert_spectral(&constant).unwrap().sup_norm() < 1e-13);
    }

    #[test]
    fn spectral_double_application_is_minus_identity() {
        for n in [200usize, 201] {
            let g = UniformGrid::new(-10.0, 0.1, n).unwrap();
            let f = SampledSignal::from_fn(g, DomainLabel::Momentum, |p| {
                Complex64::new((-p * p / 4.0).exp() + 0.3 * p.cos(), 0.1 * p)
            })
            .unwrap();
            let f0 = remove_zero_modes(&f).unwrap();
            let twice = hilbert_spectral(&hilbert_spectral(&f0).unwrap()).unwrap();
            assert!(twice.add(&f0).unwrap().sup_norm() < 1e-10);
        }
    }

    #[test]
    fn pv_hilbert_of_lorentzian() {
        // H[1/(1+p^2)](p) = p/(1+p^2) under the (1/pi) PV int f/(p - p') convention.
        let c = cfg(400.0, 0.05);
        let g = c.default_grid().unwrap();
        let f = real_signal(g, |p| 1.0 / (1.0 + p * p));
        let h = hilbert_pv(&f, &c).unwrap();
        let expected = real_signal(g, |p| p / (1.0 + p * p));
        assert!(h.central_sup_distance(&expected).unwrap() < 1e-2);
        let i = g.node_index(1.0).unwrap();
        assert_relative_eq!(h.values()[i].re, 0.5, epsilon = 1e-2);

        let zero = SampledSignal::zeros(g, DomainLabel::Momentum);
        assert_eq!(hilbert_pv(&zero, &c).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn analytic_projection_examples() {
        let c = cfg(200.0, 0.05);
        let g = c.default_grid().unwrap();
        let b = 2.0;
        let cosine =
            SampledSignal::from_real_fn(g, DomainLabel::Coordinate, |x| (b * x).cos()).unwrap();
        let half_exp = SampledSignal::from_fn(g, DomainLabel::Coordinate, |x| {
            Complex64::new(0.0, b * x).exp() * 0.5
        })
        .unwrap();
        let out = analytic_projection(&cosine, &c).unwrap();
        assert!(out.central_sup_distance(&half_exp).unwrap() < 1e-2);

        let zero = SampledSignal::zeros(g, DomainLabel::Coordinate);
        assert_eq!(analytic_projection(&zero, &c).unwrap().sup_norm(), 0.0);
        assert_eq!(dispersion_residual(&zero, Side::Plus, &c).unwrap(), 0.0);
    }

    #[test]
    fn dispersion_residual_separates() {
        let c = cfg(100.0, 0.05);
        let g = c.default_grid().unwrap();
        let gauss =
            SampledSignal::from_real_fn(g, DomainLabel::Coordinate, |x| (-x * x).exp()).unwrap();
        let projected = analytic_projection(&gauss, &c).unwrap();
        assert!(dispersion_residual(&projected, Side::Plus, &c).unwrap() < 5e-2);
        assert!(dispersion_residual(&gauss, Side::Plus, &c).unwrap() > 0.3);
        let lower = halfline_projection(&gauss, Side::Minus, &c).unwrap();
        assert!(dispersion_residual(&lower, Side::Minus, &c).unwrap() < 5e-2);
        assert!(dispersion_residual(&lower, Side::Plus, &c).unwrap() > 0.3);
    }

    #[test]
    fn causal_examples() {
        let c = cfg(400.0, 0.05);
        let tg = UniformGrid::symmetric(40.0, 0.01).unwrap();
        let causal = SampledSignal::from_real_fn(tg, DomainLabel::Time, |t| {
            if t >= 0.0 {
                (-t).exp()
            } else {
                0.0
            }
        })
        .unwrap();
        let e = causal_spectrum_check(&causal, &c).unwrap();
        assert!(e.passed(), "{e}");
        assert_eq!(e.parameters["noncausal_samples"], 0);

        let even =
            SampledSignal::from_real_fn(tg, DomainLabel::Time, |t| (-t.abs()).exp()).unwrap();
        let e = causal_spectrum_check(&even, &c).unwrap();
        assert!(e.residual >= 0.3, "{e}");
        assert!(e.parameters["noncausal_samples"].as_u64().unwrap() > 0);

        let zero = SampledSignal::zeros(tg, DomainLabel::Time);
        assert_eq!(causal_spectrum_check(&zero, &c).unwrap().residual, 0.0);
    }

    #[test]
    fn fourier_spectrum_of_one_pole() {
        let tg = UniformGrid::symmetric(40.0, 0.01).unwrap();
        let u = SampledSignal::from_real_fn(tg, DomainLabel::Time, |t| {
            if t >= 0.0 {
                (-t).exp()
            } else {
                0.0
            }
        })
        .unwrap();
        let omega = UniformGrid::symmetric(5.0, 0.5).unwrap();
        let f = fourier_spectrum(&u, &omega, true).unwrap();
        for (w, v) in omega.points().zip(f.values()) {
            let exact = Complex64::new(1.0, w).inv() / (2.0 * PI).sqrt();
            assert!((v - exact).norm() < 1e-4, "w={w}: {v} vs {exact}");
        }
    }

    #[test]
    fn sum_over_poles_reproduces_gaussian_spectrum() {
        let c = cfg(200.0, 0.05);
        let g = c.default_grid().unwrap();
        // Momentum amplitude of exp(-x^2).
        let f = real_signal(g, |p| (-p * p / 4.0).exp() / 2f64.sqrt());
        let v = sum_over_poles(&f, 0.0, &c).unwrap();
        assert!(
            (v - f.values()[g.node_index(0.0).unwrap()]).norm() < 5e-2,
            "{v}"
        );
        assert!(matches!(
            sum_over_poles(&f, 500.0, &c),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(matches!(
            sum_over_poles(&f, 0.012, &c),
            Err(Error::OffGrid { .. })
        ));
        let zero = SampledSignal::zeros(g, DomainLabel::Momentum);
        assert_eq!(sum_over_poles(&zero, 0.0, &c).unwrap().norm(), 0.0);
    }

    #[test]
    fn hilbert_pair_inverts() {
        let g = UniformGrid::symmetric(20.0, 0.05).unwrap();
        let f = real_signal(g, |p| p * (-p * p).exp());
        let pair = HilbertPair::spectral(f.clone()).unwrap();
        assert_eq!(pair.method(), HilbertMethod::SpectralSign);
        let back = pair.invert(&cfg(20.0, 0.05)).unwrap();
        assert!(
            back.sub(&remove_zero_modes(&f).unwrap())
                .unwrap()
                .sup_norm()
                < 1e-10
        );
        // Real input, real transform.
        assert!(pair.transform().values().iter().all(|v| v.im.abs() < 1e-12));
    }
}
