//! The identity suite: every verified identity at desk scale, as report entries.
//!
//! Tolerances are fixed here for the default [`QuadratureConfig`]
//! (`L = 400`, step `0.05`, `eps = 0.05`, trapezoid). Other configs run the same
//! checks against the same tolerances; a coarse config is expected to fail.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::discrete::{
    dft_basis_vector, incomplete_kronecker_closed, incomplete_kronecker_sum, project_signal,
    support_test, DiscreteProjection, DiscreteSignal,
};
use crate::dispersion::{
    analytic_projection, causal_spectrum_check, dispersion_residual, hilbert_pv, hilbert_spectral,
    remove_zero_modes,
};
use crate::error::Result;
use crate::io::{parse_records, signal_from_records, write_signal_to};
use crate::kernels::{sinc_unchecked, BandParams, Side};
use crate::quadrature::{
    bandlimit_project, double_pole_apply, reproduce_identity_check, QuadratureConfig,
};
use crate::report::{IdentityReport, ReportEntry};
use crate::signal::{DomainLabel, SampledSignal, UniformGrid};

/// One section of the suite.
pub type Section = fn(Level, &QuadratureConfig) -> Result<Vec<ReportEntry>>;

const SEED: u64 = 0x5eed_2024;

pub const EXPONENTIAL_TOLERANCE: f64 = 1e-2;
pub const EXPONENTIAL_REJECT_TOLERANCE: f64 = 2e-2;
pub const SCALING_TOLERANCE: f64 = 1e-12;
pub const DOUBLE_POLE_TOLERANCE: f64 = 5e-2;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;
pub const PROJECTOR_TOLERANCE: f64 = 1e-12;
pub const SUPPORT_FRACTION_TOLERANCE: f64 = 1e-10;
pub const HILBERT_INVERSE_TOLERANCE: f64 = 1e-10;
pub const HILBERT_AGREEMENT_TOLERANCE: f64 = 1e-2;
pub const DISPERSION_TOLERANCE: f64 = 5e-2;
/// Controls that violate a dispersion relation must exceed this residual.
pub const SEPARATION_THRESHOLD: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Fewer random samples and smaller discrete dimensions.
    Quick,
    #[default]
    Desk,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "desk" => Ok(Level::Desk),
            other => Err(format!(
                "unknown suite level `{other}` (expected quick or desk)"
            )),
        }
    }
}

/// Runs every check and collects the entries.
pub fn run(level: Level, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    let mut report = IdentityReport::new(*cfg);
    let sections: [Section; 11] = [
        reproducing_identity,
        exponential_reproduction,
        scaling_law,
        smeared_pv_identity,
        kronecker_closed_form,
        kronecker_projector,
        discrete_reproduction,
        hilbert_pair,
        dispersion_relation,
        causal_spectrum,
        signal_round_trip,
    ];
    for section in sections {
        for entry in section(level, cfg)? {
            report.push(entry);
        }
    }
    Ok(report)
}

/// Entry that passes when a control's residual reaches `threshold`; the
/// recorded residual is the shortfall below it.
fn rejection(identity: &str, equation: &str, control_residual: f64, threshold: f64) -> ReportEntry {
    ReportEntry::new(
        identity,
        equation,
        (threshold - control_residual).max(0.0),
        0.0,
    )
    .sides(control_residual, threshold)
    .param("threshold", threshold)
}

/// Sinc reproducing identity for `a in {1, 2, 5}` at random pairs
/// `|x - x'| <= 5`, plus the error trend as `L` doubles.
pub fn reproducing_identity(level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let pairs = match level {
        Level::Quick => 5,
        Level::Desk => 20,
    };
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for a in [1.0, 2.0, 5.0] {
        let band = BandParams::new(a)?;
        let mut worst: Option<ReportEntry> = None;
        for _ in 0..pairs {
            let x = rng.random_range(-10.0..10.0);
            let x2 = x + rng.random_range(-5.0..=5.0);
            let e = reproduce_identity_check(band, x, x2, cfg)?;
            if worst.as_ref().is_none_or(|w| e.residual > w.residual) {
                worst = Some(e);
            }
        }
        let worst = worst.expect("at least one pair");
        out.push(
            ReportEntry::new(
                "sinc reproducing kernel (worst pair)",
                "Eq 3.3",
                worst.residual,
                worst.tolerance,
            )
            .param("a", a)
            .param("pairs", pairs as u64)
            .param("worst_x", worst.parameters["x"].clone())
            .param("worst_x2", worst.parameters["x2"].clone())
            .sides(worst.lhs, worst.rhs),
        );
    }

    // Error at x = x' for L/4, L/2, L: each doubling must reduce it.
    let band = BandParams::new(2.0)?;
    let errors: Vec<f64> = [0.25, 0.5, 1.0]
        .iter()
        .map(|f| {
            reproduce_identity_check(band, 0.0, 0.0, &cfg.with_half_width(cfg.half_width * f))
                .map(|e| e.residual)
        })
        .collect::<Result<_>>()?;
    let worst_ratio = errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    out.push(
        ReportEntry::new(
            "sinc reproducing kernel convergence in L",
            "Eq 3.3",
            worst_ratio,
            0.99,
        )
        .param("a", 2.0)
        .param("errors", errors),
    );
    Ok(out)
}

/// Band projection of `exp(ibx)` for `b = 1` (kept) and `b = 3` (removed), `a = 2`.
pub fn exponential_reproduction(_level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let grid = UniformGrid::symmetric(200.0, 0.05)?;
    let band = BandParams::new(2.0)?;
    let wave = |b: f64| {
        SampledSignal::from_fn(grid, DomainLabel::Coordinate, move |x| {
            Complex64::new(0.0, b * x).exp()
        })
    };

    let kept = wave(1.0)?;
    let g = bandlimit_project(&kept, band, cfg)?;
    let err = g.central_sup_distance(&kept)?;
    let removed = wave(3.0)?;
    let g3 = bandlimit_project(&removed, band, cfg)?;
    let leak = g3.central_sup_norm();
    Ok(vec![
        ReportEntry::new(
            "band projection keeps in-band exponential",
            "Eq 3.5",
            err,
            EXPONENTIAL_TOLERANCE,
        )
        .param("a", 2.0)
        .param("b", 1.0),
        ReportEntry::new(
            "band projection removes out-of-band exponential",
            "Eq 3.5",
            leak,
            EXPONENTIAL_REJECT_TOLERANCE,
        )
        .param("a", 2.0)
        .param("b", 3.0),
    ])
}

/// `sinc(b dx; a) = sinc(dx; a|b|) / |b|` at random triples.
pub fn scaling_law(level: Level, _cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let samples = match level {
        Level::Quick => 1_000,
        Level::Desk => 10_000,
    };
    let mut rng = StdRng::seed_from_u64(SEED ^ 3);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let b = loop {
            let b: f64 = rng.random_range(-10.0..10.0);
            if b.abs() > 1e-3 {
                break b;
            }
        };
        let dx = rng.random_range(-50.0..50.0);
        let a = rng.random_range(0.01..20.0);
        let lhs = sinc_unchecked(b * dx, a);
        let rhs = sinc_unchecked(dx, a * b.abs()) / b.abs();
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok(vec![ReportEntry::new(
        "sinc scaling law",
        "Eq 3.6",
        worst,
        SCALING_TOLERANCE,
    )
    .param("samples", samples as u64)])
}

fn gaussian_double_pole_error(cfg: &QuadratureConfig) -> Result<f64> {
    let grid = cfg.default_grid()?;
    let f = SampledSignal::from_real_fn(grid, DomainLabel::Coordinate, |x| (-x * x).exp())?;
    double_pole_apply(&f, cfg)?.central_sup_distance(&f)
}

/// Iterated double-PV reconstruction of a Gaussian, and its `O(1/L)` convergence.
pub fn smeared_pv_identity(_level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let errors: Vec<f64> = [0.25, 0.5, 1.0]
        .iter()
        .map(|f| gaussian_double_pole_error(&cfg.with_half_width(cfg.half_width * f)))
        .collect::<Result<_>>()?;
    let worst_ratio = errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    Ok(vec![
        ReportEntry::new(
            "double principal value reproduces f",
            "Eq 3.15a",
            errors[2],
            DOUBLE_POLE_TOLERANCE,
        )
        .param("signal", "exp(-x^2)"),
        ReportEntry::new(
            "double principal value convergence in L",
            "Eq 3.15a",
            worst_ratio,
            0.5,
        )
        .param("errors", errors),
    ])
}

/// Closed form against the direct sum for every contiguous band and entry.
pub fn kronecker_closed_form(level: Level, _cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let max_dim = match level {
        Level::Quick => 12,
        Level::Desk => 32,
    };
    let mut worst = 0.0f64;
    let mut cases = 0u64;
    for dim in 1..=max_dim {
        for k1 in 1..=dim {
            for k2 in k1..=dim {
                let p = DiscreteProjection::contiguous(dim, k1, k2)?;
                let m = incomplete_kronecker_sum(&p);
                for k in 1..=dim {
                    for n in 1..=dim {
                        let closed = incomplete_kronecker_closed(&p, k, n)?;
                        worst = worst.max((closed - m.entry(k, n)).norm());
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(vec![ReportEntry::new(
        "incomplete Kronecker closed form",
        "Eq 4.10",
        worst,
        CLOSED_FORM_TOLERANCE,
    )
    .param("max_K", max_dim as u64)
    .param("entries", cases)])
}

/// Bands checked for the projector properties: all of them up to `K = 16`,
/// 16 random ones per dimension above.
fn projector_bands(max_dim: usize) -> Result<Vec<DiscreteProjection>> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 6);
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        if dim <= 16 {
            for k1 in 1..=dim {
                for k2 in k1..=dim {
                    out.push(DiscreteProjection::contiguous(dim, k1, k2)?);
                }
            }
        } else {
            for _ in 0..16 {
                let a = rng.random_range(1..=dim);
                let b = rng.random_range(1..=dim);
                out.push(DiscreteProjection::contiguous(dim, a.min(b), a.max(b))?);
            }
        }
    }
    Ok(out)
}

/// `M^2 = M`, `M = M^dagger` and `tr M = K2 - K1 + 1`.
pub fn kronecker_projector(level: Level, _cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let max_dim = match level {
        Level::Quick => 24,
        Level::Desk => 64,
    };
    let (mut idem, mut herm, mut trace) = (0.0f64, 0.0f64, 0.0f64);
    let bands = projector_bands(max_dim)?;
    for p in &bands {
        let m = incomplete_kronecker_sum(p);
        idem = idem.max(m.idempotency_defect());
        herm = herm.max(m.hermiticity_defect());
        trace = trace.max((m.trace() - Complex64::new(p.rank() as f64, 0.0)).norm());
    }
    let n = bands.len() as u64;
    Ok(vec![
        ReportEntry::new(
            "incomplete Kronecker idempotency",
            "Eq 4.11",
            idem,
            PROJECTOR_TOLERANCE,
        )
        .param("bands", n),
        ReportEntry::new(
            "incomplete Kronecker hermiticity",
            "Eq 2.8b",
            herm,
            PROJECTOR_TOLERANCE,
        )
        .param("bands", n),
        ReportEntry::new(
            "incomplete Kronecker trace equals rank",
            "Eq 4.10",
            trace,
            PROJECTOR_TOLERANCE,
        )
        .param("bands", n),
    ])
}

/// Basis vectors in the band are fixed, those outside are removed, and the
/// support residual of a mixed signal equals its out-of-band fraction.
pub fn discrete_reproduction(level: Level, _cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let dims: &[usize] = match level {
        Level::Quick => &[8, 16],
        Level::Desk => &[8, 16, 32, 64],
    };
    let mut rng = StdRng::seed_from_u64(SEED ^ 7);
    let (mut fixed, mut removed, mut fraction) = (0.0f64, 0.0f64, 0.0f64);
    for &dim in dims {
        let k1 = dim / 4;
        let k2 = dim / 2;
        let p = DiscreteProjection::contiguous(dim, k1, k2)?;
        let mut inband = DiscreteSignal::zeros(dim);
        let mut outband = DiscreteSignal::zeros(dim);
        for k in 1..=dim {
            let v = dft_basis_vector(dim, k)?;
            let pv = project_signal(&v, &p)?;
            if p.contains(k) {
                fixed = fixed.max(pv.max_abs_diff(&v));
                let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                inband = inband.add(&v.scale(c))?;
            } else {
                removed = removed.max(pv.max_abs_diff(&DiscreteSignal::zeros(dim)));
                let c = Complex64::new(rng.random_range(-0.2..0.2), rng.random_range(-0.2..0.2));
                outband = outband.add(&v.scale(c))?;
            }
        }
        let mixed = inband.add(&outband)?;
        let expected = outband.norm() / (inband.norm().powi(2) + outband.norm().powi(2)).sqrt();
        let verdict = support_test(&mixed, &p, 1e-6)?;
        fraction = fraction.max((verdict.residual - expected).abs());
    }
    Ok(vec![
        ReportEntry::new(
            "in-band basis vectors are fixed",
            "Eq 4.12",
            fixed,
            PROJECTOR_TOLERANCE,
        ),
        ReportEntry::new(
            "out-of-band basis vectors are annihilated",
            "Eq 4.12",
            removed,
            PROJECTOR_TOLERANCE,
        ),
        ReportEntry::new(
            "support residual equals out-of-band fraction",
            "Eq 4.12",
            fraction,
            SUPPORT_FRACTION_TOLERANCE,
        ),
    ])
}

/// Smooth decaying test signals for the Hilbert checks.
pub fn hilbert_test_signals(grid: UniformGrid) -> Result<Vec<(&'static str, SampledSignal)>> {
    let m = DomainLabel::Momentum;
    Ok(vec![
        (
            "exp(-p^2)",
            SampledSignal::from_real_fn(grid, m, |p| (-p * p).exp())?,
        ),
        (
            "p exp(-p^2/2)",
            SampledSignal::from_real_fn(grid, m, |p| p * (-p * p / 2.0).exp())?,
        ),
        (
            "sech(p)",
            SampledSignal::from_real_fn(grid, m, |p| 1.0 / p.cosh())?,
        ),
        (
            "cos(3p) exp(-p^2/8)",
            SampledSignal::from_real_fn(grid, m, |p| (3.0 * p).cos() * (-p * p / 8.0).exp())?,
        ),
        (
            "exp(2ip) exp(-(p-1)^2)",
            SampledSignal::from_fn(grid, m, |p| {
                Complex64::new(0.0, 2.0 * p).exp() * (-(p - 1.0) * (p - 1.0)).exp()
            })?,
        ),
    ])
}

/// Spectral `H(H f) = -f` on zero-mean signals, and PV against spectral agreement.
pub fn hilbert_pair(_level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let grid = cfg.default_grid()?;
    let mut inverse = 0.0f64;
    let mut agreement = 0.0f64;
    let mut worst_signal = "";
    for (name, f) in hilbert_test_signals(grid)? {
        let f0 = remove_zero_modes(&f)?;
        let twice = hilbert_spectral(&hilbert_spectral(&f0)?)?;
        inverse = inverse.max(twice.add(&f0)?.sup_norm());
        let d = hilbert_pv(&f, cfg)?.central_sup_distance(&hilbert_spectral(&f)?)?;
        if d > agreement {
            agreement = d;
            worst_signal = name;
        }
    }
    Ok(vec![
        ReportEntry::new(
            "spectral Hilbert transform squares to -1",
            "Eq 5.11b",
            inverse,
            HILBERT_INVERSE_TOLERANCE,
        ),
        ReportEntry::new(
            "PV and spectral Hilbert transforms agree",
            "Eq 5.11a",
            agreement,
            HILBERT_AGREEMENT_TOLERANCE,
        )
        .param("signals", 5u64)
        .param("worst_signal", worst_signal),
    ])
}

/// Smooth random-looking coordinate signals: sums of complex Gaussian bumps.
pub fn random_smooth_signals(
    grid: UniformGrid,
    count: usize,
    seed: u64,
) -> Result<Vec<SampledSignal>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let bumps: Vec<(Complex64, f64, f64)> = (0..3)
                .map(|_| {
                    let amp =
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    (amp, rng.random_range(-5.0..5.0), rng.random_range(0.5..2.0))
                })
                .collect();
            SampledSignal::from_fn(grid, DomainLabel::Coordinate, move |x| {
                bumps
                    .iter()
                    .map(|(a, c, w)| a * (-((x - c) / w).powi(2)).exp())
                    .sum()
            })
        })
        .collect()
}

/// Projected signals satisfy the half-line dispersion relation; a symmetric
/// Gaussian does not.
pub fn dispersion_relation(level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let grid = cfg.default_grid()?;
    let count = match level {
        Level::Quick => 1,
        Level::Desk => 3,
    };
    let mut worst = 0.0f64;
    for f in random_smooth_signals(grid, count, SEED ^ 9)? {
        let g = analytic_projection(&f, cfg)?;
        worst = worst.max(dispersion_residual(&g, Side::Plus, cfg)?);
    }
    let gauss = SampledSignal::from_real_fn(grid, DomainLabel::Coordinate, |x| (-x * x).exp())?;
    let control = dispersion_residual(&gauss, Side::Plus, cfg)?;
    Ok(vec![
        ReportEntry::new(
            "projected signals satisfy dispersion relation",
            "Eq 3.16a",
            worst,
            DISPERSION_TOLERANCE,
        )
        .param("signals", count as u64),
        rejection(
            "symmetric Gaussian violates dispersion relation",
            "Eq 3.16a",
            control,
            SEPARATION_THRESHOLD,
        ),
    ])
}

/// Causal `exp(-t)` passes the causal-spectrum relation; `exp(-|t|)` fails it.
pub fn causal_spectrum(_level: Level, cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let time = UniformGrid::symmetric(40.0, 0.01)?;
    let causal = SampledSignal::from_real_fn(time, DomainLabel::Time, |t| {
        if t >= 0.0 {
            (-t).exp()
        } else {
            0.0
        }
    })?;
    let even = SampledSignal::from_real_fn(time, DomainLabel::Time, |t| (-t.abs()).exp())?;
    let pass = causal_spectrum_check(&causal, cfg)?.param("signal", "exp(-t) [t >= 0]");
    let control = causal_spectrum_check(&even, cfg)?;
    Ok(vec![
        pass,
        rejection(
            "non-causal exp(-|t|) violates causal relation",
            "Eq 3.20",
            control.residual,
            SEPARATION_THRESHOLD,
        ),
    ])
}

/// Writes and re-reads a signal with awkward values; counts mismatched bits.
pub fn signal_round_trip(_level: Level, _cfg: &QuadratureConfig) -> Result<Vec<ReportEntry>> {
    let grid = UniformGrid::new(-3.7, 0.013, 257)?;
    let f = SampledSignal::from_fn(grid, DomainLabel::Coordinate, |x| {
        Complex64::new((PI * x).sin() / 3.0, 1e-300 * x.exp() + f64::EPSILON * x)
    })?;
    let mut buf = Vec::new();
    write_signal_to(&mut buf, &f)?;
    let label = Path::new("<memory>");
    let back = signal_from_records(
        parse_records(buf.as_slice(), label)?,
        label,
        DomainLabel::Coordinate,
    )?;
    let mismatches = f
        .values()
        .iter()
        .zip(back.values())
        .filter(|(a, b)| a.re.to_bits() != b.re.to_bits() || a.im.to_bits() != b.im.to_bits())
        .count();
    Ok(vec![ReportEntry::new(
        "signal file round trip is bit-exact",
        "CSV",
        mismatches as f64,
        0.0,
    )
    .param("rows", grid.count() as u64)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!("desk".parse::<Level>().unwrap(), Level::Desk);
        assert_eq!("quick".parse::<Level>().unwrap(), Level::Quick);
        assert!("full".parse::<Level>().is_err());
    }

    #[test]
    fn rejection_entries() {
        assert!(rejection("c", "Eq", 0.5, 0.3).passed());
        assert!(!rejection("c", "Eq", 0.1, 0.3).passed());
    }

    #[test]
    fn round_trip_section_passes() {
        let e = signal_round_trip(Level::Quick, &QuadratureConfig::default()).unwrap();
        assert!(e[0].passed(), "{}", e[0]);
    }

    #[test]
    fn discrete_sections_pass_quick() {
        let cfg = QuadratureConfig::default();
        for e in kronecker_closed_form(Level::Quick, &cfg)
            .unwrap()
            .into_iter()
            .chain(kronecker_projector(Level::Quick, &cfg).unwrap())
            .chain(discrete_reproduction(Level::Quick, &cfg).unwrap())
        {
            assert!(e.passed(), "{e}");
        }
    }
}
