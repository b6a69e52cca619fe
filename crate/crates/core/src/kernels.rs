//! Closed-form kernels of the band and half-line projectors.
//!
//! Units follow the `hbar = 1` convention: a momentum cutoff `a` has units of
//! inverse length and `<x|p> = exp(ipx) / sqrt(2 pi)`.
//!
//! The half-line kernels are distribution valued. They are carried as a
//! [`SplitKernel`]: a delta coefficient plus a Cauchy part `c / dx` that is only
//! ever integrated in the principal-value sense.

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|a dx|` the sinc kernel switches to its Taylor expansion.
const SINC_SERIES_THRESHOLD: f64 = 1e-4;

/// Momentum cutoff `a > 0` of the band projector onto `|p| <= a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandParams {
    a: f64,
}

impl BandParams {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::invalid(
                "a",
                format!("cutoff must be finite and > 0, got {a}"),
            ));
        }
        Ok(Self { a })
    }

    pub fn cutoff(&self) -> f64 {
        self.a
    }

    pub fn contains(&self, p: f64) -> bool {
        p.abs() <= self.a
    }
}

/// Kernel of the band projector: `sin(a dx) / (pi dx)`, with the continuous
/// value `a / pi` at the origin.
pub fn sinc_kernel(dx: f64, band: BandParams) -> Result<f64> {
    if !dx.is_finite() {
        return Err(Error::invalid(
            "dx",
            format!("displacement must be finite, got {dx}"),
        ));
    }
    Ok(sinc_unchecked(dx, band.a))
}

#[inline]
pub(crate) fn sinc_unchecked(dx: f64, a: f64) -> f64 {
    let t = a * dx;
    if t.abs() < SINC_SERIES_THRESHOLD {
        a / PI * (1.0 - t * t / 6.0)
    } else {
        t.sin() / (PI * dx)
    }
}

/// Which half-line (or combination) a split kernel projects onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelLabel {
    Plus,
    Minus,
    /// `P+ - P-`.
    Difference,
    /// `P+ + P-`, i.e. the pure delta.
    Identity,
    Combination,
}

/// The variable the kernel's displacement is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Coordinate,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// `+1` for the plus half-line, `-1` for the minus one.
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Translation-invariant generalized kernel
/// `k(dx) = delta_coeff * delta(dx) + PV cauchy_coeff / dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitKernel {
    delta_coeff: Complex64,
    cauchy_coeff: Complex64,
    label: KernelLabel,
    basis: Basis,
}

impl SplitKernel {
    pub fn new(
        delta_coeff: Complex64,
        cauchy_coeff: Complex64,
        label: KernelLabel,
        basis: Basis,
    ) -> Self {
        Self {
            delta_coeff,
            cauchy_coeff,
            label,
            basis,
        }
    }

    /// The identity kernel `delta(dx)`.
    pub fn delta(basis: Basis) -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            KernelLabel::Identity,
            basis,
        )
    }

    pub fn delta_coeff(&self) -> Complex64 {
        self.delta_coeff
    }

    /// Coefficient `c` of the regular part `c / dx`.
    pub fn cauchy_coeff(&self) -> Complex64 {
        self.cauchy_coeff
    }

    pub fn label(&self) -> KernelLabel {
        self.label
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Regular part at `dx`. `None` at the singular point `dx == 0`.
    pub fn regular(&self, dx: f64) -> Option<Complex64> {
        if dx == 0.0 || !dx.is_finite() {
            None
        } else {
            Some(self.cauchy_coeff / dx)
        }
    }

    pub fn has_regular_part(&self) -> bool {
        self.cauchy_coeff != Complex64::new(0.0, 0.0)
    }

    fn combine(self, other: Self, sign: f64) -> Self {
        assert_eq!(
            self.basis, other.basis,
            "cannot combine kernels in different bases"
        );
        let delta_coeff = self.delta_coeff + other.delta_coeff * sign;
        let cauchy_coeff = self.cauchy_coeff + other.cauchy_coeff * sign;
        let label = match (self.label, other.label, sign > 0.0) {
            (KernelLabel::Plus, KernelLabel::Minus, true)
            | (KernelLabel::Minus, KernelLabel::Plus, true) => KernelLabel::Identity,
            (KernelLabel::Plus, KernelLabel::Minus, false) => KernelLabel::Difference,
            _ => KernelLabel::Combination,
        };
        Self::new(delta_coeff, cauchy_coeff, label, self.basis)
    }
}

impl Add for SplitKernel {
    type Output = SplitKernel;

    fn add(self, rhs: Self) -> Self::Output {
        self.combine(rhs, 1.0)
    }
}

impl Sub for SplitKernel {
    type Output = SplitKernel;

    fn sub(self, rhs: Self) -> Self::Output {
        self.combine(rhs, -1.0)
    }
}

impl Neg for SplitKernel {
    type Output = SplitKernel;

    fn neg(self) -> Self::Output {
        Self::new(
            -self.delta_coeff,
            -self.cauchy_coeff,
            KernelLabel::Combination,
            self.basis,
        )
    }
}

/// `1 / (2 pi i)`.
fn inv_two_pi_i() -> Complex64 {
    Complex64::new(0.0, -1.0 / (2.0 * PI))
}

/// Coordinate-space kernel of the projector onto positive (`Plus`) or negative
/// (`Minus`) momenta:
///
/// ```text
/// <x|P+|x'> = -1/(2 pi i) * 1/(x - x') + delta(x - x') / 2
/// <x|P-|x'> = +1/(2 pi i) * 1/(x - x') + delta(x - x') / 2
/// ```
pub fn halfline_kernel(side: Side) -> SplitKernel {
    let (cauchy, label) = match side {
        Side::Plus => (-inv_two_pi_i(), KernelLabel::Plus),
        Side::Minus => (inv_two_pi_i(), KernelLabel::Minus),
    };
    SplitKernel::new(Complex64::new(0.5, 0.0), cauchy, label, Basis::Coordinate)
}

/// Momentum-space kernel of the projector onto `x > 0` (`Plus`) or `x < 0`
/// (`Minus`). The Cauchy part has the opposite sign to [`halfline_kernel`]
/// because `<p|x>` carries `exp(-ipx)`.
pub fn momentum_halfline_kernel(side: Side) -> SplitKernel {
    let (cauchy, label) = match side {
        Side::Plus => (inv_two_pi_i(), KernelLabel::Plus),
        Side::Minus => (-inv_two_pi_i(), KernelLabel::Minus),
    };
    SplitKernel::new(Complex64::new(0.5, 0.0), cauchy, label, Basis::Momentum)
}

/// `<p|(P+ - P-)|p'> = 1/(pi i) * 1/(p - p')`; no delta term.
pub fn difference_kernel() -> SplitKernel {
    SplitKernel::new(
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, -1.0 / PI),
        KernelLabel::Difference,
        Basis::Momentum,
    )
}

/// Symbolic value of a distribution-valued kernel between momentum states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskTag {
    /// `delta(p - p')`.
    Delta,
    Zero,
}

impl MaskTag {
    pub fn is_delta(self) -> bool {
        self == MaskTag::Delta
    }
}

/// `<p|P(a)|p'>`: a delta when both momenta lie in the band, zero otherwise.
pub fn band_mask_kernel(p: f64, p2: f64, band: BandParams) -> MaskTag {
    if band.contains(p) && band.contains(p2) {
        MaskTag::Delta
    } else {
        MaskTag::Zero
    }
}

/// `<p|P+|p'>` for the positive-momentum projector: a delta when both momenta
/// are non-negative.
pub fn halfline_mask_kernel(p: f64, p2: f64) -> MaskTag {
    if p >= 0.0 && p2 >= 0.0 {
        MaskTag::Delta
    } else {
        MaskTag::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn band(a: f64) -> BandParams {
        BandParams::new(a).unwrap()
    }

    /// `(1/2pi) * int_{-a}^{a} exp(i p dx) dp` by composite Simpson.
    fn sinc_by_quadrature(dx: f64, a: f64) -> f64 {
        let n = 20_000;
        let h = 2.0 * a / n as f64;
        let mut acc = 0.0;
        for k in 0..=n {
            let p = -a + k as f64 * h;
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * (p * dx).cos();
        }
        acc * h / 3.0 / (2.0 * PI)
    }

    #[test]
    fn sinc_kernel_examples() {
        assert_relative_eq!(sinc_kernel(0.0, band(PI)).unwrap(), 1.0, epsilon = 1e-15);
        assert!(sinc_kernel(1.0, band(PI)).unwrap().abs() < 1e-15);
        let v = sinc_kernel(0.5, band(2.0)).unwrap();
        assert_relative_eq!(v, 0.535_697_07, epsilon = 1e-8);
        assert_relative_eq!(v, sinc_by_quadrature(0.5, 2.0), epsilon = 1e-12);
    }

    #[test]
    fn sinc_series_branch_is_continuous() {
        let a = 3.0;
        let dx = SINC_SERIES_THRESHOLD / a;
        let below = sinc_unchecked(dx * (1.0 - 1e-9), a);
        let above = sinc_unchecked(dx * (1.0 + 1e-9), a);
        assert_relative_eq!(below, above, max_relative = 1e-12);
        assert_relative_eq!(
            sinc_unchecked(1e-7, a),
            sinc_by_quadrature(1e-7, a),
            epsilon = 1e-12
        );
    }

    #[test]
    fn sinc_rejects_bad_input() {
        assert!(BandParams::new(0.0).is_err());
        assert!(BandParams::new(-1.0).is_err());
        assert!(BandParams::new(f64::NAN).is_err());
        assert!(BandParams::new(f64::INFINITY).is_err());
        assert!(sinc_kernel(f64::NAN, band(1.0)).is_err());
        assert!(sinc_kernel(f64::INFINITY, band(1.0)).is_err());
    }

    #[test]
    fn halfline_kernel_values() {
        let plus = halfline_kernel(Side::Plus);
        assert_eq!(plus.delta_coeff(), Complex64::new(0.5, 0.0));
        let r = plus.regular(1.0).unwrap();
        assert_relative_eq!(r.re, 0.0);
        assert_relative_eq!(r.im, 0.159_154_943_091_895_35, epsilon = 1e-15);
        assert!(plus.regular(0.0).is_none());

        let minus = halfline_kernel(Side::Minus);
        let r = minus.regular(2.0).unwrap();
        assert_relative_eq!(r.im, -1.0 / (4.0 * PI), epsilon = 1e-15);

        let sum = plus + minus;
        assert_eq!(sum.label(), KernelLabel::Identity);
        assert_eq!(sum.delta_coeff(), Complex64::new(1.0, 0.0));
        assert!(!sum.has_regular_part());
    }

    /// `lim eps->0 (1/2pi) int_0^inf exp(i p dx - eps p) dp` minus the delta part,
    /// taken at a small but finite eps where the closed form is `i / (2 pi (dx + i eps))`.
    #[test]
    fn halfline_regular_part_matches_damped_integral() {
        let dx = 1.0;
        let eps = 1e-3;
        // Integrate to p where exp(-eps p) is negligible, with a step resolving the oscillation.
        let p_max = 40.0 / eps;
        let n = 4_000_000usize;
        let h = p_max / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let p = k as f64 * h;
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            acc += Complex64::new(-eps * p, p * dx).exp() * w;
        }
        let damped = acc * h / (2.0 * PI);
        let expected = halfline_kernel(Side::Plus).regular(dx).unwrap();
        // The delta part is a Lorentzian of width eps; at dx = 1 it contributes ~eps/(2 pi).
        assert!((damped - expected).norm() < 2e-3, "{damped} vs {expected}");
    }

    #[test]
    fn momentum_kernels_and_difference() {
        let plus = momentum_halfline_kernel(Side::Plus);
        let r = plus.regular(1.0).unwrap();
        assert_relative_eq!(r.im, -1.0 / (2.0 * PI), epsilon = 1e-15);
        let minus = momentum_halfline_kernel(Side::Minus);
        assert_eq!((plus + minus).label(), KernelLabel::Identity);
        assert!(!(plus + minus).has_regular_part());

        let diff = plus - minus;
        assert_eq!(diff.label(), KernelLabel::Difference);
        assert_eq!(diff.delta_coeff(), Complex64::new(0.0, 0.0));
        let d = difference_kernel();
        assert_relative_eq!(
            (diff.regular(1.0).unwrap() - d.regular(1.0).unwrap()).norm(),
            0.0,
            epsilon = 1e-16
        );
        assert_relative_eq!(d.regular(1.0).unwrap().im, -1.0 / PI, epsilon = 1e-15);
        assert_relative_eq!(d.regular(-1.0).unwrap().im, 1.0 / PI, epsilon = 1e-15);
        assert_eq!(d.delta_coeff(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn mask_kernels() {
        let b = band(1.0);
        assert_eq!(band_mask_kernel(0.5, 0.5, b), MaskTag::Delta);
        assert_eq!(band_mask_kernel(2.0, 0.5, b), MaskTag::Zero);
        assert_eq!(band_mask_kernel(0.5, -2.0, b), MaskTag::Zero);
        assert_eq!(band_mask_kernel(1.0, -1.0, b), MaskTag::Delta);
        assert_eq!(halfline_mask_kernel(1.0, 1.0), MaskTag::Delta);
        assert_eq!(halfline_mask_kernel(0.0, 3.0), MaskTag::Delta);
        assert_eq!(halfline_mask_kernel(-0.1, 1.0), MaskTag::Zero);
    }

    proptest! {
        #[test]
        fn sinc_is_even(dx in -100.0f64..100.0, a in 0.01f64..50.0) {
            prop_assert_eq!(sinc_unchecked(dx, a), sinc_unchecked(-dx, a));
        }

        #[test]
        fn halfline_conjugate_symmetry(dx in prop::num::f64::NORMAL) {
            let plus = halfline_kernel(Side::Plus);
            let minus = halfline_kernel(Side::Minus);
            let r = plus.regular(dx).unwrap();
            prop_assert_eq!(r, plus.regular(-dx).unwrap().conj());
            prop_assert_eq!(r, -minus.regular(dx).unwrap());
        }
    }
}
