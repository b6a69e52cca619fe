//! Finite-dimensional projectors: the DFT basis, band projections and the
//! incomplete Kronecker delta.
//!
//! Conventions: indices are 1-based in the API (`1 <= k <= K`), `t_n = n` and
//! `w_k = 2 pi k / K`, so `|w_k>` has components `exp(i w_k t_n) / sqrt(K)`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this `|exp(i w_1 dt) - 1|` the closed form falls back to the direct sum.
const RATIO_ONE_THRESHOLD: f64 = 1e-9;

/// Set of DFT frequency indices a projector keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrequencyBand {
    /// `K1..=K2`.
    Contiguous {
        k1: usize,
        k2: usize,
    },
    Indices(BTreeSet<usize>),
}

/// `P = sum_{m in band} |w_m><w_m|` in dimension `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteProjection {
    dim: usize,
    band: FrequencyBand,
}

impl DiscreteProjection {
    /// Band `K1..=K2` with `1 <= K1 <= K2 <= K`.
    pub fn contiguous(dim: usize, k1: usize, k2: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBand("dimension must be positive".into()));
        }
        if k1 < 1 || k1 > k2 || k2 > dim {
            return Err(Error::InvalidBand(format!(
                "need 1 <= K1 <= K2 <= K, got K1={k1} K2={k2} K={dim}"
            )));
        }
        Ok(Self {
            dim,
            band: FrequencyBand::Contiguous { k1, k2 },
        })
    }

    /// Arbitrary non-empty index set within `1..=K`.
    pub fn from_indices(dim: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if dim == 0 || set.is_empty() {
            return Err(Error::InvalidBand(
                "need a positive dimension and a non-empty index set".into(),
            ));
        }
        if let Some(bad) = set.iter().find(|&&k| k < 1 || k > dim) {
            return Err(Error::InvalidBand(format!("index {bad} outside 1..={dim}")));
        }
        Ok(Self {
            dim,
            band: FrequencyBand::Indices(set),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn band(&self) -> &FrequencyBand {
        &self.band
    }

    pub fn indices(&self) -> Vec<usize> {
        match &self.band {
            FrequencyBand::Contiguous { k1, k2 } => (*k1..=*k2).collect(),
            FrequencyBand::Indices(set) => set.iter().copied().collect(),
        }
    }

    pub fn contains(&self, k: usize) -> bool {
        match &self.band {
            FrequencyBand::Contiguous { k1, k2 } => (*k1..=*k2).contains(&k),
            FrequencyBand::Indices(set) => set.contains(&k),
        }
    }

    /// Number of kept frequencies, the rank of the projector.
    pub fn rank(&self) -> usize {
        match &self.band {
            FrequencyBand::Contiguous { k1, k2 } => k2 - k1 + 1,
            FrequencyBand::Indices(set) => set.len(),
        }
    }

    /// Single-frequency bands and bands reaching `K` fall outside
    /// `1 <= K1 < K2 < K` but are accepted.
    pub fn is_degenerate(&self) -> bool {
        match &self.band {
            FrequencyBand::Contiguous { k1, k2 } => k1 == k2 || *k2 == self.dim,
            FrequencyBand::Indices(_) => false,
        }
    }
}

/// Complex signal of length `K`, sampled at `t_n = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignal(DVector<Complex64>);

impl DiscreteSignal {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::invalid(
                "u",
                format!("non-finite entry at index {i}"),
            ));
        }
        Ok(Self(DVector::from_vec(values)))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DVector::zeros(dim))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(&self.0 * c)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|v| v.conj()))
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `exp(i 2 pi r / K)` with `r` reduced mod `K` so the argument stays in `[0, 2 pi)`.
fn root_of_unity(r: i64, dim: usize) -> Complex64 {
    let k = dim as i64;
    let r = r.rem_euclid(k);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / dim as f64)
}

/// `|w_k>`: component `n` is `exp(i w_k t_n) / sqrt(K)`.
pub fn dft_basis_vector(dim: usize, k: usize) -> Result<DiscreteSignal> {
    if k < 1 || k > dim {
        return Err(Error::invalid("k", format!("index {k} outside 1..={dim}")));
    }
    let norm = 1.0 / (dim as f64).sqrt();
    let values = (1..=dim)
        .map(|n| root_of_unity((k * n) as i64, dim) * norm)
        .collect();
    DiscreteSignal::new(values)
}

/// `A_k = (1/sqrt K) sum_n u(t_n) exp(+i w_k t_n)`, `k = 1..=K`.
///
/// The `+i` exponent makes `A_k = <w_{K-k}|u>`, i.e. the amplitude of the
/// conjugate basis vector. Use [`basis_coefficients`] for `<w_k|u>`.
pub fn spectral_amplitude(u: &DiscreteSignal) -> DiscreteSignal {
    transform(u, 1)
}

/// `<w_k|u> = (1/sqrt K) sum_n u(t_n) exp(-i w_k t_n)`, `k = 1..=K`.
pub fn basis_coefficients(u: &DiscreteSignal) -> DiscreteSignal {
    transform(u, -1)
}

fn transform(u: &DiscreteSignal, sign: i64) -> DiscreteSignal {
    let dim = u.len();
    let norm = 1.0 / (dim as f64).sqrt();
    let values = (1..=dim)
        .map(|k| {
            u.as_slice()
                .iter()
                .enumerate()
                .map(|(j, v)| v * root_of_unity(sign * (k * (j + 1)) as i64, dim))
                .sum::<Complex64>()
                * norm
        })
        .collect();
    DiscreteSignal(DVector::from_vec(values))
}

/// `sum_k c_k |w_k>`.
pub fn synthesize(coefficients: &DiscreteSignal) -> DiscreteSignal {
    let dim = coefficients.len();
    let norm = 1.0 / (dim as f64).sqrt();
    let values = (1..=dim)
        .map(|n| {
            coefficients
                .as_slice()
                .iter()
                .enumerate()
                .map(|(k, c)| c * root_of_unity(((k + 1) * n) as i64, dim))
                .sum::<Complex64>()
                * norm
        })
        .collect();
    DiscreteSignal(DVector::from_vec(values))
}

/// The `K x K` matrix `M[k][n] = <t_k|P|t_n>` of a DFT band projector.
#[derive(Debug, Clone, PartialEq)]
pub struct IncompleteKronecker(DMatrix<Complex64>);

impl IncompleteKronecker {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Entry for 1-based `(k, n)`.
    pub fn entry(&self, k: usize, n: usize) -> Complex64 {
        self.0[(k - 1, n - 1)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `max |M M - M|`.
    pub fn idempotency_defect(&self) -> f64 {
        max_abs(&(&self.0 * &self.0 - &self.0))
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.0 - self.0.adjoint()))
    }

    pub fn apply(&self, u: &DiscreteSignal) -> Result<DiscreteSignal> {
        check_dim(self.dim(), u.len())?;
        Ok(DiscreteSignal(&self.0 * &u.0))
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `M[k][n] = (1/K) sum_{m in band} exp(i w_m (t_k - t_n))`.
pub fn incomplete_kronecker_sum(p: &DiscreteProjection) -> IncompleteKronecker {
    let dim = p.dim();
    let band = p.indices();
    let scale = 1.0 / dim as f64;
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        let dt = r as i64 - c as i64;
        band.iter()
            .map(|&m| root_of_unity(m as i64 * dt, dim))
            .sum::<Complex64>()
            * scale
    });
    IncompleteKronecker(m)
}

/// Geometric-series closed form of a single entry:
///
/// ```text
/// (1/K) (exp(i (K2+1) w_1 dt) - exp(i K1 w_1 dt)) / (exp(i w_1 dt) - 1),  dt = t_k - t_n
/// ```
///
/// When the ratio `exp(i w_1 dt)` is one (`dt = 0 mod K`) every term of the
/// sum is one and the entry is `(K2 - K1 + 1) / K`.
pub fn incomplete_kronecker_closed(
    p: &DiscreteProjection,
    k: usize,
    n: usize,
) -> Result<Complex64> {
    let dim = p.dim();
    let (k1, k2) = match p.band() {
        FrequencyBand::Contiguous { k1, k2 } => (*k1, *k2),
        FrequencyBand::Indices(_) => {
            return Err(Error::InvalidBand(
                "closed form needs a contiguous band".into(),
            ));
        }
    };
    for (name, idx) in [("k", k), ("n", n)] {
        if idx < 1 || idx > dim {
            return Err(Error::invalid(
                name,
                format!("index {idx} outside 1..={dim}"),
            ));
        }
    }
    let dt = k as i64 - n as i64;
    let ratio = root_of_unity(dt, dim);
    let denom = ratio - 1.0;
    if denom.norm() < RATIO_ONE_THRESHOLD {
        let direct: Complex64 = (k1..=k2).map(|m| root_of_unity(m as i64 * dt, dim)).sum();
        return Ok(direct / dim as f64);
    }
    let numer = root_of_unity((k2 as i64 + 1) * dt, dim) - root_of_unity(k1 as i64 * dt, dim);
    Ok(numer / denom / dim as f64)
}

/// `P u`, computed as `M u`.
pub fn project_signal(u: &DiscreteSignal, p: &DiscreteProjection) -> Result<DiscreteSignal> {
    check_dim(p.dim(), u.len())?;
    incomplete_kronecker_sum(p).apply(u)
}

/// `P u` by masking the basis coefficients `<w_k|u>` to the band and
/// synthesizing. Independent of the matrix route of [`project_signal`].
pub fn project_signal_spectral(
    u: &DiscreteSignal,
    p: &DiscreteProjection,
) -> Result<DiscreteSignal> {
    check_dim(p.dim(), u.len())?;
    let coeffs = basis_coefficients(u);
    let masked: Vec<Complex64> = coeffs
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if p.contains(i + 1) {
                *c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(synthesize(&DiscreteSignal(DVector::from_vec(masked))))
}

/// Outcome of testing whether a signal is supported in a projected subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportVerdict {
    pub supported: bool,
    /// `|P u - u| / |u|`; zero for the zero vector.
    pub residual: f64,
}

/// Accepts the hypothesis that `u` lies in the range of `P` when the relative
/// 2-norm residual `|P u - u| / |u|` is at most `tol`.
pub fn support_test(
    u: &DiscreteSignal,
    p: &DiscreteProjection,
    tol: f64,
) -> Result<SupportVerdict> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::invalid(
            "tol",
            format!("tolerance must be > 0, got {tol}"),
        ));
    }
    let pu = project_signal(u, p)?;
    let diff = (&pu.0 - &u.0).norm();
    let residual = diff / u.norm().max(f64::MIN_POSITIVE);
    Ok(SupportVerdict {
        supported: residual <= tol,
        residual,
    })
}
