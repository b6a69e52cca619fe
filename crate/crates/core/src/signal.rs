//! Uniform grids and complex samples on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `point(i) = x_min + i * step` for `0 <= i < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    x_min: f64,
    step: f64,
    count: usize,
}

impl UniformGrid {
    pub fn new(x_min: f64, step: f64, count: usize) -> Result<Self> {
        if !x_min.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "x_min must be finite, got {x_min}"
            )));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "step must be finite and > 0, got {step}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {count}"
            )));
        }
        Ok(Self { x_min, step, count })
    }

    /// Grid on `[-half_width, half_width]` with the given step. The half width is
    /// rounded to a whole number of steps so the origin is a node.
    pub fn symmetric(half_width: f64, step: f64) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "half width must be > 0, got {half_width}"
            )));
        }
        let half = (half_width / step).round() as usize;
        Self::new(-(half as f64) * step, step, 2 * half + 1)
    }

    /// Grid with `count` points from `start` to `end` inclusive.
    pub fn spanning(start: f64, end: f64, count: usize) -> Result<Self> {
        if count < 2 || end.is_nan() || start.is_nan() || end <= start {
            return Err(Error::InvalidGrid(format!(
                "cannot span [{start}, {end}] with {count} points"
            )));
        }
        Self::new(start, (end - start) / (count - 1) as f64, count)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// Index of the node at `x`, if `x` is within `1e-6` steps of one.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let t = (x - self.x_min) / self.step;
        let i = t.round();
        if i < 0.0 || i >= self.count as f64 || (t - i).abs() > 1e-6 {
            None
        } else {
            Some(i as usize)
        }
    }

    /// Index range `[count/3, 2*count/3)`, where truncation bias is smallest.
    pub fn central_third(&self) -> std::ops::Range<usize> {
        self.count / 3..(2 * self.count).div_ceil(3)
    }

    pub fn same_as(&self, other: &UniformGrid) -> bool {
        self.count == other.count
            && (self.step - other.step).abs() <= 1e-12 * self.step
            && (self.x_min - other.x_min).abs() <= 1e-12 * self.step.max(self.x_min.abs())
    }
}

/// Which variable the samples are a function of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainLabel {
    Coordinate,
    Momentum,
    Time,
    Frequency,
}

/// Complex samples on a [`UniformGrid`]. All values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: UniformGrid,
    values: Vec<Complex64>,
    domain: DomainLabel,
}

impl SampledSignal {
    pub fn new(grid: UniformGrid, values: Vec<Complex64>, domain: DomainLabel) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::DimensionMismatch {
                expected: grid.count(),
                got: values.len(),
            });
        }
        if let Some(i) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::invalid(
                "values",
                format!("non-finite sample at index {i}"),
            ));
        }
        Ok(Self {
            grid,
            values,
            domain,
        })
    }

    /// Samples `f` at every node of `grid`.
    pub fn from_fn(
        grid: UniformGrid,
        domain: DomainLabel,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values, domain)
    }

    pub fn from_real_fn(
        grid: UniformGrid,
        domain: DomainLabel,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        Self::from_fn(grid, domain, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zeros(grid: UniformGrid, domain: DomainLabel) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.count()],
            domain,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn domain(&self) -> DomainLabel {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same grid and domain, new values. Used by operations whose output lives
    /// where their input did.
    pub(crate) fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(self.grid, values, self.domain)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().copied().map(f).collect(),
            domain: self.domain,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch(
                "signals are sampled on different grids".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
            domain: self.domain,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }

    /// `max |self - other|` over the central third of the grid.
    pub fn central_sup_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(sup_norm(&diff.values[self.grid.central_third()]))
    }

    /// `max |self|` over the central third of the grid.
    pub fn central_sup_norm(&self) -> f64 {
        sup_norm(&self.values[self.grid.central_third()])
    }
}

pub(crate) fn sup_norm(values: &[Complex64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}
