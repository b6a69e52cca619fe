#![forbid(unsafe_code)]

//! Kernels of projection operators ("incomplete delta functions") and the
//! identities they satisfy.
//!
//! - [`kernels`]: closed-form band (sinc) and half-line (Cauchy + delta) kernels.
//! - [`quadrature`]: truncated and principal-value quadrature, kernel convolutions.
//! - [`discrete`]: DFT band projectors and the incomplete Kronecker delta.
//! - [`dispersion`]: Hilbert transforms, dispersion relations, sums over poles.
//! - [`io`], [`report`], [`suite`], [`cli`]: signal files, identity reports and
//!   the `projkernel` command line.

pub mod cli;
pub mod discrete;
pub mod dispersion;
pub mod error;
pub mod io;
pub mod kernels;
pub mod quadrature;
pub mod report;
pub mod signal;
pub mod suite;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use kernels::{BandParams, Basis, KernelLabel, MaskTag, Side, SplitKernel};
pub use quadrature::{QuadratureConfig, Rule};
pub use report::{IdentityReport, ReportEntry, Verdict};
pub use signal::{DomainLabel, SampledSignal, UniformGrid};
