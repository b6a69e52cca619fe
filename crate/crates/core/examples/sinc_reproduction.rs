//! The band kernel reproduces itself under convolution.
//!
//! Compares `sinc(x - x'; a)` with the truncated integral of
//! `sinc(x - y; a) sinc(y - x'; a)` for a few offsets.

use projkernel::kernels::sinc_kernel;
use projkernel::quadrature::reproduce_identity_check;
use projkernel::{BandParams, QuadratureConfig};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let band = BandParams::new(2.0)?;
    println!("sinc(0.5; a=2) = {:.9}", sinc_kernel(0.5, band)?);
    for dx in [0.0, 0.7, 1.5, 4.0] {
        let e = reproduce_identity_check(band, 0.0, dx, &cfg)?;
        println!(
            "dx={dx:<4} lhs={} rhs={} |lhs-rhs|={:.2e}",
            e.lhs, e.rhs, e.residual
        );
    }
    Ok(())
}
