//! Principal-value integrals with an excluded interval around the pole.

use projkernel::quadrature::{pv_integral, pv_integral_within};
use projkernel::{Complex64, QuadratureConfig};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let v = pv_integral(|x| Complex64::new(0.0, x).exp() / x, 0.0, &cfg)?;
    println!(
        "PV int exp(ix)/x dx = {v:.5} (exact: i pi = {:.5}i)",
        std::f64::consts::PI
    );

    let local = cfg
        .with_half_width(10.0)
        .with_step(0.01)
        .with_exclusion(0.01);
    let v = pv_integral_within(|x| Complex64::new(1.0 / x, 0.0), 0.0, -1.0, 4.0, &local)?;
    println!(
        "PV int_-1^4 dx/x = {:.8} (exact: ln 4 = {:.8})",
        v.re,
        4f64.ln()
    );
    Ok(())
}
