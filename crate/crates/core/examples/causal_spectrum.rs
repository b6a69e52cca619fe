//! Dispersion relations: the spectrum of a causal signal is fixed by its own
//! principal-value integral; a non-causal one is not.

use projkernel::dispersion::{analytic_projection, causal_spectrum_check, dispersion_residual};
use projkernel::{DomainLabel, QuadratureConfig, SampledSignal, Side, UniformGrid};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let time = UniformGrid::symmetric(40.0, 0.01)?;
    let causal = SampledSignal::from_real_fn(time, DomainLabel::Time, |t| {
        if t >= 0.0 {
            (-t).exp()
        } else {
            0.0
        }
    })?;
    let even = SampledSignal::from_real_fn(time, DomainLabel::Time, |t| (-t.abs()).exp())?;
    println!(
        "exp(-t), t >= 0 : {}",
        causal_spectrum_check(&causal, &cfg)?
    );
    println!("exp(-|t|)       : {}", causal_spectrum_check(&even, &cfg)?);

    let cfg = cfg.with_half_width(100.0);
    let grid = cfg.default_grid()?;
    let gauss = SampledSignal::from_real_fn(grid, DomainLabel::Coordinate, |x| (-x * x).exp())?;
    let g = analytic_projection(&gauss, &cfg)?;
    println!(
        "projected Gaussian residual {:.2e}",
        dispersion_residual(&g, Side::Plus, &cfg)?
    );
    println!(
        "raw Gaussian residual       {:.2e}",
        dispersion_residual(&gauss, Side::Plus, &cfg)?
    );
    Ok(())
}
