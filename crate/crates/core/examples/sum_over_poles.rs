//! Rebuilding a momentum-space function from the poles of its half-line difference.

use projkernel::dispersion::sum_over_poles;
use projkernel::{DomainLabel, QuadratureConfig, SampledSignal};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let grid = cfg.default_grid()?;
    let f = SampledSignal::from_real_fn(grid, DomainLabel::Momentum, |p| {
        (-p * p / 4.0).exp() / 2f64.sqrt()
    })?;
    for p in [0.0, 0.5, 1.0, 2.0] {
        let v = sum_over_poles(&f, p, &cfg)?;
        let exact = (-p * p / 4.0).exp() / 2f64.sqrt();
        println!("p={p:<3} sum over poles {:.6} exact {exact:.6}", v.re);
    }
    Ok(())
}
