//! Half-line kernels as a delta part plus a Cauchy part, and what they do to plane waves.

use projkernel::kernels::{difference_kernel, halfline_kernel};
use projkernel::quadrature::convolve_split_kernel;
use projkernel::{Complex64, DomainLabel, QuadratureConfig, SampledSignal, Side};

fn main() -> projkernel::Result<()> {
    let plus = halfline_kernel(Side::Plus);
    let minus = halfline_kernel(Side::Minus);
    println!(
        "P+ : delta {} + ({}) / dx",
        plus.delta_coeff(),
        plus.cauchy_coeff()
    );
    println!(
        "P- : delta {} + ({}) / dx",
        minus.delta_coeff(),
        minus.cauchy_coeff()
    );
    println!("P+ + P- is {:?}", (plus + minus).label());
    println!(
        "momentum P+ - P- : ({}) / dp",
        difference_kernel().cauchy_coeff()
    );

    let cfg = QuadratureConfig::default().with_half_width(200.0);
    let grid = cfg.default_grid()?;
    for b in [1.5, -1.5] {
        let wave = SampledSignal::from_fn(grid, DomainLabel::Coordinate, |x| {
            Complex64::new(0.0, b * x).exp()
        })?;
        let kept = convolve_split_kernel(&plus, &wave, &cfg)?;
        let ratio = kept.values()[grid.count() / 2] / wave.values()[grid.count() / 2];
        println!("P+ acting on exp({b} i x) multiplies it by {ratio:.4}");
    }
    Ok(())
}
