//! Band-limited projection of sampled signals, in memory and through signal files.

use projkernel::io::{read_signal, write_signal};
use projkernel::quadrature::bandlimit_project;
use projkernel::{
    BandParams, Complex64, DomainLabel, QuadratureConfig, SampledSignal, UniformGrid,
};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let grid = UniformGrid::symmetric(200.0, cfg.step)?;
    let band = BandParams::new(2.0)?;
    for b in [1.0, 3.0] {
        let f = SampledSignal::from_fn(grid, DomainLabel::Coordinate, |x| {
            Complex64::new(0.0, b * x).exp()
        })?;
        let g = bandlimit_project(&f, band, &cfg)?;
        println!(
            "exp({b} i x): |g - f| = {:.2e}, |g| = {:.2e} on the central third",
            g.central_sup_distance(&f)?,
            g.central_sup_norm()
        );
    }

    let dir = std::env::temp_dir();
    let input = dir.join("projkernel_band_in.csv");
    let output = dir.join("projkernel_band_out.csv");
    let pulse = SampledSignal::from_real_fn(grid, DomainLabel::Coordinate, |x| {
        (-x * x / 2.0).exp() * (4.0 * x).cos()
    })?;
    write_signal(&input, &pulse)?;
    let g = bandlimit_project(&read_signal(&input, DomainLabel::Coordinate)?, band, &cfg)?;
    write_signal(&output, &g)?;
    println!("projected pulse written to {}", output.display());
    Ok(())
}
