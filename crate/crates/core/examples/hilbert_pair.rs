//! Hilbert transforms by principal-value convolution and by the FFT sign multiplier.

use projkernel::dispersion::HilbertPair;
use projkernel::{DomainLabel, QuadratureConfig, SampledSignal};

fn main() -> projkernel::Result<()> {
    let cfg = QuadratureConfig::default();
    let grid = cfg.default_grid()?;
    let f = SampledSignal::from_real_fn(grid, DomainLabel::Momentum, |p| 1.0 / (1.0 + p * p))?;
    let pv = HilbertPair::pv(f.clone(), &cfg)?;
    let spectral = HilbertPair::spectral(f.clone())?;
    for p in [-2.0, 0.5, 1.0, 3.0] {
        let i = grid.node_index(p).expect("grid node");
        println!(
            "p={p:<4} pv={:.5} spectral={:.5} exact={:.5}",
            pv.transform().values()[i].re,
            spectral.transform().values()[i].re,
            p / (1.0 + p * p)
        );
    }
    println!(
        "PV vs spectral on the central third: {:.2e}",
        pv.transform().central_sup_distance(spectral.transform())?
    );
    println!(
        "spectral round trip error: {:.2e}",
        spectral.invert(&cfg)?.central_sup_distance(&f)?
    );
    Ok(())
}
