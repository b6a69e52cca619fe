//! Testing whether a discrete signal lies in a frequency band.

use projkernel::discrete::{dft_basis_vector, support_test, DiscreteProjection, DiscreteSignal};
use projkernel::Complex64;

fn main() -> projkernel::Result<()> {
    let k = 64;
    let p = DiscreteProjection::contiguous(k, 5, 20)?;
    let inband =
        dft_basis_vector(k, 7)?.add(&dft_basis_vector(k, 12)?.scale(Complex64::new(0.0, 0.5)))?;
    let leak = dft_basis_vector(k, 40)?.scale(Complex64::new(0.05, 0.0));
    let cases: [(&str, DiscreteSignal); 2] = [
        ("in band", inband.clone()),
        ("with leak", inband.add(&leak)?),
    ];
    for (name, u) in cases {
        let v = support_test(&u, &p, 1e-6)?;
        println!(
            "{name:<10} supported={} residual={:.3e}",
            v.supported, v.residual
        );
    }
    Ok(())
}
