//! The incomplete Kronecker delta of a contiguous DFT band.

use projkernel::discrete::{
    incomplete_kronecker_closed, incomplete_kronecker_sum, DiscreteProjection,
};

fn main() -> projkernel::Result<()> {
    let p = DiscreteProjection::contiguous(8, 2, 4)?;
    let m = incomplete_kronecker_sum(&p);
    println!("K=8, band [2, 4]");
    for k in 1..=8 {
        let row: Vec<String> = (1..=8)
            .map(|n| format!("{:6.3}", m.entry(k, n).norm()))
            .collect();
        println!("|M[{k}, .]| = {}", row.join(" "));
    }
    println!(
        "closed form M[1, 3] = {:.6}",
        incomplete_kronecker_closed(&p, 1, 3)?
    );
    println!("direct sum  M[1, 3] = {:.6}", m.entry(1, 3));
    println!(
        "trace {:.6}, |M^2 - M| {:.1e}, |M - M^H| {:.1e}",
        m.trace().re,
        m.idempotency_defect(),
        m.hermiticity_defect()
    );
    Ok(())
}
