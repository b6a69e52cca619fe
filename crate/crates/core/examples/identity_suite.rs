//! Runs the whole identity suite and prints one line per check.
//!
//! `cargo run --example identity_suite -- quick` runs the reduced level.

use projkernel::suite::{self, Level};
use projkernel::QuadratureConfig;

fn main() -> projkernel::Result<()> {
    let level: Level = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("level is quick or desk"))
        .unwrap_or_default();
    let report = suite::run(level, &QuadratureConfig::default())?;
    for entry in &report.entries {
        println!("{entry}");
    }
    let failures = report.failures().count();
    println!("{} checks, {failures} failed", report.entries.len());
    Ok(())
}
