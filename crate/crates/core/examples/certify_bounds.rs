//! Certify both class bounds on random and extremal constraint samples.

use mfold_bounds::sampling::{probe_bounds, Strategy};
use mfold_bounds::{ClassParams, Complex64, Result};

fn main() -> Result<()> {
    let params = [
        ClassParams::q(Complex64::new(0.7, -0.4), 0.8, 0.3, 1, 2, 1.0)?,
        ClassParams::q(Complex64::new(2.0, 0.0), 0.0, 0.0, 0, 1, 0.5)?,
        ClassParams::theta(Complex64::new(1.0, 1.0), 2.0, 1.0, 3, 4, 0.4)?,
    ];
    for p in &params {
        println!(
            "{} m={} delta={} tau={}",
            p.kind.name(),
            p.m,
            p.delta,
            p.tau
        );
        for strategy in [Strategy::Random, Strategy::Grid] {
            let report = probe_bounds(p, strategy, 50_000, 42)?;
            print!("  {strategy:?}:");
            for c in &report.checks {
                print!(" {}={:.6}", c.name, c.max_ratio);
            }
            println!("  -> {}", if report.passed { "pass" } else { "FAIL" });
        }
    }
    Ok(())
}
