//! Run every closed-form versus oracle suite and the corollary reduction matrix.

use mfold_bounds::bounds::reduction_matrix;
use mfold_bounds::verify::{run_all, VerifyOptions};
use mfold_bounds::Result;

fn main() -> Result<()> {
    let summary = run_all(&VerifyOptions::default())?;
    for s in &summary.suites {
        println!(
            "{:<24} {:>5} cases  max deviation {:.2e}  {}",
            s.name,
            s.cases,
            s.max_deviation,
            if s.passed { "ok" } else { "FAIL" }
        );
    }
    println!();
    for r in reduction_matrix() {
        println!(
            "corollary {} ({:?}; {}): {:.1e}",
            r.corollary, r.parent, r.substitution, r.max_deviation
        );
    }
    Ok(())
}
