//! Standard bi-univalent pairs, their m-fold versions, and the 1-fold pairing audit.

use mfold_bounds::exemplars::{audit_1fold_pairings, catalog};
use mfold_bounds::Result;

fn main() -> Result<()> {
    for m in 1..=3 {
        for pair in catalog(m, 4)? {
            println!(
                "m={m} {:<10} order {:<3} residual {:.1e} verified {}",
                pair.name, pair.order, pair.composition_residual, pair.pairing_verified
            );
        }
    }
    println!();
    for row in audit_1fold_pairings(10)? {
        println!(
            "{:<22} listed {:<22} true {}",
            row.forward,
            row.listed_inverse,
            row.true_inverse.as_deref().unwrap_or("none")
        );
    }
    Ok(())
}
