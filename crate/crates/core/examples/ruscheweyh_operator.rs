//! Ruscheweyh factors and their action on an m-fold function.

use mfold_bounds::operators::{omega, omega_mfold, ruscheweyh_mfold};
use mfold_bounds::{MFoldFn, Result};

fn main() -> Result<()> {
    println!("delta  Omega(delta,2..5)           m-fold factors k=1..4");
    for delta in 0..=5 {
        let plain: Vec<u128> = (2..=5)
            .map(|k| omega(delta, k).map(|f| f.value))
            .collect::<Result<_>>()?;
        let mfold: Vec<u128> = (1..=4)
            .map(|k| omega_mfold(delta, k).map(|f| f.value))
            .collect::<Result<_>>()?;
        println!("{delta:>5}  {:<28}  {mfold:?}", format!("{plain:?}"));
    }

    let f = MFoldFn::identity(2, 3)?;
    println!("\nR^3 of z (2-fold) = {}", ruscheweyh_mfold(&f, 3)?.embed());
    let f = MFoldFn::new(2, vec![0.5.into(), 0.25.into(), 0.125.into()])?;
    for delta in [0, 1, 4] {
        println!("R^{delta} f = {}", ruscheweyh_mfold(&f, delta)?.embed());
    }
    Ok(())
}
