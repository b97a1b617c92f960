//! Sampled margins of the class condition for truncated functions of growing size.

use mfold_bounds::functional::{membership_margin, MarginGrid};
use mfold_bounds::{ClassParams, Complex64, MFoldFn, Result};

fn main() -> Result<()> {
    let p = ClassParams::q(Complex64::new(1.0, 0.0), 1.0, 0.0, 0, 2, 0.5)?;
    let grid = MarginGrid::default_for(p.m);
    println!("a_(m+1)   forward    inverse");
    for a in [0.0, 0.02, 0.05, 0.1, 0.2, 0.5] {
        let f = MFoldFn::new(p.m, vec![Complex64::new(a, 0.0), Complex64::new(0.0, 0.0)])?;
        let mm = membership_margin(&f, &p, &grid)?;
        println!("{a:<9} {:<10.6} {:.6}", mm.forward, mm.inverse);
    }
    Ok(())
}
