//! Inverse series of an m-fold function: generic reversion against the closed forms.

use mfold_bounds::inversion::{closed_inverse_mfold, invert};
use mfold_bounds::{Complex64, MFoldFn, Result};

fn main() -> Result<()> {
    let a = [
        Complex64::new(0.3, -0.2),
        Complex64::new(-0.1, 0.4),
        Complex64::new(0.25, 0.05),
    ];
    for m in 1..=4 {
        let f = MFoldFn::new(m, a.to_vec())?;
        let g = invert(&f.embed(), f.order())?;
        let closed = closed_inverse_mfold(m, a[0], a[1], a[2])?;
        let mu = m as usize;
        println!("m = {m}");
        for j in 0..3 {
            let idx = (j + 1) * mu + 1;
            let generic = g.coeff(idx).unwrap_or_default();
            println!(
                "  b_{idx:<2} generic {generic:.12}  closed {:.12}  gap {:.1e}",
                closed.b[j],
                (generic - closed.b[j]).norm()
            );
        }
    }
    Ok(())
}
