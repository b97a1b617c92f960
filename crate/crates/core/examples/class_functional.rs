//! The class functional as a series, checked against its closed-form coefficients.

use mfold_bounds::functional::{closed_coeffs, functional_series, Side};
use mfold_bounds::{ClassParams, Complex64, MFoldFn, Result};

fn main() -> Result<()> {
    let p = ClassParams::theta(Complex64::new(0.8, 0.3), 1.5, 0.4, 2, 3, 0.2)?;
    let a = [
        Complex64::new(0.05, 0.02),
        Complex64::new(-0.01, 0.03),
        Complex64::new(0.004, 0.0),
    ];
    let f = MFoldFn::new(p.m, a.to_vec())?;
    let closed = closed_coeffs(&p, a[0], a[1]);

    for (side, (c_m, c_2m)) in [
        (Side::Forward, closed.forward),
        (Side::Inverse, closed.inverse),
    ] {
        let d = functional_series(&f, &p, side)?;
        println!("{side:?}");
        println!(
            "  z^m   series {:.12}  closed {c_m:.12}",
            d.coeff(1).unwrap_or_default()
        );
        println!(
            "  z^2m  series {:.12}  closed {c_2m:.12}",
            d.coeff(2).unwrap_or_default()
        );
        println!("  D(0.5) = {:.6}", d.eval(Complex64::new(0.5, 0.0)));
    }
    Ok(())
}
