//! Truncated series arithmetic: products, composition, log/exp and real powers.

use mfold_bounds::series::symmetrize;
use mfold_bounds::{Result, TruncatedSeries};

fn main() -> Result<()> {
    let order = 6;
    let z = TruncatedSeries::identity(order);
    let one = TruncatedSeries::one(order);

    // z/(1-z) = z + z^2 + z^3 + ...
    let koebe = z.mul(&(&one - &z).reciprocal()?);
    println!("z/(1-z)        = {koebe}");

    // 1/(1-z)^{1/2}
    let root = (&one - &z).pow_real(-0.5)?;
    println!("(1-z)^(-1/2)   = {root}");

    let log = (&one + &z).log1()?;
    let back = log.exp0()?;
    println!("exp(log(1+z))  = {back}");
    println!("round-trip gap = {:.1e}", back.max_abs_diff(&(&one + &z)));

    let inner = z.scale_real(0.5);
    println!("koebe(z/2)     = {}", koebe.compose(&inner)?);

    let sym = symmetrize(&koebe, 3, 4)?;
    println!("3-fold koebe   = {}", sym.embed());
    Ok(())
}
