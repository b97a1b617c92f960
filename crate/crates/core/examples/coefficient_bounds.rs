//! Bounds on |a_{m+1}| and |a_{2m+1}|, the corollary forms, and the branch map.

use mfold_bounds::bounds::{
    applicable_corollaries, class_bounds, corollary_bounds, min_branch_report, ParamGrid, Parent,
    Range,
};
use mfold_bounds::{ClassParams, Complex64, Result};

fn main() -> Result<()> {
    let q = ClassParams::q(Complex64::new(1.0, 0.5), 1.0, 0.5, 1, 2, 0.6)?;
    let r = class_bounds(&q)?;
    println!(
        "class Q:     |a_(m+1)| <= {:.6}  |a_(2m+1)| <= {:.6}",
        r.bound_am1, r.bound_a2m1
    );

    let t = ClassParams::theta(Complex64::new(1.0, 0.0), 1.0, 0.0, 0, 1, 0.0)?;
    let r = class_bounds(&t)?;
    println!(
        "class Theta: |a_2| <= min({:.6}, {:.6}) = {:.6} [{}]  |a_3| <= {:.6}",
        r.alt_values.linear.unwrap_or_default(),
        r.alt_values.square_root.unwrap_or_default(),
        r.bound_am1,
        r.active_branch.as_str(),
        r.bound_a2m1
    );
    for id in applicable_corollaries(&t) {
        let c = corollary_bounds(id, &t)?;
        println!("  corollary {id}: {:.6} {:.6}", c.bound_am1, c.bound_a2m1);
    }
    for note in &r.notes {
        println!("  note: {note}");
    }

    let grid = ParamGrid {
        tau_arg: 0.0,
        tau_abs: Range::new(0.25, 2.0, 8)?,
        lambda: Range::single(1.0),
        gamma: Range::single(0.0),
        delta: vec![0],
        m: vec![1],
        class: Parent::Theta,
        shape: Range::single(0.0),
    };
    println!("\n|tau|   linear    sqrt      active");
    for row in min_branch_report(&grid)? {
        println!(
            "{:<6.3} {:<9.5} {:<9.5} {}",
            row.params.tau.norm(),
            row.linear,
            row.square_root,
            row.active.as_str()
        );
    }
    Ok(())
}
