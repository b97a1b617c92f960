//! The defining functional of the two classes,
//!
//! ```text
//! D(z) = 1 + (1/τ)[(1−λ)(1−γ)·R^δf(z)/z + (λ(γ+1)+γ)·(R^δf)′(z) + λγ(z·(R^δf)″(z) − 2) − 1]
//! ```
//!
//! built through the series engine, alongside the closed forms of its
//! `z^m` and `z^{2m}` coefficients and a sampled membership margin.
//!
//! On the inverse side the quotient is `R^δg(w)/w`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inversion::invert;
use crate::operators::ruscheweyh_mfold_perturbed;
use crate::params::{ClassKind, ClassParams};
use crate::series::{MFoldFn, TruncatedSeries};

/// Samples with `|D|` below this are rejected instead of assigned an angle.
pub const VANISHING_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Forward,
    Inverse,
}

/// `D` as a series in `z` (or `w` on the inverse side); only powers `z^{jm}` occur.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalSeries {
    pub series: TruncatedSeries,
    pub side: Side,
    pub m: u32,
}

impl FunctionalSeries {
    /// Coefficient of `z^{jm}`.
    pub fn coeff(&self, j: usize) -> Option<Complex64> {
        self.series.coeff(j * self.m as usize)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.series.eval(z)
    }
}

pub fn functional_series(f: &MFoldFn, p: &ClassParams, side: Side) -> Result<FunctionalSeries> {
    functional_series_perturbed(f, p, side, None)
}

pub(crate) fn functional_series_perturbed(
    f: &MFoldFn,
    p: &ClassParams,
    side: Side,
    perturb: Option<(u32, f64)>,
) -> Result<FunctionalSeries> {
    if f.m() != p.m {
        return Err(Error::InvalidParams(format!(
            "function is {}-fold but parameters have m = {}",
            f.m(),
            p.m
        )));
    }
    if f.k() < 2 {
        return Err(Error::OrderTooLow {
            needed: 2,
            actual: f.k(),
        });
    }
    let h = match side {
        Side::Forward => f.clone(),
        Side::Inverse => MFoldFn::from_series(&invert(&f.embed(), f.order())?, f.m())?,
    };
    let r = ruscheweyh_mfold_perturbed(&h, p.delta, perturb)?.embed();

    let quotient = r.shift_down(1)?;
    let d1 = r.derivative()?;
    let z_d2 = d1.derivative()?.shift_up(1);

    let (l, g) = (p.lambda, p.gamma);
    let order = quotient.order();
    let two = TruncatedSeries::constant(Complex64::new(2.0, 0.0), order);
    let one = TruncatedSeries::one(order);
    let bracket = quotient
        .scale_real((1.0 - l) * (1.0 - g))
        .add(&d1.scale_real(l * (g + 1.0) + g))
        .add(&z_d2.sub(&two).scale_real(l * g))
        .sub(&one);
    let series = one.add(&bracket.scale(p.tau.inv()));
    Ok(FunctionalSeries {
        series,
        side,
        m: p.m,
    })
}

/// Closed forms of the `z^m` and `z^{2m}` coefficients on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedCoeffs {
    pub forward: (Complex64, Complex64),
    pub inverse: (Complex64, Complex64),
}

pub fn closed_coeffs(p: &ClassParams, a_m1: Complex64, a_2m1: Complex64) -> ClosedCoeffs {
    let d = p.delta as f64;
    let tau_inv = p.tau.inv();
    let first = tau_inv * (p.psi() * (d + 1.0));
    let second = tau_inv * (p.phi1() * (d + 1.0) * (d + 2.0) / 2.0);
    let mf = p.m as f64;
    ClosedCoeffs {
        forward: (first * a_m1, second * a_2m1),
        inverse: (-first * a_m1, second * ((mf + 1.0) * a_m1 * a_m1 - a_2m1)),
    }
}

/// Sample points `r·e^{iθ}` for membership margins.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginGrid {
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
}

impl MarginGrid {
    /// `count` equally spaced angles covering `[0, 2π/m)`.
    pub fn sector(radii: Vec<f64>, m: u32, count: usize) -> Self {
        let width = 2.0 * PI / m.max(1) as f64;
        let thetas = (0..count)
            .map(|i| width * i as f64 / count as f64)
            .collect();
        Self { radii, thetas }
    }

    /// Radii 0.5, 0.9, 0.99 with 256 angles per sector.
    pub fn default_for(m: u32) -> Self {
        Self::sector(vec![0.5, 0.9, 0.99], m, 256)
    }

    pub fn rotated(&self, offset: f64) -> Self {
        Self {
            radii: self.radii.clone(),
            thetas: self.thetas.iter().map(|t| t + offset).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.thetas.is_empty() {
            return Err(Error::InvalidGrid("membership grid is empty".into()));
        }
        if let Some(r) = self.radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::InvalidGrid(format!("radius {r} outside (0, 1)")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusMargin {
    pub r: f64,
    pub forward: f64,
    pub inverse: f64,
}

/// Margins of the truncated functional on a sample grid.
///
/// Class Q: `απ/2 − max|arg D|`. Class Θ: `min Re D − β`. Positive means the
/// samples are consistent with membership; negative is a violation of the
/// truncation at some sample point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipMargins {
    pub forward: f64,
    pub inverse: f64,
    pub per_radius: Vec<RadiusMargin>,
}

pub fn membership_margin(
    f: &MFoldFn,
    p: &ClassParams,
    grid: &MarginGrid,
) -> Result<MembershipMargins> {
    grid.validate()?;
    let fwd = functional_series(f, p, Side::Forward)?;
    let inv = functional_series(f, p, Side::Inverse)?;
    let per_radius = grid
        .radii
        .iter()
        .map(|&r| {
            Ok(RadiusMargin {
                r,
                forward: ring_margin(&fwd, p, r, &grid.thetas)?,
                inverse: ring_margin(&inv, p, r, &grid.thetas)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min =
        |sel: fn(&RadiusMargin) -> f64| per_radius.iter().map(sel).fold(f64::INFINITY, f64::min);
    Ok(MembershipMargins {
        forward: min(|x| x.forward),
        inverse: min(|x| x.inverse),
        per_radius,
    })
}

fn ring_margin(d: &FunctionalSeries, p: &ClassParams, r: f64, thetas: &[f64]) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for &t in thetas {
        let z = Complex64::from_polar(r, t);
        let v = d.eval(z);
        if v.norm() < VANISHING_TOL {
            return Err(Error::VanishingFunctional {
                modulus: v.norm(),
                z: z.to_string(),
            });
        }
        let margin = match p.kind {
            ClassKind::Q { alpha } => alpha * PI / 2.0 - v.arg().abs(),
            ClassKind::Theta { beta } => v.re - beta,
        };
        worst = worst.min(margin);
    }
    Ok(worst)
}
