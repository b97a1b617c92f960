//! Closed-form versus oracle suites: inverse coefficients against generic
//! reversion, functional coefficients against the series pipeline, the bridge
//! between the two class bounds, and the corollary reduction matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{random_params, reduction_matrix, theorem1_bounds, theorem2_bounds, Parent};
use crate::error::Result;
use crate::functional::{closed_coeffs, functional_series_perturbed, Side};
use crate::inversion::{closed_inverse_1fold, closed_inverse_mfold, invert};
use crate::params::{ClassKind, ClassParams};
use crate::series::MFoldFn;

pub const INVERSE_TOL: f64 = 1e-10;
pub const FUNCTIONAL_TOL: f64 = 1e-10;
pub const BRIDGE_TOL: f64 = 1e-12;

pub const INVERSE_CASES: usize = 200;
pub const FUNCTIONAL_CASES: usize = 500;
pub const BRIDGE_CASES: usize = 200;
const INVERSE_M: [u32; 4] = [1, 2, 3, 5];

/// Deliberate corruption of one Ruscheweyh factor, to confirm the suites notice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fault {
    /// Symmetric index `k` whose factor is scaled.
    pub k: u32,
    pub scale: f64,
}

impl Default for Fault {
    fn default() -> Self {
        Fault {
            k: 1,
            scale: 1.0 + 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn from_deviations(name: &str, tolerance: f64, devs: &[f64]) -> Self {
        let failures = devs
            .iter()
            .filter(|d| d.is_nan() || **d > tolerance)
            .count();
        let max_deviation =
            devs.iter()
                .copied()
                .fold(0.0, |a, d| if d.is_nan() { f64::NAN } else { a.max(d) });
        SuiteResult {
            name: name.to_string(),
            cases: devs.len(),
            failures,
            max_deviation,
            tolerance,
            passed: failures == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

pub fn run_all(opts: &VerifyOptions) -> Result<VerifySummary> {
    let suites = vec![
        inverse_suite(opts.seed)?,
        inverse_1fold_suite(opts.seed)?,
        functional_suite(opts.seed, opts.fault)?,
        bridge_suite(opts.seed)?,
        reduction_suite(),
    ];
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifySummary { suites, passed })
}

fn rng_for(seed: u64, stream: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(case as u128 * 1024);
    rng
}

/// Uniform point in the disk `|z| < radius`.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Random m-fold function with `k` coefficients in the unit disk.
pub fn random_mfold<R: Rng>(rng: &mut R, m: u32, k: usize) -> MFoldFn {
    let coeffs = (0..k).map(|_| disk_point(rng, 1.0)).collect();
    MFoldFn::new(m, coeffs).expect("m >= 1")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Closed-form `b_{m+1}, b_{2m+1}, b_{3m+1}` against generic reversion.
pub fn inverse_suite(seed: u64) -> Result<SuiteResult> {
    let devs = (0..INVERSE_CASES)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, 1, i);
            let m = INVERSE_M[i % INVERSE_M.len()];
            let f = random_mfold(&mut rng, m, 3);
            let c = f.coeffs();
            let emb = f.embed();
            let g = invert(&emb, emb.order())?;
            let closed = closed_inverse_mfold(m, c[0], c[1], c[2])?;
            let mu = m as usize;
            Ok((0..3)
                .map(|j| rel(closed.b[j], g.coeff((j + 1) * mu + 1).unwrap_or_default()))
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SuiteResult::from_deviations(
        "inverse_mfold",
        INVERSE_TOL,
        &devs,
    ))
}

/// The m-fold closed form at `m = 1` against the 1-fold one; equality is exact.
pub fn inverse_1fold_suite(seed: u64) -> Result<SuiteResult> {
    let devs = (0..INVERSE_CASES)
        .map(|i| {
            let mut rng = rng_for(seed, 2, i);
            let f = random_mfold(&mut rng, 1, 3);
            let c = f.coeffs();
            let a = closed_inverse_1fold(c[0], c[1], c[2]);
            let b = closed_inverse_mfold(1, c[0], c[1], c[2])?;
            Ok((0..3).map(|j| (a.b[j] - b.b[j]).norm()).fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SuiteResult::from_deviations(
        "inverse_1fold_equality",
        0.0,
        &devs,
    ))
}

/// Series-pipeline `z^m`, `z^{2m}` coefficients of the functional against the
/// closed forms, forward and inverse.
pub fn functional_suite(seed: u64, fault: Option<Fault>) -> Result<SuiteResult> {
    let perturb = fault.map(|f| (f.k, f.scale));
    let devs = (0..FUNCTIONAL_CASES)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, 3, i);
            let parent = if i % 2 == 0 { Parent::Q } else { Parent::Theta };
            let p = random_params(&mut rng, parent);
            let f = random_mfold(&mut rng, p.m, 3);
            let c = f.coeffs();
            let closed = closed_coeffs(&p, c[0], c[1]);
            let fwd = functional_series_perturbed(&f, &p, Side::Forward, perturb)?;
            let inv = functional_series_perturbed(&f, &p, Side::Inverse, perturb)?;
            let pairs = [
                (fwd.coeff(1), closed.forward.0),
                (fwd.coeff(2), closed.forward.1),
                (inv.coeff(1), closed.inverse.0),
                (inv.coeff(2), closed.inverse.1),
            ];
            Ok(pairs
                .iter()
                .map(|(s, c)| rel(s.unwrap_or_default(), *c))
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SuiteResult::from_deviations(
        "functional_expansion",
        FUNCTIONAL_TOL,
        &devs,
    ))
}

/// Class-Q `|a_{m+1}|` bound at `α = 1` against the class-Θ square-root branch at `β = 0`.
pub fn bridge_suite(seed: u64) -> Result<SuiteResult> {
    let devs = (0..BRIDGE_CASES)
        .map(|i| {
            let mut rng = rng_for(seed, 4, i);
            let base = random_params(&mut rng, Parent::Q);
            let q = ClassParams {
                kind: ClassKind::Q { alpha: 1.0 },
                ..base
            };
            let t = ClassParams {
                kind: ClassKind::Theta { beta: 0.0 },
                ..base
            };
            let a = theorem1_bounds(&q)?.bound_am1;
            let b = theorem2_bounds(&t)?
                .alt_values
                .square_root
                .unwrap_or(f64::NAN);
            Ok((a - b).abs() / b.abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SuiteResult::from_deviations(
        "bound_bridge",
        BRIDGE_TOL,
        &devs,
    ))
}

pub fn reduction_suite() -> SuiteResult {
    let rows = reduction_matrix();
    let devs: Vec<f64> = rows.iter().map(|r| r.max_deviation).collect();
    let mut s =
        SuiteResult::from_deviations("reduction_matrix", crate::bounds::REDUCTION_TOL, &devs);
    s.cases = rows.iter().map(|r| r.grid_points).sum();
    s
}
