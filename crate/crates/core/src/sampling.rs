//! Carathéodory-class sampling and the bound-certification harness.
//!
//! [`HerglotzFn`] mixes Möbius atoms `(1 + u z^m)/(1 − u z^m)` so that every
//! draw has positive real part and coefficients `|p_k| <= 2`. The harness
//! draws coefficient data `(p_m, p_2m, q_m = −p_m, q_2m)` directly from the
//! constraint region, rebuilds `a_{m+1}` and `a_{2m+1}` from the coefficient
//! identities of each class, and compares them with the closed-form bounds.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{class_bounds, BoundReport};
use crate::error::{Error, Result};
use crate::params::{ClassKind, ClassParams};
use crate::series::TruncatedSeries;

/// Largest admissible `|p_k|`, with slack for rounding.
pub const COEFF_LIMIT: f64 = 2.0 + 1e-12;
/// Relative slack allowed when comparing a reconstruction with its bound.
pub const CERT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub weight: f64,
    pub point: Complex64,
}

/// Convex combination of Möbius atoms in the variable `z^m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HerglotzFn {
    pub m: u32,
    atoms: Vec<Atom>,
}

impl HerglotzFn {
    pub fn new(m: u32, atoms: Vec<Atom>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroSymmetry);
        }
        if atoms.is_empty() {
            return Err(Error::InvalidSample("at least one atom is required".into()));
        }
        if atoms.iter().any(|a| a.weight.is_nan() || a.weight < 0.0) {
            return Err(Error::InvalidSample(
                "atom weights must be non-negative".into(),
            ));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSample(format!(
                "weights sum to {total}, not 1"
            )));
        }
        if atoms.iter().any(|a| (a.point.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidSample(
                "atom points must be unimodular".into(),
            ));
        }
        Ok(Self { m, atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `p_k = 2 Σ c_j u_j^k`, the coefficient of `z^{km}`.
    pub fn coeff(&self, k: u32) -> Complex64 {
        if k == 0 {
            return Complex64::new(1.0, 0.0);
        }
        self.atoms
            .iter()
            .map(|a| a.point.powu(k) * a.weight)
            .sum::<Complex64>()
            * 2.0
    }

    /// `1 + Σ_{k=1..K} p_k z^{km}` as a series of order `mK`.
    pub fn series(&self, k: u32) -> TruncatedSeries {
        let m = self.m as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m * k as usize + 1];
        for j in 0..=k {
            coeffs[m * j as usize] = self.coeff(j);
        }
        TruncatedSeries::new(coeffs).expect("non-empty")
    }

    /// Closed-form value at `z` inside the disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z.powu(self.m);
        self.atoms
            .iter()
            .map(|a| {
                (Complex64::new(1.0, 0.0) + a.point * w) / (Complex64::new(1.0, 0.0) - a.point * w)
                    * a.weight
            })
            .sum()
    }
}

/// Random mixture of `atoms` Möbius atoms; weights uniform on the simplex.
pub fn sample_herglotz(seed: u64, atoms: usize, m: u32) -> Result<HerglotzFn> {
    if atoms == 0 {
        return Err(Error::InvalidSample("atom count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // normalized exponentials are uniform on the simplex
    let raw: Vec<f64> = (0..atoms)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    let list = raw
        .iter()
        .map(|w| Atom {
            weight: w / total,
            point: Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)),
        })
        .collect();
    HerglotzFn::new(m, list)
}

/// `max_{1<=k<=K} |p_k|`.
pub fn lemma1_check(h: &HerglotzFn, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidSample("K must be >= 1".into()));
    }
    Ok((1..=k).map(|j| h.coeff(j).norm()).fold(0.0, f64::max))
}

/// Coefficient data of the two Carathéodory functions attached to `f` and its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstraintSample {
    pub p_m: Complex64,
    pub p_2m: Complex64,
    pub q_m: Complex64,
    pub q_2m: Complex64,
}

impl ConstraintSample {
    /// Sets `q_m = −p_m`; every modulus must be at most 2.
    pub fn new(p_m: Complex64, p_2m: Complex64, q_2m: Complex64) -> Result<Self> {
        for (name, v) in [("p_m", p_m), ("p_2m", p_2m), ("q_2m", q_2m)] {
            if v.norm().is_nan() || v.norm() > COEFF_LIMIT {
                return Err(Error::InvalidSample(format!(
                    "|{name}| = {} exceeds 2",
                    v.norm()
                )));
            }
        }
        Ok(Self {
            p_m,
            p_2m,
            q_m: -p_m,
            q_2m,
        })
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            p_m: z,
            p_2m: z,
            q_m: z,
            q_2m: z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QReconstruction {
    pub am1_squared: Complex64,
    pub a2m1: Complex64,
    /// `a_{2m+1}` from subtracting the two `z^{2m}` identities and
    /// eliminating `a_{m+1}^2`, without the halved first term.
    pub a2m1_rederived: Complex64,
}

/// Class Q: `a_{m+1}^2` and `a_{2m+1}` from the coefficient data.
pub fn reconstruct_q(s: &ConstraintSample, p: &ClassParams) -> Result<QReconstruction> {
    let alpha = p.alpha().ok_or(Error::WrongClass { expected: "Q" })?;
    let (d, m) = (p.delta as f64, p.m as f64);
    let (phi1, phi2) = (p.phi1(), p.phi2());
    let tau = p.tau;
    let denom = (tau * (alpha * (d + 2.0) * (m + 1.0) * phi1)
        + Complex64::new(2.0 * (1.0 - alpha) * (d + 1.0) * phi2, 0.0))
        * (d + 1.0);
    if denom.norm() < crate::bounds::DEGENERATE_TOL {
        return Err(Error::Degenerate("class Q reconstruction of a_{m+1}^2"));
    }
    let am1_squared = tau * tau * (2.0 * alpha * alpha) * (s.p_2m + s.q_2m) / denom;
    let sq = s.p_m * s.p_m + s.q_m * s.q_m;
    let second = tau * tau * (alpha * alpha * (m + 1.0)) * sq / (4.0 * (d + 1.0).powi(2) * phi2);
    let diff = tau * alpha * (s.p_2m - s.q_2m) / ((d + 1.0) * (d + 2.0) * phi1);
    Ok(QReconstruction {
        am1_squared,
        a2m1: diff * 0.5 + second,
        a2m1_rederived: diff + second,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaReconstruction {
    /// From the `z^m` identities alone.
    pub am1_sq_linear: Complex64,
    /// From the sum of the `z^{2m}` identities.
    pub am1_sq_sqrt: Complex64,
    /// `a_{2m+1}` using the `z^m` route for `a_{m+1}^2`.
    pub a2m1_mixed: Complex64,
    /// `a_{2m+1}` using the `z^{2m}` route, which collapses to `p_2m` alone.
    pub a2m1_direct: Complex64,
    /// `|am1_sq_linear − am1_sq_sqrt|`; zero only for data from a genuine class member.
    pub residual: f64,
}

pub fn reconstruct_theta(s: &ConstraintSample, p: &ClassParams) -> Result<ThetaReconstruction> {
    let beta = p.beta().ok_or(Error::WrongClass { expected: "Theta" })?;
    let (d, m) = (p.delta as f64, p.m as f64);
    let (psi, phi1) = (p.psi(), p.phi1());
    let tau = p.tau;
    let b = 1.0 - beta;
    let sq = s.p_m * s.p_m + s.q_m * s.q_m;
    let am1_sq_linear = tau * tau * (b * b) * sq / (2.0 * (d + 1.0).powi(2) * psi * psi);
    let am1_sq_sqrt =
        tau * (2.0 * b) * (s.p_2m + s.q_2m) / ((d + 1.0) * (d + 2.0) * (m + 1.0) * phi1);
    let a2m1_mixed = tau * tau * (b * b * (m + 1.0)) * sq / (4.0 * (d + 1.0).powi(2) * psi * psi)
        + tau * b * (s.p_2m - s.q_2m) / ((d + 1.0) * (d + 2.0) * phi1);
    let a2m1_direct = tau * (2.0 * b) * s.p_2m / ((d + 1.0) * (d + 2.0) * phi1);
    Ok(ThetaReconstruction {
        am1_sq_linear,
        am1_sq_sqrt,
        a2m1_mixed,
        a2m1_direct,
        residual: (am1_sq_linear - am1_sq_sqrt).norm(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Grid,
    Random,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "grid" => Ok(Strategy::Grid),
            "random" => Ok(Strategy::Random),
            other => Err(format!("unknown strategy {other:?} (grid | random)")),
        }
    }
}

/// Largest observed ratio of one reconstructed quantity to its bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub bound: f64,
    pub max_value: f64,
    pub max_ratio: f64,
    pub argmax: usize,
    /// Gating checks decide the pass/fail verdict.
    pub gating: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificationReport {
    pub params: ClassParams,
    pub strategy: Option<Strategy>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<BoundCheck>,
    /// Largest gap between the two `a_{m+1}^2` routes (class Θ only).
    pub max_residual: Option<f64>,
    pub skipped: usize,
    pub passed: bool,
}

impl CertificationReport {
    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct CheckSpec {
    name: &'static str,
    bound: f64,
    gating: bool,
}

fn check_specs(r: &BoundReport) -> Vec<CheckSpec> {
    match r.params.kind {
        ClassKind::Q { .. } => vec![
            CheckSpec {
                name: "am1",
                bound: r.bound_am1,
                gating: true,
            },
            CheckSpec {
                name: "a2m1",
                bound: r.bound_a2m1,
                gating: true,
            },
            CheckSpec {
                name: "a2m1_rederived",
                bound: r.bound_a2m1,
                gating: false,
            },
        ],
        ClassKind::Theta { .. } => vec![
            CheckSpec {
                name: "am1_linear",
                bound: r.alt_values.linear.unwrap_or(f64::NAN),
                gating: true,
            },
            CheckSpec {
                name: "am1_sqrt",
                bound: r.alt_values.square_root.unwrap_or(f64::NAN),
                gating: true,
            },
            CheckSpec {
                name: "a2m1",
                bound: r.bound_a2m1,
                gating: true,
            },
            CheckSpec {
                name: "a2m1_alt",
                bound: r.alt_values.a2m1_alternative.unwrap_or(f64::NAN),
                gating: true,
            },
        ],
    }
}

/// Reconstructed moduli in the order of [`check_specs`], plus the route residual.
fn evaluate(s: &ConstraintSample, p: &ClassParams) -> Result<(Vec<f64>, Option<f64>)> {
    match p.kind {
        ClassKind::Q { .. } => {
            let r = reconstruct_q(s, p)?;
            Ok((
                vec![
                    r.am1_squared.norm().sqrt(),
                    r.a2m1.norm(),
                    r.a2m1_rederived.norm(),
                ],
                None,
            ))
        }
        ClassKind::Theta { .. } => {
            let r = reconstruct_theta(s, p)?;
            Ok((
                vec![
                    r.am1_sq_linear.norm().sqrt(),
                    r.am1_sq_sqrt.norm().sqrt(),
                    r.a2m1_direct.norm(),
                    r.a2m1_mixed.norm(),
                ],
                Some(r.residual),
            ))
        }
    }
}

/// Evaluate an explicit list of samples against the bounds for `p`.
pub fn probe_samples(p: &ClassParams, samples: &[ConstraintSample]) -> Result<CertificationReport> {
    let bounds = class_bounds(p)?;
    let specs = check_specs(&bounds);
    let evaluated: Vec<Option<(Vec<f64>, Option<f64>)>> = samples
        .par_iter()
        .map(|s| match evaluate(s, p) {
            Ok(v) => Ok(Some(v)),
            Err(Error::Degenerate(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let mut checks: Vec<BoundCheck> = specs
        .iter()
        .map(|s| BoundCheck {
            name: s.name.to_string(),
            bound: s.bound,
            max_value: 0.0,
            max_ratio: 0.0,
            argmax: 0,
            gating: s.gating,
            passed: true,
        })
        .collect();
    let mut max_residual: Option<f64> = None;
    let mut skipped = 0;
    for (i, entry) in evaluated.iter().enumerate() {
        let Some((values, residual)) = entry else {
            skipped += 1;
            continue;
        };
        for (c, &v) in checks.iter_mut().zip(values) {
            let ratio = ratio(v, c.bound);
            if ratio > c.max_ratio || ratio.is_nan() {
                c.max_ratio = ratio;
                c.argmax = i;
            }
            c.max_value = c.max_value.max(v);
        }
        if let Some(r) = residual {
            max_residual = Some(max_residual.map_or(*r, |m: f64| m.max(*r)));
        }
    }
    for c in &mut checks {
        c.passed = c.max_ratio <= 1.0 + CERT_SLACK;
    }
    let passed = checks.iter().filter(|c| c.gating).all(|c| c.passed);
    Ok(CertificationReport {
        params: *p,
        strategy: None,
        samples: samples.len(),
        seed: 0,
        checks,
        max_residual,
        skipped,
        passed,
    })
}

fn ratio(value: f64, bound: f64) -> f64 {
    if value == 0.0 || bound.is_infinite() {
        0.0
    } else {
        value / bound
    }
}

/// Draw `n` samples by `strategy` and certify the class bounds for `p`.
pub fn probe_bounds(
    p: &ClassParams,
    strategy: Strategy,
    n: usize,
    seed: u64,
) -> Result<CertificationReport> {
    if n == 0 {
        return Err(Error::InvalidSample("sample count must be >= 1".into()));
    }
    let samples = match strategy {
        Strategy::Random => random_samples(n, seed),
        Strategy::Grid => grid_samples(p, n),
    };
    let mut report = probe_samples(p, &samples)?;
    report.strategy = Some(strategy);
    report.seed = seed;
    Ok(report)
}

/// Uniform draws on `|p| <= 2`; sample `i` uses its own ChaCha stream so the
/// result does not depend on how samples are scheduled.
pub fn random_samples(n: usize, seed: u64) -> Vec<ConstraintSample> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut disk = || {
                Complex64::from_polar(
                    2.0 * rng.random::<f64>().sqrt(),
                    rng.random_range(0.0..2.0 * PI),
                )
            };
            let (p_m, p_2m, q_2m) = (disk(), disk(), disk());
            ConstraintSample::new(p_m, p_2m, q_2m).expect("draws lie in the disk")
        })
        .collect()
}

/// Extremal configurations for `p`, then a boundary-heavy lattice, truncated to `n`.
pub fn grid_samples(p: &ClassParams, n: usize) -> Vec<ConstraintSample> {
    let mut out = extremal_samples(p);
    let side = (n as f64).cbrt().ceil().max(1.0) as usize;
    let points = lattice_points(side);
    'fill: for &a in &points {
        for &b in &points {
            for &c in &points {
                if out.len() >= n {
                    break 'fill;
                }
                out.push(ConstraintSample::new(a, b, c).expect("lattice lies in the disk"));
            }
        }
    }
    out.truncate(n);
    out
}

/// Samples on `|p| = 2` aligned with the phase of `τ`, where each bound is attained.
pub fn extremal_samples(p: &ClassParams) -> Vec<ConstraintSample> {
    let two = Complex64::new(2.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let aligned = Complex64::from_polar(2.0, -p.tau.arg());
    [
        (zero, two, two),
        (two, zero, zero),
        (zero, two, zero),
        (aligned, aligned, -aligned),
        (two, two, two),
        (two, two, -two),
    ]
    .into_iter()
    .map(|(a, b, c)| ConstraintSample::new(a, b, c).expect("extremal points lie in the disk"))
    .collect()
}

/// About half the points on the circle `|p| = 2` (phases include 0 and π),
/// the rest on interior rings, plus the origin.
fn lattice_points(count: usize) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    if count <= 1 {
        return pts;
    }
    let boundary = (count / 2).max(2);
    let boundary = boundary + boundary % 2;
    pts.extend(
        (0..boundary).map(|j| Complex64::from_polar(2.0, 2.0 * PI * j as f64 / boundary as f64)),
    );
    let rest = count.saturating_sub(pts.len());
    let rings = ((rest as f64).sqrt().ceil() as usize).max(1);
    let per_ring = rest.div_ceil(rings).max(1);
    for r in 1..=rings {
        let radius = 2.0 * r as f64 / (rings + 1) as f64;
        for j in 0..per_ring {
            if pts.len() >= count {
                break;
            }
            pts.push(Complex64::from_polar(
                radius,
                2.0 * PI * j as f64 / per_ring as f64,
            ));
        }
    }
    pts.truncate(count.max(2));
    pts
}
