//! Closed-form coefficient bounds for both classes, their corollary
//! specializations, the reduction checks tying each corollary to its parent
//! bound, and the branch analysis of the two-branch `|a_{m+1}|` estimate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ClassKind, ClassParams};

/// Relative gap under which the two branches are reported as a tie.
pub const TIE_TOL: f64 = 1e-12;
/// `(δ+1)·|denominator|` below this makes the class-Q leading bound unbounded.
pub const DEGENERATE_TOL: f64 = 1e-14;
/// Allowed deviation between a corollary and its specialized parent.
pub const REDUCTION_TOL: f64 = 1e-12;

pub const NOTE_INVERSE_QUOTIENT: &str =
    "inverse-side functional uses R^delta g(w)/w as the quotient term";
pub const NOTE_SQRT_BRANCH: &str =
    "sqrt branch uses Phi1 to the first power; the squared-Phi1 variant does not follow from a_{m+1}^2 = 2tau(1-beta)(p_2m+q_2m)/((delta+1)(delta+2)(m+1)Phi1)";
pub const NOTE_ALT_A2M1: &str =
    "alt a2m1 bound 2|tau|^2(1-beta)^2(m+1)/((delta+1)^2 Phi2) + 4|tau|(1-beta)/((delta+1)(delta+2)Phi1) is reported only";
pub const NOTE_Q_A2M1: &str =
    "a2m1 bound keeps 2|tau|alpha/((delta+1)(delta+2)Phi1) as its first term; eliminating a_{m+1}^2 from the coefficient system gives 4|tau|alpha/((delta+1)(delta+2)Phi1) for that term";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiValues {
    pub phi1: f64,
    pub phi2: f64,
}

pub fn phi(lambda: f64, gamma: f64, m: u32) -> PhiValues {
    let m = m as f64;
    let phi1 = 1.0 + 2.0 * (lambda + gamma) * m + lambda * gamma * ((2.0 * m + 1.0).powi(2) + 1.0);
    let psi = 1.0 + (lambda + gamma) * m + lambda * gamma * ((m + 1.0).powi(2) + 1.0);
    PhiValues {
        phi1,
        phi2: psi * psi,
    }
}

/// Which term of a two-branch minimum is active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The bound has a single form.
    Single,
    Linear,
    SquareRoot,
    Tie,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Single => "single",
            Branch::Linear => "linear",
            Branch::SquareRoot => "square_root",
            Branch::Tie => "tie",
        }
    }

    fn pick(linear: f64, sqrt: f64) -> Self {
        let scale = linear.abs().max(sqrt.abs());
        if (linear - sqrt).abs() <= TIE_TOL * scale {
            Branch::Tie
        } else if linear < sqrt {
            Branch::Linear
        } else {
            Branch::SquareRoot
        }
    }
}

/// Individual values behind the headline bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct AltValues {
    pub linear: Option<f64>,
    pub square_root: Option<f64>,
    pub a2m1_alternative: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub params: ClassParams,
    pub bound_am1: f64,
    pub bound_a2m1: f64,
    pub active_branch: Branch,
    pub alt_values: AltValues,
    pub notes: Vec<String>,
}

/// Bounds on `|a_{m+1}|` and `|a_{2m+1}|` for the argument class Q.
pub fn theorem1_bounds(p: &ClassParams) -> Result<BoundReport> {
    let alpha = p.alpha().ok_or(Error::WrongClass { expected: "Q" })?;
    let PhiValues { phi1, phi2 } = phi(p.lambda, p.gamma, p.m);
    let d = p.delta as f64;
    let m = p.m as f64;
    let tau_abs = p.tau.norm();

    let mut notes = vec![NOTE_INVERSE_QUOTIENT.to_string(), NOTE_Q_A2M1.to_string()];
    let denom = p.tau * (alpha * (d + 2.0) * (m + 1.0) * phi1)
        + Complex64::new(2.0 * (1.0 - alpha) * (d + 1.0) * phi2, 0.0);
    let scaled = (d + 1.0) * denom.norm();
    let bound_am1 = if scaled < DEGENERATE_TOL {
        notes.push("degenerate denominator: |a_{m+1}| is unbounded".into());
        f64::INFINITY
    } else {
        2.0 * 2f64.sqrt() * tau_abs * alpha / scaled.sqrt()
    };
    let bound_a2m1 = 2.0 * tau_abs * alpha / ((d + 1.0) * (d + 2.0) * phi1)
        + 2.0 * tau_abs.powi(2) * alpha.powi(2) * (m + 1.0) / ((d + 1.0).powi(2) * phi2);
    Ok(BoundReport {
        params: *p,
        bound_am1,
        bound_a2m1,
        active_branch: Branch::Single,
        alt_values: AltValues::default(),
        notes,
    })
}

/// Bounds for the real-part class Θ; `|a_{m+1}|` is the smaller of two branches.
pub fn theorem2_bounds(p: &ClassParams) -> Result<BoundReport> {
    let beta = p.beta().ok_or(Error::WrongClass { expected: "Theta" })?;
    let PhiValues { phi1, phi2 } = phi(p.lambda, p.gamma, p.m);
    let psi = phi2.sqrt();
    let d = p.delta as f64;
    let m = p.m as f64;
    let t = p.tau.norm() * (1.0 - beta);

    let linear = 2.0 * t / ((d + 1.0) * psi);
    let sqrt = 2.0 * (2.0 * t / ((d + 1.0) * (d + 2.0) * (m + 1.0) * phi1)).sqrt();
    let bound_a2m1 = 4.0 * t / ((d + 1.0) * (d + 2.0) * phi1);
    let alt = 2.0 * t * t * (m + 1.0) / ((d + 1.0).powi(2) * phi2) + bound_a2m1;
    Ok(BoundReport {
        params: *p,
        bound_am1: linear.min(sqrt),
        bound_a2m1,
        active_branch: Branch::pick(linear, sqrt),
        alt_values: AltValues {
            linear: Some(linear),
            square_root: Some(sqrt),
            a2m1_alternative: Some(alt),
        },
        notes: vec![
            NOTE_INVERSE_QUOTIENT.to_string(),
            NOTE_SQRT_BRANCH.to_string(),
            NOTE_ALT_A2M1.to_string(),
        ],
    })
}

/// Dispatch on the class kind.
pub fn class_bounds(p: &ClassParams) -> Result<BoundReport> {
    match p.kind {
        ClassKind::Q { .. } => theorem1_bounds(p),
        ClassKind::Theta { .. } => theorem2_bounds(p),
    }
}

/// Which general bound a corollary specializes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parent {
    Q,
    Theta,
}

/// The nine corollaries as parameter substitutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corollary {
    pub id: u8,
    pub parent: Parent,
    pub m: Option<u32>,
    pub delta: Option<u32>,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    pub tau_one: bool,
}

impl Corollary {
    pub const ALL: [Corollary; 9] = [
        Self::theta(1, None, Some(0), None, None, false),
        Self::theta(2, None, Some(0), Some(0.0), None, false),
        Self::theta(3, None, Some(0), Some(0.0), None, true),
        Self::theta(4, None, Some(0), Some(0.0), Some(1.0), true),
        Corollary {
            id: 5,
            parent: Parent::Q,
            m: Some(1),
            delta: None,
            gamma: None,
            lambda: None,
            tau_one: false,
        },
        Self::theta(6, Some(1), None, None, None, false),
        Self::theta(7, Some(1), Some(0), None, None, false),
        Self::theta(8, Some(1), Some(0), Some(0.0), None, true),
        Self::theta(9, Some(1), Some(0), Some(0.0), Some(1.0), true),
    ];

    const fn theta(
        id: u8,
        m: Option<u32>,
        delta: Option<u32>,
        gamma: Option<f64>,
        lambda: Option<f64>,
        tau_one: bool,
    ) -> Self {
        Corollary {
            id,
            parent: Parent::Theta,
            m,
            delta,
            gamma,
            lambda,
            tau_one,
        }
    }

    pub fn get(id: u8) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.id == id)
            .ok_or(Error::Corollary {
                id,
                reason: "valid ids are 1..=9".into(),
            })
    }

    /// Human-readable substitution, e.g. `m=1, delta=0, tau=1`.
    pub fn substitution(&self) -> String {
        let mut parts = Vec::new();
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(d) = self.delta {
            parts.push(format!("delta={d}"));
        }
        if let Some(g) = self.gamma {
            parts.push(format!("gamma={g}"));
        }
        if let Some(l) = self.lambda {
            parts.push(format!("lambda={l}"));
        }
        if self.tau_one {
            parts.push("tau=1".into());
        }
        parts.join(", ")
    }

    /// Force the fixed variables onto `p`.
    pub fn specialize(&self, p: &ClassParams) -> Result<ClassParams> {
        self.check_kind(p)?;
        let mut q = *p;
        if let Some(m) = self.m {
            q.m = m;
        }
        if let Some(d) = self.delta {
            q.delta = d;
        }
        if let Some(g) = self.gamma {
            q.gamma = g;
        }
        if let Some(l) = self.lambda {
            q.lambda = l;
        }
        if self.tau_one {
            q.tau = Complex64::new(1.0, 0.0);
        }
        Ok(q)
    }

    /// True when `p` already satisfies every substitution.
    pub fn applies_to(&self, p: &ClassParams) -> bool {
        self.check_kind(p).is_ok() && self.mismatch(p).is_none()
    }

    fn check_kind(&self, p: &ClassParams) -> Result<()> {
        let ok = matches!(
            (self.parent, p.kind),
            (Parent::Q, ClassKind::Q { .. }) | (Parent::Theta, ClassKind::Theta { .. })
        );
        if ok {
            Ok(())
        } else {
            Err(Error::Corollary {
                id: self.id,
                reason: format!("needs class {:?}, got {}", self.parent, p.kind.name()),
            })
        }
    }

    fn mismatch(&self, p: &ClassParams) -> Option<String> {
        if self.m.is_some_and(|m| p.m != m) {
            return Some(format!(
                "m={} but corollary fixes m={}",
                p.m,
                self.m.unwrap()
            ));
        }
        if self.delta.is_some_and(|d| p.delta != d) {
            return Some(format!("delta={} but corollary fixes delta=0", p.delta));
        }
        if self.gamma.is_some_and(|g| p.gamma != g) {
            return Some(format!("gamma={} but corollary fixes gamma=0", p.gamma));
        }
        if self.lambda.is_some_and(|l| p.lambda != l) {
            return Some(format!("lambda={} but corollary fixes lambda=1", p.lambda));
        }
        if self.tau_one && p.tau != Complex64::new(1.0, 0.0) {
            return Some(format!("tau={} but corollary fixes tau=1", p.tau));
        }
        None
    }

    /// The corollary's own closed forms, written out in their reduced shape.
    pub fn bounds(&self, p: &ClassParams) -> Result<BoundReport> {
        self.check_kind(p)?;
        if let Some(reason) = self.mismatch(p) {
            return Err(Error::Corollary {
                id: self.id,
                reason,
            });
        }
        let (l, g) = (p.lambda, p.gamma);
        let tau = p.tau.norm();
        let m = p.m as f64;
        let d = p.delta as f64;
        let two_branch = |linear: f64, sqrt: f64, a2m1: f64| {
            (
                linear.min(sqrt),
                a2m1,
                Branch::pick(linear, sqrt),
                Some((linear, sqrt)),
            )
        };
        let (am1, a2m1, branch, pair) = match self.id {
            5 => {
                let alpha = p.alpha().expect("kind checked");
                let s = l + g + 5.0 * l * g;
                let den = p.tau * (alpha * (d + 2.0) * (1.0 + 2.0 * s))
                    + Complex64::new((1.0 - alpha) * (d + 1.0) * (1.0 + s).powi(2), 0.0);
                let scaled = (d + 1.0) * den.norm();
                let am1 = if scaled < DEGENERATE_TOL {
                    f64::INFINITY
                } else {
                    2.0 * tau * alpha / scaled.sqrt()
                };
                let a2m1 = 2.0 * tau * alpha / ((d + 1.0) * (d + 2.0) * (1.0 + 2.0 * s))
                    + 4.0 * tau * tau * alpha * alpha / ((d + 1.0).powi(2) * (1.0 + s).powi(2));
                (am1, a2m1, Branch::Single, None)
            }
            _ => {
                let b = 1.0 - p.beta().expect("kind checked");
                match self.id {
                    1 => {
                        let psi = 1.0 + m * (l + g) + l * g * ((m + 1.0).powi(2) + 1.0);
                        let phi1 =
                            1.0 + 2.0 * m * (l + g) + l * g * ((2.0 * m + 1.0).powi(2) + 1.0);
                        two_branch(
                            2.0 * tau * b / psi,
                            2.0 * (tau * b / ((m + 1.0) * phi1)).sqrt(),
                            2.0 * tau * b / phi1,
                        )
                    }
                    2 => two_branch(
                        2.0 * tau * b / (1.0 + m * l),
                        2.0 * (tau * b / ((m + 1.0) * (1.0 + 2.0 * m * l))).sqrt(),
                        2.0 * tau * b / (1.0 + 2.0 * m * l),
                    ),
                    3 => two_branch(
                        2.0 * b / (1.0 + m * l),
                        2.0 * (b / ((m + 1.0) * (1.0 + 2.0 * m * l))).sqrt(),
                        2.0 * b / (1.0 + 2.0 * m * l),
                    ),
                    4 => two_branch(
                        2.0 * b / (1.0 + m),
                        2.0 * (b / ((m + 1.0) * (1.0 + 2.0 * m))).sqrt(),
                        2.0 * b / (1.0 + 2.0 * m),
                    ),
                    6 => {
                        let s = l + g + 5.0 * l * g;
                        two_branch(
                            2.0 * tau * b / ((d + 1.0) * (1.0 + s)),
                            2.0 * (tau * b / ((d + 1.0) * (d + 2.0) * (1.0 + 2.0 * s))).sqrt(),
                            4.0 * tau * b / ((d + 1.0) * (d + 2.0) * (1.0 + 2.0 * s)),
                        )
                    }
                    7 => {
                        let s = l + g + 5.0 * l * g;
                        two_branch(
                            2.0 * tau * b / (1.0 + s),
                            (2.0 * tau * b / (1.0 + 2.0 * s)).sqrt(),
                            2.0 * tau * b / (1.0 + 2.0 * s),
                        )
                    }
                    8 => two_branch(
                        2.0 * b / (1.0 + l),
                        (2.0 * b / (1.0 + 2.0 * l)).sqrt(),
                        2.0 * b / (1.0 + 2.0 * l),
                    ),
                    9 => two_branch(b, (2.0 * b / 3.0).sqrt(), 2.0 * b / 3.0),
                    _ => unreachable!("ids are validated by Corollary::get"),
                }
            }
        };
        Ok(BoundReport {
            params: *p,
            bound_am1: am1,
            bound_a2m1: a2m1,
            active_branch: branch,
            alt_values: AltValues {
                linear: pair.map(|x| x.0),
                square_root: pair.map(|x| x.1),
                a2m1_alternative: None,
            },
            notes: vec![format!("corollary {} ({})", self.id, self.substitution())],
        })
    }
}

pub fn corollary_bounds(id: u8, p: &ClassParams) -> Result<BoundReport> {
    Corollary::get(id)?.bounds(p)
}

/// Corollaries that apply verbatim to `p`.
pub fn applicable_corollaries(p: &ClassParams) -> Vec<u8> {
    Corollary::ALL
        .iter()
        .filter(|c| c.applies_to(p))
        .map(|c| c.id)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionRow {
    pub corollary: u8,
    pub parent: Parent,
    pub substitution: String,
    pub grid_points: usize,
    pub max_deviation_am1: f64,
    pub max_deviation_a2m1: f64,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Points per corollary in [`reduction_matrix`].
pub const REDUCTION_GRID: usize = 100;
const REDUCTION_SEED: u64 = 0x5eed_c0de;

/// Random valid parameters for `parent`; free variables drawn from modest ranges.
pub fn random_params<R: Rng>(rng: &mut R, parent: Parent) -> ClassParams {
    let tau = Complex64::from_polar(rng.random_range(0.2..3.0), rng.random_range(-3.1..3.1));
    let lambda = rng.random_range(0.0..3.0);
    let gamma = rng.random_range(0.0..=1.0);
    let delta = rng.random_range(0..6);
    let m = rng.random_range(1..6);
    let kind = match parent {
        Parent::Q => ClassKind::Q {
            alpha: rng.random_range(0.05..=1.0),
        },
        Parent::Theta => ClassKind::Theta {
            beta: rng.random_range(0.0..0.99),
        },
    };
    ClassParams::new(tau, lambda, gamma, delta, m, kind).expect("ranges are valid")
}

/// Each corollary against its parent bound, specialized, on a fixed random grid.
pub fn reduction_matrix() -> Vec<ReductionRow> {
    Corollary::ALL
        .iter()
        .map(|c| reduction_row(c, REDUCTION_GRID))
        .collect()
}

fn reduction_row(c: &Corollary, points: usize) -> ReductionRow {
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED ^ c.id as u64);
    let (mut dev_am1, mut dev_a2m1) = (0f64, 0f64);
    for _ in 0..points {
        let p = c
            .specialize(&random_params(&mut rng, c.parent))
            .expect("kind matches parent");
        let lit = c
            .bounds(&p)
            .expect("specialized params satisfy the corollary");
        let parent = class_bounds(&p).expect("kind matches parent");
        dev_am1 = dev_am1.max(deviation(lit.bound_am1, parent.bound_am1));
        dev_a2m1 = dev_a2m1.max(deviation(lit.bound_a2m1, parent.bound_a2m1));
    }
    let max_deviation = dev_am1.max(dev_a2m1);
    ReductionRow {
        corollary: c.id,
        parent: c.parent,
        substitution: c.substitution(),
        grid_points: points,
        max_deviation_am1: dev_am1,
        max_deviation_a2m1: dev_a2m1,
        max_deviation,
        passed: max_deviation <= REDUCTION_TOL,
    }
}

fn deviation(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

/// Inclusive linear range `start:stop:count`; `count = 1` is the single start value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGrid("range count must be >= 1".into()));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidGrid("range endpoints must be finite".into()));
        }
        Ok(Self { start, stop, count })
    }

    pub fn single(v: f64) -> Self {
        Self {
            start: v,
            stop: v,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// Cartesian grid over class parameters, expanded in a fixed nesting order:
/// `m`, `delta`, `|tau|`, `lambda`, `gamma`, then `alpha`/`beta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamGrid {
    /// Phase of `τ`; the grid scales its modulus.
    pub tau_arg: f64,
    pub tau_abs: Range,
    pub lambda: Range,
    pub gamma: Range,
    pub delta: Vec<u32>,
    pub m: Vec<u32>,
    pub class: Parent,
    /// `alpha` for class Q, `beta` for class Θ.
    pub shape: Range,
}

impl ParamGrid {
    pub fn points(&self) -> Result<Vec<ClassParams>> {
        if self.delta.is_empty() || self.m.is_empty() {
            return Err(Error::InvalidGrid(
                "delta and m lists must be non-empty".into(),
            ));
        }
        let mut out = Vec::new();
        for &m in &self.m {
            for &delta in &self.delta {
                for r in self.tau_abs.values() {
                    for lambda in self.lambda.values() {
                        for gamma in self.gamma.values() {
                            for s in self.shape.values() {
                                let kind = match self.class {
                                    Parent::Q => ClassKind::Q { alpha: s },
                                    Parent::Theta => ClassKind::Theta { beta: s },
                                };
                                out.push(ClassParams::new(
                                    Complex64::from_polar(r, self.tau_arg),
                                    lambda,
                                    gamma,
                                    delta,
                                    m,
                                    kind,
                                )?);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchRow {
    pub params: ClassParams,
    pub linear: f64,
    pub square_root: f64,
    pub active: Branch,
    /// `linear / square_root`; below 1 means the linear branch is active.
    pub ratio: f64,
}

/// Which branch of the class-Θ `|a_{m+1}|` bound is smaller, per grid point.
pub fn min_branch_report(grid: &ParamGrid) -> Result<Vec<BranchRow>> {
    if grid.class != Parent::Theta {
        return Err(Error::WrongClass { expected: "Theta" });
    }
    grid.points()?
        .iter()
        .map(|p| {
            let r = theorem2_bounds(p)?;
            let linear = r.alt_values.linear.expect("theta report has branches");
            let sqrt = r.alt_values.square_root.expect("theta report has branches");
            Ok(BranchRow {
                params: *p,
                linear,
                square_root: sqrt,
                active: r.active_branch,
                ratio: linear / sqrt,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn phi_values() {
        assert_eq!(
            phi(0.0, 0.0, 3),
            PhiValues {
                phi1: 1.0,
                phi2: 1.0
            }
        );
        assert_eq!(
            phi(1.0, 0.0, 1),
            PhiValues {
                phi1: 3.0,
                phi2: 4.0
            }
        );
        for i in 0..=10 {
            for j in 0..=10 {
                let (l, g) = (i as f64 * 0.3, j as f64 * 0.1);
                let v = phi(l, g, 1);
                assert!(close(v.phi1, 1.0 + 2.0 * (l + g + 5.0 * l * g), 1e-15));
                assert!(v.phi1 >= 1.0 && v.phi2 >= 1.0);
            }
        }
    }

    #[test]
    fn theorem1_plug_in() {
        let p = ClassParams::q(one(), 1.0, 0.0, 0, 1, 1.0).unwrap();
        let r = theorem1_bounds(&p).unwrap();
        assert!(close(r.bound_am1, (2.0f64 / 3.0).sqrt(), 1e-15));
        assert_eq!(r.active_branch, Branch::Single);
        assert!(theorem1_bounds(&ClassParams::theta(one(), 1.0, 0.0, 0, 1, 0.0).unwrap()).is_err());
    }

    #[test]
    fn theorem1_alpha_one_simplifies() {
        let p = ClassParams::q(Complex64::new(0.3, 1.7), 0.8, 0.4, 2, 3, 1.0).unwrap();
        let ph = phi(0.8, 0.4, 3);
        let expect = 2.0 * (2.0 * p.tau.norm() / (3.0 * 4.0 * 4.0 * ph.phi1)).sqrt();
        assert!(close(theorem1_bounds(&p).unwrap().bound_am1, expect, 1e-14));
    }

    #[test]
    fn theorem1_degenerate_denominator() {
        // τ = −2(1−α)(δ+1)Φ₂ / (α(δ+2)(m+1)Φ₁) with λ = γ = 0, δ = 0, m = 1, α = ½: τ = −½
        let p = ClassParams::q(Complex64::new(-0.5, 0.0), 0.0, 0.0, 0, 1, 0.5).unwrap();
        let r = theorem1_bounds(&p).unwrap();
        assert!(r.bound_am1.is_infinite());
        assert!(r.notes.iter().any(|n| n.contains("degenerate")));
    }

    #[test]
    fn theorem2_corollary9_point() {
        let p = ClassParams::theta(one(), 1.0, 0.0, 0, 1, 0.0).unwrap();
        let r = theorem2_bounds(&p).unwrap();
        assert!(close(r.bound_am1, (2.0f64 / 3.0).sqrt(), 1e-15));
        assert!(close(r.bound_a2m1, 2.0 / 3.0, 1e-15));
        assert_eq!(r.active_branch, Branch::SquareRoot);
        assert_eq!(r.alt_values.linear, Some(1.0));
    }

    #[test]
    fn theorem2_vanishes_as_beta_to_one() {
        let p = ClassParams::theta(Complex64::new(2.0, 1.0), 0.5, 0.5, 1, 2, 1.0 - 1e-12).unwrap();
        let r = theorem2_bounds(&p).unwrap();
        assert!(r.bound_am1 < 1e-10 && r.bound_a2m1 < 1e-10);
        assert_eq!(r.active_branch, Branch::Linear);
    }

    #[test]
    fn branch_tie() {
        assert_eq!(Branch::pick(1.0, 1.0), Branch::Tie);
        assert_eq!(Branch::pick(1.0, 2.0), Branch::Linear);
        assert_eq!(Branch::pick(2.0, 1.0), Branch::SquareRoot);
    }

    #[test]
    fn corollary_4_and_8_literal() {
        for m in 1..5 {
            for b in [0.0, 0.3, 0.9] {
                let p = ClassParams::theta(one(), 1.0, 0.0, 0, m, b).unwrap();
                let r = corollary_bounds(4, &p).unwrap();
                let mf = m as f64;
                let expect = (2.0 * (1.0 - b) / (1.0 + mf))
                    .min(2.0 * ((1.0 - b) / ((mf + 1.0) * (1.0 + 2.0 * mf))).sqrt());
                assert!(close(r.bound_am1, expect, 1e-15));
            }
        }
        let p = ClassParams::theta(one(), 0.7, 0.0, 0, 1, 0.2).unwrap();
        let r = corollary_bounds(8, &p).unwrap();
        let expect = (2.0 * 0.8 / 1.7f64).min((1.6 / 2.4f64).sqrt());
        assert!(close(r.bound_am1, expect, 1e-15));
    }

    #[test]
    fn corollary_3_is_corollary_2_at_tau_one() {
        for i in 0..10 {
            for j in 0..10 {
                for m in 1..4 {
                    let p = ClassParams::theta(one(), i as f64 * 0.4, 0.0, 0, m, j as f64 * 0.09)
                        .unwrap();
                    let a = corollary_bounds(2, &p).unwrap();
                    let b = corollary_bounds(3, &p).unwrap();
                    assert!(close(a.bound_am1, b.bound_am1, 1e-15));
                    assert!(close(a.bound_a2m1, b.bound_a2m1, 1e-15));
                }
            }
        }
    }

    #[test]
    fn corollary_9_is_corollary_6_specialized() {
        let c6 = Corollary::get(6).unwrap();
        let c9 = Corollary::get(9).unwrap();
        for j in 0..20 {
            let p = ClassParams::theta(Complex64::new(0.4, 0.2), 0.3, 0.5, 2, 1, j as f64 * 0.045)
                .unwrap();
            let q = c9.specialize(&p).unwrap();
            let a = c6.bounds(&q).unwrap();
            let b = c9.bounds(&q).unwrap();
            assert!(close(a.bound_am1, b.bound_am1, 1e-15));
            assert!(close(a.bound_a2m1, b.bound_a2m1, 1e-15));
        }
    }

    #[test]
    fn corollary_validation() {
        let p = ClassParams::theta(one(), 1.0, 0.0, 2, 1, 0.0).unwrap();
        assert!(corollary_bounds(1, &p).is_err());
        assert!(corollary_bounds(0, &p).is_err());
        assert!(corollary_bounds(10, &p).is_err());
        assert!(corollary_bounds(5, &p).is_err());
        assert!(corollary_bounds(6, &p).is_ok());
        let q = ClassParams::theta(one(), 1.0, 0.0, 0, 1, 0.0).unwrap();
        assert_eq!(applicable_corollaries(&q), vec![1, 2, 3, 4, 6, 7, 8, 9]);
    }

    #[test]
    fn reduction_matrix_is_tight() {
        let rows = reduction_matrix();
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert!(r.passed, "{r:?}");
            assert_eq!(r.grid_points, REDUCTION_GRID);
        }
        assert_eq!(rows[0].max_deviation, 0.0);
    }

    #[test]
    fn range_values() {
        assert_eq!(
            Range::new(0.0, 1.0, 3).unwrap().values(),
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(Range::new(2.0, 5.0, 1).unwrap().values(), vec![2.0]);
        assert!(Range::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn branch_regions() {
        let grid = ParamGrid {
            tau_arg: 0.0,
            tau_abs: Range::single(1.0),
            lambda: Range::single(1.0),
            gamma: Range::single(0.0),
            delta: vec![0],
            m: vec![1],
            class: Parent::Theta,
            shape: Range::new(0.0, 0.99, 12).unwrap(),
        };
        let rows = min_branch_report(&grid).unwrap();
        assert_eq!(rows[0].active, Branch::SquareRoot);
        assert!(close(rows[0].ratio, 1.0 / (2.0f64 / 3.0).sqrt(), 1e-15));
        assert_eq!(rows.last().unwrap().active, Branch::Linear);
        // switch point of min{1−β, √(2(1−β)/3)} is β = 1/3
        for r in &rows {
            let beta = r.params.beta().unwrap();
            if beta < 1.0 / 3.0 - 1e-9 {
                assert_eq!(r.active, Branch::SquareRoot);
            } else if beta > 1.0 / 3.0 + 1e-9 {
                assert_eq!(r.active, Branch::Linear);
            }
        }
    }
}
