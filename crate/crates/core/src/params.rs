//! Class parameters shared by the functional, the bound evaluators and the harness.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which defining condition the functional must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum ClassKind {
    /// `|arg D| < απ/2`, `0 < α <= 1`.
    Q { alpha: f64 },
    /// `Re D > β`, `0 <= β < 1`.
    Theta { beta: f64 },
}

impl ClassKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::Q { .. } => "Q",
            ClassKind::Theta { .. } => "Theta",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub tau: Complex64,
    pub lambda: f64,
    pub gamma: f64,
    pub delta: u32,
    pub m: u32,
    pub kind: ClassKind,
}

impl ClassParams {
    pub fn new(
        tau: Complex64,
        lambda: f64,
        gamma: f64,
        delta: u32,
        m: u32,
        kind: ClassKind,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(tau.re.is_finite() && tau.im.is_finite()) || tau.norm() == 0.0 {
            return bad(format!(
                "tau must be a finite nonzero complex number, got {tau}"
            ));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return bad(format!("lambda must be >= 0, got {lambda}"));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return bad(format!("gamma must lie in [0, 1], got {gamma}"));
        }
        if m == 0 {
            return bad("m must be >= 1".into());
        }
        match kind {
            ClassKind::Q { alpha } if !(alpha > 0.0 && alpha <= 1.0) => {
                return bad(format!("alpha must lie in (0, 1], got {alpha}"));
            }
            ClassKind::Theta { beta } if !(0.0..1.0).contains(&beta) => {
                return bad(format!("beta must lie in [0, 1), got {beta}"));
            }
            _ => {}
        }
        Ok(Self {
            tau,
            lambda,
            gamma,
            delta,
            m,
            kind,
        })
    }

    pub fn q(
        tau: Complex64,
        lambda: f64,
        gamma: f64,
        delta: u32,
        m: u32,
        alpha: f64,
    ) -> Result<Self> {
        Self::new(tau, lambda, gamma, delta, m, ClassKind::Q { alpha })
    }

    pub fn theta(
        tau: Complex64,
        lambda: f64,
        gamma: f64,
        delta: u32,
        m: u32,
        beta: f64,
    ) -> Result<Self> {
        Self::new(tau, lambda, gamma, delta, m, ClassKind::Theta { beta })
    }

    pub fn alpha(&self) -> Option<f64> {
        match self.kind {
            ClassKind::Q { alpha } => Some(alpha),
            ClassKind::Theta { .. } => None,
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match self.kind {
            ClassKind::Theta { beta } => Some(beta),
            ClassKind::Q { .. } => None,
        }
    }

    /// Multiplier of `(δ+1) a_{m+1} / τ` in the `z^m` coefficient of the functional:
    /// `1 + m(λ+γ) + λγ((m+1)² + 1)`.
    pub fn psi(&self) -> f64 {
        weight(self.lambda, self.gamma, self.m as f64 + 1.0)
    }

    /// `Φ₁ = 1 + 2m(λ+γ) + λγ((2m+1)² + 1)`.
    pub fn phi1(&self) -> f64 {
        weight(self.lambda, self.gamma, 2.0 * self.m as f64 + 1.0)
    }

    /// `Φ₂ = ψ²`.
    pub fn phi2(&self) -> f64 {
        self.psi().powi(2)
    }
}

/// Functional weight of the coefficient of `z^n` in the normalized series:
/// `(1−λ)(1−γ) + (λ+γ+λγ)n + λγ n(n−1)`, written in the collapsed form
/// `1 + (λ+γ)(n−1) + λγ(n² + 1)`.
pub(crate) fn weight(lambda: f64, gamma: f64, n: f64) -> f64 {
    1.0 + (lambda + gamma) * (n - 1.0) + lambda * gamma * (n * n + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn validation() {
        assert!(ClassParams::q(one(), 0.0, 0.0, 0, 1, 1.0).is_ok());
        assert!(ClassParams::q(Complex64::new(0.0, 0.0), 0.0, 0.0, 0, 1, 1.0).is_err());
        assert!(ClassParams::q(one(), -0.1, 0.0, 0, 1, 1.0).is_err());
        assert!(ClassParams::q(one(), 0.0, 1.1, 0, 1, 1.0).is_err());
        assert!(ClassParams::q(one(), 0.0, 0.0, 0, 0, 1.0).is_err());
        assert!(ClassParams::q(one(), 0.0, 0.0, 0, 1, 0.0).is_err());
        assert!(ClassParams::q(one(), 0.0, 0.0, 0, 1, 1.5).is_err());
        assert!(ClassParams::theta(one(), 0.0, 0.0, 0, 1, 0.0).is_ok());
        assert!(ClassParams::theta(one(), 0.0, 0.0, 0, 1, 1.0).is_err());
        assert!(ClassParams::theta(one(), 0.0, 0.0, 0, 1, -0.2).is_err());
        assert!(ClassParams::theta(one(), f64::NAN, 0.0, 0, 1, 0.2).is_err());
    }

    #[test]
    fn weight_expands_both_forms() {
        for &(l, g) in &[(0.0, 0.0), (1.0, 0.0), (0.3, 0.7), (2.5, 1.0)] {
            for n in 1..8 {
                let n = n as f64;
                let long = (1.0 - l) * (1.0 - g) + (l * (g + 1.0) + g) * n + l * g * n * (n - 1.0);
                assert!((weight(l, g, n) - long).abs() < 1e-12);
            }
        }
    }
}
