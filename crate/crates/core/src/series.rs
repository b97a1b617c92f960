//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` stores `a_0..=a_N`; coefficients past
//! `N` are unknown, so binary operations return the smaller of the two input
//! orders and never extrapolate. [`MFoldFn`] is the compact form of a
//! normalized m-fold symmetric function `z + Σ a_{mk+1} z^{mk+1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when checking prescribed constant terms and normalization.
pub const NORMALIZATION_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// `c · z^power`, truncated at `order`.
    pub fn monomial(c: Complex64, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(ONE, 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.order() >= 1
            && self.coeffs[0].norm() <= NORMALIZATION_TOL
            && (self.coeffs[1] - ONE).norm() <= NORMALIZATION_TOL
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] + other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] - other.coeffs[k])
                .collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![ZERO; order + 1];
        for (i, &a) in self.coeffs[..=order].iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Termwise derivative; the result has order `N - 1`.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooLow {
                needed: 1,
                actual: 0,
            });
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        })
    }

    /// Formal antiderivative with zero constant term; order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a / (k + 1) as f64),
        );
        Self { coeffs }
    }

    /// Multiplication by `z^n`. Exact, so the order grows by `n`.
    pub fn shift_up(&self, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Division by `z^n`; the first `n` coefficients must vanish.
    pub fn shift_down(&self, n: usize) -> Result<Self> {
        if self.order() < n {
            return Err(Error::OrderTooLow {
                needed: n,
                actual: self.order(),
            });
        }
        if let Some(k) = (0..n).find(|&k| self.coeffs[k].norm() > NORMALIZATION_TOL) {
            return Err(Error::ConstantTerm {
                expected: "0",
                found: format!("nonzero coefficient at z^{k}"),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[n..].to_vec(),
        })
    }

    /// Substitute `z -> z^m`, giving a series of order `m·N`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        let mut coeffs = vec![ZERO; self.order() * m + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = a;
        }
        Self { coeffs }
    }

    /// `outer(inner(z))` by Horner's rule. `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0].norm() > NORMALIZATION_TOL {
            return Err(Error::ConstantTerm {
                expected: "0",
                found: inner.coeffs[0].to_string(),
            });
        }
        let order = self.order().min(inner.order());
        let mut inner = inner.truncate(order);
        inner.coeffs[0] = ZERO;
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Multiplicative inverse; requires `a_0 != 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() <= f64::MIN_POSITIVE {
            return Err(Error::ConstantTerm {
                expected: "nonzero",
                found: a0.to_string(),
            });
        }
        let n = self.order();
        let inv0 = ONE / a0;
        let mut out = vec![ZERO; n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -s * inv0;
        }
        Ok(Self { coeffs: out })
    }

    /// Formal logarithm of a series with `a_0 = 1`.
    pub fn log1(&self) -> Result<Self> {
        self.expect_constant(ONE, "1")?;
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let ratio = self.derivative()?.mul(&self.reciprocal()?);
        Ok(ratio.integral())
    }

    /// Formal exponential of a series with `a_0 = 0`.
    pub fn exp0(&self) -> Result<Self> {
        self.expect_constant(ZERO, "0")?;
        let n = self.order();
        let mut out = vec![ZERO; n + 1];
        out[0] = ONE;
        // k e_k = Σ_{j=1..k} j a_j e_{k-j}
        for k in 1..=n {
            let s: Complex64 = (1..=k)
                .map(|j| self.coeffs[j] * j as f64 * out[k - j])
                .sum();
            out[k] = s / k as f64;
        }
        Ok(Self { coeffs: out })
    }

    /// Principal-branch real power of a series with `a_0 = 1`, as `exp(e·log a)`.
    pub fn pow_real(&self, exponent: f64) -> Result<Self> {
        self.expect_constant(ONE, "1")?;
        let mut log = self.log1()?.scale_real(exponent);
        log.coeffs[0] = ZERO;
        log.exp0()
    }

    /// Evaluate the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// Largest coefficient modulus of `self - other` up to the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    fn expect_constant(&self, value: Complex64, label: &'static str) -> Result<()> {
        if (self.coeffs[0] - value).norm() > NORMALIZATION_TOL {
            return Err(Error::ConstantTerm {
                expected: label,
                found: self.coeffs[0].to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale_real(-1.0)
    }
}

/// Normalized m-fold symmetric function `z + Σ_{k=1..K} a_{mk+1} z^{mk+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MFoldFn {
    m: u32,
    coeffs: Vec<Complex64>,
}

impl MFoldFn {
    /// `coeffs[k-1]` holds `a_{mk+1}`.
    pub fn new(m: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroSymmetry);
        }
        Ok(Self { m, coeffs })
    }

    /// The identity `z` carried to truncation index `k`.
    pub fn identity(m: u32, k: usize) -> Result<Self> {
        Self::new(m, vec![ZERO; k])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Truncation index `K`.
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_{mk+1}` for `k >= 1`; `k = 0` gives the leading 1.
    pub fn a(&self, k: usize) -> Option<Complex64> {
        if k == 0 {
            Some(ONE)
        } else {
            self.coeffs.get(k - 1).copied()
        }
    }

    /// Order `mK + 1` of the embedding.
    pub fn order(&self) -> usize {
        self.m as usize * self.k() + 1
    }

    pub fn embed(&self) -> TruncatedSeries {
        let m = self.m as usize;
        let mut s = TruncatedSeries::identity(self.order());
        for (i, &a) in self.coeffs.iter().enumerate() {
            s.coeffs[m * (i + 1) + 1] = a;
        }
        s
    }

    /// Read back an m-fold function from a normalized series, checking the support.
    pub fn from_series(series: &TruncatedSeries, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroSymmetry);
        }
        if !series.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let mu = m as usize;
        let tol = NORMALIZATION_TOL * series.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        if let Some(index) =
            (2..=series.order()).find(|&i| (i - 1) % mu != 0 && series.coeffs[i].norm() > tol)
        {
            return Err(Error::NotSymmetric { m, index });
        }
        let k = (series.order() - 1) / mu;
        Ok(Self {
            m,
            coeffs: (1..=k).map(|j| series.coeffs[mu * j + 1]).collect(),
        })
    }

    pub fn truncate(&self, k: usize) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs[..k.min(self.k())].to_vec(),
        }
    }
}

/// `(f(z^m))^{1/m}` as an m-fold function with `K` symmetric coefficients.
///
/// With `f(w) = w·u(w)`, `u(0) = 1`, this is `z·u(z^m)^{1/m}`, so only
/// `u` up to `w^K` is needed.
pub fn symmetrize(f: &TruncatedSeries, m: u32, k: usize) -> Result<MFoldFn> {
    if m == 0 {
        return Err(Error::ZeroSymmetry);
    }
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if f.order() < k + 1 {
        return Err(Error::OrderTooLow {
            needed: k + 1,
            actual: f.order(),
        });
    }
    let u = f.truncate(k + 1).shift_down(1)?;
    let root = u.pow_real(1.0 / m as f64)?;
    MFoldFn::new(m, root.coeffs[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn s(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    fn assert_close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) {
        assert_eq!(a.order(), b.order(), "order mismatch: {a} vs {b}");
        assert!(a.max_abs_diff(b) <= tol, "{a} != {b}");
    }

    #[test]
    fn add_cases() {
        assert_close(&(&s(&[1.0, 1.0]) + &s(&[1.0, -1.0])), &s(&[2.0, 0.0]), 0.0);
        let x = s(&[0.5, -2.0, 3.0]);
        assert_close(&(&x + &TruncatedSeries::zero(2)), &x, 0.0);
        assert_close(
            &(&s(&[1.0, 0.0, 2.0]) + &s(&[0.0, 3.0, 0.0])),
            &s(&[1.0, 3.0, 2.0]),
            0.0,
        );
    }

    #[test]
    fn add_truncates_to_min_order() {
        let r = &s(&[1.0, 1.0, 1.0, 1.0]) + &s(&[1.0, 1.0]);
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn mul_cases() {
        assert_close(
            &(&s(&[1.0, 1.0, 0.0]) * &s(&[1.0, -1.0, 0.0])),
            &s(&[1.0, 0.0, -1.0]),
            0.0,
        );
        let x = s(&[0.5, -2.0, 3.0]);
        assert_close(&(&x * &TruncatedSeries::one(2)), &x, 0.0);
        // direct convolution: (1+z+z²)(1−z) = 1 − z³
        assert_close(
            &(&s(&[1.0, 1.0, 1.0, 0.0]) * &s(&[1.0, -1.0, 0.0, 0.0])),
            &s(&[1.0, 0.0, 0.0, -1.0]),
            0.0,
        );
    }

    #[test]
    fn derivative_cases() {
        assert_close(
            &s(&[0.0, 1.0, 1.0]).derivative().unwrap(),
            &s(&[1.0, 2.0]),
            0.0,
        );
        assert_close(&s(&[1.0, 0.0]).derivative().unwrap(), &s(&[0.0]), 0.0);
        let a3 = Complex64::new(0.3, -1.1);
        let f = TruncatedSeries::new(vec![c(0.0), c(1.0), c(0.0), a3]).unwrap();
        let d2 = f.derivative().unwrap().derivative().unwrap();
        assert_eq!(d2.coeffs(), &[c(0.0), a3 * 6.0]);
    }

    #[test]
    fn derivative_of_order_zero_fails() {
        assert!(matches!(
            TruncatedSeries::one(0).derivative(),
            Err(Error::OrderTooLow { .. })
        ));
    }

    #[test]
    fn compose_cases() {
        // z² ∘ (z + z²) = z² + 2z³ + z⁴
        let outer = s(&[0.0, 0.0, 1.0, 0.0, 0.0]);
        let inner = s(&[0.0, 1.0, 1.0, 0.0, 0.0]);
        assert_close(
            &outer.compose(&inner).unwrap(),
            &s(&[0.0, 0.0, 1.0, 2.0, 1.0]),
            0.0,
        );
        let x = s(&[0.2, -1.0, 0.7, 3.0]);
        assert_close(&x.compose(&TruncatedSeries::identity(3)).unwrap(), &x, 0.0);
        // z/(1−z) ∘ w/(1+w) = w
        let n = 12;
        let koebe: Vec<f64> = (0..=n).map(|k| if k == 0 { 0.0 } else { 1.0 }).collect();
        let inv: Vec<f64> = (0..=n)
            .map(|k| {
                if k == 0 {
                    0.0
                } else if k % 2 == 1 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        assert_close(
            &s(&koebe).compose(&s(&inv)).unwrap(),
            &TruncatedSeries::identity(n),
            1e-12,
        );
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        assert!(s(&[0.0, 1.0]).compose(&s(&[0.5, 1.0])).is_err());
    }

    #[test]
    fn reciprocal_cases() {
        assert_close(
            &s(&[1.0, -1.0, 0.0, 0.0, 0.0]).reciprocal().unwrap(),
            &s(&[1.0; 5]),
            0.0,
        );
        assert_close(&s(&[2.0]).reciprocal().unwrap(), &s(&[0.5]), 0.0);
        assert_close(
            &s(&[1.0, 1.0, 0.0, 0.0, 0.0]).reciprocal().unwrap(),
            &s(&[1.0, -1.0, 1.0, -1.0, 1.0]),
            0.0,
        );
        assert!(s(&[0.0, 1.0]).reciprocal().is_err());
    }

    #[test]
    fn log_and_exp() {
        let n = 8;
        let mut one_minus_z = TruncatedSeries::one(n);
        one_minus_z.coeffs[1] = c(-1.0);
        let log = one_minus_z.log1().unwrap();
        let expected: Vec<f64> = (0..=n)
            .map(|k| if k == 0 { 0.0 } else { -1.0 / k as f64 })
            .collect();
        assert_close(&log, &s(&expected), 1e-15);

        assert_close(
            &TruncatedSeries::zero(4).exp0().unwrap(),
            &TruncatedSeries::one(4),
            0.0,
        );

        let one_plus_z = s(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_close(
            &one_plus_z.log1().unwrap().exp0().unwrap(),
            &one_plus_z,
            1e-15,
        );

        assert!(s(&[2.0, 1.0]).log1().is_err());
        assert!(s(&[1.0, 1.0]).exp0().is_err());
    }

    #[test]
    fn pow_real_cases() {
        let x = s(&[1.0, 0.3, -0.2, 0.9]);
        assert_close(&x.pow_real(1.0).unwrap(), &x, 1e-15);
        // binomial: coefficient of z² in (1+2z+2z²)^{1/2} is ½·(−½)/2·4 + ½·2 = ½
        let r = s(&[1.0, 2.0, 2.0]).pow_real(0.5).unwrap();
        assert!((r.coeffs[2] - c(0.5)).norm() < 1e-15);
        let one_plus_z = s(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let round = one_plus_z.pow_real(0.5).unwrap().pow_real(2.0).unwrap();
        assert_close(&round, &one_plus_z, 1e-15);
        assert!(s(&[0.5, 1.0]).pow_real(0.5).is_err());
    }

    #[test]
    fn pow_real_matches_mfold_expansion() {
        // [p(z)]^e with p = 1 + p_m z^m + p_2m z^2m: z^m -> e p_m, z^2m -> ½e(e−1)p_m² + e p_2m
        let m = 3;
        let pm = Complex64::new(0.7, -0.4);
        let p2m = Complex64::new(-1.1, 0.6);
        let e = 0.37;
        let mut p = TruncatedSeries::one(2 * m);
        p.coeffs[m] = pm;
        p.coeffs[2 * m] = p2m;
        let r = p.pow_real(e).unwrap();
        assert!((r.coeffs[m] - pm * e).norm() < 1e-14);
        let expect = pm * pm * (0.5 * e * (e - 1.0)) + p2m * e;
        assert!((r.coeffs[2 * m] - expect).norm() < 1e-14);
    }

    #[test]
    fn mfold_embedding() {
        let f = MFoldFn::new(3, vec![c(2.0), c(-1.0)]).unwrap();
        let e = f.embed();
        assert_eq!(e.order(), 7);
        assert_eq!(e.coeffs()[4], c(2.0));
        assert_eq!(e.coeffs()[7], c(-1.0));
        assert_eq!(MFoldFn::from_series(&e, 3).unwrap(), f);
        assert!(matches!(
            MFoldFn::from_series(&e, 2),
            Err(Error::NotSymmetric { .. })
        ));
        // m = 1 is the general normalized form
        let g = MFoldFn::new(1, vec![c(0.5), c(0.25)]).unwrap();
        assert_close(&g.embed(), &s(&[0.0, 1.0, 0.5, 0.25]), 0.0);
        assert!(MFoldFn::new(0, vec![]).is_err());
    }

    #[test]
    fn symmetrize_cases() {
        let f = s(&[0.0, 1.0, 0.4, -0.3, 0.2]);
        let h = symmetrize(&f, 1, 3).unwrap();
        assert_close(&h.embed(), &f, 1e-15);

        let id = TruncatedSeries::identity(5);
        for m in 1..5 {
            let h = symmetrize(&id, m, 4).unwrap();
            assert!(h.coeffs().iter().all(|c| c.norm() == 0.0));
        }

        // [z²/(1−z²)]^{1/2}: u(w) = 1/(1−w), u^{1/2} = Σ C(2k,k)/4^k w^k
        let koebe = s(&[0.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let h = symmetrize(&koebe, 2, 4).unwrap();
        let expected = [0.5, 0.375, 0.3125, 0.2734375];
        for (a, e) in h.coeffs().iter().zip(expected) {
            assert!((a - c(e)).norm() < 1e-15);
        }
        let emb = h.embed();
        for (i, a) in emb.coeffs().iter().enumerate() {
            if i % 2 != 1 {
                assert_eq!(a.norm(), 0.0);
            }
        }
    }

    #[test]
    fn symmetrize_needs_order() {
        let f = s(&[0.0, 1.0, 0.5]);
        assert!(matches!(
            symmetrize(&f, 2, 3),
            Err(Error::OrderTooLow { .. })
        ));
    }
}
