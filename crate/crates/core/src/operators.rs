//! The Ruscheweyh derivative on general and m-fold normalized functions.
//!
//! For integer `δ` the gamma-ratio factor is a binomial coefficient, so the
//! factors are computed exactly as integers and converted to `f64` only when
//! they are applied.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{MFoldFn, TruncatedSeries};

/// Exact integer factor multiplying a coefficient under `R^δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuscheweyhFactor {
    pub delta: u32,
    pub k: u32,
    pub value: u128,
}

impl RuscheweyhFactor {
    pub fn as_f64(&self) -> f64 {
        self.value as f64
    }
}

/// `C(n, r)` by the multiplicative formula; every partial product is an integer.
pub fn binomial(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r as u128 {
        acc = acc
            .checked_mul(n as u128 - r as u128 + i)
            .ok_or(Error::FactorOverflow { n, k: r })?
            / i;
    }
    Ok(acc)
}

/// `Γ(δ+k) / (Γ(k) Γ(δ+1)) = C(δ+k−1, δ)` for the coefficient of `z^k`.
pub fn omega(delta: u32, k: u32) -> Result<RuscheweyhFactor> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    let value = binomial(delta as u64 + k as u64 - 1, delta as u64)?;
    Ok(RuscheweyhFactor { delta, k, value })
}

/// `Γ(δ+k+1) / (Γ(k+1) Γ(δ+1)) = C(δ+k, δ)` for the coefficient `a_{mk+1}`.
pub fn omega_mfold(delta: u32, k: u32) -> Result<RuscheweyhFactor> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    let value = binomial(delta as u64 + k as u64, delta as u64)?;
    Ok(RuscheweyhFactor { delta, k, value })
}

/// `R^δ f = z + Σ_{k>=2} Ω(δ,k) a_k z^k`.
pub fn ruscheweyh(f: &TruncatedSeries, delta: u32) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let mut coeffs = f.coeffs().to_vec();
    for (k, a) in coeffs.iter_mut().enumerate().skip(2) {
        *a *= omega(delta, k as u32)?.as_f64();
    }
    TruncatedSeries::new(coeffs)
}

/// m-fold operator: `a_{mk+1} -> C(δ+k, δ) a_{mk+1}`.
pub fn ruscheweyh_mfold(f: &MFoldFn, delta: u32) -> Result<MFoldFn> {
    ruscheweyh_mfold_perturbed(f, delta, None)
}

/// Same as [`ruscheweyh_mfold`], optionally scaling the factor for one
/// symmetric index. Used by the verification suites to confirm they detect a
/// corrupted factor.
pub(crate) fn ruscheweyh_mfold_perturbed(
    f: &MFoldFn,
    delta: u32,
    perturb: Option<(u32, f64)>,
) -> Result<MFoldFn> {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let k = i as u32 + 1;
            let mut factor = omega_mfold(delta, k)?.as_f64();
            if let Some((pk, scale)) = perturb {
                if pk == k {
                    factor *= scale;
                }
            }
            Ok(a * factor)
        })
        .collect::<Result<Vec<Complex64>>>()?;
    MFoldFn::new(f.m(), coeffs)
}
