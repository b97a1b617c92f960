//! Compositional inverse of normalized series, plus the closed-form leading
//! inverse coefficients for the 1-fold and m-fold cases.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Solve `f(g(w)) = w` for `g = w + Σ b_k w^k` up to `w^order`.
///
/// Degree `n` of `f(g)` is `b_n + Σ_{j>=2} a_j [g^j]_n`, and `[g^j]_n` only
/// involves `b_2..b_{n-1}`, so each `b_n` follows from the powers of `g`
/// filled in to degree `n - 1`.
pub fn invert(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if order == 0 {
        return Err(Error::OrderTooLow {
            needed: 1,
            actual: 0,
        });
    }
    let n = order.min(f.order());
    let a = f.coeffs();
    // powers[j][d] = [g^j]_d; powers[0] is unused.
    let mut powers = vec![vec![ZERO; n + 1]; n + 1];
    powers[1][1] = Complex64::new(1.0, 0.0);
    for d in 2..=n {
        let mut acc = ZERO;
        for j in 2..=d {
            let (lo, hi) = powers.split_at_mut(j);
            let prev = &lo[j - 1];
            let g = &lo[1];
            let v: Complex64 = (1..=d - j + 1).map(|i| g[i] * prev[d - i]).sum();
            hi[0][d] = v;
            acc += a[j] * v;
        }
        powers[1][d] = -acc;
    }
    let mut coeffs = std::mem::take(&mut powers[1]);
    coeffs[0] = ZERO;
    TruncatedSeries::new(coeffs)
}

/// Leading inverse coefficients.
///
/// For `m = 1` these are `b_2, b_3, b_4`; otherwise `b_{m+1}, b_{2m+1}, b_{3m+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InverseCoeffs {
    pub m: u32,
    pub b: [Complex64; 3],
}

impl InverseCoeffs {
    pub fn first(&self) -> Complex64 {
        self.b[0]
    }
    pub fn second(&self) -> Complex64 {
        self.b[1]
    }
    pub fn third(&self) -> Complex64 {
        self.b[2]
    }
}

pub fn closed_inverse_1fold(a2: Complex64, a3: Complex64, a4: Complex64) -> InverseCoeffs {
    InverseCoeffs {
        m: 1,
        b: [
            -a2,
            a2 * a2 * 2.0 - a3,
            -(a2 * a2 * a2 * 5.0 - a2 * a3 * 5.0 + a4),
        ],
    }
}

pub fn closed_inverse_mfold(
    m: u32,
    a_m1: Complex64,
    a_2m1: Complex64,
    a_3m1: Complex64,
) -> Result<InverseCoeffs> {
    if m == 0 {
        return Err(Error::ZeroSymmetry);
    }
    let mf = m as f64;
    let third = a_m1 * a_m1 * a_m1 * (0.5 * (mf + 1.0) * (3.0 * mf + 2.0))
        - a_m1 * a_2m1 * (3.0 * mf + 2.0)
        + a_3m1;
    Ok(InverseCoeffs {
        m,
        b: [-a_m1, a_m1 * a_m1 * (mf + 1.0) - a_2m1, -third],
    })
}
