//! Catalog of standard bi-univalent examples and their m-fold symmetrizations,
//! with every forward/inverse pairing checked by composition.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{symmetrize, MFoldFn, TruncatedSeries};

/// A pairing is verified when both compositions match the identity this closely.
pub const PAIRING_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExemplarKind {
    /// `z/(1−z)` with inverse `w/(1+w)`.
    KoebeLike,
    /// `−log(1−z)` with inverse `(e^w−1)/e^w`.
    Log,
    /// `½ log((1+z)/(1−z))` with inverse `(e^{2w}−1)/(e^{2w}+1)`.
    Atanh,
}

impl ExemplarKind {
    pub const ALL: [ExemplarKind; 3] = [Self::KoebeLike, Self::Log, Self::Atanh];

    pub fn name(&self) -> &'static str {
        match self {
            Self::KoebeLike => "koebe-like",
            Self::Log => "log",
            Self::Atanh => "atanh",
        }
    }

    pub fn forward_label(&self) -> &'static str {
        match self {
            Self::KoebeLike => "z/(1-z)",
            Self::Log => "-log(1-z)",
            Self::Atanh => "1/2 log((1+z)/(1-z))",
        }
    }

    pub fn inverse_label(&self) -> &'static str {
        match self {
            Self::KoebeLike => "w/(1+w)",
            Self::Log => "(e^w-1)/e^w",
            Self::Atanh => "(e^(2w)-1)/(e^(2w)+1)",
        }
    }

    /// 1-fold forward function to `z^order`.
    pub fn forward(&self, order: usize) -> Result<TruncatedSeries> {
        let z = TruncatedSeries::identity(order);
        let one = TruncatedSeries::one(order);
        match self {
            Self::KoebeLike => Ok(z.mul(&(&one - &z).reciprocal()?)),
            Self::Log => Ok(-&(&one - &z).log1()?),
            Self::Atanh => Ok((&(&one + &z).log1()? - &(&one - &z).log1()?).scale_real(0.5)),
        }
    }

    /// 1-fold inverse function to `w^order`.
    pub fn inverse(&self, order: usize) -> Result<TruncatedSeries> {
        let w = TruncatedSeries::identity(order);
        let one = TruncatedSeries::one(order);
        match self {
            Self::KoebeLike => Ok(w.mul(&(&one + &w).reciprocal()?)),
            Self::Log => Ok(&one - &(-&w).exp0()?),
            Self::Atanh => {
                let e2 = w.scale_real(2.0).exp0()?;
                Ok((&e2 - &one).mul(&(&e2 + &one).reciprocal()?))
            }
        }
    }
}

impl std::str::FromStr for ExemplarKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown exemplar {s:?} (koebe-like | log | atanh)"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExemplarPair {
    pub name: String,
    pub m: u32,
    pub order: usize,
    pub forward: MFoldFn,
    pub inverse: MFoldFn,
    pub pairing_verified: bool,
    pub composition_residual: f64,
}

/// Largest coefficient error of `f∘g − w` and `g∘f − z`.
pub fn pairing_residual(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<f64> {
    let order = f.order().min(g.order());
    let id = TruncatedSeries::identity(order);
    let fg = f.compose(g)?.max_abs_diff(&id);
    let gf = g.compose(f)?.max_abs_diff(&id);
    Ok(fg.max(gf))
}

/// `(F(z^m))^{1/m}` paired with `(G(w^m))^{1/m}`, with `K` symmetric coefficients each.
pub fn build_exemplar(kind: ExemplarKind, m: u32, k: usize) -> Result<ExemplarPair> {
    if m == 0 {
        return Err(Error::ZeroSymmetry);
    }
    if k < 3 {
        return Err(Error::OrderTooLow {
            needed: 3,
            actual: k,
        });
    }
    let forward = symmetrize(&kind.forward(k + 1)?, m, k)?;
    let inverse = symmetrize(&kind.inverse(k + 1)?, m, k)?;
    let residual = pairing_residual(&forward.embed(), &inverse.embed())?;
    Ok(ExemplarPair {
        name: kind.name().to_string(),
        m,
        order: forward.order(),
        forward,
        inverse,
        pairing_verified: residual <= PAIRING_TOL,
        composition_residual: residual,
    })
}

/// All three exemplars at symmetry `m`, truncated at `z^{mK+1}`.
pub fn catalog(m: u32, k: usize) -> Result<Vec<ExemplarPair>> {
    ExemplarKind::ALL
        .iter()
        .map(|&kind| build_exemplar(kind, m, k))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub forward: String,
    pub listed_inverse: String,
    pub listed_residual: f64,
    /// The listed inverse that actually inverts `forward`, if any.
    pub true_inverse: Option<String>,
    pub true_residual: f64,
    pub listed_is_true: bool,
}

/// The 1-fold forward functions in their customary order, matched against the
/// inverses `(e^w−1)/e^w`, `w/(1+w)`, `(e^{2w}−1)/(e^{2w}+1)` as usually listed.
pub fn audit_1fold_pairings(order: usize) -> Result<Vec<AuditRow>> {
    let forwards = [
        ExemplarKind::KoebeLike,
        ExemplarKind::Log,
        ExemplarKind::Atanh,
    ];
    let listed = [
        ExemplarKind::Log,
        ExemplarKind::KoebeLike,
        ExemplarKind::Atanh,
    ];
    let inverses = listed
        .iter()
        .map(|k| Ok((k.inverse_label(), k.inverse(order)?)))
        .collect::<Result<Vec<_>>>()?;
    forwards
        .iter()
        .zip(listed)
        .map(|(fk, lk)| {
            let f = fk.forward(order)?;
            let residuals = inverses
                .iter()
                .map(|(label, g)| Ok((*label, pairing_residual(&f, g)?)))
                .collect::<Result<Vec<_>>>()?;
            let listed_residual = pairing_residual(&f, &lk.inverse(order)?)?;
            let (best_label, best) =
                residuals
                    .iter()
                    .copied()
                    .fold(
                        ("", f64::INFINITY),
                        |acc, x| if x.1 < acc.1 { x } else { acc },
                    );
            let true_inverse = (best <= PAIRING_TOL).then(|| best_label.to_string());
            Ok(AuditRow {
                forward: fk.forward_label().to_string(),
                listed_inverse: lk.inverse_label().to_string(),
                listed_residual,
                listed_is_true: true_inverse.as_deref() == Some(lk.inverse_label()),
                true_inverse,
                true_residual: best,
            })
        })
        .collect()
}

/// Coefficients of an m-fold function as `[re, im]` pairs, for serialization.
pub fn coefficient_pairs(f: &MFoldFn) -> Vec<[f64; 2]> {
    f.coeffs()
        .iter()
        .map(|c: &Complex64| [c.re, c.im])
        .collect()
}
