//! Invariant information of a state, two ways.
//!
//! The operational route sums squared deviations of MUB outcome
//! probabilities from uniform,
//!
//! ```text
//! I = N sum_alpha sum_j (p_aj - 1/d)^2,    N = d/(d-1) log2 d,
//! ```
//!
//! and the closed form evaluates the same quantity from the purity,
//!
//! ```text
//! I = d/(d-1) log2 d (Tr rho^2 - 1/d).
//! ```
//!
//! The normalization makes a d-level pure state carry log2 d bits. The
//! two routes agree because the (d+1)d MUB probabilities of any state
//! satisfy sum p^2 = Tr rho^2 + 1; their agreement over random states is
//! one of the acceptance checks. The closed form works for any dimension
//! D >= 2 (it is a function of purity alone); the MUB form needs a basis
//! set of matching prime-power dimension.

use crate::mub::MubSet;
use crate::qlinalg::DensityMatrix;
use crate::{Error, Result};

/// How an [`InfoResult`] was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfoMethod {
    MubSum,
    ClosedForm,
}

/// Information in bits, with the pre-clamp value retained.
#[derive(Clone, Copy, Debug)]
pub struct InfoResult {
    /// Clamped to [0, log2 dim].
    pub bits: f64,
    /// Raw value before the negative-by-rounding clamp.
    pub raw_bits: f64,
    pub method: InfoMethod,
    pub dim: usize,
}

/// The normalization factor N = d/(d-1) log2 d.
pub fn normalization(d: usize) -> f64 {
    let df = d as f64;
    df / (df - 1.0) * df.log2()
}

fn clamp(raw: f64, method: InfoMethod, dim: usize) -> InfoResult {
    InfoResult {
        bits: raw.max(0.0),
        raw_bits: raw,
        method,
        dim,
    }
}

/// Operational invariant information from MUB outcome statistics.
pub fn invariant_info_mub(rho: &DensityMatrix, mubs: &MubSet) -> Result<InfoResult> {
    let d = mubs.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} does not match MUB dimension {}",
            rho.dim(),
            d
        )));
    }
    let uniform = 1.0 / d as f64;
    let mut sum_sq = 0.0f64;
    for alpha in 0..mubs.bases().len() {
        let mut total = 0.0f64;
        for j in 0..d {
            let v = mubs.vector(alpha, j);
            let p = rho.expectation(&v);
            if p.im.abs() > 1e-10 {
                return Err(Error::Numerical(format!(
                    "outcome probability has imaginary part {:.3e}",
                    p.im
                )));
            }
            if !(-1e-12..=1.0 + 1e-12).contains(&p.re) {
                return Err(Error::Numerical(format!(
                    "outcome probability {} outside [0, 1]",
                    p.re
                )));
            }
            total += p.re;
            sum_sq += (p.re - uniform) * (p.re - uniform);
        }
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Numerical(format!(
                "basis {alpha} probabilities sum to {total}, not 1"
            )));
        }
    }
    Ok(clamp(normalization(d) * sum_sq, InfoMethod::MubSum, d))
}

/// Closed-form invariant information from the purity.
pub fn invariant_info_closed(rho: &DensityMatrix) -> Result<InfoResult> {
    let d = rho.dim();
    if d < 2 {
        return Err(Error::InvalidParameter(
            "closed form needs dimension >= 2".into(),
        ));
    }
    let raw = normalization(d) * (rho.purity() - 1.0 / d as f64);
    Ok(clamp(raw, InfoMethod::ClosedForm, d))
}

/// Both sides of the additivity relation I(rho (x) sigma) = I(rho) + I(sigma).
///
/// Reported, not asserted: under the closed-form normalization the
/// equality holds for special cases (both factors pure, both maximally
/// mixed) but fails for generic mixed factors.
#[derive(Clone, Copy, Debug)]
pub struct AdditivityProbe {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

pub fn additivity_probe(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<AdditivityProbe> {
    let lhs = invariant_info_closed(&rho.tensor(sigma))?.bits;
    let rhs = invariant_info_closed(rho)?.bits + invariant_info_closed(sigma)?.bits;
    Ok(AdditivityProbe {
        lhs,
        rhs,
        gap: lhs - rhs,
    })
}
