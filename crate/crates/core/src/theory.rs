//! The expected-degree condition for a truncated power law with minimum
//! degree `m`, and the exponent that satisfies it.
//!
//! A truncated law `P(k) = k^{-γ} / ζ(γ, m)` for `k ≥ m` has mean
//! `ζ(γ-1, m) / ζ(γ, m)`. Growth with `m` links per node forces the mean to
//! `2m`, which is equivalent to
//!
//! ```text
//! F(γ, m) = Σ_{k≥m} (2m - k) k^{-γ} = 2m ζ(γ, m) - ζ(γ-1, m) = 0.
//! ```
//!
//! `F` is negative just above `γ = 2`, where `ζ(γ-1, m)` blows up, and positive
//! at `γ = 3`, so the root is bracketed in `(2, 3]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::roots::find_root;
use crate::specfun::{hurwitz_zeta, POLE_GUARD};

pub const SEARCH_LOWER: f64 = 2.0 + 1e-6;
/// Kept above 3 so a root that rounds to just over 3 is still bracketed.
pub const SEARCH_UPPER: f64 = 3.5;
pub const BRACKET_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaSolution {
    pub m: u64,
    pub gamma: f64,
    /// `F(gamma, m)` at the returned root.
    pub residual: f64,
    pub bracket: (f64, f64),
}

fn check(gamma: f64, m: u64) -> Result<()> {
    if !(gamma > 2.0 + POLE_GUARD) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "exponent gamma = {gamma} must exceed 2 + {POLE_GUARD:e} for a finite mean degree"
        )));
    }
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    Ok(())
}

/// `F(γ, m) = 2m ζ(γ, m) - ζ(γ-1, m)`, the closed form of `Σ_{k≥m} (2m - k) k^{-γ}`.
pub fn implicit_residual(gamma: f64, m: u64) -> Result<f64> {
    check(gamma, m)?;
    Ok(2.0 * m as f64 * hurwitz_zeta(gamma, m)? - hurwitz_zeta(gamma - 1.0, m)?)
}

/// Mean of the power law `k^{-γ}` truncated to `k ≥ m`.
pub fn expected_degree(gamma: f64, m: u64) -> Result<f64> {
    check(gamma, m)?;
    Ok(hurwitz_zeta(gamma - 1.0, m)? / hurwitz_zeta(gamma, m)?)
}

/// The exponent whose truncated power law has mean degree `2m`.
pub fn solve_gamma(m: u64) -> Result<GammaSolution> {
    if m < 1 {
        return Err(Error::domain("m must be >= 1"));
    }
    let root = find_root(
        &format!("implicit residual at m={m}"),
        |g| implicit_residual(g, m),
        SEARCH_LOWER,
        SEARCH_UPPER,
        BRACKET_TOLERANCE,
    )?;
    Ok(GammaSolution {
        m,
        gamma: root.x,
        residual: root.fx,
        bracket: root.bracket,
    })
}

/// [`solve_gamma`] over a list of `m`, in input order.
pub fn gamma_curve(m_values: &[u64], exec: Execution) -> Result<Vec<GammaSolution>> {
    if m_values.is_empty() {
        return Err(Error::InvalidParams("gamma_curve needs at least one m".into()));
    }
    exec.map(m_values, |&m| solve_gamma(m).map_err(|e| e.context(format!("m={m}"))))
        .into_iter()
        .collect()
}
