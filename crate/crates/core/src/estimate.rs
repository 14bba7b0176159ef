//! Maximum-likelihood exponent of a discrete power law with known lower
//! cutoff, and an exact sampler for the same law.
//!
//! For observations `k_i ≥ k_min` the log-likelihood is
//! `ℓ(γ) = -γ Σ ln k_i - n ln ζ(γ, k_min)`. Its derivative vanishes where the
//! model mean of `ln k`, `-ζ'(γ, k_min)/ζ(γ, k_min)`, equals the sample mean of
//! `ln k`. The s-derivative of the Hurwitz zeta is evaluated analytically
//! alongside the value (see [`crate::specfun::hurwitz_zeta_with_derivative`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::netgen::DegreeSequence;
use crate::roots::find_root;
use crate::specfun::{hurwitz_zeta, hurwitz_zeta_with_derivative, CompensatedSum};

pub const GAMMA_LOWER: f64 = 1.0 + 1e-6;
pub const GAMMA_UPPER: f64 = 20.0;
const ROOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub gamma_hat: f64,
    pub k_min: u64,
    /// Observations with `k >= k_min`.
    pub n_tail: u64,
    pub log_likelihood: f64,
}

/// Estimates the exponent of a generated network, with `k_min = m`.
pub fn estimate_gamma(seq: &DegreeSequence) -> Result<GammaEstimate> {
    estimate_gamma_from_degrees(seq.degrees(), seq.params().m())
}

/// Estimates the exponent from raw values; values below `k_min` are ignored.
pub fn estimate_gamma_from_degrees(values: &[u64], k_min: u64) -> Result<GammaEstimate> {
    let tail = TailSummary::new(values, k_min)?;
    let root = find_root(
        "power-law likelihood score",
        |g| tail.score(g),
        GAMMA_LOWER,
        GAMMA_UPPER,
        ROOT_TOLERANCE,
    )?;
    Ok(GammaEstimate {
        gamma_hat: root.x,
        k_min,
        n_tail: tail.n,
        log_likelihood: tail.log_likelihood(root.x)?,
    })
}

/// `ℓ(γ)` of the observations at or above `k_min`.
pub fn log_likelihood(values: &[u64], k_min: u64, gamma: f64) -> Result<f64> {
    TailSummary::new(values, k_min)?.log_likelihood(gamma)
}

/// Sufficient statistics of the tail: count and `Σ ln k`.
#[derive(Debug, Clone, Copy)]
struct TailSummary {
    k_min: u64,
    n: u64,
    sum_ln: f64,
}

impl TailSummary {
    fn new(values: &[u64], k_min: u64) -> Result<Self> {
        if k_min < 1 {
            return Err(Error::domain("k_min must be >= 1"));
        }
        let mut acc = CompensatedSum::default();
        let mut n = 0u64;
        let mut first = None;
        let mut distinct = false;
        for &k in values.iter().filter(|&&k| k >= k_min) {
            acc.add((k as f64).ln());
            n += 1;
            match first {
                None => first = Some(k),
                Some(f) if f != k => distinct = true,
                _ => {}
            }
        }
        if n < 2 {
            return Err(Error::Degenerate(format!(
                "need at least 2 observations >= k_min = {k_min}, got {n}"
            )));
        }
        if !distinct {
            return Err(Error::Degenerate(
                "all observations are equal; the likelihood has no finite maximum".into(),
            ));
        }
        Ok(Self {
            k_min,
            n,
            sum_ln: acc.value(),
        })
    }

    /// `dℓ/dγ / n`, decreasing in γ.
    fn score(&self, gamma: f64) -> Result<f64> {
        let (z, dz) = hurwitz_zeta_with_derivative(gamma, self.k_min)?;
        Ok(-dz / z - self.sum_ln / self.n as f64)
    }

    fn log_likelihood(&self, gamma: f64) -> Result<f64> {
        let z = hurwitz_zeta(gamma, self.k_min)?;
        Ok(-gamma * self.sum_ln - self.n as f64 * z.ln())
    }
}

/// Draws `n` i.i.d. values with `P(k) = k^{-γ} / ζ(γ, k_min)` for `k ≥ k_min`.
///
/// Inversion on the survival function `ζ(γ, k)/ζ(γ, k_min)`: a table covers
/// small `k`, beyond that the inverse is found by bisection on Hurwitz zeta
/// values. The support is capped where the remaining mass drops below 1e-12
/// (or at 2^53); draws falling into the capped mass are redrawn.
pub fn sample_power_law(gamma: f64, k_min: u64, n: usize, seed: u64) -> Result<Vec<u64>> {
    PowerLawSampler::new(gamma, k_min)?.sample_n(n, seed)
}

const TABLE_LEN: u64 = 4096;
const TRUNCATED_MASS: f64 = 1e-12;
const SUPPORT_CAP: u64 = 1 << 53;

#[derive(Debug, Clone)]
pub struct PowerLawSampler {
    gamma: f64,
    k_min: u64,
    norm: f64,
    /// `survival[i] = P(X >= k_min + i)`.
    survival: Vec<f64>,
    k_max: u64,
    /// `P(X > k_max)`.
    cut_mass: f64,
}

impl PowerLawSampler {
    pub fn new(gamma: f64, k_min: u64) -> Result<Self> {
        if !(gamma > GAMMA_LOWER) || !gamma.is_finite() {
            return Err(Error::domain(format!(
                "power-law exponent {gamma} must exceed {GAMMA_LOWER}"
            )));
        }
        if k_min < 1 {
            return Err(Error::domain("k_min must be >= 1"));
        }
        let norm = hurwitz_zeta(gamma, k_min)?;
        let survival_at = |k: u64| -> Result<f64> { Ok(hurwitz_zeta(gamma, k)? / norm) };

        // smallest k_max with P(X > k_max) < TRUNCATED_MASS
        let mut hi = k_min;
        while hi < SUPPORT_CAP && survival_at(hi + 1)? >= TRUNCATED_MASS {
            hi = (hi.saturating_mul(2)).min(SUPPORT_CAP);
        }
        let mut lo = k_min;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if survival_at(mid + 1)? < TRUNCATED_MASS {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let k_max = lo;
        let cut_mass = survival_at(k_max + 1)?;

        let table_end = k_max.min(k_min + TABLE_LEN - 1);
        let survival = (k_min..=table_end).map(survival_at).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma,
            k_min,
            norm,
            survival,
            k_max,
            cut_mass,
        })
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    fn survival_at(&self, k: u64) -> f64 {
        let i = k - self.k_min;
        match self.survival.get(i as usize) {
            Some(&s) => s,
            None => hurwitz_zeta(self.gamma, k).map(|z| z / self.norm).unwrap_or(0.0),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        loop {
            // v in (0, 1]
            let v = 1.0 - rng.random::<f64>();
            if v <= self.cut_mass {
                continue;
            }
            // largest k with survival(k) >= v
            let in_table = self.survival.partition_point(|&s| s >= v);
            if in_table < self.survival.len() {
                return self.k_min + in_table as u64 - 1;
            }
            let (mut lo, mut hi) = (self.k_min + self.survival.len() as u64 - 1, self.k_max);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if self.survival_at(mid) >= v {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            return lo;
        }
    }

    pub fn sample_n(&self, n: usize, seed: u64) -> Result<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..n).map(|_| self.sample(&mut rng)).collect())
    }
}
