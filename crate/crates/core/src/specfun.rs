//! Hurwitz zeta values and finite power sums.
//!
//! The infinite sums use Euler–Maclaurin summation: the first terms are added
//! directly (compensated), the remainder is replaced by the integral, the
//! half-term and a Bernoulli correction series. The cut-off is grown until
//! the correction series has converged to double precision.

use crate::error::{Error, Result};

/// Distance from the pole at `s = 1` below which the zeta sum is rejected.
pub const POLE_GUARD: f64 = 1e-9;

const MIN_DIRECT_TERMS: u64 = 20;
const MAX_CORRECTIONS: usize = 12;

/// `B_{2j} / (2j)!` for `j = 1..=12`.
const BERNOULLI_COEFFS: [f64; MAX_CORRECTIONS] = bernoulli_coeffs();

const fn bernoulli_coeffs() -> [f64; MAX_CORRECTIONS] {
    // B_2 .. B_24 as numerator / denominator.
    const B: [(f64, f64); MAX_CORRECTIONS] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
    ];
    let mut out = [0.0; MAX_CORRECTIONS];
    let mut fact = 1.0;
    let mut j = 0;
    while j < MAX_CORRECTIONS {
        let n = 2 * (j + 1);
        fact *= ((n - 1) * n) as f64;
        out[j] = B[j].0 / B[j].1 / fact;
        j += 1;
    }
    out
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// A validated `(s, a)` pair for `ζ(s, a) = Σ_{k≥a} k^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaQuery {
    s: f64,
    a: u64,
}

impl ZetaQuery {
    pub fn new(s: f64, a: u64) -> Result<Self> {
        if !(s > 1.0 + POLE_GUARD) || !s.is_finite() {
            return Err(Error::domain(format!(
                "zeta exponent s = {s} must be finite and exceed 1 + {POLE_GUARD:e}"
            )));
        }
        if a < 1 {
            return Err(Error::domain("zeta lower limit a must be >= 1"));
        }
        Ok(Self { s, a })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn value(&self) -> f64 {
        euler_maclaurin(self.s, self.a, false).0
    }

    /// `(ζ(s, a), ∂ζ/∂s)`.
    pub fn value_and_derivative(&self) -> (f64, f64) {
        euler_maclaurin(self.s, self.a, true)
    }
}

/// `Σ_{k=a}^∞ k^{-s}` for `s > 1` and integer `a ≥ 1`.
pub fn hurwitz_zeta(s: f64, a: u64) -> Result<f64> {
    Ok(ZetaQuery::new(s, a)?.value())
}

/// `ζ(s, a)` together with `∂ζ(s, a)/∂s = -Σ_{k≥a} ln(k) k^{-s}`.
pub fn hurwitz_zeta_with_derivative(s: f64, a: u64) -> Result<(f64, f64)> {
    Ok(ZetaQuery::new(s, a)?.value_and_derivative())
}

/// `Σ_{k=a}^{b} k^{-s}`; the empty range `a = b + 1` gives 0.
pub fn truncated_power_sum(s: f64, a: u64, b: u64) -> Result<f64> {
    if a < 1 {
        return Err(Error::domain("power sum lower limit a must be >= 1"));
    }
    if a > b.saturating_add(1) {
        return Err(Error::domain(format!(
            "power sum range [{a}, {b}] is reversed beyond the empty range"
        )));
    }
    if !s.is_finite() {
        return Err(Error::domain(format!("power sum exponent s = {s} is not finite")));
    }
    let mut acc = CompensatedSum::default();
    // smallest terms first
    for k in (a..=b).rev() {
        acc.add((k as f64).powf(-s));
    }
    Ok(acc.value())
}

fn euler_maclaurin(s: f64, a: u64, with_derivative: bool) -> (f64, f64) {
    let mut cut = a.max(MIN_DIRECT_TERMS);
    loop {
        if let Some(tail) = em_tail(s, cut as f64, with_derivative) {
            let mut value = CompensatedSum::default();
            let mut deriv = CompensatedSum::default();
            // direct terms, smallest first
            for k in (a..cut).rev() {
                let kf = k as f64;
                let term = kf.powf(-s);
                value.add(term);
                if with_derivative {
                    deriv.add(-kf.ln() * term);
                }
            }
            value.add(tail.0);
            deriv.add(tail.1);
            return (value.value(), deriv.value());
        }
        cut *= 2;
    }
}

/// Tail `Σ_{k≥n} k^{-s}` (and its s-derivative), or `None` when the Bernoulli
/// series has not settled at this cut-off.
fn em_tail(s: f64, n: f64, with_derivative: bool) -> Option<(f64, f64)> {
    let ln_n = n.ln();
    let n_pow = n.powf(-s);
    let integral = n * n_pow / (s - 1.0);
    let half = 0.5 * n_pow;

    let mut value = integral + half;
    let mut deriv = if with_derivative {
        -integral * (ln_n + 1.0 / (s - 1.0)) - half * ln_n
    } else {
        0.0
    };

    // rising factorial s (s+1) ... (s+2j-2) and its log-derivative
    let mut rising = s;
    let mut rising_log_deriv = 1.0 / s;
    let mut n_term = n_pow / n;
    let tol = f64::EPSILON * 0.25 * value;
    for (j, coeff) in BERNOULLI_COEFFS.iter().enumerate() {
        let term = coeff * rising * n_term;
        value += term;
        if with_derivative {
            deriv += term * (rising_log_deriv - ln_n);
        }
        if term.abs() <= tol {
            return Some((value, deriv));
        }
        let next1 = s + (2 * j + 1) as f64;
        let next2 = s + (2 * j + 2) as f64;
        rising *= next1 * next2;
        rising_log_deriv += 1.0 / next1 + 1.0 / next2;
        n_term /= n * n;
    }
    None
}
