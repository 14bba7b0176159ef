//! Brute-force oracles. Everything here sums terms directly and closes the
//! sum with a midpoint integral; nothing calls the Euler–Maclaurin path.

#![allow(dead_code)]

pub const BRUTE_TERMS: u64 = 10_000_000;

/// Neumaier sum over `f(k)` for `k = from..=to`, smallest terms first.
fn sum_terms(from: u64, to: u64, f: impl Fn(f64) -> f64) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for k in (from..=to).rev() {
        let x = f(k as f64);
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `Σ_{k=a}^{a+terms-1} k^{-s}` plus `∫_{a+terms-1/2}^∞ x^{-s} dx`.
pub fn brute_zeta_with(s: f64, a: u64, terms: u64) -> f64 {
    let last = a + terms - 1;
    let x = last as f64 + 0.5;
    sum_terms(a, last, |k| k.powf(-s)) + x.powf(1.0 - s) / (s - 1.0)
}

pub fn brute_zeta(s: f64, a: u64) -> f64 {
    brute_zeta_with(s, a, BRUTE_TERMS)
}

/// `Σ_{k=m}^{K} (2m - k) k^{-γ}` plus the midpoint integral of the same
/// summand from `K + 1/2` to infinity.
pub fn brute_residual_with(gamma: f64, m: u64, last: u64) -> f64 {
    let two_m = 2.0 * m as f64;
    let x = last as f64 + 0.5;
    let tail = two_m * x.powf(1.0 - gamma) / (gamma - 1.0) - x.powf(2.0 - gamma) / (gamma - 2.0);
    sum_terms(m, last, |k| (two_m - k) * k.powf(-gamma)) + tail
}

pub fn brute_residual(gamma: f64, m: u64) -> f64 {
    brute_residual_with(gamma, m, BRUTE_TERMS)
}

/// Plain bisection on `f` over `[lo, hi]` until the interval is below `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    assert!(flo * f(hi) < 0.0, "oracle bracket [{lo}, {hi}] has no sign change");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of the brute-force residual for `m`, to `tol`.
///
/// A coarse pass with fewer terms narrows the bracket; the final bisection
/// uses the full `BRUTE_TERMS` sum on a bracket widened well beyond the
/// coarse pass's error.
pub fn brute_gamma(m: u64, tol: f64) -> f64 {
    let coarse = bisect(|g| brute_residual_with(g, m, 20_000), 2.1, 3.0, 1e-6);
    bisect(|g| brute_residual(g, m), coarse - 1e-3, coarse + 1e-3, tol)
}
