//! Bracketing root finder: bisection down to a coarse interval, then Brent.

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 300;
const BISECT_UNTIL: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    /// Final interval known to contain a sign change (`lo <= x <= hi`).
    pub bracket: (f64, f64),
}

/// Finds a zero of `f` in `[lo, hi]`, refining until the bracket is no wider
/// than `xtol`.
pub fn find_root<F>(what: &str, mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            fx: fa,
            bracket: (a, a),
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            fx: fb,
            bracket: (b, b),
        });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoBracket {
            what: what.to_string(),
            lo,
            hi,
        });
    }

    let mut iterations = 0;
    while (b - a).abs() > BISECT_UNTIL.max(xtol) {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Root {
                x: mid,
                fx: fm,
                bracket: (mid, mid),
            });
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        iterations += 1;
    }

    // Brent: b is the best estimate, c the contrapoint, a the previous b.
    let (mut c, mut fc) = (a, fa);
    let (mut d, mut e) = (b - a, b - a);
    while iterations < MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if 2.0 * xm.abs() <= xtol.max(2.0 * f64::EPSILON * b.abs()) || fb == 0.0 {
            let bracket = if fb == 0.0 { (b, b) } else { (b.min(c), b.max(c)) };
            return Ok(Root { x: b, fx: fb, bracket });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
        iterations += 1;
    }
    Err(Error::NonConvergence { iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = find_root("x^2-2", |x| Ok(x * x - 2.0), 0.0, 2.0, 1e-12).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
        assert!(r.bracket.0 <= r.x && r.x <= r.bracket.1);
    }

    #[test]
    fn decreasing_function() {
        let r = find_root("cos", |x: f64| Ok(x.cos()), 1.0, 2.0, 1e-12).unwrap();
        assert!((r.x - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let err = find_root("x^2+1", |x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::NoBracket { .. }));
    }

    #[test]
    fn errors_propagate() {
        let err = find_root("fails", |_| Err(Error::domain("nope")), 0.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn steep_root_bracket_contains_it() {
        let f = |x: f64| Ok((x - 0.3).powi(3) * 1e6);
        let r = find_root("cubic", f, 0.0, 1.0, 1e-12).unwrap();
        assert!(r.bracket.0 <= 0.3 + 1e-12 && 0.3 - 1e-12 <= r.bracket.1);
    }
}
