//! Adaptive Dormand–Prince 5(4) integration of autonomous systems.
//!
//! The state may be made of [`Real`] values of any kind; step-size control
//! only looks at the value part, so integrating [`Dual`](super::Dual) states
//! yields the exact derivative of the discrete flow taken with the same step
//! sequence as the plain solve.

use super::Real;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-12,
            max_steps: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

// Autonomous systems only, so the node coefficients c_i never appear.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// 5th minus embedded 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin<T: Real, const N: usize>(y: &[T; N], h: f64, terms: &[(f64, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for (c, k) in terms {
        if *c == 0.0 {
            continue;
        }
        let w = c * h;
        for i in 0..N {
            out[i] = out[i] + k[i].scale(w);
        }
    }
    out
}

/// Integrates `y' = f(y)` over an interval of length `span >= 0`.
pub fn integrate<T, const N: usize, F>(
    f: F,
    y0: [T; N],
    span: f64,
    opts: &OdeOptions,
) -> Result<([T; N], OdeStats)>
where
    T: Real,
    F: Fn(&[T; N]) -> [T; N],
{
    let mut stats = OdeStats::default();
    if !(span >= 0.0) || !span.is_finite() {
        return Err(Error::Domain(format!(
            "integration span {span} is not a finite nonnegative number"
        )));
    }
    if span == 0.0 {
        return Ok((y0, stats));
    }

    let mut y = y0;
    let mut t = 0.0;
    let mut h = span.min(1e-2);
    let h_min = 1e-14 * span.max(1.0);
    let mut k1 = f(&y);
    stats.evaluations += 1;

    while t < span {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::Integration {
                s: t,
                steps: stats.accepted,
                reason: "step budget exhausted".into(),
            });
        }
        let last = t + h >= span;
        if last {
            h = span - t;
        }

        let k2 = f(&lin(&y, h, &[(A21, &k1)]));
        let k3 = f(&lin(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(&lin(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(&lin(
            &y,
            h,
            &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ));
        let k6 = f(&lin(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = lin(
            &y,
            h,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let k7 = f(&y_new);
        stats.evaluations += 6;

        let mut err2 = 0.0;
        for i in 0..N {
            let e = h
                * (E1 * k1[i].value()
                    + E3 * k3[i].value()
                    + E4 * k4[i].value()
                    + E5 * k5[i].value()
                    + E6 * k6[i].value()
                    + E7 * k7[i].value());
            let sc = opts.abs_tol + opts.rel_tol * y[i].value().abs().max(y_new[i].value().abs());
            err2 += (e / sc) * (e / sc);
        }
        let err = (err2 / N as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::Integration {
                s: t,
                steps: stats.accepted,
                reason: "non-finite state".into(),
            });
        }

        if err <= 1.0 {
            stats.accepted += 1;
            t = if last { span } else { t + h };
            y = y_new;
            k1 = k7;
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= fac;
        } else {
            stats.rejected += 1;
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            if h < h_min {
                return Err(Error::Integration {
                    s: t,
                    steps: stats.accepted,
                    reason: format!("step size collapsed to {h:e}"),
                });
            }
        }
    }
    Ok((y, stats))
}
