//! Power-series Bessel functions of the first kind and the zeros of `J_0`
//! needed for the Dirichlet disc eigenvalue.

use crate::{Error, Result};

/// `J_n(x)` from its ascending series. Accurate for the moderate arguments used
/// here (|x| ≲ 20); cancellation grows like `e^|x|` beyond that.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    // leading term (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    for k in 1..200u32 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// The `k`-th positive zero of `J_0` (k ≥ 1), by bracketing on a coarse scan
/// followed by bisection and a Newton polish with `J_0' = -J_1`.
pub fn j0_zero(k: usize) -> Result<f64> {
    if k == 0 || k > 6 {
        return Err(Error::domain(format!("zero index {k} outside 1..=6")));
    }
    let mut found = 0;
    let step = 0.05;
    let mut a = step;
    let mut fa = bessel_j(0, a);
    loop {
        let b = a + step;
        let fb = bessel_j(0, b);
        if fa.signum() != fb.signum() {
            found += 1;
            if found == k {
                return Ok(refine_zero(a, b));
            }
        }
        a = b;
        fa = fb;
    }
}

fn refine_zero(mut a: f64, mut b: f64) -> f64 {
    let fa0 = bessel_j(0, a);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if bessel_j(0, mid).signum() == fa0.signum() {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-13 {
            break;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..3 {
        let dx = bessel_j(0, x) / -bessel_j(1, x);
        x -= dx;
        if dx.abs() < 1e-16 * x {
            break;
        }
    }
    x
}
