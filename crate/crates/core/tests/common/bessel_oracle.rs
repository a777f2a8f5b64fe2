//! Test-only Bessel functions from their integral representations, and the
//! square-well matching condition. Independent of the production series.

use std::f64::consts::PI;

/// `J_m(x) = (1/2π) ∫_0^{2π} cos(mτ − x sin τ) dτ`, periodic trapezoid rule.
pub fn j(m: i32, x: f64) -> f64 {
    let n = 256;
    (0..n)
        .map(|k| {
            let tau = 2.0 * PI * k as f64 / n as f64;
            (m as f64 * tau - x * tau.sin()).cos()
        })
        .sum::<f64>()
        / n as f64
}

/// `K_m(x) = ∫_0^∞ e^{−x cosh t} cosh(mt) dt`, trapezoid rule.
pub fn k(m: i32, x: f64) -> f64 {
    let dt: f64 = 0.01;
    let mut sum = 0.5 * (-x).exp();
    let mut t = dt;
    loop {
        let term = (-x * t.cosh() + m as f64 * t).exp() * 0.5 * (1.0 + (-2.0 * m as f64 * t).exp());
        sum += term;
        if x * t.cosh() - m.abs() as f64 * t > 745.0 {
            break;
        }
        t += dt;
    }
    sum * dt
}

fn dj(m: i32, x: f64) -> f64 {
    0.5 * (j(m - 1, x) - j(m + 1, x))
}

fn dk(m: i32, x: f64) -> f64 {
    -0.5 * (k(m - 1, x) + k(m + 1, x))
}

/// Matching determinant of channel `m` for `−Δ − V₀χ_{B(1)}` at energy `−κ²`.
pub fn matching(m: i32, v0: f64, kappa: f64) -> f64 {
    let q = (v0 - kappa * kappa).sqrt();
    // scaled by 1/K_m(κ) to keep the magnitude moderate as κ → 0
    q * dj(m, q) - kappa * dk(m, kappa) / k(m, kappa) * j(m, q)
}

/// Energies `−κ²` of channel `m`, ascending, for the unit-radius well of depth `v0`.
pub fn square_well_levels(m: i32, v0: f64) -> Vec<f64> {
    let top = v0.sqrt();
    // channel m ≥ 1 binds only once √V₀ exceeds the first zero of J_{m-1},
    // which is larger than m - 1; below that J_m is at rounding level
    if m >= 1 && top <= (m - 1) as f64 {
        return Vec::new();
    }
    // log-spaced near 0 to catch exponentially shallow states, linear above
    let mut ks: Vec<f64> = (0..400).map(|i| (-60.0 + 60.0 * i as f64 / 400.0).exp() * top).collect();
    ks.extend((1..4000).map(|i| top * i as f64 / 4000.0));
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    let mut out = Vec::new();
    for w in ks.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (matching(m, v0, a), matching(m, v0, b));
        if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        // reject poles of the ratio form: J_m(q) changes sign there too
        for _ in 0..200 {
            let c = 0.5 * (a + b);
            let fc = matching(m, v0, c);
            if fc.signum() == fa.signum() {
                a = c;
                fa = fc;
            } else {
                b = c;
            }
        }
        let kappa = 0.5 * (a + b);
        let resid = matching(m, v0, kappa).abs();
        if resid < 1e-6 * (1.0 + (v0 - kappa * kappa).sqrt()) {
            out.push(-kappa * kappa);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
