//! Cell-centred finite differences for the radial Dirichlet problem on the
//! unit disc, solved by Sturm bisection. Shares no code with the library.

/// Number of eigenvalues of the symmetric tridiagonal `(d, e)` below `x`.
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn lowest_eigenvalue(d: &[f64], e: &[f64], lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(d, e, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest eigenvalue of `-(1/r)(r u')' = λ u`, `u(1) = 0`, on `n` cells
/// centred at `r_i = (i − ½)h`, with the ghost value `u_{n+1} = −u_n`.
pub fn disc_fd(n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let c = |i: usize| (i as f64 - 0.5) * h;
    let face = |i: usize| i as f64 * h;
    let d: Vec<f64> = (1..=n)
        .map(|i| {
            let right = if i == n { 2.0 * face(n) } else { face(i) };
            (face(i - 1) + right) / (c(i) * h * h)
        })
        .collect();
    let e: Vec<f64> = (1..n).map(|i| -face(i) / (h * h * (c(i) * c(i + 1)).sqrt())).collect();
    lowest_eigenvalue(&d, &e, 0.0, 100.0)
}
