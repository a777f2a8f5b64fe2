//! Eigenvalue kernels: Sturm counts for symmetric tridiagonal matrices,
//! inertia of symmetric band matrices by unpivoted `LDLᵀ`, a bisection driver
//! that extracts every eigenvalue of a monotone counting function, and the
//! Richardson helpers shared by the mesh-refinement studies.

use crate::par::{self, Schedule};

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `sigma` (Sturm sequence).
    pub fn count_below(&self, sigma: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE * 1e4;
        let mut count = 0;
        let mut q = self.diag[0] - sigma;
        for i in 0..self.diag.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - sigma - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut rad = 0.0;
            if i > 0 {
                rad += self.off[i - 1].abs();
            }
            if i + 1 < n {
                rad += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - rad);
            hi = hi.max(self.diag[i] + rad);
        }
        (lo, hi)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Unit eigenvector for an accurately known eigenvalue, by inverse
    /// iteration with a tridiagonal solve using partial pivoting.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let scale = self.gershgorin().1.abs().max(self.gershgorin().0.abs()).max(1e-300);
        let shift = lambda + 1e-12 * scale;
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        for (i, v) in x.iter_mut().enumerate() {
            // deterministic, not orthogonal to any smooth mode
            *v *= 1.0 + 0.1 * ((i as f64) * 0.618_033_988_75).fract();
        }
        for _ in 0..4 {
            x = solve_shifted(self, shift, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        if x.iter().sum::<f64>() < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        x
    }
}

/// Solves `(T - shift I) x = b` by Gaussian elimination with partial pivoting.
fn solve_shifted(t: &SymTridiagonal, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = t.len();
    if n == 1 {
        let d = t.diag[0] - shift;
        return vec![b[0] / if d == 0.0 { 1e-300 } else { d }];
    }
    // rows hold (main, super1, super2)
    let mut dl: Vec<f64> = t.off.clone();
    let mut d: Vec<f64> = t.diag.iter().map(|v| v - shift).collect();
    let mut du: Vec<f64> = t.off.clone();
    let mut du2 = vec![0.0; n];
    let mut x = b.to_vec();
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = 1e-300;
            }
            let f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            x[i + 1] -= f * x[i];
            dl[i] = 0.0;
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            let tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] *= -f;
            }
            du[i] = tmp;
            x.swap(i, i + 1);
            x[i + 1] -= f * x[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = 1e-300;
    }
    x[n - 1] /= d[n - 1];
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    x
}

/// Symmetric band matrix stored by rows of the lower triangle:
/// `row(p)[o] = A[p][p - o]` for `o = 0..=bandwidth`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBand {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl SymBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        Self {
            n,
            bw: bandwidth,
            data: vec![0.0; n * (bandwidth + 1)],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (p, q) = if i >= j { (i, j) } else { (j, i) };
        let o = p - q;
        if o > self.bw {
            0.0
        } else {
            self.data[p * (self.bw + 1) + o]
        }
    }

    /// Adds `v` to the symmetric pair `(i, j)`, `(j, i)` (once on the diagonal).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (p, q) = if i >= j { (i, j) } else { (j, i) };
        let o = p - q;
        assert!(o <= self.bw, "entry ({i}, {j}) outside bandwidth {}", self.bw);
        self.data[p * (self.bw + 1) + o] += v;
    }

    pub fn add_diag(&mut self, i: usize, v: f64) {
        self.data[i * (self.bw + 1)] += v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for p in 0..self.n {
            let row = &self.data[p * (self.bw + 1)..(p + 1) * (self.bw + 1)];
            y[p] += row[0] * x[p];
            for (o, &a) in row.iter().enumerate().take(self.bw.min(p) + 1).skip(1) {
                let q = p - o;
                y[p] += a * x[q];
                y[q] += a * x[p];
            }
        }
        y
    }

    /// Number of negative eigenvalues (Sylvester inertia) from an unpivoted
    /// `LDLᵀ` factorization. Consumes the matrix as workspace.
    pub fn into_negative_count(mut self) -> usize {
        let n = self.n;
        let w = self.bw + 1;
        let mut l = vec![0.0; w];
        let mut count = 0;
        let pivmin = f64::MIN_POSITIVE * 1e4;
        for q in 0..n {
            let mut dq = self.data[q * w];
            if dq.abs() < pivmin {
                dq = -pivmin;
            }
            if dq < 0.0 {
                count += 1;
            }
            let pmax = (q + self.bw).min(n - 1);
            for p in q + 1..=pmax {
                l[p - q] = self.data[p * w + (p - q)] / dq;
            }
            for p2 in q + 1..=pmax {
                let a2q = self.data[p2 * w + (p2 - q)];
                if a2q == 0.0 {
                    continue;
                }
                let row = &mut self.data[p2 * w..(p2 + 1) * w];
                for p in q + 1..=p2 {
                    row[p2 - p] -= a2q * l[p - q];
                }
            }
        }
        count
    }
}

/// Stopping rule for eigenvalue bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    fn converged(&self, a: f64, b: f64) -> bool {
        let scale = if a * b > 0.0 { a.abs().min(b.abs()) } else { 0.0 };
        b - a <= self.abs + self.rel * scale
    }
}

fn split(a: f64, b: f64) -> f64 {
    if a < 0.0 && b < 0.0 && a / b > 4.0 {
        -(a * b).sqrt()
    } else if a > 0.0 && b > 0.0 && b / a > 4.0 {
        (a * b).sqrt()
    } else {
        0.5 * (a + b)
    }
}

/// Every eigenvalue in `[lo, hi)` of an operator described only by its
/// counting function `count(σ) = #{λ < σ}`, located by bisection. Splits are
/// geometric across decades so exponentially small eigenvalues resolve to
/// relative accuracy. Isolated eigenvalues are refined under `schedule`.
pub fn eigenvalues_by_bisection<F>(
    count: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
    schedule: Schedule,
) -> Vec<f64>
where
    F: Fn(f64) -> usize + Sync + Send,
{
    let n_lo = count(lo);
    let n_hi = count(hi);
    if n_hi <= n_lo {
        return Vec::new();
    }
    let mut stack = vec![(lo, hi, n_lo, n_hi)];
    let mut isolated = Vec::new();
    while let Some((a, b, na, nb)) = stack.pop() {
        if nb <= na {
            continue;
        }
        if nb - na == 1 || tol.converged(a, b) {
            isolated.push((a, b, na, nb));
            continue;
        }
        let m = split(a, b);
        let nm = count(m);
        stack.push((a, m, na, nm));
        stack.push((m, b, nm, nb));
    }
    let refined = par::map(schedule, &isolated, |&(mut a, mut b, na, nb)| {
        while !tol.converged(a, b) {
            let m = split(a, b);
            if m <= a || m >= b {
                break;
            }
            let nm = count(m);
            if nm > na {
                b = m;
            } else {
                a = m;
            }
        }
        (0.5 * (a + b), nb - na)
    });
    let mut out: Vec<f64> = refined
        .into_iter()
        .flat_map(|(v, k)| std::iter::repeat_n(v, k))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Second-order Richardson extrapolation from spacings `h` and `h/2`.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Richardson extrapolation of `ln|λ|` for same-signed values; for bound
/// states that are exponentially small in the coupling the logarithm is the
/// quantity with a regular `h²` expansion.
pub fn richardson_log(coarse: f64, fine: f64) -> f64 {
    if coarse * fine <= 0.0 {
        return richardson(coarse, fine);
    }
    let mag = ((4.0 * fine.abs().ln() - coarse.abs().ln()) / 3.0).exp();
    fine.signum() * mag
}

/// Observed convergence order from values on spacings `h`, `h/2`, `h/4`.
/// `None` when the differences do not shrink monotonically or sit at
/// rounding level.
pub fn observed_order(x1: f64, x2: f64, x3: f64) -> Option<f64> {
    let d1 = x1 - x2;
    let d2 = x2 - x3;
    let noise = 1e-13 * x3.abs().max(f64::MIN_POSITIVE);
    if d1 * d2 <= 0.0 || d2.abs() <= noise {
        return None;
    }
    Some((d1 / d2).log2())
}
