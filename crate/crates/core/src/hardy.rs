//! Probe of the weighted one-dimensional quadratic form
//!
//! ```text
//! Q[u] = ∫₀^{2R} |u'|² r dr + a ∫_R^{2R} |u|² r dr − a ∫₀^R |u|² r dr
//! ```
//!
//! on `[0, 2R]` with free ends. Substituting `r = Rρ` shows that the sign of
//! `Q` depends on `β = aR²` only. The form is discretised with linear
//! elements and a lumped `r dr` mass; its lowest eigenvalue relative to the
//! mass, scaled by `R²`, is reported as `min_eig`.

use serde::Serialize;

use crate::eigen::SymTridiagonal;
use crate::par::{self, Schedule};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyProbeResult {
    pub a: f64,
    pub r: f64,
    pub beta: f64,
    /// `R² · min Q[u] / ∫₀^{2R} |u|² r dr`, invariant under `(a, R) → (a/4, 2R)`.
    pub min_eig: f64,
    /// Minimiser at the nodes `r_i = 2R i/n`, with unit discrete mass.
    pub witness: Vec<f64>,
    pub n: usize,
}

/// Discrete form on `n` cells of `[0, 2R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyForm {
    pub a: f64,
    pub r: f64,
    pub n: usize,
    nodes: Vec<f64>,
    /// `∫ r dr / h` per cell.
    stiffness: Vec<f64>,
    mass: Vec<f64>,
    /// Signed potential weight per node.
    potential: Vec<f64>,
}

impl HardyForm {
    pub fn new(a: f64, r: f64, n: usize) -> Result<Self> {
        if !(a > 0.0) || !(r > 0.0) {
            return Err(Error::domain(format!("need a > 0 and R > 0, got a = {a}, R = {r}")));
        }
        if n < 64 || !n.is_multiple_of(2) {
            return Err(Error::domain(format!("need an even n ≥ 64, got {n}")));
        }
        let h = 2.0 * r / n as f64;
        let nodes: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let ring = |x: f64, y: f64| 0.5 * (y * y - x * x);
        let stiffness = nodes.windows(2).map(|w| ring(w[0], w[1]) / (h * h)).collect();
        let mut mass = vec![0.0; n + 1];
        let mut potential = vec![0.0; n + 1];
        for i in 0..=n {
            let lo = if i == 0 { 0.0 } else { nodes[i] - 0.5 * h };
            let hi = if i == n { nodes[n] } else { nodes[i] + 0.5 * h };
            mass[i] = ring(lo, hi);
            let inner = ring(lo.min(r), hi.min(r));
            let outer = ring(lo.max(r), hi.max(r));
            potential[i] = a * (outer - inner);
        }
        if mass.iter().any(|&m| !(m > 0.0)) {
            return Err(Error::Invariant("mass matrix is not positive definite".into()));
        }
        Ok(Self {
            a,
            r,
            n,
            nodes,
            stiffness,
            mass,
            potential,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `Q[u]` by direct summation.
    pub fn value(&self, u: &[f64]) -> f64 {
        let grad: f64 = self
            .stiffness
            .iter()
            .enumerate()
            .map(|(i, k)| k * (u[i + 1] - u[i]).powi(2))
            .sum();
        let pot: f64 = self.potential.iter().zip(u).map(|(p, x)| p * x * x).sum();
        grad + pot
    }

    /// `∫ |u|² r dr` with the lumped mass.
    pub fn mass(&self, u: &[f64]) -> f64 {
        self.mass.iter().zip(u).map(|(m, x)| m * x * x).sum()
    }

    fn tridiagonal(&self) -> SymTridiagonal {
        let n = self.n;
        let s: Vec<f64> = self.mass.iter().map(|m| m.sqrt()).collect();
        let diag = (0..=n)
            .map(|i| {
                let left = if i > 0 { self.stiffness[i - 1] } else { 0.0 };
                let right = if i < n { self.stiffness[i] } else { 0.0 };
                (left + right + self.potential[i]) / self.mass[i]
            })
            .collect();
        let off = (0..n).map(|i| -self.stiffness[i] / (s[i] * s[i + 1])).collect();
        SymTridiagonal::new(diag, off)
    }
}

/// Lowest eigenvalue of the form against the mass, with its eigenvector.
pub fn hardy_form_min(a: f64, r: f64, n: usize) -> Result<HardyProbeResult> {
    let form = HardyForm::new(a, r, n)?;
    let t = form.tridiagonal();
    let (mut lo, mut hi) = t.gershgorin();
    while hi - lo > 1e-15 * lo.abs().max(hi.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t.count_below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    let y = t.eigenvector(lambda);
    let mut witness: Vec<f64> = y.iter().zip(&form.mass).map(|(v, m)| v / m.sqrt()).collect();
    let norm = form.mass(&witness).sqrt();
    witness.iter_mut().for_each(|v| *v /= norm);
    Ok(HardyProbeResult {
        a,
        r,
        beta: a * r * r,
        min_eig: r * r * lambda,
        witness,
        n,
    })
}

/// The cutoff family: `level` on `[0, R]`, falling linearly to 0 at `2R`.
pub fn cutoff_witness(form: &HardyForm, level: f64) -> Vec<f64> {
    form.nodes
        .iter()
        .map(|&x| if x <= form.r { level } else { level * (2.0 - x / form.r).max(0.0) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CriticalBeta {
    /// First sign change of `min_eig`, bisected to `tol` relative width.
    Bracket { lo: f64, hi: f64, estimate: f64 },
    /// No sign change up to the largest charted β.
    Above { max: f64 },
    /// Already negative at the smallest charted β.
    Below { min: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyChart {
    pub n: usize,
    pub rows: Vec<(f64, f64)>,
    pub critical: CriticalBeta,
}

/// `min_eig` along `betas` (positive, increasing) at `R = 1`, and the
/// smallest `β*` where the form stops being non-negative.
pub fn hardy_validity_chart(betas: &[f64], n: usize, schedule: Schedule) -> Result<HardyChart> {
    if betas.is_empty() || betas.iter().any(|&b| !(b > 0.0)) || betas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("β values must be positive and strictly increasing"));
    }
    let mins = par::try_map(schedule, betas, |&b| hardy_form_min(b, 1.0, n).map(|p| p.min_eig))?;
    let rows: Vec<(f64, f64)> = betas.iter().copied().zip(mins).collect();
    let critical = match rows.iter().position(|&(_, m)| m < 0.0) {
        None => CriticalBeta::Above {
            max: *betas.last().unwrap(),
        },
        Some(0) => CriticalBeta::Below { min: betas[0] },
        Some(k) => {
            let (mut lo, mut hi) = (rows[k - 1].0, rows[k].0);
            while hi - lo > 1e-4 * hi {
                let mid = 0.5 * (lo + hi);
                if hardy_form_min(mid, 1.0, n)?.min_eig < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            CriticalBeta::Bracket {
                lo,
                hi,
                estimate: 0.5 * (lo + hi),
            }
        }
    };
    Ok(HardyChart { n, rows, critical })
}
