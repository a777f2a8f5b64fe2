//! Trapped modes of the deformed layer `{0 < z < d + f(r)}` for radial `f`.
//!
//! The substitution `ζ = z d/(d + f(r))` maps the layer onto the straight
//! slab `0 < ζ < d`. With `g = 1 + f/d` the channel-`m` form becomes
//!
//! ```text
//! ∫∫ [ g v_r² − 2ζg' v_r v_ζ + (1 + ζ²g'²)/g v_ζ² + g m²/r² v² ] r dr dζ
//! ```
//!
//! against the mass `∫∫ g v² r dr dζ`. It is discretised on a tensor grid
//! with one-point quadrature at the four corners of each cell, so every
//! corner contributes a positive semidefinite term and the matrix pencil is
//! symmetric. The threshold `π²/d²` is replaced by the discrete transverse
//! ground energy `ε₁`, which is what the discrete straight layer converges to.
//!
//! Columns with `r ≤ R` form a band matrix. Beyond `R` the coefficients are
//! constant, so a discrete sine transform in `ζ` splits the exterior into one
//! radial chain per transverse mode, continued on a geometric tail to a far
//! Dirichlet radius. The inertia of `K − (ε₁ + σ) M` is the number of negative
//! pivots of the chains plus that of the Schur complement on the band.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::effpot::effective_potential;
use crate::eigen::{eigenvalues_by_bisection, SymBand, Tolerance};
use crate::ltbounds::{BoundReport, RhsTerm};
use crate::par::Schedule;
use crate::profiles::{eval_profile, DeformationProfile};
use crate::schrodinger2d::{
    combine_levels, negative_spectrum, scan_channels, ConvergenceTol, Discretization, Hamiltonian2d, Spectrum,
    SpectrumOptions,
};
use crate::{Error, RadialGrid, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerOperatorSpec {
    pub profile: DeformationProfile,
    /// End of the uniformly spaced region; the geometric tail starts here.
    pub r_max: f64,
    /// Cells on `[0, R]` at the coarsest level.
    pub n_r: usize,
    /// Interior transverse nodes at the coarsest level.
    pub n_z: usize,
    pub m_cap: u32,
    pub far_radius: f64,
    pub tail_ratio: f64,
}

impl LayerOperatorSpec {
    pub fn new(profile: DeformationProfile) -> Self {
        let r_max = 2.0 * profile.support_radius;
        Self {
            profile,
            r_max,
            n_r: 24,
            n_z: 16,
            m_cap: 64,
            far_radius: 1e30,
            tail_ratio: 1.05,
        }
    }

    pub fn with_mesh(mut self, n_r: usize, n_z: usize) -> Self {
        self.n_r = n_r;
        self.n_z = n_z;
        self
    }

    fn check(&self) -> Result<()> {
        if !self.profile.is_validated() {
            return Err(Error::Unvalidated);
        }
        if self.n_r < 16 || self.n_z < 16 {
            return Err(Error::domain(format!(
                "mesh too coarse: n_r = {}, n_z = {} (both must be ≥ 16)",
                self.n_r, self.n_z
            )));
        }
        if self.r_max < 2.0 * self.profile.support_radius {
            return Err(Error::domain(format!(
                "r_max = {} must be at least 2R = {}",
                self.r_max,
                2.0 * self.profile.support_radius
            )));
        }
        Ok(())
    }

    fn width(&self) -> f64 {
        self.profile.width
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerOptions {
    pub levels: usize,
    pub tol: ConvergenceTol,
    pub strict: bool,
    pub marginal_tol: f64,
    pub schedule: Schedule,
}

impl Default for LayerOptions {
    fn default() -> Self {
        Self {
            levels: 2,
            tol: ConvergenceTol { abs: 1e-6, rel: 1e-2 },
            strict: false,
            marginal_tol: 1e-40,
            schedule: Schedule::default(),
        }
    }
}

/// `ε₁ = (4/Δζ²) sin²(π / (2(n_z + 1)))`, lowest eigenvalue of the
/// three-point Dirichlet Laplacian on `n_z` interior nodes of `(0, d)`.
pub fn discrete_transverse_ground(d: f64, n_z: usize) -> f64 {
    let dz = d / (n_z + 1) as f64;
    let s = (PI / (2.0 * (n_z + 1) as f64)).sin();
    4.0 / (dz * dz) * s * s
}

/// `ε_k − ε₁` written as a product so it carries no cancellation.
fn mode_gap(d: f64, n_z: usize, k: usize) -> f64 {
    let dz = d / (n_z + 1) as f64;
    let theta = PI / (2.0 * (n_z + 1) as f64);
    4.0 / (dz * dz) * (((k + 1) as f64) * theta).sin() * (((k - 1) as f64) * theta).sin()
}

/// Radial nodes of one refinement level: uniform with `n_r · factor` cells on
/// `[0, R]` up to `r_max`, then geometric out to the far radius. Returns the
/// nodes and the index of `R`.
fn layer_nodes(spec: &LayerOperatorSpec, factor: usize) -> (Vec<f64>, usize) {
    let big_r = spec.profile.support_radius;
    let h0 = big_r / spec.n_r as f64;
    let cells0 = (spec.r_max / h0 - 1e-9).ceil() as usize;
    let r_max = cells0 as f64 * h0;
    let h = h0 / factor as f64;
    let mut nodes: Vec<f64> = (0..=cells0 * factor).map(|i| i as f64 * h).collect();
    if spec.far_radius > r_max {
        let kappa = spec.tail_ratio.ln();
        let mut k = 1usize;
        loop {
            let r = r_max + h0 / kappa * (kappa * k as f64 / factor as f64).exp_m1();
            nodes.push(r.min(spec.far_radius));
            if r >= spec.far_radius {
                break;
            }
            k += 1;
        }
    }
    (nodes, spec.n_r * factor)
}

/// `∫ r dr` over `[a, b]`.
fn ring(a: f64, b: f64) -> f64 {
    0.5 * (b * b - a * a)
}

/// Control-volume area `∫ r dr` of node `i`.
fn control_volume(nodes: &[f64], i: usize) -> f64 {
    let r = nodes[i];
    let left = if i > 0 { ring(0.5 * (nodes[i - 1] + r), r) } else { 0.0 };
    let right = if i + 1 < nodes.len() { ring(r, 0.5 * (r + nodes[i + 1])) } else { 0.0 };
    left + right
}

/// Pencil of the straightened form on columns `first..n_cols` of `nodes`;
/// column `n_cols` and the rows `ζ = 0, d` are held at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerForm {
    pub stiffness: SymBand,
    /// Lumped mass, diagonal.
    pub mass: Vec<f64>,
    pub first: usize,
    pub n_cols: usize,
    pub n_z: usize,
    pub dz: f64,
}

impl LayerForm {
    pub fn index(&self, i: usize, j: usize) -> usize {
        (i - self.first) * self.n_z + (j - 1)
    }

    /// `vᵀ K v`.
    pub fn energy(&self, v: &[f64]) -> f64 {
        self.stiffness.matvec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

fn assemble(profile: &DeformationProfile, nodes: &[f64], n_cols: usize, n_z: usize, m: u32) -> LayerForm {
    let d = profile.width;
    let dz = d / (n_z + 1) as f64;
    let first = if m == 0 { 0 } else { 1 };
    let cols = n_cols - first;
    let mut k = SymBand::zeros(cols * n_z, n_z + 1);
    let mut mass = vec![0.0; cols * n_z];
    let coeff = |r: f64| {
        let v = eval_profile(profile, r).unwrap_or_default();
        (1.0 + v.f / d, v.df / d)
    };
    let unknown = |i: usize, j: usize| -> Option<usize> {
        (i >= first && i < n_cols && j >= 1 && j <= n_z).then(|| (i - first) * n_z + (j - 1))
    };
    let col_coeff: Vec<(f64, f64)> = nodes[..=n_cols].iter().map(|&r| coeff(r)).collect();
    for i in 0..n_cols {
        let (r0, r1) = (nodes[i], nodes[i + 1]);
        let dr = r1 - r0;
        let mid = 0.5 * (r0 + r1);
        for j in 0..=n_z {
            for (a, rw) in [(i, ring(r0, mid)), (i + 1, ring(mid, r1))] {
                let (g, gp) = col_coeff[a];
                for b in [j, j + 1] {
                    let zeta = b as f64 * dz;
                    let w = rw * 0.5 * dz;
                    let c_rr = g;
                    let c_rz = -zeta * gp;
                    let c_zz = (1.0 + zeta * zeta * gp * gp) / g;
                    // v_r along the r-edge through the corner, v_ζ along the ζ-edge
                    let grad_r = [(i, b, -1.0 / dr), (i + 1, b, 1.0 / dr)];
                    let grad_z = [(a, j, -1.0 / dz), (a, j + 1, 1.0 / dz)];
                    for &(pi, pj, alpha) in &grad_r {
                        let Some(p) = unknown(pi, pj) else { continue };
                        for &(qi, qj, beta) in &grad_r {
                            if let Some(q) = unknown(qi, qj) {
                                if q <= p {
                                    k.add(p, q, w * c_rr * alpha * beta);
                                }
                            }
                        }
                        for &(qi, qj, beta) in &grad_z {
                            if let Some(q) = unknown(qi, qj) {
                                // the cross term appears as αβᵀ + βαᵀ
                                let v = w * c_rz * alpha * beta;
                                if p == q {
                                    k.add(p, q, 2.0 * v);
                                } else {
                                    k.add(p, q, v);
                                }
                            }
                        }
                    }
                    for &(pi, pj, alpha) in &grad_z {
                        let Some(p) = unknown(pi, pj) else { continue };
                        for &(qi, qj, beta) in &grad_z {
                            if let Some(q) = unknown(qi, qj) {
                                if q <= p {
                                    k.add(p, q, w * c_zz * alpha * beta);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let m2 = (m as f64) * (m as f64);
    for i in first..n_cols {
        let area = control_volume(&nodes[..=n_cols.min(nodes.len() - 1)], i);
        let g = col_coeff[i].0;
        for j in 1..=n_z {
            let p = (i - first) * n_z + (j - 1);
            mass[p] = g * area * dz;
            if m > 0 {
                k.add_diag(p, m2 / (nodes[i] * nodes[i]) * mass[p]);
            }
        }
    }
    LayerForm {
        stiffness: k,
        mass,
        first,
        n_cols,
        n_z,
        dz,
    }
}

/// The straightened pencil on `[0, r_max]` with a Dirichlet wall at `r_max`,
/// at the coarsest mesh of `spec`.
pub fn assemble_layer_form(spec: &LayerOperatorSpec, m: u32) -> Result<LayerForm> {
    spec.check()?;
    if spec.profile.width + spec.profile.sup() <= 0.0 {
        return Err(Error::Invariant("straightening map degenerate: d + f ≤ 0".into()));
    }
    let (nodes, _) = layer_nodes(
        &LayerOperatorSpec {
            far_radius: 0.0,
            ..spec.clone()
        },
        1,
    );
    let n_cols = nodes.len() - 1;
    Ok(assemble(&spec.profile, &nodes, n_cols, spec.n_z, m))
}

/// One level of the inertia computation for channel `m`.
struct ChannelPencil {
    form: LayerForm,
    eps1: f64,
    /// Radial chain on the exterior columns (first entry next to `R`).
    chain_nodes: Vec<f64>,
    /// Edge weight `∫ r dr / Δr²` between column `R` and the first exterior column.
    link: f64,
    m: u32,
    d: f64,
    /// `S[j][k]`, orthonormal sine transform.
    sine: Vec<Vec<f64>>,
}

impl ChannelPencil {
    fn new(spec: &LayerOperatorSpec, factor: usize, m: u32) -> Self {
        let (nodes, i_r) = layer_nodes(spec, factor);
        let n_z = spec.n_z * factor;
        let form = assemble(&spec.profile, &nodes, i_r + 1, n_z, m);
        let link = ring(nodes[i_r], nodes[i_r + 1]) / (nodes[i_r + 1] - nodes[i_r]).powi(2);
        let c = (2.0 / (n_z + 1) as f64).sqrt();
        let sine = (1..=n_z)
            .map(|j| {
                (1..=n_z)
                    .map(|k| c * (PI * (j * k) as f64 / (n_z + 1) as f64).sin())
                    .collect()
            })
            .collect();
        Self {
            form,
            eps1: discrete_transverse_ground(spec.width(), n_z),
            chain_nodes: nodes[i_r..].to_vec(),
            link,
            m,
            d: spec.width(),
            sine,
        }
    }

    /// Eliminates the chain of transverse mode `k` from the far end.
    /// Returns the number of negative pivots and the pivot next to `R`.
    fn chain(&self, k: usize, sigma: f64) -> (usize, f64) {
        let nodes = &self.chain_nodes;
        let n_z = self.form.n_z;
        let dz = self.form.dz;
        let shift = mode_gap(self.d, n_z, k) - sigma;
        let m2 = (self.m as f64) * (self.m as f64);
        let pivmin = f64::MIN_POSITIVE * 1e4;
        // chain unknowns are nodes[1..last]; nodes[0] is column R, last is Dirichlet
        let last = nodes.len() - 1;
        let edge = |i: usize| ring(nodes[i], nodes[i + 1]) / (nodes[i + 1] - nodes[i]).powi(2);
        let mut negatives = 0;
        let mut pivot = 0.0;
        let mut next_edge = 0.0;
        for i in (1..last).rev() {
            let r = nodes[i];
            let area = control_volume(nodes, i);
            let left = edge(i - 1);
            let right = edge(i);
            let mut diag = dz * (left + right + (shift + m2 / (r * r)) * area);
            if i + 1 < last {
                let e = dz * next_edge;
                diag -= e * e / pivot;
            }
            if diag.abs() < pivmin {
                diag = -pivmin;
            }
            if diag < 0.0 {
                negatives += 1;
            }
            pivot = diag;
            next_edge = left;
        }
        (negatives, pivot)
    }

    /// Number of eigenvalues of the discrete `A_f` below `sigma`.
    fn count_below(&self, sigma: f64) -> usize {
        let n_z = self.form.n_z;
        let dz = self.form.dz;
        let mut band = self.form.stiffness.clone();
        let level = self.eps1 + sigma;
        for (p, &mp) in self.form.mass.iter().enumerate() {
            band.add_diag(p, -level * mp);
        }
        let mut negatives = 0;
        let mut inv_pivots = Vec::with_capacity(n_z);
        for k in 1..=n_z {
            let (neg, piv) = self.chain(k, sigma);
            negatives += neg;
            inv_pivots.push(1.0 / piv);
        }
        // Schur complement on the last band column
        let coupling = dz * self.link;
        let c2 = coupling * coupling;
        let base = self.form.index(self.form.n_cols - 1, 1);
        for j in 0..n_z {
            for jp in 0..=j {
                let s: f64 = (0..n_z).map(|k| self.sine[j][k] * self.sine[jp][k] * inv_pivots[k]).sum();
                band.add(base + j, base + jp, -c2 * s);
            }
        }
        negatives + band.into_negative_count()
    }
}

/// Trapped modes `−μ_j` of `A_f` together with the threshold used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerSpectrum {
    pub spectrum: Spectrum,
    /// Discrete `ε₁` on the finest mesh; `π²/d²` in the continuum.
    pub transverse_ground: f64,
}

/// All eigenvalues of `A_f` below 0 over the channels `m = 0, 1, …` until a
/// channel has none, each combined over `levels` meshes.
pub fn layer_negative_spectrum(spec: &LayerOperatorSpec, opts: &LayerOptions) -> Result<LayerSpectrum> {
    spec.check()?;
    let levels = opts.levels.max(1);
    let factors: Vec<usize> = (0..levels).map(|l| 1usize << l).collect();
    let finest_nz = spec.n_z * factors[levels - 1];
    let upper = -opts.marginal_tol.max(f64::MIN_POSITIVE);
    let mut warnings = Vec::new();
    let (eigenvalues, m_last, certified) = scan_channels(opts.schedule, spec.m_cap, |m| {
        let per_level: Vec<Vec<f64>> = factors
            .iter()
            .map(|&f| {
                let pencil = ChannelPencil::new(spec, f, m);
                if pencil.count_below(upper) == 0 {
                    return Vec::new();
                }
                let lo = -pencil.eps1 - 1.0;
                eigenvalues_by_bisection(
                    |s| pencil.count_below(s),
                    lo,
                    upper,
                    Tolerance { rel: 1e-12, abs: 0.0 },
                    opts.schedule,
                )
            })
            .collect();
        Ok(combine_levels(&per_level, m, opts.tol)
            .into_iter()
            .filter(|e| e.value < 0.0)
            .collect())
    })?;
    if !certified {
        warnings.push(format!("channel cap m = {} reached without certificate", spec.m_cap));
    }
    for e in eigenvalues.iter().filter(|e| !e.converged) {
        let msg = format!(
            "trapped mode {:e} (m = {}) not converged: drift {:?} over levels {:?}",
            e.value, e.m, e.drift, e.levels
        );
        if opts.strict {
            return Err(Error::Convergence(msg));
        }
        warnings.push(msg);
    }
    let finest = ChannelPencil::new(spec, factors[levels - 1], 0);
    let marginal = if opts.marginal_tol > 0.0 {
        finest.count_below(0.0) - finest.count_below(upper)
    } else {
        0
    };
    if marginal > 0 {
        warnings.push(format!("{marginal} marginal eigenvalue(s) in (-{}, 0) excluded", opts.marginal_tol));
    }
    Ok(LayerSpectrum {
        spectrum: Spectrum {
            operator: "A_f".into(),
            threshold: 0.0,
            eigenvalues,
            certified,
            marginal,
            discretization: Discretization {
                r_max: spec.r_max,
                n: spec.n_r,
                n_z: Some(spec.n_z),
                levels,
                far_radius: spec.far_radius,
                m_max: m_last,
            },
            warnings,
        },
        transverse_ground: discrete_transverse_ground(spec.width(), finest_nz),
    })
}

/// Both sides of `N(A_f − t) ≤ N(−Δ + 3V_f − 3t)` for each `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingBoundReport {
    pub rows: Vec<BoundReport>,
    pub verdict: bool,
}

/// Left counts from the layer spectrum (`μ_j > t`), right counts from the 2D
/// operator `−Δ + 3V_f` below `−3t`.
pub fn verify_counting_bound(
    spec: &LayerOperatorSpec,
    t_grid: &[f64],
    layer_opts: &LayerOptions,
    grid: &RadialGrid,
    opts2d: &SpectrumOptions,
) -> Result<CountingBoundReport> {
    if t_grid.iter().any(|&t| !(t >= 0.0)) {
        return Err(Error::domain("counting energies must be non-negative"));
    }
    let layer = layer_negative_spectrum(spec, layer_opts)?;
    let v_f = effective_potential(&spec.profile, grid)?;
    let right = negative_spectrum(&Hamiltonian2d::effective(v_f), 0.0, opts2d)?;
    let rows: Vec<BoundReport> = t_grid
        .iter()
        .map(|&t| {
            let lhs = layer.spectrum.count_below(-t) as f64;
            let rhs = right.count_below(-3.0 * t) as f64;
            BoundReport::new(format!("t = {t}"), lhs, vec![RhsTerm::new("count", rhs)], Vec::new(), lhs <= rhs)
        })
        .collect();
    let verdict = rows.iter().all(|r| r.verdict);
    Ok(CountingBoundReport { rows, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(h: f64, alpha: f64) -> LayerOperatorSpec {
        let p = DeformationProfile::cosine_bump(h, 1.0, 1.0)
            .with_coupling(alpha)
            .validate()
            .unwrap();
        LayerOperatorSpec::new(p)
    }

    #[test]
    fn form_is_symmetric_and_semidefinite() {
        let s = spec(0.3, 1.0);
        for m in [0, 2] {
            let f = assemble_layer_form(&s, m).unwrap();
            let n = f.mass.len();
            let u: Vec<f64> = (0..n).map(|i| ((i * 7919) % 23) as f64 - 11.0).collect();
            let w: Vec<f64> = (0..n).map(|i| ((i * 104_729) % 17) as f64 - 8.0).collect();
            let a: f64 = f.stiffness.matvec(&u).iter().zip(&w).map(|(x, y)| x * y).sum();
            let b: f64 = f.stiffness.matvec(&w).iter().zip(&u).map(|(x, y)| x * y).sum();
            assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0));
            assert!(f.energy(&u) > 0.0);
        }
    }

    #[test]
    fn flat_layer_is_separable() {
        // K = K_r ⊗ Δζ I + M_r ⊗ K_ζ, so v = φ(r) sin(πζ/d) has Rayleigh
        // quotient equal to the radial quotient plus ε₁
        let s = spec(0.3, 0.0);
        let f = assemble_layer_form(&s, 0).unwrap();
        let n_z = f.n_z;
        let (nodes, _) = layer_nodes(&LayerOperatorSpec { far_radius: 0.0, ..s.clone() }, 1);
        let phi: Vec<f64> = nodes[..f.n_cols].iter().map(|&r| (-r * r).exp()).collect();
        let mut v = vec![0.0; f.mass.len()];
        for (i, p) in phi.iter().enumerate() {
            for j in 1..=n_z {
                v[f.index(i, j)] = p * (PI * j as f64 / (n_z + 1) as f64).sin();
            }
        }
        let rq = f.energy(&v) / v.iter().zip(&f.mass).map(|(a, m)| a * a * m).sum::<f64>();
        let mut kr = 0.0;
        let mut mr = 0.0;
        for i in 0..f.n_cols {
            let next = if i + 1 < f.n_cols { phi[i + 1] } else { 0.0 };
            kr += ring(nodes[i], nodes[i + 1]) / (nodes[i + 1] - nodes[i]).powi(2) * (next - phi[i]).powi(2);
            mr += control_volume(&nodes, i) * phi[i] * phi[i];
        }
        let eps1 = discrete_transverse_ground(1.0, n_z);
        assert!((rq - (kr / mr + eps1)).abs() < 1e-10 * rq, "{rq} vs {}", kr / mr + eps1);
    }

    #[test]
    fn widened_column_sees_wider_slab() {
        // g' = 0 where f is flat: the column transverse quotient is ε₁/g²
        let s = spec(0.3, 1.0);
        let f = assemble_layer_form(&s, 0).unwrap();
        let n_z = f.n_z;
        let mut v = vec![0.0; f.mass.len()];
        for j in 1..=n_z {
            v[f.index(0, j)] = (PI * j as f64 / (n_z + 1) as f64).sin();
        }
        // subtract the radial edge term; its corners sit at r₀ and r₁, and the
        // cross term at r₁ meets a zero ζ-difference there
        let (nodes, _) = layer_nodes(&LayerOperatorSpec { far_radius: 0.0, ..s.clone() }, 1);
        let g = 1.3;
        let g1 = 1.0 + eval_profile(&s.profile, nodes[1]).unwrap().f;
        let mid = 0.5 * nodes[1];
        let edge = (g * ring(0.0, mid) + g1 * ring(mid, nodes[1])) / nodes[1].powi(2);
        let radial = edge * f.dz * v.iter().map(|x| x * x).sum::<f64>();
        let mass: f64 = v.iter().zip(&f.mass).map(|(a, m)| a * a * m).sum();
        let transverse = (f.energy(&v) - radial) / mass;
        let expect = discrete_transverse_ground(1.0, n_z) / (g * g);
        assert!((transverse - expect).abs() / expect < 1e-12, "{transverse} vs {expect}");
    }

    #[test]
    fn transverse_ground_energy() {
        let e = discrete_transverse_ground(1.0, 200);
        assert!((e - PI * PI).abs() / (PI * PI) < 5e-3);
        assert!(e < PI * PI);
        assert_eq!(mode_gap(1.0, 16, 1), 0.0);
        let direct = 4.0 * 17.0f64.powi(2) * ((3.0 * PI / 34.0).sin().powi(2) - (PI / 34.0).sin().powi(2));
        assert!((mode_gap(1.0, 16, 3) - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn straight_layer_has_no_trapped_modes() {
        let s = spec(0.3, 0.0);
        let out = layer_negative_spectrum(&s, &LayerOptions { levels: 1, ..Default::default() }).unwrap();
        assert!(out.spectrum.is_empty());
    }

    #[test]
    fn chain_inertia_matches_dense_count() {
        // inertia through the modal Schur complement equals a Sturm count on
        // the truncated full pencil when the tail is switched off
        let mut s = spec(0.6, 1.0);
        s.far_radius = 0.0;
        s.r_max = 2.0;
        let pencil = ChannelPencil::new(&s, 1, 0);
        let form = assemble_layer_form(&s, 0).unwrap();
        for sigma in [-3.0, -1.0, -0.3, 0.5, 2.0] {
            let mut k = form.stiffness.clone();
            for (p, &m) in form.mass.iter().enumerate() {
                k.add_diag(p, -(pencil.eps1 + sigma) * m);
            }
            assert_eq!(pencil.count_below(sigma), k.into_negative_count(), "σ = {sigma}");
        }
    }

    #[test]
    fn bump_binds_one_mode() {
        let s = spec(0.3, 1.0);
        let out = layer_negative_spectrum(&s, &LayerOptions::default()).unwrap();
        assert!(out.spectrum.count() >= 1);
        assert_eq!(out.spectrum.eigenvalues[0].m, 0);
    }
}
