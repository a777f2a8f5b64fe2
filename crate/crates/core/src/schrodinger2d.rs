//! Negative spectrum of `-Δ + W` on ℝ² for radial `W`, channel by channel.
//!
//! Channel `m` is discretised by piecewise-linear finite elements in `r` with
//! a lumped `r dr` mass, which gives a symmetric tridiagonal pencil. The
//! uniform grid of the potential is continued by a geometric tail out to a
//! far Dirichlet radius, so bound states that are exponentially shallow (and
//! therefore exponentially wide) are not squeezed by the box. Eigenvalues
//! come from Sturm counts and bisection, on a hierarchy of refined meshes
//! whose two finest levels are combined by Richardson extrapolation.

use serde::{Deserialize, Serialize};

use crate::effpot::SampledPotential;
use crate::eigen::{eigenvalues_by_bisection, observed_order, richardson_log, SymTridiagonal, Tolerance};
use crate::par::{self, Schedule};
use crate::{Error, RadialGrid, Result};

/// `-Δ + coupling · V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian2d {
    pub potential: SampledPotential,
    pub coupling: f64,
}

impl Hamiltonian2d {
    /// `-Δ - V`.
    pub fn attractive(v: SampledPotential) -> Self {
        Self {
            potential: v,
            coupling: -1.0,
        }
    }

    /// `-Δ + 3 V_f`.
    pub fn effective(v_f: SampledPotential) -> Self {
        Self {
            potential: v_f,
            coupling: 3.0,
        }
    }

    pub fn describe(&self) -> String {
        let k = self.coupling;
        if k == -1.0 {
            "-Δ - V".into()
        } else if k < 0.0 {
            format!("-Δ - {} V", -k)
        } else {
            format!("-Δ + {k} V")
        }
    }
}

/// Accept an eigenvalue when its drift between mesh levels is below
/// `abs` or below `rel · |λ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTol {
    pub abs: f64,
    pub rel: f64,
}

impl ConvergenceTol {
    pub fn accepts(&self, drift: f64, value: f64) -> bool {
        drift <= self.abs || drift <= self.rel * value.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    /// Number of meshes `h, h/2, h/4, …` (at least 1).
    pub levels: usize,
    pub tol: ConvergenceTol,
    /// Turn convergence and domain-size warnings into errors.
    pub strict: bool,
    /// Hard cap on the angular index when the certificate never triggers.
    pub m_cap: u32,
    /// Dirichlet radius of the geometric tail; `≤ r_max` disables the tail.
    pub far_radius: f64,
    /// Growth ratio of consecutive tail cells.
    pub tail_ratio: f64,
    /// Eigenvalues in `(-marginal_tol, 0)` are excluded and reported.
    pub marginal_tol: f64,
    /// Recompute ground states with the far radius doubled.
    pub check_domain: bool,
    pub schedule: Schedule,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            levels: 3,
            tol: ConvergenceTol { abs: 1e-6, rel: 1e-4 },
            strict: false,
            m_cap: 256,
            far_radius: 1e30,
            tail_ratio: 1.05,
            marginal_tol: 1e-40,
            check_domain: true,
            schedule: Schedule::default(),
        }
    }
}

/// One reported eigenvalue with its mesh history.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub m: u32,
    /// 1 for `m = 0`, 2 otherwise.
    pub multiplicity: u32,
    /// Raw values on the successively refined meshes.
    pub levels: Vec<f64>,
    pub drift: Option<f64>,
    pub order: Option<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discretization {
    pub r_max: f64,
    pub n: usize,
    pub n_z: Option<usize>,
    pub levels: usize,
    pub far_radius: f64,
    /// Largest channel examined.
    pub m_max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub operator: String,
    /// Reported eigenvalues lie strictly below this energy.
    pub threshold: f64,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Channels whose last examined member had no eigenvalue below threshold.
    pub certified: bool,
    /// Number of excluded eigenvalues in `(-marginal_tol, 0)`, with multiplicity.
    pub marginal: usize,
    pub discretization: Discretization,
    pub warnings: Vec<String>,
}

impl Spectrum {
    /// Total multiplicity.
    pub fn count(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity as usize).sum()
    }

    /// Total multiplicity of eigenvalues strictly below `energy`.
    pub fn count_below(&self, energy: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|e| e.value < energy)
            .map(|e| e.multiplicity as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues repeated according to multiplicity, ascending.
    pub fn values(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity as usize))
            .collect()
    }

    pub fn all_converged(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.converged)
    }
}

/// Symmetric pencil `(K, M)` of one angular channel on the free nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOperator {
    pub m: u32,
    pub nodes: Vec<f64>,
    pub mass: Vec<f64>,
    pub stiff_diag: Vec<f64>,
    pub stiff_off: Vec<f64>,
}

impl ChannelOperator {
    /// Assembles the channel on `nodes` (starting at `r = 0`, last node
    /// Dirichlet). `w[i]` is the potential at node `i`; missing entries are 0.
    pub(crate) fn assemble(nodes: &[f64], w: &[f64], m: u32) -> Self {
        let n = nodes.len() - 1;
        let edge: Vec<f64> = nodes.windows(2).map(|p| (p[1] + p[0]) / (2.0 * (p[1] - p[0]))).collect();
        let first = if m == 0 { 0 } else { 1 };
        let m2 = (m as f64) * (m as f64);
        let mut out = Self {
            m,
            nodes: Vec::with_capacity(n),
            mass: Vec::with_capacity(n),
            stiff_diag: Vec::with_capacity(n),
            stiff_off: Vec::with_capacity(n),
        };
        for i in first..n {
            let r = nodes[i];
            let left = if i > 0 {
                let a = 0.5 * (nodes[i - 1] + r);
                0.5 * (r * r - a * a)
            } else {
                0.0
            };
            let b = 0.5 * (r + nodes[i + 1]);
            let mass = left + 0.5 * (b * b - r * r);
            let mut k = edge[i] + if i > 0 { edge[i - 1] } else { 0.0 };
            if m > 0 {
                k += m2 / (r * r) * mass;
            }
            k += w.get(i).copied().unwrap_or(0.0) * mass;
            out.nodes.push(r);
            out.mass.push(mass);
            out.stiff_diag.push(k);
            if i + 1 < n {
                out.stiff_off.push(-edge[i]);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `M^{-1/2} K M^{-1/2}`.
    pub fn to_tridiagonal(&self) -> SymTridiagonal {
        let s: Vec<f64> = self.mass.iter().map(|m| m.sqrt()).collect();
        let diag = self.stiff_diag.iter().zip(&self.mass).map(|(k, m)| k / m).collect();
        let off = self
            .stiff_off
            .iter()
            .enumerate()
            .map(|(i, k)| k / (s[i] * s[i + 1]))
            .collect();
        SymTridiagonal::new(diag, off)
    }

    /// `M^{-1} K u`.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.stiff_diag[i] * u[i];
                if i > 0 {
                    y += self.stiff_off[i - 1] * u[i - 1];
                }
                if i + 1 < n {
                    y += self.stiff_off[i] * u[i + 1];
                }
                y / self.mass[i]
            })
            .collect()
    }

    /// Discrete `∫ u v r dr`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        self.mass.iter().zip(u).zip(v).map(|((m, a), b)| m * a * b).sum()
    }
}

/// Channel `m` of `-Δ + coupling · V` on `grid` with a Dirichlet condition
/// at `r_max`; regular at the origin (`u'(0) = 0` for `m = 0`, `u(0) = 0`
/// otherwise).
pub fn radial_channel_matrix(v: &SampledPotential, coupling: f64, m: u32, grid: &RadialGrid) -> Result<ChannelOperator> {
    if v.grid != *grid || v.values.len() != grid.len() {
        return Err(Error::Dimension {
            expected: grid.len(),
            found: v.values.len(),
        });
    }
    let w: Vec<f64> = v.values.iter().map(|x| coupling * x).collect();
    Ok(ChannelOperator::assemble(&grid.nodes(), &w, m))
}

/// Nodes of `grid` refined by `factor`, continued geometrically to `far`.
/// The tail map `r(ξ) = r_max + (h/κ)(e^{κξ} − 1)` with `κ = ln q` is sampled
/// at `ξ = k / factor`, so refinement halves every tail cell as well.
pub(crate) fn extended_nodes(grid: &RadialGrid, factor: usize, far: f64, q: f64) -> Vec<f64> {
    let fine = grid.refined(factor);
    let mut nodes = fine.nodes();
    let r_max = grid.r_max();
    if far <= r_max {
        return nodes;
    }
    let h = grid.spacing();
    let kappa = q.ln();
    let mut k = 1usize;
    loop {
        let xi = k as f64 / factor as f64;
        let r = r_max + h / kappa * (kappa * xi).exp_m1();
        nodes.push(r.min(far));
        if r >= far {
            break;
        }
        k += 1;
    }
    nodes
}

struct Level {
    nodes: Vec<f64>,
    w: Vec<f64>,
}

fn build_levels(h: &Hamiltonian2d, opts: &SpectrumOptions, far: f64) -> Result<Vec<Level>> {
    let grid = &h.potential.grid;
    (0..opts.levels.max(1))
        .map(|l| {
            let factor = 1usize << l;
            let v = if factor == 1 {
                h.potential.clone()
            } else {
                h.potential.resample(&grid.refined(factor))?
            };
            Ok(Level {
                nodes: extended_nodes(grid, factor, far, opts.tail_ratio),
                w: v.values.iter().map(|x| h.coupling * x).collect(),
            })
        })
        .collect()
}

fn channel_eigenvalues(level: &Level, m: u32, upper: f64, schedule: Schedule) -> Vec<f64> {
    let t = ChannelOperator::assemble(&level.nodes, &level.w, m).to_tridiagonal();
    let (lo, _) = t.gershgorin();
    if lo >= upper {
        return Vec::new();
    }
    let tol = Tolerance { rel: 1e-13, abs: 0.0 };
    eigenvalues_by_bisection(|s| t.count_below(s), lo - 1.0, upper, tol, schedule)
}

/// Combines per-level eigenvalue lists (matched by rank from the bottom) into
/// reported eigenvalues: log-space Richardson on the two finest levels, drift
/// between successive extrapolants, observed order from the finest triple.
pub(crate) fn combine_levels(levels: &[Vec<f64>], m: u32, tol: ConvergenceTol) -> Vec<Eigenvalue> {
    let finest = levels.last().map(|v| v.len()).unwrap_or(0);
    let multiplicity = if m == 0 { 1 } else { 2 };
    (0..finest)
        .map(|j| {
            let hist: Vec<f64> = levels.iter().filter_map(|l| l.get(j).copied()).collect();
            let complete = hist.len() == levels.len();
            let k = hist.len();
            let (value, drift) = match k {
                0 => unreachable!(),
                1 => (hist[0], None),
                2 => {
                    let ex = richardson_log(hist[0], hist[1]);
                    (ex, Some((ex - hist[1]).abs()))
                }
                _ => {
                    let ex = richardson_log(hist[k - 2], hist[k - 1]);
                    let prev = richardson_log(hist[k - 3], hist[k - 2]);
                    (ex, Some((ex - prev).abs()))
                }
            };
            let order = if k >= 3 && hist[k - 3..].iter().all(|&x| x < 0.0) {
                observed_order(-(-hist[k - 3]).ln(), -(-hist[k - 2]).ln(), -(-hist[k - 1]).ln())
            } else {
                None
            };
            let converged = complete && levels.len() >= 2 && drift.map(|d| tol.accepts(d, value)).unwrap_or(false);
            Eigenvalue {
                value,
                m,
                multiplicity,
                levels: hist,
                drift,
                order,
                converged,
            }
        })
        .collect()
}

/// Channels are visited in batches, in parallel under `schedule`, and the
/// loop stops at the first channel without eigenvalues below threshold.
/// Returns the eigenvalues merged by `(value, m)`, the last channel examined,
/// and whether the stop was certified.
pub(crate) fn scan_channels<F>(schedule: Schedule, m_cap: u32, solve: F) -> Result<(Vec<Eigenvalue>, u32, bool)>
where
    F: Fn(u32) -> Result<Vec<Eigenvalue>> + Sync + Send,
{
    let batch = if schedule.is_parallel() { par::current_threads().clamp(1, 8) as u32 } else { 1 };
    let mut all = Vec::new();
    let mut m0 = 0u32;
    loop {
        let ms: Vec<u32> = (m0..(m0 + batch).min(m_cap + 1)).collect();
        if ms.is_empty() {
            return Ok((sorted(all), m_cap, false));
        }
        let results = par::try_map(schedule, &ms, |&m| solve(m))?;
        for (m, res) in ms.iter().zip(results) {
            if res.is_empty() {
                return Ok((sorted(all), *m, true));
            }
            all.extend(res);
        }
        m0 += batch;
    }
}

fn sorted(mut v: Vec<Eigenvalue>) -> Vec<Eigenvalue> {
    v.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.m.cmp(&b.m)));
    v
}

/// All eigenvalues of `-Δ + coupling · V` strictly below `-shift`.
pub fn negative_spectrum(h: &Hamiltonian2d, shift: f64, opts: &SpectrumOptions) -> Result<Spectrum> {
    if !(shift >= 0.0) {
        return Err(Error::domain(format!("shift must be non-negative, got {shift}")));
    }
    let grid = &h.potential.grid;
    let threshold = -shift;
    let discretization = Discretization {
        r_max: grid.r_max(),
        n: grid.cells(),
        n_z: None,
        levels: opts.levels.max(1),
        far_radius: opts.far_radius,
        m_max: 0,
    };
    let mut warnings = Vec::new();
    if h.potential.is_zero() || h.coupling == 0.0 {
        // -Δ ≥ 0 has nothing below -shift ≤ 0
        return Ok(Spectrum {
            operator: h.describe(),
            threshold,
            eigenvalues: Vec::new(),
            certified: true,
            marginal: 0,
            discretization,
            warnings,
        });
    }
    if h.potential.values.last().copied().unwrap_or(0.0) != 0.0 {
        warnings.push(format!(
            "potential does not vanish at r_max = {}; it is truncated there",
            grid.r_max()
        ));
    }
    let levels = build_levels(h, opts, opts.far_radius)?;
    let upper = if shift > 0.0 { threshold } else { -opts.marginal_tol };
    let (eigenvalues, m_last, certified) = scan_channels(opts.schedule, opts.m_cap, |m| {
        let per_level: Vec<Vec<f64>> = levels
            .iter()
            .map(|lv| channel_eigenvalues(lv, m, upper, opts.schedule))
            .collect();
        Ok(combine_levels(&per_level, m, opts.tol)
            .into_iter()
            .filter(|e| e.value < threshold)
            .collect())
    })?;
    if !certified {
        warnings.push(format!("channel cap m = {} reached without certificate", opts.m_cap));
    }
    let mut marginal = 0;
    if shift == 0.0 && opts.marginal_tol > 0.0 {
        let finest = levels.last().unwrap();
        for m in 0..=m_last {
            let t = ChannelOperator::assemble(&finest.nodes, &finest.w, m).to_tridiagonal();
            let k = t.count_below(0.0) - t.count_below(-opts.marginal_tol);
            marginal += k * if m == 0 { 1 } else { 2 };
        }
        if marginal > 0 {
            warnings.push(format!("{marginal} marginal eigenvalue(s) in (-{}, 0) excluded", opts.marginal_tol));
        }
    }
    for e in eigenvalues.iter().filter(|e| !e.converged) {
        let msg = format!(
            "eigenvalue {:e} (m = {}) not converged: drift {:?} over levels {:?}",
            e.value, e.m, e.drift, e.levels
        );
        if opts.strict {
            return Err(Error::Convergence(msg));
        }
        warnings.push(msg);
    }
    if opts.check_domain && !eigenvalues.is_empty() && opts.far_radius > grid.r_max() {
        let wide = build_levels(
            h,
            &SpectrumOptions {
                levels: 1,
                ..opts.clone()
            },
            2.0 * opts.far_radius,
        )?;
        for e in eigenvalues.iter().filter(|e| e.levels.len() == levels.len()) {
            let rank = eigenvalues
                .iter()
                .filter(|o| o.m == e.m && o.value < e.value)
                .count();
            let wider = channel_eigenvalues(&wide[0], e.m, upper, Schedule::Sequential);
            let shifted = wider.get(rank).copied().unwrap_or(0.0);
            let diff = (shifted - e.levels[0]).abs();
            if !opts.tol.accepts(diff, e.levels[0]) {
                let msg = format!(
                    "eigenvalue {:e} (m = {}) moves by {diff:e} when the far radius is doubled",
                    e.value, e.m
                );
                if opts.strict {
                    return Err(Error::DomainSize(msg));
                }
                warnings.push(msg);
            }
        }
    }
    Ok(Spectrum {
        operator: h.describe(),
        threshold,
        eigenvalues,
        certified,
        marginal,
        discretization: Discretization {
            m_max: m_last,
            ..discretization
        },
        warnings,
    })
}

/// Total multiplicity of eigenvalues of `-Δ + coupling · V` below `-shift`.
pub fn count_negative(h: &Hamiltonian2d, shift: f64, opts: &SpectrumOptions) -> Result<usize> {
    Ok(negative_spectrum(h, shift, opts)?.count())
}
