//! Logarithmic Lieb-Thirring sums and the potential norms on their right-hand
//! side, bound reports, the empirical fit of the unknown constants, and the
//! weak-coupling sweep of the layer ground state.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::effpot::SampledPotential;
use crate::layer3d::{layer_negative_spectrum, LayerOperatorSpec, LayerOptions};
use crate::par::{self, Schedule};
use crate::profiles::DeformationProfile;
use crate::schrodinger2d::Spectrum;
use crate::{Error, RadialGrid, Result};

/// `F_s(t) = 1/|ln(t s²)|` for `0 < t ≤ e⁻¹ s⁻²`, and 1 above.
#[allow(non_snake_case)]
pub fn F(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("s must be positive, got {s}")));
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("F_s needs t > 0, got {t}")));
    }
    if t * s * s <= 1.0 / E {
        Ok(1.0 / (t * s * s).ln().abs())
    } else {
        Ok(1.0)
    }
}

/// `Σ_j F_s(|E_j|)` over the negative eigenvalues, with multiplicity.
pub fn sum_f(spectrum: &Spectrum, s: f64) -> Result<f64> {
    let mut total = 0.0;
    for e in spectrum.eigenvalues.iter().filter(|e| e.value < 0.0) {
        total += e.multiplicity as f64 * F(s, -e.value)?;
    }
    Ok(total)
}

/// `‖V ln(r/s)‖_{L¹(B(s))}`. `|V|` is interpolated linearly between nodes
/// and integrated exactly against `r ln(s/r)`, so the logarithmic
/// singularity at the origin costs no accuracy.
pub fn log_weighted_norm(v: &SampledPotential, s: f64) -> Result<f64> {
    let grid = &v.grid;
    if !(s > 0.0) {
        return Err(Error::domain(format!("s must be positive, got {s}")));
    }
    if s > grid.r_max() * (1.0 + 1e-12) {
        return Err(Error::Coverage { s, r_max: grid.r_max() });
    }
    let s = s.min(grid.r_max());
    // antiderivatives of r ln(s/r) and r² ln(s/r)
    let f1 = |r: f64| if r == 0.0 { 0.0 } else { 0.5 * r * r * (s / r).ln() + 0.25 * r * r };
    let f2 = |r: f64| if r == 0.0 { 0.0 } else { r * r * r / 3.0 * (s / r).ln() + r * r * r / 9.0 };
    let h = grid.spacing();
    let mut total = 0.0;
    for i in 0..grid.cells() {
        let (r0, r1) = (grid.node(i), grid.node(i + 1));
        if r0 >= s {
            break;
        }
        let (v0, v1) = (v.values[i].abs(), v.values[i + 1].abs());
        // |V| = a + b r on the cell
        let b = (v1 - v0) / h;
        let a = v0 - b * r0;
        let hi = r1.min(s);
        total += a * (f1(hi) - f1(r0)) + b * (f2(hi) - f2(r0));
    }
    Ok(2.0 * PI * total)
}

/// `‖V‖_{L¹(ℝ²)}`.
pub fn plain_l1_norm(v: &SampledPotential) -> f64 {
    2.0 * PI * weighted_abs(v)
}

fn weighted_abs(v: &SampledPotential) -> f64 {
    v.values
        .iter()
        .enumerate()
        .map(|(i, x)| v.grid.weight(i) * x.abs())
        .sum()
}

/// `‖V‖_{L¹(ℝ₊, L^p(S¹))} = ∫ (∫ |V|^p dθ)^{1/p} r dr` for radial `V`,
/// which is `(2π)^{1/p} ∫ |V| r dr`.
pub fn mixed_norm(v: &SampledPotential, p: f64) -> Result<f64> {
    check_p(p)?;
    Ok((2.0 * PI).powf(1.0 / p) * weighted_abs(v))
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("mixed norm needs p > 1, got {p}")));
    }
    Ok(())
}

/// A potential sampled on a polar grid, `values[i * n_theta + k]` at
/// `(r_i, 2πk/n_theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarSamples {
    pub grid: RadialGrid,
    pub n_theta: usize,
    pub values: Vec<f64>,
}

/// Mixed norm of polar samples, trapezoid (periodic) in `θ`.
pub fn mixed_norm_polar(v: &PolarSamples, p: f64) -> Result<f64> {
    check_p(p)?;
    if v.values.len() != v.grid.len() * v.n_theta {
        return Err(Error::Dimension {
            expected: v.grid.len() * v.n_theta,
            found: v.values.len(),
        });
    }
    let dtheta = 2.0 * PI / v.n_theta as f64;
    Ok((0..v.grid.len())
        .map(|i| {
            let row = &v.values[i * v.n_theta..(i + 1) * v.n_theta];
            let mean: f64 = row.iter().map(|x| x.abs().powf(p)).sum::<f64>() * dtheta;
            v.grid.weight(i) * mean.powf(1.0 / p)
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhsTerm {
    pub name: String,
    pub value: f64,
}

impl RhsTerm {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: String,
    pub lhs: f64,
    pub rhs_terms: Vec<RhsTerm>,
    /// Constants the verdict was evaluated with, by name; empty for counts.
    pub constants: Vec<RhsTerm>,
    /// `lhs / Σ rhs_terms`; 0 when both sides vanish.
    pub ratio: f64,
    pub verdict: bool,
}

impl BoundReport {
    pub fn new(label: impl Into<String>, lhs: f64, rhs_terms: Vec<RhsTerm>, constants: Vec<RhsTerm>, verdict: bool) -> Self {
        let sum: f64 = rhs_terms.iter().map(|t| t.value).sum();
        let ratio = if lhs == 0.0 {
            0.0
        } else if sum > 0.0 {
            lhs / sum
        } else {
            f64::INFINITY
        };
        Self {
            label: label.into(),
            lhs,
            rhs_terms,
            constants,
            ratio,
            verdict,
        }
    }

    /// `(term₁, term₂)` for the constant fit.
    pub fn terms(&self) -> (f64, f64) {
        (
            self.rhs_terms.first().map(|t| t.value).unwrap_or(0.0),
            self.rhs_terms.get(1).map(|t| t.value).unwrap_or(0.0),
        )
    }
}

/// Second term on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecondTerm {
    /// `‖V‖_{L¹(ℝ₊, L^p(S¹))}`.
    Mixed { p: f64 },
    /// `‖V‖_{L¹(ℝ²)}`, for radial potentials.
    PlainL1,
}

/// `Σ F_s ≤ c₁ ‖V ln(r/s)‖_{L¹(B(s))} + c₂ · second term`.
pub fn check_lt_bound(
    label: impl Into<String>,
    spectrum: &Spectrum,
    v: &SampledPotential,
    s: f64,
    second: SecondTerm,
    constants: (f64, f64),
) -> Result<BoundReport> {
    let lhs = sum_f(spectrum, s)?;
    let t1 = log_weighted_norm(v, s)?;
    let (name, t2) = match second {
        SecondTerm::Mixed { p } => ("mixed", mixed_norm(v, p)?),
        SecondTerm::PlainL1 => ("l1", plain_l1_norm(v)),
    };
    let (c1, c2) = constants;
    let verdict = lhs <= c1 * t1 + c2 * t2;
    Ok(BoundReport::new(
        label,
        lhs,
        vec![RhsTerm::new("log-weighted", t1), RhsTerm::new(name, t2)],
        vec![RhsTerm::new("c1", c1), RhsTerm::new("c2", c2)],
        verdict,
    ))
}

/// Constants fitted by [`empirical_constants`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalConstants {
    pub c1: f64,
    pub c2: f64,
    /// Indices of the cases that hold with equality.
    pub binding: Vec<usize>,
    pub note: Option<String>,
}

/// Smallest `(c₁, c₂) ≥ 0` in the sense of `c₁ + c₂` such that
/// `lhs ≤ c₁ t₁ + c₂ t₂` for every case `(lhs, t₁, t₂)`. The two-variable
/// linear program is solved exactly by vertex enumeration; ties along the
/// optimal edge go to the point with `c₁` closest to `c₂`.
pub fn empirical_constants(cases: &[(f64, f64, f64)]) -> Result<EmpiricalConstants> {
    if cases.is_empty() {
        return Err(Error::domain("no cases to fit"));
    }
    let active: Vec<(f64, f64, f64)> = cases.iter().copied().filter(|c| c.0 > 0.0).collect();
    let scale = cases.iter().map(|c| c.0.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let feasible = |c1: f64, c2: f64| {
        c1 >= 0.0 && c2 >= 0.0 && active.iter().all(|&(l, a, b)| l <= c1 * a + c2 * b + 1e-12 * scale.max(l))
    };
    let binding = |c1: f64, c2: f64| {
        cases
            .iter()
            .enumerate()
            .filter(|(_, &(l, a, b))| l > 0.0 && (c1 * a + c2 * b - l).abs() <= 1e-9 * l)
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
    };
    if active.is_empty() {
        return Ok(EmpiricalConstants {
            c1: 0.0,
            c2: 0.0,
            binding: Vec::new(),
            note: Some("every left-hand side vanishes".into()),
        });
    }
    if cases.iter().all(|c| c.1 == 0.0) {
        if active.iter().any(|c| c.2 <= 0.0) {
            return Err(Error::domain("a case with positive lhs has both terms zero"));
        }
        let c2 = active.iter().map(|&(l, _, b)| l / b).fold(0.0, f64::max);
        return Ok(EmpiricalConstants {
            c1: 0.0,
            c2,
            binding: binding(0.0, c2),
            note: Some("all first terms vanish; single-constant fit".into()),
        });
    }
    // candidate vertices: pairwise intersections and axis hits
    let mut vertices = Vec::new();
    for (i, &(l1, a1, b1)) in active.iter().enumerate() {
        if a1 > 0.0 {
            vertices.push((l1 / a1, 0.0));
        }
        if b1 > 0.0 {
            vertices.push((0.0, l1 / b1));
        }
        for &(l2, a2, b2) in &active[i + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det.abs() > 1e-14 * (a1 * b2).abs().max((a2 * b1).abs()) {
                vertices.push(((l1 * b2 - l2 * b1) / det, (a1 * l2 - a2 * l1) / det));
            }
        }
    }
    let best = vertices
        .iter()
        .filter(|&&(x, y)| feasible(x, y))
        .map(|&(x, y)| x + y)
        .fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return Err(Error::domain("no non-negative constants satisfy every case"));
    }
    // optimal edge c₁ + c₂ = best: intersect the feasible c₁ intervals
    let (mut lo, mut hi) = (0.0f64, best);
    for &(l, a, b) in &active {
        // l ≤ c₁ a + (best − c₁) b  ⇔  c₁ (a − b) ≥ l − best·b
        let rhs = l - best * b;
        let k = a - b;
        if k > 0.0 {
            lo = lo.max(rhs / k);
        } else if k < 0.0 {
            hi = hi.min(rhs / k);
        }
    }
    let c1 = if lo > hi { lo.min(best) } else { (0.5 * best).clamp(lo, hi) };
    let c2 = (best - c1).max(0.0);
    Ok(EmpiricalConstants {
        c1,
        c2,
        binding: binding(c1, c2),
        note: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Ok,
    MultiMode,
    Unresolved,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub observables: BTreeMap<String, f64>,
    pub status: RowStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub parameter: String,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln ln(1/μ₁)` against `ln(1/α)`.
    pub fit: Option<SlopeFit>,
    pub mesh: String,
}

/// Least-squares line through `(x, y)`.
pub fn least_squares(points: &[(f64, f64)]) -> Option<SlopeFit> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some(SlopeFit {
        slope,
        intercept: my - slope * mx,
        points: n,
    })
}

/// Ground state `μ₁(α)` of `A_{αf}` along `alphas` (strictly increasing).
/// `spec` supplies the mesh; its profile is replaced by `profile` at each
/// coupling. Rows with more than one trapped mode are flagged, rows without
/// a resolved mode are excluded from the slope fit.
pub fn weak_coupling_sweep(
    profile: &DeformationProfile,
    alphas: &[f64],
    s: f64,
    spec: &LayerOperatorSpec,
    opts: &LayerOptions,
    schedule: Schedule,
) -> Result<SweepResult> {
    if alphas.windows(2).any(|w| !(w[1] > w[0])) || alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::domain("couplings must be positive and strictly increasing"));
    }
    let rows = par::try_map(schedule, alphas, |&alpha| -> Result<SweepRow> {
        let p = profile.clone().with_coupling(alpha).validate()?;
        let row_spec = LayerOperatorSpec {
            profile: p,
            ..spec.clone()
        };
        let mut observables = BTreeMap::new();
        let layer = match layer_negative_spectrum(&row_spec, opts) {
            Ok(l) => l,
            Err(e) if e.is_numerical() => {
                return Ok(SweepRow {
                    parameter: alpha,
                    observables,
                    status: RowStatus::Failed,
                    note: Some(e.to_string()),
                })
            }
            Err(e) => return Err(e),
        };
        let n_modes = layer.spectrum.count();
        observables.insert("n_modes".into(), n_modes as f64);
        let Some(ground) = layer.spectrum.eigenvalues.first() else {
            return Ok(SweepRow {
                parameter: alpha,
                observables,
                status: RowStatus::Unresolved,
                note: Some("no trapped mode above the marginal floor".into()),
            });
        };
        let mu1 = -ground.value;
        let log_inv = (1.0 / mu1).ln();
        observables.insert("mu1".into(), mu1);
        observables.insert("log_inv_mu1".into(), log_inv);
        observables.insert("alpha_log_inv_mu1".into(), alpha * log_inv);
        if log_inv > 0.0 {
            observables.insert("log_log_inv_mu1".into(), log_inv.ln());
        }
        observables.insert("log_inv_alpha".into(), (1.0 / alpha).ln());
        observables.insert("sum_f".into(), sum_f(&layer.spectrum, s)?);
        if let Some(d) = ground.drift {
            observables.insert("mu1_drift".into(), d);
        }
        let status = if n_modes > 1 { RowStatus::MultiMode } else { RowStatus::Ok };
        let note = (!ground.converged).then(|| "ground state not converged".to_string());
        Ok(SweepRow {
            parameter: alpha,
            observables,
            status,
            note,
        })
    })?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| matches!(r.status, RowStatus::Ok | RowStatus::MultiMode))
        .filter_map(|r| Some((r.observables.get("log_inv_alpha")?.to_owned(), *r.observables.get("log_log_inv_mu1")?)))
        .collect();
    Ok(SweepResult {
        parameter: "alpha".into(),
        rows,
        fit: least_squares(&points),
        mesh: format!("n_r = {}, n_z = {}, levels = {}", spec.n_r, spec.n_z, opts.levels),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn well(depth: f64, radius: f64, r_max: f64, n: usize) -> SampledPotential {
        let g = RadialGrid::aligned(r_max, n, radius).unwrap();
        SampledPotential::square_well(depth, radius, &g).unwrap()
    }

    #[test]
    fn f_values() {
        let s: f64 = 1.7;
        assert!((F(s, (-1.0f64).exp() / (s * s)).unwrap() - 1.0).abs() < 1e-15);
        assert!((F(1.0, (-3.0f64).exp()).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let seq: Vec<f64> = [-5.0, -3.0, -1.0, 0.0].iter().map(|&k: &f64| F(1.0, k.exp()).unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[1] >= w[0]));
        assert!(F(1.0, 0.0).is_err());
        assert!(F(1.0, -1.0).is_err());
    }

    #[test]
    fn log_norm_of_indicators() {
        let s = 1.0;
        let v = well(1.0, s, 2.0, 20_000);
        let got = log_weighted_norm(&v, s).unwrap();
        assert!((got - PI * s * s / 2.0).abs() / (PI / 2.0) < 1e-8, "{got}");
        let half = well(1.0, 0.5 * s, 2.0, 20_000);
        let expect = PI * s * s * (0.125 + 2f64.ln() / 4.0);
        let got = log_weighted_norm(&half, s).unwrap();
        assert!((got - expect).abs() / expect < 1e-7, "{got} vs {expect}");
        assert_eq!(log_weighted_norm(&SampledPotential::zero(&v.grid), s).unwrap(), 0.0);
        assert!(matches!(log_weighted_norm(&v, 3.0), Err(Error::Coverage { .. })));
    }

    #[test]
    fn log_norm_off_node_radius() {
        // ∫₀^s r ln(s/r) dr = s²/4 for V ≡ 1, with s between nodes
        let g = RadialGrid::new(3.0, 300).unwrap();
        let v = SampledPotential::tabulated(&g, vec![1.0; g.len()]).unwrap();
        let s = 1.234_567;
        let got = log_weighted_norm(&v, s).unwrap();
        assert!((got - 2.0 * PI * s * s / 4.0).abs() < 1e-12);
    }

    #[test]
    fn l1_and_mixed_norms() {
        let v = well(1.0, 1.0, 2.0, 400);
        assert!((plain_l1_norm(&v) - PI).abs() < 1e-12);
        assert!((mixed_norm(&v, 2.0).unwrap() - (2.0 * PI).sqrt() / 2.0).abs() < 1e-12);
        assert!(mixed_norm(&v, 1.0).is_err());
        let ratio = mixed_norm(&v, 3.0).unwrap() / plain_l1_norm(&v);
        assert!((ratio - (2.0 * PI).powf(1.0 / 3.0 - 1.0)).abs() < 1e-14);
        // dilation: V(r/2) has four times the norm
        let wide = well(1.0, 2.0, 4.0, 400);
        assert!((plain_l1_norm(&wide) - 4.0 * plain_l1_norm(&v)).abs() < 1e-10);
    }

    #[test]
    fn polar_mixed_norm_reduces_for_radial_samples() {
        let v = well(1.0, 1.0, 2.0, 400);
        let n_theta = 32;
        let values = v.values.iter().flat_map(|&x| std::iter::repeat_n(x, n_theta)).collect();
        let polar = PolarSamples {
            grid: v.grid.clone(),
            n_theta,
            values,
        };
        let a = mixed_norm_polar(&polar, 2.0).unwrap();
        let b = mixed_norm(&v, 2.0).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn constants_examples() {
        let c = empirical_constants(&[(1.0, 1.0, 1.0)]).unwrap();
        assert!((c.c1 - 0.5).abs() < 1e-12 && (c.c2 - 0.5).abs() < 1e-12);
        let c = empirical_constants(&[(1.0, 1.0, 0.0), (1.0, 0.0, 1.0)]).unwrap();
        assert!((c.c1 - 1.0).abs() < 1e-12 && (c.c2 - 1.0).abs() < 1e-12);
        assert_eq!(c.binding, vec![0, 1]);
        let c = empirical_constants(&[(2.0, 0.0, 1.0), (1.0, 0.0, 4.0)]).unwrap();
        assert_eq!(c.c1, 0.0);
        assert!((c.c2 - 2.0).abs() < 1e-12);
        assert!(c.note.is_some());
    }

    #[test]
    fn constants_are_feasible_and_minimal() {
        let cases = [(3.0, 1.0, 2.0), (1.0, 4.0, 0.5), (2.0, 2.0, 2.0), (0.5, 0.1, 3.0)];
        let c = empirical_constants(&cases).unwrap();
        for &(l, a, b) in &cases {
            assert!(l <= c.c1 * a + c.c2 * b + 1e-12);
        }
        // no feasible point on a fine grid has a smaller sum
        let best = c.c1 + c.c2;
        for i in 0..=400 {
            for j in 0..=400 {
                let (x, y) = (i as f64 * 0.01, j as f64 * 0.01);
                if cases.iter().all(|&(l, a, b)| l <= x * a + y * b) {
                    assert!(x + y >= best - 1e-9);
                }
            }
        }
    }

    #[test]
    fn empty_spectrum_report() {
        let v = well(1.0, 1.0, 4.0, 200);
        let zero = SampledPotential::zero(&v.grid);
        let spec = crate::schrodinger2d::negative_spectrum(
            &crate::schrodinger2d::Hamiltonian2d::attractive(zero.clone()),
            0.0,
            &Default::default(),
        )
        .unwrap();
        let r = check_lt_bound("zero", &spec, &zero, 1.0, SecondTerm::Mixed { p: 2.0 }, (1.0, 1.0)).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.ratio, 0.0);
        assert!(r.verdict);
    }

    #[test]
    fn sum_f_with_multiplicity() {
        use crate::schrodinger2d::{Discretization, Eigenvalue};
        let e = Eigenvalue {
            value: -(-1.0f64).exp(),
            m: 1,
            multiplicity: 2,
            levels: vec![],
            drift: None,
            order: None,
            converged: true,
        };
        let spec = Spectrum {
            operator: String::new(),
            threshold: 0.0,
            eigenvalues: vec![e],
            certified: true,
            marginal: 0,
            discretization: Discretization {
                r_max: 1.0,
                n: 1,
                n_z: None,
                levels: 1,
                far_radius: 1.0,
                m_max: 1,
            },
            warnings: vec![],
        };
        assert!((sum_f(&spec, 1.0).unwrap() - 2.0).abs() < 1e-12);
    }
}
