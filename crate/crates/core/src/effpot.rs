//! The effective potential
//! `V_f = π²/(d+f)² − π²/d² − b₁|∇f|² − b₂|Δf|² − b₃|∇f|⁴`
//! and the constants it is built from.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::j0_zero;
use crate::profiles::{eval_profile, DeformationProfile};
use crate::{Error, RadialGrid, Result};

/// Lowest Dirichlet eigenvalue of the disc of radius `r`, `(j₀,₁/r)²`.
pub fn disc_ground_eigenvalue(r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("disc radius must be positive, got {r}")));
    }
    let j = j0_zero(1)?;
    Ok((j / r) * (j / r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveConstants {
    pub lambda_r: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

pub fn effective_constants(d: f64, r: f64) -> Result<EffectiveConstants> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!("layer width must be positive, got {d}")));
    }
    let lambda_r = disc_ground_eigenvalue(r)?;
    let pi2 = PI * PI;
    let a3 = (d * d / (3.0 * pi2)).max(1.0 / lambda_r);
    Ok(EffectiveConstants {
        lambda_r,
        a3,
        b1: pi2 / (2.0 * d * d),
        b2: a3 * pi2 / (d * d),
        b3: 4.0 * a3 * (pi2 / d.powi(4) + pi2 * pi2 / (5.0 * d * d)),
    })
}

/// Where a sampled potential came from; kept so it can be rebuilt on a
/// refined grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialSource {
    Zero,
    /// `depth · χ_{B(radius)}`.
    SquareWell { depth: f64, radius: f64 },
    EffectiveLayer {
        profile: DeformationProfile,
        constants: EffectiveConstants,
    },
    Tabulated,
}

/// A radial potential sampled at the nodes of a [`RadialGrid`]. A jump that
/// falls on a node is sampled with the mean of its one-sided limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledPotential {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
    pub source: PotentialSource,
}

impl SampledPotential {
    pub fn zero(grid: &RadialGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
            source: PotentialSource::Zero,
        }
    }

    pub fn square_well(depth: f64, radius: f64, grid: &RadialGrid) -> Result<Self> {
        if !(radius > 0.0) || !depth.is_finite() {
            return Err(Error::domain(format!("square well needs radius > 0, got {radius}")));
        }
        let values = grid
            .nodes()
            .iter()
            .map(|&r| indicator(r, radius, grid.spacing()) * depth)
            .collect();
        Ok(Self {
            grid: grid.clone(),
            values,
            source: PotentialSource::SquareWell { depth, radius },
        })
    }

    pub fn tabulated(grid: &RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("potential values must be finite"));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
            source: PotentialSource::Tabulated,
        })
    }

    /// `k · V`; the source is dropped to `Tabulated` unless `k = 1`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| k * v).collect(),
            source: if k == 1.0 {
                self.source.clone()
            } else {
                PotentialSource::Tabulated
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Largest node radius at which the potential is nonzero.
    pub fn support_radius(&self) -> f64 {
        self.values
            .iter()
            .rposition(|&v| v != 0.0)
            .map(|i| self.grid.node(i))
            .unwrap_or(0.0)
    }

    /// The same potential on another grid: rebuilt from its source when
    /// analytic, linearly interpolated when tabulated.
    pub fn resample(&self, grid: &RadialGrid) -> Result<Self> {
        match &self.source {
            PotentialSource::Zero => Ok(Self::zero(grid)),
            PotentialSource::SquareWell { depth, radius } => Self::square_well(*depth, *radius, grid),
            PotentialSource::EffectiveLayer { profile, .. } => effective_potential(profile, grid),
            PotentialSource::Tabulated => {
                let h = self.grid.spacing();
                let last = self.values.len() - 1;
                let values = grid
                    .nodes()
                    .iter()
                    .map(|&r| {
                        let x = r / h;
                        let i = (x.floor() as usize).min(last);
                        if i >= last {
                            return if r <= self.grid.r_max() * (1.0 + 1e-12) {
                                self.values[last]
                            } else {
                                0.0
                            };
                        }
                        let t = x - i as f64;
                        (1.0 - t) * self.values[i] + t * self.values[i + 1]
                    })
                    .collect();
                Self::tabulated(grid, values)
            }
        }
    }
}

/// `χ_{[0, radius)}` with the value 1/2 at a node that sits on the edge.
fn indicator(r: f64, radius: f64, h: f64) -> f64 {
    let tol = 1e-9 * h;
    if (r - radius).abs() <= tol {
        0.5
    } else if r < radius {
        1.0
    } else {
        0.0
    }
}

/// `V_f(r)` from the one-sided values of `f` inside the support.
fn v_formula(d: f64, c: &EffectiveConstants, f: f64, df: f64, lap: f64) -> f64 {
    let pi2 = PI * PI;
    let g2 = df * df;
    pi2 / ((d + f) * (d + f)) - pi2 / (d * d) - c.b1 * g2 - c.b2 * lap * lap - c.b3 * g2 * g2
}

/// `V_f` at radius `r`; identically 0 for `r ≥ R`.
pub fn effective_potential_at(profile: &DeformationProfile, constants: &EffectiveConstants, r: f64) -> Result<f64> {
    let v = eval_profile(profile, r)?;
    if r >= profile.support_radius {
        return Ok(0.0);
    }
    Ok(v_formula(profile.width, constants, v.f, v.df, v.laplacian))
}

/// `V_f` sampled at the grid nodes. `b₂|Δf|²` jumps at `r = R` when `f''`
/// does; a node on `R` then takes half the inner limit.
pub fn effective_potential(profile: &DeformationProfile, grid: &RadialGrid) -> Result<SampledPotential> {
    if !profile.is_validated() {
        return Err(Error::Unvalidated);
    }
    let big_r = profile.support_radius;
    if grid.r_max() < big_r {
        return Err(Error::Coverage {
            s: big_r,
            r_max: grid.r_max(),
        });
    }
    let constants = effective_constants(profile.width, big_r)?;
    let tol = 1e-9 * grid.spacing();
    let mut values = Vec::with_capacity(grid.len());
    for r in grid.nodes() {
        let v = if (r - big_r).abs() <= tol {
            let inner = profile.inner_limit(big_r)?;
            0.5 * v_formula(profile.width, &constants, inner.f, inner.df, inner.laplacian)
        } else {
            effective_potential_at(profile, &constants, r)?
        };
        values.push(v);
    }
    Ok(SampledPotential {
        grid: grid.clone(),
        values,
        source: PotentialSource::EffectiveLayer {
            profile: profile.clone(),
            constants,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignPattern {
    Zero,
    NonPositive,
    NonNegative,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityReport {
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub sign: SignPattern,
    /// `∫ V r dr` by the grid weights (no `2π`).
    pub integral: f64,
}

pub fn potential_negativity_report(v: &SampledPotential) -> NegativityReport {
    let mut min = f64::INFINITY;
    let mut argmin = 0.0;
    let mut max = f64::NEG_INFINITY;
    let mut integral = 0.0;
    for (i, &x) in v.values.iter().enumerate() {
        if x < min {
            min = x;
            argmin = v.grid.node(i);
        }
        max = max.max(x);
        integral += v.grid.weight(i) * x;
    }
    let sign = match (min < 0.0, max > 0.0) {
        (false, false) => SignPattern::Zero,
        (true, false) => SignPattern::NonPositive,
        (false, true) => SignPattern::NonNegative,
        (true, true) => SignPattern::Mixed,
    };
    NegativityReport {
        min,
        argmin,
        max,
        sign,
        integral,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{richardson, SymTridiagonal};

    /// Radial Dirichlet disc eigenvalue by a cell-centred FD scheme on (0, 1).
    fn fd_disc(n: usize) -> f64 {
        let h = 1.0 / n as f64;
        let r = |i: usize| (i as f64 + 0.5) * h;
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n - 1];
        for i in 0..n {
            let m = r(i) * h;
            let left = if i == 0 { 0.0 } else { i as f64 * h / h };
            let right = if i == n - 1 { 2.0 * 1.0 / h } else { (i + 1) as f64 * h / h };
            diag[i] = (left + right) / m;
            if i + 1 < n {
                off[i] = -((i + 1) as f64 * h / h) / (m * r(i + 1) * h).sqrt();
            }
        }
        let t = SymTridiagonal::new(diag, off);
        let (mut lo, mut hi) = (0.0, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if t.count_below(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn disc_eigenvalue_matches_fd_oracle() {
        let l = disc_ground_eigenvalue(1.0).unwrap();
        assert!((l - 5.783_185_962_946_784).abs() < 1e-11);
        let ex = richardson(fd_disc(400), fd_disc(800));
        assert!((ex - l).abs() / l < 1e-5, "{ex} vs {l}");
    }

    #[test]
    fn disc_eigenvalue_scaling_and_monotonicity() {
        let l1 = disc_ground_eigenvalue(1.0).unwrap();
        let l2 = disc_ground_eigenvalue(2.0).unwrap();
        assert!((l2 - l1 / 4.0).abs() < 1e-14);
        let seq: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&r| disc_ground_eigenvalue(r).unwrap())
            .collect();
        assert!(seq.windows(2).all(|w| w[1] < w[0]));
        assert!(disc_ground_eigenvalue(0.0).is_err());
        assert!(disc_ground_eigenvalue(-1.0).is_err());
    }

    #[test]
    fn constants_small_and_large_radius() {
        let c = effective_constants(1.0, 0.1).unwrap();
        assert!((c.a3 - 0.033_773_4).abs() < 1e-6);
        assert_eq!(c.a3, 1.0 / (3.0 * PI * PI));
        let c = effective_constants(1.0, 10.0).unwrap();
        assert!((c.a3 - 17.2916).abs() < 1e-4);
        assert!((c.b1 - PI * PI / 2.0).abs() < 1e-14);
        assert!((c.b2 - c.a3 * PI * PI).abs() < 1e-12);
        assert!(c.b3 > 0.0);
    }

    #[test]
    fn a3_crossover_radius() {
        let j = j0_zero(1).unwrap();
        let r_star = j / (PI * 3f64.sqrt());
        assert!((r_star - 0.44195).abs() < 1e-5);
        let below = effective_constants(1.0, r_star * 0.999).unwrap();
        let above = effective_constants(1.0, r_star * 1.001).unwrap();
        assert_eq!(below.a3, 1.0 / (3.0 * PI * PI));
        assert!(above.a3 > below.a3);
        let at = effective_constants(1.0, r_star).unwrap();
        assert!((at.a3 - 1.0 / (3.0 * PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn cosine_bump_value_at_origin() {
        let p = DeformationProfile::cosine_bump(0.3, 1.0, 1.0).validate().unwrap();
        let c = effective_constants(1.0, 1.0).unwrap();
        assert!((c.a3 - 0.172_916).abs() < 1e-6);
        assert!((c.b2 - 1.706_61).abs() < 1e-5);
        // oracle: the same formula written out independently
        let pi2 = PI * PI;
        let lap = -0.3 * pi2;
        let expect = pi2 / 1.69 - pi2 - c.b2 * lap * lap;
        let got = effective_potential_at(&p, &c, 0.0).unwrap();
        assert!((got - expect).abs() < 1e-12);
        assert!((got + 18.99).abs() < 0.01, "{got}");
    }

    #[test]
    fn flat_profile_gives_zero_potential() {
        let p = DeformationProfile::cosine_bump(0.3, 1.0, 1.0)
            .with_coupling(0.0)
            .validate()
            .unwrap();
        let g = RadialGrid::new(4.0, 400).unwrap();
        let v = effective_potential(&p, &g).unwrap();
        assert!(v.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn zero_outside_support_and_nonpositive() {
        let p = DeformationProfile::cosine_bump(0.3, 1.0, 1.0).validate().unwrap();
        let g = RadialGrid::new(4.0, 400).unwrap();
        let v = effective_potential(&p, &g).unwrap();
        let c = effective_constants(1.0, 1.0).unwrap();
        for (i, r) in g.nodes().into_iter().enumerate() {
            if r > 1.0 + 1e-12 {
                assert_eq!(v.values[i], 0.0);
            }
            assert!(v.values[i] <= 0.0);
            if r < 1.0 {
                let f = eval_profile(&p, r).unwrap().f;
                let cap = PI * PI / (1.0 + f).powi(2) - PI * PI;
                assert!(v.values[i] <= cap + 1e-12);
            }
        }
        for r in [1.0, 1.5, 3.0] {
            assert_eq!(effective_potential_at(&p, &c, r).unwrap(), 0.0);
        }
    }

    #[test]
    fn mesh_refinement_agrees_at_shared_nodes() {
        let p = DeformationProfile::cosine_bump(0.3, 1.0, 1.0).validate().unwrap();
        let g = RadialGrid::new(4.0, 200).unwrap();
        let v1 = effective_potential(&p, &g).unwrap();
        let v2 = v1.resample(&g.refined(2)).unwrap();
        for i in 0..g.len() {
            assert!((v1.values[i] - v2.values[2 * i]).abs() < 1e-12);
        }
    }

    #[test]
    fn negativity_report_examples() {
        let g = RadialGrid::new(2.0, 200).unwrap();
        let z = potential_negativity_report(&SampledPotential::zero(&g));
        assert_eq!((z.min, z.max, z.integral), (0.0, 0.0, 0.0));
        assert_eq!(z.sign, SignPattern::Zero);
        let w = SampledPotential::square_well(-1.0, 1.0, &g).unwrap();
        let rep = potential_negativity_report(&w);
        assert!((rep.integral + 0.5).abs() < 1e-14);
        assert_eq!(rep.sign, SignPattern::NonPositive);

        let p = DeformationProfile::cosine_bump(0.3, 1.0, 1.0).validate().unwrap();
        let v = effective_potential(&p, &RadialGrid::new(4.0, 400).unwrap()).unwrap();
        let rep = potential_negativity_report(&v);
        assert!(rep.min <= -18.9);
        assert_eq!(rep.argmin, 0.0);
    }
}
