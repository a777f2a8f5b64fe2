//! Deformation profiles `f ≥ 0` of the upper layer boundary `z = d + α f(r)`.
//!
//! Every family is supported in the closed disc of radius `R` and is linear in
//! the coupling `α`. The cosine bump `(h/2)(1 + cos(πr/R))` is the canonical
//! profile; its second derivative is bounded but jumps at `r = R`.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const SUP_NORM: &str = "‖f‖_∞ < d";
const NONNEGATIVE: &str = "f ≥ 0";
const SUPPORT: &str = "supp f ⊂ B(R)";
const SMOOTH: &str = "f ∈ C²(ℝ²)";

/// Radial table `(r_k, f_k)` with derivatives from second-order finite
/// differences and cubic Hermite interpolation between nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTable {
    r: Vec<f64>,
    f: Vec<f64>,
    slope: Vec<f64>,
}

impl RadialTable {
    pub fn new(r: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if r.len() != f.len() {
            return Err(Error::Dimension {
                expected: r.len(),
                found: f.len(),
            });
        }
        if r.len() < 3 {
            return Err(Error::domain("radial table needs at least 3 rows"));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) || r[0] < 0.0 {
            return Err(Error::domain("table radii must be non-negative and strictly increasing"));
        }
        let slope = fd_slopes(&r, &f);
        Ok(Self { r, f, slope })
    }

    /// Reads a two-column whitespace separated text file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut r = Vec::new();
        let mut f = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::config(Some(lineno + 1), format!("{}: cannot parse '{s}'", path.display()))
                })
            };
            if cols.len() != 2 {
                return Err(Error::config(
                    Some(lineno + 1),
                    format!("{}: expected two columns", path.display()),
                ));
            }
            r.push(parse(cols[0])?);
            f.push(parse(cols[1])?);
        }
        Self::new(r, f)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.r[0], *self.r.last().unwrap())
    }

    pub fn max_value(&self) -> f64 {
        self.f.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(f, f', f'')` at `r` inside the table range.
    fn eval(&self, r: f64) -> Result<(f64, f64, f64)> {
        let (lo, hi) = self.range();
        if r < lo || r > hi {
            return Err(Error::OutOfRange { r, lo, hi });
        }
        let k = match self.r.partition_point(|&x| x <= r) {
            0 => 0,
            p => (p - 1).min(self.r.len() - 2),
        };
        let h = self.r[k + 1] - self.r[k];
        let t = (r - self.r[k]) / h;
        let (f0, f1) = (self.f[k], self.f[k + 1]);
        let (m0, m1) = (self.slope[k] * h, self.slope[k + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * f0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * f1
            + (t3 - t2) * m1;
        let dv = (6.0 * t2 - 6.0 * t) * f0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * f1
            + (3.0 * t2 - 2.0 * t) * m1;
        let d2v = (12.0 * t - 6.0) * f0 + (6.0 * t - 4.0) * m0 + (-12.0 * t + 6.0) * f1 + (6.0 * t - 2.0) * m1;
        Ok((v, dv / h, d2v / (h * h)))
    }
}

/// Second-order finite-difference slopes on a non-uniform table.
fn fd_slopes(r: &[f64], f: &[f64]) -> Vec<f64> {
    let n = r.len();
    let three_point = |i0: usize, at: usize| {
        let (x0, x1, x2) = (r[i0], r[i0 + 1], r[i0 + 2]);
        let x = r[at];
        // derivative of the quadratic through the three points
        f[i0] * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2))
            + f[i0 + 1] * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + f[i0 + 2] * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1))
    };
    (0..n)
        .map(|i| {
            if i == 0 {
                three_point(0, 0)
            } else if i == n - 1 {
                three_point(n - 3, n - 1)
            } else {
                three_point(i - 1, i)
            }
        })
        .collect()
}

/// Non-radial profile tabulated on a polar grid (radii × equispaced angles).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarTable {
    radii: Vec<f64>,
    n_theta: usize,
    values: Vec<f64>,
}

impl PolarTable {
    /// `values[i * n_theta + k]` is the profile at `(radii[i], 2πk/n_theta)`.
    pub fn new(radii: Vec<f64>, n_theta: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != radii.len() * n_theta {
            return Err(Error::Dimension {
                expected: radii.len() * n_theta,
                found: values.len(),
            });
        }
        if radii.len() < 2 || n_theta < 2 || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("polar table needs increasing radii and ≥ 2 angles"));
        }
        Ok(Self {
            radii,
            n_theta,
            values,
        })
    }

    fn radial_cell(&self, r: f64) -> Option<(usize, f64)> {
        let (lo, hi) = (self.radii[0], *self.radii.last().unwrap());
        if r < lo || r > hi {
            return None;
        }
        let p = self.radii.partition_point(|&x| x <= r);
        let i = p.saturating_sub(1).min(self.radii.len() - 2);
        Some((i, (r - self.radii[i]) / (self.radii[i + 1] - self.radii[i])))
    }

    /// Bilinear interpolation in `(r, θ)`, periodic in `θ`; zero outside the table.
    pub fn value(&self, r: f64, theta: f64) -> f64 {
        let Some((i, s)) = self.radial_cell(r) else {
            return 0.0;
        };
        let u = theta.rem_euclid(2.0 * PI) / (2.0 * PI) * self.n_theta as f64;
        let k = (u.floor() as usize) % self.n_theta;
        let w = u - u.floor();
        let k1 = (k + 1) % self.n_theta;
        let at = |ii: usize, kk: usize| self.values[ii * self.n_theta + kk];
        let row = |ii: usize| (1.0 - w) * at(ii, k) + w * at(ii, k1);
        (1.0 - s) * row(i) + s * row(i + 1)
    }

    /// `max_θ f(r, θ)`; exact for the bilinear interpolant.
    pub fn angular_max(&self, r: f64) -> f64 {
        let Some((i, s)) = self.radial_cell(r) else {
            return 0.0;
        };
        (0..self.n_theta)
            .map(|k| (1.0 - s) * self.values[i * self.n_theta + k] + s * self.values[(i + 1) * self.n_theta + k])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    CosineBump,
    /// Gaussian of standard deviation `R/3`; `smoothed` blends it to zero on
    /// `[0.9R, R]` with a quintic step, otherwise it is cut off sharply at `R`.
    GaussianTruncated { smoothed: bool },
    /// `h (1 - (r/R)²)³`.
    CompactPolynomial,
    TabulatedRadial(RadialTable),
    TabulatedPolar(PolarTable),
}

impl ProfileKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::CosineBump => "cosine-bump",
            ProfileKind::GaussianTruncated { .. } => "gaussian-truncated",
            ProfileKind::CompactPolynomial => "compact-polynomial",
            ProfileKind::TabulatedRadial(_) => "tabulated-radial",
            ProfileKind::TabulatedPolar(_) => "tabulated-polar",
        }
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, ProfileKind::TabulatedPolar(_))
    }
}

/// `f` and its radial derivatives; `laplacian = f'' + f'/r` (`2f''(0)` at the origin).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ProfileValues {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
    pub laplacian: f64,
}

impl ProfileValues {
    fn scaled(self, a: f64) -> Self {
        Self {
            f: a * self.f,
            df: a * self.df,
            d2f: a * self.d2f,
            laplacian: a * self.laplacian,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformationProfile {
    pub kind: ProfileKind,
    /// Height `h` of the unscaled profile.
    pub height: f64,
    pub support_radius: f64,
    /// Unperturbed layer width `d`.
    pub width: f64,
    pub coupling: f64,
    #[serde(skip)]
    validated: bool,
}

impl DeformationProfile {
    pub fn new(kind: ProfileKind, height: f64, support_radius: f64, width: f64) -> Self {
        let height = match &kind {
            ProfileKind::TabulatedRadial(t) => t.max_value(),
            ProfileKind::TabulatedPolar(t) => t.max_value(),
            _ => height,
        };
        Self {
            kind,
            height,
            support_radius,
            width,
            coupling: 1.0,
            validated: false,
        }
    }

    pub fn cosine_bump(height: f64, support_radius: f64, width: f64) -> Self {
        Self::new(ProfileKind::CosineBump, height, support_radius, width)
    }

    /// The straight layer, `f ≡ 0`.
    pub fn flat(width: f64) -> Self {
        Self::cosine_bump(0.0, 1.0, width)
    }

    pub fn with_coupling(mut self, alpha: f64) -> Self {
        self.coupling = alpha;
        self.validated = false;
        self
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Runs [`validate_profile`] and marks the profile usable.
    pub fn validate(mut self) -> Result<Self> {
        validate_profile(&self)?;
        self.validated = true;
        Ok(self)
    }

    pub fn is_flat(&self) -> bool {
        self.coupling == 0.0 || self.height == 0.0
    }

    /// Upper bound of `α f`, exact for the analytic families.
    pub fn sup(&self) -> f64 {
        let unscaled = match &self.kind {
            ProfileKind::TabulatedRadial(t) => {
                // Hermite interpolation may overshoot the nodes slightly
                let r_hi = t.range().1.min(self.support_radius);
                let r_lo = t.range().0;
                (0..=2000)
                    .map(|i| r_lo + (r_hi - r_lo) * i as f64 / 2000.0)
                    .filter_map(|r| t.eval(r).ok())
                    .map(|v| v.0)
                    .fold(t.max_value(), f64::max)
            }
            ProfileKind::TabulatedPolar(t) => t.max_value(),
            _ => self.height,
        };
        self.coupling * unscaled
    }

    /// Unscaled value at `(r, θ)`, defined for every kind.
    pub fn shape_at(&self, r: f64, theta: f64) -> f64 {
        if r >= self.support_radius {
            return 0.0;
        }
        match &self.kind {
            ProfileKind::TabulatedPolar(t) => t.value(r, theta),
            _ => self.closed_form(r).map(|v| v.f).unwrap_or(0.0),
        }
    }

    /// Unscaled envelope `max_θ f(r, θ)`.
    pub fn shape_envelope(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::TabulatedPolar(t) if r < self.support_radius => t.angular_max(r),
            _ => self.shape_at(r, 0.0),
        }
    }

    /// Unscaled radial values for `0 ≤ r ≤ R`; at `r = R` these are the
    /// one-sided limits from inside the support.
    pub(crate) fn closed_form(&self, r: f64) -> Result<ProfileValues> {
        let big_r = self.support_radius;
        let h = self.height;
        let (f, df, d2f) = match &self.kind {
            ProfileKind::CosineBump => {
                let k = PI / big_r;
                let (s, c) = (k * r).sin_cos();
                (0.5 * h * (1.0 + c), -0.5 * h * k * s, -0.5 * h * k * k * c)
            }
            ProfileKind::GaussianTruncated { smoothed } => {
                let sigma2 = (big_r / 3.0).powi(2);
                let g = h * (-r * r / (2.0 * sigma2)).exp();
                let dg = -r / sigma2 * g;
                let d2g = (r * r / (sigma2 * sigma2) - 1.0 / sigma2) * g;
                let (b, db, d2b) = if *smoothed { blend(r, big_r) } else { (1.0, 0.0, 0.0) };
                (g * b, dg * b + g * db, d2g * b + 2.0 * dg * db + g * d2b)
            }
            ProfileKind::CompactPolynomial => {
                let rho = r / big_r;
                let q = 1.0 - rho * rho;
                (
                    h * q * q * q,
                    -6.0 * h * rho * q * q / big_r,
                    -6.0 * h / (big_r * big_r) * q * (1.0 - 5.0 * rho * rho),
                )
            }
            ProfileKind::TabulatedRadial(t) => t.eval(r)?,
            ProfileKind::TabulatedPolar(_) => return Err(Error::NotRadial),
        };
        let laplacian = if r == 0.0 { 2.0 * d2f } else { d2f + df / r };
        Ok(ProfileValues { f, df, d2f, laplacian })
    }

    /// Scaled values with the one-sided limit at `r = R`.
    pub(crate) fn inner_limit(&self, r: f64) -> Result<ProfileValues> {
        Ok(self.closed_form(r.min(self.support_radius))?.scaled(self.coupling))
    }
}

/// Quintic step from 1 on `[0, 0.9R]` to 0 at `R`, with `(B, B', B'')`.
fn blend(r: f64, big_r: f64) -> (f64, f64, f64) {
    let start = 0.9 * big_r;
    if r <= start {
        return (1.0, 0.0, 0.0);
    }
    let w = big_r - start;
    let t = ((r - start) / w).min(1.0);
    let s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    let ds = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    let d2s = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    (1.0 - s, -ds / w, -d2s / (w * w))
}

/// `(f, f', f'', Δf)` at radius `r` for a validated radial profile.
/// All four vanish identically for `r ≥ R`.
pub fn eval_profile(profile: &DeformationProfile, r: f64) -> Result<ProfileValues> {
    if !profile.validated {
        return Err(Error::Unvalidated);
    }
    if !(r >= 0.0) {
        return Err(Error::domain(format!("radius must be non-negative, got {r}")));
    }
    if !profile.kind.is_radial() {
        return Err(Error::NotRadial);
    }
    if r >= profile.support_radius {
        return Ok(ProfileValues::default());
    }
    Ok(profile.closed_form(r)?.scaled(profile.coupling))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub sup: f64,
    pub headroom: f64,
    pub samples: usize,
    /// `None` when the smoothness check does not apply (tabulated kinds).
    pub smooth: Option<bool>,
}

/// Checks the hypotheses on `f`: non-negativity, `α sup f < d`, support in
/// `B(R)` and, for the analytic families, smoothness across `r = R`.
pub fn validate_profile(profile: &DeformationProfile) -> Result<ValidationReport> {
    let big_r = profile.support_radius;
    let d = profile.width;
    for (name, v, strict) in [
        ("R", big_r, true),
        ("d", d, true),
        ("h", profile.height, false),
        ("alpha", profile.coupling, false),
    ] {
        let ok = if strict { v > 0.0 } else { v >= 0.0 };
        if !ok || !v.is_finite() {
            return Err(Error::domain(format!("profile parameter {name} = {v} out of range")));
        }
    }
    let alpha = profile.coupling;
    let n_r = 2000;
    let n_theta = if profile.kind.is_radial() { 1 } else { 64 };
    // tables are only sampled inside their own range
    let r_end = match &profile.kind {
        ProfileKind::TabulatedRadial(t) => big_r.min(t.range().1),
        _ => big_r,
    };
    let mut sampled_max: f64 = 0.0;
    for i in 0..=n_r {
        let r = r_end * i as f64 / n_r as f64;
        for k in 0..n_theta {
            let theta = 2.0 * PI * k as f64 / n_theta as f64;
            let v = match &profile.kind {
                ProfileKind::TabulatedPolar(t) => t.value(r, theta),
                _ if r >= big_r => 0.0,
                _ => profile.closed_form(r)?.f,
            };
            // Hermite interpolation of a table may dip below zero by O(Δr³)
            // next to a vanishing node; the sign hypothesis applies to the data
            let tabulated = matches!(profile.kind, ProfileKind::TabulatedRadial(_));
            if v < -1e-14 * profile.height.max(1e-300) && !tabulated {
                return Err(Error::Hypothesis {
                    hypothesis: NONNEGATIVE,
                    detail: format!("f({r}, {theta}) = {v}"),
                });
            }
            sampled_max = sampled_max.max(v);
        }
    }
    let sup = profile.sup().max(alpha * sampled_max);
    if sup >= d {
        return Err(Error::Hypothesis {
            hypothesis: SUP_NORM,
            detail: format!("sup α f = {sup} but d = {d}"),
        });
    }
    match &profile.kind {
        ProfileKind::TabulatedRadial(t) if t.f.iter().any(|&v| v < 0.0) => {
            return Err(Error::Hypothesis {
                hypothesis: NONNEGATIVE,
                detail: "negative table entry".into(),
            });
        }
        _ => {}
    }
    match &profile.kind {
        ProfileKind::TabulatedRadial(t) => check_table_support(t.range(), big_r, |r| t.eval(r).map(|v| v.0))?,
        ProfileKind::TabulatedPolar(t) => {
            let (lo, hi) = (t.radii[0], *t.radii.last().unwrap());
            check_table_support((lo, hi), big_r, |r| Ok(t.angular_max(r)))?;
            if t.min_value() < 0.0 {
                return Err(Error::Hypothesis {
                    hypothesis: NONNEGATIVE,
                    detail: format!("table minimum {}", t.min_value()),
                });
            }
        }
        _ => {}
    }
    let smooth = match profile.kind {
        ProfileKind::TabulatedRadial(_) | ProfileKind::TabulatedPolar(_) => None,
        _ => Some(boundary_is_smooth(profile)),
    };
    if smooth == Some(false) && !profile.is_flat() {
        return Err(Error::Hypothesis {
            hypothesis: SMOOTH,
            detail: format!("second difference across r = {big_r} diverges under refinement"),
        });
    }
    Ok(ValidationReport {
        sup,
        headroom: d - sup,
        samples: (n_r + 1) * n_theta,
        smooth,
    })
}

fn check_table_support(
    (lo, hi): (f64, f64),
    big_r: f64,
    value: impl Fn(f64) -> Result<f64>,
) -> Result<()> {
    if hi > big_r {
        // anything tabulated beyond R must vanish
        for i in 0..=200 {
            let r = big_r + (hi - big_r) * i as f64 / 200.0;
            if r >= lo && value(r)?.abs() > 0.0 {
                return Err(Error::Hypothesis {
                    hypothesis: SUPPORT,
                    detail: format!("table is nonzero at r = {r} > R = {big_r}"),
                });
            }
        }
    }
    Ok(())
}

/// Second-difference jump detector across `r = R`: for a function with
/// continuous value and slope and bounded `f''` the centred second difference
/// stays bounded as the step shrinks; a jump in `f` or `f'` makes it blow up.
fn boundary_is_smooth(profile: &DeformationProfile) -> bool {
    let big_r = profile.support_radius;
    let f = |r: f64| profile.shape_at(r, 0.0);
    let second = |delta: f64| (f(big_r + delta) - 2.0 * f(big_r) + f(big_r - delta)).abs() / (delta * delta);
    let delta = 1e-3 * big_r;
    let (c1, c2) = (second(delta), second(0.25 * delta));
    let scale = profile.height / (big_r * big_r);
    c2 <= 2.0 * c1.max(1e-6 * scale)
}

/// Radially symmetric cosine-bump majorants `f̃ ≥ f` with support radius in
/// `[R, 1.5R]`, each with the smallest height that dominates the angular
/// envelope of `f` on a fine radial grid. A radial input is returned first
/// as its own majorant.
pub fn radial_majorant_family(profile: &DeformationProfile, n_candidates: usize) -> Result<Vec<DeformationProfile>> {
    const SLACK: f64 = 0.5;
    let report = validate_profile(profile)?;
    let d = profile.width;
    let alpha = profile.coupling;
    if report.sup + 1e-3 * d >= d {
        return Err(Error::Headroom(format!("sup α f = {} leaves no room below d = {d}", report.sup)));
    }
    let big_r = profile.support_radius;
    let mut out = Vec::new();
    if profile.kind.is_radial() {
        out.push(profile.clone().validate()?);
    }
    let n_fine = 4000;
    let envelope: Vec<(f64, f64)> = (0..n_fine)
        .map(|i| {
            let r = big_r * i as f64 / n_fine as f64;
            (r, profile.shape_envelope(r))
        })
        .collect();
    for k in 0..n_candidates {
        let r_cand = if n_candidates > 1 {
            big_r * (1.0 + SLACK * k as f64 / (n_candidates - 1) as f64)
        } else {
            big_r
        };
        if k == 0 && profile.kind == ProfileKind::CosineBump {
            continue; // identical to the input itself
        }
        let bump = |r: f64| 0.5 * (1.0 + (PI * r / r_cand).cos());
        let mut height = envelope
            .iter()
            .filter(|(r, _)| *r < r_cand)
            .map(|&(r, m)| m / bump(r))
            .fold(0.0, f64::max)
            * (1.0 + 1e-12);
        let mut cand = DeformationProfile::cosine_bump(height, r_cand, d).with_coupling(alpha);
        let mut tries = 0;
        while !dominates(&cand, profile) && tries < 60 {
            height *= 1.0 + 1e-6 * 2f64.powi(tries);
            cand = DeformationProfile::cosine_bump(height, r_cand, d).with_coupling(alpha);
            tries += 1;
        }
        if alpha * height < d && dominates(&cand, profile) {
            if let Ok(c) = cand.validate() {
                out.push(c);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Headroom("no candidate majorant stays below d".into()));
    }
    Ok(out)
}

/// Pointwise `upper ≥ lower` on a 10³-point radial grid and, for non-radial
/// `lower`, on a 256 × 64 polar grid.
pub fn dominates(upper: &DeformationProfile, lower: &DeformationProfile) -> bool {
    let r_end = upper.support_radius.max(lower.support_radius);
    let su = upper.coupling;
    let sl = lower.coupling;
    let radial_ok = (0..=1000).all(|i| {
        let r = r_end * i as f64 / 1000.0;
        su * upper.shape_envelope(r) >= sl * lower.shape_envelope(r)
    });
    if !radial_ok {
        return false;
    }
    if lower.kind.is_radial() {
        return true;
    }
    (0..256).all(|i| {
        let r = r_end * i as f64 / 255.0;
        let up = su * upper.shape_envelope(r);
        (0..64).all(|k| up >= sl * lower.shape_at(r, 2.0 * PI * k as f64 / 64.0))
    })
}

/// Loads a tabulated radial profile; `height` is taken from the table.
pub fn tabulated_from_file(path: &Path, support_radius: f64, width: f64) -> Result<DeformationProfile> {
    let table = RadialTable::from_file(path)?;
    Ok(DeformationProfile::new(ProfileKind::TabulatedRadial(table), 0.0, support_radius, width))
}
