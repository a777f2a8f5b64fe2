//! Experiment configuration: TOML with strict key checking.
//!
//! The canonical form is the `toml` serialisation of the parsed struct; its
//! SHA-256 identifies a run.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum2d,
    Layer,
    Bound,
    MajorantBound,
    Sweep,
    Hardy,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum2d => "spectrum2d",
            Command::Layer => "layer",
            Command::Bound => "bound",
            Command::MajorantBound => "majorant-bound",
            Command::Sweep => "sweep",
            Command::Hardy => "hardy",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKindName {
    CosineBump,
    GaussianTruncated,
    CompactPolynomial,
    TabulatedRadial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileBlock {
    pub kind: ProfileKindName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(rename = "R")]
    pub r: f64,
    pub d: f64,
    #[serde(default = "one")]
    pub alpha: f64,
    /// Two-column `(r, f)` table for `tabulated-radial`, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Quintic blend to zero on `[0.9R, R]` for `gaussian-truncated`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smoothed: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    /// `depth · χ_{B(radius)}` for every listed depth, operator `-Δ - V`.
    SquareWell,
    /// `V_f` of the `[profile]`, operator `-Δ + 3V_f`.
    Effective,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialBlock {
    pub kind: PotentialKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub depths: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsBlock {
    /// Extent of the uniform radial mesh; defaults to twice the support radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    /// Cells of the two-dimensional radial mesh on `[0, r_max]`.
    #[serde(default = "default_n")]
    pub n: usize,
    /// Cells on `[0, R]` of the layer mesh.
    #[serde(default = "default_n_r")]
    pub n_r: usize,
    /// Interior transverse nodes of the layer mesh.
    #[serde(default = "default_n_z")]
    pub n_z: usize,
    /// Cap on the angular index.
    #[serde(default = "default_m_max")]
    pub m_max: u32,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default = "default_tol_abs")]
    pub tol_abs: f64,
    /// Defaults to 1e-4 for two-dimensional spectra and 1e-2 for the layer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_rel: Option<f64>,
    #[serde(default)]
    pub strict: bool,
}

impl Default for NumericsBlock {
    fn default() -> Self {
        Self {
            r_max: None,
            n: default_n(),
            n_r: default_n_r(),
            n_z: default_n_z(),
            m_max: default_m_max(),
            levels: default_levels(),
            tol_abs: default_tol_abs(),
            tol_rel: None,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormName {
    Mixed,
    L1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundBlock {
    #[serde(default = "default_s")]
    pub s: Vec<f64>,
    #[serde(default = "default_norm")]
    pub norm: NormName,
    #[serde(default = "two")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    /// TOML file with keys `c1` and `c2`, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<PathBuf>,
    /// Energies of the counting comparison for `layer`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<f64>,
    /// Majorant candidates for `majorant-bound`.
    #[serde(default = "default_candidates")]
    pub candidates: usize,
}

impl Default for BoundBlock {
    fn default() -> Self {
        Self {
            s: default_s(),
            norm: default_norm(),
            p: 2.0,
            c1: None,
            c2: None,
            constants: None,
            t: Vec::new(),
            candidates: default_candidates(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub alpha: Vec<f64>,
    #[serde(default = "one")]
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardyBlock {
    pub beta: Vec<f64>,
    #[serde(default = "default_hardy_n")]
    pub n: usize,
    #[serde(rename = "R", default = "one")]
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    Dat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            formats: default_formats(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialBlock>,
    #[serde(default)]
    pub numerics: NumericsBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hardy: Option<HardyBlock>,
    #[serde(default)]
    pub output: OutputBlock,
}

fn one() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn default_n() -> usize {
    2000
}
fn default_n_r() -> usize {
    24
}
fn default_n_z() -> usize {
    16
}
fn default_m_max() -> u32 {
    256
}
fn default_levels() -> usize {
    3
}
fn default_tol_abs() -> f64 {
    1e-6
}
fn default_s() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0, 4.0]
}
fn default_norm() -> NormName {
    NormName::Mixed
}
fn default_candidates() -> usize {
    8
}
fn default_hardy_n() -> usize {
    256
}
fn default_dir() -> PathBuf {
    PathBuf::from("out")
}
fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json, Format::Dat]
}

/// A parsed config together with its source text, for line-anchored errors.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    pub source: String,
    /// Directory relative paths in the config are resolved against.
    pub base: PathBuf,
}

impl LoadedConfig {
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    /// Config error anchored at `key` in `[section]` (top level for `None`),
    /// falling back to the section header.
    pub fn error_at(&self, section: Option<&str>, key: &str, message: impl Into<String>) -> Error {
        let line = key_line(&self.source, section, key).or_else(|| section.and_then(|s| section_line(&self.source, s)));
        let field = match section {
            Some(s) => format!("{s}.{key}"),
            None => key.to_string(),
        };
        Error::config(line, format!("{field}: {}", message.into()))
    }
}

/// 1-based line of `key = …` inside `[section]`.
pub fn key_line(source: &str, section: Option<&str>, key: &str) -> Option<usize> {
    let mut current: Option<String> = None;
    for (i, raw) in source.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('[') {
            current = rest.split(']').next().map(|s| s.trim().to_string());
            continue;
        }
        if current.as_deref() != section {
            continue;
        }
        if let Some(rest) = line.strip_prefix(key) {
            if rest.trim_start().starts_with('=') {
                return Some(i + 1);
            }
        }
    }
    None
}

fn section_line(source: &str, section: &str) -> Option<usize> {
    source
        .lines()
        .position(|l| l.trim().strip_prefix('[').and_then(|r| r.split(']').next()).map(str::trim) == Some(section))
        .map(|i| i + 1)
}

/// Parses and validates a config.
pub fn parse_config(source: &str, base: &Path) -> Result<LoadedConfig> {
    let config: ExperimentConfig = toml::from_str(source).map_err(|e| {
        let line = e.span().map(|s| source[..s.start.min(source.len())].matches('\n').count() + 1);
        Error::config(line, e.message().trim().to_string())
    })?;
    let loaded = LoadedConfig {
        config,
        source: source.to_string(),
        base: base.to_path_buf(),
    };
    validate(&loaded)?;
    Ok(loaded)
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| Error::config(None, format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_config(&source, &base)
}

/// Canonical text of a config: parsing it yields the same config.
pub fn canonical(config: &ExperimentConfig) -> String {
    toml::to_string(config).expect("config serialises to TOML")
}

/// Hex SHA-256 of the canonical text.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let digest = Sha256::digest(canonical(config).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

fn validate(l: &LoadedConfig) -> Result<()> {
    let c = &l.config;
    let need = |section: &str| l.error_at(None, "command", format!("command `{}` needs a [{section}] block", c.command));

    if let Some(p) = &c.profile {
        let sec = Some("profile");
        if !positive(p.r) {
            return Err(l.error_at(sec, "R", format!("support radius must be positive, got {}", p.r)));
        }
        if !positive(p.d) {
            return Err(l.error_at(sec, "d", format!("layer width must be positive, got {}", p.d)));
        }
        if !(p.alpha >= 0.0 && p.alpha.is_finite()) {
            return Err(l.error_at(sec, "alpha", format!("coupling must be non-negative, got {}", p.alpha)));
        }
        match (p.kind, p.h, &p.path) {
            (ProfileKindName::TabulatedRadial, _, None) => {
                return Err(l.error_at(sec, "kind", "tabulated-radial needs `path`"));
            }
            (ProfileKindName::TabulatedRadial, _, Some(_)) => {}
            (_, None, _) => return Err(l.error_at(sec, "h", "height is required")),
            (_, Some(h), _) if !(h >= 0.0 && h.is_finite()) => {
                return Err(l.error_at(sec, "h", format!("height must be non-negative, got {h}")));
            }
            _ => {}
        }
        if p.smoothed.is_some() && p.kind != ProfileKindName::GaussianTruncated {
            return Err(l.error_at(sec, "smoothed", "only applies to gaussian-truncated"));
        }
    }
    if let Some(p) = &c.potential {
        let sec = Some("potential");
        match p.kind {
            PotentialKind::SquareWell => {
                if p.depths.is_empty() {
                    return Err(l.error_at(sec, "depths", "square-well needs at least one depth"));
                }
                if let Some(d) = p.depths.iter().find(|&&d| !positive(d)) {
                    return Err(l.error_at(sec, "depths", format!("depths must be positive, got {d}")));
                }
                match p.radius {
                    Some(r) if positive(r) => {}
                    Some(r) => return Err(l.error_at(sec, "radius", format!("radius must be positive, got {r}"))),
                    None => return Err(l.error_at(sec, "radius", "square-well needs `radius`")),
                }
            }
            PotentialKind::Effective => {
                if c.profile.is_none() {
                    return Err(l.error_at(sec, "kind", "effective potential needs a [profile] block"));
                }
            }
        }
    }

    let n = &c.numerics;
    let sec = Some("numerics");
    if let Some(r) = n.r_max {
        if !positive(r) {
            return Err(l.error_at(sec, "r_max", format!("must be positive, got {r}")));
        }
    }
    if n.n < 16 {
        return Err(l.error_at(sec, "n", format!("need at least 16 cells, got {}", n.n)));
    }
    if n.n_r < 16 {
        return Err(l.error_at(sec, "n_r", format!("need at least 16 cells, got {}", n.n_r)));
    }
    if n.n_z < 16 {
        return Err(l.error_at(sec, "n_z", format!("need at least 16 nodes, got {}", n.n_z)));
    }
    if n.levels == 0 || n.levels > 5 {
        return Err(l.error_at(sec, "levels", format!("must lie in 1..=5, got {}", n.levels)));
    }
    if !(n.tol_abs >= 0.0) {
        return Err(l.error_at(sec, "tol_abs", format!("must be non-negative, got {}", n.tol_abs)));
    }
    if let Some(t) = n.tol_rel {
        if !(t >= 0.0) {
            return Err(l.error_at(sec, "tol_rel", format!("must be non-negative, got {t}")));
        }
    }

    if let Some(b) = &c.bound {
        let sec = Some("bound");
        if b.s.is_empty() || b.s.iter().any(|&s| !positive(s)) {
            return Err(l.error_at(sec, "s", "radii must be a non-empty list of positive numbers"));
        }
        if !(b.p > 1.0 && b.p.is_finite()) {
            return Err(l.error_at(sec, "p", format!("exponent must exceed 1, got {}", b.p)));
        }
        for (key, v) in [("c1", b.c1), ("c2", b.c2)] {
            if let Some(v) = v {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(l.error_at(sec, key, format!("must be non-negative, got {v}")));
                }
            }
        }
        if b.c1.is_some() != b.c2.is_some() {
            return Err(l.error_at(sec, "c1", "give both c1 and c2 or neither"));
        }
        if b.constants.is_some() && b.c1.is_some() {
            return Err(l.error_at(sec, "constants", "conflicts with inline c1/c2"));
        }
        if b.t.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
            return Err(l.error_at(sec, "t", "energies must be non-negative"));
        }
        if b.candidates == 0 {
            return Err(l.error_at(sec, "candidates", "must be positive"));
        }
    }
    if let Some(s) = &c.sweep {
        let sec = Some("sweep");
        if s.alpha.is_empty() || s.alpha.iter().any(|&a| !positive(a)) {
            return Err(l.error_at(sec, "alpha", "couplings must be a non-empty list of positive numbers"));
        }
        if s.alpha.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(l.error_at(sec, "alpha", "couplings must be strictly increasing"));
        }
        if !positive(s.s) {
            return Err(l.error_at(sec, "s", format!("must be positive, got {}", s.s)));
        }
    }
    if let Some(h) = &c.hardy {
        let sec = Some("hardy");
        if h.beta.is_empty() || h.beta.iter().any(|&b| !positive(b)) {
            return Err(l.error_at(sec, "beta", "values must be a non-empty list of positive numbers"));
        }
        if h.beta.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(l.error_at(sec, "beta", "values must be strictly increasing"));
        }
        if h.n < 64 || !h.n.is_multiple_of(2) {
            return Err(l.error_at(sec, "n", format!("need an even number of cells ≥ 64, got {}", h.n)));
        }
        if !positive(h.r) {
            return Err(l.error_at(sec, "R", format!("must be positive, got {}", h.r)));
        }
    }
    if c.output.formats.is_empty() {
        return Err(l.error_at(Some("output"), "formats", "at least one format is required"));
    }

    match c.command {
        Command::Spectrum2d | Command::Bound if c.potential.is_none() => Err(need("potential")),
        Command::Layer | Command::MajorantBound | Command::Sweep if c.profile.is_none() => Err(need("profile")),
        Command::Sweep if c.sweep.is_none() => Err(need("sweep")),
        Command::Hardy if c.hardy.is_none() => Err(need("hardy")),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAYER: &str = "command = \"layer\"\n\n[profile]\nkind = \"cosine-bump\"\nh = 0.3\nR = 1.0\nd = 1.0\n";

    #[test]
    fn parses_minimal_layer_config() {
        let l = parse_config(LAYER, Path::new(".")).unwrap();
        assert_eq!(l.config.command, Command::Layer);
        assert_eq!(l.config.profile.as_ref().unwrap().alpha, 1.0);
        assert_eq!(l.config.numerics, NumericsBlock::default());
    }

    #[test]
    fn canonical_round_trip() {
        let l = parse_config(LAYER, Path::new(".")).unwrap();
        let text = canonical(&l.config);
        let again = parse_config(&text, Path::new(".")).unwrap();
        assert_eq!(again.config, l.config);
        assert_eq!(config_hash(&again.config), config_hash(&l.config));
        assert_eq!(config_hash(&l.config).len(), 64);
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = parse_config(LAYER, Path::new(".")).unwrap();
        let spaced = LAYER.replace(" = ", "=").replace("0.3", "0.30") + "# comment\n";
        let b = parse_config(&spaced, Path::new(".")).unwrap();
        assert_eq!(config_hash(&a.config), config_hash(&b.config));
        let c = parse_config(&LAYER.replace("0.3", "0.4"), Path::new(".")).unwrap();
        assert_ne!(config_hash(&a.config), config_hash(&c.config));
    }

    #[test]
    fn negative_radius_names_field_and_line() {
        let err = parse_config(&LAYER.replace("R = 1.0", "R = -1.0"), Path::new(".")).unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, Some(6));
                assert!(message.contains("profile.R"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_rejected_with_line() {
        let err = parse_config(&format!("{LAYER}colour = 3\n"), Path::new(".")).unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, Some(8));
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unsorted_alpha_is_rejected() {
        let src = format!("{}\n[sweep]\nalpha = [0.2, 0.1]\n", LAYER.replace("layer", "sweep"));
        let err = parse_config(&src, Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Config { line: Some(10), .. }), "{err:?}");
    }

    #[test]
    fn missing_block_is_reported() {
        let err = parse_config("command = \"hardy\"\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Config { line: Some(1), .. }), "{err:?}");
    }
}
