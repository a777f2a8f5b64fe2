use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform node-centred radial grid `r_i = i·h`, `i = 0..=n`, on `[0, r_max]`.
///
/// `weights` are trapezoid weights for `∫ g(r) r dr`: the node at the origin
/// carries zero weight, interior nodes `r_i h`, the end node `r_max h / 2`.
/// They integrate `∫_0^{r_max} r dr = r_max²/2` exactly and are exact for
/// piecewise-linear `g·r`, which includes indicators sampled with the mean
/// of one-sided limits at a node-aligned jump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n: usize) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::domain(format!("r_max must be positive, got {r_max}")));
        }
        if n < 2 {
            return Err(Error::domain(format!("grid needs at least 2 cells, got {n}")));
        }
        Ok(Self { r_max, n })
    }

    /// Grid on `[0, ≥ r_min]` with spacing close to `r_min / n_approx` chosen so
    /// that `radius` is a grid node.
    pub fn aligned(r_min: f64, n_approx: usize, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || radius > r_min {
            return Err(Error::domain(format!(
                "alignment radius {radius} must lie in (0, {r_min}]"
            )));
        }
        let h_target = r_min / n_approx.max(2) as f64;
        let k = (radius / h_target).round().max(1.0);
        let h = radius / k;
        let n = (r_min / h - 1e-9).ceil() as usize;
        Self::new(n as f64 * h, n)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Number of cells; there are `n + 1` nodes.
    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.r_max
        } else {
            i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }

    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 {
            0.0
        } else if i == self.n {
            0.5 * self.r_max * h
        } else {
            self.node(i) * h
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.weight(i)).collect()
    }

    /// Index of the node equal to `r` (to rounding), if any.
    pub fn node_index(&self, r: f64) -> Option<usize> {
        let x = r / self.spacing();
        let i = x.round();
        ((x - i).abs() < 1e-9 && i >= 0.0 && i as usize <= self.n).then_some(i as usize)
    }

    /// Same extent, `factor` times as many cells.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            r_max: self.r_max,
            n: self.n * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_half_square() {
        for &(r_max, n) in &[(1.0, 10), (8.0, 2000), (3.7, 333)] {
            let g = RadialGrid::new(r_max, n).unwrap();
            let s: f64 = g.weights().iter().sum();
            assert!((s - 0.5 * r_max * r_max).abs() < 1e-12 * r_max * r_max);
        }
    }

    #[test]
    fn linear_moment_is_second_order() {
        // ∫_0^2 r·r dr = 8/3; trapezoid error is O(h²)
        let e = |n| {
            let g = RadialGrid::new(2.0, n).unwrap();
            let s: f64 = g.nodes().iter().zip(g.weights()).map(|(r, w)| r * w).sum();
            (s - 8.0 / 3.0).abs()
        };
        let ratio = e(100) / e(200);
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn aligned_grid_hits_radius() {
        let g = RadialGrid::aligned(8.0, 2000, 0.7).unwrap();
        assert!(g.node_index(0.7).is_some());
        assert!(g.r_max() >= 8.0 - 1e-12);
        assert!(RadialGrid::new(-1.0, 10).is_err());
        assert!(RadialGrid::aligned(1.0, 10, 2.0).is_err());
    }
}
