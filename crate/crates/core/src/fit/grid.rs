use crate::cdf::Point;
use crate::model::{eval_fermi_dirac, FermiParams};

/// One axis of the search grid: `steps` evenly spaced nodes over `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    /// Single-node axis.
    pub fn point(v: f64) -> Self {
        Self::new(v, v, 2)
    }

    fn node(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * k as f64 / (self.steps - 1) as f64
    }

    fn nodes(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.steps).map(|k| self.node(k)).collect();
        v.dedup();
        v
    }
}

/// Exhaustive minimum-SSE search over a `(g, mu, T)` grid. Meant for small
/// grids in tests.
///
/// # Panics
///
/// If an axis has fewer than two steps, or the `g` or `T` axis reaches
/// down to zero.
pub fn grid_oracle_fit(points: &[Point], g: GridAxis, mu: GridAxis, t: GridAxis) -> FermiParams {
    for axis in [&g, &mu, &t] {
        assert!(axis.steps >= 2, "grid axes need at least two steps");
    }
    assert!(g.lo.min(g.hi) > 0.0 && t.lo.min(t.hi) > 0.0, "g and T must stay positive");

    let (gs, mus, ts) = (g.nodes(), mu.nodes(), t.nodes());
    let mut best: Option<(f64, FermiParams)> = None;
    for &gv in &gs {
        for &mv in &mus {
            for &tv in &ts {
                let p = FermiParams::new(gv, mv, tv).expect("grid node is admissible");
                let sse: f64 = points
                    .iter()
                    .map(|pt| (pt.p - eval_fermi_dirac(&p, pt.x)).powi(2))
                    .sum();
                if best.as_ref().is_none_or(|(b, _)| sse < *b) {
                    best = Some((sse, p));
                }
            }
        }
    }
    best.expect("grid is non-empty").1
}
