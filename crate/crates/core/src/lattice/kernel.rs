use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use super::geometry::displacement;
use super::LatticeModel;

/// Equal- or unequal-time bracket `K(l,x; l′,x′)` between two field
/// components, stored as a square matrix over `site * 4 + spinor`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketKernel {
    pub label: String,
    pub dim: usize,
    pub sites: usize,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Serialize)]
struct Layout<'a> {
    index: &'a str,
    site_order: &'a str,
    dim: usize,
    sites_per_axis: usize,
    rows: usize,
    cols: usize,
}

impl BracketKernel {
    pub fn new(label: impl Into<String>, model: &LatticeModel, matrix: DMatrix<Complex64>) -> Self {
        BracketKernel {
            label: label.into(),
            dim: model.dim,
            sites: model.sites,
            matrix,
        }
    }

    pub fn entry(&self, l: usize, x: usize, lp: usize, xp: usize) -> Complex64 {
        self.matrix[(x * 4 + l, xp * 4 + lp)]
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn scale(&self, c: Complex64) -> Self {
        BracketKernel {
            matrix: &self.matrix * c,
            ..self.clone()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &DMatrix<Complex64>) -> f64 {
        (&self.matrix - other)
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest deviation of `K(l,x;l′,x′)` from `K(l,x−x′;l′,0)`.
    pub fn translation_residual(&self, model: &LatticeModel) -> f64 {
        let s = model.site_count();
        let mut worst: f64 = 0.0;
        for x in 0..s {
            for xp in 0..s {
                let rel = displacement(model, x, xp);
                for l in 0..4 {
                    for lp in 0..4 {
                        worst = worst
                            .max((self.entry(l, x, lp, xp) - self.entry(l, rel, lp, 0)).norm());
                    }
                }
            }
        }
        worst
    }

    /// JSON form: a layout header plus row-major real and imaginary parts.
    pub fn to_json(&self) -> Value {
        let (r, c) = self.matrix.shape();
        let layout = Layout {
            index: "site * 4 + spinor",
            site_order: "axis 0 varies fastest",
            dim: self.dim,
            sites_per_axis: self.sites,
            rows: r,
            cols: c,
        };
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..r)
                .map(|i| (0..c).map(|j| f(&self.matrix[(i, j)])).collect())
                .collect()
        };
        json!({
            "label": self.label,
            "layout": layout,
            "re": part(|z| z.re),
            "im": part(|z| z.im),
        })
    }
}
