use nalgebra::DMatrix;

use super::geometry::CavityGeometry1D;
use crate::error::{Error, Result};
use crate::numerics::gauss_legendre_composite;

/// Antisymmetric intermode coupling m_αβ = L ∫ (∂F_α/∂L) F_β dx.
///
/// Only the strictly upper triangle is stored, so antisymmetry and the zero
/// diagonal hold exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    n: usize,
    upper: Vec<f64>,
    /// Largest |m_αβ + m_βα| seen before antisymmetrization.
    pub symmetric_residual: f64,
}

impl CouplingMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, upper: vec![0.0; n * n.saturating_sub(1) / 2], symmetric_residual: 0.0 }
    }

    /// Antisymmetric part of a dense matrix.
    pub fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::invalid("coupling", "matrix must be square"));
        }
        let n = m.nrows();
        let mut out = Self::zeros(n);
        for a in 0..n {
            for b in a + 1..n {
                let k = out.index(a, b);
                out.upper[k] = 0.5 * (m[(a, b)] - m[(b, a)]);
                out.symmetric_residual = out.symmetric_residual.max((m[(a, b)] + m[(b, a)]).abs());
            }
            out.symmetric_residual = out.symmetric_residual.max(2.0 * m[(a, a)].abs());
        }
        Ok(out)
    }

    /// Two-mode coupling with m₀₁ = `m`.
    pub fn two_mode(m: f64) -> Self {
        Self { n: 2, upper: vec![m], symmetric_residual: 0.0 }
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        a * self.n - a * (a + 1) / 2 + (b - a - 1)
    }

    /// Entry (α, β) with zero-based indices.
    pub fn get(&self, a: usize, b: usize) -> f64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.upper[self.index(a, b)],
            std::cmp::Ordering::Greater => -self.upper[self.index(b, a)],
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |a, b| self.get(a, b))
    }
}

fn mode(n: usize, x: f64, l: f64) -> f64 {
    (2.0 / l).sqrt() * (n as f64 * std::f64::consts::PI * x / l).sin()
}

fn coupling_with_panels(geometry: &CavityGeometry1D, panels: usize) -> DMatrix<f64> {
    let n = geometry.n_modes;
    let l = geometry.length;
    let h = l * 1e-3 / n as f64;
    let rule = gauss_legendre_composite(0.0, l, panels);
    let nodes = rule.len();
    // rows: quadrature nodes; columns: modes
    let mut d = DMatrix::zeros(nodes, n);
    let mut f = DMatrix::zeros(nodes, n);
    for (k, &(x, w)) in rule.iter().enumerate() {
        for a in 0..n {
            let m = a + 1;
            let deriv = (-mode(m, x, l + 2.0 * h) + 8.0 * mode(m, x, l + h) - 8.0 * mode(m, x, l - h)
                + mode(m, x, l - 2.0 * h))
                / (12.0 * h);
            d[(k, a)] = w * deriv;
            f[(k, a)] = mode(m, x, l);
        }
    }
    (d.transpose() * f) * l
}

/// Coupling matrix of the 1D Dirichlet cavity by composite Gauss–Legendre
/// quadrature with a five-point difference for ∂F/∂L.
pub fn coupling_matrix_1d(geometry: &CavityGeometry1D) -> Result<CouplingMatrix> {
    let n = geometry.n_modes;
    if n < 2 {
        return Err(Error::invalid("n_modes", "coupling needs at least two modes"));
    }
    let coarse = coupling_with_panels(geometry, 4 * n);
    let fine = coupling_with_panels(geometry, 8 * n);
    let error = (&fine - &coarse).amax();
    if !(error <= 1e-9 * fine.amax().max(1.0)) {
        return Err(Error::QuadratureFailure { a: 0.0, b: geometry.length, error });
    }
    CouplingMatrix::from_dense(&fine)
}
