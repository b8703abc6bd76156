//! Polynomial interpolation of sampled net-average-revenue data.
//!
//! Values are evaluated through the barycentric form of the Lagrange
//! interpolant, which is stable at every degree we accept. Monomial
//! coefficients are kept alongside so marginal revenue can be formed
//! symbolically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fewest samples accepted (degree 2).
pub const MIN_POINTS: usize = 3;
/// Most samples accepted (degree 12).
pub const MAX_POINTS: usize = 13;

/// Dense polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = coeffs;
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    /// Coefficients `c[i]` of `f^i`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Nominal degree (length of the coefficient vector minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Lagrange interpolant through a set of samples with distinct abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    nodes: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
    monomial: Polynomial,
}

impl Interpolant {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The same polynomial in monomial form.
    pub fn polynomial(&self) -> &Polynomial {
        &self.monomial
    }

    /// Barycentric evaluation (second form).
    pub fn eval(&self, x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&node, &value), &w) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let d = x - node;
            if d == 0.0 {
                return value;
            }
            let term = w / d;
            num += term * value;
            den += term;
        }
        num / den
    }
}

/// Builds the degree-`k` interpolant through `k + 1` samples `(f, nar)`.
///
/// Samples may arrive in any order; they are stored sorted by abscissa.
pub fn lagrange_nar(points: &[(f64, f64)]) -> Result<Interpolant> {
    if points.len() < MIN_POINTS || points.len() > MAX_POINTS {
        return Err(Error::PointCount {
            got: points.len(),
            min: MIN_POINTS,
            max: MAX_POINTS,
        });
    }
    for &(f, v) in points {
        if !f.is_finite() || !v.is_finite() {
            return Err(Error::MalformedCurve(format!(
                "non-finite sample ({f}, {v})"
            )));
        }
    }

    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateAbscissa(w[0].0));
    }

    let nodes: Vec<f64> = sorted.iter().map(|p| p.0).collect();
    let values: Vec<f64> = sorted.iter().map(|p| p.1).collect();

    let weights = nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .map(|(_, &xm)| xj - xm)
                .product();
            1.0 / prod
        })
        .collect();

    let monomial = newton_to_monomial(&nodes, &divided_differences(&nodes, &values));

    Ok(Interpolant {
        nodes,
        values,
        weights,
        monomial,
    })
}

fn divided_differences(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut table = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    table
}

// Expands d0 + (x - x0)(d1 + (x - x1)(d2 + ...)) from the innermost term out.
fn newton_to_monomial(nodes: &[f64], diffs: &[f64]) -> Polynomial {
    let n = diffs.len();
    let mut coeffs = vec![diffs[n - 1]];
    for j in (0..n - 1).rev() {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= nodes[j] * c;
        }
        next[0] += diffs[j];
        coeffs = next;
    }
    Polynomial::new(coeffs)
}
