//! Gauss–Legendre rules on `[-1, 1]` and composite panels.

use std::f64::consts::PI;

use crate::error::{LabError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule; nodes are the roots of `P_n`, found by Newton's
    /// method from the asymptotic guess `cos(π (i + 3/4) / (n + 1/2))`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LabError::param("nodes", "a rule needs at least one node"));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights of the rule repeated over `panels` equal
    /// subintervals of `[a, b]`.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let width = (b - a) / panels as f64;
        let half = 0.5 * width;
        let mut out = Vec::with_capacity(panels * self.len());
        for k in 0..panels {
            let mid = a + (k as f64 + 0.5) * width;
            out.extend(
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(&x, &w)| (mid + half * x, half * w)),
            );
        }
        out
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.composite(a, b, 1)
            .into_iter()
            .map(|(x, w)| w * f(x))
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64, 256] {
            let rule = GaussLegendre::new(n).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n = {n}: {total}");
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
        assert!(GaussLegendre::new(0).is_err());
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(6).unwrap();
        for k in 0..12 {
            let got = rule.integrate(-1.0, 1.0, |x| x.powi(k));
            let expected = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            assert!((got - expected).abs() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn three_point_rule() {
        let rule = GaussLegendre::new(3).unwrap();
        let x = (0.6f64).sqrt();
        assert!((rule.nodes()[2] - x).abs() < 1e-15);
        assert!((rule.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((rule.weights()[0] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn composite_transcendental() {
        let rule = GaussLegendre::new(256).unwrap();
        let got: f64 = rule
            .composite(0.0, 36.0, 4)
            .iter()
            .map(|&(s, w)| w * (-s).exp() * s.cos())
            .sum();
        // ∫_0^36 e^{-s} cos s ds = (1 + e^{-36}(sin 36 - cos 36)) / 2
        let expected = 0.5 * (1.0 + (-36.0f64).exp() * (36f64.sin() - 36f64.cos()));
        assert!((got - expected).abs() < 1e-14);
    }
}
