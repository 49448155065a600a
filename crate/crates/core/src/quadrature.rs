//! Gauss–Legendre quadrature.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`, started
    /// from the Chebyshev-like guesses `cos(π(i − ¼)/(n + ½))`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Integrates over `panels` equal sub-intervals of `[a, b]`.
    pub fn integrate_composite<F: Fn(f64) -> f64>(&self, a: f64, b: f64, panels: usize, f: F) -> f64 {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + p as f64 * h;
                let hi = if p + 1 == panels { b } else { lo + h };
                self.integrate(lo, hi, &f)
            })
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = if n == 0 {
        0.0
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_order_nodes_are_known() {
        let q = GaussLegendre::new(2);
        assert_abs_diff_eq!(q.nodes()[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(q.weights()[0], 1.0, epsilon = 1e-15);
        let q = GaussLegendre::new(3);
        assert_abs_diff_eq!(q.nodes()[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.weights()[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn weights_sum_to_two_and_polynomials_are_exact() {
        let q = GaussLegendre::new(64);
        assert_abs_diff_eq!(q.weights().iter().sum::<f64>(), 2.0, epsilon = 1e-13);
        // degree 127 is the exactness limit
        assert_abs_diff_eq!(q.integrate(-1.0, 1.0, |x| x.powi(126)), 2.0 / 127.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.integrate(0.0, 1.0, |x| x.powi(40)), 1.0 / 41.0, epsilon = 1e-15);
    }

    #[test]
    fn oscillatory_integrand_with_panels() {
        let q = GaussLegendre::new(64);
        // ∫_0^π cos(200 θ)·θ dθ = (cos(200π) − 1)/200² = 0
        let v = q.integrate_composite(0.0, PI, 5, |t| (200.0 * t).cos() * t);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-13);
        let v = q.integrate_composite(0.0, PI, 5, |t| (201.0 * t).cos() * t);
        assert_abs_diff_eq!(v, -2.0 / (201.0f64 * 201.0), epsilon = 1e-14);
    }
}
