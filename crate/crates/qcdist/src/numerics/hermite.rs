//! Gauss-Hermite quadrature in the probabilists' convention: the weight
//! function is the standard normal density and the weights sum to one, so the
//! rule integrates polynomials of degree <= 2N-1 exactly against N(0,1).
//!
//! Nodes start from the eigenvalues of the symmetric tridiagonal Jacobi
//! matrix of the three-term recurrence and are polished to machine precision
//! by Newton iteration on the orthonormal polynomials. Weights come from the
//! Christoffel function at each node, which keeps them positive regardless of
//! how the eigensolver orders or rounds things, and the node set is mirrored
//! so the rule is exactly symmetric.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_HERMITE_ORDER: usize = 200;

#[derive(Debug, Clone)]
pub struct HermiteRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HermiteRule {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes in ascending order, symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights summing to 1, in node order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

// Orthonormal probabilists' Hermite polynomials at x:
// h_0 = 1, h_1 = x, sqrt(k+1) h_{k+1} = x h_k - sqrt(k) h_{k-1}.
// Returns (h_n, h_{n-1}); the derivative is h_n'(x) = sqrt(n) h_{n-1}(x).
fn orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0; // h_0
    if n == 0 {
        return (prev, 0.0);
    }
    let mut cur = x; // h_1
    for k in 1..n {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

// 1 / sum_{k<n} h_k(x)^2, the Gauss weight at a node x.
fn christoffel_weight(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    let mut sum = 1.0;
    if n == 1 {
        return 1.0 / sum;
    }
    let mut cur = x;
    sum += cur * cur;
    for k in 1..n - 1 {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
        sum += cur * cur;
    }
    1.0 / sum
}

/// Build the order-N probabilists' Gauss-Hermite rule, 1 <= N <= 200.
pub fn hermite_rule(n: usize) -> Result<HermiteRule> {
    if n == 0 {
        return Err(Error::domain("hermite rule order must be at least 1"));
    }
    if n > MAX_HERMITE_ORDER {
        return Err(Error::domain(format!(
            "hermite rule order {n} exceeds the supported maximum {MAX_HERMITE_ORDER}"
        )));
    }

    // Jacobi matrix of the recurrence: zero diagonal, sqrt(k) off-diagonal.
    // Its eigenvalues are the nodes, accurate enough to put every Newton
    // start deep inside its own basin.
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64).sqrt();
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let mut seeds: Vec<f64> = nalgebra::SymmetricEigen::new(jacobi)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    seeds.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Polish the positive half; the negative half is its mirror image and the
    // middle node of an odd rule is exactly zero by symmetry.
    let half = n / 2;
    let nf = n as f64;
    let mut positive: Vec<f64> = Vec::with_capacity(half);
    for (i, &seed) in seeds[n - half..].iter().enumerate() {
        let mut x = seed;
        let mut converged = false;
        for _ in 0..50 {
            let (h, h_prev) = orthonormal_pair(n, x);
            let dx = h / (nf.sqrt() * h_prev);
            x -= dx;
            if dx.abs() <= 1e-14 * (1.0 + x.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::domain(format!(
                "hermite node iteration failed to converge at order {n}, root {i}"
            )));
        }
        positive.push(x);
    }

    let mut nodes: Vec<f64> = positive.iter().map(|&x| -x).collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if n % 2 == 1 {
        nodes.push(0.0);
    }
    let mut upper = positive;
    upper.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.extend(upper);

    let mut weights: Vec<f64> = nodes.iter().map(|&x| christoffel_weight(n, x)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }

    for i in 1..n {
        if !(nodes[i] > nodes[i - 1]) {
            return Err(Error::domain(format!(
                "hermite nodes failed to separate at order {n}"
            )));
        }
    }

    Ok(HermiteRule {
        order: n,
        nodes,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // E[u^k] for u ~ N(0,1): 0 for odd k, (k-1)!! for even k.
    fn normal_moment(k: usize) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        let mut m = 1.0;
        let mut j = k as i64 - 1;
        while j > 1 {
            m *= j as f64;
            j -= 2;
        }
        m
    }

    #[test]
    fn low_order_closed_forms() {
        let r1 = hermite_rule(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[1.0]);

        let r2 = hermite_rule(2).unwrap();
        assert!((r2.nodes()[0] + 1.0).abs() < 1e-14);
        assert!((r2.nodes()[1] - 1.0).abs() < 1e-14);
        assert!((r2.weights()[0] - 0.5).abs() < 1e-14);

        let r3 = hermite_rule(3).unwrap();
        let s3 = 3.0f64.sqrt();
        assert!((r3.nodes()[0] + s3).abs() < 1e-13);
        assert!(r3.nodes()[1].abs() < 1e-14);
        assert!((r3.nodes()[2] - s3).abs() < 1e-13);
        assert!((r3.weights()[0] - 1.0 / 6.0).abs() < 1e-14);
        assert!((r3.weights()[1] - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn moments_exact_up_to_2n_minus_1() {
        for n in 1..=50 {
            let rule = hermite_rule(n).unwrap();
            let wsum: f64 = rule.weights().iter().sum();
            assert!((wsum - 1.0).abs() < 1e-12, "weight sum at order {n}");
            for k in 0..2 * n {
                let got: f64 = rule
                    .nodes()
                    .iter()
                    .zip(rule.weights())
                    .map(|(&u, &w)| w * u.powi(k as i32))
                    .sum();
                let want = normal_moment(k);
                // Odd moments vanish only through cancellation of terms of
                // size sum w |u|^k, so measure the error against that scale.
                let scale: f64 = rule
                    .nodes()
                    .iter()
                    .zip(rule.weights())
                    .map(|(&u, &w)| w * u.abs().powi(k as i32))
                    .sum::<f64>()
                    .max(1.0);
                assert!(
                    (got - want).abs() <= 1e-10 * scale,
                    "order {n} moment {k}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn nodes_symmetric_and_ascending() {
        for n in [2usize, 7, 32, 111, 200] {
            let rule = hermite_rule(n).unwrap();
            let nodes = rule.nodes();
            for i in 1..n {
                assert!(nodes[i] > nodes[i - 1]);
            }
            for i in 0..n {
                assert!(
                    (nodes[i] + nodes[n - 1 - i]).abs() < 1e-12 * (1.0 + nodes[i].abs()),
                    "asymmetry at order {n}"
                );
                assert!(rule.weights()[i] > 0.0);
                assert!(
                    (rule.weights()[i] - rule.weights()[n - 1 - i]).abs()
                        < 1e-12 * rule.weights()[i],
                );
            }
        }
    }

    #[test]
    fn order_200_still_integrates() {
        let rule = hermite_rule(200).unwrap();
        let wsum: f64 = rule.weights().iter().sum();
        assert!((wsum - 1.0).abs() < 1e-12);
        // Low moments remain exact at the top supported order.
        for k in [2usize, 4, 6, 8] {
            let got: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&u, &w)| w * u.powi(k as i32))
                .sum();
            assert!((got - normal_moment(k)).abs() < 1e-9 * normal_moment(k));
        }
    }

    #[test]
    fn order_bounds_are_errors() {
        assert!(hermite_rule(0).is_err());
        assert!(hermite_rule(201).is_err());
    }
}
