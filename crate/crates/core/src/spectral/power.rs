use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BipartiteAdjacency;
use crate::error::{Error, Result};

const START_SEED: u64 = 0x5eed_0f1a;

fn project_zero_sum(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest singular value of `𝒜` on the zero-sum subspace, by power
/// iteration on `𝒜²` with the all-ones direction projected out every step.
/// For a regular `𝒜` this is `λ₂`.
///
/// Stops once `‖𝒜²x − ρx‖ ≤ tol·ρ` for the unit iterate `x` and
/// `ρ = ‖𝒜x‖²`.
pub fn lambda2_iterative(adj: &BipartiteAdjacency, tol: f64, max_iter: usize) -> Result<f64> {
    lambda2_with_residual(adj, tol, max_iter).map(|(l, _)| l)
}

pub(crate) fn lambda2_with_residual(
    adj: &BipartiteAdjacency,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64)> {
    let n = adj.size();
    if n <= 1 {
        return Ok((0.0, 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_zero_sum(&mut x);
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);

    let mut rho = 0.0;
    for _ in 0..max_iter {
        let y = adj.apply(&x);
        let mut z = adj.apply(&y);
        project_zero_sum(&mut z);
        rho = y.iter().map(|v| v * v).sum::<f64>();
        let nz = norm(&z);
        if rho == 0.0 || nz == 0.0 {
            return Ok((0.0, 0.0));
        }
        let residual = z.iter().zip(&x).map(|(a, b)| (a - rho * b).powi(2)).sum::<f64>().sqrt() / rho;
        if residual <= tol {
            return Ok((rho.sqrt(), residual));
        }
        x = z.into_iter().map(|v| v / nz).collect();
    }
    Err(Error::NotConverged { iterations: max_iter, estimate: rho.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_matrices() {
        let one = BipartiteAdjacency::from_rows(vec![vec![7]]).unwrap();
        assert_eq!(lambda2_iterative(&one, 1e-10, 10).unwrap(), 0.0);
        let k3 = BipartiteAdjacency::from_rows(vec![vec![0, 2, 2], vec![2, 0, 2], vec![2, 2, 0]]).unwrap();
        assert!((lambda2_iterative(&k3, 1e-10, 1000).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        // The 8-cycle has zero-sum singular values 2, 2cos(π/4) (twice), …;
        // one step is never enough.
        let n = 8;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| ((i + 1) % n == j || (j + 1) % n == i) as u64).collect())
            .collect();
        let a = BipartiteAdjacency::from_rows(rows).unwrap();
        assert!(matches!(lambda2_iterative(&a, 1e-12, 1), Err(Error::NotConverged { iterations: 1, .. })));
        assert!((lambda2_iterative(&a, 1e-12, 10_000).unwrap() - 2.0).abs() < 1e-10);
    }
}
