//! The bipartite adjacency matrix `𝒜(x, y) = #{s ∈ S : s(x) = y}` and its
//! singular values.

mod eigen;
mod power;

pub use power::lambda2_iterative;
pub(crate) use power::lambda2_with_residual;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::TransitiveCase;
use crate::permgroup::ConnectionSet;

/// Dense eigensolves run up to this many vertices by default.
pub const DEFAULT_MAX_DENSE: usize = 4000;
/// Singular vectors are kept up to this many vertices by default.
pub const DEFAULT_KEEP_VECTORS: usize = 200;

/// Dense `|V| × |V|` integer matrix; rows index `X`, columns index `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteAdjacency {
    n: usize,
    entries: Vec<u64>,
}

/// `𝒜 = Σ_{s ∈ S} P_s` where `P_s(x, s(x)) = 1`.
pub fn build_bipartite(s: &ConnectionSet, n: usize) -> Result<BipartiteAdjacency> {
    if s.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: s.degree() });
    }
    let mut entries = vec![0u64; n * n];
    for g in s.elements() {
        for x in 0..n {
            entries[x * n + g.apply(x)] += 1;
        }
    }
    Ok(BipartiteAdjacency { n, entries })
}

impl BipartiteAdjacency {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, row: i, len: row.len() });
            }
            entries.extend(row);
        }
        Ok(BipartiteAdjacency { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.entries[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[u64] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n).map(|x| self.row(x).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.n];
        for x in 0..self.n {
            for (y, &a) in self.row(x).iter().enumerate() {
                sums[y] += a;
            }
        }
        sums
    }

    /// Common row sum if all rows agree.
    pub fn row_degree(&self) -> Option<u64> {
        let sums = self.row_sums();
        let first = sums.first().copied().unwrap_or(0);
        sums.iter().all(|&s| s == first).then_some(first)
    }

    /// First `(x, y)` with `𝒜(x, y) ≠ 𝒜(y, x)`.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.get(x, y) != self.get(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).map(|x| self.get(x, x)).sum()
    }

    /// `(𝒜f)(x) = Σ_y 𝒜(x, y) f(y)`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.n);
        (0..self.n)
            .map(|x| self.row(x).iter().zip(f).map(|(&a, &fy)| a as f64 * fy).sum())
            .collect()
    }

    /// Exact integer form of [`apply`](Self::apply).
    pub fn apply_int(&self, f: &[i64]) -> Vec<i64> {
        assert_eq!(f.len(), self.n);
        (0..self.n)
            .map(|x| self.row(x).iter().zip(f).map(|(&a, &fy)| a as i64 * fy).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|&a| (a as f64) * (a as f64)).sum::<f64>().sqrt()
    }

    fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&a| a as f64).collect()
    }

    /// Debug dump: one row per line, entries separated by single spaces.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for x in 0..self.n {
            for (y, a) in self.row(x).iter().enumerate() {
                if y > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{a}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    DenseEigen,
    PowerIteration,
}

/// Orthonormal families with `𝒜 = Σ λ_i w_i v_iᵀ`.
#[derive(Clone, Debug)]
pub struct SingularVectors {
    pub left: Vec<Vec<f64>>,
    pub right: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct SpectralSummary {
    /// Non-increasing, non-negative. All `|V|` values for the dense method;
    /// only `λ₁, λ₂` for power iteration.
    pub values: Vec<f64>,
    pub vectors: Option<SingularVectors>,
    pub method: SpectralMethod,
    /// Dense with vectors: `max_i ‖𝒜v_i − λ_i w_i‖ / ‖𝒜‖_F`.
    /// Dense without vectors: `|Σλ_i² − ‖𝒜‖_F²| / ‖𝒜‖_F²`.
    /// Power iteration: relative residual of the `λ₂` iterate.
    pub residual: f64,
}

impl SpectralSummary {
    pub fn lambda1(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `λ₂`, or 0 for a 1×1 matrix.
    pub fn lambda2(&self) -> f64 {
        self.values.get(1).copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectralOptions {
    pub max_dense: usize,
    pub keep_vectors_up_to: usize,
    pub power_tol: f64,
    pub power_max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            max_dense: DEFAULT_MAX_DENSE,
            keep_vectors_up_to: DEFAULT_KEEP_VECTORS,
            power_tol: 1e-10,
            power_max_iter: 200_000,
        }
    }
}

/// Singular values of the symmetric `𝒜`, i.e. the absolute values of its
/// eigenvalues, sorted non-increasingly.
pub fn singular_values(adj: &BipartiteAdjacency) -> Result<SpectralSummary> {
    singular_values_with(adj, &SpectralOptions::default())
}

pub fn singular_values_with(adj: &BipartiteAdjacency, opts: &SpectralOptions) -> Result<SpectralSummary> {
    if let Some((row, col)) = adj.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = adj.size();
    if n > opts.max_dense {
        return power_summary(adj, opts);
    }
    let want_vectors = n <= opts.keep_vectors_up_to;
    let eig = eigen::symmetric_eigen(&adj.to_f64(), n, want_vectors);
    if eig.hit_iteration_limit {
        return Err(Error::NotConverged { iterations: eigen::MAX_QL_SWEEPS, estimate: f64::NAN });
    }

    // Sort by |λ| descending, ties by λ descending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (eig.values[i], eig.values[j]);
        b.abs().total_cmp(&a.abs()).then(b.total_cmp(&a))
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.values[i].abs()).collect();
    let fro = adj.frobenius_norm();
    let scale = if fro > 0.0 { fro } else { 1.0 };

    let (vectors, residual) = match &eig.vectors {
        Some(q) => {
            let mut left = Vec::with_capacity(n);
            let mut right = Vec::with_capacity(n);
            let mut worst: f64 = 0.0;
            for &j in &order {
                let col: Vec<f64> = (0..n).map(|i| q[i * n + j]).collect();
                let lambda = eig.values[j];
                let aq = adj.apply(&col);
                let r = aq.iter().zip(&col).map(|(a, c)| (a - lambda * c).powi(2)).sum::<f64>().sqrt();
                worst = worst.max(r / scale);
                let sign = if lambda < 0.0 { -1.0 } else { 1.0 };
                left.push(col.iter().map(|c| sign * c).collect());
                right.push(col);
            }
            (Some(SingularVectors { left, right }), worst)
        }
        None => {
            let sq: f64 = values.iter().map(|v| v * v).sum();
            (None, (sq - fro * fro).abs() / (scale * scale))
        }
    };
    Ok(SpectralSummary { values, vectors, method: SpectralMethod::DenseEigen, residual })
}

fn power_summary(adj: &BipartiteAdjacency, opts: &SpectralOptions) -> Result<SpectralSummary> {
    let n = adj.size();
    // For a regular 𝒜 the all-ones vector is an eigenvector for the row degree,
    // and the row degree bounds every |λ|.
    let lambda1 = match adj.row_degree() {
        Some(d) => d as f64,
        None => {
            let ones = vec![1.0; n];
            let y = adj.apply(&ones);
            (y.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt()
        }
    };
    let (lambda2, residual) = power::lambda2_with_residual(adj, opts.power_tol, opts.power_max_iter)?;
    Ok(SpectralSummary {
        values: vec![lambda1, lambda2],
        vectors: None,
        method: SpectralMethod::PowerIteration,
        residual,
    })
}

/// The first-singular-value identity `λ₁ = t·√(|X||Y|)` with
/// `t = degree / |Y|`, specialised to `|X| = |Y| = |V|` and
/// `degree = |S| = k·|G_v|`.
#[derive(Clone, Debug, Serialize)]
pub struct FirstSingularValueCheck {
    pub t: f64,
    pub predicted: f64,
    pub k_times_stabilizer: f64,
    pub lambda1: f64,
    pub relative_error: f64,
    pub ok: bool,
}

pub fn verify_lemma3_regular(
    adj: &BipartiteAdjacency,
    summary: &SpectralSummary,
    case: &TransitiveCase,
    tol: f64,
) -> FirstSingularValueCheck {
    let n = adj.size() as f64;
    let k_gv = case.valency() as f64 * case.stabilizer_order() as f64;
    let (degree, regular) = match adj.row_degree() {
        Some(d) => (d as f64, true),
        None => (f64::NAN, false),
    };
    let t = degree / n;
    let predicted = t * (n * n).sqrt();
    let lambda1 = summary.lambda1();
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    let relative_error = rel(lambda1, predicted).max(rel(predicted, k_gv));
    FirstSingularValueCheck {
        t,
        predicted,
        k_times_stabilizer: k_gv,
        lambda1,
        relative_error,
        ok: regular && relative_error <= tol,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReconstructionCheck {
    /// `‖Σ λ_i w_i v_iᵀ − 𝒜‖_F / ‖𝒜‖_F` (absolute when `𝒜 = 0`).
    pub frobenius_residual: f64,
    /// Largest entry of `|VᵀV − I|` and `|WᵀW − I|`.
    pub orthonormality_defect: f64,
}

impl ReconstructionCheck {
    pub fn worst(&self) -> f64 {
        self.frobenius_residual.max(self.orthonormality_defect)
    }
}

pub fn verify_svd_reconstruction(
    summary: &SpectralSummary,
    adj: &BipartiteAdjacency,
) -> Result<ReconstructionCheck> {
    let vecs = summary.vectors.as_ref().ok_or(Error::VectorsAbsent)?;
    let n = adj.size();
    let mut diff2 = 0.0;
    for x in 0..n {
        for y in 0..n {
            let mut s = 0.0;
            for (i, lambda) in summary.values.iter().enumerate() {
                s += lambda * vecs.left[i][x] * vecs.right[i][y];
            }
            diff2 += (s - adj.get(x, y) as f64).powi(2);
        }
    }
    let fro = adj.frobenius_norm();
    let frobenius_residual = if fro > 0.0 { diff2.sqrt() / fro } else { diff2.sqrt() };
    let defect = |family: &[Vec<f64>]| {
        let mut worst: f64 = 0.0;
        for i in 0..family.len() {
            for j in i..family.len() {
                let dot: f64 = family[i].iter().zip(&family[j]).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    };
    Ok(ReconstructionCheck {
        frobenius_residual,
        orthonormality_defect: defect(&vecs.left).max(defect(&vecs.right)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSumNormCheck {
    pub trials: usize,
    pub seed: u64,
    /// Largest `‖𝒜f‖ / (λ₂‖f‖)` seen.
    pub max_ratio: f64,
    pub ok: bool,
}

/// `‖𝒜f‖ ≤ λ₂‖f‖·(1 + tol)` for `trials` random zero-sum `f`.
pub fn verify_zero_sum_norm(
    adj: &BipartiteAdjacency,
    lambda2: f64,
    trials: usize,
    seed: u64,
    tol: f64,
) -> ZeroSumNormCheck {
    let n = adj.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    let mut ok = true;
    for _ in 0..trials {
        if n < 2 {
            break;
        }
        let mut f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = f.iter().sum::<f64>() / n as f64;
        f.iter_mut().for_each(|x| *x -= mean);
        let nf = f.iter().map(|x| x * x).sum::<f64>().sqrt();
        let na = adj.apply(&f).iter().map(|x| x * x).sum::<f64>().sqrt();
        ok &= na <= lambda2 * nf * (1.0 + tol);
        let ratio = if lambda2 * nf > 0.0 { na / (lambda2 * nf) } else if na == 0.0 { 0.0 } else { f64::INFINITY };
        max_ratio = max_ratio.max(ratio);
    }
    ZeroSumNormCheck { trials, seed, max_ratio, ok }
}
