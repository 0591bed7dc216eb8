//! Functions on the group and on the vertex set, and the convolution
//! `(μ∗ν)(v) = Σ_g μ(g)·ν(g⁻¹v)` that turns `χ_S` into the operator `𝒜`.

use std::collections::BTreeSet;
use std::ops::{Add, Sub};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{ConnectionSet, Permutation};
use crate::spectral::BipartiteAdjacency;

/// Finitely supported real function on permutations of a fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    degree: usize,
    support: Vec<(Permutation, f64)>,
}

impl GroupFunction {
    pub fn new(degree: usize, support: Vec<(Permutation, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (g, _) in &support {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
            if !seen.insert(g) {
                return Err(Error::Parse(format!("permutation {g} appears twice in the support")));
            }
        }
        Ok(GroupFunction { degree, support })
    }

    /// `χ_S`.
    pub fn char_set(s: &ConnectionSet) -> Self {
        GroupFunction { degree: s.degree(), support: s.elements().map(|g| (g.clone(), 1.0)).collect() }
    }

    /// `p_S`, the uniform distribution on `S`.
    pub fn uniform_on_set(s: &ConnectionSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Empty("uniform distribution on an empty set"));
        }
        let w = 1.0 / s.len() as f64;
        Ok(GroupFunction { degree: s.degree(), support: s.elements().map(|g| (g.clone(), w)).collect() })
    }

    pub fn point_mass(g: Permutation) -> Self {
        GroupFunction { degree: g.degree(), support: vec![(g, 1.0)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &[(Permutation, f64)] {
        &self.support
    }

    pub fn total(&self) -> f64 {
        self.support.iter().map(|(_, w)| w).sum()
    }

    pub fn norm(&self) -> f64 {
        self.support.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, c: f64) -> GroupFunction {
        GroupFunction {
            degree: self.degree,
            support: self.support.iter().map(|(g, w)| (g.clone(), c * w)).collect(),
        }
    }

    pub fn is_distribution(&self) -> bool {
        self.support.iter().all(|(_, w)| *w >= 0.0) && (self.total() - 1.0).abs() <= 1e-12
    }
}

/// Real function on `V = 0..n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexFunction(pub Vec<f64>);

impl VertexFunction {
    pub fn zeros(n: usize) -> Self {
        VertexFunction(vec![0.0; n])
    }

    /// `p_v`.
    pub fn point_mass(v: usize, n: usize) -> Result<Self> {
        if v >= n {
            return Err(Error::PointOutOfRange { point: v, degree: n });
        }
        let mut f = vec![0.0; n];
        f[v] = 1.0;
        Ok(VertexFunction(f))
    }

    /// `U`.
    pub fn uniform(n: usize) -> Self {
        VertexFunction(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, c: f64) -> VertexFunction {
        VertexFunction(self.0.iter().map(|x| c * x).collect())
    }
}

impl Add for &VertexFunction {
    type Output = VertexFunction;

    fn add(self, rhs: &VertexFunction) -> VertexFunction {
        assert_eq!(self.len(), rhs.len());
        VertexFunction(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VertexFunction {
    type Output = VertexFunction;

    fn sub(self, rhs: &VertexFunction) -> VertexFunction {
        assert_eq!(self.len(), rhs.len());
        VertexFunction(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// `(μ∗ν)(v) = Σ_g μ(g)·ν(g⁻¹(v))`, summed directly over the support of `μ`.
pub fn convolve(mu: &GroupFunction, nu: &VertexFunction) -> Result<VertexFunction> {
    if mu.degree != nu.len() {
        return Err(Error::DegreeMismatch { expected: nu.len(), found: mu.degree });
    }
    let mut out = vec![0.0; nu.len()];
    for (g, w) in &mu.support {
        // v = g(x) ⟺ x = g⁻¹(v)
        for (x, &val) in nu.0.iter().enumerate() {
            out[g.apply(x)] += w * val;
        }
    }
    Ok(VertexFunction(out))
}

/// Same sum over the support, in exact integer arithmetic.
pub fn convolve_int(s: &ConnectionSet, nu: &[i64]) -> Result<Vec<i64>> {
    if s.degree() != nu.len() {
        return Err(Error::DegreeMismatch { expected: nu.len(), found: s.degree() });
    }
    let mut out = vec![0i64; nu.len()];
    for g in s.elements() {
        for (x, &val) in nu.iter().enumerate() {
            out[g.apply(x)] += val;
        }
    }
    Ok(out)
}

/// `|a − b| ≤ tol · max(1, |a|, |b|)`.
pub fn close_scaled(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn random_zero_sum(rng: &mut ChaCha8Rng, n: usize) -> VertexFunction {
    let mut f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mean = f.iter().sum::<f64>() / n as f64;
    f.iter_mut().for_each(|x| *x -= mean);
    VertexFunction(f)
}

fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> VertexFunction {
    // Alternate dense and sparse supports so point-mass-like inputs appear.
    let sparse = rng.gen_bool(0.5);
    let mut p: Vec<f64> = (0..n)
        .map(|_| if sparse && rng.gen_bool(0.7) { 0.0 } else { rng.gen_range(0.0..1.0) })
        .collect();
    if p.iter().all(|&x| x == 0.0) {
        p[rng.gen_range(0..n)] = 1.0;
    }
    let total: f64 = p.iter().sum();
    VertexFunction(p.into_iter().map(|x| x / total).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq2Report {
    pub trials: usize,
    pub seed: u64,
    pub integer_exact: bool,
    /// Largest `‖χ_S∗f − 𝒜f‖ / max(‖𝒜f‖, ‖f‖)` over the real trials.
    pub real_max_relative_error: f64,
    pub ok: bool,
}

/// `χ_S ∗ f` against `𝒜f` for `trials` random integer and `trials` random
/// real `f`, plus `f = 1`.
pub fn verify_eq2(s: &ConnectionSet, adj: &BipartiteAdjacency, trials: usize, seed: u64) -> Result<Eq2Report> {
    let n = adj.size();
    let chi = GroupFunction::char_set(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut integer_exact = true;
    for _ in 0..trials {
        let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
        integer_exact &= convolve_int(s, &f)? == adj.apply_int(&f);
    }
    let ones = VertexFunction(vec![1.0; n]);
    let conv_ones = convolve(&chi, &ones)?;
    integer_exact &= conv_ones.0.iter().all(|&x| x == s.len() as f64);

    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = VertexFunction((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let lhs = convolve(&chi, &f)?;
        let rhs = VertexFunction(adj.apply(&f.0));
        let scale = rhs.norm().max(f.norm()).max(f64::MIN_POSITIVE);
        worst = worst.max((&lhs - &rhs).norm() / scale);
    }
    Ok(Eq2Report {
        trials,
        seed,
        integer_exact,
        real_max_relative_error: worst,
        ok: integer_exact && worst <= 1e-12,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma4Report {
    pub trials: usize,
    pub seed: u64,
    /// Largest scaled defect of each identity over all trials.
    pub max_defect: [f64; 4],
    pub ok: bool,
}

pub const LEMMA4_TOL: f64 = 1e-12;

/// Randomized check of, for zero-sum `f`, distributions `p` on `V` and `q`
/// on a random subset of `pool`, and `c ≥ 0`:
/// `‖f+U‖² = ‖f‖² + 1/|V|`, `‖p−U‖² = ‖p‖² − 1/|V|`,
/// `‖q∗(p±U)‖ = ‖q∗p ± U‖`, `‖c·p‖ = c‖p‖`.
pub fn verify_lemma4(n: usize, trials: usize, pool: &[Permutation], seed: u64) -> Result<Lemma4Report> {
    if n == 0 {
        return Err(Error::Empty("vertex set"));
    }
    if pool.is_empty() {
        return Err(Error::Empty("group element pool"));
    }
    if let Some(g) = pool.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = VertexFunction::uniform(n);
    let inv_n = 1.0 / n as f64;
    let mut max_defect = [0.0f64; 4];
    let mut record = |i: usize, a: f64, b: f64| {
        let d = (a - b).abs() / 1f64.max(a.abs()).max(b.abs());
        max_defect[i] = max_defect[i].max(d);
    };
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    for _ in 0..trials {
        let f = random_zero_sum(&mut rng, n);
        record(0, (&f + &u).norm_sq(), f.norm_sq() + inv_n);

        let p = random_distribution(&mut rng, n);
        record(1, (&p - &u).norm_sq(), p.norm_sq() - inv_n);

        let size = rng.gen_range(1..=pool.len().min(16));
        indices.partial_shuffle(&mut rng, size);
        let weights: Vec<f64> = (0..size).map(|_| rng.gen_range(0.01..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let q = GroupFunction::new(
            n,
            indices[..size].iter().zip(&weights).map(|(&i, w)| (pool[i].clone(), w / total)).collect(),
        )?;
        let qp = convolve(&q, &p)?;
        record(2, convolve(&q, &(&p + &u))?.norm(), (&qp + &u).norm());
        record(2, convolve(&q, &(&p - &u))?.norm(), (&qp - &u).norm());

        let c = rng.gen_range(0.0..10.0);
        record(3, p.scaled(c).norm(), c * p.norm());
    }
    Ok(Lemma4Report { trials, seed, ok: max_defect.iter().all(|&d| d <= LEMMA4_TOL), max_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{SimpleGraph, TransitiveCase};
    use crate::permgroup::PermutationGroup;
    use crate::spectral::build_bipartite;

    fn k3_case() -> TransitiveCase {
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        TransitiveCase::new(PermutationGroup::symmetric(3), g, 0, 1000).unwrap()
    }

    #[test]
    fn convolve_examples() {
        let case = k3_case();
        let chi = GroupFunction::char_set(case.connection_set());
        let pv = VertexFunction::point_mass(0, 3).unwrap();
        assert_eq!(convolve(&chi, &pv).unwrap().0, vec![0.0, 2.0, 2.0]);

        let f = VertexFunction(vec![0.3, -1.5, 2.25]);
        let id = GroupFunction::point_mass(Permutation::identity(3));
        assert_eq!(convolve(&id, &f).unwrap(), f);
    }

    #[test]
    fn uniform_over_group_flattens() {
        let els = PermutationGroup::symmetric(3).enumerate(10).unwrap();
        let w = 1.0 / els.len() as f64;
        let mu = GroupFunction::new(3, els.into_iter().map(|g| (g, w)).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let nu = VertexFunction((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect());
        let out = convolve(&mu, &nu).unwrap();
        let target = nu.sum() / 3.0;
        assert!(out.0.iter().all(|&x| (x - target).abs() < 1e-14));
    }

    #[test]
    fn convolve_degree_mismatch() {
        let id = GroupFunction::point_mass(Permutation::identity(3));
        assert!(matches!(convolve(&id, &VertexFunction::zeros(4)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn constructors() {
        let u = VertexFunction::uniform(4);
        assert_eq!(u.0, vec![0.25; 4]);
        assert_eq!(u.norm(), 0.5);
        let s = k3_case().connection_set().clone();
        let ps = GroupFunction::uniform_on_set(&s).unwrap();
        assert!((ps.norm().powi(2) - 0.25).abs() < 1e-15);
        assert!(ps.is_distribution());
        let chi = GroupFunction::char_set(&s);
        for ((g1, a), (g2, b)) in chi.support().iter().zip(ps.scaled(s.len() as f64).support()) {
            assert_eq!(g1, g2);
            assert_eq!(*a, *b);
        }
        let empty = ConnectionSet::new(PermutationGroup::trivial(3), []).unwrap();
        assert!(GroupFunction::uniform_on_set(&empty).is_err());
        assert_eq!(VertexFunction::point_mass(2, 3).unwrap().norm(), 1.0);
        assert!(VertexFunction::point_mass(3, 3).is_err());
    }

    #[test]
    fn duplicate_support_rejected() {
        let id = Permutation::identity(2);
        assert!(GroupFunction::new(2, vec![(id.clone(), 0.5), (id, 0.5)]).is_err());
    }

    #[test]
    fn eq2_on_k3() {
        let case = k3_case();
        let adj = build_bipartite(case.connection_set(), 3).unwrap();
        let pv = VertexFunction::point_mass(0, 3).unwrap();
        assert_eq!(adj.apply(&pv.0), vec![0.0, 2.0, 2.0]);
        let r = verify_eq2(case.connection_set(), &adj, 100, 7).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn lemma4_examples() {
        let n = 5;
        let u = VertexFunction::uniform(n);
        assert!((u.norm_sq() - 1.0 / n as f64).abs() < 1e-15);
        let pv = VertexFunction::point_mass(1, n).unwrap();
        assert!(((&pv - &u).norm_sq() - (1.0 - 1.0 / n as f64)).abs() < 1e-15);

        let case = k3_case();
        let q = GroupFunction::uniform_on_set(case.connection_set()).unwrap();
        let u3 = VertexFunction::uniform(3);
        let qu = convolve(&q, &u3).unwrap();
        for (a, b) in qu.0.iter().zip(&u3.0) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((convolve(&q, &(&u3 + &u3)).unwrap().norm() - (&u3 + &u3).norm()).abs() < 1e-15);
        assert!(convolve(&q, &(&u3 - &u3)).unwrap().norm() < 1e-15);

        let pool = PermutationGroup::symmetric(3).enumerate(10).unwrap();
        let r = verify_lemma4(3, 1000, &pool, 11).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn lemma4_rejects_bad_pool() {
        assert!(verify_lemma4(3, 1, &[], 0).is_err());
        assert!(verify_lemma4(3, 1, &[Permutation::identity(4)], 0).is_err());
    }
}
