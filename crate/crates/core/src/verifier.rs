//! The stabilizer bound: the inequality chain from `1/k ≤ ‖p_S∗p_v‖²` to
//! `λ₂²/|S|² + 1/|V|`, the resulting disjunction `|V| < 2k` or
//! `|G_v|² < 2λ₂²/k`, and the converse bound `λ₂ ≤ λ₁ = k|G_v|`.

use serde::Serialize;

use crate::error::Result;
use crate::graph::TransitiveCase;
use crate::harmonic::{close_scaled, convolve, GroupFunction, VertexFunction};
use crate::spectral::BipartiteAdjacency;

/// Tolerance for equalities and non-strict inequalities in the chain.
pub const CHAIN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct CauchySchwarzStep {
    pub one_over_k: f64,
    /// `‖p_S ∗ p_v‖²`.
    pub value: f64,
    pub holds: bool,
    /// Equal to `1/k` within tolerance.
    pub equality: bool,
    /// `p_S ∗ p_v` vanishes off `Γ(v)`.
    pub support_in_neighbourhood: bool,
}

pub fn cauchy_schwarz_step(case: &TransitiveCase) -> Result<CauchySchwarzStep> {
    let n = case.vertex_count();
    let ps = GroupFunction::uniform_on_set(case.connection_set())?;
    let pv = VertexFunction::point_mass(case.base(), n)?;
    let conv = convolve(&ps, &pv)?;
    let nbrs = case.graph().neighbors(case.base());
    let support_in_neighbourhood =
        conv.values().iter().enumerate().all(|(w, &x)| x == 0.0 || nbrs.binary_search(&w).is_ok());
    let one_over_k = 1.0 / case.valency() as f64;
    let value = conv.norm_sq();
    Ok(CauchySchwarzStep {
        one_over_k,
        value,
        holds: one_over_k <= value + CHAIN_TOL,
        equality: close_scaled(one_over_k, value, CHAIN_TOL),
        support_in_neighbourhood,
    })
}

/// Every line of the chain, each computed from its own definition. `f` is
/// `p_v − U`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainDiagnostics {
    pub one_over_k: f64,
    /// `‖p_S ∗ p_v‖²`
    pub point_mass: f64,
    /// `‖p_S ∗ (f + U)‖²`
    pub shifted: f64,
    /// `‖p_S ∗ f + U‖²`
    pub recentred: f64,
    /// `‖p_S ∗ f‖² + 1/|V|`
    pub split: f64,
    /// `‖χ_S ∗ f‖² / |S|² + 1/|V|`
    pub characteristic: f64,
    /// `‖𝒜f‖² / |S|² + 1/|V|`
    pub operator: f64,
    /// `λ₂² ‖f‖² / |S|² + 1/|V|`
    pub spectral: f64,
    /// `λ₂² / |S|² + 1/|V|`
    pub final_bound: f64,
    pub f_sum: f64,
    pub f_norm_sq: f64,
    pub equalities_ok: bool,
    pub first_inequality_ok: bool,
    pub spectral_inequality_ok: bool,
    /// `spectral < final_bound` strictly.
    pub final_strict: bool,
    /// `spectral` and `final_bound` agree to within tolerance, so strictness
    /// is numerically unresolved.
    pub final_equal_within_tol: bool,
    pub ok: bool,
}

pub fn evaluate_chain(case: &TransitiveCase, adj: &BipartiteAdjacency, lambda2: f64) -> Result<ChainDiagnostics> {
    let n = case.vertex_count();
    let s = case.connection_set();
    let s_size = s.len() as f64;
    let inv_n = 1.0 / n as f64;
    let ps = GroupFunction::uniform_on_set(s)?;
    let chi = GroupFunction::char_set(s);
    let pv = VertexFunction::point_mass(case.base(), n)?;
    let u = VertexFunction::uniform(n);
    let f = &pv - &u;

    let one_over_k = 1.0 / case.valency() as f64;
    let point_mass = convolve(&ps, &pv)?.norm_sq();
    let shifted = convolve(&ps, &(&f + &u))?.norm_sq();
    let ps_f = convolve(&ps, &f)?;
    let recentred = (&ps_f + &u).norm_sq();
    let split = ps_f.norm_sq() + inv_n;
    let characteristic = convolve(&chi, &f)?.norm_sq() / (s_size * s_size) + inv_n;
    let af = VertexFunction(adj.apply(f.values()));
    let operator = af.norm_sq() / (s_size * s_size) + inv_n;
    let f_norm_sq = f.norm_sq();
    let spectral = lambda2 * lambda2 * f_norm_sq / (s_size * s_size) + inv_n;
    let final_bound = lambda2 * lambda2 / (s_size * s_size) + inv_n;

    let equal_lines = [point_mass, shifted, recentred, split, characteristic, operator];
    let equalities_ok = equal_lines.windows(2).all(|w| close_scaled(w[0], w[1], CHAIN_TOL));
    let first_inequality_ok = one_over_k <= point_mass + CHAIN_TOL;
    let spectral_inequality_ok = operator <= spectral + CHAIN_TOL * 1f64.max(spectral);
    let final_strict = spectral < final_bound;
    let final_equal_within_tol = close_scaled(spectral, final_bound, CHAIN_TOL);
    Ok(ChainDiagnostics {
        one_over_k,
        point_mass,
        shifted,
        recentred,
        split,
        characteristic,
        operator,
        spectral,
        final_bound,
        f_sum: f.sum(),
        f_norm_sq,
        equalities_ok,
        first_inequality_ok,
        spectral_inequality_ok,
        final_strict,
        final_equal_within_tol,
        ok: equalities_ok
            && first_inequality_ok
            && spectral_inequality_ok
            && final_strict
            && !final_equal_within_tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop5Branch {
    /// `|V| < 2k`.
    SmallGraph,
    /// `|V| ≥ 2k`; the stabilizer bound must carry the disjunction.
    Bound,
}

impl Prop5Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Prop5Branch::SmallGraph => "small-graph",
            Prop5Branch::Bound => "bound",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub case: String,
    pub n_vertices: usize,
    pub valency: usize,
    pub group_order: u128,
    pub stabilizer_order: u128,
    pub s_size: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub branch: Prop5Branch,
    /// `|G_v|² < 2λ₂²/k`.
    pub proof_form_ok: bool,
    /// `|G_v| < √2·λ₂/k`. Informational.
    pub statement_form_ok: bool,
    pub cauchy_schwarz_ok: bool,
    /// `λ₂ ≤ k|G_v|·(1 + tol)`.
    pub converse_ok: bool,
    /// If `|V| ≤ 2k` then `|G_v| ≤ |G| ≤ (2k)!`; vacuous otherwise.
    pub small_case_ok: bool,
    /// Small-graph branch or proof form.
    pub disjunction_ok: bool,
}

/// `(2k)!`, or `None` if it does not fit in 128 bits.
fn factorial(m: usize) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

pub fn verify_converse(case: &TransitiveCase, lambda2: f64, tol: f64) -> bool {
    let k_gv = case.valency() as f64 * case.stabilizer_order() as f64;
    lambda2 <= k_gv * (1.0 + tol)
}

pub fn decide_prop5(
    name: &str,
    case: &TransitiveCase,
    lambda1: f64,
    lambda2: f64,
    tol: f64,
) -> Result<BoundReport> {
    let n = case.vertex_count();
    let k = case.valency();
    let gv = case.stabilizer_order();
    let g = case.group().order();
    let gvf = gv as f64;
    let kf = k as f64;
    let branch = if n < 2 * k { Prop5Branch::SmallGraph } else { Prop5Branch::Bound };
    let proof_form_ok = gvf * gvf < 2.0 * lambda2 * lambda2 / kf;
    let statement_form_ok = gvf < std::f64::consts::SQRT_2 * lambda2 / kf;
    let small_case_ok = if n <= 2 * k {
        gv <= g && factorial(2 * k).is_none_or(|f| g <= f)
    } else {
        true
    };
    let cs = cauchy_schwarz_step(case)?;
    Ok(BoundReport {
        case: name.to_string(),
        n_vertices: n,
        valency: k,
        group_order: g,
        stabilizer_order: gv,
        s_size: case.connection_set().len(),
        lambda1,
        lambda2,
        branch,
        proof_form_ok,
        statement_form_ok,
        cauchy_schwarz_ok: cs.holds && cs.support_in_neighbourhood,
        converse_ok: verify_converse(case, lambda2, tol),
        small_case_ok,
        disjunction_ok: branch == Prop5Branch::SmallGraph || proof_form_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::permgroup::PermutationGroup;
    use crate::spectral::{build_bipartite, singular_values};

    fn k3_case() -> TransitiveCase {
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        TransitiveCase::new(PermutationGroup::symmetric(3), g, 0, 1000).unwrap()
    }

    fn c4_case() -> TransitiveCase {
        let g = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        TransitiveCase::new(PermutationGroup::cyclic(4), g, 0, 1000).unwrap()
    }

    #[test]
    fn cauchy_schwarz_equality_on_small_cases() {
        for case in [k3_case(), c4_case()] {
            let cs = cauchy_schwarz_step(&case).unwrap();
            assert!(cs.holds && cs.equality && cs.support_in_neighbourhood, "{cs:?}");
            assert!((cs.value - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_on_k3() {
        let case = k3_case();
        let adj = build_bipartite(case.connection_set(), 3).unwrap();
        let lambda2 = singular_values(&adj).unwrap().lambda2();
        assert!((lambda2 - 2.0).abs() < 1e-12);
        let c = evaluate_chain(&case, &adj, lambda2).unwrap();
        assert!(c.ok, "{c:?}");
        for line in [c.point_mass, c.shifted, c.recentred, c.split, c.characteristic, c.operator] {
            assert!((line - 0.5).abs() < 1e-12, "{c:?}");
        }
        assert!((c.final_bound - 7.0 / 12.0).abs() < 1e-12);
        assert!(c.f_sum.abs() < 1e-15);
        assert!((c.f_norm_sq - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn prop5_k3_small_branch() {
        let case = k3_case();
        let r = decide_prop5("K3", &case, 4.0, 2.0, 1e-9).unwrap();
        assert_eq!(r.branch, Prop5Branch::SmallGraph);
        assert!(r.disjunction_ok && r.converse_ok && r.small_case_ok);
    }

    #[test]
    fn prop5_c4_bound_branch() {
        let case = c4_case();
        let r = decide_prop5("C4", &case, 2.0, 2.0, 1e-9).unwrap();
        assert_eq!(r.branch, Prop5Branch::Bound);
        // 1 < 2·4/2 and 1 < √2·2/2
        assert!(r.proof_form_ok && r.statement_form_ok && r.disjunction_ok);
        assert!(r.converse_ok);
        assert!(r.small_case_ok);
    }

    #[test]
    fn converse_tolerance() {
        let case = c4_case();
        assert!(verify_converse(&case, 2.0, 1e-9));
        assert!(verify_converse(&case, 2.0 * (1.0 + 1e-10), 1e-9));
        assert!(!verify_converse(&case, 2.0 * (1.0 + 1e-8), 1e-9));
    }

    #[test]
    fn factorial_overflow() {
        assert_eq!(factorial(4), Some(24));
        assert_eq!(factorial(0), Some(1));
        assert!(factorial(40).is_none());
    }
}
