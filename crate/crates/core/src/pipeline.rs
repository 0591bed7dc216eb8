//! One case end to end: build the action, extract `S`, form `𝒜`, compute its
//! spectrum, and run every check on it.

use serde::Serialize;

use crate::case_doc::{CaseOptions, CaseSpec, Construction};
use crate::error::{Error, Result};
use crate::graph::{build_coset_graph, local_action, verify_sabidussi, LocalActionReport, TransitiveCase};
use crate::harmonic::{close_scaled, verify_eq2, verify_lemma4, Eq2Report, Lemma4Report};
use crate::permgroup::Permutation;
use crate::spectral::{
    build_bipartite, lambda2_with_residual, singular_values_with, verify_lemma3_regular, verify_svd_reconstruction,
    verify_zero_sum_norm, BipartiteAdjacency, FirstSingularValueCheck, ReconstructionCheck, SpectralMethod,
    SpectralOptions, ZeroSumNormCheck,
};
use crate::verifier::{cauchy_schwarz_step, decide_prop5, evaluate_chain, BoundReport, CauchySchwarzStep, ChainDiagnostics};

/// Largest group enumerated to serve as the pool for the norm-identity trials;
/// bigger groups fall back to `S`.
const LEMMA4_POOL_CAP: usize = 50_000;

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    /// Relative slack for `λ₁ = k|G_v|`, the converse and `‖𝒜f‖ ≤ λ₂‖f‖`.
    pub tol: f64,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_group_order: u128,
    pub eq2_trials: usize,
    pub lemma4_trials: usize,
    pub zero_sum_trials: usize,
    /// Singular vectors are kept, and the reconstruction checked, up to here.
    pub svd_max_vertices: usize,
    /// Agreement required between the iterative and the dense `λ₂`.
    pub iterative_tol: f64,
    pub power_tol: f64,
    pub power_max_iter: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tol: 1e-9,
            seed: 1,
            max_vertices: 4000,
            max_group_order: 1_000_000,
            eq2_trials: 100,
            lemma4_trials: 1000,
            zero_sum_trials: 100,
            svd_max_vertices: 200,
            iterative_tol: 1e-8,
            power_tol: 1e-10,
            power_max_iter: 200_000,
        }
    }
}

impl AnalyzeOptions {
    /// Values set in the document replace ours.
    pub fn overridden_by(mut self, doc: &CaseOptions) -> Self {
        if let Some(v) = doc.max_vertices {
            self.max_vertices = v;
        }
        if let Some(v) = doc.max_group_order {
            self.max_group_order = v;
        }
        if let Some(v) = doc.tol {
            self.tol = v;
        }
        if let Some(v) = doc.seed {
            self.seed = v;
        }
        self
    }

    fn enumeration_cap(&self) -> usize {
        usize::try_from(self.max_group_order).unwrap_or(usize::MAX)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IterativeCheck {
    pub lambda2: f64,
    pub residual: f64,
    /// `|λ₂(iterative) − λ₂(dense)| ≤ tol·max(1, λ₂)`.
    pub matches_dense: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub n_vertices: usize,
    pub valency_k: usize,
    pub group_order: u128,
    pub stabilizer_order: u128,
    pub s_size: usize,
    pub n_double_cosets: usize,
    pub locally_transitive: bool,
    pub locally_primitive: bool,
    pub lambda1: f64,
    pub lambda2: f64,
    pub sabidussi_ok: bool,
    pub eq2_ok: bool,
    pub lemma3_ok: bool,
    pub lemma4_ok: bool,
    pub cauchy_schwarz_ok: bool,
    pub chain_ok: bool,
    pub prop5_branch: &'static str,
    pub proof_form_ok: bool,
    pub statement_form_ok: bool,
    pub converse_ok: bool,
    pub small_case_factorial_ok: bool,
    pub seed: u64,

    /// `locally_transitive` agrees with "S is a single double coset".
    pub local_consistent: bool,
    /// Reconstruction within 1e-8, or not applicable.
    pub svd_ok: bool,
    /// Conjunction of every check except the statement-form bound.
    pub normative_ok: bool,

    pub singular_values: Vec<f64>,
    pub spectral_method: SpectralMethod,
    pub spectral_residual: f64,
    pub first_singular_value: FirstSingularValueCheck,
    pub zero_sum: ZeroSumNormCheck,
    pub iterative: IterativeCheck,
    pub eq2: Eq2Report,
    pub lemma4: Lemma4Report,
    pub svd: Option<ReconstructionCheck>,
    pub local: LocalActionReport,
    pub cauchy_schwarz: CauchySchwarzStep,
    pub chain: ChainDiagnostics,
    pub bound: BoundReport,
}

/// The transitive case described by `spec`, after the size limits.
pub fn build_case(spec: &CaseSpec, opts: &AnalyzeOptions) -> Result<TransitiveCase> {
    let order = spec.group.order();
    if order > opts.max_group_order {
        return Err(Error::size_limit(format!("group order {order}"), opts.max_group_order));
    }
    let cap = opts.enumeration_cap();
    let case = match &spec.construction {
        Construction::Action { base, graph } => {
            if graph.vertex_count() > opts.max_vertices {
                return Err(Error::size_limit(
                    format!("{} vertices", graph.vertex_count()),
                    opts.max_vertices as u128,
                ));
            }
            TransitiveCase::new(spec.group.clone(), graph.clone(), *base, cap)?
        }
        Construction::Coset { .. } => {
            let coset_spec = spec.coset_graph_spec().expect("coset construction");
            let built = build_coset_graph(&coset_spec, cap)?;
            if built.case.vertex_count() > opts.max_vertices {
                return Err(Error::size_limit(
                    format!("{} vertices", built.case.vertex_count()),
                    opts.max_vertices as u128,
                ));
            }
            built.case
        }
    };
    Ok(case)
}

pub fn analyze(spec: &CaseSpec, opts: &AnalyzeOptions) -> Result<CaseReport> {
    let build = || -> Result<(TransitiveCase, BipartiteAdjacency)> {
        let case = build_case(spec, opts)?;
        let adj = build_bipartite(case.connection_set(), case.vertex_count())?;
        Ok((case, adj))
    };
    let (case, adj) = build().map_err(|e| e.in_case(&spec.name))?;
    analyze_case(&spec.name, &case, &adj, opts).map_err(|e| e.in_case(&spec.name))
}

/// Checks on an already built case and its `𝒜`.
pub fn analyze_case(
    name: &str,
    case: &TransitiveCase,
    adj: &BipartiteAdjacency,
    opts: &AnalyzeOptions,
) -> Result<CaseReport> {
    let n = case.vertex_count();
    let s = case.connection_set();

    let sabidussi_ok = verify_sabidussi(case).is_equivalent();
    let local = local_action(case);

    let spectral_opts = SpectralOptions {
        keep_vectors_up_to: opts.svd_max_vertices,
        power_tol: opts.power_tol,
        power_max_iter: opts.power_max_iter,
        ..SpectralOptions::default()
    };
    let summary = singular_values_with(adj, &spectral_opts)?;
    let (lambda1, lambda2) = (summary.lambda1(), summary.lambda2());

    let first_singular_value = verify_lemma3_regular(adj, &summary, case, opts.tol);
    let zero_sum = verify_zero_sum_norm(adj, lambda2, opts.zero_sum_trials, opts.seed.wrapping_add(2), opts.tol);
    let iterative = match summary.method {
        SpectralMethod::DenseEigen => {
            let (it, residual) = lambda2_with_residual(adj, opts.power_tol, opts.power_max_iter)?;
            IterativeCheck { lambda2: it, residual, matches_dense: close_scaled(it, lambda2, opts.iterative_tol) }
        }
        SpectralMethod::PowerIteration => {
            IterativeCheck { lambda2, residual: summary.residual, matches_dense: true }
        }
    };
    let lemma3_ok = first_singular_value.ok && zero_sum.ok && iterative.matches_dense;

    let eq2 = verify_eq2(s, adj, opts.eq2_trials, opts.seed)?;
    let pool: Vec<Permutation> = match case.group().enumerate(LEMMA4_POOL_CAP) {
        Ok(all) => all,
        Err(Error::SizeLimit { .. }) => s.elements().cloned().collect(),
        Err(e) => return Err(e),
    };
    let lemma4 = verify_lemma4(n, opts.lemma4_trials, &pool, opts.seed.wrapping_add(1))?;

    let svd = if n <= opts.svd_max_vertices && summary.vectors.is_some() {
        Some(verify_svd_reconstruction(&summary, adj)?)
    } else {
        None
    };
    let svd_ok = svd.is_none_or(|c| c.worst() <= 1e-8);

    let cauchy_schwarz = cauchy_schwarz_step(case)?;
    let chain = evaluate_chain(case, adj, lambda2)?;
    let bound = decide_prop5(name, case, lambda1, lambda2, opts.tol)?;

    let local_consistent = local.criteria_agree;
    let normative_ok = sabidussi_ok
        && eq2.ok
        && lemma3_ok
        && lemma4.ok
        && bound.cauchy_schwarz_ok
        && chain.ok
        && bound.disjunction_ok
        && bound.converse_ok
        && bound.small_case_ok
        && local_consistent
        && svd_ok;

    Ok(CaseReport {
        name: name.to_string(),
        n_vertices: n,
        valency_k: case.valency(),
        group_order: case.group().order(),
        stabilizer_order: case.stabilizer_order(),
        s_size: s.len(),
        n_double_cosets: local.double_coset_count,
        locally_transitive: local.locally_transitive,
        locally_primitive: local.locally_primitive,
        lambda1,
        lambda2,
        sabidussi_ok,
        eq2_ok: eq2.ok,
        lemma3_ok,
        lemma4_ok: lemma4.ok,
        cauchy_schwarz_ok: bound.cauchy_schwarz_ok,
        chain_ok: chain.ok,
        prop5_branch: bound.branch.as_str(),
        proof_form_ok: bound.proof_form_ok,
        statement_form_ok: bound.statement_form_ok,
        converse_ok: bound.converse_ok,
        small_case_factorial_ok: bound.small_case_ok,
        seed: opts.seed,
        local_consistent,
        svd_ok,
        normative_ok,
        singular_values: summary.values.clone(),
        spectral_method: summary.method,
        spectral_residual: summary.residual,
        first_singular_value,
        zero_sum,
        iterative,
        eq2,
        lemma4,
        svd,
        local,
        cauchy_schwarz,
        chain,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::permgroup::PermutationGroup;

    fn k3() -> CaseSpec {
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        CaseSpec::action("K3", PermutationGroup::symmetric(3), g, 0)
    }

    #[test]
    fn k3_row() {
        let r = analyze(&k3(), &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.n_vertices, r.valency_k, r.stabilizer_order, r.s_size), (3, 2, 2, 4));
        assert!((r.lambda1 - 4.0).abs() < 1e-12 && (r.lambda2 - 2.0).abs() < 1e-12);
        assert!(r.locally_transitive);
        assert_eq!(r.prop5_branch, "small-graph");
        assert!(r.normative_ok, "{r:#?}");
    }

    #[test]
    fn not_transitive_is_reported() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let gen = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let spec = CaseSpec::action("two-edges", PermutationGroup::new(4, vec![gen]).unwrap(), g, 0);
        let err = analyze(&spec, &AnalyzeOptions::default()).unwrap_err();
        assert!(err.to_string().contains("action not vertex-transitive"), "{err}");
        assert!(err.to_string().contains("two-edges"), "{err}");
    }

    #[test]
    fn group_order_cap() {
        let opts = AnalyzeOptions { max_group_order: 5, ..AnalyzeOptions::default() };
        let err = analyze(&k3(), &opts).unwrap_err();
        assert!(matches!(err, Error::Case { ref source, .. } if matches!(**source, Error::SizeLimit { .. })));
    }

    #[test]
    fn document_overrides() {
        let doc = CaseOptions { seed: Some(9), tol: None, max_vertices: Some(10), max_group_order: None };
        let o = AnalyzeOptions::default().overridden_by(&doc);
        assert_eq!((o.seed, o.max_vertices, o.tol), (9, 10, 1e-9));
    }
}
