use super::{check_action, SimpleGraph};
use crate::error::{Error, Result};
use crate::permgroup::{ConnectionSet, Permutation, PermutationGroup};

/// A group acting vertex-transitively by automorphisms on a graph, with the
/// base vertex `v`, its stabilizer `G_v`, and the connection set
/// `S = {g : g(v) ∈ Γ(v)}`.
#[derive(Clone, Debug)]
pub struct TransitiveCase {
    group: PermutationGroup,
    graph: SimpleGraph,
    base: usize,
    stabilizer: PermutationGroup,
    connection: ConnectionSet,
    valency: usize,
}

impl TransitiveCase {
    /// Validates the action and extracts `G_v` and `S`. `cap` bounds `|S|`.
    pub fn new(group: PermutationGroup, graph: SimpleGraph, base: usize, cap: usize) -> Result<Self> {
        check_action(&group, &graph)?;
        let n = graph.vertex_count();
        if base >= n {
            return Err(Error::PointOutOfRange { point: base, degree: n });
        }
        let orbit = group.orbit(base)?.len();
        if orbit != n {
            return Err(Error::NotTransitive { point: base, orbit, degree: n });
        }
        let valency = graph.neighbors(base).len();
        if valency == 0 {
            return Err(Error::ZeroValency);
        }
        debug_assert_eq!(graph.regular_valency(), Some(valency));
        let stabilizer = group.stabilizer(base)?;
        let connection = connection_set_from_cosets(&group, &graph, base, &stabilizer, cap)?;
        debug_assert_eq!(connection.len() as u128, valency as u128 * stabilizer.order());
        Ok(TransitiveCase { group, graph, base, stabilizer, connection, valency })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn stabilizer(&self) -> &PermutationGroup {
        &self.stabilizer
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.connection
    }

    /// `k`.
    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn stabilizer_order(&self) -> u128 {
        self.stabilizer.order()
    }

    /// Swaps in a different connection set without re-validation. Only
    /// useful for probing the verifiers with a broken `S`.
    pub fn with_connection_set(mut self, connection: ConnectionSet) -> Self {
        self.connection = connection;
        self
    }

    /// `{s(v) : s ∈ S}`, sorted.
    pub fn connection_image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.connection.elements().map(|s| s.apply(self.base)).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// `S = ⋃_{w ∈ Γ(v)} t_w G_v`, where `t_w(v) = w`.
fn connection_set_from_cosets(
    group: &PermutationGroup,
    graph: &SimpleGraph,
    base: usize,
    stabilizer: &PermutationGroup,
    cap: usize,
) -> Result<ConnectionSet> {
    let k = graph.neighbors(base).len() as u128;
    let size = k * stabilizer.order();
    if size > cap as u128 {
        return Err(Error::size_limit(format!("connection set of size {size}"), cap as u128));
    }
    let stab = stabilizer.enumerate(cap)?;
    let transversal = group.orbit_transversal(base)?;
    let mut elements = Vec::with_capacity(size as usize);
    for &w in graph.neighbors(base) {
        let t = transversal[w].as_ref().expect("transitive");
        elements.extend(stab.iter().map(|h| t.mul(h)));
    }
    ConnectionSet::new(stabilizer.clone(), elements)
}

/// `S = {g ∈ G : g(v) ∈ Γ(v)}` as a connection set over `G_v`.
pub fn extract_connection_set(
    group: &PermutationGroup,
    graph: &SimpleGraph,
    base: usize,
    cap: usize,
) -> Result<ConnectionSet> {
    let case = TransitiveCase::new(group.clone(), graph.clone(), base, cap)?;
    Ok(case.connection)
}

/// Result of comparing `Cos(G, G_v, S)` with `Γ` under `x G_v ↦ x(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SabidussiOutcome {
    Equivalent,
    /// A stabilizer generator moves the base vertex, so the map is not
    /// well defined.
    NotWellDefined { generator: usize },
    /// `|G| ≠ |V| · |G_v|`: cosets and vertices are not in bijection.
    NotBijective { group_order: u128, vertices: usize, stabilizer_order: u128 },
    /// Adjacency differs on the pair `{a, b}`.
    EdgeMismatch { a: usize, b: usize, in_coset_graph: bool, in_graph: bool },
}

impl SabidussiOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SabidussiOutcome::Equivalent)
    }
}

/// Checks that `x G_v ↦ x(v)` is a well-defined bijection from the left
/// cosets of `G_v` onto `V` carrying `Cos(G, G_v, S)` onto `Γ` exactly.
/// The coset `t_a G_v` is represented by the Schreier-tree element with
/// `t_a(v) = a`.
pub fn verify_sabidussi(case: &TransitiveCase) -> SabidussiOutcome {
    let v = case.base;
    let n = case.vertex_count();
    if let Some(i) = case.stabilizer.generators().iter().position(|h| h.apply(v) != v) {
        return SabidussiOutcome::NotWellDefined { generator: i };
    }
    let group_order = case.group.order();
    let stabilizer_order = case.stabilizer.order();
    if group_order != n as u128 * stabilizer_order {
        return SabidussiOutcome::NotBijective { group_order, vertices: n, stabilizer_order };
    }
    let transversal: Vec<Permutation> = case
        .group
        .orbit_transversal(v)
        .expect("base in range")
        .into_iter()
        .map(|t| t.expect("transitive"))
        .collect();
    let inverses: Vec<Permutation> = transversal.iter().map(Permutation::inverse).collect();
    let mut image = vec![false; n];
    for s in case.connection.elements() {
        image[s.apply(v)] = true;
    }
    for a in 0..n {
        for b in a + 1..n {
            // t_a⁻¹ t_b sends v to t_a⁻¹(b); no element of S can do so unless
            // that point is in S(v).
            let in_coset_graph = image[inverses[a].apply(b)]
                && case.connection.contains(&inverses[a].mul(&transversal[b]));
            let in_graph = case.graph.has_edge(a, b);
            if in_coset_graph != in_graph {
                return SabidussiOutcome::EdgeMismatch { a, b, in_coset_graph, in_graph };
            }
        }
    }
    SabidussiOutcome::Equivalent
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    pub(crate) fn k3_case() -> TransitiveCase {
        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        TransitiveCase::new(PermutationGroup::symmetric(3), g, 0, 1000).unwrap()
    }

    fn c4_cyclic_case() -> TransitiveCase {
        let g = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        TransitiveCase::new(PermutationGroup::cyclic(4), g, 0, 1000).unwrap()
    }

    fn petersen_case() -> TransitiveCase {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let gens = PermutationGroup::symmetric(5)
            .generators()
            .iter()
            .map(|g| Permutation::from_images(pairs.iter().map(|&(a, b)| idx(g.apply(a), g.apply(b))).collect()).unwrap())
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        let graph = SimpleGraph::from_edges(10, edges).unwrap();
        TransitiveCase::new(PermutationGroup::new(10, gens).unwrap(), graph, 0, 10_000).unwrap()
    }

    /// Filters the full element list by `g(v) ∈ Γ(v)`.
    fn brute_connection_set(case: &TransitiveCase) -> BTreeSet<Permutation> {
        let nbrs = case.graph().neighbors(case.base());
        case.group()
            .enumerate(1_000_000)
            .unwrap()
            .into_iter()
            .filter(|g| nbrs.contains(&g.apply(case.base())))
            .collect()
    }

    #[test]
    fn extract_k3() {
        let case = k3_case();
        let s: BTreeSet<_> = case.connection_set().elements().cloned().collect();
        let expected: BTreeSet<_> = [
            cyc(3, &[&[0, 1]]),
            cyc(3, &[&[0, 2]]),
            cyc(3, &[&[0, 1, 2]]),
            cyc(3, &[&[0, 2, 1]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(s, expected);
        assert_eq!(s, brute_connection_set(&case));
        assert_eq!(case.valency(), 2);
        assert_eq!(case.stabilizer_order(), 2);
    }

    #[test]
    fn extract_c4() {
        let case = c4_cyclic_case();
        let r = cyc(4, &[&[0, 1, 2, 3]]);
        let s: BTreeSet<_> = case.connection_set().elements().cloned().collect();
        assert_eq!(s, [r.clone(), r.inverse()].into_iter().collect());
        assert_eq!(s, brute_connection_set(&case));
    }

    #[test]
    fn extract_petersen() {
        let case = petersen_case();
        assert_eq!(case.connection_set().len(), 36);
        assert_eq!(case.valency(), 3);
        assert_eq!(case.stabilizer_order(), 12);
        let s: BTreeSet<_> = case.connection_set().elements().cloned().collect();
        assert_eq!(s, brute_connection_set(&case));
        assert!(case.connection_set().is_inverse_closed());
        assert!(case.connection_set().is_bi_invariant());
        assert_eq!(case.connection_image(), case.graph().neighbors(0));
    }

    #[test]
    fn extract_free_function() {
        let case = k3_case();
        let s = extract_connection_set(case.group(), case.graph(), 0, 100).unwrap();
        assert_eq!(s.len(), 4);
        let err = extract_connection_set(case.group(), case.graph(), 0, 3).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn rejects_bad_cases() {
        let path = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let err = TransitiveCase::new(PermutationGroup::trivial(3), path, 0, 100).unwrap_err();
        assert!(matches!(err, Error::NotTransitive { .. }));
        let err = TransitiveCase::new(PermutationGroup::cyclic(3), SimpleGraph::empty(3), 0, 100).unwrap_err();
        assert_eq!(err, Error::ZeroValency);
    }

    #[test]
    fn sabidussi_holds() {
        assert!(verify_sabidussi(&k3_case()).is_equivalent());
        assert!(verify_sabidussi(&c4_cyclic_case()).is_equivalent());
        assert!(verify_sabidussi(&petersen_case()).is_equivalent());
    }

    #[test]
    fn sabidussi_detects_dropped_double_coset() {
        let case = c4_cyclic_case();
        let r = cyc(4, &[&[0, 1, 2, 3]]);
        let broken = ConnectionSet::new(PermutationGroup::trivial(4), [r]).unwrap();
        let out = verify_sabidussi(&case.with_connection_set(broken));
        assert_eq!(out, SabidussiOutcome::EdgeMismatch { a: 0, b: 3, in_coset_graph: false, in_graph: true });
    }
}
