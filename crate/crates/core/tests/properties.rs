use proptest::prelude::*;

use cosetspec::graph::{SimpleGraph, TransitiveCase};
use cosetspec::harmonic::{convolve, GroupFunction, VertexFunction};
use cosetspec::permgroup::{Permutation, PermutationGroup};
use cosetspec::report::format_g12;
use cosetspec::spectral::{build_bipartite, singular_values};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

/// `Cay(Z_n, {±1, ±j})` under the regular translation action.
fn circulant(n: usize, j: usize) -> TransitiveCase {
    let mut edges = Vec::new();
    for x in 0..n {
        for d in [1, j] {
            let y = (x + d) % n;
            if x != y && !edges.contains(&(y.min(x), y.max(x))) {
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    let graph = SimpleGraph::from_edges(n, edges).unwrap();
    TransitiveCase::new(PermutationGroup::cyclic(n), graph, 0, 10_000).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_associativity(a in perm(6), b in perm(6), c in perm(6)) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn orbit_stabilizer((n, g) in gens(), p in 0usize..7) {
        let p = p % n;
        let group = PermutationGroup::new(n, g).unwrap();
        let orbit = group.orbit(p).unwrap();
        let stab = group.stabilizer(p).unwrap();
        prop_assert_eq!(group.order(), orbit.len() as u128 * stab.order());
        let all = group.enumerate(10_000).unwrap();
        prop_assert_eq!(all.len() as u128, group.order());
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(all.iter().all(|x| group.contains(x)));
    }

    #[test]
    fn convolution_preserves_mass(
        (n, g) in gens(),
        weights in prop::collection::vec(0.01f64..1.0, 3),
        nu in prop::collection::vec(-5.0f64..5.0, 7),
    ) {
        let group = PermutationGroup::new(n, g).unwrap();
        let els = group.enumerate(10_000).unwrap();
        let support: Vec<_> = els.into_iter().zip(&weights).map(|(x, &w)| (x, w)).collect();
        let mu = GroupFunction::new(n, support).unwrap();
        let nu = VertexFunction(nu[..n].to_vec());
        let out = convolve(&mu, &nu).unwrap();
        let expect = mu.total() * nu.sum();
        prop_assert!((out.sum() - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
    }

    #[test]
    fn circulant_spectrum(n in 5usize..40, j in 2usize..6, f in prop::collection::vec(-1.0f64..1.0, 40)) {
        let case = circulant(n, j);
        let adj = build_bipartite(case.connection_set(), n).unwrap();
        prop_assert_eq!(adj.row_degree(), Some(case.valency() as u64));
        let summary = singular_values(&adj).unwrap();
        prop_assert!((summary.lambda1() - case.valency() as f64).abs() < 1e-9);

        let mut f = f[..n].to_vec();
        let mean = f.iter().sum::<f64>() / n as f64;
        f.iter_mut().for_each(|x| *x -= mean);
        let nf = f.iter().map(|x| x * x).sum::<f64>().sqrt();
        let na = adj.apply(&f).iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!(na <= summary.lambda2() * nf * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn g12_round_trip(x in prop::num::f64::NORMAL) {
        let back: f64 = format_g12(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs());
    }
}
