use serde::Serialize;

use super::TransitiveCase;
use crate::permgroup::Permutation;

/// How `G_v` acts on the neighbourhood `Γ(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalActionReport {
    pub orbit_count: usize,
    pub locally_transitive: bool,
    /// A non-trivial block system of `G_v` on `Γ(v)`, as vertex labels.
    pub block_system: Option<Vec<Vec<usize>>>,
    pub locally_primitive: bool,
    /// Number of `G_v`-double cosets in `S`.
    pub double_coset_count: usize,
    /// Whether "one orbit on `Γ(v)`" and "`S` is one double coset" agree.
    pub criteria_agree: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

pub(crate) fn orbit_count(n: usize, gens: &[Permutation]) -> usize {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for x in 0..n {
            uf.union(x, g.apply(x));
        }
    }
    uf.classes().len()
}

/// Finest invariant partition with `a` and `b` in one class.
pub(crate) fn minimal_blocks(n: usize, gens: &[Permutation], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    uf.classes()
}

/// Restricts `G_v` to `Γ(v)` and classifies the local action.
pub fn local_action(case: &TransitiveCase) -> LocalActionReport {
    let nbrs = case.graph().neighbors(case.base()).to_vec();
    let k = nbrs.len();
    let gens: Vec<Permutation> = case
        .stabilizer()
        .generators()
        .iter()
        .map(|h| h.restrict(&nbrs).expect("stabilizer preserves the neighbourhood"))
        .collect();
    let orbits = orbit_count(k, &gens);
    let locally_transitive = orbits == 1;
    let mut block_system = None;
    if locally_transitive {
        for b in 1..k {
            let classes = minimal_blocks(k, &gens, 0, b);
            if classes.len() > 1 {
                block_system = Some(
                    classes
                        .into_iter()
                        .map(|c| c.into_iter().map(|i| nbrs[i]).collect())
                        .collect(),
                );
                break;
            }
        }
    }
    let double_coset_count = case
        .connection_set()
        .double_coset_representatives()
        .map(|r| r.len())
        .unwrap_or(0);
    LocalActionReport {
        orbit_count: orbits,
        locally_transitive,
        locally_primitive: locally_transitive && block_system.is_none(),
        block_system,
        double_coset_count,
        criteria_agree: locally_transitive == (double_coset_count == 1),
    }
}
