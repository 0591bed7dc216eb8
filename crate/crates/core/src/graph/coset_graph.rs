use std::collections::VecDeque;

use super::{SimpleGraph, TransitiveCase};
use crate::error::{Error, Result};
use crate::permgroup::{ConnectionSet, Permutation, PermutationGroup};

#[derive(Clone, Debug)]
pub enum Subgroup {
    Generators(Vec<Permutation>),
    StabilizerOf(usize),
}

#[derive(Clone, Debug)]
pub enum Connection {
    /// Double-coset representatives; `A` is the union of their double cosets.
    Representatives(Vec<Permutation>),
    /// `A` given element by element; must already be a union of double cosets.
    Elements(Vec<Permutation>),
}

/// Input to [`build_coset_graph`]: `G`, `H ≤ G`, and `A`.
#[derive(Clone, Debug)]
pub struct CosetGraphSpec {
    pub group: PermutationGroup,
    pub subgroup: Subgroup,
    pub connection: Connection,
}

/// `Cos(G, H, A)` together with the induced action of `G` on the cosets.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    /// `transversal[i]` represents the coset that is vertex `i`; vertex 0 is `H`.
    pub transversal: Vec<Permutation>,
    /// `A` as a connection set over `H`, in the original degree.
    pub connection: ConnectionSet,
    pub case: TransitiveCase,
}

impl CosetGraph {
    pub fn graph(&self) -> &SimpleGraph {
        self.case.graph()
    }
}

/// Builds `Cos(G, H, A)`: vertices are the left cosets `xH`, and `xH ~ yH`
/// iff `x⁻¹y ∈ A`. Coset representatives come from a breadth-first walk
/// from `H` using the generators of `G` in order. `cap` bounds the number of
/// cosets and the size of `A`.
pub fn build_coset_graph(spec: &CosetGraphSpec, cap: usize) -> Result<CosetGraph> {
    let group = &spec.group;
    let degree = group.degree();
    let subgroup = match &spec.subgroup {
        Subgroup::Generators(gens) => PermutationGroup::new(degree, gens.clone())?,
        Subgroup::StabilizerOf(p) => group.stabilizer(*p)?,
    };
    for g in subgroup.generators() {
        if !group.contains(g) {
            return Err(Error::InvalidGraph(format!("subgroup generator {g} is not in the group")));
        }
    }
    let connection = match &spec.connection {
        Connection::Representatives(reps) => {
            ConnectionSet::from_representatives(subgroup.clone(), reps, cap)?
        }
        Connection::Elements(els) => {
            let set = ConnectionSet::new(subgroup.clone(), els.iter().cloned())?;
            set.double_coset_representatives()?;
            set
        }
    };
    if let Some(bad) = connection.elements().find(|a| !group.contains(a)) {
        return Err(Error::InvalidGraph(format!("connection element {bad} is not in the group")));
    }
    if connection.is_empty() {
        return Err(Error::ZeroValency);
    }
    if connection.meets_subgroup() {
        return Err(Error::IdentityInConnection);
    }
    if !connection.is_inverse_closed() {
        return Err(Error::NotInverseClosed);
    }

    let index: u128 = group.order() / subgroup.order();
    if index > cap as u128 {
        return Err(Error::size_limit(format!("{index} cosets"), cap as u128));
    }
    let (transversal, action) = coset_action(group, &subgroup);

    let inverses: Vec<Permutation> = transversal.iter().map(Permutation::inverse).collect();
    let mut edges = Vec::new();
    for (i, xi) in inverses.iter().enumerate() {
        for (j, y) in transversal.iter().enumerate().skip(i + 1) {
            if connection.contains(&xi.mul(y)) {
                edges.push((i, j));
            }
        }
    }
    let graph = SimpleGraph::from_edges(transversal.len(), edges)?;
    let induced = PermutationGroup::new(transversal.len(), action)?;
    let case = TransitiveCase::new(induced, graph, 0, cap)?;
    Ok(CosetGraph { transversal, connection, case })
}

/// Left-multiplication action of `G` on the cosets of `H`.
fn coset_action(group: &PermutationGroup, subgroup: &PermutationGroup) -> (Vec<Permutation>, Vec<Permutation>) {
    let gens = group.generators();
    let mut reps = vec![Permutation::identity(group.degree())];
    let mut rep_inverses = vec![Permutation::identity(group.degree())];
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let y = g.mul(&reps[i]);
            let j = match rep_inverses.iter().position(|r| subgroup.contains(&r.mul(&y))) {
                Some(j) => j,
                None => {
                    rep_inverses.push(y.inverse());
                    reps.push(y);
                    queue.push_back(reps.len() - 1);
                    reps.len() - 1
                }
            };
            if images[gi].len() <= i {
                images[gi].resize(i + 1, usize::MAX);
            }
            images[gi][i] = j;
        }
    }
    let n = reps.len();
    let action = images
        .into_iter()
        .map(|mut im| {
            im.resize(n, usize::MAX);
            Permutation::from_images(im).expect("generators permute cosets")
        })
        .collect();
    (reps, action)
}
