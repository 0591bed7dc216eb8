use std::collections::{BTreeSet, VecDeque};

use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// `HaH`, by closing `{a}` under left and right multiplication by the
/// generators of `H`. The ambient group is never materialized.
pub fn double_coset(
    h: &PermutationGroup,
    a: &Permutation,
    cap: usize,
) -> Result<BTreeSet<Permutation>> {
    if a.degree() != h.degree() {
        return Err(Error::DegreeMismatch { expected: h.degree(), found: a.degree() });
    }
    close_under(h, a, |set| {
        if set.len() > cap {
            Err(Error::size_limit("double coset", cap as u128))
        } else {
            Ok(())
        }
    }, |_| Ok(()))
}

fn close_under(
    h: &PermutationGroup,
    a: &Permutation,
    mut check_size: impl FnMut(&BTreeSet<Permutation>) -> Result<()>,
    mut check_elem: impl FnMut(&Permutation) -> Result<()>,
) -> Result<BTreeSet<Permutation>> {
    check_elem(a)?;
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    let gens: Vec<&Permutation> = h.generators().iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = queue.pop_front() {
        for t in &gens {
            for y in [t.mul(&x), x.mul(t)] {
                if !seen.contains(&y) {
                    check_elem(&y)?;
                    seen.insert(y.clone());
                    check_size(&seen)?;
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen)
}

/// A set of permutations together with the subgroup `H` it is meant to be
/// bi-invariant under: the `S` (or `A`) of a coset graph.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    degree: usize,
    elements: BTreeSet<Permutation>,
    subgroup: PermutationGroup,
}

impl ConnectionSet {
    /// Wraps the elements without checking bi-invariance or inverse closure.
    pub fn new(
        subgroup: PermutationGroup,
        elements: impl IntoIterator<Item = Permutation>,
    ) -> Result<Self> {
        let degree = subgroup.degree();
        let elements: BTreeSet<Permutation> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        Ok(ConnectionSet { degree, elements, subgroup })
    }

    /// Union of the double cosets `H r H` for the given representatives.
    pub fn from_representatives(
        subgroup: PermutationGroup,
        reps: &[Permutation],
        cap: usize,
    ) -> Result<Self> {
        let mut elements = BTreeSet::new();
        for r in reps {
            let dc = double_coset(&subgroup, r, cap)?;
            elements.extend(dc);
            if elements.len() > cap {
                return Err(Error::size_limit("connection set", cap as u128));
            }
        }
        ConnectionSet::new(subgroup, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.subgroup
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Permutation> + Clone {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.contains(g)
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.elements.iter().all(|s| self.elements.contains(&s.inverse()))
    }

    /// True when some element lies in the subgroup. For a bi-invariant set
    /// this is equivalent to containing the identity.
    pub fn meets_subgroup(&self) -> bool {
        self.elements.iter().any(|s| self.subgroup.contains(s))
    }

    /// Lexicographically least representative of each double coset, in
    /// increasing order. Fails if some double coset leaves the set.
    pub fn double_coset_representatives(&self) -> Result<Vec<Permutation>> {
        let mut covered: BTreeSet<&Permutation> = BTreeSet::new();
        let mut reps = Vec::new();
        for s in &self.elements {
            if covered.contains(s) {
                continue;
            }
            let dc = close_under(&self.subgroup, s, |_| Ok(()), |y| {
                if self.elements.contains(y) {
                    Ok(())
                } else {
                    Err(Error::NotBiInvariant(format!("H{s}H contains {y}, which is not in the set")))
                }
            })?;
            for y in &dc {
                covered.insert(self.elements.get(y).unwrap());
            }
            reps.push(s.clone());
        }
        Ok(reps)
    }

    pub fn is_bi_invariant(&self) -> bool {
        self.double_coset_representatives().is_ok()
    }
}

/// Free-function form of [`ConnectionSet::double_coset_representatives`]
/// with an explicit subgroup.
pub fn decompose_double_cosets(
    s: &ConnectionSet,
    h: &PermutationGroup,
) -> Result<Vec<Permutation>> {
    ConnectionSet::new(h.clone(), s.elements().cloned())?.double_coset_representatives()
}
