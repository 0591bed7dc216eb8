use std::collections::VecDeque;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default element-enumeration cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A permutation group given by generators. The stabilizer chain backing
/// `order` and `contains` is built on first use.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermutationGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    /// `S_n` generated by `(0 1)` and `(0 1 … n-1)`.
    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return PermutationGroup::trivial(n);
        }
        let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap();
        PermutationGroup::new(n, vec![t, c]).unwrap()
    }

    /// Rotations of the `n`-cycle.
    pub fn cyclic(n: usize) -> Self {
        let r = Permutation::from_images_unchecked((0..n).map(|i| (i + 1) % n).collect());
        PermutationGroup::new(n, vec![r]).unwrap()
    }

    /// Rotations and reflections of the `n`-cycle.
    pub fn dihedral(n: usize) -> Self {
        let r = Permutation::from_images_unchecked((0..n).map(|i| (i + 1) % n).collect());
        let s = Permutation::from_images_unchecked((0..n).map(|i| (n - i) % n).collect());
        PermutationGroup::new(n, vec![r, s]).unwrap()
    }

    fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermutationGroup { degree, generators, chain: cell }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, self.generators.iter()))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p >= self.degree {
            return Err(Error::PointOutOfRange { point: p, degree: self.degree });
        }
        Ok(())
    }

    /// Orbit of `p`, sorted.
    pub fn orbit(&self, p: usize) -> Result<Vec<usize>> {
        let t = self.orbit_transversal(p)?;
        Ok((0..self.degree).filter(|&x| t[x].is_some()).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Schreier tree transversal: entry `x` is some `t` with `t(p) = x`, for
    /// every `x` in the orbit of `p`. Built breadth-first with generators in
    /// their given order.
    pub fn orbit_transversal(&self, p: usize) -> Result<Vec<Option<Permutation>>> {
        self.check_point(p)?;
        let mut t: Vec<Option<Permutation>> = vec![None; self.degree];
        t[p] = Some(Permutation::identity(self.degree));
        let mut queue = VecDeque::from([p]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if t[y].is_none() {
                    t[y] = Some(g.mul(t[x].as_ref().unwrap()));
                    queue.push_back(y);
                }
            }
        }
        Ok(t)
    }

    /// Point stabilizer via Schreier generators `t_{g(x)}⁻¹ ∘ g ∘ t_x`,
    /// keeping only those not already generated by the earlier ones.
    pub fn stabilizer(&self, p: usize) -> Result<PermutationGroup> {
        let t = self.orbit_transversal(p)?;
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        for x in 0..self.degree {
            let Some(tx) = &t[x] else { continue };
            for g in &self.generators {
                let ty = t[g.apply(x)].as_ref().unwrap();
                let y = ty.inverse().mul(&g.mul(tx));
                debug_assert_eq!(y.apply(p), p);
                if !y.is_identity() && chain.insert(&y) {
                    gens.push(y);
                }
            }
        }
        Ok(PermutationGroup::with_chain(self.degree, gens, chain))
    }

    /// All elements in lexicographic order of image arrays, or a size-limit
    /// error if the order exceeds `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::size_limit(format!("group order {order}"), cap as u128));
        }
        let mut els = self.chain().elements();
        els.sort_unstable();
        Ok(els)
    }

    /// Generators of the stabilizer chain; at least as many as needed to
    /// generate the group.
    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain().strong_generators()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Brute-force closure of the generators, independent of the chain.
    fn closure(degree: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
        let mut seen = BTreeSet::from([Permutation::identity(degree)]);
        let mut queue = VecDeque::from([Permutation::identity(degree)]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.mul(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// S_5 acting on the ten 2-subsets of {0..4}, indexed lexicographically.
    fn s5_on_pairs() -> PermutationGroup {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pairs.iter().position(|&p| p == (a, b)).unwrap()
        };
        let gens = PermutationGroup::symmetric(5)
            .generators()
            .iter()
            .map(|g| {
                Permutation::from_images(
                    pairs.iter().map(|&(a, b)| index(g.apply(a), g.apply(b))).collect(),
                )
                .unwrap()
            })
            .collect();
        PermutationGroup::new(10, gens).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let c4 = PermutationGroup::cyclic(4);
        assert_eq!(c4.orbit(0).unwrap(), vec![0, 1, 2, 3]);
        let g = PermutationGroup::new(3, vec![cyc(3, &[&[1, 2]])]).unwrap();
        assert_eq!(g.orbit(0).unwrap(), vec![0]);
        let s3 = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.orbit(2).unwrap(), vec![0, 1, 2]);
        assert!(matches!(s3.orbit(3), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn order_examples() {
        let s3 = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.order(), 6);
        let d4 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(closure(4, d4.generators()).len(), 8);
        assert_eq!(PermutationGroup::trivial(7).order(), 1);
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = PermutationGroup::symmetric(3);
        let st = s3.stabilizer(0).unwrap();
        assert_eq!(st.order(), 2);
        assert!(st.contains(&cyc(3, &[&[1, 2]])));
        let brute: Vec<_> = closure(3, s3.generators()).into_iter().filter(|g| g.apply(0) == 0).collect();
        assert_eq!(brute.len(), 2);

        let st = PermutationGroup::cyclic(4).stabilizer(0).unwrap();
        assert_eq!(st.order(), 1);

        let g = s5_on_pairs();
        assert_eq!(g.order(), 120);
        let st = g.stabilizer(0).unwrap();
        let brute = closure(10, g.generators()).into_iter().filter(|x| x.apply(0) == 0).count();
        assert_eq!(brute, 12);
        assert_eq!(st.order(), 12);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(PermutationGroup::symmetric(3).enumerate(10).unwrap().len(), 6);
        let g = s5_on_pairs();
        let els = g.enumerate(200).unwrap();
        assert_eq!(els.len(), 120);
        let brute: Vec<_> = closure(10, g.generators()).into_iter().collect();
        assert_eq!(els, brute);
        let err = PermutationGroup::symmetric(5).enumerate(50).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { cap: 50, .. }));
    }

    #[test]
    fn enumerate_is_sorted() {
        let els = PermutationGroup::dihedral(6).enumerate(100).unwrap();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn new_rejects_mixed_degrees() {
        let err = PermutationGroup::new(3, vec![Permutation::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }
}
