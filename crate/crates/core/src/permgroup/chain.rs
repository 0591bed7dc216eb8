//! Deterministic Schreier–Sims stabilizer chain with base `0, 1, 2, …`.
//!
//! Level `i` holds the strong generators fixing `0..i` and a transversal of
//! the basic orbit of point `i`. Levels whose basic orbit is trivial are kept
//! (they cost one slot each) so that level index and base point coincide.

use super::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[point] = 0;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            slot,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
        }
    }

    fn rep_inverse(&self, beta: usize) -> Option<&Permutation> {
        match self.slot[beta] {
            NONE => None,
            i => Some(&self.inv_reps[i as usize]),
        }
    }

    fn rep(&self, beta: usize) -> &Permutation {
        &self.reps[self.slot[beta] as usize]
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        // Orbits only grow; rescan every known point against every generator.
        let mut idx = 0;
        while idx < self.orbit.len() {
            let beta = self.orbit[idx];
            for s in 0..self.gens.len() {
                let gamma = self.gens[s].apply(beta);
                if self.slot[gamma] == NONE {
                    let u = self.gens[s].mul(&self.reps[self.slot[beta] as usize]);
                    self.slot[gamma] = self.reps.len() as u32;
                    self.inv_reps.push(u.inverse());
                    self.reps.push(u);
                    self.orbit.push(gamma);
                }
            }
            idx += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize) -> Self {
        StabChain { degree, levels: Vec::new() }
    }

    pub(crate) fn from_generators<'a>(
        degree: usize,
        gens: impl IntoIterator<Item = &'a Permutation>,
    ) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where stripping stopped (`levels.len()` if it ran to the end).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.apply(level.point);
            match level.rep_inverse(beta) {
                None => return (h, l),
                Some(u_inv) => h = u_inv.mul(&h),
            }
        }
        (h, self.levels.len())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    fn ensure_levels(&mut self, upto: usize) {
        while self.levels.len() <= upto {
            let p = self.levels.len();
            self.levels.push(Level::new(p, self.degree));
        }
    }

    /// Adds `g` to the group. Returns false when `g` was already a member.
    pub(crate) fn insert(&mut self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        let (h, _) = self.sift(g, 0);
        let Some(fm) = h.first_moved() else {
            return false;
        };
        self.ensure_levels(fm);
        for l in 0..=fm {
            self.levels[l].add_gen(h.clone());
        }
        self.complete(fm);
        true
    }

    /// Restores the Schreier–Sims condition on levels `0..=start`, assuming
    /// every level above `start` is already complete.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.missing_schreier_generator(lvl) {
                Some(h) => {
                    let fm = h.first_moved().expect("non-identity residue");
                    debug_assert!(fm > lvl);
                    self.ensure_levels(fm);
                    for l in lvl + 1..=fm {
                        self.levels[l].add_gen(h.clone());
                    }
                    i = fm as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn missing_schreier_generator(&self, lvl: usize) -> Option<Permutation> {
        let level = &self.levels[lvl];
        for &beta in &level.orbit {
            let u_beta = level.rep(beta);
            for s in &level.gens {
                let gamma = s.apply(beta);
                let u_gamma_inv = level.rep_inverse(gamma).expect("orbit closed");
                let y = u_gamma_inv.mul(&s.mul(u_beta));
                if y.is_identity() {
                    continue;
                }
                let (h, _) = self.sift(&y, lvl + 1);
                if !h.is_identity() {
                    return Some(h);
                }
            }
        }
        None
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators of the full group (level 0), or empty for the
    /// trivial group.
    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    /// All elements as products `u_0 ∘ u_1 ∘ … ∘ u_last`, unsorted.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            if level.reps.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(acc.len() * level.reps.len());
            for u in &level.reps {
                for x in &acc {
                    next.push(u.mul(x));
                }
            }
            acc = next;
        }
        acc
    }
}
