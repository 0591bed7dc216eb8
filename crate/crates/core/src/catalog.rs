//! Built-in families of vertex-transitive cases.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::case_doc::CaseSpec;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::permgroup::{Permutation, PermutationGroup};
use crate::pipeline::{analyze, AnalyzeOptions, CaseReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    CyclesDihedral,
    CyclesCyclic,
    Complete,
    Kneser,
    Johnson,
    HypercubeTranslation,
    CayleySmall,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::CyclesDihedral,
        FamilyKind::CyclesCyclic,
        FamilyKind::Complete,
        FamilyKind::Kneser,
        FamilyKind::Johnson,
        FamilyKind::HypercubeTranslation,
        FamilyKind::CayleySmall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::CyclesDihedral => "cycles-dihedral",
            FamilyKind::CyclesCyclic => "cycles-cyclic",
            FamilyKind::Complete => "complete",
            FamilyKind::Kneser => "kneser",
            FamilyKind::Johnson => "johnson",
            FamilyKind::HypercubeTranslation => "hypercube-translation",
            FamilyKind::CayleySmall => "cayley-small",
        }
    }

    /// The default parameter range; `n` for cycles, complete graphs, Kneser
    /// and Johnson graphs (subsets of size 2), `d` for hypercubes.
    fn default_range(self) -> Option<RangeInclusive<usize>> {
        match self {
            FamilyKind::CyclesDihedral | FamilyKind::CyclesCyclic => Some(3..=10),
            FamilyKind::Complete => Some(3..=6),
            FamilyKind::Kneser => Some(5..=7),
            FamilyKind::Johnson => Some(4..=7),
            FamilyKind::HypercubeTranslation => Some(1..=9),
            FamilyKind::CayleySmall => None,
        }
    }

    fn min_param(self) -> usize {
        match self {
            FamilyKind::CyclesDihedral | FamilyKind::CyclesCyclic | FamilyKind::Complete => 3,
            FamilyKind::Kneser => 5,
            FamilyKind::Johnson => 4,
            FamilyKind::HypercubeTranslation => 1,
            FamilyKind::CayleySmall => 0,
        }
    }
}

/// A family with its parameter range, written `name` or `name:lo..hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogFamily {
    pub kind: FamilyKind,
    pub range: Option<RangeInclusive<usize>>,
}

impl CatalogFamily {
    pub fn new(kind: FamilyKind) -> Self {
        CatalogFamily { kind, range: kind.default_range() }
    }

    pub fn all() -> Vec<CatalogFamily> {
        FamilyKind::ALL.into_iter().map(CatalogFamily::new).collect()
    }

    pub fn cases(&self) -> Result<Vec<CaseSpec>> {
        let params = self.range.clone().unwrap_or(0..=0);
        let mut out = Vec::new();
        match self.kind {
            FamilyKind::CyclesDihedral => {
                for n in params {
                    out.push(CaseSpec::action(format!("cycle-dihedral-{n}"), PermutationGroup::dihedral(n), cycle(n)?, 0));
                }
            }
            FamilyKind::CyclesCyclic => {
                for n in params {
                    out.push(CaseSpec::action(format!("cycle-cyclic-{n}"), PermutationGroup::cyclic(n), cycle(n)?, 0));
                }
            }
            FamilyKind::Complete => {
                for n in params {
                    let g = SimpleGraph::from_edges(n, pairs(n))?;
                    out.push(CaseSpec::action(format!("complete-{n}"), PermutationGroup::symmetric(n), g, 0));
                }
            }
            FamilyKind::Kneser => {
                for n in params.clone() {
                    out.push(subset_case(format!("kneser-{n}-2"), n, |a, b| a[0] != b[0] && a[0] != b[1] && a[1] != b[0] && a[1] != b[1])?);
                }
                if params.contains(&5) {
                    out.push(petersen_coset()?);
                }
            }
            FamilyKind::Johnson => {
                for n in params {
                    out.push(subset_case(format!("johnson-{n}-2"), n, |a, b| {
                        a != b && (a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1])
                    })?);
                }
            }
            FamilyKind::HypercubeTranslation => {
                for d in params {
                    out.push(hypercube(d)?);
                }
            }
            FamilyKind::CayleySmall => out.extend(cayley_small()?),
        }
        Ok(out)
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.range {
            Some(r) => write!(f, "{}:{}..{}", self.kind.name(), r.start(), r.end()),
            None => f.write_str(self.kind.name()),
        }
    }
}

impl FromStr for CatalogFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, range) = match s.split_once(':') {
            Some((name, range)) => (name, Some(range)),
            None => (s, None),
        };
        let kind = FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown family `{name}`")))?;
        let Some(range) = range else {
            return Ok(CatalogFamily::new(kind));
        };
        if kind.default_range().is_none() {
            return Err(Error::Parse(format!("family `{name}` takes no parameter range")));
        }
        let bad = || Error::Parse(format!("bad range `{range}` for `{name}`; expected lo..hi or a single value"));
        let (lo, hi) = match range.split_once("..") {
            Some((lo, hi)) => (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?),
            None => {
                let v: usize = range.parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi || lo < kind.min_param() {
            return Err(Error::Parse(format!(
                "range `{range}` for `{name}` must be non-empty and start at {} or more",
                kind.min_param()
            )));
        }
        Ok(CatalogFamily { kind, range: Some(lo..=hi) })
    }
}

/// Comma-separated families; the empty string and `all` are accepted.
pub fn parse_families(list: &str) -> Result<Vec<CatalogFamily>> {
    let list = list.trim();
    if list == "all" {
        return Ok(CatalogFamily::all());
    }
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

pub fn catalog_cases(families: &[CatalogFamily]) -> Result<Vec<CaseSpec>> {
    let mut out = Vec::new();
    for f in families {
        out.extend(f.cases()?);
    }
    Ok(out)
}

/// A report row, or the error that stopped the case.
#[derive(Clone, Debug)]
pub enum CaseOutcome {
    Ok(Box<CaseReport>),
    Failed { name: String, error: Error },
}

impl CaseOutcome {
    pub fn name(&self) -> &str {
        match self {
            CaseOutcome::Ok(r) => &r.name,
            CaseOutcome::Failed { name, .. } => name,
        }
    }
}

/// Analyzes every case, `jobs` at a time (0 = one per core). Rows come back
/// in case order whatever the scheduling.
pub fn run_cases(cases: &[CaseSpec], opts: &AnalyzeOptions, jobs: usize) -> Result<Vec<CaseOutcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        cases
            .par_iter()
            .map(|spec| {
                let opts = opts.clone().overridden_by(&spec.options);
                match analyze(spec, &opts) {
                    Ok(r) => CaseOutcome::Ok(Box::new(r)),
                    Err(error) => CaseOutcome::Failed { name: spec.name.clone(), error },
                }
            })
            .collect()
    }))
}

pub fn run_catalog(families: &[CatalogFamily], opts: &AnalyzeOptions, jobs: usize) -> Result<Vec<CaseOutcome>> {
    run_cases(&catalog_cases(families)?, opts, jobs)
}

fn cycle(n: usize) -> Result<SimpleGraph> {
    SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// `S_n` on the 2-subsets of `0..n`, with `adjacent` deciding the edges.
fn subset_case(name: String, n: usize, adjacent: impl Fn([usize; 2], [usize; 2]) -> bool) -> Result<CaseSpec> {
    let subsets: Vec<[usize; 2]> = pairs(n).map(|(i, j)| [i, j]).collect();
    let index = |mut s: [usize; 2]| {
        s.sort_unstable();
        subsets.binary_search(&s).expect("2-subset")
    };
    let gens = PermutationGroup::symmetric(n)
        .generators()
        .iter()
        .map(|g| Permutation::from_images(subsets.iter().map(|s| index([g.apply(s[0]), g.apply(s[1])])).collect()))
        .collect::<Result<Vec<_>>>()?;
    let group = PermutationGroup::new(subsets.len(), gens)?;
    let mut edges = Vec::new();
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate().skip(i + 1) {
            if adjacent(*a, *b) {
                edges.push((i, j));
            }
        }
    }
    Ok(CaseSpec::action(name, group, SimpleGraph::from_edges(subsets.len(), edges)?, 0))
}

/// The Petersen graph as `Cos(S_5, S_2 × S_3, H(0 2)(1 3)H)`.
fn petersen_coset() -> Result<CaseSpec> {
    let c = |cycles: &[&[usize]]| Permutation::from_cycles(5, cycles);
    let subgroup = vec![c(&[&[0, 1]])?, c(&[&[2, 3]])?, c(&[&[2, 3, 4]])?];
    let reps = vec![c(&[&[0, 2], &[1, 3]])?];
    Ok(CaseSpec::coset("kneser-5-2-coset", PermutationGroup::symmetric(5), subgroup, reps))
}

/// `(Z/2)^d` acting on itself by translation, with `Γ` the `d`-cube.
fn hypercube(d: usize) -> Result<CaseSpec> {
    let n = 1usize << d;
    let gens = (0..d)
        .map(|i| Permutation::from_images((0..n).map(|x| x ^ (1 << i)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let edges = (0..n).flat_map(|x| (0..d).map(move |i| (x, x ^ (1 << i)))).filter(|(x, y)| x < y);
    Ok(CaseSpec::action(
        format!("hypercube-translation-{d}"),
        PermutationGroup::new(n, gens)?,
        SimpleGraph::from_edges(n, edges)?,
        0,
    ))
}

/// Cayley graphs given as coset graphs over the trivial subgroup.
fn cayley_small() -> Result<Vec<CaseSpec>> {
    let c = |n: usize, cycles: &[&[usize]]| Permutation::from_cycles(n, cycles);
    let r4 = c(4, &[&[0, 1, 2, 3]])?;
    let s4 = c(4, &[&[1, 3]])?;
    Ok(vec![
        CaseSpec::coset(
            "cayley-s3-transpositions",
            PermutationGroup::symmetric(3),
            vec![],
            vec![c(3, &[&[0, 1]])?, c(3, &[&[1, 2]])?],
        ),
        CaseSpec::coset(
            "cayley-s4-adjacent",
            PermutationGroup::symmetric(4),
            vec![],
            vec![c(4, &[&[0, 1]])?, c(4, &[&[1, 2]])?, c(4, &[&[2, 3]])?],
        ),
        CaseSpec::coset(
            "cayley-a4",
            PermutationGroup::new(4, vec![c(4, &[&[0, 1, 2]])?, c(4, &[&[0, 1], &[2, 3]])?])?,
            vec![],
            vec![c(4, &[&[0, 1, 2]])?, c(4, &[&[0, 2, 1]])?, c(4, &[&[0, 1], &[2, 3]])?],
        ),
        CaseSpec::coset(
            "cayley-d4",
            PermutationGroup::new(4, vec![r4.clone(), s4.clone()])?,
            vec![],
            vec![r4.clone(), r4.inverse(), s4],
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::build_case;

    #[test]
    fn parse_family_lists() {
        assert!(parse_families("").unwrap().is_empty());
        assert_eq!(parse_families("all").unwrap().len(), 7);
        let f = parse_families("complete:3..4, kneser").unwrap();
        assert_eq!(f[0].range, Some(3..=4));
        assert_eq!(f[1].kind, FamilyKind::Kneser);
        assert_eq!(f[0].to_string(), "complete:3..4");
        assert!(parse_families("complete:5..4").is_err());
        assert!(parse_families("complete:2").is_err());
        assert!(parse_families("cayley-small:1..2").is_err());
        assert!(parse_families("petersen").is_err());
    }

    #[test]
    fn default_catalog_builds() {
        let cases = catalog_cases(&CatalogFamily::all()).unwrap();
        assert!(cases.len() >= 20);
        let opts = AnalyzeOptions::default();
        for spec in &cases {
            let case = build_case(spec, &opts).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
            assert!(case.group().is_transitive());
            assert!(crate::graph::verify_action(case.group(), case.graph()));
        }
    }

    #[test]
    fn family_shapes() {
        let opts = AnalyzeOptions::default();
        let shape = |list: &str| -> Vec<(usize, usize, u128)> {
            catalog_cases(&parse_families(list).unwrap())
                .unwrap()
                .iter()
                .map(|s| {
                    let c = build_case(s, &opts).unwrap();
                    (c.vertex_count(), c.valency(), c.stabilizer_order())
                })
                .collect()
        };
        assert_eq!(shape("kneser:5"), vec![(10, 3, 12), (10, 3, 12)]);
        // J(4,2) is the octahedron; S_4 fixes {0,1} in S_2 × S_2.
        assert_eq!(shape("johnson:4"), vec![(6, 4, 4)]);
        assert_eq!(shape("hypercube-translation:3"), vec![(8, 3, 1)]);
        assert_eq!(shape("cycles-dihedral:5"), vec![(5, 2, 2)]);
        assert_eq!(shape("cayley-small"), vec![(6, 2, 1), (24, 3, 1), (12, 3, 1), (8, 3, 1)]);
    }
}
