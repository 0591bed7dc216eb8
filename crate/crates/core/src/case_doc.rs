//! Case documents: a TOML file naming a group by generator image arrays and
//! a graph either by a base point and an edge list or by a subgroup and
//! double-coset representatives.
//!
//! ```toml
//! name = "K3"
//! stabilize_point = 0
//! edges = [[0, 1], [1, 2], [0, 2]]
//!
//! [group]
//! degree = 3
//! generators = [[1, 0, 2], [1, 2, 0]]
//!
//! [options]
//! seed = 7
//! ```

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{Connection, CosetGraphSpec, SimpleGraph, Subgroup};
use crate::permgroup::{Permutation, PermutationGroup};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    name: String,
    group: RawGroup,
    stabilize_point: Option<usize>,
    edges: Option<Vec<[usize; 2]>>,
    subgroup_generators: Option<Vec<Vec<usize>>>,
    connection_reps: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    options: CaseOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

/// Per-document overrides; every field falls back to the run defaults.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseOptions {
    pub max_vertices: Option<usize>,
    pub max_group_order: Option<u128>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Construction {
    /// `Γ` given explicitly, with `v` the point whose stabilizer is `G_v`.
    Action { base: usize, graph: SimpleGraph },
    /// `Cos(G, H, A)` with `A` the union of the double cosets `HaH`.
    Coset { subgroup: Vec<Permutation>, reps: Vec<Permutation> },
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub name: String,
    pub group: PermutationGroup,
    pub construction: Construction,
    pub options: CaseOptions,
}

impl CaseSpec {
    pub fn action(name: impl Into<String>, group: PermutationGroup, graph: SimpleGraph, base: usize) -> Self {
        CaseSpec {
            name: name.into(),
            group,
            construction: Construction::Action { base, graph },
            options: CaseOptions::default(),
        }
    }

    pub fn coset(
        name: impl Into<String>,
        group: PermutationGroup,
        subgroup: Vec<Permutation>,
        reps: Vec<Permutation>,
    ) -> Self {
        CaseSpec {
            name: name.into(),
            group,
            construction: Construction::Coset { subgroup, reps },
            options: CaseOptions::default(),
        }
    }

    pub fn coset_graph_spec(&self) -> Option<CosetGraphSpec> {
        match &self.construction {
            Construction::Coset { subgroup, reps } => Some(CosetGraphSpec {
                group: self.group.clone(),
                subgroup: Subgroup::Generators(subgroup.clone()),
                connection: Connection::Representatives(reps.clone()),
            }),
            Construction::Action { .. } => None,
        }
    }
}

fn perms(field: &str, degree: usize, arrays: Vec<Vec<usize>>) -> Result<Vec<Permutation>> {
    arrays
        .into_iter()
        .enumerate()
        .map(|(i, images)| {
            if images.len() != degree {
                return Err(Error::Parse(format!(
                    "{field}[{i}]: expected {degree} images, found {}",
                    images.len()
                )));
            }
            Permutation::from_images(images).map_err(|e| Error::Parse(format!("{field}[{i}]: {e}")))
        })
        .collect()
}

pub fn parse_case(text: &str) -> Result<CaseSpec> {
    let raw: RawCase = toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
    let degree = raw.group.degree;
    let generators = perms("group.generators", degree, raw.group.generators)?;
    let group = PermutationGroup::new(degree, generators)?;

    let action = raw.stabilize_point.is_some() || raw.edges.is_some();
    let coset = raw.subgroup_generators.is_some() || raw.connection_reps.is_some();
    let construction = match (action, coset) {
        (true, true) => {
            return Err(Error::Parse(
                "mode conflict: give either stabilize_point/edges or subgroup_generators/connection_reps, not both"
                    .into(),
            ))
        }
        (false, false) => {
            return Err(Error::Parse(
                "no construction: give stabilize_point and edges, or subgroup_generators and connection_reps".into(),
            ))
        }
        (true, false) => {
            let base = raw.stabilize_point.ok_or_else(|| Error::Parse("missing stabilize_point".into()))?;
            let edges = raw.edges.ok_or_else(|| Error::Parse("missing edges".into()))?;
            let graph = SimpleGraph::from_edges(degree, edges.into_iter().map(|[u, v]| (u, v)))
                .map_err(|e| Error::Parse(format!("edges: {e}")))?;
            if base >= degree {
                return Err(Error::Parse(format!("stabilize_point: {}", Error::PointOutOfRange { point: base, degree })));
            }
            Construction::Action { base, graph }
        }
        (false, true) => {
            let subgroup = perms("subgroup_generators", degree, raw.subgroup_generators.unwrap_or_default())?;
            let reps = perms(
                "connection_reps",
                degree,
                raw.connection_reps.ok_or_else(|| Error::Parse("missing connection_reps".into()))?,
            )?;
            Construction::Coset { subgroup, reps }
        }
    };
    Ok(CaseSpec { name: raw.name, group, construction, options: raw.options })
}
