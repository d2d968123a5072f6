use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub source: String,
    pub range: String,
}

/// A finite directed multigraph `E = (E^0, E^1, r, s)`.
///
/// Vertex order is the order given; every matrix indexed by vertices uses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
}

impl OneGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id {:?}", e.id)));
            }
            for end in [&e.source, &e.range] {
                if !vertex_index.contains_key(end) {
                    return Err(Error::InvalidGraph(format!(
                        "edge {:?} uses unknown vertex {end:?}",
                        e.id
                    )));
                }
            }
        }
        Ok(Self {
            vertices,
            edges,
            vertex_index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn source_index(&self, e: &Edge) -> usize {
        self.vertex_index[&e.source]
    }

    pub fn range_index(&self, e: &Edge) -> usize {
        self.vertex_index[&e.range]
    }

    /// The bouquet `B_{p+q}`: one vertex, `p` loops named `o1..` then `q`
    /// loops named `e1..`. Pair with [`DeltaLabeling::odd_prefix`].
    pub fn bouquet(p: usize, q: usize) -> Self {
        let v = "v".to_string();
        let edges = (1..=p)
            .map(|i| format!("o{i}"))
            .chain((1..=q).map(|i| format!("e{i}")))
            .map(|id| Edge {
                id,
                source: v.clone(),
                range: v.clone(),
            })
            .collect();
        Self::new(vec![v], edges).expect("well-formed")
    }

    /// Directed cycle `v1 <- v2 <- ... <- vn <- v1` (edge `ci` has range `vi`).
    pub fn cycle(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges = (0..n)
            .map(|i| Edge {
                id: format!("c{}", i + 1),
                range: vertices[i].clone(),
                source: vertices[(i + 1) % n].clone(),
            })
            .collect();
        Self::new(vertices, edges).expect("well-formed")
    }

    /// Truncation of the Fibonacci graph to `v1..vn`: for each `i < n` a pair
    /// of edges `ei`, `fi` from `v(i+1)` to `vi`.
    pub fn fibonacci_truncation(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 1..n {
            for name in ["e", "f"] {
                edges.push(Edge {
                    id: format!("{name}{i}"),
                    range: vertices[i - 1].clone(),
                    source: vertices[i].clone(),
                });
            }
        }
        Self::new(vertices, edges).expect("well-formed")
    }
}

/// `delta : E^1 -> Z_2`, extended to paths by summation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaLabeling {
    values: BTreeMap<String, u8>,
}

impl DeltaLabeling {
    pub fn new(values: BTreeMap<String, u8>) -> Result<Self> {
        if let Some((e, v)) = values.iter().find(|(_, &v)| v > 1) {
            return Err(Error::Invalid(format!(
                "label of edge {e:?} is {v}, expected 0 or 1"
            )));
        }
        Ok(Self { values })
    }

    pub fn constant(graph: &OneGraph, value: u8) -> Self {
        Self {
            values: graph
                .edges
                .iter()
                .map(|e| (e.id.clone(), value & 1))
                .collect(),
        }
    }

    /// `1` on the first `p` edges of `graph`, `0` on the rest.
    pub fn odd_prefix(graph: &OneGraph, p: usize) -> Self {
        Self {
            values: graph
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| (e.id.clone(), u8::from(i < p)))
                .collect(),
        }
    }

    pub fn from_fn(graph: &OneGraph, mut f: impl FnMut(&Edge) -> u8) -> Self {
        Self {
            values: graph.edges.iter().map(|e| (e.id.clone(), f(e) & 1)).collect(),
        }
    }

    pub fn get(&self, edge: &str) -> Result<u8> {
        self.values
            .get(edge)
            .copied()
            .ok_or_else(|| Error::MissingLabel(edge.to_string()))
    }

    /// Labels in edge order; fails on the first unlabeled edge.
    pub fn for_graph(&self, graph: &OneGraph) -> Result<Vec<u8>> {
        graph.edges.iter().map(|e| self.get(&e.id)).collect()
    }

    /// Label of a path given by its edge ids.
    pub fn of_path<S: AsRef<str>>(&self, path: &[S]) -> Result<u8> {
        path.iter()
            .try_fold(0u8, |acc, e| Ok(acc ^ self.get(e.as_ref())?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphChecks {
    pub row_finite: bool,
    pub no_sources: bool,
    pub no_sinks: bool,
}

/// `no_sources`: every vertex receives an edge; `no_sinks`: every vertex
/// emits one. A finite graph is always row-finite.
pub fn graph_checks(g: &OneGraph) -> GraphChecks {
    let n = g.vertex_count();
    let mut receives = vec![false; n];
    let mut emits = vec![false; n];
    for e in &g.edges {
        receives[g.range_index(e)] = true;
        emits[g.source_index(e)] = true;
    }
    GraphChecks {
        row_finite: true,
        no_sources: receives.iter().all(|&b| b),
        no_sinks: emits.iter().all(|&b| b),
    }
}

/// The graph file format; `delta` defaults to 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphFileEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFileEdge {
    pub id: String,
    pub source: String,
    pub range: String,
    #[serde(default)]
    pub delta: u8,
}

impl GraphFile {
    pub fn into_parts(self) -> Result<(OneGraph, DeltaLabeling)> {
        let mut labels = BTreeMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in self.edges {
            labels.insert(e.id.clone(), e.delta);
            edges.push(Edge {
                id: e.id,
                source: e.source,
                range: e.range,
            });
        }
        let graph = OneGraph::new(self.vertices, edges)?;
        Ok((graph, DeltaLabeling::new(labels)?))
    }

    pub fn from_parts(graph: &OneGraph, delta: &DeltaLabeling) -> Result<Self> {
        Ok(Self {
            vertices: graph.vertices.clone(),
            edges: graph
                .edges
                .iter()
                .map(|e| {
                    Ok(GraphFileEdge {
                        id: e.id.clone(),
                        source: e.source.clone(),
                        range: e.range.clone(),
                        delta: delta.get(&e.id)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }
}
