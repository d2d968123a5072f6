use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::skeleton::{KGraphSkeleton, KPath};
use crate::cocycle::Bits;
use crate::error::{Error, Result};

/// Vertex and edge permutations of a skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Automorphism {
    pub fn identity(s: &KGraphSkeleton) -> Self {
        Self {
            vertices: (0..s.vertices().len()).collect(),
            edges: (0..s.edges().len()).collect(),
        }
    }

    /// `self` after `other`.
    pub fn after(&self, other: &Self) -> Self {
        Self {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other.edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    /// Image of a normal-form path; colours are preserved so the image is
    /// again in normal form.
    pub fn apply_path(&self, p: &KPath) -> KPath {
        let edges: Vec<usize> = p.edges().iter().map(|&e| self.edges[e]).collect();
        if edges.is_empty() {
            KPath::vertex(self.vertices[p.range()])
        } else {
            KPath::from_parts(self.vertices[p.range()], self.vertices[p.source()], edges)
        }
    }

    fn check(&self, s: &KGraphSkeleton) -> std::result::Result<(), String> {
        if !is_permutation(&self.vertices, s.vertices().len()) {
            return Err("vertex map is not a permutation".into());
        }
        if !is_permutation(&self.edges, s.edges().len()) {
            return Err("edge map is not a permutation".into());
        }
        for (i, e) in s.edges().iter().enumerate() {
            let img = &s.edges()[self.edges[i]];
            if img.color != e.color {
                return Err(format!("edge {:?} changes colour", e.id));
            }
            if img.range != self.vertices[e.range] || img.source != self.vertices[e.source] {
                return Err(format!("edge {:?} is not mapped compatibly with r and s", e.id));
            }
        }
        for sq in s.squares() {
            let [e, f, f2, e2] = sq.map(|x| self.edges[x]);
            if s.transpose(e, f) != Some((f2, e2)) {
                let ids = sq.map(|x| s.edges()[x].id.as_str());
                return Err(format!("square {ids:?} is not sent to a square"));
            }
        }
        Ok(())
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// An action of `Z_2^l` by skeleton automorphisms, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianAction {
    l: usize,
    generators: Vec<Automorphism>,
}

impl FiniteAbelianAction {
    /// Validates that each generator is an automorphism of order dividing
    /// two and that the generators commute.
    pub fn new(s: &KGraphSkeleton, generators: Vec<Automorphism>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            g.check(s)
                .map_err(|m| Error::InvalidAction(format!("generator {}: {m}", i + 1)))?;
            if g.after(g) != Automorphism::identity(s) {
                return Err(Error::InvalidAction(format!(
                    "generator {} does not square to the identity",
                    i + 1
                )));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].after(&generators[j]) != generators[j].after(&generators[i]) {
                    return Err(Error::InvalidAction(format!(
                        "generators {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            l: generators.len(),
            generators,
        })
    }

    pub fn trivial(s: &KGraphSkeleton, l: usize) -> Self {
        Self {
            l,
            generators: vec![Automorphism::identity(s); l],
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// `rho_g` as a single automorphism.
    pub fn element(&self, s: &KGraphSkeleton, g: &Bits) -> Automorphism {
        let mut out = Automorphism::identity(s);
        for (i, gen) in self.generators.iter().enumerate() {
            if g.coord(i) == 1 {
                out = gen.after(&out);
            }
        }
        out
    }

    pub fn apply_vertex(&self, g: &Bits, v: usize) -> usize {
        let mut v = v;
        for (i, gen) in self.generators.iter().enumerate() {
            if g.coord(i) == 1 {
                v = gen.vertices[v];
            }
        }
        v
    }

    pub fn apply_path(&self, g: &Bits, p: &KPath) -> KPath {
        let mut p = p.clone();
        for (i, gen) in self.generators.iter().enumerate() {
            if g.coord(i) == 1 {
                p = gen.apply_path(&p);
            }
        }
        p
    }

    /// Action of `A x B` on the product skeleton: generators of `a` first.
    pub fn product(
        sa: &KGraphSkeleton,
        a: &Self,
        sb: &KGraphSkeleton,
        b: &Self,
    ) -> Self {
        let (na, nb) = (sa.vertices().len(), sb.vertices().len());
        let (ma, mb) = (sa.edges().len(), sb.edges().len());
        // edge layout of KGraphSkeleton::product: A-edges (i, w) then B-edges (v, j)
        let lift = |va: &dyn Fn(usize) -> usize,
                    vb: &dyn Fn(usize) -> usize,
                    ea: &dyn Fn(usize) -> usize,
                    eb: &dyn Fn(usize) -> usize| {
            let mut vertices = vec![0; na * nb];
            for x in 0..na {
                for y in 0..nb {
                    vertices[x * nb + y] = va(x) * nb + vb(y);
                }
            }
            let mut edges = vec![0; ma * nb + mb * na];
            for i in 0..ma {
                for w in 0..nb {
                    edges[i * nb + w] = ea(i) * nb + vb(w);
                }
            }
            for j in 0..mb {
                for v in 0..na {
                    edges[ma * nb + j * na + v] = ma * nb + eb(j) * na + va(v);
                }
            }
            Automorphism { vertices, edges }
        };
        let id = |x: usize| x;
        let mut generators = Vec::new();
        for g in &a.generators {
            generators.push(lift(&|x| g.vertices[x], &id, &|e| g.edges[e], &id));
        }
        for g in &b.generators {
            generators.push(lift(&id, &|y| g.vertices[y], &id, &|e| g.edges[e]));
        }
        Self {
            l: generators.len(),
            generators,
        }
    }
}

/// The action file format: per generator, the moved vertices and edges by
/// name; anything not listed is fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub generators: Vec<ActionFileGenerator>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFileGenerator {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

impl ActionFile {
    pub fn into_action(self, s: &KGraphSkeleton) -> Result<FiniteAbelianAction> {
        let mut gens = Vec::new();
        for (i, g) in self.generators.into_iter().enumerate() {
            let mut a = Automorphism::identity(s);
            for (from, to) in &g.vertices {
                let (x, y) = (s.vertex_index(from), s.vertex_index(to));
                let (Some(x), Some(y)) = (x, y) else {
                    return Err(Error::InvalidAction(format!(
                        "generator {}: unknown vertex in {from:?} -> {to:?}",
                        i + 1
                    )));
                };
                a.vertices[x] = y;
            }
            for (from, to) in &g.edges {
                let (x, y) = (s.edge_index(from), s.edge_index(to));
                let (Some(x), Some(y)) = (x, y) else {
                    return Err(Error::InvalidAction(format!(
                        "generator {}: unknown edge in {from:?} -> {to:?}",
                        i + 1
                    )));
                };
                a.edges[x] = y;
            }
            gens.push(a);
        }
        FiniteAbelianAction::new(s, gens)
    }

    pub fn from_action(s: &KGraphSkeleton, a: &FiniteAbelianAction) -> Self {
        Self {
            generators: a
                .generators
                .iter()
                .map(|g| ActionFileGenerator {
                    vertices: g
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|(x, y)| x != *y)
                        .map(|(x, &y)| (s.vertices()[x].clone(), s.vertices()[y].clone()))
                        .collect(),
                    edges: g
                        .edges
                        .iter()
                        .enumerate()
                        .filter(|(x, y)| x != *y)
                        .map(|(x, &y)| (s.edges()[x].id.clone(), s.edges()[y].id.clone()))
                        .collect(),
                })
                .collect(),
        }
    }
}
