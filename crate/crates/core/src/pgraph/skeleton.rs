use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::OneGraph;
use crate::cocycle::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredEdge {
    pub id: String,
    pub color: usize,
    pub source: usize,
    pub range: usize,
}

/// An edge-coloured graph with factorisation squares.
///
/// A square `[e, f, f2, e2]` (edge indices) records `e f = f2 e2` where `e`
/// and `e2` have colour `i`, `f` and `f2` colour `j`, and `i < j`. Paths are
/// written range-first, so `e f` means "`f` then `e`" and needs
/// `s(e) = r(f)`.
#[derive(Clone, Debug)]
pub struct KGraphSkeleton {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<ColoredEdge>,
    squares: Vec<[usize; 4]>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    forward: HashMap<(usize, usize), (usize, usize)>,
    backward: HashMap<(usize, usize), (usize, usize)>,
}

/// A morphism of the k-graph: edges listed range-first with colours in
/// non-decreasing order. A vertex is the empty path with `range == source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPath {
    range: usize,
    source: usize,
    edges: Vec<usize>,
}

impl KPath {
    pub fn vertex(v: usize) -> Self {
        Self {
            range: v,
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub(crate) fn from_parts(range: usize, source: usize, edges: Vec<usize>) -> Self {
        Self {
            range,
            source,
            edges,
        }
    }
}

impl PartialEq for KGraphSkeleton {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.sorted_squares() == other.sorted_squares()
    }
}

impl Eq for KGraphSkeleton {}

impl KGraphSkeleton {
    /// Checks ids, endpoints and colours; square coherence is left to
    /// [`validate_skeleton`].
    pub fn new(
        k: usize,
        vertices: Vec<String>,
        edges: Vec<ColoredEdge>,
        squares: Vec<[usize; 4]>,
    ) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id {:?}", e.id)));
            }
            if e.source >= vertices.len() || e.range >= vertices.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge {:?} has an endpoint outside the vertex list",
                    e.id
                )));
            }
            if e.color >= k {
                return Err(Error::InvalidGraph(format!(
                    "edge {:?} has colour {} but k = {k}",
                    e.id, e.color
                )));
            }
        }
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for sq in &squares {
            if sq.iter().any(|&x| x >= edges.len()) {
                return Err(Error::InvalidGraph(
                    "square refers to an unknown edge".into(),
                ));
            }
            forward.entry((sq[0], sq[1])).or_insert((sq[2], sq[3]));
            backward.entry((sq[2], sq[3])).or_insert((sq[0], sq[1]));
        }
        Ok(Self {
            k,
            vertices,
            edges,
            squares,
            vertex_index,
            edge_index,
            forward,
            backward,
        })
    }

    /// Vertices only, no edges.
    pub fn discrete(k: usize, vertices: Vec<String>) -> Result<Self> {
        Self::new(k, vertices, Vec::new(), Vec::new())
    }

    pub fn from_one_graph(g: &OneGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| ColoredEdge {
                id: e.id.clone(),
                color: 0,
                source: g.source_index(e),
                range: g.range_index(e),
            })
            .collect();
        Self::new(1, g.vertices().to_vec(), edges, Vec::new()).expect("checked by OneGraph")
    }

    /// One vertex and one loop per colour, every square trivial (`T_k`).
    pub fn torus(k: usize) -> Self {
        let edges = (0..k)
            .map(|c| ColoredEdge {
                id: format!("t{}", c + 1),
                color: c,
                source: 0,
                range: 0,
            })
            .collect();
        let mut squares = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                squares.push([i, j, j, i]);
            }
        }
        Self::new(k, vec!["v".into()], edges, squares).expect("well-formed")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn edge_index(&self, e: &str) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    fn sorted_squares(&self) -> Vec<[usize; 4]> {
        let mut s = self.squares.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The square partner of `x y` for adjacent edges of distinct colours.
    pub fn transpose(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let (cx, cy) = (self.edges[x].color, self.edges[y].color);
        if cx < cy {
            self.forward.get(&(x, y)).copied()
        } else if cx > cy {
            self.backward.get(&(x, y)).copied()
        } else {
            None
        }
    }

    pub fn degree(&self, p: &KPath) -> Vec<u64> {
        let mut d = vec![0; self.k];
        for &e in &p.edges {
            d[self.edges[e].color] += 1;
        }
        d
    }

    pub fn edge_path(&self, e: usize) -> KPath {
        KPath {
            range: self.edges[e].range,
            source: self.edges[e].source,
            edges: vec![e],
        }
    }

    fn is_chain(&self, range: usize, source: usize, edges: &[usize]) -> bool {
        let mut at = range;
        for &e in edges {
            if self.edges[e].range != at {
                return false;
            }
            at = self.edges[e].source;
        }
        at == source
    }

    /// Reorders a chain of edges so colours are non-decreasing.
    fn sort_by_key(&self, edges: &mut [usize], keys: &mut [(u8, usize)]) -> Option<()> {
        let n = edges.len();
        for pass in 0..n {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1 + pass) {
                if keys[i] > keys[i + 1] {
                    let (a, b) = self.transpose(edges[i], edges[i + 1])?;
                    edges[i] = a;
                    edges[i + 1] = b;
                    keys.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        Some(())
    }

    /// Normal form of a chain `edges` from `source` to `range`.
    pub fn normalize(&self, range: usize, source: usize, edges: Vec<usize>) -> Option<KPath> {
        if !self.is_chain(range, source, &edges) {
            return None;
        }
        let mut edges = edges;
        let mut keys: Vec<(u8, usize)> = edges.iter().map(|&e| (0, self.edges[e].color)).collect();
        self.sort_by_key(&mut edges, &mut keys)?;
        Some(KPath {
            range,
            source,
            edges,
        })
    }

    /// `a b`, or `None` if `s(a) != r(b)` or a needed square is missing.
    pub fn compose(&self, a: &KPath, b: &KPath) -> Option<KPath> {
        if a.source != b.range {
            return None;
        }
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        self.normalize(a.range, b.source, edges)
    }

    /// The unique `(mu, nu)` with `p = mu nu` and `d(mu) = prefix`.
    pub fn factor(&self, p: &KPath, prefix: &[u64]) -> Option<(KPath, KPath)> {
        let d = self.degree(p);
        if prefix.len() != self.k || prefix.iter().zip(&d).any(|(m, n)| m > n) {
            return None;
        }
        let mut seen = vec![0u64; self.k];
        let mut keys: Vec<(u8, usize)> = p
            .edges
            .iter()
            .map(|&e| {
                let c = self.edges[e].color;
                let key = u8::from(seen[c] >= prefix[c]);
                seen[c] += 1;
                (key, c)
            })
            .collect();
        let mut edges = p.edges.clone();
        self.sort_by_key(&mut edges, &mut keys)?;
        let cut: u64 = prefix.iter().sum();
        let (left, right) = edges.split_at(cut as usize);
        let mid = left
            .last()
            .map_or(p.range, |&e| self.edges[e].source);
        Some((
            KPath {
                range: p.range,
                source: mid,
                edges: left.to_vec(),
            },
            KPath {
                range: mid,
                source: p.source,
                edges: right.to_vec(),
            },
        ))
    }

    /// All normal-form paths with at most `bound` edges of each colour.
    pub fn paths(&self, bound: u64) -> Vec<KPath> {
        let mut out = Vec::new();
        let mut by_range: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            by_range[e.range].push(i);
        }
        for v in 0..self.vertices.len() {
            let mut counts = vec![0u64; self.k];
            let mut stack = Vec::new();
            self.extend_paths(v, v, 0, bound, &by_range, &mut counts, &mut stack, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_paths(
        &self,
        range: usize,
        at: usize,
        min_color: usize,
        bound: u64,
        by_range: &[Vec<usize>],
        counts: &mut [u64],
        stack: &mut Vec<usize>,
        out: &mut Vec<KPath>,
    ) {
        out.push(KPath {
            range,
            source: at,
            edges: stack.clone(),
        });
        for &e in &by_range[at] {
            let c = self.edges[e].color;
            if c < min_color || counts[c] >= bound {
                continue;
            }
            counts[c] += 1;
            stack.push(e);
            self.extend_paths(range, self.edges[e].source, c, bound, by_range, counts, stack, out);
            stack.pop();
            counts[c] -= 1;
        }
    }

    /// Range-first display, e.g. `e.f` or the vertex name.
    pub fn path_name(&self, p: &KPath) -> String {
        if p.edges.is_empty() {
            self.vertices[p.range].clone()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edges[e].id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Name-level equality, ignoring the order of vertices, edges and squares.
    pub fn same_by_names(&self, other: &Self) -> bool {
        self.named_form() == other.named_form()
    }

    #[allow(clippy::type_complexity)]
    fn named_form(
        &self,
    ) -> (
        usize,
        BTreeSet<&str>,
        BTreeSet<(&str, usize, &str, &str)>,
        BTreeSet<[&str; 4]>,
    ) {
        let v = |i: usize| self.vertices[i].as_str();
        let e = |i: usize| self.edges[i].id.as_str();
        (
            self.k,
            self.vertices.iter().map(String::as_str).collect(),
            self.edges
                .iter()
                .map(|x| (x.id.as_str(), x.color, v(x.source), v(x.range)))
                .collect(),
            self.squares.iter().map(|s| s.map(e)).collect(),
        )
    }

    /// `A x B` with colours of `A` first; vertices and edges are named
    /// `(a,b)`. Squares mixing a colour of each factor are
    /// `(e, r f)(s e, f) = (r e, f)(e, s f)`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let nb = b.vertices.len();
        let vid = |x: usize, y: usize| x * nb + y;
        let mut vertices = Vec::new();
        for x in &a.vertices {
            for y in &b.vertices {
                vertices.push(format!("({x},{y})"));
            }
        }
        let mut edges = Vec::new();
        let mut a_edge = HashMap::new();
        let mut b_edge = HashMap::new();
        for (i, e) in a.edges.iter().enumerate() {
            for (w, y) in b.vertices.iter().enumerate() {
                a_edge.insert((i, w), edges.len());
                edges.push(ColoredEdge {
                    id: format!("({},{y})", e.id),
                    color: e.color,
                    source: vid(e.source, w),
                    range: vid(e.range, w),
                });
            }
        }
        for (j, f) in b.edges.iter().enumerate() {
            for (v, x) in a.vertices.iter().enumerate() {
                b_edge.insert((v, j), edges.len());
                edges.push(ColoredEdge {
                    id: format!("({x},{})", f.id),
                    color: a.k + f.color,
                    source: vid(v, f.source),
                    range: vid(v, f.range),
                });
            }
        }
        let mut squares = Vec::new();
        for sq in &a.squares {
            for w in 0..nb {
                squares.push(sq.map(|e| a_edge[&(e, w)]));
            }
        }
        for sq in &b.squares {
            for v in 0..a.vertices.len() {
                squares.push(sq.map(|f| b_edge[&(v, f)]));
            }
        }
        for (i, e) in a.edges.iter().enumerate() {
            for (j, f) in b.edges.iter().enumerate() {
                squares.push([
                    a_edge[&(i, f.range)],
                    b_edge[&(e.source, j)],
                    b_edge[&(e.range, j)],
                    a_edge[&(i, f.source)],
                ]);
            }
        }
        Self::new(a.k + b.k, vertices, edges, squares).expect("product of valid skeletons")
    }

    /// `Gamma x_b Z_2^l`: vertices `(v,g)`, edges `(e,g)` with
    /// `r(e,g) = (r e, g)` and `s(e,g) = (s e, g + b(e))`.
    pub fn skew(&self, b: &[Bits], l: usize) -> Result<Self> {
        if b.len() != self.edges.len() {
            return Err(Error::InvalidFunctor(format!(
                "{} edge values given for {} edges",
                b.len(),
                self.edges.len()
            )));
        }
        if let Some(x) = b.iter().find(|x| x.len() != l) {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: l,
            });
        }
        for sq in &self.squares {
            let lhs = b[sq[0]].add(&b[sq[1]])?;
            let rhs = b[sq[2]].add(&b[sq[3]])?;
            if lhs != rhs {
                let ids = sq.map(|e| self.edges[e].id.as_str());
                return Err(Error::InvalidFunctor(format!(
                    "values disagree across the square {ids:?}"
                )));
            }
        }
        let size = 1usize << l;
        let label = |g: usize| Bits::from_mask(l, g as u64).to_string();
        let mut vertices = Vec::new();
        for v in &self.vertices {
            for g in 0..size {
                vertices.push(format!("({v},{})", label(g)));
            }
        }
        let eid = |e: usize, g: usize| e * size + g;
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for g in 0..size {
                let shifted = g ^ b[i].mask() as usize;
                edges.push(ColoredEdge {
                    id: format!("({},{})", e.id, label(g)),
                    color: e.color,
                    range: e.range * size + g,
                    source: e.source * size + shifted,
                });
            }
        }
        let mut squares = Vec::new();
        for sq in &self.squares {
            for g in 0..size {
                let gf = g ^ b[sq[0]].mask() as usize;
                let ge = g ^ b[sq[2]].mask() as usize;
                squares.push([eid(sq[0], g), eid(sq[1], gf), eid(sq[2], g), eid(sq[3], ge)]);
            }
        }
        Self::new(self.k, vertices, edges, squares)
    }
}

/// Outcome of [`validate_skeleton`]; the first entry is the first violation
/// encountered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub violations: Vec<String>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&str> {
        self.violations.first().map(String::as_str)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that the squares form colour-respecting bijections preserving
/// range and source, and that every 3-coloured path transposes consistently.
pub fn validate_skeleton(s: &KGraphSkeleton) -> Diagnostics {
    let mut out = Vec::new();
    let id = |e: usize| s.edges[e].id.as_str();

    let mut left_seen = HashSet::new();
    let mut right_seen = HashSet::new();
    for sq in &s.squares {
        let [e, f, f2, e2] = *sq;
        let ids = sq.map(id);
        let (ce, cf) = (s.edges[e].color, s.edges[f].color);
        if ce >= cf {
            out.push(format!("square {ids:?}: colours must satisfy c(e) < c(f)"));
            continue;
        }
        if s.edges[f2].color != cf || s.edges[e2].color != ce {
            out.push(format!("square {ids:?}: right side does not repeat the colours"));
            continue;
        }
        if s.edges[e].source != s.edges[f].range {
            out.push(format!("square {ids:?}: e f is not composable"));
            continue;
        }
        if s.edges[f2].source != s.edges[e2].range {
            out.push(format!("square {ids:?}: f' e' is not composable"));
            continue;
        }
        if s.edges[e].range != s.edges[f2].range || s.edges[f].source != s.edges[e2].source {
            out.push(format!("square {ids:?}: range or source not preserved"));
            continue;
        }
        if !left_seen.insert((e, f)) {
            out.push(format!("square {ids:?}: path {} {} paired twice", ids[0], ids[1]));
        }
        if !right_seen.insert((f2, e2)) {
            out.push(format!("square {ids:?}: path {} {} paired twice", ids[2], ids[3]));
        }
    }

    for (e, ee) in s.edges.iter().enumerate() {
        for (f, fe) in s.edges.iter().enumerate() {
            if ee.source != fe.range || ee.color == fe.color {
                continue;
            }
            let seen = if ee.color < fe.color {
                &left_seen
            } else {
                &right_seen
            };
            if !seen.contains(&(e, f)) {
                out.push(format!("path {} {} has no square", id(e), id(f)));
            }
        }
    }
    if !out.is_empty() {
        return Diagnostics { violations: out };
    }

    if s.k >= 3 {
        let mut by_range: Vec<Vec<usize>> = vec![Vec::new(); s.vertices.len()];
        for (i, e) in s.edges.iter().enumerate() {
            by_range[e.range].push(i);
        }
        for (e, ee) in s.edges.iter().enumerate() {
            for &f in &by_range[ee.source] {
                let cf = s.edges[f].color;
                if cf <= ee.color {
                    continue;
                }
                for &g in &by_range[s.edges[f].source] {
                    if s.edges[g].color <= cf {
                        continue;
                    }
                    if let Some(msg) = cube_violation(s, e, f, g) {
                        out.push(msg);
                    }
                }
            }
        }
    }
    Diagnostics { violations: out }
}

/// Compares the two ways of reversing the colour order of `e f g`.
fn cube_violation(s: &KGraphSkeleton, e: usize, f: usize, g: usize) -> Option<String> {
    let t = |x, y| s.transpose(x, y).expect("squares checked complete");
    // left route: (ef)g -> f1 e1 g -> f1 g1 e2 -> g2 f2 e2
    let (f1, e1) = t(e, f);
    let (g1, e2) = t(e1, g);
    let (g2, f2) = t(f1, g1);
    // right route: e(fg) -> e g3 f3 -> g4 e3 f3 -> g4 f4 e4
    let (g3, f3) = t(f, g);
    let (g4, e3) = t(e, g3);
    let (f4, e4) = t(e3, f3);
    if (g2, f2, e2) == (g4, f4, e4) {
        None
    } else {
        let id = |x: usize| s.edges[x].id.as_str();
        Some(format!(
            "cube condition fails on {} {} {}: {} {} {} versus {} {} {}",
            id(e),
            id(f),
            id(g),
            id(g2),
            id(f2),
            id(e2),
            id(g4),
            id(f4),
            id(e4)
        ))
    }
}

/// The k-graph file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGraphFile {
    pub k: usize,
    pub vertices: Vec<String>,
    /// One array per colour.
    pub edges: Vec<Vec<KGraphFileEdge>>,
    #[serde(default)]
    pub squares: Vec<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGraphFileEdge {
    pub id: String,
    pub source: String,
    pub range: String,
}

impl KGraphFile {
    pub fn into_skeleton(self) -> Result<KGraphSkeleton> {
        if self.edges.len() > self.k {
            return Err(Error::Shape(format!(
                "{} colour arrays given for k = {}",
                self.edges.len(),
                self.k
            )));
        }
        let vindex: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |v: &str, e: &str| {
            vindex.get(v).copied().ok_or_else(|| {
                Error::InvalidGraph(format!("edge {e:?} uses unknown vertex {v:?}"))
            })
        };
        let mut edges = Vec::new();
        for (color, list) in self.edges.iter().enumerate() {
            for e in list {
                edges.push(ColoredEdge {
                    id: e.id.clone(),
                    color,
                    source: lookup(&e.source, &e.id)?,
                    range: lookup(&e.range, &e.id)?,
                });
            }
        }
        let eindex: HashMap<&str, usize> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let squares = self
            .squares
            .iter()
            .map(|sq| {
                let mut out = [0usize; 4];
                for (slot, name) in out.iter_mut().zip(sq) {
                    *slot = *eindex.get(name.as_str()).ok_or_else(|| {
                        Error::InvalidGraph(format!("square names unknown edge {name:?}"))
                    })?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        KGraphSkeleton::new(self.k, self.vertices.clone(), edges, squares)
    }

    pub fn from_skeleton(s: &KGraphSkeleton) -> Self {
        let mut edges = vec![Vec::new(); s.k];
        for e in &s.edges {
            edges[e.color].push(KGraphFileEdge {
                id: e.id.clone(),
                source: s.vertices[e.source].clone(),
                range: s.vertices[e.range].clone(),
            });
        }
        Self {
            k: s.k,
            vertices: s.vertices.clone(),
            edges,
            squares: s
                .squares
                .iter()
                .map(|sq| sq.map(|e| s.edges[e].id.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgraph::OneGraph;

    fn b2() -> KGraphSkeleton {
        KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 2))
    }

    #[test]
    fn simple_skeletons_are_valid() {
        assert!(validate_skeleton(&b2()).is_valid());
        assert!(validate_skeleton(&KGraphSkeleton::torus(2)).is_valid());
        assert!(validate_skeleton(&KGraphSkeleton::torus(3)).is_valid());
    }

    #[test]
    fn missing_square_is_reported() {
        let t = KGraphSkeleton::torus(2);
        let bare = KGraphSkeleton::new(2, t.vertices.clone(), t.edges.clone(), vec![]).unwrap();
        let d = validate_skeleton(&bare);
        assert!(d.first().unwrap().contains("no square"));
    }

    /// One vertex, two loops per colour; `pair(i, j, a, b)` gives the square
    /// partner of `x_a y_b` for colours `i < j`.
    fn three_colour_bouquet(pair: impl Fn(usize, usize, usize, usize) -> (usize, usize)) -> KGraphSkeleton {
        let edges = (0..6)
            .map(|i| ColoredEdge {
                id: format!("{}{}", ["e", "f", "g"][i / 2], i % 2),
                color: i / 2,
                source: 0,
                range: 0,
            })
            .collect();
        let mut squares = Vec::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for a in 0..2 {
                for b in 0..2 {
                    let (b2, a2) = pair(i, j, a, b);
                    squares.push([2 * i + a, 2 * j + b, 2 * j + b2, 2 * i + a2]);
                }
            }
        }
        KGraphSkeleton::new(3, vec!["v".into()], edges, squares).unwrap()
    }

    #[test]
    fn perturbed_cube_is_reported() {
        let valid = three_colour_bouquet(|_, _, a, b| (b, a));
        assert!(validate_skeleton(&valid).is_valid());
        // e_a f_b = f_a e_b together with e_a g_c = g_c e_(1-a) cannot be
        // reconciled: the two transposition routes of e f g disagree
        let broken = three_colour_bouquet(|i, j, a, b| match (i, j) {
            (0, 1) => (a, b),
            (0, 2) => (b, 1 - a),
            _ => (b, a),
        });
        let d = validate_skeleton(&broken);
        assert!(!d.is_valid());
        assert!(d.first().unwrap().contains("cube"), "{d}");
    }

    #[test]
    fn compose_and_factor_in_torus() {
        let t = KGraphSkeleton::torus(2);
        let a = t.edge_path(1);
        let b = t.edge_path(0);
        let ab = t.compose(&a, &b).unwrap();
        assert_eq!(ab.edges(), &[0, 1]);
        let (mu, nu) = t.factor(&ab, &[0, 1]).unwrap();
        assert_eq!(mu.edges(), &[1]);
        assert_eq!(nu.edges(), &[0]);
        assert_eq!(t.paths(1).len(), 4);
    }

    #[test]
    fn skew_of_loop_is_two_cycle() {
        let t1 = KGraphSkeleton::torus(1);
        let s = t1.skew(&[Bits::unit(1, 0)], 1).unwrap();
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.edges().len(), 2);
        for e in s.edges() {
            assert_ne!(e.source, e.range);
        }
    }

    #[test]
    fn file_round_trip() {
        let t = KGraphSkeleton::torus(2);
        let file = KGraphFile::from_skeleton(&t);
        let json = serde_json::to_string(&file).unwrap();
        let back: KGraphFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_skeleton().unwrap(), t);
    }
}
