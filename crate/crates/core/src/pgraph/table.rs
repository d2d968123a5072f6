use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::action::{Automorphism, FiniteAbelianAction};
use super::presentation::{crossed_product, PGraphPresentation, PMorphism};
use super::skeleton::{validate_skeleton, ColoredEdge, KGraphSkeleton, KPath};
use super::DegreeElem;
use crate::cocycle::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMorphism {
    pub id: String,
    pub degree: DegreeElem,
    pub range: usize,
    pub source: usize,
}

/// A finite fragment of a P-graph given by explicit composition.
///
/// Morphism `i` for `i < objects.len()` is the identity at object `i` and
/// carries the object's name; identities compose implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategoryTable {
    k: usize,
    l: usize,
    objects: Vec<String>,
    morphisms: Vec<TableMorphism>,
    compose: HashMap<(usize, usize), usize>,
}

impl FiniteCategoryTable {
    /// `morphisms` must start with one identity per object, in object order.
    /// Every composition entry must respect range, source and degree.
    pub fn from_indices(
        k: usize,
        l: usize,
        objects: Vec<String>,
        morphisms: Vec<TableMorphism>,
        compose: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut ids = HashSet::new();
        for (i, m) in morphisms.iter().enumerate() {
            if !ids.insert(m.id.as_str()) {
                return Err(Error::Invalid(format!("duplicate morphism id {:?}", m.id)));
            }
            if m.degree.k() != k || m.degree.l() != l {
                return Err(Error::DimensionMismatch(format!(
                    "morphism {:?} has a degree outside N^{k} x Z_2^{l}",
                    m.id
                )));
            }
            if m.range >= n || m.source >= n {
                return Err(Error::Invalid(format!("morphism {:?} has an unknown endpoint", m.id)));
            }
            if i < n && (m.id != objects[i] || m.range != i || m.source != i || !m.degree.is_zero())
            {
                return Err(Error::Invalid(format!(
                    "morphism {i} should be the identity of object {:?}",
                    objects[i]
                )));
            }
        }
        if morphisms.len() < n {
            return Err(Error::Invalid("missing identity morphisms".into()));
        }
        let mut table = HashMap::new();
        for &(a, b, c) in &compose {
            let len = morphisms.len();
            if a >= len || b >= len || c >= len {
                return Err(Error::Invalid("composition refers to an unknown morphism".into()));
            }
            let (ma, mb, mc) = (&morphisms[a], &morphisms[b], &morphisms[c]);
            let witness = || format!("{} . {} = {}", ma.id, mb.id, mc.id);
            if ma.source != mb.range || mc.range != ma.range || mc.source != mb.source {
                return Err(Error::NotAPGraph(format!(
                    "{}: range and source do not match",
                    witness()
                )));
            }
            if ma.degree.add(&mb.degree)? != mc.degree {
                return Err(Error::NotAPGraph(format!("{}: degrees do not add", witness())));
            }
            if a < n || b < n {
                let expected = if a < n { b } else { a };
                if c != expected {
                    return Err(Error::NotAPGraph(format!(
                        "{}: identities must act trivially",
                        witness()
                    )));
                }
                continue;
            }
            if let Some(&old) = table.get(&(a, b)) {
                if old != c {
                    return Err(Error::NotAPGraph(format!(
                        "{}: composite given twice",
                        witness()
                    )));
                }
            }
            table.insert((a, b), c);
        }
        Ok(Self {
            k,
            l,
            objects,
            morphisms,
            compose: table,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[TableMorphism] {
        &self.morphisms
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.objects.len();
        let (ma, mb) = (&self.morphisms[a], &self.morphisms[b]);
        if ma.source != mb.range {
            return None;
        }
        if a < n {
            return Some(b);
        }
        if b < n {
            return Some(a);
        }
        self.compose.get(&(a, b)).copied()
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    k: usize,
    l: usize,
    objects: Vec<String>,
    morphisms: Vec<TableFileMorphism>,
    #[serde(default)]
    compose: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize)]
struct TableFileMorphism {
    id: String,
    #[serde(default)]
    free: Vec<u64>,
    #[serde(default)]
    torsion: Vec<u8>,
    range: String,
    source: String,
}

impl Serialize for FiniteCategoryTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.objects.len();
        let name = |i: usize| self.morphisms[i].id.clone();
        let mut compose: Vec<_> = self.compose.iter().collect();
        compose.sort();
        TableFile {
            k: self.k,
            l: self.l,
            objects: self.objects.clone(),
            morphisms: self.morphisms[n..]
                .iter()
                .map(|m| TableFileMorphism {
                    id: m.id.clone(),
                    free: m.degree.free().to_vec(),
                    torsion: m.degree.torsion().coords(),
                    range: self.objects[m.range].clone(),
                    source: self.objects[m.source].clone(),
                })
                .collect(),
            compose: compose
                .into_iter()
                .map(|(&(a, b), &c)| [name(a), name(b), name(c)])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteCategoryTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableFile::deserialize(d)?;
        table_from_file(raw).map_err(serde::de::Error::custom)
    }
}

fn table_from_file(raw: TableFile) -> Result<FiniteCategoryTable> {
    let object_index: HashMap<&str, usize> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let object = |name: &str, id: &str| {
        object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("morphism {id:?} uses unknown object {name:?}")))
    };
    let mut morphisms: Vec<TableMorphism> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| TableMorphism {
            id: o.clone(),
            degree: DegreeElem::zero(raw.k, raw.l),
            range: i,
            source: i,
        })
        .collect();
    for m in &raw.morphisms {
        let free = if m.free.is_empty() {
            vec![0; raw.k]
        } else {
            m.free.clone()
        };
        let torsion = if m.torsion.is_empty() {
            Bits::zero(raw.l)
        } else {
            Bits::from_coords(&m.torsion)?
        };
        morphisms.push(TableMorphism {
            id: m.id.clone(),
            degree: DegreeElem::new(free, torsion),
            range: object(&m.range, &m.id)?,
            source: object(&m.source, &m.id)?,
        });
    }
    let index: HashMap<&str, usize> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.id.as_str(), i))
        .collect();
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("composition names unknown morphism {id:?}")))
    };
    let compose = raw
        .compose
        .iter()
        .map(|[a, b, c]| Ok((lookup(a)?, lookup(b)?, lookup(c)?)))
        .collect::<Result<Vec<_>>>()?;
    FiniteCategoryTable::from_indices(raw.k, raw.l, raw.objects.clone(), morphisms, compose)
}

/// Output of [`decompose`]: the crossed-product form and the isomorphism
/// `psi` from table morphisms (by index) into it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub presentation: PGraphPresentation,
    pub psi: Vec<PMorphism>,
}

/// Recovers `(Gamma, rho)` from a table: `Gamma` is the zero-torsion part and
/// `rho_g(lambda)` is read off from `mu rho_g(lambda) = lambda nu` with `mu`,
/// `nu` the degree-`(0, g)` morphisms at `r(lambda)` and `s(lambda)`. The
/// map `psi(lambda) = (lambda(0, (n, 0)), g)` is checked to be an
/// isomorphism onto the crossed product's fragment.
pub fn decompose(t: &FiniteCategoryTable) -> Result<Decomposition> {
    let n = t.objects.len();
    let m = t.morphisms.len();
    let (k, l) = (t.k, t.l);
    let bound = t
        .morphisms
        .iter()
        .flat_map(|x| x.degree.free().iter().copied())
        .max()
        .unwrap_or(0);
    let in_box = |d: &DegreeElem| d.free().iter().all(|&x| x <= bound);
    let deg = |i: usize| &t.morphisms[i].degree;
    let name = |i: usize| t.morphisms[i].id.as_str();

    let mut factorisations: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            if t.morphisms[a].source != t.morphisms[b].range {
                continue;
            }
            match t.compose(a, b) {
                Some(c) => factorisations[c].push((a, b)),
                None if in_box(&deg(a).add(deg(b))?) => {
                    return Err(Error::NotAPGraph(format!(
                        "{} . {} is composable within the fragment but has no composite",
                        name(a),
                        name(b)
                    )))
                }
                None => {}
            }
        }
    }

    let torsion_unit = |g: Bits| DegreeElem::torsion_only(k, g);
    let unique_at = |v: usize, g: Bits, from_range: bool| -> Result<usize> {
        let want = torsion_unit(g);
        let hits: Vec<usize> = (0..m)
            .filter(|&i| {
                let x = &t.morphisms[i];
                x.degree == want && if from_range { x.range == v } else { x.source == v }
            })
            .collect();
        match hits.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::NotAPGraph(format!(
                "object {:?} has {} morphisms of degree {want} {} it",
                t.objects[v],
                hits.len(),
                if from_range { "ending at" } else { "starting at" }
            ))),
        }
    };
    for v in 0..n {
        for g in Bits::all(l).skip(1) {
            unique_at(v, g, true)?;
            unique_at(v, g, false)?;
        }
    }

    // unique factorisation for every split of every degree
    for (c, facts) in factorisations.iter().enumerate() {
        let d = deg(c);
        for prefix_free in sub_boxes(d.free()) {
            for h in Bits::all(l) {
                let prefix = DegreeElem::new(prefix_free.clone(), h);
                let count = facts.iter().filter(|(a, _)| *deg(*a) == prefix).count();
                if count != 1 {
                    return Err(Error::NotAPGraph(format!(
                        "{} has {count} factorisations with first factor of degree {prefix}",
                        name(c)
                    )));
                }
            }
        }
    }

    // the skeleton: degree e_c morphisms are the edges
    let mut edge_of = HashMap::new();
    let mut edges = Vec::new();
    for (i, x) in t.morphisms.iter().enumerate() {
        if x.degree.torsion().is_zero() && x.degree.is_generator() {
            let color = x.degree.free().iter().position(|&c| c == 1).expect("generator");
            edge_of.insert(i, edges.len());
            edges.push(ColoredEdge {
                id: x.id.clone(),
                color,
                source: x.source,
                range: x.range,
            });
        }
    }
    let first_factor = |c: usize, prefix: &DegreeElem| -> (usize, usize) {
        *factorisations[c]
            .iter()
            .find(|(a, _)| deg(*a) == prefix)
            .expect("factorisations checked")
    };
    let mut squares = Vec::new();
    for (&e, &ei) in &edge_of {
        for (&f, &fi) in &edge_of {
            if edges[ei].color >= edges[fi].color || t.morphisms[e].source != t.morphisms[f].range
            {
                continue;
            }
            let c = t.compose(e, f).expect("closure checked");
            let (f2, e2) = first_factor(c, &DegreeElem::free_unit(k, l, edges[fi].color));
            squares.push([ei, fi, edge_of[&f2], edge_of[&e2]]);
        }
    }
    squares.sort_unstable();
    let skeleton = KGraphSkeleton::new(k, t.objects.clone(), edges, squares)
        .map_err(|e| Error::NotAPGraph(e.to_string()))?;
    if let Some(first) = validate_skeleton(&skeleton).first() {
        return Err(Error::NotAPGraph(format!("zero-torsion part: {first}")));
    }

    let mut generators = Vec::new();
    for i in 0..l {
        let g = Bits::unit(l, i);
        let mut vertices = vec![0; n];
        for (v, slot) in vertices.iter_mut().enumerate() {
            *slot = t.morphisms[unique_at(v, g, true)?].source;
        }
        let mut edge_map = vec![0; skeleton.edges().len()];
        for (&lambda, &ei) in &edge_of {
            let nu = unique_at(t.morphisms[lambda].source, g, true)?;
            let x = t.compose(lambda, nu).expect("closure checked");
            let (mu, image) = first_factor(x, &torsion_unit(g));
            debug_assert_eq!(mu, unique_at(t.morphisms[lambda].range, g, true)?);
            edge_map[ei] = edge_of[&image];
        }
        generators.push(Automorphism {
            vertices,
            edges: edge_map,
        });
    }
    let action = FiniteAbelianAction::new(&skeleton, generators)
        .map_err(|e| Error::NotAPGraph(e.to_string()))?;
    let presentation =
        crossed_product(skeleton, action).map_err(|e| Error::NotAPGraph(e.to_string()))?;

    // psi(x) = (x(0, (n, 0)), g)
    let path_of = |start: usize| -> Result<KPath> {
        let mut rest = start;
        let mut chain = Vec::new();
        while !deg(rest).is_zero() {
            let color = deg(rest).free().iter().position(|&c| c > 0).expect("free part");
            let (e, tail) = first_factor(rest, &DegreeElem::free_unit(k, l, color));
            chain.push(edge_of[&e]);
            rest = tail;
        }
        let (r, s) = (t.morphisms[start].range, t.morphisms[start].source);
        presentation
            .skeleton()
            .normalize(r, s, chain)
            .ok_or_else(|| Error::NotAPGraph(format!("{} does not factor into edges", name(start))))
    };
    let mut psi = Vec::with_capacity(m);
    for x in 0..m {
        let d = deg(x);
        let (head, _) = first_factor(x, &DegreeElem::new(d.free().to_vec(), Bits::zero(l)));
        psi.push(PMorphism {
            path: path_of(head)?,
            g: d.torsion(),
        });
    }

    let fail = |what: String| Err(Error::NotAPGraph(format!("round trip failed: {what}")));
    let distinct: HashSet<&PMorphism> = psi.iter().collect();
    if distinct.len() != m {
        return fail("two table morphisms have the same image".into());
    }
    for (x, image) in psi.iter().enumerate() {
        let tm = &t.morphisms[x];
        if presentation.degree(image) != tm.degree
            || presentation.range(image) != tm.range
            || presentation.source(image) != tm.source
        {
            return fail(format!("{} changes degree, range or source", tm.id));
        }
    }
    for (c, facts) in factorisations.iter().enumerate() {
        for &(a, b) in facts {
            if presentation.compose(&psi[a], &psi[b]).as_ref() != Some(&psi[c]) {
                return fail(format!("{} . {} = {} is not preserved", name(a), name(b), name(c)));
            }
        }
    }
    if presentation.morphisms(bound).len() != m {
        return fail("the crossed product has morphisms missing from the table".into());
    }
    Ok(Decomposition { presentation, psi })
}

/// Every `m` with `0 <= m <= top` coordinatewise.
fn sub_boxes(top: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &t in top {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=t).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgraph::{skew_product, OneGraph};

    const OMEGA: &str = r#"{
        "k": 0, "l": 1, "objects": ["0", "1"],
        "morphisms": [
            {"id": "01", "torsion": [1], "range": "0", "source": "1"},
            {"id": "10", "torsion": [1], "range": "1", "source": "0"}
        ],
        "compose": [["01", "10", "0"], ["10", "01", "1"]]
    }"#;

    const Z2: &str = r#"{
        "k": 0, "l": 1, "objects": ["v"],
        "morphisms": [{"id": "u", "torsion": [1], "range": "v", "source": "v"}],
        "compose": [["u", "u", "v"]]
    }"#;

    const TWO_Z2: &str = r#"{
        "k": 0, "l": 1, "objects": ["a", "b"],
        "morphisms": [
            {"id": "u", "torsion": [1], "range": "a", "source": "a"},
            {"id": "w", "torsion": [1], "range": "b", "source": "b"}
        ],
        "compose": [["u", "u", "a"], ["w", "w", "b"]]
    }"#;

    #[test]
    fn omega_decomposes_to_translation() {
        let t: FiniteCategoryTable = serde_json::from_str(OMEGA).unwrap();
        let d = decompose(&t).unwrap();
        let p = &d.presentation;
        assert_eq!(p.skeleton().vertices().len(), 2);
        assert!(p.skeleton().edges().is_empty());
        assert_eq!(p.action().generators()[0].vertices, vec![1, 0]);
    }

    #[test]
    fn z2_decomposes_to_point() {
        let t: FiniteCategoryTable = serde_json::from_str(Z2).unwrap();
        let d = decompose(&t).unwrap();
        assert_eq!(d.presentation.skeleton().vertices().len(), 1);
        assert_eq!(d.presentation.action().generators()[0].vertices, vec![0]);
    }

    #[test]
    fn two_copies_decompose_to_trivial_action() {
        let t: FiniteCategoryTable = serde_json::from_str(TWO_Z2).unwrap();
        let d = decompose(&t).unwrap();
        assert_eq!(d.presentation.skeleton().vertices().len(), 2);
        assert_eq!(d.presentation.action().generators()[0].vertices, vec![0, 1]);
    }

    #[test]
    fn missing_inverse_is_rejected() {
        let bad = r#"{
            "k": 0, "l": 1, "objects": ["a", "b"],
            "morphisms": [{"id": "x", "torsion": [1], "range": "a", "source": "b"}]
        }"#;
        let t: FiniteCategoryTable = serde_json::from_str(bad).unwrap();
        match decompose(&t) {
            Err(Error::NotAPGraph(msg)) => assert!(msg.contains("\"a\""), "{msg}"),
            other => panic!("expected NotAPGraph, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_through_tables() {
        let b2 = KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 2));
        let p = skew_product(&b2, &[Bits::unit(1, 0), Bits::zero(1)], 1).unwrap();
        let t = p.to_table(1).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: FiniteCategoryTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let d = decompose(&t).unwrap();
        assert!(d.presentation.same_by_names(&p));
    }

    #[test]
    fn bad_composition_is_rejected() {
        let bad = r#"{
            "k": 0, "l": 1, "objects": ["v"],
            "morphisms": [{"id": "u", "torsion": [1], "range": "v", "source": "v"}],
            "compose": [["u", "u", "u"]]
        }"#;
        assert!(serde_json::from_str::<FiniteCategoryTable>(bad).is_err());
    }
}
