//! Graded K-theory: signed adjacency matrices, the coker/ker formula for
//! graph algebras, closed forms, degree shifts and the graded
//! Pimsner-Voiculescu collapse.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::{
    coker, direct_limit_stationary, ker, resolve_extension, ExtensionResult, FgAbGroup, FgAbHom,
    LimitClassification, Presentation,
};
use crate::pgraph::{graph_checks, DeltaLabeling, OneGraph};
use crate::zmat::ZMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedKPair {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
}

impl GradedKPair {
    pub fn new(k0: FgAbGroup, k1: FgAbGroup) -> Self {
        Self { k0, k1 }
    }
}

impl fmt::Display for GradedKPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0^gr = {}, K1^gr = {}", self.k0, self.k1)
    }
}

/// `A(v, w) = sum over edges e with r(e) = v, s(e) = w of (-1)^delta(e)`.
pub fn signed_adjacency(g: &OneGraph, delta: &DeltaLabeling) -> Result<ZMatrix> {
    let n = g.vertex_count();
    let labels = delta.for_graph(g)?;
    let mut a = ZMatrix::zeros(n, n);
    for (e, &d) in g.edges().iter().zip(&labels) {
        let slot = &mut a[(g.range_index(e), g.source_index(e))];
        if d == 0 {
            *slot += 1;
        } else {
            *slot -= 1;
        }
    }
    Ok(a)
}

/// `1 - (A^delta)^t`, acting on column vectors indexed by vertex order.
pub fn kgr_matrix(g: &OneGraph, delta: &DeltaLabeling) -> Result<ZMatrix> {
    let a = signed_adjacency(g, delta)?;
    ZMatrix::identity(g.vertex_count()).sub(&a.transpose())
}

/// `K^gr_0 = coker(1 - (A^delta)^t)`, `K^gr_1 = ker(1 - (A^delta)^t)`.
///
/// The formula is stated for graphs without sources or sinks; `force`
/// evaluates it anyway.
pub fn kgr_graph(g: &OneGraph, delta: &DeltaLabeling, force: bool) -> Result<GradedKPair> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let checks = graph_checks(g);
    if !force && !(checks.no_sources && checks.no_sinks) {
        let what = match (checks.no_sources, checks.no_sinks) {
            (false, false) => "sources and sinks",
            (false, true) => "sources",
            _ => "sinks",
        };
        return Err(Error::HypothesisViolated(format!("the graph has {what}")));
    }
    let m = kgr_matrix(g, delta)?;
    let free = Presentation::free(g.vertex_count());
    let h = FgAbHom::endo(&free, m)?;
    Ok(GradedKPair::new(coker(&h), ker(&h)))
}

/// Ordinary K-theory of `C*(E)`: the graded formula with trivial labels.
pub fn ungraded_k(g: &OneGraph, force: bool) -> Result<GradedKPair> {
    kgr_graph(g, &DeltaLabeling::constant(g, 0), force)
}

/// `B_{p+q}` with `p` odd and `q` even loops: `(Z/|1+p-q|, 0)`, or
/// `(Z, Z)` when `1 + p = q`.
pub fn cuntz_kgr(p: u64, q: u64) -> Result<GradedKPair> {
    if p + q == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = BigInt::from(1 + p) - BigInt::from(q);
    Ok(if d == BigInt::from(0) {
        GradedKPair::new(FgAbGroup::free(1), FgAbGroup::free(1))
    } else {
        GradedKPair::new(FgAbGroup::cyclic(d.magnitude().clone()), FgAbGroup::trivial())
    })
}

/// `Cl_n`: `Z` in the degree matching the parity of `n`.
pub fn clifford_kgr(n: u64) -> GradedKPair {
    let z = FgAbGroup::free(1);
    let zero = FgAbGroup::trivial();
    if n.is_multiple_of(2) {
        GradedKPair::new(z, zero)
    } else {
        GradedKPair::new(zero, z)
    }
}

/// Tensoring with `Cl_1` swaps the two groups.
pub fn shift_cl1(p: &GradedKPair) -> GradedKPair {
    GradedKPair::new(p.k1.clone(), p.k0.clone())
}

/// Crossed product by the grading automorphism; same effect as
/// [`shift_cl1`].
pub fn crossed_z2_kgr(p: &GradedKPair) -> GradedKPair {
    shift_cl1(p)
}

/// Input to the graded Pimsner-Voiculescu collapse for `B = A x_gamma Z`
/// graded by `beta^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PvProblem {
    pub g0: Presentation,
    pub g1: Presentation,
    pub alpha0: FgAbHom,
    pub alpha1: FgAbHom,
    pub gamma0: FgAbHom,
    pub gamma1: FgAbHom,
    pub k: u8,
}

impl PvProblem {
    pub fn new(
        g0: Presentation,
        g1: Presentation,
        alpha: (ZMatrix, ZMatrix),
        gamma: (ZMatrix, ZMatrix),
        k: u8,
    ) -> Result<Self> {
        if k > 1 {
            return Err(Error::Invalid(format!("k must be 0 or 1, got {k}")));
        }
        Ok(Self {
            alpha0: FgAbHom::endo(&g0, alpha.0)?,
            alpha1: FgAbHom::endo(&g1, alpha.1)?,
            gamma0: FgAbHom::endo(&g0, gamma.0)?,
            gamma1: FgAbHom::endo(&g1, gamma.1)?,
            g0,
            g1,
            k,
        })
    }

    /// Grading induced by an edge functor: `alpha_* = id`.
    pub fn functor_graded(
        g0: Presentation,
        g1: Presentation,
        gamma: (ZMatrix, ZMatrix),
        k: u8,
    ) -> Result<Self> {
        let ids = (
            ZMatrix::identity(g0.generators()),
            ZMatrix::identity(g1.generators()),
        );
        Self::new(g0, g1, ids, gamma, k)
    }

    /// `f_j = id - (-1)^k alpha_j^k gamma_j`.
    pub fn middle_map(&self, j: usize) -> Result<FgAbHom> {
        let (g, alpha, gamma) = match j {
            0 => (&self.g0, &self.alpha0, &self.gamma0),
            1 => (&self.g1, &self.alpha1, &self.gamma1),
            _ => return Err(Error::Invalid(format!("degree {j} is not 0 or 1"))),
        };
        let twisted = if self.k == 0 {
            gamma.clone()
        } else {
            crate::fgab::compose(alpha, gamma)?.scale(-1)
        };
        FgAbHom::identity(g).sub(&twisted)
    }
}

/// File form of [`PvProblem`]; `alpha0`/`alpha1` may be the string `"id"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvFile {
    pub g0: Presentation,
    pub g1: Presentation,
    #[serde(default)]
    pub alpha0: MatrixOrId,
    #[serde(default)]
    pub alpha1: MatrixOrId,
    pub gamma0: ZMatrix,
    pub gamma1: ZMatrix,
    pub k: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum MatrixOrId {
    #[default]
    Id,
    Matrix(ZMatrix),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MatrixOrIdJson {
    Tag(String),
    Matrix(ZMatrix),
}

impl Serialize for MatrixOrId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatrixOrId::Id => s.serialize_str("id"),
            MatrixOrId::Matrix(m) => m.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for MatrixOrId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match MatrixOrIdJson::deserialize(d)? {
            MatrixOrIdJson::Tag(t) if t == "id" => Ok(MatrixOrId::Id),
            MatrixOrIdJson::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected \"id\" or a matrix, got {t:?}"
            ))),
            MatrixOrIdJson::Matrix(m) => Ok(MatrixOrId::Matrix(m)),
        }
    }
}

impl MatrixOrId {
    fn resolve(&self, n: usize) -> ZMatrix {
        match self {
            MatrixOrId::Id => ZMatrix::identity(n),
            MatrixOrId::Matrix(m) => m.clone(),
        }
    }
}

impl PvFile {
    pub fn into_problem(self) -> Result<PvProblem> {
        let (n0, n1) = (self.g0.generators(), self.g1.generators());
        PvProblem::new(
            self.g0,
            self.g1,
            (self.alpha0.resolve(n0), self.alpha1.resolve(n1)),
            (self.gamma0, self.gamma1),
            self.k,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvSolution {
    pub k0: ExtensionResult,
    pub k1: ExtensionResult,
}

impl PvSolution {
    /// Both groups, when both extensions are forced to split.
    pub fn resolved(&self) -> Option<GradedKPair> {
        Some(GradedKPair::new(
            self.k0.resolved.clone()?,
            self.k1.resolved.clone()?,
        ))
    }
}

impl fmt::Display for PvSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0^gr = {}, K1^gr = {}", self.k0, self.k1)
    }
}

/// `0 -> coker f_j -> K^gr_j(B) -> ker f_{1-j} -> 0` for `j = 0, 1`.
pub fn pv_solve(p: &PvProblem) -> Result<PvSolution> {
    let f0 = p.middle_map(0)?;
    let f1 = p.middle_map(1)?;
    Ok(PvSolution {
        k0: resolve_extension(&coker(&f0), &ker(&f1)),
        k1: resolve_extension(&coker(&f1), &ker(&f0)),
    })
}

/// A vertex potential `eps` with `delta(e) = eps(r(e)) + eps(s(e))` for
/// every edge, or `None`. Each connected component starts from `eps = 0`
/// at its first vertex.
pub fn inner_potential(g: &OneGraph, delta: &DeltaLabeling) -> Result<Option<Vec<u8>>> {
    let labels = delta.for_graph(g)?;
    let n = g.vertex_count();
    let mut adjacent: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for (e, &d) in g.edges().iter().zip(&labels) {
        let (r, s) = (g.range_index(e), g.source_index(e));
        adjacent[r].push((s, d));
        adjacent[s].push((r, d));
    }
    let mut eps: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if eps[start].is_some() {
            continue;
        }
        eps[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let ev = eps[v].expect("visited");
            for &(w, d) in &adjacent[v] {
                match eps[w] {
                    None => {
                        eps[w] = Some(ev ^ d);
                        queue.push_back(w);
                    }
                    Some(ew) if ew != ev ^ d => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Some(eps.into_iter().map(|x| x.expect("all visited")).collect()))
}

/// Colimit of a stationary system of K-groups.
pub fn stationary_limit_kgr(g: &Presentation, f: &FgAbHom) -> Result<LimitClassification> {
    direct_limit_stationary(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgraph::Edge;

    fn z(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn pair(k0: FgAbGroup, k1: FgAbGroup) -> GradedKPair {
        GradedKPair::new(k0, k1)
    }

    fn edge(id: &str, source: &str, range: &str) -> Edge {
        Edge {
            id: id.into(),
            source: source.into(),
            range: range.into(),
        }
    }

    /// Two vertices, every ordered pair joined by one edge; only the edge
    /// from v1 to v2 is even.
    fn k2() -> (OneGraph, DeltaLabeling) {
        let g = OneGraph::new(
            vec!["v1".into(), "v2".into()],
            vec![
                edge("a", "v1", "v1"),
                edge("b", "v2", "v1"),
                edge("c", "v1", "v2"),
                edge("d", "v2", "v2"),
            ],
        )
        .unwrap();
        let d = DeltaLabeling::from_fn(&g, |e| u8::from(e.id != "c"));
        (g, d)
    }

    #[test]
    fn signed_adjacency_examples() {
        let (g, d) = k2();
        assert_eq!(
            signed_adjacency(&g, &d).unwrap(),
            ZMatrix::from_rows(&[[-1, -1], [1, -1]])
        );
        let b = OneGraph::bouquet(2, 3);
        let a = signed_adjacency(&b, &DeltaLabeling::odd_prefix(&b, 2)).unwrap();
        assert_eq!(a, ZMatrix::from_rows(&[[1]]));
        let c = OneGraph::cycle(3);
        assert_eq!(
            signed_adjacency(&c, &DeltaLabeling::constant(&c, 0)).unwrap(),
            ZMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        );
        let f = OneGraph::fibonacci_truncation(5);
        let delta = DeltaLabeling::from_fn(&f, |e| u8::from(e.id.starts_with('f')));
        assert!(signed_adjacency(&f, &delta).unwrap().is_zero());
        assert!(matches!(
            signed_adjacency(&f, &DeltaLabeling::default()),
            Err(Error::MissingLabel(_))
        ));
    }

    #[test]
    fn kgr_examples() {
        let (g, d) = k2();
        assert_eq!(kgr_graph(&g, &d, false).unwrap(), pair(z(5), z(1)));
        let t1 = OneGraph::bouquet(1, 0);
        assert_eq!(
            kgr_graph(&t1, &DeltaLabeling::constant(&t1, 1), false).unwrap(),
            pair(z(2), FgAbGroup::trivial())
        );
        let b3 = OneGraph::bouquet(1, 2);
        assert_eq!(
            kgr_graph(&b3, &DeltaLabeling::odd_prefix(&b3, 1), false).unwrap(),
            pair(FgAbGroup::free(1), FgAbGroup::free(1))
        );
    }

    #[test]
    fn hypotheses_enforced() {
        let f = OneGraph::fibonacci_truncation(3);
        let d = DeltaLabeling::from_fn(&f, |e| u8::from(e.id.starts_with('f')));
        assert!(matches!(
            kgr_graph(&f, &d, false),
            Err(Error::HypothesisViolated(_))
        ));
        assert_eq!(
            kgr_graph(&f, &d, true).unwrap(),
            pair(FgAbGroup::trivial(), FgAbGroup::trivial())
        );
        let empty = OneGraph::new(vec![], vec![]).unwrap();
        assert_eq!(kgr_graph(&empty, &DeltaLabeling::default(), true), Err(Error::EmptyGraph));
    }

    #[test]
    fn ungraded_examples() {
        assert_eq!(
            ungraded_k(&OneGraph::bouquet(0, 2), false).unwrap(),
            pair(FgAbGroup::trivial(), FgAbGroup::trivial())
        );
        assert_eq!(
            ungraded_k(&OneGraph::bouquet(0, 3), false).unwrap(),
            pair(z(2), FgAbGroup::trivial())
        );
        assert_eq!(
            ungraded_k(&OneGraph::cycle(2), false).unwrap(),
            pair(FgAbGroup::free(1), FgAbGroup::free(1))
        );
    }

    #[test]
    fn cuntz_examples() {
        assert_eq!(cuntz_kgr(2, 0).unwrap(), pair(z(3), FgAbGroup::trivial()));
        assert_eq!(cuntz_kgr(1, 1).unwrap(), pair(FgAbGroup::trivial(), FgAbGroup::trivial()));
        assert_eq!(cuntz_kgr(1, 2).unwrap(), pair(FgAbGroup::free(1), FgAbGroup::free(1)));
        assert_eq!(cuntz_kgr(0, 0), Err(Error::EmptyGraph));
    }

    #[test]
    fn clifford_and_shifts() {
        let zz = FgAbGroup::free(1);
        let zero = FgAbGroup::trivial();
        assert_eq!(clifford_kgr(0), pair(zz.clone(), zero.clone()));
        assert_eq!(clifford_kgr(1), pair(zero.clone(), zz.clone()));
        assert_eq!(clifford_kgr(2), pair(zz.clone(), zero.clone()));
        let t = pair(z(2), zero.clone());
        assert_eq!(shift_cl1(&t), pair(zero.clone(), z(2)));
        assert_eq!(shift_cl1(&shift_cl1(&t)), t);
        let circle = pair(FgAbGroup::free(3), zero.clone());
        assert_eq!(crossed_z2_kgr(&circle), pair(zero, FgAbGroup::free(3)));
        assert_eq!(clifford_kgr(3).to_string(), "K0^gr = 0, K1^gr = Z");
    }

    #[test]
    fn pv_examples() {
        let g0 = Presentation::free(2);
        let g1 = Presentation::free(0);
        let ids = (ZMatrix::identity(2), ZMatrix::identity(0));
        let p1 = PvProblem::functor_graded(g0.clone(), g1.clone(), ids.clone(), 1).unwrap();
        assert_eq!(
            pv_solve(&p1).unwrap().resolved().unwrap(),
            pair(
                FgAbGroup::new(0, vec![2.into(), 2.into()]).unwrap(),
                FgAbGroup::trivial()
            )
        );
        let p0 = PvProblem::functor_graded(g0, g1.clone(), ids, 0).unwrap();
        assert_eq!(
            pv_solve(&p0).unwrap().resolved().unwrap(),
            pair(FgAbGroup::free(2), FgAbGroup::free(2))
        );
        let t = Presentation::of_group(&z(2));
        let pt = PvProblem::functor_graded(
            t,
            g1,
            (ZMatrix::identity(1), ZMatrix::identity(0)),
            1,
        )
        .unwrap();
        assert_eq!(pv_solve(&pt).unwrap().resolved().unwrap(), pair(z(2), z(2)));
    }

    #[test]
    fn pv_ambiguity_is_surfaced() {
        // G_0 = G_1 = Z/2 and gamma = id with k = 0: every f_j is zero, so
        // K_0 is an extension of Z/2 by Z/2
        let t = Presentation::of_group(&z(2));
        let p = PvProblem::functor_graded(
            t.clone(),
            t,
            (ZMatrix::identity(1), ZMatrix::identity(1)),
            0,
        )
        .unwrap();
        let s = pv_solve(&p).unwrap();
        assert!(s.k0.resolved.is_none());
        assert!(s.resolved().is_none());
        assert!(s.to_string().contains("extension of Z/2 by Z/2"));
    }

    #[test]
    fn pv_rejects_ill_formed() {
        let t = Presentation::of_group(&z(2));
        let g = Presentation::free(1);
        // gamma_0 lift of the wrong shape
        let bad = PvProblem::new(
            t,
            g,
            (ZMatrix::identity(1), ZMatrix::identity(1)),
            (ZMatrix::zeros(1, 2), ZMatrix::identity(1)),
            0,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn pv_file_parses_id_and_matrices() {
        let json = r#"{"g0":{"generators":2},"g1":{"generators":0},
            "alpha0":"id","alpha1":"id",
            "gamma0":{"rows":2,"cols":2,"entries":[[1,2],[0,1]]},
            "gamma1":{"rows":0,"cols":0,"entries":[]},"k":1}"#;
        let file: PvFile = serde_json::from_str(json).unwrap();
        let again: PvFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(again, file);
        let p = file.into_problem().unwrap();
        let s = pv_solve(&p).unwrap();
        // f_0 = 1 + [[1,2],[0,1]] = [[2,2],[0,2]]: coker Z/2 (+) Z/2
        assert_eq!(
            s.resolved().unwrap().k0,
            FgAbGroup::new(0, vec![2.into(), 2.into()]).unwrap()
        );
    }

    #[test]
    fn inner_potential_examples() {
        // bipartite: v1 <-> v2 with two edges each way, all odd
        let g = OneGraph::new(
            vec!["v1".into(), "v2".into()],
            vec![
                edge("a", "v1", "v2"),
                edge("b", "v2", "v1"),
                edge("c", "v1", "v2"),
            ],
        )
        .unwrap();
        let eps = inner_potential(&g, &DeltaLabeling::constant(&g, 1)).unwrap();
        assert_eq!(eps, Some(vec![0, 1]));
        let t1 = OneGraph::bouquet(1, 0);
        assert_eq!(inner_potential(&t1, &DeltaLabeling::constant(&t1, 1)).unwrap(), None);
        let c = OneGraph::cycle(4);
        assert_eq!(
            inner_potential(&c, &DeltaLabeling::constant(&c, 0)).unwrap(),
            Some(vec![0; 4])
        );
    }

    #[test]
    fn stationary_examples() {
        let z1 = Presentation::free(1);
        let zero = FgAbHom::endo(&z1, ZMatrix::zeros(1, 1)).unwrap();
        assert_eq!(stationary_limit_kgr(&z1, &zero).unwrap(), LimitClassification::Zero);
        let z2 = Presentation::free(2);
        let shear = FgAbHom::endo(&z2, ZMatrix::from_rows(&[[1, 2], [0, 1]])).unwrap();
        assert_eq!(
            stationary_limit_kgr(&z2, &shear).unwrap(),
            LimitClassification::Stable {
                group: FgAbGroup::free(2)
            }
        );
        assert_eq!(
            stationary_limit_kgr(&z1, &FgAbHom::identity(&z1)).unwrap(),
            LimitClassification::Stable {
                group: FgAbGroup::free(1)
            }
        );
    }
}
