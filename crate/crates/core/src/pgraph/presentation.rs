use std::collections::HashMap;

use super::action::{Automorphism, FiniteAbelianAction};
use super::skeleton::{validate_skeleton, KGraphSkeleton, KPath};
use super::table::{FiniteCategoryTable, TableMorphism};
use super::DegreeElem;
use crate::cocycle::{Bits, CompositionDomain};
use crate::error::{Error, Result};

/// A morphism `(lambda, g)` of `Gamma x_rho F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PMorphism {
    pub path: KPath,
    pub g: Bits,
}

/// The P-graph `Gamma x_rho F` with `P = N^k x Z_2^l`. Composition is
/// `(mu, g)(nu, h) = (mu rho_g(nu), g + h)`, `r(lambda, g) = r(lambda)` and
/// `s(lambda, g) = s(rho_g(lambda))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGraphPresentation {
    skeleton: KGraphSkeleton,
    action: FiniteAbelianAction,
}

/// Builds `Gamma x_rho F` after checking the skeleton and that `rho` acts on
/// it.
pub fn crossed_product(
    skeleton: KGraphSkeleton,
    action: FiniteAbelianAction,
) -> Result<PGraphPresentation> {
    let diagnostics = validate_skeleton(&skeleton);
    if let Some(first) = diagnostics.first() {
        return Err(Error::InvalidGraph(first.to_string()));
    }
    let action = FiniteAbelianAction::new(&skeleton, action.generators().to_vec())?;
    Ok(PGraphPresentation { skeleton, action })
}

impl PGraphPresentation {
    pub fn skeleton(&self) -> &KGraphSkeleton {
        &self.skeleton
    }

    pub fn action(&self) -> &FiniteAbelianAction {
        &self.action
    }

    pub fn k(&self) -> usize {
        self.skeleton.k()
    }

    pub fn l(&self) -> usize {
        self.action.l()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.k(), self.l())
    }

    pub fn degree(&self, m: &PMorphism) -> DegreeElem {
        DegreeElem::new(self.skeleton.degree(&m.path), m.g)
    }

    pub fn range(&self, m: &PMorphism) -> usize {
        m.path.range()
    }

    pub fn source(&self, m: &PMorphism) -> usize {
        self.action.apply_vertex(&m.g, m.path.source())
    }

    pub fn identity(&self, v: usize) -> PMorphism {
        PMorphism {
            path: KPath::vertex(v),
            g: Bits::zero(self.l()),
        }
    }

    /// `(e, g)` for the edge with index `e`.
    pub fn edge(&self, e: usize, g: Bits) -> PMorphism {
        PMorphism {
            path: self.skeleton.edge_path(e),
            g,
        }
    }

    /// The degree-`(0, g)` morphism `(v, g)`.
    pub fn torsion_at(&self, v: usize, g: Bits) -> PMorphism {
        PMorphism {
            path: KPath::vertex(v),
            g,
        }
    }

    pub fn compose(&self, a: &PMorphism, b: &PMorphism) -> Option<PMorphism> {
        if self.source(a) != self.range(b) {
            return None;
        }
        let moved = self.action.apply_path(&a.g, &b.path);
        Some(PMorphism {
            path: self.skeleton.compose(&a.path, &moved)?,
            g: a.g.add(&b.g).ok()?,
        })
    }

    /// The unique `(mu, nu)` with `m = mu nu` and `d(mu) = prefix`.
    pub fn factor(&self, m: &PMorphism, prefix: &DegreeElem) -> Option<(PMorphism, PMorphism)> {
        if prefix.k() != self.k() || prefix.l() != self.l() {
            return None;
        }
        let h = prefix.torsion();
        let (mu, rest) = self.skeleton.factor(&m.path, prefix.free())?;
        Some((
            PMorphism { path: mu, g: h },
            PMorphism {
                path: self.action.apply_path(&h, &rest),
                g: m.g.add(&h).ok()?,
            },
        ))
    }

    /// Every morphism with at most `bound` edges of each colour.
    pub fn morphisms(&self, bound: u64) -> Vec<PMorphism> {
        let paths = self.skeleton.paths(bound);
        let mut out = Vec::with_capacity(paths.len() << self.l());
        for p in paths {
            for g in Bits::all(self.l()) {
                out.push(PMorphism { path: p.clone(), g });
            }
        }
        out
    }

    /// Path name, with `@` and the torsion part appended when it is nonzero.
    pub fn morphism_name(&self, m: &PMorphism) -> String {
        let base = self.skeleton.path_name(&m.path);
        if m.g.is_zero() {
            base
        } else {
            let bits: String = m.g.coords().iter().map(|b| char::from(b'0' + b)).collect();
            format!("{base}@{bits}")
        }
    }

    /// The finite fragment with degrees in `{0..bound}^k x Z_2^l`.
    pub fn to_table(&self, bound: u64) -> Result<FiniteCategoryTable> {
        let n = self.skeleton.vertices().len();
        let all = self.morphisms(bound);
        let mut ordered: Vec<PMorphism> = (0..n).map(|v| self.identity(v)).collect();
        ordered.extend(
            all.into_iter()
                .filter(|m| !(m.path.is_vertex() && m.g.is_zero())),
        );
        let index: HashMap<&PMorphism, usize> =
            ordered.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let morphisms: Vec<TableMorphism> = ordered
            .iter()
            .map(|m| TableMorphism {
                id: self.morphism_name(m),
                degree: self.degree(m),
                range: self.range(m),
                source: self.source(m),
            })
            .collect();
        let mut compose = Vec::new();
        for (i, a) in ordered.iter().enumerate().skip(n) {
            for (j, b) in ordered.iter().enumerate().skip(n) {
                if let Some(c) = self.compose(a, b) {
                    if let Some(&k) = index.get(&c) {
                        compose.push((i, j, k));
                    }
                }
            }
        }
        FiniteCategoryTable::from_indices(
            self.k(),
            self.l(),
            self.skeleton.vertices().to_vec(),
            morphisms,
            compose,
        )
    }

    /// Equality of skeletons and actions by vertex and edge names.
    pub fn same_by_names(&self, other: &Self) -> bool {
        if self.l() != other.l() || !self.skeleton.same_by_names(&other.skeleton) {
            return false;
        }
        let (s, t) = (&self.skeleton, &other.skeleton);
        let vmap: Vec<usize> = s
            .vertices()
            .iter()
            .map(|v| t.vertex_index(v).expect("same names"))
            .collect();
        let emap: Vec<usize> = s
            .edges()
            .iter()
            .map(|e| t.edge_index(&e.id).expect("same names"))
            .collect();
        self.action
            .generators()
            .iter()
            .zip(other.action.generators())
            .all(|(a, b)| {
                (0..vmap.len()).all(|v| vmap[a.vertices[v]] == b.vertices[vmap[v]])
                    && (0..emap.len()).all(|e| emap[a.edges[e]] == b.edges[emap[e]])
            })
    }

    /// The morphism `(lambda, mu)` of `A x B` built by [`cartesian_product`].
    pub fn product_morphism(
        a: &Self,
        b: &Self,
        product: &Self,
        ma: &PMorphism,
        mb: &PMorphism,
    ) -> Option<PMorphism> {
        let (na, nb) = (a.skeleton.vertices().len(), b.skeleton.vertices().len());
        let ea = a.skeleton.edges().len();
        let s = &product.skeleton;
        let (rb, sa) = (mb.path.range(), ma.path.source());
        // (lambda, r(mu)) then (s(lambda), mu)
        let mut edges: Vec<usize> = ma.path.edges().iter().map(|&e| e * nb + rb).collect();
        edges.extend(mb.path.edges().iter().map(|&f| ea * nb + f * na + sa));
        let path = s.normalize(
            ma.path.range() * nb + rb,
            sa * nb + mb.path.source(),
            edges,
        )?;
        Some(PMorphism {
            path,
            g: ma.g.concat(&mb.g),
        })
    }
}

impl CompositionDomain for PGraphPresentation {
    type Arrow = PMorphism;

    fn compose(&self, a: &PMorphism, b: &PMorphism) -> Option<PMorphism> {
        PGraphPresentation::compose(self, a, b)
    }

    fn range_unit(&self, a: &PMorphism) -> PMorphism {
        self.identity(self.range(a))
    }

    fn source_unit(&self, a: &PMorphism) -> PMorphism {
        self.identity(self.source(a))
    }
}

/// `A x B` as a `(N^{kA+kB} x Z_2^{lA+lB})`-graph: colours and generators
/// of `A` come first.
pub fn cartesian_product(a: &PGraphPresentation, b: &PGraphPresentation) -> PGraphPresentation {
    let skeleton = KGraphSkeleton::product(&a.skeleton, &b.skeleton);
    let action = FiniteAbelianAction::product(&a.skeleton, &a.action, &b.skeleton, &b.action);
    PGraphPresentation { skeleton, action }
}

/// `Gamma x_b Z_2^l` with the translation action `tau_h(lambda, g) =
/// (lambda, g + h)`.
pub fn skew_product(s: &KGraphSkeleton, b: &[Bits], l: usize) -> Result<PGraphPresentation> {
    let diagnostics = validate_skeleton(s);
    if let Some(first) = diagnostics.first() {
        return Err(Error::InvalidGraph(first.to_string()));
    }
    let skew = s.skew(b, l)?;
    let size = 1usize << l;
    let generators = (0..l)
        .map(|i| Automorphism {
            vertices: (0..skew.vertices().len())
                .map(|x| (x / size) * size + ((x % size) ^ (1 << i)))
                .collect(),
            edges: (0..skew.edges().len())
                .map(|x| (x / size) * size + ((x % size) ^ (1 << i)))
                .collect(),
        })
        .collect();
    let action = FiniteAbelianAction::new(&skew, generators)?;
    crossed_product(skew, action)
}

/// The unique `m*` with `m m* = r(m)` and `m* m = s(m)`, for `m` of degree
/// an order-two generator.
pub fn star_of(p: &PGraphPresentation, m: &PMorphism) -> Result<PMorphism> {
    let d = p.degree(m);
    if d.k() != p.k() || d.l() != p.l() {
        return Err(Error::DimensionMismatch("morphism does not belong to this P-graph".into()));
    }
    if !(d.free().iter().all(|&x| x == 0) && d.is_generator()) {
        return Err(Error::DegreeNotOrderTwo(d.to_string()));
    }
    let star = p.torsion_at(p.source(m), m.g);
    let left = p.compose(m, &star);
    let right = p.compose(&star, m);
    if left != Some(p.identity(p.range(m))) || right != Some(p.identity(p.source(m))) {
        return Err(Error::NotAPGraph(format!(
            "no inverse for {} of degree {d}",
            p.morphism_name(m)
        )));
    }
    Ok(star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{c_lambda, verify_cocycle};
    use crate::pgraph::{validate_skeleton, OneGraph};

    fn point() -> KGraphSkeleton {
        KGraphSkeleton::discrete(0, vec!["v".into()]).unwrap()
    }

    fn z2() -> PGraphPresentation {
        let s = point();
        let a = FiniteAbelianAction::trivial(&s, 1);
        crossed_product(s, a).unwrap()
    }

    fn omega_z2() -> PGraphPresentation {
        skew_product(&point(), &[], 1).unwrap()
    }

    fn b2_flip() -> PGraphPresentation {
        let s = KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 2));
        let flip = Automorphism {
            vertices: vec![0],
            edges: vec![1, 0],
        };
        let a = FiniteAbelianAction::new(&s, vec![flip]).unwrap();
        crossed_product(s, a).unwrap()
    }

    fn t1() -> PGraphPresentation {
        let s = KGraphSkeleton::torus(1);
        let a = FiniteAbelianAction::trivial(&s, 0);
        crossed_product(s, a).unwrap()
    }

    fn check_associative(p: &PGraphPresentation, bound: u64) {
        let ms = p.morphisms(bound);
        for a in &ms {
            for b in &ms {
                let Some(ab) = p.compose(a, b) else { continue };
                for c in &ms {
                    let Some(bc) = p.compose(b, c) else { continue };
                    assert_eq!(p.compose(&ab, c), p.compose(a, &bc));
                }
            }
        }
    }

    #[test]
    fn z2_is_one_object_group() {
        let p = z2();
        let ms = p.morphisms(2);
        assert_eq!(ms.len(), 2);
        let u = p.torsion_at(0, Bits::unit(1, 0));
        assert_eq!(p.compose(&u, &u), Some(p.identity(0)));
        assert_eq!(star_of(&p, &u).unwrap(), u);
    }

    #[test]
    fn omega_stars() {
        let p = omega_z2();
        assert_eq!(p.skeleton().vertices().len(), 2);
        for v in 0..2 {
            let m = p.torsion_at(v, Bits::unit(1, 0));
            let star = star_of(&p, &m).unwrap();
            assert_eq!(star, p.torsion_at(1 - v, Bits::unit(1, 0)));
            assert_eq!(star_of(&p, &star).unwrap(), m);
        }
        assert!(matches!(
            star_of(&p, &p.identity(0)),
            Err(Error::DegreeNotOrderTwo(_))
        ));
    }

    #[test]
    fn b2_flip_composition() {
        let p = b2_flip();
        let g = Bits::unit(1, 0);
        let flip = p.torsion_at(0, g);
        let e0 = p.edge(0, Bits::zero(1));
        // (v, 1)(e1, 0) = (e2, 1)
        assert_eq!(p.compose(&flip, &e0), Some(p.edge(1, g)));
        check_associative(&p, 2);
        assert!(matches!(
            star_of(&p, &e0),
            Err(Error::DegreeNotOrderTwo(_))
        ));
    }

    #[test]
    fn associativity_and_factorisation() {
        for p in [z2(), omega_z2(), b2_flip(), cartesian_product(&b2_flip(), &t1())] {
            check_associative(&p, 2);
            let ms = p.morphisms(2);
            for m in &ms {
                let d = p.degree(m);
                for prefix in &ms {
                    let pd = p.degree(prefix);
                    if pd.free().iter().zip(d.free()).any(|(a, b)| a > b) {
                        continue;
                    }
                    let (mu, nu) = p.factor(m, &pd).unwrap();
                    assert_eq!(p.degree(&mu), pd);
                    assert_eq!(p.compose(&mu, &nu).as_ref(), Some(m));
                    // uniqueness: no other pair of these degrees composes to m
                    let count = ms
                        .iter()
                        .filter(|x| p.degree(x) == pd)
                        .flat_map(|x| ms.iter().map(move |y| (x, y)))
                        .filter(|(_, y)| p.degree(y) == p.degree(&nu))
                        .filter(|(x, y)| p.compose(x, y).as_ref() == Some(m))
                        .count();
                    assert_eq!(count, 1);
                }
            }
        }
    }

    #[test]
    fn products() {
        let p = cartesian_product(&t1(), &t1());
        assert!(p.skeleton().same_by_names(&KGraphSkeleton::product(
            &KGraphSkeleton::torus(1),
            &KGraphSkeleton::torus(1)
        )));
        assert_eq!(p.skeleton().vertices().len(), 1);
        assert_eq!(p.skeleton().edges().len(), 2);
        assert_eq!(p.skeleton().squares().len(), 1);
        let sq = p.skeleton().squares()[0];
        assert_eq!((sq[0], sq[1]), (sq[3], sq[2]));

        let zz = cartesian_product(&z2(), &z2());
        assert_eq!(zz.dims(), (0, 2));
        assert_eq!(zz.morphisms(1).len(), 4);

        let unit = crossed_product(point(), FiniteAbelianAction::trivial(&point(), 0)).unwrap();
        let a = b2_flip();
        let au = cartesian_product(&a, &unit);
        assert_eq!(au.morphisms(2).len(), a.morphisms(2).len());
        assert!(validate_skeleton(au.skeleton()).is_valid());

        let ab = cartesian_product(&a, &omega_z2());
        assert_eq!(ab.skeleton().vertices().len(), 2);
        assert_eq!(ab.skeleton().edges().len(), 4);
        let ma = a.edge(1, Bits::unit(1, 0));
        let mb = omega_z2().torsion_at(0, Bits::unit(1, 0));
        let m = PGraphPresentation::product_morphism(&a, &omega_z2(), &ab, &ma, &mb).unwrap();
        let d = ab.degree(&m);
        assert_eq!(d.free(), &[1]);
        assert_eq!(d.torsion().coords(), vec![1, 1]);
    }

    #[test]
    fn skew_products() {
        let b2 = KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 2));
        let zero = [Bits::zero(1), Bits::zero(1)];
        let two = skew_product(&b2, &zero, 1).unwrap();
        // two disjoint copies: no edge joins (v,0) and (v,1)
        for e in two.skeleton().edges() {
            assert_eq!(e.source, e.range);
        }
        assert_eq!(two.action().generators()[0].vertices, vec![1, 0]);

        let one = [Bits::unit(1, 0), Bits::unit(1, 0)];
        let cover = skew_product(&b2, &one, 1).unwrap();
        for e in cover.skeleton().edges() {
            assert_ne!(e.source, e.range);
        }
        assert_eq!(cover.skeleton().edges().len(), 4);

        let cyc = skew_product(&KGraphSkeleton::torus(1), &[Bits::unit(1, 0)], 1).unwrap();
        assert_eq!(cyc.skeleton().vertices().len(), 2);
        assert_eq!(cyc.skeleton().edges().len(), 2);

        // e_a f_b = f_a e_b on one vertex; b(e_0) = 1 alone breaks the square
        // e_0 f_1 = f_0 e_1
        let edges = ["e0", "e1", "f0", "f1"]
            .iter()
            .enumerate()
            .map(|(i, id)| crate::pgraph::ColoredEdge {
                id: id.to_string(),
                color: i / 2,
                source: 0,
                range: 0,
            })
            .collect();
        let squares = (0..2)
            .flat_map(|a| (0..2).map(move |b| [a, 2 + b, 2 + a, b]))
            .collect();
        let twisted = KGraphSkeleton::new(2, vec!["v".into()], edges, squares).unwrap();
        assert!(validate_skeleton(&twisted).is_valid());
        let values = [Bits::unit(1, 0), Bits::zero(1), Bits::zero(1), Bits::zero(1)];
        assert!(matches!(
            skew_product(&twisted, &values, 1),
            Err(Error::InvalidFunctor(_))
        ));
        let uniform = [Bits::unit(1, 0); 4];
        assert!(skew_product(&twisted, &uniform, 1).is_ok());
    }

    #[test]
    fn c_lambda_is_a_cocycle_on_fragments() {
        for p in [z2(), omega_z2(), b2_flip(), cartesian_product(&b2_flip(), &z2())] {
            let ms = p.morphisms(1);
            let mut triples = Vec::new();
            for a in &ms {
                for b in &ms {
                    if p.compose(a, b).is_none() {
                        continue;
                    }
                    for c in &ms {
                        if p.compose(b, c).is_some() {
                            triples.push((a.clone(), b.clone(), c.clone()));
                        }
                    }
                }
            }
            let dims = p.dims();
            let check = verify_cocycle(
                &p,
                |a, b| {
                    c_lambda(dims, &p.degree(a), &p.degree(b))
                        .unwrap()
                        .parity()
                },
                triples,
            )
            .unwrap();
            assert!(check.holds());
        }
    }

    #[test]
    fn crossed_product_rejects_foreign_action() {
        let s = KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 2));
        let other = KGraphSkeleton::from_one_graph(&OneGraph::bouquet(0, 3));
        let a = FiniteAbelianAction::trivial(&other, 1);
        assert!(matches!(crossed_product(s, a), Err(Error::InvalidAction(_))));
    }
}
