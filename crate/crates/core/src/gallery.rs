//! Worked examples with known answers, run by `kgr gallery`.

use crate::cocycle::{
    bicharacter, find_coboundary, permute_kappa, product_sign_identity, verify_table, Bits,
    CocycleTable, Permutation, Sign,
};
use crate::error::Result;
use crate::fgab::{FgAbGroup, FgAbHom, LimitClassification, Presentation};
use crate::gradedk::{
    clifford_kgr, crossed_z2_kgr, cuntz_kgr, kgr_graph, pv_solve, shift_cl1,
    stationary_limit_kgr, ungraded_k, GradedKPair, PvProblem,
};
use crate::pgraph::{
    decompose, skew_product, star_of, DeltaLabeling, Edge, FiniteCategoryTable, KGraphSkeleton,
    OneGraph,
};
use crate::zmat::ZMatrix;

pub struct GalleryEntry {
    pub name: &'static str,
    pub outcome: Result<bool>,
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

fn zero() -> FgAbGroup {
    FgAbGroup::trivial()
}

fn pair(k0: FgAbGroup, k1: FgAbGroup) -> GradedKPair {
    GradedKPair::new(k0, k1)
}

/// The two-vertex graph with all four edges, signed so that
/// `A = [[-1, -1], [1, -1]]`.
pub fn k2_graph() -> (OneGraph, DeltaLabeling) {
    let e = |id: &str, s: &str, r: &str| Edge {
        id: id.into(),
        source: s.into(),
        range: r.into(),
    };
    let g = OneGraph::new(
        vec!["v1".into(), "v2".into()],
        vec![
            e("a", "v1", "v1"),
            e("b", "v2", "v1"),
            e("c", "v1", "v2"),
            e("d", "v2", "v2"),
        ],
    )
    .expect("well-formed");
    let d = DeltaLabeling::from_fn(&g, |x| u8::from(x.id != "c"));
    (g, d)
}

/// `F_n` with `delta(e_i) = 0`, `delta(f_i) = 1`.
pub fn fibonacci(n: usize) -> (OneGraph, DeltaLabeling) {
    let g = OneGraph::fibonacci_truncation(n);
    let d = DeltaLabeling::from_fn(&g, |e| u8::from(e.id.starts_with('f')));
    (g, d)
}

type Example = (&'static str, Box<dyn Fn() -> Result<bool>>);

fn entries() -> Vec<Example> {
    vec![
        (
            "complete graph on two vertices: K^gr = (Z/5, 0)",
            Box::new(|| {
                let (g, d) = k2_graph();
                Ok(kgr_graph(&g, &d, false)? == pair(FgAbGroup::cyclic(5), zero()))
            }),
        ),
        (
            "O_2 with both edges odd: K^gr = (Z/3, 0)",
            Box::new(|| Ok(cuntz_kgr(2, 0)? == pair(FgAbGroup::cyclic(3), zero()))),
        ),
        (
            "B_3 with one odd edge: K^gr = (Z, Z)",
            Box::new(|| {
                let g = OneGraph::bouquet(1, 2);
                Ok(kgr_graph(&g, &DeltaLabeling::odd_prefix(&g, 1), false)? == pair(z(), z()))
            }),
        ),
        (
            "Cuntz closed form agrees with the matrix formula for n <= 6",
            Box::new(|| {
                for n in 1..=6usize {
                    for p in 0..=n {
                        let g = OneGraph::bouquet(p, n - p);
                        let d = DeltaLabeling::odd_prefix(&g, p);
                        if kgr_graph(&g, &d, false)? != cuntz_kgr(p as u64, (n - p) as u64)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }),
        ),
        (
            "B_2 ungraded: K(O_2) = (0, 0)",
            Box::new(|| Ok(ungraded_k(&OneGraph::bouquet(0, 2), false)? == pair(zero(), zero()))),
        ),
        (
            "T_1 with its loop odd: K^gr = (Z/2, 0)",
            Box::new(|| {
                let g = OneGraph::bouquet(1, 0);
                Ok(kgr_graph(&g, &DeltaLabeling::constant(&g, 1), false)?
                    == pair(FgAbGroup::cyclic(2), zero()))
            }),
        ),
        (
            "Clifford algebras Cl_0 .. Cl_8 alternate (Z, 0) and (0, Z)",
            Box::new(|| {
                let mut current = clifford_kgr(0);
                for n in 0..=8u64 {
                    let want = if n % 2 == 0 {
                        pair(z(), zero())
                    } else {
                        pair(zero(), z())
                    };
                    if clifford_kgr(n) != want || current != want {
                        return Ok(false);
                    }
                    current = shift_cl1(&current);
                }
                Ok(true)
            }),
        ),
        (
            "T_1 x Z_2 carries Cl_1: (Z/2, 0) shifts to (0, Z/2)",
            Box::new(|| {
                Ok(shift_cl1(&pair(FgAbGroup::cyclic(2), zero()))
                    == pair(zero(), FgAbGroup::cyclic(2)))
            }),
        ),
        (
            "infinite dihedral algebra: (Z^3, 0) becomes (0, Z^3)",
            Box::new(|| {
                Ok(crossed_z2_kgr(&pair(FgAbGroup::free(3), zero()))
                    == pair(zero(), FgAbGroup::free(3)))
            }),
        ),
        (
            "irrational rotation 2-graph: (Z^2, Z^2) for k = 0, (Z/2^2, 0) for k = 1",
            Box::new(|| {
                let solve = |k| -> Result<Option<GradedKPair>> {
                    let p = PvProblem::functor_graded(
                        Presentation::free(2),
                        Presentation::free(0),
                        (ZMatrix::identity(2), ZMatrix::identity(0)),
                        k,
                    )?;
                    Ok(pv_solve(&p)?.resolved())
                };
                let two = FgAbGroup::new(0, vec![2.into(), 2.into()])?;
                Ok(solve(0)? == Some(pair(FgAbGroup::free(2), FgAbGroup::free(2)))
                    && solve(1)? == Some(pair(two, zero())))
            }),
        ),
        (
            "twisted T_2: (Z/2, Z/2)",
            Box::new(|| {
                let t1 = OneGraph::bouquet(1, 0);
                let k = kgr_graph(&t1, &DeltaLabeling::constant(&t1, 1), false)?;
                let p = PvProblem::functor_graded(
                    Presentation::of_group(&k.k0),
                    Presentation::of_group(&k.k1),
                    (
                        ZMatrix::identity(k.k0.generators()),
                        ZMatrix::identity(k.k1.generators()),
                    ),
                    1,
                )?;
                Ok(pv_solve(&p)?.resolved()
                    == Some(pair(FgAbGroup::cyclic(2), FgAbGroup::cyclic(2))))
            }),
        ),
        (
            "Fibonacci truncations F_2 .. F_10: zero signed matrix, K^gr = (0, 0)",
            Box::new(|| {
                for n in 2..=10 {
                    let (g, d) = fibonacci(n);
                    if !crate::gradedk::signed_adjacency(&g, &d)?.is_zero()
                        || kgr_graph(&g, &d, true)? != pair(zero(), zero())
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }),
        ),
        (
            "M_2^infinity grading: lim(Z, 0) = 0",
            Box::new(|| {
                let g = Presentation::free(1);
                let f = FgAbHom::zero(&g, &g);
                Ok(stationary_limit_kgr(&g, &f)? == LimitClassification::Zero)
            }),
        ),
        (
            "kappa is a 2-cocycle on Z_2^l for l <= 3",
            Box::new(|| Ok((0..=3).all(|l| verify_table(&CocycleTable::kappa(l)).holds()))),
        ),
        (
            "bicharacter of c_kappa: +1 on the diagonal, -1 off it",
            Box::new(|| {
                let c = CocycleTable::kappa(3);
                for i in 0..3 {
                    for j in 0..3 {
                        let want = if i == j { Sign::Plus } else { Sign::Minus };
                        if bicharacter(&c, &Bits::unit(3, i), &Bits::unit(3, j))? != want {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }),
        ),
        (
            "c_kappa and every permuted c_kappa are cohomologous (l = 3)",
            Box::new(|| {
                let k = CocycleTable::kappa(3);
                for s in Permutation::all(3) {
                    let ks = permute_kappa(&k, &s)?;
                    match find_coboundary(&k, &ks, 3)? {
                        Some(b) if b.relates(&k, &ks) => {}
                        _ => return Ok(false),
                    }
                }
                Ok(true)
            }),
        ),
        (
            "product sign factorisation for total dimension <= 6",
            Box::new(|| {
                for total in 0..=6usize {
                    for ka in 0..=total {
                        for a in 0..=total - ka {
                            for kb in 0..=total - ka - a {
                                let b = total - ka - a - kb;
                                if !product_sign_identity((ka, a), (kb, b)) {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
                Ok(true)
            }),
        ),
        (
            "Omega_{Z_2} decomposes to the translation action, stars swap vertices",
            Box::new(|| {
                let point = KGraphSkeleton::discrete(0, vec!["v".into()])?;
                let omega = skew_product(&point, &[], 1)?;
                let table: FiniteCategoryTable = omega.to_table(1)?;
                let d = decompose(&table)?;
                let g = Bits::unit(1, 0);
                let m = d.presentation.torsion_at(0, g);
                Ok(d.presentation.same_by_names(&omega)
                    && d.presentation.action().generators()[0].vertices == vec![1, 0]
                    && star_of(&d.presentation, &m)? == d.presentation.torsion_at(1, g))
            }),
        ),
    ]
}

pub fn run_gallery() -> Vec<GalleryEntry> {
    entries()
        .into_iter()
        .map(|(name, f)| GalleryEntry {
            name,
            outcome: f(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_passes() {
        for e in run_gallery() {
            assert!(matches!(e.outcome, Ok(true)), "{}: {:?}", e.name, e.outcome);
        }
    }
}
