//! Finitely generated abelian groups and homomorphisms between presented
//! groups.
//!
//! Groups are kept in invariant-factor form `Z^r (+) Z/d1 (+) ... (+) Z/dk`
//! with `d1 | d2 | ... | dk`, so structural equality is isomorphism.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::json::int_vec;
use crate::zmat::{hermite, kernel_basis, snf, ZMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(with = "int_vec")]
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::Invalid(format!(
                    "torsion factor {d} must be at least 2"
                )));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(Error::Invalid(format!(
                    "torsion factors must form a divisibility chain: {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        let n = n.abs();
        if n.is_zero() {
            Self::free(1)
        } else if n.is_one() {
            Self::trivial()
        } else {
            Self {
                free_rank: 0,
                torsion: vec![n],
            }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().product::<BigInt>())
    }

    /// Number of generators in the standard presentation.
    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut diag = self.torsion.clone();
        diag.extend(other.torsion.iter().cloned());
        let p = Presentation::new(diag.len(), ZMatrix::diagonal(&diag))
            .expect("square diagonal presentation");
        let t = normal_form(&p);
        Self {
            free_rank: self.free_rank + other.free_rank + t.free_rank,
            torsion: t.torsion,
        }
    }
}

impl Default for FgAbGroup {
    fn default() -> Self {
        Self::trivial()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// Parses the display grammar, e.g. `0`, `Z`, `Z^2 (+) Z/2`. Torsion
/// factors need not form a divisibility chain; the result is normalised.
impl std::str::FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot read {text:?} as an abelian group"));
        let mut rank = 0usize;
        let mut orders: Vec<BigInt> = Vec::new();
        for part in text.split("(+)").map(str::trim) {
            if part == "0" {
                continue;
            } else if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.trim().parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    rank += 1;
                } else {
                    orders.push(d.abs());
                }
            } else {
                return Err(bad());
            }
        }
        let n = rank + orders.len();
        let mut diag = vec![BigInt::zero(); rank];
        diag.extend(orders);
        let relations = ZMatrix::diagonal(&diag);
        Ok(normal_form(&Presentation::new(n, relations)?))
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            #[serde(default, with = "int_vec")]
            torsion: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        FgAbGroup::new(raw.rank, raw.torsion).map_err(serde::de::Error::custom)
    }
}

/// `Z^n / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generators: usize,
    relations: ZMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: ZMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows but the presentation has {generators} generators",
                relations.rows()
            )));
        }
        Ok(Self {
            generators,
            relations,
        })
    }

    pub fn free(n: usize) -> Self {
        Self {
            generators: n,
            relations: ZMatrix::zeros(n, 0),
        }
    }

    /// Standard presentation: free generators first, then one cyclic
    /// generator per torsion factor.
    pub fn of_group(g: &FgAbGroup) -> Self {
        let n = g.generators();
        let cols: Vec<Vec<BigInt>> = g
            .torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[g.free_rank + i] = d.clone();
                c
            })
            .collect();
        Self {
            generators: n,
            relations: ZMatrix::from_columns(n, &cols),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &ZMatrix {
        &self.relations
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            generators: usize,
            relations: Option<ZMatrix>,
        }
        let raw = Raw::deserialize(d)?;
        let rel = raw
            .relations
            .unwrap_or_else(|| ZMatrix::zeros(raw.generators, 0));
        Presentation::new(raw.generators, rel).map_err(serde::de::Error::custom)
    }
}

/// Invariant-factor form of a presented group.
pub fn normal_form(p: &Presentation) -> FgAbGroup {
    let diag = snf(&p.relations).diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .into_iter()
        .filter(|d| *d > BigInt::one())
        .collect();
    FgAbGroup {
        free_rank: p.generators - rank,
        torsion,
    }
}

/// A homomorphism between presented groups, given by a lift
/// `codomain.generators x domain.generators` on the free covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbHom {
    domain: Presentation,
    codomain: Presentation,
    lift: ZMatrix,
}

impl FgAbHom {
    /// Checks that the lift carries domain relations into the codomain
    /// relation lattice.
    pub fn new(domain: Presentation, codomain: Presentation, lift: ZMatrix) -> Result<Self> {
        if lift.rows() != codomain.generators || lift.cols() != domain.generators {
            return Err(Error::IllFormedHom(format!(
                "lift is {}x{}, expected {}x{}",
                lift.rows(),
                lift.cols(),
                codomain.generators,
                domain.generators
            )));
        }
        let images = lift.mul(&domain.relations)?;
        let target = hermite(&codomain.relations);
        for (j, col) in images.columns().iter().enumerate() {
            if !target.contains(col) {
                return Err(Error::IllFormedHom(format!(
                    "domain relation {j} maps outside the codomain relations"
                )));
            }
        }
        Ok(Self {
            domain,
            codomain,
            lift,
        })
    }

    pub fn identity(p: &Presentation) -> Self {
        Self {
            domain: p.clone(),
            codomain: p.clone(),
            lift: ZMatrix::identity(p.generators),
        }
    }

    pub fn zero(domain: &Presentation, codomain: &Presentation) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            lift: ZMatrix::zeros(codomain.generators, domain.generators),
        }
    }

    /// Endomorphism of `p` with the given lift.
    pub fn endo(p: &Presentation, lift: ZMatrix) -> Result<Self> {
        Self::new(p.clone(), p.clone(), lift)
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn codomain(&self) -> &Presentation {
        &self.codomain
    }

    pub fn lift(&self) -> &ZMatrix {
        &self.lift
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// The lattice `{x : F x in im S}` as a Hermite basis; it contains the
    /// domain relations.
    fn preimage_of_relations(&self) -> ZMatrix {
        let stacked = self
            .lift
            .hcat(&self.codomain.relations.neg())
            .expect("row counts agree by construction");
        let k = kernel_basis(&stacked);
        let projected = k.row_slice(0..self.domain.generators);
        hermite(&projected).basis()
    }

    /// True when the induced map is zero.
    pub fn is_zero(&self) -> bool {
        let target = hermite(&self.codomain.relations);
        self.lift.columns().iter().all(|c| target.contains(c))
    }

    /// Power of an endomorphism.
    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_endomorphism() {
            return Err(Error::DomainMismatch(
                "only endomorphisms can be raised to powers".into(),
            ));
        }
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            lift: self.lift.pow(e)?,
        })
    }

    /// `self - other`, both with the same domain and codomain.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DomainMismatch(
                "difference of homomorphisms with different endpoints".into(),
            ));
        }
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            lift: self.lift.sub(&other.lift)?,
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            lift: self.lift.scale(&BigInt::from(c)),
        }
    }
}

pub fn coker(h: &FgAbHom) -> FgAbGroup {
    let block = h
        .lift
        .hcat(&h.codomain.relations)
        .expect("row counts agree by construction");
    normal_form(&Presentation {
        generators: h.codomain.generators,
        relations: block,
    })
}

pub fn ker(h: &FgAbHom) -> FgAbGroup {
    let lattice = h.preimage_of_relations();
    let herm = hermite(&lattice);
    let s = herm.rank();
    let coords: Vec<Vec<BigInt>> = h
        .domain
        .relations
        .columns()
        .iter()
        .map(|r| {
            herm.solve_in_basis(r)
                .expect("domain relations lie in the preimage lattice")
        })
        .collect();
    normal_form(&Presentation {
        generators: s,
        relations: ZMatrix::from_columns(s, &coords),
    })
}

pub fn image(h: &FgAbHom) -> FgAbGroup {
    normal_form(&Presentation {
        generators: h.domain.generators,
        relations: h.preimage_of_relations(),
    })
}

/// `g . h`.
pub fn compose(g: &FgAbHom, h: &FgAbHom) -> Result<FgAbHom> {
    if h.codomain != g.domain {
        return Err(Error::DomainMismatch(
            "codomain of the first map differs from the domain of the second".into(),
        ));
    }
    FgAbHom::new(h.domain.clone(), g.codomain.clone(), g.lift.mul(&h.lift)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitClassification {
    Stable { group: FgAbGroup },
    Zero,
    NonFinitelyGenerated { rational_rank: usize },
}

impl fmt::Display for LimitClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Stable { group } => write!(f, "stable: {group}"),
            Self::Zero => write!(f, "zero"),
            Self::NonFinitelyGenerated { rational_rank } => write!(
                f,
                "not finitely generated (rational rank {rational_rank})"
            ),
        }
    }
}

/// Colimit of `G -f-> G -f-> G -> ...`.
///
/// The images `f^m(G)` descend; once two consecutive images agree, `f` is an
/// automorphism of that image and the colimit is isomorphic to it. Past the
/// point where the rational rank settles, at most `log2 |torsion|` further
/// strict steps can occur unless `f` has non-unit determinant on the free
/// part, in which case the colimit is not finitely generated.
pub fn direct_limit_stationary(g: &Presentation, f: &FgAbHom) -> Result<LimitClassification> {
    if f.domain != *g || f.codomain != *g {
        return Err(Error::DomainMismatch(
            "stationary limit needs an endomorphism of the given presentation".into(),
        ));
    }
    let torsion_bits: u64 = normal_form(g).torsion.iter().map(|d| d.bits()).sum();
    let bound = g.generators + 2 + torsion_bits as usize;

    let image_lattice = |lift: &ZMatrix| -> ZMatrix {
        let block = lift.hcat(&g.relations).expect("square lift");
        hermite(&block).basis()
    };

    let mut power = FgAbHom::identity(g);
    let mut current = image_lattice(&power.lift);
    for _ in 0..=bound {
        let next_power = compose(f, &power)?;
        let next = image_lattice(&next_power.lift);
        if next == current {
            let group = image(&power);
            return Ok(if group.is_trivial() {
                LimitClassification::Zero
            } else {
                LimitClassification::Stable { group }
            });
        }
        power = next_power;
        current = next;
    }
    Ok(LimitClassification::NonFinitelyGenerated {
        rational_rank: image(&power).free_rank,
    })
}

/// An extension `0 -> sub -> E -> quot -> 0`, resolved only when it is
/// forced to split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionResult {
    pub sub: FgAbGroup,
    pub quot: FgAbGroup,
    pub resolved: Option<FgAbGroup>,
    pub split_reason: String,
}

impl fmt::Display for ExtensionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.resolved {
            Some(g) => write!(f, "{g}"),
            None => write!(f, "extension of {} by {}", self.quot, self.sub),
        }
    }
}

pub fn resolve_extension(sub: &FgAbGroup, quot: &FgAbGroup) -> ExtensionResult {
    let (resolved, reason) = if quot.is_trivial() {
        (Some(sub.clone()), "quotient is trivial".to_string())
    } else if sub.is_trivial() {
        (Some(quot.clone()), "subgroup is trivial".to_string())
    } else if quot.is_free() {
        (
            Some(sub.direct_sum(quot)),
            "free quotient splits".to_string(),
        )
    } else {
        (
            None,
            format!(
                "quotient {quot} has torsion and subgroup {sub} is nontrivial; \
                 the extension class is not determined"
            ),
        )
    };
    ExtensionResult {
        sub: sub.clone(),
        quot: quot.clone(),
        resolved,
        split_reason: reason,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_grammar() {
        for text in ["0", "Z", "Z^2 (+) Z/2", "Z/2 (+) Z/4", "Z^3"] {
            let g: FgAbGroup = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        let g: FgAbGroup = "Z/2 (+) Z/3".parse().unwrap();
        assert_eq!(g, FgAbGroup::cyclic(6));
        assert!("Q".parse::<FgAbGroup>().is_err());
    }

    fn g(rank: usize, torsion: &[i64]) -> FgAbGroup {
        FgAbGroup::new(rank, torsion.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    fn free_endo(rows: &[&[i64]]) -> FgAbHom {
        let n = rows.len();
        FgAbHom::endo(&Presentation::free(n), ZMatrix::from_rows(rows)).unwrap()
    }

    fn z_mod(n: i64) -> Presentation {
        Presentation::new(1, ZMatrix::from_rows(&[[n]])).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let p = Presentation::new(2, ZMatrix::scalar(2, 2)).unwrap();
        assert_eq!(normal_form(&p), g(0, &[2, 2]));
        let p = Presentation::new(2, ZMatrix::from_rows(&[[2, -1], [1, 2]])).unwrap();
        assert_eq!(normal_form(&p), g(0, &[5]));
        assert_eq!(normal_form(&Presentation::free(1)), g(1, &[]));
    }

    #[test]
    fn group_validation_and_display() {
        assert!(FgAbGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(FgAbGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert_eq!(g(0, &[]).to_string(), "0");
        assert_eq!(g(1, &[]).to_string(), "Z");
        assert_eq!(g(2, &[2]).to_string(), "Z^2 (+) Z/2");
        assert_eq!(g(0, &[2, 4]).to_string(), "Z/2 (+) Z/4");
    }

    #[test]
    fn direct_sum_normalises() {
        assert_eq!(g(0, &[2]).direct_sum(&g(0, &[3])), g(0, &[6]));
        assert_eq!(g(1, &[2]).direct_sum(&g(0, &[2])), g(1, &[2, 2]));
    }

    #[test]
    fn coker_examples() {
        assert_eq!(coker(&free_endo(&[&[2]])), g(0, &[2]));
        let h = FgAbHom::endo(&z_mod(2), ZMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(coker(&h), g(0, &[2]));
        assert_eq!(coker(&free_endo(&[&[2, 0], &[0, 2]])), g(0, &[2, 2]));
    }

    #[test]
    fn ker_examples() {
        assert_eq!(ker(&free_endo(&[&[2]])), FgAbGroup::trivial());
        assert_eq!(ker(&free_endo(&[&[0, 0], &[0, 0]])), g(2, &[]));
        let h = FgAbHom::endo(&z_mod(2), ZMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(ker(&h), g(0, &[2]));
    }

    #[test]
    fn ker_between_different_groups() {
        // Z/4 -> Z/2, 1 -> 1: kernel is 2Z/4Z = Z/2
        let h = FgAbHom::new(z_mod(4), z_mod(2), ZMatrix::from_rows(&[[1]])).unwrap();
        assert_eq!(ker(&h), g(0, &[2]));
        assert_eq!(image(&h), g(0, &[2]));
        assert_eq!(coker(&h), FgAbGroup::trivial());
        // Z/2 -> Z/4, 1 -> 2
        let h = FgAbHom::new(z_mod(2), z_mod(4), ZMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(ker(&h), FgAbGroup::trivial());
        assert_eq!(coker(&h), g(0, &[2]));
    }

    #[test]
    fn ill_formed_hom_rejected() {
        // Z/2 -> Z/4 with 1 -> 1 does not respect 2 = 0
        let err = FgAbHom::new(z_mod(2), z_mod(4), ZMatrix::from_rows(&[[1]])).unwrap_err();
        assert!(matches!(err, Error::IllFormedHom(_)));
    }

    #[test]
    fn compose_examples() {
        let h = free_endo(&[&[3]]);
        let id = FgAbHom::identity(&Presentation::free(1));
        assert_eq!(compose(&id, &h).unwrap(), h);
        assert_eq!(
            compose(&free_endo(&[&[2]]), &h).unwrap().lift(),
            &ZMatrix::from_rows(&[[6]])
        );
        let zero = FgAbHom::zero(&Presentation::free(1), &Presentation::free(1));
        assert!(compose(&zero, &h).unwrap().is_zero());
        let other = FgAbHom::endo(&z_mod(2), ZMatrix::from_rows(&[[1]])).unwrap();
        assert!(matches!(
            compose(&other, &h),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn limit_examples() {
        let z2 = Presentation::free(2);
        let f = free_endo(&[&[1, 2], &[0, 1]]);
        assert_eq!(
            direct_limit_stationary(&z2, &f).unwrap(),
            LimitClassification::Stable { group: g(2, &[]) }
        );
        let z = Presentation::free(1);
        assert_eq!(
            direct_limit_stationary(&z, &free_endo(&[&[0]])).unwrap(),
            LimitClassification::Zero
        );
        assert_eq!(
            direct_limit_stationary(&z, &free_endo(&[&[2]])).unwrap(),
            LimitClassification::NonFinitelyGenerated { rational_rank: 1 }
        );
    }

    #[test]
    fn limit_of_identity_is_the_group() {
        let p = Presentation::new(2, ZMatrix::from_rows(&[[2, 0], [0, 6]])).unwrap();
        let id = FgAbHom::identity(&p);
        assert_eq!(
            direct_limit_stationary(&p, &id).unwrap(),
            LimitClassification::Stable {
                group: normal_form(&p)
            }
        );
    }

    #[test]
    fn limit_settles_on_eventual_image() {
        // Z (+) Z/4 with f = id (+) x2: eventual image is Z
        let p = Presentation::new(2, ZMatrix::from_rows(&[[0], [4]])).unwrap();
        let f = FgAbHom::endo(&p, ZMatrix::from_rows(&[[1, 0], [0, 2]])).unwrap();
        assert_eq!(
            direct_limit_stationary(&p, &f).unwrap(),
            LimitClassification::Stable { group: g(1, &[]) }
        );
        // nilpotent shift on Z^3
        let f = free_endo(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(
            direct_limit_stationary(&Presentation::free(3), &f).unwrap(),
            LimitClassification::Zero
        );
        // x3 on Z/5 is an automorphism
        let f = FgAbHom::endo(&z_mod(5), ZMatrix::from_rows(&[[3]])).unwrap();
        assert_eq!(
            direct_limit_stationary(&z_mod(5), &f).unwrap(),
            LimitClassification::Stable { group: g(0, &[5]) }
        );
    }

    #[test]
    fn extension_examples() {
        let r = resolve_extension(&g(0, &[2, 2]), &FgAbGroup::trivial());
        assert_eq!(r.resolved, Some(g(0, &[2, 2])));
        let r = resolve_extension(&g(0, &[2]), &g(1, &[]));
        assert_eq!(r.resolved, Some(g(1, &[2])));
        let r = resolve_extension(&g(0, &[2]), &g(0, &[2]));
        assert_eq!(r.resolved, None);
        assert_eq!(r.sub, g(0, &[2]));
        assert_eq!(r.quot, g(0, &[2]));
    }

    #[test]
    fn group_json_round_trip() {
        let grp = g(1, &[2, 4]);
        let s = serde_json::to_string(&grp).unwrap();
        assert_eq!(s, r#"{"rank":1,"torsion":[2,4]}"#);
        assert_eq!(serde_json::from_str::<FgAbGroup>(&s).unwrap(), grp);
        assert!(serde_json::from_str::<FgAbGroup>(r#"{"rank":0,"torsion":[4,2]}"#).is_err());
    }
}
