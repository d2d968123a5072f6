//! 1-graphs, k-graph skeletons and P-graphs for `P = N^k x Z_2^l`, kept in
//! crossed-product form `Gamma x_rho F`.

mod action;
mod graph;
mod presentation;
mod skeleton;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cocycle::Bits;
use crate::error::{Error, Result};

pub use action::{ActionFile, ActionFileGenerator, Automorphism, FiniteAbelianAction};
pub use graph::{graph_checks, DeltaLabeling, Edge, GraphChecks, GraphFile, GraphFileEdge, OneGraph};
pub use presentation::{
    cartesian_product, crossed_product, skew_product, star_of, PGraphPresentation, PMorphism,
};
pub use skeleton::{
    validate_skeleton, ColoredEdge, Diagnostics, KGraphFile, KGraphFileEdge, KGraphSkeleton, KPath,
};
pub use table::{decompose, Decomposition, FiniteCategoryTable, TableMorphism};

/// An element of `N^k x Z_2^l`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegreeElem {
    free: Vec<u64>,
    torsion: Bits,
}

impl DegreeElem {
    pub fn new(free: Vec<u64>, torsion: Bits) -> Self {
        Self { free, torsion }
    }

    pub fn zero(k: usize, l: usize) -> Self {
        Self {
            free: vec![0; k],
            torsion: Bits::zero(l),
        }
    }

    /// The free generator `e_i` (0-based).
    pub fn free_unit(k: usize, l: usize, i: usize) -> Self {
        let mut d = Self::zero(k, l);
        d.free[i] = 1;
        d
    }

    pub fn torsion_only(k: usize, g: Bits) -> Self {
        Self {
            free: vec![0; k],
            torsion: g,
        }
    }

    pub fn k(&self) -> usize {
        self.free.len()
    }

    pub fn l(&self) -> usize {
        self.torsion.len()
    }

    pub fn free(&self) -> &[u64] {
        &self.free
    }

    pub fn torsion(&self) -> Bits {
        self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(Self {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.add(&other.torsion)?,
        })
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.k() != other.k() || self.l() != other.l() {
            return Err(Error::DimensionMismatch(format!(
                "N^{} x Z_2^{} against N^{} x Z_2^{}",
                self.k(),
                self.l(),
                other.k(),
                other.l()
            )));
        }
        Ok(())
    }

    /// Coordinatewise reduction mod 2 into `Z_2^{k+l}`, free coordinates first.
    pub fn reduce_mod2(&self) -> Bits {
        let mut mask = 0u64;
        for (i, &x) in self.free.iter().enumerate() {
            mask |= (x & 1) << i;
        }
        Bits::from_mask(self.k(), mask).concat(&self.torsion)
    }

    /// True for a degree with a single coordinate equal to one.
    pub fn is_generator(&self) -> bool {
        let free_sum: u64 = self.free.iter().sum();
        let tors = self.torsion.mask().count_ones() as u64;
        free_sum + tors == 1
    }
}

impl fmt::Display for DegreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.free.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "; ")?;
        for i in 0..self.l() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.torsion.coord(i))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    #[serde(default)]
    free: Vec<u64>,
    #[serde(default)]
    torsion: Vec<u8>,
}

impl Serialize for DegreeElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DegreeJson {
            free: self.free.clone(),
            torsion: self.torsion.coords(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DegreeElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DegreeJson::deserialize(d)?;
        let torsion = Bits::from_coords(&raw.torsion).map_err(serde::de::Error::custom)?;
        Ok(Self::new(raw.free, torsion))
    }
}

/// `delta_Lambda`: total degree mod 2.
pub fn delta_lambda(d: &DegreeElem) -> u8 {
    d.reduce_mod2().parity()
}
