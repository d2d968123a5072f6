//! Z/2-valued 2-cocycles on elementary abelian 2-groups and on P-graphs.
//!
//! Values are stored additively in `{0, 1}`; the `{+1, -1}` form is only a
//! presentation ([`Sign`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pgraph::DegreeElem;

/// `+1` or `-1`, i.e. `(-1)^parity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(p: u8) -> Self {
        if p & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn parity(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    // signs multiply by adding parities
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.parity() ^ rhs.parity())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// An element of `Z_2^l`. Coordinate `i` (0-based) is bit `i` of the mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    mask: u64,
}

impl Bits {
    pub const MAX_LEN: usize = 63;

    pub fn zero(len: usize) -> Self {
        assert!(len <= Self::MAX_LEN, "Bits supports at most 63 coordinates");
        Self { len, mask: 0 }
    }

    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= Self::MAX_LEN, "Bits supports at most 63 coordinates");
        Self {
            len,
            mask: mask & ((1u64 << len) - 1),
        }
    }

    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        if coords.len() > Self::MAX_LEN {
            return Err(Error::Invalid(format!(
                "at most {} Z/2 coordinates are supported",
                Self::MAX_LEN
            )));
        }
        let mut mask = 0;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => mask |= 1 << i,
                _ => {
                    return Err(Error::Invalid(format!(
                        "Z/2 coordinate must be 0 or 1, got {c}"
                    )))
                }
            }
        }
        Ok(Self {
            len: coords.len(),
            mask,
        })
    }

    /// The `i`-th standard generator (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len);
        Self::from_mask(len, 1 << i)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn coord(&self, i: usize) -> u8 {
        ((self.mask >> i) & 1) as u8
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    /// Sum of coordinates mod 2.
    pub fn parity(&self) -> u8 {
        (self.mask.count_ones() & 1) as u8
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_len(self.len, other.len)?;
        Ok(Self {
            len: self.len,
            mask: self.mask ^ other.mask,
        })
    }

    /// Concatenation with `self` in the low coordinates.
    pub fn concat(&self, other: &Self) -> Self {
        Self::from_mask(self.len + other.len, self.mask | (other.mask << self.len))
    }

    /// Coordinates `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self::from_mask(len, self.mask >> start)
    }

    /// Every element of `Z_2^len`, in increasing mask order.
    pub fn all(len: usize) -> impl Iterator<Item = Bits> {
        assert!(len < 32, "enumerating Z_2^{len} is not supported");
        (0..1u64 << len).map(move |mask| Bits { len, mask })
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coord(i))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left: a, right: b })
    }
}

/// `sum_{j < i} m_i n_j  (mod 2)`.
pub fn kappa(m: &Bits, n: &Bits) -> Result<u8> {
    check_len(m.len, n.len)?;
    let mut acc = 0u32;
    for i in 0..m.len {
        if m.coord(i) == 1 {
            // n_j for j < i
            let below = n.mask & ((1u64 << i) - 1);
            acc += below.count_ones();
        }
    }
    Ok((acc & 1) as u8)
}

pub fn c_kappa(m: &Bits, n: &Bits) -> Result<Sign> {
    kappa(m, n).map(Sign::from_parity)
}

/// A normalised additive 2-cochain on `Z_2^l`, total on `Z_2^l x Z_2^l`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct CocycleTable {
    l: usize,
    values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    l: usize,
    values: Vec<Vec<u8>>,
}

impl TryFrom<TableJson> for CocycleTable {
    type Error = Error;
    fn try_from(raw: TableJson) -> Result<Self> {
        if raw.l > 8 {
            return Err(Error::Invalid(format!("table for l = {} is too large", raw.l)));
        }
        let size = 1usize << raw.l;
        if raw.values.len() != size || raw.values.iter().any(|r| r.len() != size) {
            return Err(Error::Shape(format!(
                "cocycle table for l = {} must be {size}x{size}",
                raw.l
            )));
        }
        let values: Vec<u8> = raw.values.into_iter().flatten().collect();
        if let Some(v) = values.iter().find(|&&v| v > 1) {
            return Err(Error::Invalid(format!("table value {v} is not in Z/2")));
        }
        Ok(Self { l: raw.l, values })
    }
}

impl From<CocycleTable> for TableJson {
    fn from(t: CocycleTable) -> Self {
        let size = 1usize << t.l;
        TableJson {
            l: t.l,
            values: t.values.chunks(size).map(<[u8]>::to_vec).collect(),
        }
    }
}

impl CocycleTable {
    pub fn from_fn(l: usize, mut f: impl FnMut(&Bits, &Bits) -> u8) -> Self {
        let mut values = Vec::with_capacity(1 << (2 * l));
        for m in Bits::all(l) {
            for n in Bits::all(l) {
                values.push(f(&m, &n) & 1);
            }
        }
        Self { l, values }
    }

    pub fn kappa(l: usize) -> Self {
        Self::from_fn(l, |m, n| kappa(m, n).expect("same length"))
    }

    pub fn trivial(l: usize) -> Self {
        Self::from_fn(l, |_, _| 0)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    fn index(&self, m: &Bits, n: &Bits) -> usize {
        ((m.mask as usize) << self.l) | n.mask as usize
    }

    pub fn value(&self, m: &Bits, n: &Bits) -> Result<u8> {
        check_len(m.len, self.l)?;
        check_len(n.len, self.l)?;
        Ok(self.values[self.index(m, n)])
    }

    pub fn sign(&self, m: &Bits, n: &Bits) -> Result<Sign> {
        self.value(m, n).map(Sign::from_parity)
    }

    /// Flips one entry; used to build broken tables.
    pub fn flip(&mut self, m: &Bits, n: &Bits) {
        let i = self.index(m, n);
        self.values[i] ^= 1;
    }

    pub fn is_normalised(&self) -> bool {
        Bits::all(self.l).all(|m| {
            let z = Bits::zero(self.l);
            self.values[self.index(&m, &z)] == 0 && self.values[self.index(&z, &m)] == 0
        })
    }
}

/// A bijection of `{0, .., l-1}`; `apply` realises `(m^s)_i = m_{s(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid(format!(
                    "{images:?} is not a permutation of 0..{}",
                    images.len()
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// From the 1-based notation `[s(1), .., s(l)]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::Invalid("permutation entries start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(l: usize) -> Self {
        Self {
            images: (0..l).collect(),
        }
    }

    pub fn l(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Self { images: inv }
    }

    pub fn apply(&self, m: &Bits) -> Result<Bits> {
        check_len(m.len, self.images.len())?;
        let mut mask = 0;
        for (i, &s) in self.images.iter().enumerate() {
            mask |= (m.coord(s) as u64) << i;
        }
        Ok(Bits::from_mask(m.len, mask))
    }

    /// All permutations of `l` points, in lexicographic order.
    pub fn all(l: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; l], &mut out);
        out
    }
}

/// `k^s(m, n) = k(m^s, n^s)`.
pub fn permute_kappa(k: &CocycleTable, s: &Permutation) -> Result<CocycleTable> {
    check_len(k.l, s.l())?;
    let mut values = Vec::with_capacity(k.values.len());
    for m in Bits::all(k.l) {
        let ms = s.apply(&m)?;
        for n in Bits::all(k.l) {
            values.push(k.value(&ms, &s.apply(&n)?)?);
        }
    }
    Ok(CocycleTable { l: k.l, values })
}

/// `chi_c(m, n) = c(m, n) c(n, m)^{-1}`.
pub fn bicharacter(c: &CocycleTable, m: &Bits, n: &Bits) -> Result<Sign> {
    Ok(c.sign(m, n)? * c.sign(n, m)?)
}

/// Arrows and their partial composition, as needed to test the cocycle
/// identity. Implemented for `Z_2^l` (one object) and for P-graphs.
pub trait CompositionDomain {
    type Arrow: Clone + fmt::Debug;

    fn compose(&self, a: &Self::Arrow, b: &Self::Arrow) -> Option<Self::Arrow>;
    fn range_unit(&self, a: &Self::Arrow) -> Self::Arrow;
    fn source_unit(&self, a: &Self::Arrow) -> Self::Arrow;
}

/// `Z_2^l` as a one-object category.
#[derive(Clone, Copy, Debug)]
pub struct ElementaryTwoGroup {
    pub l: usize,
}

impl CompositionDomain for ElementaryTwoGroup {
    type Arrow = Bits;

    fn compose(&self, a: &Bits, b: &Bits) -> Option<Bits> {
        a.add(b).ok()
    }

    fn range_unit(&self, _: &Bits) -> Bits {
        Bits::zero(self.l)
    }

    fn source_unit(&self, _: &Bits) -> Bits {
        Bits::zero(self.l)
    }
}

impl ElementaryTwoGroup {
    /// Every triple of group elements.
    pub fn all_triples(&self) -> impl Iterator<Item = (Bits, Bits, Bits)> {
        let l = self.l;
        Bits::all(l).flat_map(move |a| {
            Bits::all(l).flat_map(move |b| Bits::all(l).map(move |c| (a, b, c)))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation<A> {
    Normalisation { arrow: A },
    Identity { triple: (A, A, A) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck<A> {
    pub checked: usize,
    pub counterexample: Option<CocycleViolation<A>>,
}

impl<A> CocycleCheck<A> {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `f(a,b) + f(ab,c) = f(b,c) + f(a,bc)` and normalisation on every
/// supplied triple, stopping at the first violation.
pub fn verify_cocycle<D, F, I>(domain: &D, f: F, triples: I) -> Result<CocycleCheck<D::Arrow>>
where
    D: CompositionDomain,
    F: Fn(&D::Arrow, &D::Arrow) -> u8,
    I: IntoIterator<Item = (D::Arrow, D::Arrow, D::Arrow)>,
{
    let mut checked = 0;
    for (a, b, c) in triples {
        let ab = domain.compose(&a, &b);
        let bc = domain.compose(&b, &c);
        let (Some(ab), Some(bc)) = (ab, bc) else {
            return Err(Error::NonComposableTriple(format!("({a:?}, {b:?}, {c:?})")));
        };
        for x in [&a, &b, &c] {
            let normal =
                f(&domain.range_unit(x), x) & 1 == 0 && f(x, &domain.source_unit(x)) & 1 == 0;
            if !normal {
                return Ok(CocycleCheck {
                    checked,
                    counterexample: Some(CocycleViolation::Normalisation { arrow: x.clone() }),
                });
            }
        }
        let lhs = f(&a, &b) ^ f(&ab, &c);
        let rhs = f(&b, &c) ^ f(&a, &bc);
        if (lhs ^ rhs) & 1 != 0 {
            return Ok(CocycleCheck {
                checked,
                counterexample: Some(CocycleViolation::Identity { triple: (a, b, c) }),
            });
        }
        checked += 1;
    }
    Ok(CocycleCheck {
        checked,
        counterexample: None,
    })
}

/// Exhaustive cocycle check of a table on `Z_2^l`.
pub fn verify_table(t: &CocycleTable) -> CocycleCheck<Bits> {
    let group = ElementaryTwoGroup { l: t.l };
    verify_cocycle(
        &group,
        |a, b| t.value(a, b).expect("lengths match"),
        group.all_triples(),
    )
    .expect("every triple in a group is composable")
}

/// Normalised `b : Z_2^l -> {+1, -1}`, stored additively with `b(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryMap {
    l: usize,
    values: Vec<u8>,
}

impl CoboundaryMap {
    pub fn trivial(l: usize) -> Self {
        Self {
            l,
            values: vec![0; 1 << l],
        }
    }

    /// Values indexed by mask; `values[0]` must be 0.
    pub fn from_values(l: usize, values: Vec<u8>) -> Result<Self> {
        if l > Bits::MAX_LEN || values.len() != 1usize << l {
            return Err(Error::Shape(format!(
                "a map on Z_2^{l} needs 2^{l} values, got {}",
                values.len()
            )));
        }
        if values[0] != 0 || values.iter().any(|&v| v > 1) {
            return Err(Error::Invalid(
                "values must lie in Z/2 with b(0) = 0".into(),
            ));
        }
        Ok(Self { l, values })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn value(&self, m: &Bits) -> u8 {
        self.values[m.mask as usize]
    }

    pub fn sign(&self, m: &Bits) -> Sign {
        Sign::from_parity(self.value(m))
    }

    /// `(delta^1 b)(m, n) = b(m) b(m+n)^{-1} b(n)`, additively.
    pub fn delta(&self, m: &Bits, n: &Bits) -> u8 {
        self.values[m.mask as usize]
            ^ self.values[(m.mask ^ n.mask) as usize]
            ^ self.values[n.mask as usize]
    }

    /// True when `c2 = c1 * delta b` everywhere.
    pub fn relates(&self, c1: &CocycleTable, c2: &CocycleTable) -> bool {
        c1.l == self.l
            && c2.l == self.l
            && Bits::all(self.l).all(|m| {
                Bits::all(self.l).all(|n| {
                    c2.values[c2.index(&m, &n)] == c1.values[c1.index(&m, &n)] ^ self.delta(&m, &n)
                })
            })
    }
}

/// Brute-force search for `b` with `c2 = c1 * delta b`.
///
/// Candidates are tried in lexicographic order of `(b(1), b(2), ...)`,
/// elements indexed by mask, so the first hit is the smallest.
pub fn find_coboundary(
    c1: &CocycleTable,
    c2: &CocycleTable,
    l: usize,
) -> Result<Option<CoboundaryMap>> {
    if l > 4 {
        return Err(Error::SearchSpaceTooLarge(l));
    }
    check_len(c1.l, l)?;
    check_len(c2.l, l)?;
    let size = 1usize << l;
    let nonzero = size - 1;
    // target(m, n) = c1 + c2
    let target: Vec<u8> = c1
        .values
        .iter()
        .zip(&c2.values)
        .map(|(a, b)| a ^ b)
        .collect();

    let mut values = vec![0u8; size];
    for idx in 0u64..(1u64 << nonzero) {
        for (m, v) in values.iter_mut().enumerate().skip(1) {
            *v = ((idx >> (nonzero - m)) & 1) as u8;
        }
        let ok = (0..size).all(|m| {
            (0..size).all(|n| target[(m << l) | n] == values[m] ^ values[m ^ n] ^ values[n])
        });
        if ok {
            return Ok(Some(CoboundaryMap { l, values }));
        }
    }
    Ok(None)
}

/// `c_Lambda(lambda, mu) = c_kappa(rho(d(lambda)), rho(d(mu)))`, with the
/// free coordinates placed before the Z/2 coordinates.
pub fn c_lambda(dims: (usize, usize), d_lambda: &DegreeElem, d_mu: &DegreeElem) -> Result<Sign> {
    for d in [d_lambda, d_mu] {
        if (d.k(), d.l()) != dims {
            return Err(Error::DimensionMismatch(format!(
                "degree in N^{} x Z_2^{} used with dimensions ({}, {})",
                d.k(),
                d.l(),
                dims.0,
                dims.1
            )));
        }
    }
    c_kappa(&d_lambda.reduce_mod2(), &d_mu.reduce_mod2())
}

/// Checks, over every pair of mod-2 degrees of a product `P x Q`, that
/// `c_{PxQ}((a,b),(a',b')) = c_P(a,a') c_Q(b,b') (-1)^{parity(b) parity(a')}`
/// with the P-coordinates ordered first.
pub fn product_sign_identity(dims_p: (usize, usize), dims_q: (usize, usize)) -> bool {
    product_sign_counterexample(dims_p, dims_q).is_none()
}

/// First pair of product degrees where the factorisation fails, if any.
pub fn product_sign_counterexample(
    dims_p: (usize, usize),
    dims_q: (usize, usize),
) -> Option<(Bits, Bits)> {
    let np = dims_p.0 + dims_p.1;
    let nq = dims_q.0 + dims_q.1;
    let n = np + nq;
    for x in Bits::all(n) {
        let (a, b) = (x.slice(0, np), x.slice(np, nq));
        for y in Bits::all(n) {
            let (a2, b2) = (y.slice(0, np), y.slice(np, nq));
            let whole = c_kappa(&x, &y).expect("same length");
            let split = c_kappa(&a, &a2).expect("same length")
                * c_kappa(&b, &b2).expect("same length")
                * Sign::from_parity(b.parity() & a2.parity());
            if whole != split {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(coords: &[u8]) -> Bits {
        Bits::from_coords(coords).unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&b(&[1, 0]), &b(&[0, 1])).unwrap(), 0);
        assert_eq!(kappa(&b(&[0, 1]), &b(&[1, 0])).unwrap(), 1);
        for m in Bits::all(1) {
            for n in Bits::all(1) {
                assert_eq!(kappa(&m, &n).unwrap(), 0);
            }
        }
        assert!(matches!(
            kappa(&b(&[1]), &b(&[1, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn kappa_matches_double_sum() {
        // literal transcription of sum_{1 <= j < i <= l} m_i n_j
        for l in 0..=4 {
            for m in Bits::all(l) {
                for n in Bits::all(l) {
                    let mut s = 0u8;
                    for i in 1..=l {
                        for j in 1..i {
                            s ^= m.coord(i - 1) & n.coord(j - 1);
                        }
                    }
                    assert_eq!(kappa(&m, &n).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn c_kappa_examples() {
        assert_eq!(c_kappa(&b(&[0, 1]), &b(&[1, 0])).unwrap(), Sign::Minus);
        assert_eq!(c_kappa(&b(&[0, 0]), &b(&[1, 1])).unwrap(), Sign::Plus);
        assert_eq!(c_kappa(&b(&[1, 1]), &b(&[1, 1])).unwrap(), Sign::Minus);
    }

    #[test]
    fn kappa_biadditive() {
        for l in 0..=3 {
            for m in Bits::all(l) {
                for m2 in Bits::all(l) {
                    for n in Bits::all(l) {
                        let sum = m.add(&m2).unwrap();
                        assert_eq!(
                            kappa(&sum, &n).unwrap(),
                            kappa(&m, &n).unwrap() ^ kappa(&m2, &n).unwrap()
                        );
                        assert_eq!(
                            kappa(&n, &sum).unwrap(),
                            kappa(&n, &m).unwrap() ^ kappa(&n, &m2).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn permute_examples() {
        let k = CocycleTable::kappa(2);
        assert_eq!(permute_kappa(&k, &Permutation::identity(2)).unwrap(), k);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let ks = permute_kappa(&k, &swap).unwrap();
        assert_eq!(ks.value(&b(&[1, 0]), &b(&[0, 1])).unwrap(), 1);
        let k3 = CocycleTable::kappa(3);
        for s in Permutation::all(3) {
            let there = permute_kappa(&k3, &s).unwrap();
            assert_eq!(permute_kappa(&there, &s.inverse()).unwrap(), k3);
        }
    }

    #[test]
    fn bicharacter_examples() {
        let c = CocycleTable::kappa(3);
        for i in 0..3 {
            for j in 0..3 {
                let chi = bicharacter(&c, &Bits::unit(3, i), &Bits::unit(3, j)).unwrap();
                assert_eq!(chi, if i == j { Sign::Plus } else { Sign::Minus });
            }
        }
        for m in Bits::all(3) {
            for n in Bits::all(3) {
                let p = bicharacter(&c, &m, &n).unwrap() * bicharacter(&c, &n, &m).unwrap();
                assert_eq!(p, Sign::Plus);
            }
        }
    }

    #[test]
    fn verify_kappa_and_perturbation() {
        for l in 0..=3 {
            let check = verify_table(&CocycleTable::kappa(l));
            assert!(check.holds());
            assert_eq!(check.checked, 1 << (3 * l));
        }
        let mut broken = CocycleTable::kappa(2);
        let (m, n) = (b(&[1, 0]), b(&[1, 1]));
        broken.flip(&m, &n);
        let check = verify_table(&broken);
        match check.counterexample {
            Some(CocycleViolation::Identity { triple: (x, y, z) }) => {
                let v = |p: &Bits, q: &Bits| broken.value(p, q).unwrap();
                let xy = x.add(&y).unwrap();
                let yz = y.add(&z).unwrap();
                assert_ne!(v(&x, &y) ^ v(&xy, &z), v(&y, &z) ^ v(&x, &yz));
            }
            other => panic!("expected an identity violation, got {other:?}"),
        }
    }

    #[test]
    fn verify_detects_unnormalised_entry() {
        let mut t = CocycleTable::kappa(1);
        t.flip(&Bits::zero(1), &b(&[1]));
        assert!(matches!(
            verify_table(&t).counterexample,
            Some(CocycleViolation::Normalisation { .. })
        ));
    }

    #[test]
    fn coboundary_examples() {
        let k = CocycleTable::kappa(3);
        assert_eq!(find_coboundary(&k, &k, 3).unwrap(), Some(CoboundaryMap::trivial(3)));
        for s in Permutation::all(3) {
            let ks = permute_kappa(&k, &s).unwrap();
            let found = find_coboundary(&k, &ks, 3).unwrap().expect("cohomologous");
            assert!(found.relates(&k, &ks));
            assert_eq!(found.value(&Bits::zero(3)), 0);
        }
        let none = find_coboundary(&CocycleTable::kappa(2), &CocycleTable::trivial(2), 2).unwrap();
        assert_eq!(none, None);
        assert!(matches!(
            find_coboundary(&CocycleTable::kappa(5), &CocycleTable::kappa(5), 5),
            Err(Error::SearchSpaceTooLarge(5))
        ));
    }

    #[test]
    fn bicharacter_invariant_under_coboundaries() {
        // every normalised b on Z_2^2 and a sample on Z_2^3
        for l in [2usize, 3] {
            let c = CocycleTable::kappa(l);
            let nonzero = (1 << l) - 1;
            let step = if l == 2 { 1 } else { 7 };
            for idx in (0u64..(1 << nonzero)).step_by(step) {
                let mut values = vec![0u8; 1 << l];
                for (m, v) in values.iter_mut().enumerate().skip(1) {
                    *v = ((idx >> (m - 1)) & 1) as u8;
                }
                let bmap = CoboundaryMap { l, values };
                let twisted = CocycleTable::from_fn(l, |m, n| {
                    c.value(m, n).unwrap() ^ bmap.delta(m, n)
                });
                for m in Bits::all(l) {
                    for n in Bits::all(l) {
                        assert_eq!(
                            bicharacter(&c, &m, &n).unwrap(),
                            bicharacter(&twisted, &m, &n).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn c_lambda_examples() {
        // k = 2, l = 0: (-1)^{m_2 n_1}
        for m in 0..3u64 {
            for m2 in 0..3u64 {
                for n1 in 0..3u64 {
                    for n2 in 0..3u64 {
                        let dm = DegreeElem::new(vec![m, m2], Bits::zero(0));
                        let dn = DegreeElem::new(vec![n1, n2], Bits::zero(0));
                        let want = Sign::from_parity(((m2 * n1) & 1) as u8);
                        assert_eq!(c_lambda((2, 0), &dm, &dn).unwrap(), want);
                    }
                }
            }
        }
        let even = DegreeElem::new(vec![2, 4], Bits::zero(0));
        let any = DegreeElem::new(vec![1, 1], Bits::zero(0));
        assert_eq!(c_lambda((2, 0), &even, &any).unwrap(), Sign::Plus);
        let a = DegreeElem::new(vec![], b(&[0, 1]));
        let c = DegreeElem::new(vec![], b(&[1, 0]));
        assert_eq!(c_lambda((0, 2), &a, &c).unwrap(), Sign::Minus);
        assert!(matches!(
            c_lambda((1, 2), &a, &c),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn product_identity_examples() {
        assert!(product_sign_identity((1, 0), (1, 0)));
        assert!(product_sign_identity((0, 0), (2, 1)));
        assert!(product_sign_identity((0, 2), (0, 1)));
    }

    #[test]
    fn product_identity_by_direct_enumeration() {
        // dims (1,0) x (1,0): both factor cocycles are trivial on Z_2^1, so the
        // product sign must be exactly (-1)^{x_2 y_1}
        for x in Bits::all(2) {
            for y in Bits::all(2) {
                let direct = Sign::from_parity(x.coord(1) & y.coord(0));
                assert_eq!(c_kappa(&x, &y).unwrap(), direct);
            }
        }
        assert_eq!(product_sign_counterexample((1, 0), (1, 0)), None);
    }

    #[test]
    fn table_json_round_trip() {
        let t = CocycleTable::kappa(2);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CocycleTable>(&s).unwrap(), t);
        assert!(serde_json::from_str::<CocycleTable>(r#"{"l":1,"values":[[0,0]]}"#).is_err());
    }
}
