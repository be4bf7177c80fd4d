//! Bit-packed linear algebra over F₂ and the symplectic space with its
//! circular basis.
//!
//! A vector of `V = F₂^D` is stored as the low `D` bits of a `u64`; bit `k`
//! is the coordinate along `e_{k+1}`. The circular vector `e_{D+1}` is the
//! sum `e_1 + … + e_D` and is derived, never stored.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted anywhere in the crate.
pub const MAX_DIM: usize = 14;

#[inline]
fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector of `F₂^D` in coordinates `e_1, …, e_D`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    bits: u64,
    dim: usize,
}

impl GF2Vector {
    pub fn zero(dim: usize) -> Self {
        GF2Vector { bits: 0, dim }
    }

    /// Builds a vector from its packed coordinates; bits above `dim` are dropped.
    pub fn from_bits(dim: usize, bits: u64) -> Self {
        GF2Vector {
            bits: bits & mask(dim),
            dim,
        }
    }

    /// Builds a vector from a 0/1 slice in the order `e_1, …, e_D`.
    pub fn from_coords(coords: &[u8]) -> Self {
        let bits = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c & 1 == 1)
            .fold(0u64, |acc, (k, _)| acc | (1 << k));
        GF2Vector {
            bits,
            dim: coords.len(),
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate along `e_i`, `i` counted from 1.
    pub fn coord(&self, i: usize) -> u8 {
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.dim)
            .map(|k| if (self.bits >> k) & 1 == 1 { '1' } else { '0' })
            .collect();
        write!(f, "[{s}]")
    }
}

impl Add for GF2Vector {
    type Output = GF2Vector;

    fn add(self, rhs: GF2Vector) -> GF2Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        GF2Vector {
            bits: self.bits ^ rhs.bits,
            dim: self.dim,
        }
    }
}

impl AddAssign for GF2Vector {
    fn add_assign(&mut self, rhs: GF2Vector) {
        debug_assert_eq!(self.dim, rhs.dim);
        self.bits ^= rhs.bits;
    }
}

/// `V = F₂^D` with the symplectic form whose Gram matrix in the coordinates
/// `e_1, …, e_D` pairs exactly the cyclically adjacent circular vectors.
///
/// Restricted to `e_1, …, e_D` the adjacency `i − j ≡ ±1 mod D+1` is the
/// path `e_1 – e_2 – … – e_D`; the wrap-around edge runs through `e_{D+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    dim: usize,
}

impl SymplecticSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionCap { dim, cap: MAX_DIM });
        }
        Ok(SymplecticSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d = D / 2`.
    pub fn half(&self) -> usize {
        self.dim / 2
    }

    /// Number of points, `2^D`.
    pub fn size(&self) -> usize {
        1usize << self.dim
    }

    pub fn full_mask(&self) -> u64 {
        mask(self.dim)
    }

    /// The space of dimension `D − 2` one level down the recursion.
    pub fn reduced(&self) -> Option<SymplecticSpace> {
        (self.dim >= 2).then(|| SymplecticSpace { dim: self.dim - 2 })
    }

    /// Gram matrix entry for `e_i, e_j`, both in `[1, D]`.
    pub fn gram_entry(&self, i: usize, j: usize) -> u8 {
        let n = self.dim + 1;
        if i == j {
            return 0;
        }
        let diff = (i + n - j) % n;
        u8::from(diff == 1 || diff == n - 1)
    }

    pub fn gram(&self) -> Vec<Vec<u8>> {
        (1..=self.dim)
            .map(|i| (1..=self.dim).map(|j| self.gram_entry(i, j)).collect())
            .collect()
    }

    /// `G·u` for packed `u`.
    #[inline]
    pub fn gram_apply(&self, u: u64) -> u64 {
        ((u << 1) ^ (u >> 1)) & self.full_mask()
    }

    /// The form on packed coordinates.
    #[inline]
    pub fn form(&self, u: u64, v: u64) -> bool {
        (self.gram_apply(u) & v).count_ones() & 1 == 1
    }

    pub fn pairing(&self, u: &GF2Vector, v: &GF2Vector) -> Result<u8> {
        self.check(u)?;
        self.check(v)?;
        Ok(u8::from(self.form(u.bits, v.bits)))
    }

    pub fn check(&self, v: &GF2Vector) -> Result<()> {
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim,
            });
        }
        Ok(())
    }

    /// Packed circular vector `e_i` for `i ∈ [1, D+1]` (taken cyclically).
    #[inline]
    pub fn circular_bits(&self, i: usize) -> u64 {
        let n = self.dim + 1;
        let i = (i + n - 1) % n + 1;
        if i == n {
            self.full_mask()
        } else {
            1 << (i - 1)
        }
    }

    /// The circular vector `e_i`, `i ∈ [1, D+1]`.
    pub fn circular(&self, i: usize) -> Result<GF2Vector> {
        if i == 0 || i > self.dim + 1 {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 1,
                hi: self.dim + 1,
            });
        }
        Ok(GF2Vector::from_bits(self.dim, self.circular_bits(i)))
    }

    /// The circular basis `e_1, …, e_{D+1}`; empty when `D = 0`.
    pub fn circulars(&self) -> Vec<GF2Vector> {
        if self.dim == 0 {
            return Vec::new();
        }
        (1..=self.dim + 1)
            .map(|i| GF2Vector::from_bits(self.dim, self.circular_bits(i)))
            .collect()
    }

    /// `e_I` for an arbitrary subset `I ⊆ [1, D+1]`.
    pub fn circular_sum(&self, indices: &[usize]) -> Result<GF2Vector> {
        let mut v = GF2Vector::zero(self.dim);
        for &i in indices {
            v += self.circular(i)?;
        }
        Ok(v)
    }

    /// `e_{[a,b]} = e_a + … + e_b` for `1 ≤ a ≤ b ≤ D`.
    pub fn interval_vector(&self, a: usize, b: usize) -> Result<GF2Vector> {
        if a == 0 || a > b || b > self.dim {
            return Err(Error::InvalidInterval { a, b, dim: self.dim });
        }
        Ok(GF2Vector::from_bits(self.dim, interval_bits(a, b)))
    }

    pub fn is_isotropic(&self, e: &Subspace) -> bool {
        let b = e.basis();
        b.iter()
            .enumerate()
            .all(|(k, &u)| b[k + 1..].iter().all(|&v| !self.form(u, v)))
    }

    /// `E^⊥` as a subspace.
    pub fn perp(&self, e: &Subspace) -> Subspace {
        // x ∈ E^⊥ iff (G b)·x = 0 for every basis vector b: a kernel computation.
        let rows: Vec<u64> = e.basis().iter().map(|&b| self.gram_apply(b)).collect();
        Subspace::from_bits(self.dim, kernel(self.dim, &rows))
    }
}

#[inline]
pub(crate) fn interval_bits(a: usize, b: usize) -> u64 {
    mask(b) & !mask(a - 1)
}

/// Kernel of the linear functionals `x ↦ r·x`, as a basis.
fn kernel(dim: usize, rows: &[u64]) -> Vec<u64> {
    // Row-reduce with pivots on the lowest set bit.
    let mut red: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &p in &red {
            if v & (p & p.wrapping_neg()) != 0 {
                v ^= p;
            }
        }
        if v != 0 {
            let low = v & v.wrapping_neg();
            for p in red.iter_mut() {
                if *p & low != 0 {
                    *p ^= v;
                }
            }
            red.push(v);
        }
    }
    let pivots: u64 = red.iter().fold(0, |acc, &p| acc | (p & p.wrapping_neg()));
    let mut out = Vec::new();
    for k in 0..dim {
        let f = 1u64 << k;
        if pivots & f != 0 {
            continue;
        }
        // Free coordinate k: set it, solve the pivot coordinates.
        let mut x = f;
        for &p in &red {
            if p & f != 0 {
                x |= p & p.wrapping_neg();
            }
        }
        out.push(x);
    }
    out
}

/// A subspace of `F₂^D` held in canonical reduced echelon form.
///
/// Each basis vector's pivot is its lowest set coordinate, no other basis
/// vector has that coordinate set, and vectors are sorted by pivot. Two
/// generating sets of the same span give identical values, so `Eq`, `Hash`
/// and `Ord` compare spans.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<u64>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a GF2Vector>,
    {
        Self::from_bits(ambient, vectors.into_iter().map(|v| v.bits))
    }

    pub fn from_bits<I: IntoIterator<Item = u64>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v & mask(ambient));
        }
        s
    }

    /// Adds `v` to the span, keeping the canonical form. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let low = v & v.wrapping_neg();
        for p in self.basis.iter_mut() {
            if *p & low != 0 {
                *p ^= v;
            }
        }
        let pos = self
            .basis
            .partition_point(|&p| (p & p.wrapping_neg()) < low);
        self.basis.insert(pos, v);
        true
    }

    /// `v` reduced against the basis; zero iff `v` lies in the span.
    #[inline]
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &p in &self.basis {
            if v & (p & p.wrapping_neg()) != 0 {
                v ^= p;
            }
        }
        v
    }

    pub fn contains_bits(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        self.contains_bits(v.bits)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Packed canonical basis.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<GF2Vector> {
        self.basis
            .iter()
            .map(|&b| GF2Vector::from_bits(self.ambient, b))
            .collect()
    }

    /// `self ⊕ F₂v` (a plain span; `v` may already lie in `self`).
    pub fn with(&self, v: u64) -> Subspace {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// All `2^dim` points, as packed coordinates.
    pub fn points(&self) -> Vec<u64> {
        let mut pts = Vec::with_capacity(1 << self.basis.len());
        pts.push(0);
        for &b in &self.basis {
            let n = pts.len();
            for k in 0..n {
                pts.push(pts[k] ^ b);
            }
        }
        pts
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains_bits(b))
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> bool {
        let mut s = self.clone();
        other.basis.iter().all(|&b| s.insert(b))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.basis_vectors().iter())
            .finish()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A linear map `F₂^m → F₂^n` given by the images of the coordinate vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    source_dim: usize,
    target_dim: usize,
    columns: Vec<u64>,
}

impl LinearMap {
    pub fn new(source_dim: usize, target_dim: usize, columns: Vec<u64>) -> Self {
        assert_eq!(columns.len(), source_dim, "one image per source coordinate");
        let m = mask(target_dim);
        LinearMap {
            source_dim,
            target_dim,
            columns: columns.into_iter().map(|c| c & m).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::new(dim, dim, (0..dim).map(|k| 1 << k).collect())
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    #[inline]
    pub fn apply_bits(&self, mut v: u64) -> u64 {
        let mut out = 0;
        let mut k = 0;
        while v != 0 {
            if v & 1 == 1 {
                out ^= self.columns[k];
            }
            v >>= 1;
            k += 1;
        }
        out
    }

    pub fn apply(&self, v: &GF2Vector) -> Result<GF2Vector> {
        if v.dim != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: v.dim,
            });
        }
        Ok(GF2Vector::from_bits(self.target_dim, self.apply_bits(v.bits)))
    }

    pub fn image(&self, e: &Subspace) -> Subspace {
        Subspace::from_bits(self.target_dim, e.basis().iter().map(|&b| self.apply_bits(b)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(inner.target_dim, self.source_dim);
        LinearMap::new(
            inner.source_dim,
            self.target_dim,
            inner.columns.iter().map(|&c| self.apply_bits(c)).collect(),
        )
    }

    pub fn pow(&self, k: usize) -> LinearMap {
        assert_eq!(self.source_dim, self.target_dim);
        (0..k).fold(LinearMap::identity(self.source_dim), |acc, _| self.compose(&acc))
    }

    pub fn rank(&self) -> usize {
        Subspace::from_bits(self.target_dim, self.columns.iter().copied()).dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim
    }

    /// `(Au, Av) = (u, v)` on every pair of source coordinate vectors.
    pub fn preserves_form(&self, source: &SymplecticSpace, target: &SymplecticSpace) -> bool {
        if source.dim() != self.source_dim || target.dim() != self.target_dim {
            return false;
        }
        (0..self.source_dim).all(|i| {
            (0..self.source_dim)
                .all(|j| source.form(1 << i, 1 << j) == target.form(self.columns[i], self.columns[j]))
        })
    }
}

/// An interval `I = [a, b] ⊆ [1, D]` labelling the vector `e_I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntervalLabel {
    a: usize,
    b: usize,
    dim: usize,
}

impl IntervalLabel {
    pub fn new(dim: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > b || b > dim {
            return Err(Error::InvalidInterval { a, b, dim });
        }
        Ok(IntervalLabel { a, b, dim })
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn end(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_even(&self) -> bool {
        self.len().is_multiple_of(2)
    }

    pub fn bits(&self) -> u64 {
        interval_bits(self.a, self.b)
    }

    /// The odd-size circular run `I′ ⊆ [1, D+1]` with `e_{I′} = e_I`, listed
    /// from the start of the run: `I` itself when `|I|` is odd, otherwise the
    /// complement `[b+1, D+1] ∪ [1, a−1]`.
    pub fn prime(&self) -> Vec<usize> {
        if !self.is_even() {
            return (self.a..=self.b).collect();
        }
        let n = self.dim + 1;
        (0..n - self.len()).map(|t| (self.b + t) % n + 1).collect()
    }

    /// Compact rendering of `I′`: digits run together while `D + 1 ≤ 9`,
    /// otherwise a parenthesised comma list.
    pub fn render_prime(&self) -> String {
        let p = self.prime();
        if self.dim < 9 {
            p.iter().map(|i| i.to_string()).collect()
        } else {
            let inner: Vec<String> = p.iter().map(|i| i.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_d2() {
        let s = SymplecticSpace::new(2).unwrap();
        assert_eq!(s.gram(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn zero_space() {
        let s = SymplecticSpace::new(0).unwrap();
        assert!(s.circulars().is_empty());
        assert_eq!(s.size(), 1);
        assert!(s.gram().is_empty());
    }

    #[test]
    fn rejects_odd_and_oversized() {
        assert_eq!(SymplecticSpace::new(3), Err(Error::OddDimension(3)));
        assert!(matches!(SymplecticSpace::new(16), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn pairing_examples() {
        let s = SymplecticSpace::new(4).unwrap();
        let e = |i| s.circular(i).unwrap();
        assert_eq!(s.pairing(&e(1), &e(4)).unwrap(), 0);
        assert_eq!(s.pairing(&e(2), &e(5)).unwrap(), 0);
        assert_eq!(s.pairing(&e(1), &e(5)).unwrap(), 1);
        assert_eq!(s.pairing(&e(4), &e(5)).unwrap(), 1);
        let s2 = SymplecticSpace::new(2).unwrap();
        assert_eq!(s2.pairing(&s2.circular(1).unwrap(), &s2.circular(2).unwrap()).unwrap(), 1);
        assert!(s.pairing(&e(1), &GF2Vector::zero(2)).is_err());
    }

    #[test]
    fn interval_vectors() {
        let s = SymplecticSpace::new(2).unwrap();
        assert_eq!(s.interval_vector(1, 2).unwrap(), s.circular(3).unwrap());
        let s4 = SymplecticSpace::new(4).unwrap();
        assert_eq!(s4.interval_vector(1, 4).unwrap(), s4.circular(5).unwrap());
        assert_eq!(s4.interval_vector(3, 3).unwrap(), s4.circular(3).unwrap());
        assert!(s4.interval_vector(0, 2).is_err());
        assert!(s4.interval_vector(3, 2).is_err());
        assert!(s4.interval_vector(2, 5).is_err());
    }

    #[test]
    fn circular_basis_properties() {
        for d in (2..=12).step_by(2) {
            let s = SymplecticSpace::new(d).unwrap();
            let c = s.circulars();
            assert_eq!(c.iter().fold(0, |acc, v| acc ^ v.bits()), 0);
            for i in 0..=d {
                for j in 0..=d {
                    let diff = (i + d + 1 - j) % (d + 1);
                    let adj = i != j && (diff == 1 || diff == d);
                    assert_eq!(s.form(c[i].bits(), c[j].bits()), adj, "D={d} i={i} j={j}");
                }
            }
            // dropping any one circular vector leaves a basis
            for skip in 0..=d {
                let rest: Vec<_> = c.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, v)| *v).collect();
                assert_eq!(Subspace::from_vectors(d, rest.iter()).dim(), d);
            }
            // nondegenerate
            assert_eq!(s.perp(&Subspace::from_vectors(d, c.iter())).dim(), 0);
        }
    }

    #[test]
    fn canonical_form() {
        let e1 = GF2Vector::from_coords(&[1, 0]);
        let e2 = GF2Vector::from_coords(&[0, 1]);
        let s = Subspace::from_vectors(2, [e1, e1].iter());
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[1]);
        assert_eq!(
            Subspace::from_vectors(2, [e1 + e2, e2].iter()),
            Subspace::from_vectors(2, [e1, e2].iter())
        );
        assert_eq!(Subspace::from_vectors(2, [].iter()), Subspace::zero(2));
    }

    #[test]
    fn isotropy() {
        let s = SymplecticSpace::new(2).unwrap();
        let e1 = s.circular(1).unwrap();
        let e2 = s.circular(2).unwrap();
        assert!(s.is_isotropic(&Subspace::from_vectors(2, [e1].iter())));
        assert!(!s.is_isotropic(&Subspace::from_vectors(2, [e1, e2].iter())));
    }

    #[test]
    fn perp_dimension() {
        let s = SymplecticSpace::new(6).unwrap();
        let e = Subspace::from_bits(6, [0b000001, 0b000100]);
        let p = s.perp(&e);
        assert_eq!(p.dim(), 4);
        assert!(p.basis().iter().all(|&x| e.basis().iter().all(|&y| !s.form(x, y))));
    }

    #[test]
    fn interval_prime() {
        let i = IntervalLabel::new(4, 3, 4).unwrap();
        assert_eq!(i.prime(), vec![5, 1, 2]);
        assert_eq!(i.render_prime(), "512");
        assert_eq!(IntervalLabel::new(4, 2, 3).unwrap().prime(), vec![4, 5, 1]);
        assert_eq!(IntervalLabel::new(4, 1, 4).unwrap().prime(), vec![5]);
        assert_eq!(IntervalLabel::new(4, 1, 3).unwrap().prime(), vec![1, 2, 3]);
        assert_eq!(IntervalLabel::new(10, 2, 3).unwrap().render_prime(), "(4,5,6,7,8,9,10,11,1)");
    }

    #[test]
    fn linear_map_basics() {
        let id = LinearMap::identity(4);
        assert!(id.is_injective());
        assert_eq!(id.pow(3), id);
        let s = SymplecticSpace::new(4).unwrap();
        assert!(id.preserves_form(&s, &s));
    }
}
