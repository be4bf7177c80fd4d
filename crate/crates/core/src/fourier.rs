//! Functions on `V`, the Fourier transform `Φ`, the maps `z_i`, and the
//! matrix of `Φ` in the basis `{ψ_E : E ∈ F(V)}`.
//!
//! A function is stored densely, indexed by the bit encoding of `x ∈ V` in
//! the coordinates `e_1, …, e_D`. The rational transform is exact; the
//! change-of-basis pipeline works on integers scaled by `2^d`.

use std::fmt::Write as _;
use std::ops::{Add, Index, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::permutation_sign;
use crate::family::{delta, sign_sum_identity, Family};
use crate::gf2::{Subspace, SymplecticSpace};
use crate::tau::tau;

/// An element of `[V]` with exact rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionVector {
    dim: usize,
    values: Vec<BigRational>,
}

impl FunctionVector {
    pub fn zero(dim: usize) -> Self {
        FunctionVector {
            dim,
            values: vec![BigRational::zero(); 1 << dim],
        }
    }

    pub fn new(dim: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != 1 << dim {
            return Err(Error::DimensionMismatch {
                expected: 1 << dim,
                found: values.len(),
            });
        }
        Ok(FunctionVector { dim, values })
    }

    pub fn from_integers(dim: usize, values: &[i64]) -> Result<Self> {
        Self::new(dim, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// `δ_x`, the indicator of a single point.
    pub fn delta(dim: usize, x: u64) -> Self {
        let mut f = Self::zero(dim);
        f.values[x as usize] = BigRational::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FunctionVector {
            dim: self.dim,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The values as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
            .collect()
    }
}

impl Index<usize> for FunctionVector {
    type Output = BigRational;
    fn index(&self, x: usize) -> &BigRational {
        &self.values[x]
    }
}

impl Add for &FunctionVector {
    type Output = FunctionVector;
    fn add(self, rhs: &FunctionVector) -> FunctionVector {
        assert_eq!(self.dim, rhs.dim, "adding functions on different spaces");
        FunctionVector {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FunctionVector {
    type Output = FunctionVector;
    fn sub(self, rhs: &FunctionVector) -> FunctionVector {
        assert_eq!(self.dim, rhs.dim, "subtracting functions on different spaces");
        FunctionVector {
            dim: self.dim,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&FunctionVector> for &BigRational {
    type Output = FunctionVector;
    fn mul(self, rhs: &FunctionVector) -> FunctionVector {
        rhs.scale(self)
    }
}

fn walsh_hadamard<T>(values: &mut [T])
where
    T: Clone + for<'a> Add<&'a T, Output = T> + for<'a> Sub<&'a T, Output = T>,
{
    let n = values.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for k in start..start + h {
                let a = values[k].clone();
                let b = values[k + h].clone();
                values[k] = a.clone() + &b;
                values[k + h] = a - &b;
            }
        }
        h *= 2;
    }
}

/// `y ↦ Gy`. The exponent `(x, y) = x·Gy`, so after moving `f(y)` to slot
/// `Gy` the sum over `y` becomes a plain Walsh–Hadamard transform.
fn permute_by_gram<T: Clone>(space: &SymplecticSpace, values: &[T]) -> Vec<T> {
    let mut out = values.to_vec();
    for (y, v) in values.iter().enumerate() {
        out[space.gram_apply(y as u64) as usize] = v.clone();
    }
    out
}

/// `Φ(f)(x) = 2^{−d} Σ_y (−1)^{(x,y)} f(y)`.
pub fn phi(space: &SymplecticSpace, f: &FunctionVector) -> Result<FunctionVector> {
    if f.dim != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: f.dim,
        });
    }
    let mut values = permute_by_gram(space, &f.values);
    walsh_hadamard(&mut values);
    let scale = BigRational::new(BigInt::one(), BigInt::one() << space.half());
    Ok(FunctionVector {
        dim: f.dim,
        values: values.into_iter().map(|v| v * &scale).collect(),
    })
}

/// `2^d Φ(f)` for an integer-valued `f`.
pub fn phi_scaled(space: &SymplecticSpace, f: &[i64]) -> Result<Vec<i64>> {
    if f.len() != space.size() {
        return Err(Error::DimensionMismatch {
            expected: space.size(),
            found: f.len(),
        });
    }
    let mut values = permute_by_gram(space, f);
    // |f| ≤ M implies every partial sum is at most 2^D·M in absolute value.
    let bound = f.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if bound.checked_mul(space.size() as u64).is_none_or(|b| b > i64::MAX as u64) {
        return Err(Error::Overflow("Walsh–Hadamard transform"));
    }
    walsh_hadamard(&mut values);
    Ok(values)
}

/// `ψ_X` for a set of points.
pub fn characteristic_of_points<I: IntoIterator<Item = u64>>(dim: usize, points: I) -> FunctionVector {
    let mut f = FunctionVector::zero(dim);
    for x in points {
        f.values[x as usize] = BigRational::one();
    }
    f
}

/// `ψ_E` for a subspace.
pub fn characteristic(space: &SymplecticSpace, e: &Subspace) -> Result<FunctionVector> {
    if e.ambient() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: e.ambient(),
        });
    }
    Ok(characteristic_of_points(space.dim(), e.points()))
}

/// `z_i : [V′] → [V]`, determined by `z_i(δ′_y) = δ_{τ_i(y)} + δ_{τ_i(y)+e_i}`.
pub fn z_map(space: &SymplecticSpace, i: usize, f: &FunctionVector) -> Result<FunctionVector> {
    let t = tau(space, i)?;
    let source = t.source();
    if f.dim != source.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: f.dim,
        });
    }
    let ei = space.circular_bits(i);
    let mut out = FunctionVector::zero(space.dim());
    for (y, v) in f.values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let ty = t.apply_bits(y as u64);
        out.values[ty as usize] += v;
        out.values[(ty ^ ei) as usize] += v;
    }
    Ok(out)
}

/// Whether `Φ∘z_i = z_i∘Φ′` on every delta function of `V′`.
pub fn check_z_commutation(space: &SymplecticSpace, i: usize) -> Result<bool> {
    let source = tau(space, i)?.source();
    for y in 0..source.size() as u64 {
        let f = FunctionVector::delta(source.dim(), y);
        if phi(space, &z_map(space, i, &f)?)? != z_map(space, i, &phi(&source, &f)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The columns `ψ_E`, `E ∈ F(V)`, of the basis matrix in family order.
pub fn basis_matrix(family: &Family) -> Vec<Vec<i64>> {
    let n = family.space().size();
    let mut m = vec![vec![0i64; family.len()]; n];
    for (col, entry) in family.entries().iter().enumerate() {
        for x in entry.subspace.points() {
            m[x as usize][col] = 1;
        }
    }
    m
}

/// An elimination order for the 0/1 basis matrix: at step `s` the point
/// `points[s]` lies in `columns[s]` and in no column of a later step. The
/// matrix with rows and columns permuted this way is lower unitriangular.
#[derive(Clone, Debug)]
pub struct Peeling {
    size: usize,
    points: Vec<usize>,
    columns: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Peeling {
    /// Repeatedly removes a column owning a point covered by no other
    /// remaining column. Fails if at some stage no such point exists.
    pub fn new(size: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        if members.len() != size {
            return Err(Error::SingularBasis);
        }
        let mut count = vec![0usize; size];
        let mut covering = vec![Vec::new(); size];
        for (c, pts) in members.iter().enumerate() {
            for &p in pts {
                count[p] += 1;
                covering[p].push(c);
            }
        }
        let mut alive = vec![true; members.len()];
        let mut stack: Vec<usize> = (0..size).filter(|&p| count[p] == 1).collect();
        let mut used = vec![false; size];
        let mut points = Vec::with_capacity(size);
        let mut columns = Vec::with_capacity(size);
        while let Some(p) = stack.pop() {
            if used[p] || count[p] != 1 {
                continue;
            }
            let c = covering[p].iter().copied().find(|&c| alive[c]).expect("count is 1");
            alive[c] = false;
            used[p] = true;
            points.push(p);
            columns.push(c);
            for &q in &members[c] {
                count[q] -= 1;
                if count[q] == 1 && !used[q] {
                    stack.push(q);
                }
            }
        }
        if points.len() != size {
            return Err(Error::SingularBasis);
        }
        Ok(Peeling { size, points, columns, members })
    }

    /// `det B`, the product of the signs of the row and column permutations.
    pub fn determinant(&self) -> i64 {
        permutation_sign(&self.points[..self.size]) * permutation_sign(&self.columns[..self.size])
    }

    /// The unique integer `x` with `B x = rhs`; `x` is indexed by column.
    pub fn solve(&self, rhs: &[i64]) -> Result<Vec<i64>> {
        let mut residual = rhs.to_vec();
        let mut x = vec![0i64; self.size];
        for (&p, &c) in self.points.iter().zip(&self.columns) {
            let v = residual[p];
            if v == 0 {
                continue;
            }
            x[c] = v;
            for &q in &self.members[c] {
                residual[q] = residual[q].checked_sub(v).ok_or(Error::Overflow("basis solve"))?;
            }
        }
        if residual.iter().any(|&r| r != 0) {
            return Err(Error::Verification("basis solve left a nonzero residual".into()));
        }
        Ok(x)
    }
}

/// `Φ(ψ_E) = Σ_{E₁} c_{E,E₁} ψ_{E₁}`; row `E`, column `E₁`, both in family
/// order. Entries are stored as integer numerators over `2^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobMatrix {
    dim: usize,
    order: Vec<Subspace>,
    dims: Vec<usize>,
    rows: Vec<Vec<(usize, i64)>>,
    determinant: i64,
}

/// `2^d` as an integer denominator.
fn denominator(dim: usize) -> i64 {
    1i64 << (dim / 2)
}

/// Solves `B·C = H·B` column by column: for each member `E` the vector
/// `2^dΦ(ψ_E)` is computed by the fast transform and expanded in the basis.
/// Each expansion is checked by resubstitution.
pub fn change_of_basis(family: &Family) -> Result<CobMatrix> {
    let space = *family.space();
    let n = space.size();
    let members: Vec<Vec<usize>> = family
        .entries()
        .iter()
        .map(|e| e.subspace.points().into_iter().map(|x| x as usize).collect())
        .collect();
    let peeling = Peeling::new(n, members.clone())?;
    let mut rows = Vec::with_capacity(family.len());
    for pts in &members {
        let mut psi = vec![0i64; n];
        for &x in pts {
            psi[x] = 1;
        }
        let image = phi_scaled(&space, &psi)?;
        let x = peeling.solve(&image)?;
        let mut check = vec![0i64; n];
        for (c, &v) in x.iter().enumerate() {
            if v != 0 {
                for &q in &members[c] {
                    check[q] += v;
                }
            }
        }
        if check != image {
            return Err(Error::Verification("expansion of Φ(ψ_E) does not resubstitute".into()));
        }
        rows.push(x.into_iter().enumerate().filter(|&(_, v)| v != 0).collect());
    }
    Ok(CobMatrix {
        dim: space.dim(),
        order: family.subspaces(),
        dims: family.entries().iter().map(|e| e.dim()).collect(),
        rows,
        determinant: peeling.determinant(),
    })
}

impl CobMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Subspace] {
        &self.order
    }

    /// `det B` for the basis matrix the coefficients were solved against.
    pub fn basis_determinant(&self) -> i64 {
        self.determinant
    }

    /// Nonzero numerators of row `r`, over the denominator `2^d`.
    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.rows[r]
    }

    pub fn denominator(&self) -> i64 {
        denominator(self.dim)
    }

    fn numerator(&self, r: usize, c: usize) -> i64 {
        self.rows[r]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map_or(0, |k| self.rows[r][k].1)
    }

    pub fn entry(&self, r: usize, c: usize) -> BigRational {
        BigRational::new(self.numerator(r, c).into(), self.denominator().into())
    }

    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.len()).map(|k| self.entry(k, k)).collect()
    }

    /// Cells `(E, E₁)` with `c_{E,E₁} ≠ 0`, `E₁ ≠ E` and `dim E₁ ≤ dim E`.
    pub fn triangularity_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, _) in row {
                if c != r && self.dims[c] <= self.dims[r] {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Whether every nonzero cell lies on or above the diagonal.
    pub fn is_upper_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|&(c, _)| c >= r))
    }

    pub fn trace(&self) -> BigRational {
        self.diagonal().into_iter().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_document(&self) -> CobDocument {
        let den = self.denominator();
        let entries = (0..self.len())
            .map(|r| {
                (0..self.len())
                    .map(|c| format_rational(&BigRational::new(self.numerator(r, c).into(), den.into())))
                    .collect()
            })
            .collect();
        CobDocument {
            dim: self.dim,
            order: self.order.iter().map(|e| e.basis().to_vec()).collect(),
            entries,
        }
    }

    /// Dense CSV with a header row; row and column labels are family indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("E");
        for c in 0..self.len() {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for r in 0..self.len() {
            let _ = write!(out, "{r}");
            for c in 0..self.len() {
                let _ = write!(out, ",{}", format_rational(&self.entry(r, c)));
            }
            out.push('\n');
        }
        out
    }
}

/// `p/q` with `q > 1`, or just `p`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// JSON form: the basis of each member as bit masks, then the dense matrix
/// of `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CobDocument {
    pub dim: usize,
    pub order: Vec<Vec<u64>>,
    pub entries: Vec<Vec<String>>,
}

/// The checks of the triangular theorem for one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularityReport {
    pub dim: usize,
    pub basis_determinant: i64,
    pub triangularity_violations: Vec<(usize, usize)>,
    /// Members `E` with `c_{E,E} ≠ δ(d − dim E)`.
    pub diagonal_mismatches: Vec<usize>,
    pub trace: BigRational,
    pub plus_count: usize,
    pub expected_plus_count: usize,
    /// `Σ_k δ(d−k)·C(D+1,k) = 2^d`.
    pub sign_identity: bool,
}

impl TriangularityReport {
    pub fn expected_trace(&self) -> BigRational {
        BigRational::from_integer(BigInt::one() << (self.dim / 2))
    }

    pub fn passed(&self) -> bool {
        self.basis_determinant.abs() == 1
            && self.triangularity_violations.is_empty()
            && self.diagonal_mismatches.is_empty()
            && self.trace == self.expected_trace()
            && self.plus_count == self.expected_plus_count
            && self.sign_identity
    }
}

pub fn verify_triangularity(family: &Family, cob: &CobMatrix) -> TriangularityReport {
    let d = family.dim() / 2;
    let diagonal = cob.diagonal();
    let diagonal_mismatches = family
        .entries()
        .iter()
        .zip(&diagonal)
        .enumerate()
        .filter(|(_, (e, c))| **c != BigRational::from_integer(delta(d as i64 - e.dim() as i64).into()))
        .map(|(k, _)| k)
        .collect();
    let (lhs, rhs) = sign_sum_identity(d as u64);
    // 2^{D−1} + 2^{d−1}, which is 1 when D = 0.
    let expected_plus_count = if d == 0 { 1 } else { (1 << (2 * d - 1)) + (1 << (d - 1)) };
    TriangularityReport {
        dim: family.dim(),
        basis_determinant: cob.basis_determinant(),
        triangularity_violations: cob.triangularity_violations(),
        diagonal_mismatches,
        trace: cob.trace(),
        plus_count: diagonal.iter().filter(|c| c.is_positive()).count(),
        expected_plus_count,
        sign_identity: lhs == rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    fn q(n: i64, m: i64) -> BigRational {
        BigRational::new(n.into(), m.into())
    }

    #[test]
    fn phi_d0_is_identity() {
        let s = SymplecticSpace::new(0).unwrap();
        let f = FunctionVector::from_integers(0, &[7]).unwrap();
        assert_eq!(phi(&s, &f).unwrap(), f);
    }

    #[test]
    fn characteristic_line() {
        let s = SymplecticSpace::new(2).unwrap();
        let e = Subspace::from_bits(2, [0b01]);
        let f = characteristic(&s, &e).unwrap();
        assert_eq!(f.to_integers().unwrap(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn d2_displayed_images() {
        let s = SymplecticSpace::new(2).unwrap();
        let f0 = FunctionVector::delta(2, 0);
        let fp = |x: u64| &f0 + &FunctionVector::delta(2, x);
        for x in 1..4 {
            assert_eq!(phi(&s, &fp(x)).unwrap(), fp(x));
        }
        let mut expected = f0.scale(&q(-1, 1));
        for x in 1..4 {
            expected = &expected + &fp(x).scale(&q(1, 2));
        }
        assert_eq!(phi(&s, &f0).unwrap(), expected);
    }

    #[test]
    fn d2_cob_diagonal() {
        let fam = build_family(2).unwrap();
        let cob = change_of_basis(&fam).unwrap();
        let diag: Vec<BigRational> = [-1, 1, 1, 1].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(cob.diagonal(), diag);
        assert!(cob.is_upper_triangular());
        assert_eq!(cob.entry(0, 1), q(1, 2));
    }

    #[test]
    fn z_map_line() {
        let s = SymplecticSpace::new(4).unwrap();
        let psi0 = FunctionVector::delta(2, 0);
        let z = z_map(&s, 5, &psi0).unwrap();
        let e5 = Subspace::from_bits(4, [s.circular_bits(5)]);
        assert_eq!(z, characteristic(&s, &e5).unwrap());
    }

    #[test]
    fn peeling_detects_dependence() {
        let members = vec![vec![0, 1], vec![0, 1]];
        assert!(Peeling::new(2, members).is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let fam = build_family(2).unwrap();
        let cob = change_of_basis(&fam).unwrap();
        let csv = cob.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,-1,1/2"));
        let doc = cob.to_document();
        assert_eq!(doc.entries[0][0], "-1");
    }
}
