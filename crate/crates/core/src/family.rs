//! The recursive family `F(V)` of isotropic subspaces, its two alternative
//! recursions, and the interval statistics attached to each member.
//!
//! Members are kept in the canonical order used everywhere else in the crate:
//! ascending dimension, ties broken by the lexicographic order of the
//! canonical echelon basis.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{interval_bits, IntervalLabel, Subspace, SymplecticSpace, MAX_DIM};
use crate::tau::{generic_tau, tau};

/// One way a member arises from the level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// The zero subspace.
    Zero,
    /// `E_k`, spanned by `e_{[1,D]}, e_{[2,D−1]}, …, e_{[k,D+1−k]}`.
    Standard { k: usize },
    /// `τ_i(E′) ⊕ F₂e_i` for a member `E′` one level down.
    Tau { i: usize, parent: Subspace },
    /// `τ̃_{γ′,γ}(E′) ⊕ F₂γ`.
    GenericTau {
        gamma_prime: usize,
        gamma: usize,
        parent: Subspace,
    },
    /// A line of the two-dimensional space.
    Line,
}

fn check_dim(dim: usize) -> Result<SymplecticSpace> {
    if dim > MAX_DIM {
        return Err(Error::DimensionCap { dim, cap: MAX_DIM });
    }
    SymplecticSpace::new(dim)
}

/// `E_k` in `V`.
pub fn standard_subspace(space: &SymplecticSpace, k: usize) -> Subspace {
    let d = space.dim();
    Subspace::from_bits(d, (1..=k).map(|a| interval_bits(a, d + 1 - a)))
}

fn sorted(map: HashMap<Subspace, Construction>) -> Vec<(Subspace, Construction)> {
    let mut v: Vec<_> = map.into_iter().collect();
    v.sort_by(|a, b| (a.0.dim(), &a.0).cmp(&(b.0.dim(), &b.0)));
    v
}

fn insert_first(map: &mut HashMap<Subspace, Construction>, e: Subspace, c: Construction) {
    map.entry(e).or_insert(c);
}

fn build_levels<F>(dim: usize, mut step: F) -> Result<Vec<(Subspace, Construction)>>
where
    F: FnMut(&SymplecticSpace, &[(Subspace, Construction)]) -> Result<HashMap<Subspace, Construction>>,
{
    check_dim(dim)?;
    let mut level = vec![(Subspace::zero(0), Construction::Zero)];
    for d in (2..=dim).step_by(2) {
        let space = SymplecticSpace::new(d)?;
        level = sorted(step(&space, &level)?);
    }
    Ok(level)
}

fn f_step(space: &SymplecticSpace, below: &[(Subspace, Construction)]) -> Result<HashMap<Subspace, Construction>> {
    let d = space.dim();
    let mut map = HashMap::with_capacity(1 << d);
    for k in 0..=d / 2 {
        let e = standard_subspace(space, k);
        let c = if k == 0 { Construction::Zero } else { Construction::Standard { k } };
        insert_first(&mut map, e, c);
    }
    for i in 1..=d {
        let t = tau(space, i)?;
        let ei = space.circular_bits(i);
        for (parent, _) in below {
            let e = t.image(parent).with(ei);
            insert_first(&mut map, e, Construction::Tau { i, parent: parent.clone() });
        }
    }
    Ok(map)
}

fn f_prime_step(
    space: &SymplecticSpace,
    below: &[(Subspace, Construction)],
) -> Result<HashMap<Subspace, Construction>> {
    let d = space.dim();
    let mut map = HashMap::with_capacity(1 << d);
    map.insert(Subspace::zero(d), Construction::Zero);
    for i in 1..=d + 1 {
        let t = tau(space, i)?;
        let ei = space.circular_bits(i);
        for (parent, _) in below {
            let e = t.image(parent).with(ei);
            insert_first(&mut map, e, Construction::Tau { i, parent: parent.clone() });
        }
    }
    Ok(map)
}

fn f_ucb_step(
    space: &SymplecticSpace,
    below: &[(Subspace, Construction)],
) -> Result<HashMap<Subspace, Construction>> {
    let d = space.dim();
    let mut map = HashMap::with_capacity(1 << d);
    map.insert(Subspace::zero(d), Construction::Zero);
    if d == 2 {
        for v in 1..4u64 {
            map.insert(Subspace::from_bits(2, [v]), Construction::Line);
        }
        return Ok(map);
    }
    for gamma_prime in 1..d {
        for gamma in 1..=d + 1 {
            let t = generic_tau(space, gamma_prime, gamma)?;
            let g = space.circular_bits(gamma);
            for (parent, _) in below {
                let e = t.image(parent).with(g);
                insert_first(
                    &mut map,
                    e,
                    Construction::GenericTau { gamma_prime, gamma, parent: parent.clone() },
                );
            }
        }
    }
    Ok(map)
}

/// Members of `F(V)` in canonical order: clause (i), `τ_i(E′) ⊕ F₂e_i` with
/// `i ∈ [1, D]`, together with clause (ii), the subspaces `E_k`.
pub fn family_subspaces(dim: usize) -> Result<Vec<Subspace>> {
    Ok(build_levels(dim, f_step)?.into_iter().map(|(e, _)| e).collect())
}

/// Members of `F′(V)`: zero, or `τ_i(E′) ⊕ F₂e_i` with `i ∈ [1, D+1]` and
/// `E′ ∈ F′(V′)`.
pub fn family_prime_subspaces(dim: usize) -> Result<Vec<Subspace>> {
    Ok(build_levels(dim, f_prime_step)?.into_iter().map(|(e, _)| e).collect())
}

/// Members of `F″(V)`, built from every pair of vertices through `τ̃`.
pub fn family_ucb_subspaces(dim: usize) -> Result<Vec<Subspace>> {
    Ok(build_levels(dim, f_ucb_step)?.into_iter().map(|(e, _)| e).collect())
}

/// A member of the family together with its interval data.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub subspace: Subspace,
    /// `b_E`, sorted by `(a, b)`.
    pub intervals: Vec<IntervalLabel>,
    /// `n_E`: how many members of `b_E` have even length.
    pub n_even: usize,
    /// Index of `E^!`.
    pub shriek: usize,
    pub fiber: usize,
    /// Position `j` of this member inside its fiber (equal to `n_E`).
    pub position: usize,
    pub kappa: usize,
    pub construction: Construction,
}

impl FamilyEntry {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// `<I′,I′,…>` with items ordered by length, then by run; `∅` for zero.
    pub fn render(&self) -> String {
        if self.intervals.is_empty() {
            return "∅".to_string();
        }
        let mut items: Vec<&IntervalLabel> = self.intervals.iter().collect();
        items.sort_by_key(|l| {
            let p = l.prime();
            (p.len(), p)
        });
        let parts: Vec<String> = items.iter().map(|l| l.render_prime()).collect();
        format!("<{}>", parts.join(","))
    }

    /// The `I′` lists in rendering order.
    pub fn prime_lists(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.intervals.iter().map(|l| l.prime()).collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }
}

/// Members sharing the same `E^!`, ordered by `n`-value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub root: usize,
    pub members: Vec<usize>,
}

impl Fiber {
    /// `k` with `dim E^! = d − k`.
    pub fn k(&self) -> usize {
        self.members.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    space: SymplecticSpace,
    entries: Vec<FamilyEntry>,
    index: HashMap<Subspace, usize>,
    by_dim: Vec<Vec<usize>>,
    by_n: Vec<Vec<usize>>,
    fibers: Vec<Fiber>,
}

/// `b_E`: every interval `[a, b] ⊆ [1, D]` whose vector lies in `E`, after
/// checking that there are exactly `dim E` of them and they are independent.
pub fn interval_basis(space: &SymplecticSpace, e: &Subspace) -> Result<Vec<IntervalLabel>> {
    let d = space.dim();
    let mut out = Vec::new();
    for a in 1..=d {
        for b in a..=d {
            if e.contains_bits(interval_bits(a, b)) {
                out.push(IntervalLabel::new(d, a, b)?);
            }
        }
    }
    let span = Subspace::from_bits(d, out.iter().map(|l| l.bits()));
    if out.len() != e.dim() || span.dim() != e.dim() {
        return Err(Error::IntervalBasis {
            subspace: format!("{e:?}"),
            expected: e.dim(),
            found: span.dim().min(out.len()),
        });
    }
    Ok(out)
}

/// `δ(N) = (−1)^{N(N+1)/2}`.
pub fn delta(n: i64) -> i64 {
    match n.rem_euclid(4) {
        0 | 3 => 1,
        _ => -1,
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, j| acc * BigUint::from(n - j) / BigUint::from(j + 1))
}

/// Both sides of `Σ_{k∈[0,d]} δ(d−k)·C(2d+1, k) = 2^d`.
pub fn sign_sum_identity(d: u64) -> (BigInt, BigInt) {
    let lhs = (0..=d).fold(BigInt::zero(), |acc, k| {
        acc + BigInt::from(delta((d - k) as i64)) * BigInt::from(binomial(2 * d + 1, k))
    });
    (lhs, BigInt::one() << d)
}

fn build_from(space: SymplecticSpace, members: Vec<(Subspace, Construction)>) -> Result<Family> {
    let d = space.half();
    let index: HashMap<Subspace, usize> =
        members.iter().enumerate().map(|(k, (e, _))| (e.clone(), k)).collect();

    let mut entries = Vec::with_capacity(members.len());
    for (e, c) in members {
        let intervals = interval_basis(&space, &e)?;
        let n_even = intervals.iter().filter(|l| l.is_even()).count();
        entries.push(FamilyEntry {
            subspace: e,
            intervals,
            n_even,
            shriek: usize::MAX,
            fiber: usize::MAX,
            position: usize::MAX,
            kappa: usize::MAX,
            construction: c,
        });
    }

    // E^! and the fibers.
    let mut fiber_of_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..entries.len() {
        let odd = Subspace::from_bits(
            space.dim(),
            entries[k].intervals.iter().filter(|l| !l.is_even()).map(|l| l.bits()),
        );
        let Some(&root) = index.get(&odd) else {
            return Err(Error::FiberStructure {
                root: format!("{odd:?}"),
                reason: "E^! is not a member of the family".into(),
            });
        };
        entries[k].shriek = root;
        fiber_of_root.entry(root).or_default().push(k);
    }

    let mut roots: Vec<usize> = fiber_of_root.keys().copied().collect();
    roots.sort_unstable();
    let mut fibers = Vec::with_capacity(roots.len());
    for root in roots {
        let mut members = fiber_of_root.remove(&root).unwrap();
        members.sort_by_key(|&m| (entries[m].n_even, m));
        let fail = |reason: String| Error::FiberStructure {
            root: entries[root].render(),
            reason,
        };
        if entries[root].n_even != 0 {
            return Err(fail(format!("E^! has n = {}", entries[root].n_even)));
        }
        let root_dim = entries[root].dim();
        if root_dim > d {
            return Err(fail(format!("E^! has dimension {root_dim} > d")));
        }
        let k = d - root_dim;
        if members.len() != k + 1 {
            return Err(fail(format!("fiber has {} members, expected {}", members.len(), k + 1)));
        }
        for (j, &m) in members.iter().enumerate() {
            if entries[m].n_even != j || entries[m].dim() != root_dim + j {
                return Err(fail(format!(
                    "member {} has n = {} and dim = {}, expected n = {j} and dim = {}",
                    entries[m].render(),
                    entries[m].n_even,
                    entries[m].dim(),
                    root_dim + j
                )));
            }
        }
        let f = fibers.len();
        for (j, &m) in members.iter().enumerate() {
            entries[m].fiber = f;
            entries[m].position = j;
            entries[m].kappa = members[k - j];
        }
        fibers.push(Fiber { root, members });
    }

    let mut by_dim = vec![Vec::new(); d + 1];
    let mut by_n = vec![Vec::new(); d + 1];
    for (k, e) in entries.iter().enumerate() {
        if e.dim() > d || e.n_even > d {
            return Err(Error::Verification(format!("member {} is too large to be isotropic", e.render())));
        }
        by_dim[e.dim()].push(k);
        by_n[e.n_even].push(k);
    }

    Ok(Family { space, entries, index, by_dim, by_n, fibers })
}

/// `F(V)` with all derived data.
pub fn build_family(dim: usize) -> Result<Family> {
    let space = check_dim(dim)?;
    build_from(space, build_levels(dim, f_step)?)
}

/// `F′(V)` with all derived data.
pub fn build_family_prime(dim: usize) -> Result<Family> {
    let space = check_dim(dim)?;
    build_from(space, build_levels(dim, f_prime_step)?)
}

/// `F″(V)` with all derived data.
pub fn build_family_ucb(dim: usize) -> Result<Family> {
    let space = check_dim(dim)?;
    build_from(space, build_levels(dim, f_ucb_step)?)
}

impl Family {
    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> &FamilyEntry {
        &self.entries[k]
    }

    pub fn index_of(&self, e: &Subspace) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Subspace) -> bool {
        self.index.contains_key(e)
    }

    /// `F_k`: members of dimension `k`.
    pub fn of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    /// `F^k`: members with `n_E = k`.
    pub fn of_n(&self, k: usize) -> &[usize] {
        self.by_n.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn kappa(&self, k: usize) -> &FamilyEntry {
        &self.entries[self.entries[k].kappa]
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.entries.iter().map(|e| e.subspace.clone()).collect()
    }

    /// One line per fiber, members joined by commas, as in the printed tables.
    pub fn table_lines(&self) -> Vec<String> {
        self.fibers
            .iter()
            .map(|f| {
                f.members
                    .iter()
                    .map(|&m| self.entries[m].render())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }

    pub fn to_document(&self) -> FamilyDocument {
        FamilyDocument {
            dim: self.dim(),
            members: self
                .entries
                .iter()
                .enumerate()
                .map(|(k, e)| MemberDocument {
                    index: k,
                    dim: e.dim(),
                    n: e.n_even,
                    intervals: e.prime_lists(),
                    fiber: e.fiber,
                    position: e.position,
                    shriek: e.shriek,
                    kappa: e.kappa,
                })
                .collect(),
            fibers: self.fibers.iter().map(|f| f.members.clone()).collect(),
        }
    }
}

/// Canonical JSON form of a family.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyDocument {
    pub dim: usize,
    pub members: Vec<MemberDocument>,
    /// Member indices per fiber, ordered by `n`.
    pub fibers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MemberDocument {
    pub index: usize,
    pub dim: usize,
    pub n: usize,
    /// `I′` lists of `b_E`.
    pub intervals: Vec<Vec<usize>>,
    pub fiber: usize,
    pub position: usize,
    pub shriek: usize,
    pub kappa: usize,
}

/// Counts `|F_k|`, `|F^k|` against the binomial formulas, plus the sign
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub dim: usize,
    pub total: usize,
    pub dim_counts: Vec<(usize, BigUint)>,
    pub n_counts: Vec<(usize, BigUint)>,
    pub sign_identity: (BigInt, BigInt),
    pub kappa_bijective: bool,
}

impl CountReport {
    pub fn dim_counts_ok(&self) -> bool {
        self.dim_counts.iter().all(|(a, b)| BigUint::from(*a) == *b)
    }

    pub fn n_counts_ok(&self) -> bool {
        self.n_counts.iter().all(|(a, b)| BigUint::from(*a) == *b)
    }

    pub fn passed(&self) -> bool {
        self.total == 1 << self.dim
            && self.dim_counts_ok()
            && self.n_counts_ok()
            && self.sign_identity.0 == self.sign_identity.1
            && self.kappa_bijective
    }
}

pub fn verify_counts(family: &Family) -> CountReport {
    let dim = family.dim();
    let d = dim / 2;
    let n1 = dim as u64 + 1;
    let dim_counts = (0..=d)
        .map(|k| (family.of_dim(k).len(), binomial(n1, k as u64)))
        .collect();
    let n_counts = (0..=d)
        .map(|k| (family.of_n(k).len(), binomial(n1, (d - k) as u64)))
        .collect();
    let kappa_bijective = (0..=d).all(|k| {
        let mut img: Vec<usize> = family.of_n(k).iter().map(|&m| family.entry(m).kappa).collect();
        img.sort_unstable();
        img == family.of_dim(d - k)
    }) && (0..family.len()).all(|m| family.entry(family.entry(m).kappa).kappa == m);
    CountReport {
        dim,
        total: family.len(),
        dim_counts,
        n_counts,
        sign_identity: sign_sum_identity(d as u64),
        kappa_bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(dim: usize, v: &[u64]) -> Subspace {
        Subspace::from_bits(dim, v.iter().copied())
    }

    #[test]
    fn d0_and_d2() {
        assert_eq!(family_subspaces(0).unwrap(), vec![Subspace::zero(0)]);
        let f2 = family_subspaces(2).unwrap();
        assert_eq!(f2, vec![sub(2, &[]), sub(2, &[1]), sub(2, &[2]), sub(2, &[3])]);
        assert_eq!(family_prime_subspaces(2).unwrap(), f2);
        assert_eq!(family_ucb_subspaces(2).unwrap(), f2);
    }

    #[test]
    fn sizes() {
        for d in (0..=10).step_by(2) {
            assert_eq!(family_subspaces(d).unwrap().len(), 1 << d);
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(build_family(16), Err(Error::DimensionCap { .. })));
        assert!(matches!(build_family(5), Err(Error::OddDimension(5))));
    }

    #[test]
    fn lemma_prime_example_d4() {
        // τ_5(0) ⊕ F₂e_5 = F₂e_{[1,4]} = E_1.
        let s = SymplecticSpace::new(4).unwrap();
        let e = tau(&s, 5).unwrap().image(&Subspace::zero(2)).with(s.circular_bits(5));
        assert_eq!(e, standard_subspace(&s, 1));
        assert!(family_prime_subspaces(4).unwrap().contains(&e));
    }

    #[test]
    fn interval_basis_examples() {
        let s = SymplecticSpace::new(4).unwrap();
        // <1,512>: e_1 and e_3 + e_4.
        let e = sub(4, &[0b0001, 0b1100]);
        let b = interval_basis(&s, &e).unwrap();
        assert_eq!(
            b,
            vec![IntervalLabel::new(4, 1, 1).unwrap(), IntervalLabel::new(4, 3, 4).unwrap()]
        );
        assert!(interval_basis(&s, &Subspace::zero(4)).unwrap().is_empty());
        let e2 = standard_subspace(&s, 2);
        assert_eq!(
            interval_basis(&s, &e2).unwrap(),
            vec![IntervalLabel::new(4, 1, 4).unwrap(), IntervalLabel::new(4, 2, 3).unwrap()]
        );
    }

    #[test]
    fn interval_basis_rejects_non_member() {
        // e_1 + e_3 spans no interval vector.
        let s = SymplecticSpace::new(4).unwrap();
        assert!(matches!(
            interval_basis(&s, &sub(4, &[0b0101])),
            Err(Error::IntervalBasis { .. })
        ));
    }

    #[test]
    fn delta_values() {
        assert_eq!(
            (0..8).map(delta).collect::<Vec<_>>(),
            vec![1, -1, -1, 1, 1, -1, -1, 1]
        );
    }

    #[test]
    fn sign_identity_small() {
        let (l, r) = sign_sum_identity(2);
        assert_eq!(l, BigInt::from(4));
        assert_eq!(r, BigInt::from(4));
        for d in 0..=16 {
            let (l, r) = sign_sum_identity(d);
            assert_eq!(l, r, "d={d}");
        }
    }

    #[test]
    fn fibers_d4() {
        let f = build_family(4).unwrap();
        let lines = f.table_lines();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "∅,<5>,<5,451>");
        assert!(lines.contains(&"<2>,<2,5>".to_string()));
        let two = f.index_of(&sub(4, &[0b0010])).unwrap();
        let fib = &f.fibers()[f.entry(two).fiber];
        let ns: Vec<_> = fib.members.iter().map(|&m| f.entry(m).n_even).collect();
        assert_eq!(ns, vec![0, 1]);
        // κ swaps <2> and <2,5>.
        let other = fib.members[1];
        assert_eq!(f.kappa(other).subspace, sub(4, &[0b0010]));
    }

    #[test]
    fn kappa_d2() {
        let f = build_family(2).unwrap();
        let zero = f.index_of(&Subspace::zero(2)).unwrap();
        let e3 = f.index_of(&sub(2, &[3])).unwrap();
        assert_eq!(f.entry(zero).kappa, e3);
        assert_eq!(f.entry(e3).kappa, zero);
        let e1 = f.index_of(&sub(2, &[1])).unwrap();
        assert_eq!(f.entry(e1).kappa, e1);
        assert_eq!(f.table_lines(), vec!["∅,<3>", "<1>", "<2>"]);
    }

    #[test]
    fn counts_d4_d6() {
        let r = verify_counts(&build_family(4).unwrap());
        assert!(r.passed());
        assert_eq!(r.dim_counts[2], (10, BigUint::from(10u32)));
        let r6 = verify_counts(&build_family(6).unwrap());
        assert!(r6.passed());
        assert_eq!(r6.dim_counts[3].0, 35);
    }
}
