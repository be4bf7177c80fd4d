//! The rotation `R`, the reflection `S`, and the dihedral group they induce
//! on the family.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::Family;
use crate::gf2::{LinearMap, SymplecticSpace};
use crate::tau::tau;

/// A linear automorphism of `V` given by its matrix on `e_1, …, e_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SympAuto {
    space: SymplecticSpace,
    map: LinearMap,
}

impl SympAuto {
    fn from_circular_images(space: SymplecticSpace, image_of: impl Fn(usize) -> usize) -> Self {
        let cols = (1..=space.dim()).map(|i| space.circular_bits(image_of(i))).collect();
        SympAuto {
            space,
            map: LinearMap::new(space.dim(), space.dim(), cols),
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply_bits(&self, v: u64) -> u64 {
        self.map.apply_bits(v)
    }

    pub fn is_symplectic(&self) -> bool {
        self.map.rank() == self.space.dim() && self.map.preserves_form(&self.space, &self.space)
    }

    pub fn compose(&self, inner: &SympAuto) -> SympAuto {
        SympAuto {
            space: self.space,
            map: self.map.compose(&inner.map),
        }
    }

    pub fn pow(&self, k: usize) -> SympAuto {
        SympAuto {
            space: self.space,
            map: self.map.pow(k),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map == LinearMap::identity(self.space.dim())
    }
}

/// `R(e_i) = e_{i+1}`, indices mod `D+1`.
pub fn rotation(space: &SymplecticSpace) -> SympAuto {
    let n = space.dim() + 1;
    SympAuto::from_circular_images(*space, |i| i % n + 1)
}

/// `S(e_i) = e_{D+1−i}` for `i ≤ D`; `S(e_{D+1}) = e_{D+1}` follows.
pub fn reflection(space: &SymplecticSpace) -> SympAuto {
    let d = space.dim();
    SympAuto::from_circular_images(*space, |i| d + 1 - i)
}

/// Outcome of an intertwining check over `i ∈ [1, D+1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Intertwining {
    /// Indices where the relation as usually stated fails.
    pub stated_failures: Vec<usize>,
    /// Indices where the corrected relation fails.
    pub corrected_failures: Vec<usize>,
}

impl Intertwining {
    pub fn passed(&self) -> bool {
        self.corrected_failures.is_empty()
    }
}

/// `R∘τ_i = τ_{i+1}∘R′` is stated for `i ∈ [1, D]` and `R∘τ_{D+1} = τ_1`.
/// At `i = D` the identity that actually holds is `R∘τ_D = τ_{D+1}` with no
/// `R′`: both sides send `e′_k ↦ e_{k+1}` for `k ≤ D−2`. The corrected
/// relation uses `R′` only for `i ≤ D − 1`.
pub fn rotation_intertwining(space: &SymplecticSpace) -> Result<Intertwining> {
    let d = space.dim();
    let mut out = Intertwining::default();
    if d < 2 {
        return Ok(out);
    }
    let r = rotation(space);
    let r1 = rotation(&space.reduced().unwrap());
    for i in 1..=d + 1 {
        let lhs = r.map.compose(&tau(space, i)?.matrix());
        let j = if i == d + 1 { 1 } else { i + 1 };
        let next = tau(space, j)?.matrix();
        let with_r1 = next.compose(&r1.map);
        let stated = if i <= d { &with_r1 } else { &next };
        let corrected = if i < d { &with_r1 } else { &next };
        if lhs != *stated {
            out.stated_failures.push(i);
        }
        if lhs != *corrected {
            out.corrected_failures.push(i);
        }
    }
    Ok(out)
}

/// `S∘τ_i = τ_{D+1−i}∘S′` for `i ≤ D` and `S∘τ_{D+1} = τ_{D+1}∘S′`; the
/// stated and corrected forms coincide.
pub fn reflection_intertwining(space: &SymplecticSpace) -> Result<Intertwining> {
    let d = space.dim();
    if d < 2 {
        return Ok(Intertwining::default());
    }
    let s = reflection(space);
    let s1 = reflection(&space.reduced().unwrap());
    let mut out = Vec::new();
    for i in 1..=d + 1 {
        let j = if i == d + 1 { d + 1 } else { d + 1 - i };
        let lhs = s.map.compose(&tau(space, i)?.matrix());
        let rhs = tau(space, j)?.matrix().compose(&s1.map);
        if lhs != rhs {
            out.push(i);
        }
    }
    Ok(Intertwining {
        stated_failures: out.clone(),
        corrected_failures: out,
    })
}

/// `R^{D+1} = 1`, `S² = 1`, `SRS = R^{−1}`, as matrices.
pub fn dihedral_relations_hold(space: &SymplecticSpace) -> bool {
    let r = rotation(space);
    let s = reflection(space);
    r.pow(space.dim() + 1).is_identity()
        && s.pow(2).is_identity()
        && s.compose(&r).compose(&s).compose(&r).is_identity()
}

/// The action of `R` and `S` on the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub dim: usize,
    /// `k ↦ index of R(E_k)`, or `None` when `R(E_k)` is not a member.
    pub rotation: Vec<Option<usize>>,
    pub reflection: Vec<Option<usize>>,
    /// Orbits of the generated group, each sorted, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// Order of the permutation group generated on the member list, when
    /// both maps are permutations.
    pub group_order: Option<usize>,
}

impl StabilityReport {
    /// `(map, member)` pairs whose image escapes the family.
    pub fn escaping(&self) -> Vec<(&'static str, usize)> {
        let r = self.rotation.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(k, _)| ("R", k));
        let s = self.reflection.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(k, _)| ("S", k));
        r.chain(s).collect()
    }

    pub fn group_order_divides(&self) -> bool {
        self.group_order.is_some_and(|n| (2 * (self.dim + 1)).is_multiple_of(n))
    }

    pub fn passed(&self) -> bool {
        self.escaping().is_empty() && self.group_order_divides()
    }

    pub fn to_document(&self, family: &Family) -> OrbitDocument {
        OrbitDocument {
            dim: self.dim,
            group_order: self.group_order,
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitEntry {
                    representative: family.entry(o[0]).render(),
                    size: o.len(),
                    members: o.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitDocument {
    pub dim: usize,
    pub group_order: Option<usize>,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitEntry {
    pub representative: String,
    pub size: usize,
    pub members: Vec<usize>,
}

fn induced(family: &Family, g: &SympAuto) -> Vec<Option<usize>> {
    family
        .entries()
        .iter()
        .map(|e| {
            let image = g.map.image(&e.subspace);
            family.index_of(&image)
        })
        .collect()
}

/// Closure of the generated permutation group, abandoned past `cap` elements.
fn group_order(generators: &[Vec<usize>], cap: usize) -> Option<usize> {
    let n = generators.first()?.len();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&k| g[k]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}

fn orbits(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let m = members[k];
            for g in generators {
                if orbit_of[g[m]] == usize::MAX {
                    orbit_of[g[m]] = id;
                    members.push(g[m]);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn verify_family_stability(family: &Family) -> StabilityReport {
    let space = family.space();
    let rotation = induced(family, &rotation(space));
    let reflection = induced(family, &reflection(space));
    let perms: Option<Vec<Vec<usize>>> = [&rotation, &reflection]
        .into_iter()
        .map(|v| v.iter().copied().collect::<Option<Vec<usize>>>())
        .collect();
    let (orbits, group_order) = match perms {
        Some(gens) => (orbits(family.len(), &gens), group_order(&gens, 4 * (space.dim() + 1))),
        None => (Vec::new(), None),
    };
    StabilityReport {
        dim: space.dim(),
        rotation,
        reflection,
        orbits,
        group_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    #[test]
    fn rotation_d2() {
        let s = SymplecticSpace::new(2).unwrap();
        let r = rotation(&s);
        assert_eq!(r.apply_bits(0b01), 0b10);
        assert_eq!(r.apply_bits(0b10), 0b11);
        assert!(r.is_symplectic());
    }

    #[test]
    fn reflection_d4() {
        let s = SymplecticSpace::new(4).unwrap();
        let r = reflection(&s);
        assert_eq!(r.apply_bits(0b0010), 0b0100);
        assert!(r.pow(2).is_identity());
    }

    #[test]
    fn rotation_relation_at_d() {
        for d in [4, 6] {
            let s = SymplecticSpace::new(d).unwrap();
            let rot = rotation_intertwining(&s).unwrap();
            assert_eq!(rot.stated_failures, vec![d]);
            assert!(rot.passed());
            assert!(reflection_intertwining(&s).unwrap().passed());
        }
    }

    #[test]
    fn d0_is_trivial() {
        let s = SymplecticSpace::new(0).unwrap();
        assert!(dihedral_relations_hold(&s));
        let rep = verify_family_stability(&build_family(0).unwrap());
        assert_eq!(rep.group_order, Some(1));
    }

    #[test]
    fn d2_lines_cycle() {
        let fam = build_family(2).unwrap();
        let rep = verify_family_stability(&fam);
        assert_eq!(rep.rotation[0], Some(0));
        assert_eq!(rep.orbits, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(rep.group_order, Some(6));
    }
}
