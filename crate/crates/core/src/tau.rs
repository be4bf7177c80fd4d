//! The embeddings `τ_i : V′ → V` and `τ′_i : V″ → V′` between consecutive
//! levels of the recursion, their vertex-indexed form `τ̃_{γ′,γ}`, and the
//! identities relating them.

use crate::error::{Error, Result};
use crate::family;
use crate::gf2::{LinearMap, Subspace, SymplecticSpace};

/// A linear map `V′ → V` with `dim V′ = dim V − 2`, described by the images
/// of the `D − 1` circular vectors of `V′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEmbedding {
    target: SymplecticSpace,
    images: Vec<u64>,
}

impl LinearEmbedding {
    fn new(target: SymplecticSpace, images: Vec<u64>) -> Self {
        LinearEmbedding { target, images }
    }

    pub fn target(&self) -> SymplecticSpace {
        self.target
    }

    pub fn source(&self) -> SymplecticSpace {
        self.target.reduced().expect("target has dimension >= 2")
    }

    /// Images of `e′_1, …, e′_{D−1}`; empty for the zero map out of `V′ = 0`.
    pub fn images(&self) -> &[u64] {
        &self.images
    }

    /// The matrix on the coordinates `e′_1, …, e′_{D−2}`.
    pub fn matrix(&self) -> LinearMap {
        let m = self.target.dim().saturating_sub(2);
        LinearMap::new(m, self.target.dim(), self.images.iter().take(m).copied().collect())
    }

    #[inline]
    pub fn apply_bits(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut v = v;
        let mut k = 0;
        while v != 0 {
            if v & 1 == 1 {
                out ^= self.images[k];
            }
            v >>= 1;
            k += 1;
        }
        out
    }

    pub fn image(&self, e: &Subspace) -> Subspace {
        Subspace::from_bits(self.target.dim(), e.basis().iter().map(|&b| self.apply_bits(b)))
    }

    /// Images sum to zero, the map is injective and preserves the form.
    pub fn is_valid(&self) -> bool {
        let sum_zero = self.images.iter().fold(0, |acc, &x| acc ^ x) == 0;
        let m = self.matrix();
        sum_zero && m.is_injective() && m.preserves_form(&self.source(), &self.target)
    }
}

fn check_dim(space: &SymplecticSpace, min: usize) -> Result<()> {
    if space.dim() < min {
        return Err(Error::Usage(format!(
            "dimension {} is below the minimum {min} for this map",
            space.dim()
        )));
    }
    Ok(())
}

/// `τ_i : V′ → V` for `i ∈ [1, D+1]`.
pub fn tau(space: &SymplecticSpace, i: usize) -> Result<LinearEmbedding> {
    check_dim(space, 2)?;
    let d = space.dim();
    if i == 0 || i > d + 1 {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: d + 1 });
    }
    if d == 2 {
        return Ok(LinearEmbedding::new(*space, Vec::new()));
    }
    let e = |j: usize| space.circular_bits(j);
    let images: Vec<u64> = if i == 1 {
        (3..=d).map(e).chain([e(d + 1) ^ e(1) ^ e(2)]).collect()
    } else if i == d + 1 {
        (2..d).map(e).chain([e(d) ^ e(d + 1) ^ e(1)]).collect()
    } else {
        (1..i - 1)
            .map(e)
            .chain([e(i - 1) ^ e(i) ^ e(i + 1)])
            .chain((i + 2..=d + 1).map(e))
            .collect()
    };
    debug_assert_eq!(images.len(), d - 1);
    Ok(LinearEmbedding::new(*space, images))
}

/// `τ′_i : V″ → V′` for `i ∈ [1, D−1]`, where `space` is `V`.
pub fn tau_prime(space: &SymplecticSpace, i: usize) -> Result<LinearEmbedding> {
    check_dim(space, 4)?;
    tau(&space.reduced().expect("dim >= 4"), i)
}

/// `τ_i(V′) ∩ F₂e_i = 0` and `τ_i(V′) ⊕ F₂e_i = e_i^⊥`.
pub fn check_complement(space: &SymplecticSpace, i: usize) -> Result<bool> {
    let t = tau(space, i)?;
    let ei = space.circular_bits(i);
    let img = t.image(&Subspace::from_bits(
        space.dim() - 2,
        (0..space.dim() - 2).map(|k| 1u64 << k),
    ));
    let line = Subspace::from_bits(space.dim(), [ei]);
    let perp = space.perp(&line);
    let sum = img.with(ei);
    Ok(img.intersects_trivially(&line) && sum == perp)
}

/// Outcome of checking `τ_{D+1}τ′_i = τ_jτ′_{D−1}` and the subspace identity
/// that follows from it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionReport {
    pub dim: usize,
    pub indices_checked: usize,
    pub subspaces_checked: usize,
    /// `i` values whose two compositions differ as matrices (`j = i` at `i = 1`).
    pub matrix_mismatches: Vec<usize>,
    /// `(i, E″)` pairs where the subspace identity fails with `j = i` at `i = 1`.
    pub subspace_mismatches: Vec<(usize, Subspace)>,
    /// As above with `j = i + 1` for every `i`, including `i = 1`.
    pub shifted_matrix_mismatches: Vec<usize>,
    pub shifted_subspace_mismatches: Vec<(usize, Subspace)>,
}

impl CompositionReport {
    /// The matrix identity with `j = 1` at `i = 1`.
    pub fn matrix_identity_holds(&self) -> bool {
        self.matrix_mismatches.is_empty()
    }

    /// Both identities with `j = 1` at `i = 1`.
    ///
    /// The subspace identity is false at `i = 1` with this choice as soon as
    /// `D ≥ 4`: the left side contains `e_2, e_{D+1}` while the right side is
    /// spanned by `e_1, e_2 + e_{D+1}` (plus the common image of `E″`).
    pub fn passed_unshifted(&self) -> bool {
        self.matrix_mismatches.is_empty() && self.subspace_mismatches.is_empty()
    }

    /// Both identities with `j = i + 1` throughout. Since `τ_1τ′_{D−1} =
    /// τ_2τ′_{D−1}`, the matrix identity holds for either choice at `i = 1`.
    pub fn passed(&self) -> bool {
        self.shifted_matrix_mismatches.is_empty() && self.shifted_subspace_mismatches.is_empty()
    }
}

/// For every `i ∈ [1, D−2]` with `j = i+1` (`i > 1`) or `j = i` (`i = 1`):
/// compares `τ_{D+1}∘τ′_i` with `τ_j∘τ′_{D−1}`, and for each `E″ ∈ F(V″)`
/// compares `τ_{D+1}(τ′_i(E″) ⊕ F₂e′_i) ⊕ F₂e_{D+1}` with
/// `τ_j(τ′_{D−1}(E″) ⊕ F₂e′_{D−1}) ⊕ F₂e_j`. Both checks are repeated with
/// `j = 2` at `i = 1`.
pub fn verify_composition_identity(dim: usize) -> Result<CompositionReport> {
    let space = SymplecticSpace::new(dim)?;
    check_dim(&space, 4)?;
    let v1 = space.reduced().unwrap();
    let inner_family = family::family_subspaces(dim - 4)?;
    let outer_last = tau(&space, dim + 1)?;
    let inner_last = tau_prime(&space, dim - 1)?;
    let mut report = CompositionReport {
        dim,
        ..Default::default()
    };
    for i in 1..=dim - 2 {
        let inner_i = tau_prime(&space, i)?;
        let lhs = outer_last.matrix().compose(&inner_i.matrix());
        report.indices_checked += 1;
        for (j, shifted) in [(if i > 1 { i + 1 } else { i }, false), (i + 1, true)] {
            let outer_j = tau(&space, j)?;
            let rhs = outer_j.matrix().compose(&inner_last.matrix());
            if lhs != rhs {
                if shifted {
                    report.shifted_matrix_mismatches.push(i);
                } else {
                    report.matrix_mismatches.push(i);
                }
            }
            for e2 in &inner_family {
                let left = outer_last
                    .image(&inner_i.image(e2).with(v1.circular_bits(i)))
                    .with(space.circular_bits(dim + 1));
                let right = outer_j
                    .image(&inner_last.image(e2).with(v1.circular_bits(dim - 1)))
                    .with(space.circular_bits(j));
                if !shifted {
                    report.subspaces_checked += 1;
                }
                if left != right {
                    if shifted {
                        report.shifted_subspace_mismatches.push((i, e2.clone()));
                    } else {
                        report.subspace_mismatches.push((i, e2.clone()));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Direction in which `τ̃` walks the circle of `V` relative to that of `V′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `γ′ + m ↦ γ + 1 + m`.
    Forward,
    /// `γ′ + m ↦ γ − 1 − m`.
    Reverse,
}

/// `τ̃_{γ′,γ}` with the forward orientation; vertices are indices into the
/// cyclic sequences `e′_1, …, e′_{D−1}` and `e_1, …, e_{D+1}`.
pub fn generic_tau(space: &SymplecticSpace, gamma_prime: usize, gamma: usize) -> Result<LinearEmbedding> {
    generic_tau_oriented(space, gamma_prime, gamma, Orientation::Forward)
}

/// `τ̃(γ′)` is the sum over the closed neighbourhood `[γ]`, and the remaining
/// vertices of `V′` go in order onto the vertices of `V` outside `[γ]`.
pub fn generic_tau_oriented(
    space: &SymplecticSpace,
    gamma_prime: usize,
    gamma: usize,
    orientation: Orientation,
) -> Result<LinearEmbedding> {
    check_dim(space, 4)?;
    let d = space.dim();
    let n1 = d - 1;
    let n = d + 1;
    if gamma_prime == 0 || gamma_prime > n1 {
        return Err(Error::IndexOutOfRange { index: gamma_prime, lo: 1, hi: n1 });
    }
    if gamma == 0 || gamma > n {
        return Err(Error::IndexOutOfRange { index: gamma, lo: 1, hi: n });
    }
    let e = |j: usize| space.circular_bits(j);
    let mut images = vec![0u64; n1];
    images[gamma_prime - 1] = e(gamma + n - 1) ^ e(gamma) ^ e(gamma + 1);
    for m in 1..n1 {
        let src = (gamma_prime - 1 + m) % n1;
        let dst = match orientation {
            Orientation::Forward => gamma + 1 + m,
            Orientation::Reverse => gamma + 2 * n - 1 - m,
        };
        images[src] = e(dst);
    }
    Ok(LinearEmbedding::new(*space, images))
}
