//! Verification suites over one dimension, collected into a uniform report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::dihedral::{dihedral_relations_hold, reflection_intertwining, rotation_intertwining, verify_family_stability};
use crate::error::{Error, Result};
use crate::family::{self, build_family, verify_counts, Family};
use crate::fourier::{change_of_basis, check_z_commutation, format_rational, verify_triangularity};
use crate::gf2::SymplecticSpace;
use crate::tau::{check_complement, tau, verify_composition_identity};

/// Largest `d` for which the sign identity is checked without a family.
pub const SIGN_IDENTITY_MAX_HALF_DIM: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, passed: bool, details: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            passed,
            details: details.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            suite: &'a str,
            passed: bool,
            checks: &'a [Check],
        }
        serde_json::to_string_pretty(&Doc {
            suite: &self.suite,
            passed: self.passed(),
            checks: &self.checks,
        })
        .expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.details)?;
        }
        write!(f, "{}: {}", self.suite, if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Family,
    Tau,
    Fourier,
    Dihedral,
    Counts,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Family, Suite::Counts, Suite::Tau, Suite::Fourier, Suite::Dihedral];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Family => "family",
            Suite::Tau => "tau",
            Suite::Fourier => "fourier",
            Suite::Dihedral => "dihedral",
            Suite::Counts => "counts",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

pub fn run_suite(dim: usize, suite: Suite) -> Result<Report> {
    SymplecticSpace::new(dim)?;
    let family = build_family(dim)?;
    let one = |s: Suite| -> Result<Report> {
        match s {
            Suite::Family => family_suite(&family),
            Suite::Counts => Ok(counts_suite(&family)),
            Suite::Tau => tau_suite(dim),
            Suite::Fourier => fourier_suite(&family),
            Suite::Dihedral => dihedral_suite(&family),
            Suite::All => unreachable!(),
        }
    };
    if suite != Suite::All {
        return one(suite);
    }
    let mut report = Report::new(format!("all (D={dim})"));
    for s in Suite::EACH {
        report.extend(one(s)?);
    }
    Ok(report)
}

/// `F = F′ = F″` as sets, `2^D` members, fibers partition the family.
pub fn family_suite(family: &Family) -> Result<Report> {
    let dim = family.dim();
    let mut r = Report::new(format!("family (D={dim})"));
    let mut f = family.subspaces();
    f.sort();
    let mut fp = family::family_prime_subspaces(dim)?;
    fp.sort();
    let mut fu = family::family_ucb_subspaces(dim)?;
    fu.sort();
    r.push("size", family.len() == 1 << dim, format!("|F(V)| = {}", family.len()));
    r.push("isotropic", family.subspaces().iter().all(|e| family.space().is_isotropic(e)), "every member is isotropic");
    r.push("f-equals-f-prime", f == fp, format!("|F'(V)| = {}", fp.len()));
    r.push("f-equals-f-ucb", f == fu, format!("|F''(V)| = {}", fu.len()));
    let mut covered: Vec<usize> = family.fibers().iter().flat_map(|x| x.members.clone()).collect();
    covered.sort_unstable();
    r.push(
        "fibers-partition",
        covered == (0..family.len()).collect::<Vec<_>>(),
        format!("{} fibers", family.fibers().len()),
    );
    Ok(r)
}

/// `|F_k|`, `|F^k|`, κ, and `Σ_k δ(d−k)·C(D+1,k) = 2^d` for every `d ≤ 16`.
pub fn counts_suite(family: &Family) -> Report {
    let c = verify_counts(family);
    let mut r = Report::new(format!("counts (D={})", c.dim));
    let show = |v: &[(usize, num_bigint::BigUint)]| v.iter().map(|(a, _)| a.to_string()).collect::<Vec<_>>().join(",");
    r.push("dim-counts", c.dim_counts_ok(), format!("|F_k| = {}", show(&c.dim_counts)));
    r.push("n-counts", c.n_counts_ok(), format!("|F^k| = {}", show(&c.n_counts)));
    r.push("kappa", c.kappa_bijective, "κ is an involution exchanging F^k and F_{d-k}");
    r.push(
        "sign-identity",
        c.sign_identity.0 == c.sign_identity.1,
        format!("sum = {} for d = {}", c.sign_identity.0, c.dim / 2),
    );
    let bad: Vec<u64> = (0..=SIGN_IDENTITY_MAX_HALF_DIM)
        .filter(|&d| {
            let (a, b) = family::sign_sum_identity(d);
            a != b || b != BigInt::from(1u64) << d
        })
        .collect();
    r.push(
        "sign-identity-range",
        bad.is_empty(),
        format!("d = 0..={SIGN_IDENTITY_MAX_HALF_DIM}, failures {bad:?}"),
    );
    r
}

/// Embeddings, complements and the composition identity. The composition
/// check uses `j = i + 1` throughout; the literal `j = 1` at `i = 1` is
/// reported alongside.
pub fn tau_suite(dim: usize) -> Result<Report> {
    let space = SymplecticSpace::new(dim)?;
    let mut r = Report::new(format!("tau (D={dim})"));
    if dim < 2 {
        r.push("trivial", true, "no maps for D = 0");
        return Ok(r);
    }
    let mut invalid = Vec::new();
    let mut not_complement = Vec::new();
    for i in 1..=dim + 1 {
        if dim > 2 && !tau(&space, i)?.is_valid() {
            invalid.push(i);
        }
        if !check_complement(&space, i)? {
            not_complement.push(i);
        }
    }
    r.push("tau-embedding", invalid.is_empty(), format!("injective and form-compatible; failures {invalid:?}"));
    r.push("tau-complement", not_complement.is_empty(), format!("τ_i(V′) ⊕ F₂e_i = e_i^⊥; failures {not_complement:?}"));
    if dim >= 4 {
        let c = verify_composition_identity(dim)?;
        r.push(
            "composition-matrix",
            c.matrix_identity_holds() && c.shifted_matrix_mismatches.is_empty(),
            format!("{} indices", c.indices_checked),
        );
        let literal_i: Vec<usize> = {
            let mut v: Vec<usize> = c.subspace_mismatches.iter().map(|(i, _)| *i).collect();
            v.dedup();
            v
        };
        r.push(
            "composition-subspace",
            c.passed(),
            format!(
                "j = i+1: {} subspaces, {} mismatches; literal j = 1 at i = 1: {} mismatches at i = {:?}",
                c.subspaces_checked,
                c.shifted_subspace_mismatches.len(),
                c.subspace_mismatches.len(),
                literal_i
            ),
        );
    }
    Ok(r)
}

/// Triangularity, diagonal signs, trace and `+1` count; z-commutation.
pub fn fourier_suite(family: &Family) -> Result<Report> {
    let dim = family.dim();
    let mut r = Report::new(format!("fourier (D={dim})"));
    let cob = change_of_basis(family)?;
    let t = verify_triangularity(family, &cob);
    r.push("basis-unimodular", t.basis_determinant.abs() == 1, format!("det B = {}", t.basis_determinant));
    r.push(
        "upper-triangular",
        t.triangularity_violations.is_empty(),
        format!("{} violations", t.triangularity_violations.len()),
    );
    r.push(
        "diagonal-delta",
        t.diagonal_mismatches.is_empty(),
        format!("{} mismatches", t.diagonal_mismatches.len()),
    );
    r.push(
        "trace",
        t.trace == t.expected_trace(),
        format!("trace = {}, 2^d = {}", format_rational(&t.trace), format_rational(&t.expected_trace())),
    );
    r.push(
        "plus-count",
        t.plus_count == t.expected_plus_count,
        format!("{} entries +1, expected {}", t.plus_count, t.expected_plus_count),
    );
    if dim >= 2 {
        let space = *family.space();
        let bad: Vec<usize> = (1..=dim + 1)
            .filter(|&i| !check_z_commutation(&space, i).unwrap_or(false))
            .collect();
        r.push("z-commutation", bad.is_empty(), format!("Φ∘z_i = z_i∘Φ′; failures {bad:?}"));
    }
    Ok(r)
}

/// `R`, `S` preserve the family; intertwining and dihedral relations.
pub fn dihedral_suite(family: &Family) -> Result<Report> {
    let dim = family.dim();
    let space = *family.space();
    let mut r = Report::new(format!("dihedral (D={dim})"));
    let s = verify_family_stability(family);
    r.push(
        "stability",
        s.escaping().is_empty(),
        format!("{} orbits, {} escaping images", s.orbits.len(), s.escaping().len()),
    );
    r.push(
        "group-order",
        s.group_order_divides(),
        format!("order {:?} divides {}", s.group_order, 2 * (dim + 1)),
    );
    r.push("relations", dihedral_relations_hold(&space), "R^{D+1} = S^2 = 1, SRS = R^{-1}");
    let rot = rotation_intertwining(&space)?;
    r.push(
        "rotation-intertwining",
        rot.passed(),
        format!(
            "corrected failures {:?}; as stated (R′ also at i = D) failures {:?}",
            rot.corrected_failures, rot.stated_failures
        ),
    );
    let refl = reflection_intertwining(&space)?;
    r.push("reflection-intertwining", refl.passed(), format!("failures {:?}", refl.corrected_failures));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_d4() {
        let r = run_suite(4, Suite::All).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_json().contains("\"passed\": true"));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All].into_iter().chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn odd_dimension_rejected() {
        assert_eq!(run_suite(3, Suite::Counts), Err(Error::OddDimension(3)));
    }
}
