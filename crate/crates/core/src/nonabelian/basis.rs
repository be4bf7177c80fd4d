//! New bases of `Z[M(Γ)]`, their ordered partitions into pieces, and the
//! check that the Fourier transform is triangular with the expected signs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::exact;

use super::transform::{mat_mul, FtMatrix, MLabel};

/// Which of the two `S₃` new bases: the one attached to type `G₂`, or the
/// one attached to `E₆, E₇, E₈`. They differ only in `hat(g₃,θ)`,
/// `hat(g₃,θ²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum S3Variant {
    G2,
    E,
}

impl std::str::FromStr for S3Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(S3Variant::G2),
            "e" | "e6" | "e7" | "e8" => Ok(S3Variant::E),
            _ => Err(Error::Usage(format!("unknown S3 variant {s:?} (expected g2 or e)"))),
        }
    }
}

impl S3Variant {
    pub fn name(self) -> &'static str {
        match self {
            S3Variant::G2 => "g2",
            S3Variant::E => "e",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDoc {
    pub x: String,
    pub rho: String,
    pub coeff_num: i64,
    #[serde(default = "one_i64")]
    pub coeff_den: i64,
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpansionDoc {
    pub label: MLabel,
    pub terms: Vec<TermDoc>,
}

/// The JSON file format of a new basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisDocument {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub expansions: Vec<ExpansionDoc>,
}

/// For each `hat(x,ρ)`, its coordinates in the standard basis `M(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewBasis {
    pub group: String,
    pub variant: Option<String>,
    pub hats: Vec<MLabel>,
    /// `columns[k][i]` is the coefficient of the `i`-th pair of `M(Γ)` in `hats[k]`.
    pub columns: Vec<Vec<BigRational>>,
}

impl NewBasis {
    /// Reads a document against the pair list of `ft`. Labels are
    /// normalized; unknown labels, duplicate hats and zero denominators are
    /// errors. Coverage and unimodularity are left to the verifier so that it
    /// can report them.
    pub fn from_document(doc: &BasisDocument, ft: &FtMatrix) -> Result<NewBasis> {
        let group = doc.group.trim().to_ascii_lowercase();
        if group != ft.group {
            return Err(Error::InvalidBasis(format!("basis is for {group}, transform is for {}", ft.group)));
        }
        let mut hats = Vec::new();
        let mut columns = Vec::new();
        let mut seen = HashSet::new();
        for e in &doc.expansions {
            let hat = MLabel::new(&e.label.x, &e.label.rho);
            ft.require(&hat)?;
            if !seen.insert(hat.clone()) {
                return Err(Error::InvalidBasis(format!("{hat} is expanded twice")));
            }
            let mut col = vec![BigRational::zero(); ft.len()];
            for t in &e.terms {
                if t.coeff_den == 0 {
                    return Err(Error::InvalidBasis(format!("zero denominator in the expansion of {hat}")));
                }
                let i = ft.require(&MLabel::new(&t.x, &t.rho))?;
                col[i] += BigRational::new(t.coeff_num.into(), t.coeff_den.into());
            }
            hats.push(hat);
            columns.push(col);
        }
        Ok(NewBasis {
            group,
            variant: doc.variant.clone(),
            hats,
            columns,
        })
    }

    pub fn to_document(&self, ft: &FtMatrix) -> BasisDocument {
        BasisDocument {
            group: self.group.clone(),
            variant: self.variant.clone(),
            expansions: self
                .hats
                .iter()
                .zip(&self.columns)
                .map(|(hat, col)| ExpansionDoc {
                    label: hat.clone(),
                    terms: col
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| TermDoc {
                            x: ft.labels[i].x.clone(),
                            rho: ft.labels[i].rho.clone(),
                            coeff_num: c.numer().to_i64().expect("small coefficient"),
                            coeff_den: c.denom().to_i64().expect("small coefficient"),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// The two new bases of `Z[M(S₃)]`.
pub fn s3_new_basis(variant: S3Variant) -> BasisDocument {
    let t = |x: &str, rho: &str, c: i64| TermDoc {
        x: x.into(),
        rho: rho.into(),
        coeff_num: c,
        coeff_den: 1,
    };
    let middle = match variant {
        S3Variant::G2 => "1",
        S3Variant::E => "eps",
    };
    let mut expansions = vec![
        ("1", "1", vec![t("1", "1", 1)]),
        ("1", "r", vec![t("1", "1", 1), t("1", "r", 1)]),
        ("1", "eps", vec![t("1", "1", 1), t("1", "r", 2), t("1", "eps", 1)]),
        ("g2", "1", vec![t("1", "1", 1), t("1", "r", 1), t("g2", "1", 1)]),
        ("g2", "eps", vec![t("1", "1", 1), t("1", "r", 1), t("g2", "eps", 1)]),
        ("g3", "1", vec![t("1", "1", 1), t("g2", "1", 1), t("g3", "1", 1)]),
    ];
    for rho in ["theta", "theta^2"] {
        expansions.push(("g3", rho, vec![t("1", "1", 1), t("g2", middle, 1), t("g3", rho, 1)]));
    }
    BasisDocument {
        group: "s3".into(),
        variant: Some(variant.name().into()),
        expansions: expansions
            .into_iter()
            .map(|(x, rho, terms)| ExpansionDoc {
                label: MLabel::new(x, rho),
                terms,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceDoc {
    pub members: Vec<MLabel>,
    pub sign: i64,
}

/// An ordered partition of the new basis with the expected sign per piece.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceData {
    pub version: u32,
    pub group: String,
    pub pieces: Vec<PieceDoc>,
}

impl PieceData {
    pub fn sizes(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.members.len()).collect()
    }

    /// `Σ sign · |piece|`, which must equal the trace when the transform is
    /// triangular with these signs.
    pub fn signed_size(&self) -> i64 {
        self.pieces.iter().map(|p| p.sign * p.members.len() as i64).sum()
    }
}

const PIECES_S3: &str = include_str!("../../data/pieces_s3.json");
const PIECES_S4: &str = include_str!("../../data/pieces_s4.json");
const PIECES_S5: &str = include_str!("../../data/pieces_s5.json");

/// The stored partition for `s3`, `s4` or `s5`. For `S₃` the partition is
/// the same for both variants.
pub fn piece_partition(group: &str) -> Result<PieceData> {
    let raw = match group.trim().to_ascii_lowercase().as_str() {
        "s3" => PIECES_S3,
        "s4" => PIECES_S4,
        "s5" => PIECES_S5,
        other => return Err(Error::UnsupportedGroup(other.to_string())),
    };
    let mut data: PieceData = serde_json::from_str(raw)?;
    for p in &mut data.pieces {
        for m in &mut p.members {
            *m = MLabel::new(&m.x, &m.rho);
        }
    }
    Ok(data)
}

/// Where the off-diagonal coefficients of a piece live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientField {
    Rational,
    /// Real but irrational.
    Real,
    Cyclotomic,
}

impl CoefficientField {
    fn of(values: &[&CycNum]) -> Self {
        if values.iter().all(|v| v.is_rational()) {
            CoefficientField::Rational
        } else if values.iter().all(|v| v.conj() == **v) {
            CoefficientField::Real
        } else {
            CoefficientField::Cyclotomic
        }
    }
}

/// The first thing found wrong, in piece order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `missing`: pairs lacking an expansion or a piece; `extra`: piece
    /// entries that repeat or are not pairs of the group.
    Coverage { missing: Vec<MLabel>, extra: Vec<MLabel> },
    NonIntegral { hat: MLabel },
    NotUnimodular { determinant: String },
    /// `F(hat)` has a nonzero coefficient on `target`, which is neither
    /// `hat` nor in a later piece.
    OffDiagonal {
        hat: MLabel,
        hat_piece: usize,
        target: MLabel,
        target_piece: usize,
        coefficient: String,
    },
    /// The coefficient of `hat` in `F(hat)` is not the expected sign.
    Diagonal { hat: MLabel, piece: usize, value: String, expected: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceOutcome {
    /// 1-based.
    pub piece: usize,
    pub expected_sign: i64,
    /// The common diagonal value when it is constant and `±1`.
    pub observed_sign: Option<i64>,
    pub field: CoefficientField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularReport {
    pub group: String,
    pub variant: Option<String>,
    pub violation: Option<Violation>,
    pub pieces: Vec<PieceOutcome>,
    /// Hats outside the `S₅` hyperplane (empty for other groups).
    pub outside_hyperplane: Vec<MLabel>,
}

impl TriangularReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// The matrix `A` of `F` in the new basis: `F(hat_j) = Σ_i A[i][j] hat_i`.
pub fn matrix_in_basis(ft: &FtMatrix, p: &[Vec<BigRational>]) -> Result<Vec<Vec<CycNum>>> {
    let inv = exact::inverse(p).ok_or(Error::SingularBasis)?;
    let to_cyc = |m: &[Vec<BigRational>]| -> Result<Vec<Vec<CycNum>>> {
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        let n = q.numer().to_i128().ok_or(Error::Overflow("basis coefficient"))?;
                        let d = q.denom().to_i128().ok_or(Error::Overflow("basis coefficient"))?;
                        Ok(CycNum::rational(n, d))
                    })
                    .collect()
            })
            .collect()
    };
    let pc = to_cyc(p)?;
    let ic = to_cyc(&inv)?;
    Ok(mat_mul(&ic, &mat_mul(&ft.entries, &pc)))
}

/// Expresses `F` in `basis` and checks, piece by piece in order, that the
/// image of each hat is `sign · hat` plus hats of strictly later pieces.
pub fn verify_triangular(ft: &FtMatrix, basis: &NewBasis, pieces: &PieceData) -> Result<TriangularReport> {
    let mut report = TriangularReport {
        group: ft.group.clone(),
        variant: basis.variant.clone(),
        violation: None,
        pieces: Vec::new(),
        outside_hyperplane: Vec::new(),
    };

    let mut piece_of: HashMap<MLabel, usize> = HashMap::new();
    let mut extra = Vec::new();
    for (k, p) in pieces.pieces.iter().enumerate() {
        for m in &p.members {
            if piece_of.insert(m.clone(), k).is_some() || ft.index_of(m).is_none() {
                extra.push(m.clone());
            }
        }
    }
    let missing: Vec<MLabel> = ft.labels.iter().filter(|l| !piece_of.contains_key(*l) || !basis.hats.contains(l)).cloned().collect();
    if !missing.is_empty() || !extra.is_empty() || basis.hats.len() != ft.len() {
        report.violation = Some(Violation::Coverage { missing, extra });
        return Ok(report);
    }

    // P has the hats as columns, in the order of `ft.labels`.
    let order: Vec<usize> = ft
        .labels
        .iter()
        .map(|l| basis.hats.iter().position(|h| h == l).unwrap())
        .collect();
    let n = ft.len();
    let p: Vec<Vec<BigRational>> = (0..n)
        .map(|i| order.iter().map(|&k| basis.columns[k][i].clone()).collect())
        .collect();
    for &k in &order {
        if basis.columns[k].iter().any(|c| !c.is_integer()) {
            report.violation = Some(Violation::NonIntegral { hat: basis.hats[k].clone() });
            return Ok(report);
        }
    }
    let ints: Vec<Vec<BigInt>> = p.iter().map(|r| r.iter().map(|c| c.to_integer()).collect()).collect();
    let det = exact::bareiss_det(&ints);
    if !det.abs().is_one() {
        report.violation = Some(Violation::NotUnimodular { determinant: det.to_string() });
        return Ok(report);
    }

    let a = matrix_in_basis(ft, &p)?;
    let index = |l: &MLabel| ft.index_of(l).unwrap();
    for (k, piece) in pieces.pieces.iter().enumerate() {
        let mut observed: Option<Option<i64>> = None;
        let mut off = Vec::new();
        for hat in &piece.members {
            let j = index(hat);
            let diag = &a[j][j];
            let sign = if diag.is_one() {
                Some(1)
            } else if (-diag).is_one() {
                Some(-1)
            } else {
                None
            };
            observed = Some(match observed {
                None => sign,
                Some(prev) if prev == sign => prev,
                Some(_) => None,
            });
            if sign != Some(piece.sign) && report.violation.is_none() {
                report.violation = Some(Violation::Diagonal {
                    hat: hat.clone(),
                    piece: k + 1,
                    value: diag.to_string(),
                    expected: piece.sign,
                });
            }
            for (i, label) in ft.labels.iter().enumerate() {
                if i == j || a[i][j].is_zero() {
                    continue;
                }
                off.push(&a[i][j]);
                let target_piece = piece_of[label];
                if target_piece <= k && report.violation.is_none() {
                    report.violation = Some(Violation::OffDiagonal {
                        hat: hat.clone(),
                        hat_piece: k + 1,
                        target: label.clone(),
                        target_piece: target_piece + 1,
                        coefficient: a[i][j].to_string(),
                    });
                }
            }
        }
        report.pieces.push(PieceOutcome {
            piece: k + 1,
            expected_sign: piece.sign,
            observed_sign: observed.flatten(),
            field: CoefficientField::of(&off),
        });
    }

    if ft.group == "s5" {
        let phi = hyperplane_functional(ft)?;
        for &k in &order {
            let value: BigRational = phi
                .iter()
                .zip(&basis.columns[k])
                .map(|(f, c)| c * BigRational::from_integer((*f).into()))
                .fold(BigRational::zero(), |s, x| s + x);
            if !value.is_zero() {
                report.outside_hyperplane.push(basis.hats[k].clone());
            }
        }
    }
    Ok(report)
}

/// `φ(a) = a_{g₅,ζ} + a_{g₅,ζ⁴} − a_{g₅,ζ²} − a_{g₅,ζ³}` as a coefficient row.
pub fn hyperplane_functional(ft: &FtMatrix) -> Result<Vec<i64>> {
    let mut phi = vec![0i64; ft.len()];
    for (rho, c) in [("zeta", 1), ("zeta^4", 1), ("zeta^2", -1), ("zeta^3", -1)] {
        phi[ft.require(&MLabel::new("g5", rho))?] = c;
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneReport {
    /// `λ` with `φ∘F = λφ` when it exists.
    pub scalar: Option<CycNum>,
    /// `φ∘F − λφ`, with `λ` read off at `(g₅,ζ)`.
    pub residual: Vec<CycNum>,
}

impl HyperplaneReport {
    pub fn passed(&self) -> bool {
        self.scalar
            .as_ref()
            .is_some_and(|l| l.is_one() || (-l).is_one())
    }
}

/// `F(H) = H` for `H = ker φ`, which holds exactly when `φ∘F` is a multiple
/// of `φ` (`F` being invertible).
pub fn hyperplane_check(ft: &FtMatrix) -> Result<HyperplaneReport> {
    let phi = hyperplane_functional(ft)?;
    let composed: Vec<CycNum> = (0..ft.len())
        .map(|j| {
            phi.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, &c)| &ft.entries[i][j] * &CycNum::integer(c.into()))
                .sum()
        })
        .collect();
    let lambda = composed[ft.require(&MLabel::new("g5", "zeta"))?].clone();
    let residual: Vec<CycNum> = composed
        .iter()
        .zip(&phi)
        .map(|(v, &c)| v - &(&lambda * &CycNum::integer(c.into())))
        .collect();
    let scalar = residual.iter().all(CycNum::is_zero).then_some(lambda);
    Ok(HyperplaneReport { scalar, residual })
}

/// Trace of `F` against the signed piece sizes. When `F` is triangular in a
/// basis with the given signs, the two agree. `uncovered` is the trace minus
/// the signed sizes of every piece but the first `k`, i.e. the sum of the
/// signs that an induction over smaller groups does not determine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTraceReport {
    pub group: String,
    pub trace: String,
    pub signed_size: i64,
    pub uncovered_count: usize,
    pub uncovered_sum: String,
}

impl SignTraceReport {
    pub fn consistent(&self) -> bool {
        self.trace == self.signed_size.to_string()
    }
}

pub fn sign_trace_consistency(ft: &FtMatrix, pieces: &PieceData, uncovered: usize) -> Result<SignTraceReport> {
    let trace = ft.trace().to_rational()?;
    let covered: i64 = pieces.pieces[uncovered..]
        .iter()
        .map(|p| p.sign * p.members.len() as i64)
        .sum();
    let uncovered_count = pieces.pieces[..uncovered].iter().map(|p| p.members.len()).sum();
    Ok(SignTraceReport {
        group: ft.group.clone(),
        trace: crate::fourier::format_rational(&trace),
        signed_size: pieces.signed_size(),
        uncovered_count,
        uncovered_sum: crate::fourier::format_rational(&(trace - BigRational::from_integer(covered.into()))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonabelian::characters::symmetric;
    use crate::nonabelian::transform::nonabelian_ft;

    #[test]
    fn piece_files_parse() {
        assert_eq!(piece_partition("s3").unwrap().sizes(), vec![1, 1, 6]);
        assert_eq!(piece_partition("s4").unwrap().sizes(), vec![1, 1, 1, 5, 13]);
        assert_eq!(piece_partition("s5").unwrap().sizes(), vec![1, 1, 1, 1, 1, 3, 8, 23]);
        assert!(piece_partition("s6").is_err());
    }

    #[test]
    fn s3_bases_are_triangular() {
        let ft = nonabelian_ft(&symmetric(3).unwrap());
        let pieces = piece_partition("s3").unwrap();
        for v in [S3Variant::G2, S3Variant::E] {
            let basis = NewBasis::from_document(&s3_new_basis(v), &ft).unwrap();
            let rep = verify_triangular(&ft, &basis, &pieces).unwrap();
            assert!(rep.passed(), "{v:?}: {:?}", rep.violation);
            let signs: Vec<Option<i64>> = rep.pieces.iter().map(|p| p.observed_sign).collect();
            assert_eq!(signs, vec![Some(-1), Some(-1), Some(1)]);
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("G2".parse::<S3Variant>().unwrap(), S3Variant::G2);
        assert_eq!("e8".parse::<S3Variant>().unwrap(), S3Variant::E);
        assert!("f4".parse::<S3Variant>().is_err());
    }
}
