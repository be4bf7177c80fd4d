//! `M(Γ)` and the non-abelian Fourier transform on `C[M(Γ)]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

use super::characters::{normalize_label, pretty_label, GroupData};

/// A pair `(x, ρ)`: a class label and a character label of its centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MLabel {
    pub x: String,
    pub rho: String,
}

impl MLabel {
    pub fn new(x: &str, rho: &str) -> Self {
        MLabel {
            x: normalize_label(x),
            rho: normalize_label(rho),
        }
    }
}

impl fmt::Display for MLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.x.as_str() {
            "g2'" => "g′₂".to_string(),
            x => x.replace('2', "₂").replace('3', "₃").replace('4', "₄").replace('5', "₅").replace('6', "₆"),
        };
        write!(f, "({x},{})", pretty_label(&self.rho))
    }
}

/// Class order of the group data, characters in their listed order.
pub fn enumerate_m(group: &GroupData) -> Vec<MLabel> {
    group
        .classes
        .iter()
        .flat_map(|c| {
            c.characters.iter().map(move |ch| MLabel {
                x: c.label.clone(),
                rho: ch.label.clone(),
            })
        })
        .collect()
}

/// A square matrix over `Q(ζ₆₀)` indexed by `M(Γ)`. Column `j` holds the
/// image of the `j`-th pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtMatrix {
    pub group: String,
    pub labels: Vec<MLabel>,
    pub entries: Vec<Vec<CycNum>>,
}

/// `{(x,σ),(y,τ)} = (1/|Z(x)||Z(y)|) Σ σ(gyg⁻¹)·conj(τ(g⁻¹xg))`, the sum over
/// `g ∈ Γ` such that `x` commutes with `gyg⁻¹`.
pub fn nonabelian_ft(group: &GroupData) -> FtMatrix {
    let labels = enumerate_m(group);
    let n = labels.len();
    let mut entries = vec![vec![CycNum::zero(); n]; n];
    let mut offsets = Vec::new();
    let mut acc = 0;
    for c in &group.classes {
        offsets.push(acc);
        acc += c.characters.len();
    }
    for (ci, cx) in group.classes.iter().enumerate() {
        for (cj, cy) in group.classes.iter().enumerate() {
            let mut sums = vec![vec![CycNum::zero(); cy.characters.len()]; cx.characters.len()];
            for g in &group.elements {
                let y_conj = cy.rep.conjugate_by(g);
                if !cx.rep.commutes_with(&y_conj) {
                    continue;
                }
                let x_back = cx.rep.conjugate_by(&g.inverse());
                let iy = cx.position(&y_conj).expect("commutes with x");
                let ix = cy.position(&x_back).expect("commutes with y");
                for (a, sigma) in cx.characters.iter().enumerate() {
                    for (b, tau) in cy.characters.iter().enumerate() {
                        let term = &sigma.values[iy] * &tau.values[ix].conj();
                        sums[a][b] = &sums[a][b] + &term;
                    }
                }
            }
            let scale = CycNum::rational(1, (cx.centralizer.len() * cy.centralizer.len()) as i128);
            for (a, row) in sums.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    entries[offsets[ci] + a][offsets[cj] + b] = v * &scale;
                }
            }
        }
    }
    FtMatrix {
        group: group.name.clone(),
        labels,
        entries,
    }
}

impl FtMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &MLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &MLabel) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(format!("{label} in M({})", self.group)))
    }

    pub fn entry(&self, row: &MLabel, col: &MLabel) -> Result<&CycNum> {
        Ok(&self.entries[self.require(row)?][self.require(col)?])
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn square(&self) -> Vec<Vec<CycNum>> {
        mat_mul(&self.entries, &self.entries)
    }

    pub fn is_involution(&self) -> bool {
        let sq = self.square();
        sq.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    pub fn trace(&self) -> CycNum {
        (0..self.len()).map(|i| self.entries[i][i].clone()).sum()
    }

    /// Every entry is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(|v| v.conj() == *v)
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().flatten().all(CycNum::is_rational)
    }

    /// The image of `Σ a_j m_j`.
    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).filter(|(_, a)| !a.is_zero()).map(|(f, a)| f * a).sum())
            .collect()
    }

    /// `self ⊗ other`, indexed by pairs in row-major order; labels are joined
    /// with `.` as in product group data.
    pub fn kronecker(&self, other: &FtMatrix) -> FtMatrix {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| {
                other.labels.iter().map(move |b| MLabel {
                    x: format!("{}.{}", a.x, b.x),
                    rho: format!("{}.{}", a.rho, b.rho),
                })
            })
            .collect();
        let m = other.len();
        let n = self.len() * m;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.entries[i / m][j / m] * &other.entries[i % m][j % m])
                    .collect()
            })
            .collect();
        FtMatrix {
            group: format!("{}x{}", self.group, other.group),
            labels,
            entries,
        }
    }

    /// The same matrix with rows and columns listed in the order of `labels`.
    pub fn reordered(&self, labels: &[MLabel]) -> Result<FtMatrix> {
        let idx: Vec<usize> = labels.iter().map(|l| self.require(l)).collect::<Result<_>>()?;
        Ok(FtMatrix {
            group: self.group.clone(),
            labels: labels.to_vec(),
            entries: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        })
    }

    pub fn to_document(&self) -> FtDocument {
        FtDocument {
            group: self.group.clone(),
            labels: self.labels.clone(),
            entries: self.entries.clone(),
        }
    }
}

/// JSON form: entries as lists of `{num, den, exp}` terms.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FtDocument {
    pub group: String,
    pub labels: Vec<MLabel>,
    pub entries: Vec<Vec<CycNum>>,
}

pub fn mat_mul(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, brow)| !x.is_zero() && !brow[j].is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Group data by name: `s1` … `s5`, or a product such as `s3xs2`.
pub fn group_by_name(name: &str) -> Result<GroupData> {
    let lower = name.trim().to_ascii_lowercase().replace('×', "x");
    let factors: Vec<&str> = lower.split('x').collect();
    let parse = |f: &str| -> Result<GroupData> {
        let n: usize = f
            .strip_prefix('s')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::UnsupportedGroup(name.to_string()))?;
        super::characters::symmetric(n)
    };
    let mut g = parse(factors[0])?;
    for f in &factors[1..] {
        g = GroupData::product(&g, &parse(f)?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonabelian::characters::symmetric;

    fn q(n: i128, d: i128) -> CycNum {
        CycNum::rational(n, d)
    }

    #[test]
    fn s2_is_the_hadamard_matrix() {
        let ft = nonabelian_ft(&symmetric(2).unwrap());
        assert_eq!(ft.len(), 4);
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ft.entries[i][j], q(signs[i][j], 2), "({i},{j})");
            }
        }
        assert!(ft.is_involution());
    }

    #[test]
    fn kronecker_shape() {
        let ft = nonabelian_ft(&symmetric(2).unwrap());
        let k = ft.kronecker(&ft);
        assert_eq!(k.len(), 16);
        assert_eq!(k.labels[5], MLabel::new("1.1", "eps.eps"));
        assert!(k.is_involution());
    }

    #[test]
    fn group_names() {
        assert_eq!(group_by_name("S3xS2").unwrap().elements.len(), 12);
        assert!(group_by_name("s6").is_err());
        assert!(group_by_name("a5").is_err());
    }

    #[test]
    fn label_display() {
        assert_eq!(MLabel::new("g2'", "eps''").to_string(), "(g′₂,ε″)");
        assert_eq!(MLabel::new("g3", "theta^2").to_string(), "(g₃,θ²)");
    }
}
