//! Conjugacy-class representatives of `S_n` (`n ≤ 5`), their centralizers,
//! and the labeled irreducible characters of each centralizer.
//!
//! Every centralizer that occurs is a direct product of blocks: the cyclic
//! group generated by one cycle of the representative, the symmetric group
//! on its fixed points, or (for `g′₂ = (12)(34)`) the dihedral group of
//! order 8 permuting the two transpositions. A character is a product of one
//! character per block.
//!
//! Label conventions (ASCII forms in parentheses):
//! - `S_4`: `λ¹ = (3,1)`, `λ² = (2,1,1)`, `λ³` = sign, `σ = (2,2)`.
//! - `S_5`: `λ¹ = (4,1)`, `λ² = (3,1,1)`, `λ³ = (2,1,1,1)`, `λ⁴` = sign,
//!   `ν = (3,2)`, `ν′ = (2,2,1)`.
//! - `S_3`: `r` is the 2-dimensional character, `ε` the sign.
//! - `Z(g₂) = Z₂ × Z₂` in `S_4`: `ε` is −1 on both `(12)` and `(34)`, `ε′` is −1
//!   on `(34)` only, `ε″` on `(12)` only.
//! - `Z(g′₂) = D₈`: `ε` is the sign (kernel the normal Klein group), `ε′` has
//!   kernel `⟨(12),(34)⟩`, `ε″` has kernel the cyclic group of order 4.
//! - `Z(g₂) = Z₂ × S₃` in `S_5`: a leading `−` means −1 on `(12)`; `r`, `ε` are
//!   characters of the `S₃` factor.
//! - `Z(g₃) = Z₃ × Z₂` in `S_5`: `ε` is −1 on `(45)`. `Z(g₆) = Z₃ × Z₂` with
//!   `g₆ = (123)(45)`: `θ` takes `(123)` to `θ`, `−` means −1 on `(45)`.
//! - `θ`, `i`, `ζ` are `ζ₆₀^20`, `ζ₆₀^15`, `ζ₆₀^12`; a cyclic label sends the
//!   cycle of the representative to that root.

use std::collections::HashMap;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

use super::group::{centralizer, conjugacy_classes, symmetric_group, Perm};

/// An irreducible character of a centralizer, by its values on the
/// centralizer's elements in their stored order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterDatum {
    pub label: String,
    pub values: Vec<CycNum>,
}

/// A class representative with its centralizer and characters.
#[derive(Clone, Debug)]
pub struct ClassDatum {
    pub label: String,
    pub rep: Perm,
    pub centralizer: Vec<Perm>,
    index: HashMap<Perm, usize>,
    pub characters: Vec<CharacterDatum>,
}

impl ClassDatum {
    fn new(label: String, rep: Perm, centralizer: Vec<Perm>, characters: Vec<CharacterDatum>) -> Self {
        let index = centralizer.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        ClassDatum {
            label,
            rep,
            centralizer,
            index,
            characters,
        }
    }

    pub fn position(&self, z: &Perm) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn character(&self, label: &str) -> Option<&CharacterDatum> {
        self.characters.iter().find(|c| c.label == label)
    }

    /// Row orthogonality, `Σ χ(1)² = |Z|`, constancy on classes of `Z`, and
    /// as many characters as classes. Returns a description of the first
    /// failure.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Verification(format!("centralizer of {}: {what}", self.label)));
        let order = self.centralizer.len() as i128;
        let classes = conjugacy_classes(&self.centralizer);
        if classes.len() != self.characters.len() {
            return fail(format!("{} characters for {} classes", self.characters.len(), classes.len()));
        }
        let identity = self.position(&Perm::identity(self.rep.degree())).expect("identity is central");
        let mut degrees = CycNum::zero();
        for a in &self.characters {
            let d = &a.values[identity];
            degrees = degrees + d * d;
            for class in &classes {
                let v = &a.values[self.position(&class[0]).unwrap()];
                if class.iter().any(|z| &a.values[self.position(z).unwrap()] != v) {
                    return fail(format!("{} is not a class function", a.label));
                }
            }
            for b in &self.characters {
                let ip: CycNum = a.values.iter().zip(&b.values).map(|(x, y)| x * &y.conj()).sum();
                let expected = if a.label == b.label { order } else { 0 };
                if ip != CycNum::integer(expected) {
                    return fail(format!("<{}, {}> = {ip}/{order}", a.label, b.label));
                }
            }
        }
        if degrees != CycNum::integer(order) {
            return fail(format!("sum of squared degrees is {degrees}, not {order}"));
        }
        Ok(())
    }
}

/// A group with the data needed for its non-abelian Fourier transform.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: String,
    pub elements: Vec<Perm>,
    pub classes: Vec<ClassDatum>,
}

impl GroupData {
    pub fn class(&self, label: &str) -> Option<&ClassDatum> {
        self.classes.iter().find(|c| c.label == label)
    }

    pub fn validate(&self) -> Result<()> {
        let found = conjugacy_classes(&self.elements).len();
        if found != self.classes.len() {
            return Err(Error::Verification(format!(
                "{} has {found} classes, data lists {}",
                self.name,
                self.classes.len()
            )));
        }
        self.classes.iter().try_for_each(ClassDatum::validate)
    }

    /// `G × H`, acting on the disjoint union of the two point sets.
    pub fn product(a: &GroupData, b: &GroupData) -> Result<GroupData> {
        let na = a.elements[0].degree();
        let nb = b.elements[0].degree();
        let n = na + nb;
        if n > super::group::MAX_POINTS {
            return Err(Error::UnsupportedGroup(format!("{} x {}", a.name, b.name)));
        }
        let embed = |g: &Perm, h: &Perm| g.extend(n).compose(&h.shifted(na, n));
        let elements = a
            .elements
            .iter()
            .flat_map(|g| b.elements.iter().map(move |h| embed(g, h)))
            .collect();
        let mut classes = Vec::new();
        for ca in &a.classes {
            for cb in &b.classes {
                let cent: Vec<Perm> = ca
                    .centralizer
                    .iter()
                    .flat_map(|g| cb.centralizer.iter().map(move |h| embed(g, h)))
                    .collect();
                let mut chars = Vec::new();
                for xa in &ca.characters {
                    for xb in &cb.characters {
                        let values = xa
                            .values
                            .iter()
                            .flat_map(|u| xb.values.iter().map(move |v| u * v))
                            .collect();
                        chars.push(CharacterDatum {
                            label: format!("{}.{}", xa.label, xb.label),
                            values,
                        });
                    }
                }
                classes.push(ClassDatum::new(
                    format!("{}.{}", ca.label, cb.label),
                    embed(&ca.rep, &cb.rep),
                    cent,
                    chars,
                ));
            }
        }
        Ok(GroupData {
            name: format!("{}x{}", a.name, b.name),
            elements,
            classes,
        })
    }
}

/// `χ(cycle type)` for the irreducible characters of `S_m`, `m ≤ 5`.
fn symmetric_character(m: usize, label: &str, cycle_type: &[usize]) -> Option<i64> {
    // Columns follow the order of `classes`.
    let (classes, rows): (&[&[usize]], &[(&str, &[i64])]) = match m {
        0 | 1 => (&[&[1][..]], &[("1", &[1])]),
        2 => (&[&[1, 1], &[2]], &[("1", &[1, 1]), ("eps", &[1, -1])]),
        3 => (
            &[&[1, 1, 1], &[2, 1], &[3]],
            &[("1", &[1, 1, 1]), ("r", &[2, 0, -1]), ("eps", &[1, -1, 1])],
        ),
        4 => (
            &[&[1, 1, 1, 1], &[2, 1, 1], &[2, 2], &[3, 1], &[4]],
            &[
                ("1", &[1, 1, 1, 1, 1]),
                ("lambda^1", &[3, 1, -1, 0, -1]),
                ("lambda^2", &[3, -1, -1, 0, 1]),
                ("lambda^3", &[1, -1, 1, 1, -1]),
                ("sigma", &[2, 0, 2, -1, 0]),
            ],
        ),
        5 => (
            &[&[1, 1, 1, 1, 1], &[2, 1, 1, 1], &[2, 2, 1], &[3, 1, 1], &[3, 2], &[4, 1], &[5]],
            &[
                ("1", &[1, 1, 1, 1, 1, 1, 1]),
                ("lambda^1", &[4, 2, 0, 1, -1, 0, -1]),
                ("lambda^2", &[6, 0, -2, 0, 0, 0, 1]),
                ("lambda^3", &[4, -2, 0, 1, 1, 0, -1]),
                ("lambda^4", &[1, -1, 1, 1, -1, -1, 1]),
                ("nu", &[5, 1, 1, -1, 1, -1, 0]),
                ("nu'", &[5, -1, 1, -1, -1, 1, 0]),
            ],
        ),
        _ => return None,
    };
    let col = if m == 0 { 0 } else { classes.iter().position(|c| *c == cycle_type)? };
    let row = rows.iter().find(|(l, _)| *l == label)?;
    Some(row.1[col])
}

#[derive(Clone, Debug)]
enum Block {
    /// Points of one cycle of the representative, in cycle order.
    Cycle(Vec<usize>),
    /// Fixed points of the representative.
    Fixed(Vec<usize>),
    /// Points `a, b, c, d` of `(ab)(cd)`.
    Pair([usize; 4]),
}

#[derive(Clone, Copy, Debug)]
enum BlockChar {
    /// The cycle goes to `ω^k` with `ω` primitive of the cycle's length.
    Cyclic(i64),
    Sym(&'static str),
    Pair(&'static str),
}

fn block_value(block: &Block, ch: BlockChar, z: &Perm) -> CycNum {
    match (block, ch) {
        (Block::Cycle(points), BlockChar::Cyclic(k)) => {
            let target = z.apply(points[0]);
            let shift = points.iter().position(|&p| p == target).expect("centralizer preserves cycles");
            CycNum::root_of_unity(points.len(), k * shift as i64).expect("cycle length divides 60")
        }
        (Block::Fixed(points), BlockChar::Sym(label)) => {
            let v = symmetric_character(points.len(), label, &z.cycle_type_on(points)).expect("known character");
            CycNum::integer(v.into())
        }
        (Block::Pair([a, b, c, _]), BlockChar::Pair(label)) => {
            let keeps_pairs = z.apply(*a) == *a || z.apply(*a) == *b;
            let class = if keeps_pairs {
                match (z.apply(*a) != *a, z.apply(*c) != *c) {
                    (false, false) => "1",
                    (true, true) => "abcd",
                    _ => "ab",
                }
            } else if z.compose(z).is_identity() {
                "swap"
            } else {
                "4cycle"
            };
            let v = match (label, class) {
                (_, "1") => match label {
                    "r" => 2,
                    _ => 1,
                },
                ("1", _) => 1,
                ("r", "abcd") => -2,
                ("r", _) => 0,
                ("eps", "ab" | "4cycle") => -1,
                ("eps", _) => 1,
                ("eps'", "swap" | "4cycle") => -1,
                ("eps'", _) => 1,
                ("eps''", "ab" | "swap") => -1,
                ("eps''", _) => 1,
                _ => unreachable!("unknown dihedral character {label}"),
            };
            CycNum::integer(v)
        }
        _ => unreachable!("character does not match block"),
    }
}

type ClassSpec = (&'static str, &'static [&'static [usize]], Vec<(&'static str, Vec<BlockChar>)>);

fn class_specs(n: usize) -> Vec<ClassSpec> {
    use BlockChar::{Cyclic as C, Pair as P, Sym as S};
    let sym_labels: &[&'static str] = match n {
        1 => &["1"],
        2 => &["1", "eps"],
        3 => &["1", "r", "eps"],
        4 => &["1", "lambda^1", "lambda^2", "lambda^3", "sigma"],
        _ => &["1", "lambda^1", "lambda^2", "lambda^3", "lambda^4", "nu", "nu'"],
    };
    let mut specs: Vec<ClassSpec> = vec![("1", &[], sym_labels.iter().map(|&l| (l, vec![S(l)])).collect())];
    if n >= 2 {
        let chars = match n {
            2 | 3 => vec![("1", vec![C(0), S("1")]), ("eps", vec![C(1), S("1")])],
            4 => vec![
                ("1", vec![C(0), S("1")]),
                ("eps", vec![C(1), S("eps")]),
                ("eps'", vec![C(0), S("eps")]),
                ("eps''", vec![C(1), S("1")]),
            ],
            _ => vec![
                ("1", vec![C(0), S("1")]),
                ("r", vec![C(0), S("r")]),
                ("eps", vec![C(0), S("eps")]),
                ("-1", vec![C(1), S("1")]),
                ("-r", vec![C(1), S("r")]),
                ("-eps", vec![C(1), S("eps")]),
            ],
        };
        specs.push(("g2", &[&[1, 2]], chars));
    }
    if n >= 4 {
        let chars = ["1", "r", "eps", "eps'", "eps''"]
            .into_iter()
            .map(|l| (l, vec![P(l), S("1")]))
            .collect();
        specs.push(("g2'", &[&[1, 2], &[3, 4]], chars));
    }
    if n >= 3 {
        let mut chars = vec![
            ("1", vec![C(0), S("1")]),
            ("theta", vec![C(1), S("1")]),
            ("theta^2", vec![C(2), S("1")]),
        ];
        if n == 5 {
            chars.extend([
                ("eps", vec![C(0), S("eps")]),
                ("eps*theta", vec![C(1), S("eps")]),
                ("eps*theta^2", vec![C(2), S("eps")]),
            ]);
        }
        specs.push(("g3", &[&[1, 2, 3]], chars));
    }
    if n >= 4 {
        let chars = [("1", 0), ("i", 1), ("-1", 2), ("-i", 3)]
            .into_iter()
            .map(|(l, k)| (l, vec![C(k), S("1")]))
            .collect();
        specs.push(("g4", &[&[1, 2, 3, 4]], chars));
    }
    if n == 5 {
        let chars = [("1", 0), ("zeta", 1), ("zeta^2", 2), ("zeta^3", 3), ("zeta^4", 4)]
            .into_iter()
            .map(|(l, k)| (l, vec![C(k), S("1")]))
            .collect();
        specs.push(("g5", &[&[1, 2, 3, 4, 5]], chars));
        let chars = [
            ("1", 0, 0),
            ("-1", 0, 1),
            ("theta", 1, 0),
            ("theta^2", 2, 0),
            ("-theta", 1, 1),
            ("-theta^2", 2, 1),
        ]
        .into_iter()
        .map(|(l, a, b)| (l, vec![C(a), C(b)]))
        .collect();
        specs.push(("g6", &[&[1, 2, 3], &[4, 5]], chars));
    }
    specs
}

fn blocks_for(n: usize, cycles: &[&[usize]]) -> Vec<Block> {
    let mut blocks = Vec::new();
    let moved: Vec<usize> = cycles.iter().flat_map(|c| c.iter().map(|p| p - 1)).collect();
    if cycles.len() == 2 && cycles[0].len() == 2 && cycles[1].len() == 2 {
        let (a, b, c, d) = (cycles[0][0] - 1, cycles[0][1] - 1, cycles[1][0] - 1, cycles[1][1] - 1);
        blocks.push(Block::Pair([a, b, c, d]));
    } else {
        for c in cycles {
            blocks.push(Block::Cycle(c.iter().map(|p| p - 1).collect()));
        }
    }
    let fixed: Vec<usize> = (0..n).filter(|p| !moved.contains(p)).collect();
    blocks.push(Block::Fixed(fixed));
    blocks
}

/// `S_n` for `n ∈ [1, 5]`, with classes in the order
/// `1, g₂, g′₂, g₃, g₄, g₅, g₆` (those that exist).
pub fn symmetric(n: usize) -> Result<GroupData> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedGroup(format!("S{n}")));
    }
    let elements = symmetric_group(n);
    let mut classes = Vec::new();
    for (label, cycles, chars) in class_specs(n) {
        let rep = Perm::from_cycles(n, cycles);
        let cent = centralizer(&elements, &rep);
        let blocks = blocks_for(n, cycles);
        let characters = chars
            .into_iter()
            .map(|(l, parts)| {
                let values = cent
                    .iter()
                    .map(|z| {
                        blocks
                            .iter()
                            .zip(&parts)
                            .fold(CycNum::one(), |acc, (b, &c)| acc * block_value(b, c, z))
                    })
                    .collect();
                CharacterDatum {
                    label: l.to_string(),
                    values,
                }
            })
            .collect();
        classes.push(ClassDatum::new(label.to_string(), rep, cent, characters));
    }
    Ok(GroupData {
        name: format!("s{n}"),
        elements,
        classes,
    })
}

/// Canonical ASCII form of a class or character label; accepts the Unicode
/// spellings (`ε′`, `θ²`, `λ¹`, `g′₂`, `−r`, `εθ`, …).
pub fn normalize_label(s: &str) -> String {
    let mut out = String::new();
    for ch in s.trim().chars() {
        match ch {
            '−' | '–' => out.push('-'),
            '′' | '’' => out.push('\''),
            '″' => out.push_str("''"),
            'ε' => out.push_str("eps"),
            'θ' => out.push_str("theta"),
            'ζ' => out.push_str("zeta"),
            'λ' => out.push_str("lambda"),
            'ν' => out.push_str("nu"),
            'σ' => out.push_str("sigma"),
            '¹' => out.push_str("^1"),
            '²' => out.push_str("^2"),
            '³' => out.push_str("^3"),
            '⁴' => out.push_str("^4"),
            '₂' => out.push('2'),
            '₃' => out.push('3'),
            '₄' => out.push('4'),
            '₅' => out.push('5'),
            '₆' => out.push('6'),
            '_' | ' ' => {}
            c => out.push(c),
        }
    }
    let mut out = out.replace("epstheta", "eps*theta");
    for k in 1..=4 {
        out = out.replace(&format!("lambda{k}"), &format!("lambda^{k}"));
    }
    // g'2 → g2'
    if let Some(rest) = out.strip_prefix("g'") {
        out = format!("g{rest}'");
    }
    out
}

/// Unicode rendering of an ASCII label.
pub fn pretty_label(s: &str) -> String {
    let mut out = s
        .replace("eps*theta", "εθ")
        .replace("eps", "ε")
        .replace("theta", "θ")
        .replace("zeta", "ζ")
        .replace("lambda", "λ")
        .replace("nu", "ν")
        .replace("sigma", "σ")
        .replace("''", "″")
        .replace('\'', "′")
        .replace("^1", "¹")
        .replace("^2", "²")
        .replace("^3", "³")
        .replace("^4", "⁴");
    if out.starts_with('-') {
        out = format!("−{}", &out[1..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_are_orthogonal() {
        for n in 1..=5 {
            symmetric(n).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn m_sizes() {
        let sizes: Vec<usize> = (2..=5)
            .map(|n| symmetric(n).unwrap().classes.iter().map(|c| c.characters.len()).sum())
            .collect();
        assert_eq!(sizes, vec![4, 8, 21, 39]);
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(normalize_label("ε″"), "eps''");
        assert_eq!(normalize_label("εθ²"), "eps*theta^2");
        assert_eq!(normalize_label("λ¹"), "lambda^1");
        assert_eq!(normalize_label("g′₂"), "g2'");
        assert_eq!(normalize_label("g_2'"), "g2'");
        assert_eq!(normalize_label("−θ²"), "-theta^2");
        for l in ["eps''", "eps*theta^2", "lambda^3", "-r", "nu'", "zeta^4", "g2'"] {
            assert_eq!(normalize_label(&pretty_label(l)), l);
        }
    }

    #[test]
    fn sign_labels_agree_with_sign() {
        let s4 = symmetric(4).unwrap();
        let c = s4.class("g2").unwrap();
        let eps = c.character("eps").unwrap();
        for (z, v) in c.centralizer.iter().zip(&eps.values) {
            assert_eq!(*v, CycNum::integer(z.sign().into()));
        }
        let d8 = s4.class("g2'").unwrap();
        let eps = d8.character("eps").unwrap();
        for (z, v) in d8.centralizer.iter().zip(&eps.values) {
            assert_eq!(*v, CycNum::integer(z.sign().into()));
        }
    }

    #[test]
    fn products_validate() {
        let s3 = symmetric(3).unwrap();
        let s2 = symmetric(2).unwrap();
        let p = GroupData::product(&s3, &s2).unwrap();
        assert_eq!(p.elements.len(), 12);
        p.validate().unwrap();
        assert!(GroupData::product(&s3, &s3).is_err());
    }
}
