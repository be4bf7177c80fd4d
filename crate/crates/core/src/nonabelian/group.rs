//! Permutations of at most five points and the subgroups of `S_5` used here.

use std::fmt;

pub const MAX_POINTS: usize = 5;

/// A permutation of `{0, …, n−1}`, `n ≤ 5`; `img[k]` is the image of `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_POINTS],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_POINTS, "at most {MAX_POINTS} points");
        let mut img = [0u8; MAX_POINTS];
        for (k, slot) in img.iter_mut().enumerate() {
            *slot = k as u8;
        }
        Perm { n: n as u8, img }
    }

    /// From a list of images; `None` unless it is a bijection of `0..n`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return None;
        }
        let mut p = Perm::identity(n);
        let mut seen = [false; MAX_POINTS];
        for (k, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
            p.img[k] = v as u8;
        }
        Some(p)
    }

    /// From disjoint cycles written with points `1..=n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p = Perm::identity(n);
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                p.img[a - 1] = (b - 1) as u8;
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, k: usize) -> usize {
        self.img[k] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n, other.n);
        let mut p = Perm::identity(self.degree());
        for k in 0..self.degree() {
            p.img[k] = self.img[other.img[k] as usize];
        }
        p
    }

    pub fn inverse(&self) -> Perm {
        let mut p = Perm::identity(self.degree());
        for k in 0..self.degree() {
            p.img[self.img[k] as usize] = k as u8;
        }
        p
    }

    /// `g x g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|k| self.img[k] as usize == k)
    }

    /// Cycle lengths, descending, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycle_type_on(&(0..self.degree()).collect::<Vec<_>>())
    }

    /// Cycle type of the restriction to an invariant set of points.
    pub fn cycle_type_on(&self, points: &[usize]) -> Vec<usize> {
        let mut seen = [false; MAX_POINTS];
        let mut out = Vec::new();
        for &s in points {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = self.apply(k);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn sign(&self) -> i64 {
        let t: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        if t.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Extends to `n` points by fixing the new ones.
    pub fn extend(&self, n: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.img[..self.degree()].copy_from_slice(&self.img[..self.degree()]);
        p
    }

    /// Acts on points `offset..offset+degree` of a set of `n` points.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        let mut p = Perm::identity(n);
        for k in 0..self.degree() {
            p.img[k + offset] = self.img[k] + offset as u8;
        }
        p
    }

    /// Restriction to `offset..offset+m`, which must be invariant.
    pub fn restrict(&self, offset: usize, m: usize) -> Perm {
        let mut p = Perm::identity(m);
        for k in 0..m {
            p.img[k] = self.img[k + offset] - offset as u8;
        }
        p
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; MAX_POINTS];
        let mut wrote = false;
        for s in 0..self.degree() {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            write!(f, "(")?;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                write!(f, "{}", k + 1)?;
                k = self.apply(k);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// All `n!` permutations of `n` points, in lexicographic order of images.
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm::from_images(&images).unwrap());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).unwrap();
        images.swap(i - 1, j);
        images[i..].reverse();
    }
    out
}

/// `{g ∈ group : gx = xg}`.
pub fn centralizer(group: &[Perm], x: &Perm) -> Vec<Perm> {
    group.iter().filter(|g| g.commutes_with(x)).copied().collect()
}

/// Conjugacy classes of `group`, each as a sorted list.
pub fn conjugacy_classes(group: &[Perm]) -> Vec<Vec<Perm>> {
    let mut done = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in group {
        if done.contains(x) {
            continue;
        }
        let mut class: Vec<Perm> = group.iter().map(|g| x.conjugate_by(g)).collect();
        class.sort();
        class.dedup();
        done.extend(class.iter().copied());
        out.push(class);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_orders() {
        assert_eq!(symmetric_group(1).len(), 1);
        assert_eq!(symmetric_group(3).len(), 6);
        assert_eq!(symmetric_group(5).len(), 120);
    }

    #[test]
    fn composition_and_cycles() {
        let a = Perm::from_cycles(3, &[&[1, 2]]);
        let b = Perm::from_cycles(3, &[&[2, 3]]);
        // Apply b then a: 1→1→2, 2→3→3, 3→2→1.
        assert_eq!(a.compose(&b), Perm::from_cycles(3, &[&[1, 2, 3]]));
        assert_eq!(a.compose(&b).to_string(), "(123)");
        assert_eq!(Perm::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).cycle_type(), vec![3, 2]);
        assert_eq!(a.inverse(), a);
        assert_eq!(a.sign(), -1);
    }

    #[test]
    fn centralizer_orders_in_s5() {
        let g = symmetric_group(5);
        let orders: Vec<usize> = [
            Perm::identity(5),
            Perm::from_cycles(5, &[&[1, 2]]),
            Perm::from_cycles(5, &[&[1, 2], &[3, 4]]),
            Perm::from_cycles(5, &[&[1, 2, 3]]),
            Perm::from_cycles(5, &[&[1, 2, 3, 4]]),
            Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]),
            Perm::from_cycles(5, &[&[1, 2, 3], &[4, 5]]),
        ]
        .iter()
        .map(|x| centralizer(&g, x).len())
        .collect();
        assert_eq!(orders, vec![120, 12, 8, 6, 4, 5, 6]);
        assert_eq!(conjugacy_classes(&g).len(), 7);
    }
}
