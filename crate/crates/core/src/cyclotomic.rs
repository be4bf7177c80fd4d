//! Exact arithmetic in `Q(ζ₆₀)`.
//!
//! An element is `(Σ_{j<16} a_j ζ₆₀^j) / den` with integer `a_j`, `den > 0`
//! and `gcd(a_0, …, a_15, den) = 1`, reduced modulo the 60th cyclotomic
//! polynomial `Φ₆₀(x) = x^16 + x^14 − x^10 − x^8 − x^6 + x^2 + 1`. This form
//! is unique, so equality is coefficient-wise.
//!
//! Coefficients are `i128`. Every operation is checked and panics with
//! "cyclotomic coefficient overflow" rather than wrapping; the character
//! values and matrix entries handled here stay many orders of magnitude
//! below that bound.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;

pub const ORDER: usize = 60;
pub const DEGREE: usize = 16;

/// Coefficients of `Φ₆₀` below the leading term.
const PHI60_LOW: [i128; DEGREE] = [1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0];

fn overflow() -> ! {
    panic!("cyclotomic coefficient overflow")
}

fn add_c(a: i128, b: i128) -> i128 {
    a.checked_add(b).unwrap_or_else(|| overflow())
}

fn mul_c(a: i128, b: i128) -> i128 {
    a.checked_mul(b).unwrap_or_else(|| overflow())
}

/// `x^k mod Φ₆₀` for `k < 2·60`, covering every product of reduced
/// polynomials and every Galois image `x^{aj mod 60}`.
fn power_table() -> &'static Vec<[i128; DEGREE]> {
    static TABLE: OnceLock<Vec<[i128; DEGREE]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(2 * ORDER);
        let mut cur = [0i128; DEGREE];
        cur[0] = 1;
        for _ in 0..2 * ORDER {
            table.push(cur);
            // Multiply by x and fold x^16 = −(x^14 − x^10 − x^8 − x^6 + x^2 + 1).
            let top = cur[DEGREE - 1];
            let mut next = [0i128; DEGREE];
            for k in (1..DEGREE).rev() {
                next[k] = cur[k - 1];
            }
            for k in 0..DEGREE {
                next[k] -= top * PHI60_LOW[k];
            }
            cur = next;
        }
        table
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: [i128; DEGREE],
    den: i128,
}

impl CycNum {
    fn normalized(mut num: [i128; DEGREE], mut den: i128) -> Self {
        if den == 0 {
            panic!("cyclotomic number with zero denominator");
        }
        if den < 0 {
            den = den.checked_neg().unwrap_or_else(|| overflow());
            for c in &mut num {
                *c = c.checked_neg().unwrap_or_else(|| overflow());
            }
        }
        let g = num.iter().fold(den, |g, &c| g.gcd(&c));
        if g > 1 {
            for c in &mut num {
                *c /= g;
            }
            den /= g;
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        }
        CycNum { num, den }
    }

    /// Reduces a polynomial of degree below `2·60`.
    fn from_poly(poly: &[i128], den: i128) -> Self {
        let table = power_table();
        let mut num = [0i128; DEGREE];
        for (k, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k < DEGREE {
                num[k] = add_c(num[k], c);
            } else {
                for (slot, &t) in num.iter_mut().zip(&table[k]) {
                    if t != 0 {
                        *slot = add_c(*slot, mul_c(c, t));
                    }
                }
            }
        }
        Self::normalized(num, den)
    }

    pub fn zero() -> Self {
        CycNum { num: [0; DEGREE], den: 1 }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i128) -> Self {
        Self::rational(n, 1)
    }

    pub fn rational(n: i128, d: i128) -> Self {
        let mut num = [0; DEGREE];
        num[0] = n;
        Self::normalized(num, d)
    }

    /// `ζ₆₀^k` for any integer `k`.
    pub fn root(k: i64) -> Self {
        let k = k.rem_euclid(ORDER as i64) as usize;
        Self::from_poly_monomial(k)
    }

    fn from_poly_monomial(k: usize) -> Self {
        CycNum {
            num: power_table()[k],
            den: 1,
        }
    }

    /// A primitive root of unity of order `n | 60`, namely `ζ₆₀^{60/n}`.
    pub fn root_of_unity(n: usize, k: i64) -> Result<Self> {
        if n == 0 || !ORDER.is_multiple_of(n) {
            return Err(Error::Usage(format!("order {n} does not divide {ORDER}")));
        }
        Ok(Self::root(k * (ORDER / n) as i64))
    }

    /// `θ`, of order 3.
    pub fn theta() -> Self {
        Self::root(20)
    }

    /// `i`, of order 4.
    pub fn i() -> Self {
        Self::root(15)
    }

    /// `ζ`, of order 5.
    pub fn zeta() -> Self {
        Self::root(12)
    }

    pub fn numerators(&self) -> &[i128; DEGREE] {
        &self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|&c| c == 0)
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if !self.is_rational() {
            return Err(Error::NotRational);
        }
        Ok(BigRational::new(self.num[0].into(), self.den.into()))
    }

    /// The automorphism `ζ₆₀ ↦ ζ₆₀^a` for `a` prime to 60.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let a = a.rem_euclid(ORDER as i64) as usize;
        if a.gcd(&ORDER) != 1 {
            return Err(Error::Usage(format!("{a} is not a unit modulo {ORDER}")));
        }
        let mut poly = [0i128; ORDER];
        for (j, &c) in self.num.iter().enumerate() {
            poly[(a * j) % ORDER] = c;
        }
        Ok(Self::from_poly(&poly, self.den))
    }

    /// Complex conjugation, `ζ₆₀ ↦ ζ₆₀^{−1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Column k of the multiplication matrix is the reduced x^k · self.
        let cols: Vec<CycNum> = (0..DEGREE).map(|k| Self::from_poly_monomial(k) * self.clone()).collect();
        let matrix: Vec<Vec<BigRational>> = (0..DEGREE)
            .map(|r| {
                cols.iter()
                    .map(|c| BigRational::new(c.num[r].into(), c.den.into()))
                    .collect()
            })
            .collect();
        let inv = exact::inverse(&matrix).ok_or(Error::DivisionByZero)?;
        let column: Vec<&BigRational> = inv.iter().map(|row| &row[0]).collect();
        let den = column.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let mut num = [0i128; DEGREE];
        for (slot, q) in num.iter_mut().zip(&column) {
            let v = q.numer() * (&den / q.denom());
            *slot = v.to_i128().ok_or(Error::Overflow("cyclotomic inverse"))?;
        }
        Ok(Self::normalized(num, den.to_i128().ok_or(Error::Overflow("cyclotomic inverse"))?))
    }

    /// Value under `ζ₆₀ ↦ e^{2πi/60}`.
    pub fn to_complex(&self) -> Complex64 {
        let w = std::f64::consts::TAU / ORDER as f64;
        let s = self
            .num
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (j, &c)| acc + Complex64::from_polar(c as f64, w * j as f64));
        s / self.den as f64
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * self.clone())
    }

    pub fn to_terms(&self) -> Vec<CycTerm> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(exp, &c)| {
                let g = c.gcd(&self.den);
                CycTerm {
                    num: (c / g).to_string(),
                    den: (self.den / g).to_string(),
                    exp,
                }
            })
            .collect()
    }

    pub fn from_terms(terms: &[CycTerm]) -> Result<Self> {
        let mut acc = Self::zero();
        for t in terms {
            let parse = |s: &str| s.trim().parse::<i128>().map_err(|e| Error::Json(format!("bad coefficient {s:?}: {e}")));
            let den = parse(&t.den)?;
            if den == 0 {
                return Err(Error::DivisionByZero);
            }
            acc = acc + Self::rational(parse(&t.num)?, den) * Self::root(t.exp as i64);
        }
        Ok(acc)
    }
}

/// `(num/den)·ζ₆₀^exp`; integers are kept as strings so that `i128` values
/// survive JSON round trips.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycTerm {
    pub num: String,
    pub den: String,
    pub exp: usize,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<CycTerm>::deserialize(d)?;
        CycNum::from_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let q = BigRational::new(c.into(), self.den.into());
            let coeff = crate::fourier::format_rational(&q);
            parts.push(match j {
                0 => coeff,
                _ if q.is_one() => format!("z^{j}"),
                _ if -q.clone() == BigRational::one() => format!("-z^{j}"),
                _ => format!("{coeff}*z^{j}"),
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let den = mul_c(self.den / self.den.gcd(&rhs.den), rhs.den);
        let (fa, fb) = (den / self.den, den / rhs.den);
        let mut num = [0i128; DEGREE];
        for k in 0..DEGREE {
            num[k] = add_c(mul_c(self.num[k], fa), mul_c(rhs.num[k], fb));
        }
        CycNum::normalized(num, den)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let mut num = self.num;
        for c in &mut num {
            *c = c.checked_neg().unwrap_or_else(|| overflow());
        }
        CycNum { num, den: self.den }
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self + &(-&rhs)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        let mut poly = [0i128; 2 * DEGREE - 1];
        for (a, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in rhs.num.iter().enumerate() {
                if y != 0 {
                    poly[a + b] = add_c(poly[a + b], mul_c(x, y));
                }
            }
        }
        CycNum::from_poly(&poly, mul_c(self.den, rhs.den))
    }
}

impl Div for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self * &rhs.inverse().expect("division by zero in Q(ζ₆₀)")
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::one()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::integer(n.into())
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| a + b)
    }
}
