use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use trifourier::cyclotomic::CycNum;
use trifourier::fourier::{phi, FunctionVector};
use trifourier::gf2::{SymplecticSpace, Subspace};

/// `(u, v)` from coordinates: `(e_i, e_j) = 1` exactly when `|i − j| = 1`
/// among `e_1, …, e_D`.
fn pairing(dim: usize, u: u64, v: u64) -> bool {
    let mut s = false;
    for i in 0..dim {
        for j in 0..dim {
            if i.abs_diff(j) == 1 && (u >> i) & 1 == 1 && (v >> j) & 1 == 1 {
                s ^= true;
            }
        }
    }
    s
}

fn naive_phi(dim: usize, f: &[i64]) -> Vec<BigRational> {
    let n = 1u64 << dim;
    (0..n)
        .map(|x| {
            let s: i64 = (0..n).map(|y| if pairing(dim, x, y) { -f[y as usize] } else { f[y as usize] }).sum();
            BigRational::new(s.into(), (1i64 << (dim / 2)).into())
        })
        .collect()
}

fn function(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1 << dim)
}

fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-4i128..=4, 0i64..60, 1i128..=3), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, k, d)| &CycNum::rational(c, d) * &CycNum::root(k))
            .sum()
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm() + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_matches_naive_and_is_an_involution(dim in prop::sample::select(vec![0usize, 2, 4, 6]), seed in any::<u64>()) {
        let values: Vec<i64> = (0..1u64 << dim).map(|k| ((seed.rotate_left(k as u32 % 64) ^ k) % 11) as i64 - 5).collect();
        let space = SymplecticSpace::new(dim).unwrap();
        let f = FunctionVector::from_integers(dim, &values).unwrap();
        let g = phi(&space, &f).unwrap();
        prop_assert_eq!(g.values(), &naive_phi(dim, &values)[..]);
        prop_assert_eq!(phi(&space, &g).unwrap(), f);
    }

    #[test]
    fn phi_d4_random(values in function(4)) {
        let space = SymplecticSpace::new(4).unwrap();
        let f = FunctionVector::from_integers(4, &values).unwrap();
        prop_assert_eq!(phi(&space, &phi(&space, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn subspace_form_is_canonical(gens in prop::collection::vec(0u64..256, 0..6), mix in prop::collection::vec(any::<bool>(), 36)) {
        let a = Subspace::from_bits(8, gens.iter().copied());
        // Replace generators by random combinations that keep the span.
        let mut other: Vec<u64> = gens.clone();
        for (t, &flip) in mix.iter().enumerate() {
            let n = other.len();
            if n < 2 || !flip { continue; }
            let (i, j) = (t % n, (t / n + 1 + t % n) % n);
            if i != j { other[i] ^= other[j]; }
        }
        other.reverse();
        other.push(0);
        let b = Subspace::from_bits(8, other.iter().copied());
        prop_assert_eq!(&a, &b);
        for &g in &gens {
            prop_assert!(a.contains_bits(g));
        }
        prop_assert_eq!(a.points().len(), 1 << a.dim());
    }

    #[test]
    fn cyclotomic_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn cyclotomic_inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn cyclotomic_numeric_shadow(a in cyc(), b in cyc(), k in 0u32..5) {
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
        prop_assert!(close(a.pow(k).to_complex(), a.to_complex().powu(k)));
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(), b in cyc(), s in prop::sample::select(vec![1i64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 49, 53, 59])) {
        prop_assert_eq!((&a * &b).galois(s).unwrap(), &a.galois(s).unwrap() * &b.galois(s).unwrap());
        prop_assert_eq!((&a + &b).galois(s).unwrap(), &a.galois(s).unwrap() + &b.galois(s).unwrap());
    }

    #[test]
    fn cyclotomic_json_round_trip(a in cyc()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn roots_have_the_right_orders() {
    assert!(CycNum::theta().pow(3).is_one() && !CycNum::theta().is_one());
    assert!(CycNum::i().pow(4).is_one() && !CycNum::i().pow(2).is_one());
    assert!(CycNum::zeta().pow(5).is_one() && !CycNum::zeta().is_one());
    // 1 + θ + θ² = 0 and the sum of the primitive fifth roots is −1.
    let t = CycNum::theta();
    assert!((&(&CycNum::one() + &t) + &t.pow(2)).is_zero());
    let z = CycNum::zeta();
    let s: CycNum = (1..5).map(|k| z.pow(k)).sum();
    assert_eq!(s, CycNum::integer(-1));
}
