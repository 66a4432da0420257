//! Property tests for the algebraic invariants.

use num_bigint::BigInt;
use proptest::prelude::*;

use nht_core::catalog::{Catalog, CatalogEntry, Source};
use nht_core::search::OrbitGroup;
use nht_core::{
    autocorrelation, check_solution, descramble_stream, dot_mod, forward, inverse, mul_mod, reduce,
    Modulus, NhtMatrix, ScrambleContainer, ScrambleKey,
};

const MAX_M: u64 = (1 << 63) - 1;

fn modulus() -> impl Strategy<Value = u64> {
    prop_oneof![2u64..200, 2u64..=MAX_M]
}

/// `(m, u)` with `u` reduced and not all zero.
fn coeffs(h: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..120, h).prop_flat_map(|(m, h)| {
        (Just(m), prop::collection::vec(0..m, h)).prop_map(|(m, mut u)| {
            if u.iter().all(|&c| c == 0) {
                u[0] = 1;
            }
            (m, u)
        })
    })
}

fn keys() -> Vec<ScrambleKey> {
    [
        (10usize, 7u64, vec![2, 1, 2, 5, 3]),
        (10, 41, vec![1, 20, 19, 35, 8]),
        (12, 11, vec![1, 1, 2, 4, 8, 5]),
        (12, 103, vec![78, 54, 5, 10, 20, 40]),
        (4, 2, vec![1, 0]),
        (8, 8, vec![0, 3, 0, 0]),
    ]
    .into_iter()
    .map(|(n, m, u)| ScrambleKey::new(n, Modulus::new(m).unwrap(), &u).unwrap())
    .collect()
}

fn rotate(u: &[u64], r: usize) -> Vec<u64> {
    let mut v = u.to_vec();
    v.rotate_left(r % u.len());
    v
}

proptest! {
    #[test]
    fn reduce_is_canonical(x in any::<i64>(), k in -1000i64..1000, m in modulus()) {
        let q = Modulus::new(m).unwrap();
        let r = reduce(x as i128, q);
        prop_assert!(r < m);
        prop_assert_eq!(reduce(x as i128 + k as i128 * m as i128, q), r);
        let big = (BigInt::from(x) % BigInt::from(m) + BigInt::from(m)) % BigInt::from(m);
        prop_assert_eq!(BigInt::from(r), big);
    }

    #[test]
    fn mul_and_dot_match_bigint(m in modulus(), seed in prop::collection::vec(any::<u64>(), 0..16)) {
        let q = Modulus::new(m).unwrap();
        let half = seed.len() / 2;
        let u: Vec<u64> = seed[..half].iter().map(|x| x % m).collect();
        let v: Vec<u64> = seed[half..2 * half].iter().map(|x| x % m).collect();
        let mut acc = BigInt::from(0);
        for (a, b) in u.iter().zip(&v) {
            prop_assert_eq!(mul_mod(*a, *b, q), mul_mod(*b, *a, q));
            let exact = BigInt::from(*a) * BigInt::from(*b);
            prop_assert_eq!(BigInt::from(mul_mod(*a, *b, q)), &exact % BigInt::from(m));
            acc += exact;
        }
        prop_assert_eq!(BigInt::from(dot_mod(&u, &v, q).unwrap()), acc % BigInt::from(m));
    }

    #[test]
    fn autocorrelation_mirrors((m, u) in coeffs(2..=9)) {
        let q = Modulus::new(m).unwrap();
        let h = u.len();
        for lag in 1..h {
            prop_assert_eq!(autocorrelation(&u, lag, q).unwrap(), autocorrelation(&u, h - lag, q).unwrap());
        }
    }

    #[test]
    fn verdict_invariant_under_orbit((m, u) in coeffs(2..=7), r in 0usize..7) {
        let q = Modulus::new(m).unwrap();
        let base = check_solution(&u, q).unwrap();
        prop_assert_eq!(check_solution(&rotate(&u, r), q).unwrap(), base.clone());
        let mut rev = u.clone();
        rev.reverse();
        prop_assert_eq!(check_solution(&rev, q).unwrap().pass, base.pass);
        for &t in OrbitGroup::new(q).unwrap().involutions() {
            let scaled: Vec<u64> = u.iter().map(|&c| mul_mod(c, t, q)).collect();
            prop_assert_eq!(check_solution(&scaled, q).unwrap().pass, base.pass);
        }
    }

    #[test]
    fn canonicalize_is_idempotent_orbit_minimum((m, u) in coeffs(2..=6)) {
        let group = OrbitGroup::new(Modulus::new(m).unwrap()).unwrap();
        let c = group.canonicalize(&u);
        prop_assert_eq!(group.canonicalize(&c), c.clone());
        prop_assert!(group.is_canonical(&c));
        let orbit = group.orbit(&u);
        prop_assert_eq!(orbit.first(), Some(&c));
        prop_assert!(orbit.contains(&u));
    }

    #[test]
    fn gram_symmetric_with_zero_odd_lags((m, u) in coeffs(2..=8)) {
        let q = Modulus::new(m).unwrap();
        let gram = NhtMatrix::from_coeffs(q, &u).unwrap().gram().unwrap();
        prop_assert!(gram.is_symmetric());
        let n = gram.n();
        for i in 0..n {
            for j in 0..n {
                if (i + n - j) % 2 == 1 {
                    prop_assert_eq!(gram.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn perfect_reconstruction(key_idx in 0usize..6, seed in any::<u64>()) {
        let key = &keys()[key_idx];
        let m = key.modulus().get();
        let n = key.n();
        let mut s = seed;
        let block: Vec<u64> = (0..n).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) % m }).collect();
        prop_assert_eq!(inverse(key, &forward(key, &block).unwrap()).unwrap(), block.clone());
        prop_assert_eq!(forward(key, &inverse(key, &block).unwrap()).unwrap(), block);
    }

    #[test]
    fn linearity_and_shift_covariance(key_idx in 0usize..6, a in prop::collection::vec(any::<u64>(), 12), b in prop::collection::vec(any::<u64>(), 12)) {
        let key = &keys()[key_idx];
        let q = key.modulus();
        let n = key.n();
        let f1: Vec<u64> = a[..n].iter().map(|x| x % q.get()).collect();
        let f2: Vec<u64> = b[..n].iter().map(|x| x % q.get()).collect();
        let sum: Vec<u64> = f1.iter().zip(&f2).map(|(&x, &y)| q.add(x, y)).collect();
        let g1 = forward(key, &f1).unwrap();
        let g2 = forward(key, &f2).unwrap();
        let expect: Vec<u64> = g1.iter().zip(&g2).map(|(&x, &y)| q.add(x, y)).collect();
        prop_assert_eq!(forward(key, &sum).unwrap(), expect);

        let mut shifted = f1.clone();
        shifted.rotate_right(2);
        let mut g_shifted = g1.clone();
        g_shifted.rotate_right(2);
        prop_assert_eq!(forward(key, &shifted).unwrap(), g_shifted);
    }

    #[test]
    fn container_round_trip(key_idx in 0usize..6, data in prop::collection::vec(any::<u8>(), 0..3000)) {
        let key = &keys()[key_idx];
        let bytes = nht_core::scramble_stream(key, &data).to_bytes();
        let parsed = ScrambleContainer::from_bytes(&bytes).unwrap();
        prop_assert_eq!(parsed.to_bytes(), bytes);
        prop_assert_eq!(descramble_stream(&parsed, key).unwrap(), data);
    }

    #[test]
    fn catalog_save_load_save_is_stable(rows in prop::collection::vec((1usize..5, 2u64..60, any::<u64>()), 0..40)) {
        let catalog: Catalog = rows
            .iter()
            .map(|&(h, m, seed)| {
                let mut s = seed;
                let mut u: Vec<u64> = (0..h + 1).map(|_| { s = s.rotate_left(7) ^ 0x9e37; s % m }).collect();
                if u.iter().all(|&c| c == 0) { u[0] = 1; }
                CatalogEntry::new(2 * u.len(), Modulus::new(m).unwrap(), u, Source::Searched).unwrap()
            })
            .collect();
        let mut first = Vec::new();
        catalog.save(&mut first).unwrap();
        let loaded = Catalog::load(first.as_slice()).unwrap();
        prop_assert_eq!(&loaded, &catalog);
        let mut second = Vec::new();
        loaded.save(&mut second).unwrap();
        prop_assert_eq!(first, second);
    }
}
