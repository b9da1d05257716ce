use klab_core::modular::{inv_mod, legendre, mul_mod, pow_mod, sqrt_mod_p};
use num_bigint::BigUint;
use proptest::prelude::*;

const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 10007, 998_244_353, 4_611_686_018_427_388_039];

fn big_mul_mod(x: u64, y: u64, q: u64) -> u64 {
    let r = BigUint::from(x) * BigUint::from(y) % BigUint::from(q);
    r.try_into().unwrap()
}

#[test]
fn mul_mod_at_full_width() {
    let q = (1u64 << 63) - 25;
    let x = 1u64 << 62;
    assert_eq!(mul_mod(x, x, q), big_mul_mod(x, x, q));
    assert_eq!(mul_mod(q - 1, q - 1, q), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pow_mod_matches_bigint(base in any::<u64>(), exp in any::<u64>(), q in 1u64..(1 << 63)) {
        let expected: u64 = BigUint::from(base)
            .modpow(&BigUint::from(exp), &BigUint::from(q))
            .try_into()
            .unwrap();
        prop_assert_eq!(pow_mod(base, exp, q), expected);
    }

    #[test]
    fn mul_mod_matches_bigint(x in any::<u64>(), y in any::<u64>(), q in 1u64..=u64::MAX) {
        prop_assert_eq!(mul_mod(x % q, y % q, q), big_mul_mod(x, y, q));
    }

    #[test]
    fn inverse_roundtrip(x in 1u64..(1 << 62), idx in 0usize..PRIMES.len(), k in 1u32..4) {
        let p = PRIMES[idx];
        let q = p.checked_pow(k).filter(|&q| q < 1 << 63).unwrap_or(p);
        let x = x % q;
        prop_assume!(x % p != 0);
        let y = inv_mod(x, q).unwrap();
        prop_assert!(y < q);
        prop_assert_eq!(mul_mod(x, y, q), 1);
    }

    #[test]
    fn legendre_is_multiplicative(a in any::<u64>(), b in any::<u64>(), idx in 0usize..PRIMES.len()) {
        let p = PRIMES[idx];
        let ab = mul_mod(a % p, b % p, p);
        prop_assert_eq!(legendre(ab, p), legendre(a % p, p) * legendre(b % p, p));
    }

    #[test]
    fn sqrt_is_canonical_root(a in any::<u64>(), idx in 0usize..PRIMES.len()) {
        let p = PRIMES[idx];
        let a = a % p;
        match legendre(a, p) {
            -1 => prop_assert!(sqrt_mod_p(a, p).is_err()),
            0 => prop_assert_eq!(sqrt_mod_p(a, p).unwrap(), 0),
            _ => {
                let r = sqrt_mod_p(a, p).unwrap();
                prop_assert_eq!(mul_mod(r, r, p), a);
                prop_assert!(r <= (p - 1) / 2);
            }
        }
    }
}

#[test]
fn legendre_matches_brute_force_squares() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        for n in 0..p {
            let expected = if n == 0 { 0 } else if squares.contains(&n) { 1 } else { -1 };
            assert_eq!(legendre(n, p), expected, "n = {n}, p = {p}");
        }
    }
}
