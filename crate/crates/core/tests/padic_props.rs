use klab_core::modular::{inv_mod, mul_mod, reduce, PrimePower};
use klab_core::padic::{binomial_half_coeffs, build_expansion, eval_poly, hensel_sqrt};
use proptest::prelude::*;

fn pp(p: u64, k: u32) -> PrimePower {
    PrimePower::new(p, k).unwrap()
}

/// Maps an arbitrary integer onto a unit modulo `q = p^k`.
fn unit(x: u64, p: u64, q: u64) -> u64 {
    let x = x % q;
    if x % p == 0 {
        (x + 1) % q
    } else {
        x
    }
}

/// `[1, g1, g2, ...]` squared as a truncated power series must be `1 + x`.
fn series_squares_to_one_plus_x(g: &[u64], q: u64) -> bool {
    (0..g.len()).all(|deg| {
        let coeff = (0..=deg).fold(0u64, |acc, i| (acc + mul_mod(g[i], g[deg - i], q)) % q);
        let expected = match deg {
            0 | 1 => 1 % q,
            _ => 0,
        };
        coeff == expected
    })
}

#[test]
fn coefficients_square_to_one_plus_x() {
    for (p, k) in [(3, 2), (3, 20), (5, 13), (7, 10), (11, 8), (13, 5)] {
        let m = pp(p, k);
        let g = binomial_half_coeffs(&m, u64::from(k)).unwrap();
        assert!(series_squares_to_one_plus_x(&g, m.q()), "p = {p}, k = {k}");
    }
}

#[test]
fn coefficients_match_ratio_recurrence_below_p() {
    // g(j) = g(j-1) (1/2 - (j-1)) / j whenever j is invertible
    for (p, k) in [(7, 6), (11, 5), (13, 9)] {
        let m = pp(p, k);
        let q = m.q();
        let g = binomial_half_coeffs(&m, p - 1).unwrap();
        let half = inv_mod(2, q).unwrap();
        let mut expected = 1u64;
        for j in 1..p {
            let factor = (half + q - (j - 1) % q) % q;
            expected = mul_mod(mul_mod(expected, factor, q), inv_mod(j, q).unwrap(), q);
            assert_eq!(g[j as usize], expected, "p = {p}, j = {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hensel_root_squares_back(x in 1u64..u64::MAX, pi in 0usize..4, k in 2u32..=12) {
        let p = [3u64, 5, 7, 11][pi];
        let m = pp(p, k);
        let x = unit(x, p, m.q());
        let a = mul_mod(x, x, m.q());
        let r = hensel_sqrt(a, &m).unwrap();
        prop_assert_eq!(mul_mod(r, r, m.q()), a);
    }

    #[test]
    fn truncated_root_law(pi in 0usize..4, k in 1u32..=20, s_seed in any::<u32>(),
                          gamma in 1u64..u64::MAX, t in any::<u64>()) {
        let p = [3u64, 5, 7, 11][pi];
        let k = if p == 11 { k.min(18) } else { k };
        let m = pp(p, k);
        let s = 1 + s_seed % k;
        let gamma = unit(gamma, p, m.q());
        let plan = build_expansion(&m, s, gamma).unwrap();
        let t = (t % m.q()) as i64;
        let value = eval_poly(&plan, t);
        let q = m.q();
        let rhs = (1 + mul_mod(mul_mod(gamma % q, m.power(s) % q, q), t as u64, q)) % q;
        prop_assert_eq!(mul_mod(value, value, q), rhs);
    }

    #[test]
    fn lifted_root_times_expansion(pi in 0usize..4, k in 2u32..=12, s_seed in any::<u32>(),
                                   base in 1u64..u64::MAX, v in 1u64..u64::MAX, t in any::<u64>()) {
        // A = ω^2 (1 + v̄ p^s t) has square root ω f(t) when f is built with γ = v̄
        let p = [3u64, 5, 7, 11][pi];
        let m = pp(p, k);
        let q = m.q();
        let s = 1 + s_seed % k;
        let base = unit(base, p, q);
        let omega_sq = mul_mod(base, base, q);
        let v = unit(v, p, q);
        let omega = hensel_sqrt(omega_sq, &m).unwrap();
        let v_bar = inv_mod(v % q, q).unwrap();
        let t = t % q;
        let big_a = mul_mod(omega_sq, (1 + mul_mod(mul_mod(v_bar, m.power(s) % q, q), t, q)) % q, q);
        let plan = build_expansion(&m, s, v_bar).unwrap();
        let root = mul_mod(omega, eval_poly(&plan, t as i64), q);
        prop_assert_eq!(mul_mod(root, root, q), big_a);
        // and it is one of the two lifts of the canonical root
        let lifted = hensel_sqrt(big_a, &m).unwrap();
        prop_assert!(root == lifted || root == reduce(-(lifted as i64), q));
    }
}
