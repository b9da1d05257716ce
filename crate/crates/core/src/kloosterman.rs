//! Normalised Kloosterman sums `K(m, n; q) = q^{-1/2} Σ*_b e((m b + n b̄)/q)`.
//!
//! [`kloosterman_bruteforce`] evaluates the definition directly and serves as
//! the oracle. [`kloosterman_explicit`] uses the closed form available when
//! `q = p^k` with `k >= 2`: the sum vanishes unless `na` is a square mod `p`,
//! and otherwise equals `2 (r/p)^k Re(ϑ_q e(2r/q))` where `r^2 ≡ na (mod q)`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::modular::{inv_mod, legendre, mul_mod, reduce, PrimePower};
use crate::padic::hensel_sqrt;
use crate::sum::KahanSum;

/// Default largest modulus accepted by the brute-force path.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 10_000_000;

/// The fourth root of unity `ϑ_q`: `1` when `q ≡ 1 (mod 4)`, `i` when `q ≡ 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaQ {
    One,
    I,
}

impl ThetaQ {
    pub fn for_modulus(q: u64) -> Self {
        debug_assert!(q % 2 == 1);
        if q % 4 == 1 {
            ThetaQ::One
        } else {
            ThetaQ::I
        }
    }

    /// `Re(ϑ · e(phase / q))` for an integer phase already reduced mod `q`.
    #[inline]
    pub fn real_part(self, phase: u64, q: u64) -> f64 {
        let angle = TAU * phase as f64 / q as f64;
        match self {
            ThetaQ::One => angle.cos(),
            ThetaQ::I => -angle.sin(),
        }
    }
}

/// Direct evaluation over the units modulo `q`; `O(q)` work.
pub fn kloosterman_bruteforce(m: i64, n: i64, q: u64, cap: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::BadArgument(format!("modulus {q} must be at least 2")));
    }
    if q > cap {
        return Err(Error::ModulusTooLarge { q, cap });
    }
    let (m, n) = (reduce(m, q), reduce(n, q));
    let mut acc = KahanSum::default();
    let mut units = Vec::with_capacity(INVERSION_BLOCK);
    let mut prefix = Vec::with_capacity(INVERSION_BLOCK);
    let primes = distinct_prime_factors(q);
    let mut b = 1;
    while b < q {
        units.clear();
        while b < q && units.len() < INVERSION_BLOCK {
            if primes.iter().all(|&p| b % p != 0) {
                units.push(b);
            }
            b += 1;
        }
        for_each_inverse(&units, q, &mut prefix, |unit, inverse| {
            let phase = (mul_mod(m, unit, q) + mul_mod(n, inverse, q)) % q;
            acc.add((TAU * phase as f64 / q as f64).cos());
        });
    }
    Ok(acc.value() / (q as f64).sqrt())
}

const INVERSION_BLOCK: usize = 4096;

fn distinct_prime_factors(mut q: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            primes.push(d);
            while q % d == 0 {
                q /= d;
            }
        }
        d += 1;
    }
    if q > 1 {
        primes.push(q);
    }
    primes
}

/// Calls `visit(x, x^{-1})` for each unit in `units`, in order, using one
/// modular inversion for the whole block.
fn for_each_inverse(units: &[u64], q: u64, prefix: &mut Vec<u64>, mut visit: impl FnMut(u64, u64)) {
    if units.is_empty() {
        return;
    }
    prefix.clear();
    let mut running = 1 % q;
    for &u in units {
        prefix.push(running);
        running = mul_mod(running, u, q);
    }
    // running^{-1} = (u_0 ... u_{n-1})^{-1}; peel units off from the back
    let mut inverse_tail = inv_mod(running, q).expect("product of units");
    let mut inverses = vec![0; units.len()];
    for i in (0..units.len()).rev() {
        inverses[i] = mul_mod(inverse_tail, prefix[i], q);
        inverse_tail = mul_mod(inverse_tail, units[i], q);
    }
    for (&u, &inv) in units.iter().zip(&inverses) {
        visit(u, inv);
    }
}

/// Closed-form value from a chosen root `r` of `r^2 ≡ na (mod q)`.
///
/// Both roots `r` and `q - r` give the same value.
pub fn explicit_from_root(r: u64, pp: &PrimePower) -> f64 {
    let q = pp.q();
    let sign = if pp.k() % 2 == 1 { legendre(r, pp.p()) } else { 1 };
    let phase = mul_mod(2, r, q);
    2.0 * f64::from(sign) * ThetaQ::for_modulus(q).real_part(phase, q)
}

/// `K(n, a; p^k)` via the closed form. Requires `k >= 2` and `gcd(a, p) = 1`.
///
/// Returns exactly `0.0` when `p | n` or `na` is a non-residue mod `p`.
pub fn kloosterman_explicit(n: i64, a: i64, pp: &PrimePower) -> Result<f64> {
    if pp.k() < 2 {
        return Err(Error::BadArgument(format!("explicit formula needs k >= 2, got {}", pp.k())));
    }
    if reduce(a, pp.p()) == 0 {
        return Err(Error::BadArgument(format!("gcd(a, p) > 1 for a = {a}, p = {}", pp.p())));
    }
    let q = pp.q();
    Ok(explicit_unit(mul_mod(reduce(n, q), reduce(a, q), q), pp))
}

/// Closed form for the product `na` reduced mod `q`, with `a` already known to be a unit.
#[inline]
pub(crate) fn explicit_unit(na: u64, pp: &PrimePower) -> f64 {
    let p = pp.p();
    if na % p == 0 || legendre(na % p, p) != 1 {
        return 0.0;
    }
    let r = hensel_sqrt(na, pp).expect("unit quadratic residue");
    explicit_from_root(r, pp)
}

/// `K(m, n; q)`, dispatching to the closed form when `q` is an odd prime power
/// with `k >= 2` and `gcd(n, q) = 1`, and to brute force otherwise.
pub fn kloosterman(m: i64, n: i64, q: u64) -> Result<f64> {
    kloosterman_with_cap(m, n, q, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn kloosterman_with_cap(m: i64, n: i64, q: u64, cap: u64) -> Result<f64> {
    if let Some(pp) = PrimePower::detect(q) {
        if pp.k() >= 2 && reduce(n, pp.p()) != 0 {
            // K(m, n; q) = K(n, m; q), and the closed form wants the unit second
            return kloosterman_explicit(m, n, &pp);
        }
    }
    kloosterman_bruteforce(m, n, q, cap)
}
