//! Modular arithmetic on 64-bit residues.
//!
//! Products are widened to `u128`, so every modulus below `2^64` is safe;
//! [`PrimePower`] further restricts `q` to below `2^63`.

use crate::error::{Error, Result};

/// Largest admissible prime-power modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 63;

#[inline]
pub fn mul_mod(x: u64, y: u64, q: u64) -> u64 {
    ((x as u128 * y as u128) % q as u128) as u64
}

#[inline]
pub fn add_mod(x: u64, y: u64, q: u64) -> u64 {
    ((x as u128 + y as u128) % q as u128) as u64
}

#[inline]
pub fn sub_mod(x: u64, y: u64, q: u64) -> u64 {
    if x >= y {
        x - y
    } else {
        q - (y - x)
    }
}

/// Reduces a signed integer into `[0, q)`.
#[inline]
pub fn reduce(x: i64, q: u64) -> u64 {
    (x as i128).rem_euclid(q as i128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % q;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `x` modulo `q` by the extended Euclidean algorithm.
pub fn inv_mod(x: u64, q: u64) -> Result<u64> {
    // Bezout coefficients stay below q in magnitude, so i128 is only needed
    // for the sign when q >= 2^63
    let (mut old_r, mut r) = (x % q, q);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot as i128 * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { x, q });
    }
    Ok(old_s.rem_euclid(q as i128) as u64)
}

/// Legendre symbol `(n/p)` by Euler's criterion. `p` must be an odd prime.
pub fn legendre(n: u64, p: u64) -> i8 {
    match pow_mod(n, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Square root of `a` modulo the odd prime `p` (Tonelli–Shanks).
///
/// Returns the smaller of the two roots, or `0` when `p | a`.
pub fn sqrt_mod_p(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Ok(0);
    }
    if legendre(a, p) != 1 {
        return Err(Error::NotAResidue { a, p });
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        // p - 1 = odd * 2^twos
        let twos = (p - 1).trailing_zeros();
        let odd = (p - 1) >> twos;
        let z = (2..p).find(|&z| legendre(z, p) == -1).expect("odd prime has a non-residue");
        let mut m = twos;
        let mut c = pow_mod(z, odd, p);
        let mut t = pow_mod(a, odd, p);
        let mut r = pow_mod(a, (odd + 1) / 2, p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Ok(root.min(p - root))
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let twos = (n - 1).trailing_zeros();
    let odd = (n - 1) >> twos;
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A modulus `q = p^k` with `p` an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPrimePower(format!("p = {p} must be an odd prime")));
        }
        if k == 0 {
            return Err(Error::InvalidPrimePower("k must be at least 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < MODULUS_LIMIT)
            .ok_or_else(|| Error::InvalidPrimePower(format!("{p}^{k} does not fit below 2^63")))?;
        Ok(Self { p, k, q })
    }

    /// Like [`PrimePower::new`] but demands `k >= 2`, as the explicit formula does.
    pub fn new_higher(p: u64, k: u32) -> Result<Self> {
        let pp = Self::new(p, k)?;
        if k < 2 {
            return Err(Error::InvalidPrimePower(format!("k = {k}, need k >= 2")));
        }
        Ok(pp)
    }

    /// Recognises `q` as an odd prime power by trial division.
    pub fn detect(q: u64) -> Option<Self> {
        if q < 3 || q % 2 == 0 || q >= MODULUS_LIMIT {
            return None;
        }
        let mut d = 3u64;
        let p = loop {
            if d.saturating_mul(d) > q {
                break q;
            }
            if q % d == 0 {
                break d;
            }
            d += 2;
        };
        let mut rest = q;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        (rest == 1).then_some(Self { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p^e` for `e <= k`.
    pub fn power(&self, e: u32) -> u64 {
        debug_assert!(e <= self.k);
        self.p.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_mod_examples() {
        assert_eq!(mul_mod(0, 12345, 99991), 0);
        assert_eq!(mul_mod(3, 4, 7), 5);
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 0, 7), 1);
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(pow_mod(2, 10, 1024), 0);
        assert_eq!(pow_mod(5, 0, 1), 0);
    }

    #[test]
    fn inv_mod_examples() {
        assert_eq!(inv_mod(1, 9).unwrap(), 1);
        assert_eq!(inv_mod(2, 9).unwrap(), 5);
        assert_eq!(inv_mod(3, 9), Err(Error::NotInvertible { x: 3, q: 9 }));
        assert_eq!(inv_mod(0, 7), Err(Error::NotInvertible { x: 0, q: 7 }));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 11), 1);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(14, 7), 0);
    }

    #[test]
    fn sqrt_examples() {
        for p in [5, 7, 11, 13, 17, 97] {
            assert_eq!(sqrt_mod_p(4, p).unwrap(), 2);
        }
        assert_eq!(sqrt_mod_p(2, 7).unwrap(), 3);
        assert_eq!(sqrt_mod_p(3, 7), Err(Error::NotAResidue { a: 3, p: 7 }));
        assert_eq!(sqrt_mod_p(21, 7).unwrap(), 0);
    }

    #[test]
    fn sqrt_mod_p_with_high_two_adic_order() {
        // 257 - 1 = 2^8 exercises the full Tonelli-Shanks loop
        for a in 1..257u64 {
            if legendre(a, 257) == 1 {
                let r = sqrt_mod_p(a, 257).unwrap();
                assert_eq!(mul_mod(r, r, 257), a);
                assert!(r <= 128);
            }
        }
    }

    #[test]
    fn prime_power_validation() {
        assert!(PrimePower::new(4, 2).is_err());
        assert!(PrimePower::new(2, 5).is_err());
        assert!(PrimePower::new(3, 0).is_err());
        assert!(PrimePower::new(3, 40).is_err());
        assert_eq!(PrimePower::new(3, 39).unwrap().q(), 4052555153018976267);
        assert_eq!(PrimePower::new(5, 27).unwrap().q(), 7450580596923828125);
        assert!(PrimePower::new_higher(7, 1).is_err());
    }

    #[test]
    fn detect_prime_powers() {
        assert_eq!(PrimePower::detect(9), Some(PrimePower::new(3, 2).unwrap()));
        assert_eq!(PrimePower::detect(121).map(|pp| (pp.p(), pp.k())), Some((11, 2)));
        assert_eq!(PrimePower::detect(13).map(|pp| pp.k()), Some(1));
        assert_eq!(PrimePower::detect(10), None);
        assert_eq!(PrimePower::detect(45), None);
        assert_eq!(PrimePower::detect(16), None);
    }
}
