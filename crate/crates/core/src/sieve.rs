//! Linear sieve tables over `[1, X]`: smallest prime factors, primes, the von
//! Mangoldt function and the Möbius function.

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    smallest_prime_factor: Vec<u32>,
    primes: Vec<u32>,
    lambda: Vec<f64>,
    mu: Vec<i8>,
}

impl SieveTables {
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_cap(limit, DEFAULT_SIEVE_CAP)
    }

    pub fn build_with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit > cap || limit > u64::from(u32::MAX) {
            return Err(Error::LimitTooLarge { limit, cap });
        }
        let n = limit.max(1) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut mu = vec![0i8; n + 1];
        let mut primes = Vec::new();
        mu[1] = 1;
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                let Some(multiple) = i.checked_mul(p).filter(|&m| m <= n) else {
                    break;
                };
                spf[multiple] = p as u32;
                if p == spf[i] as usize {
                    mu[multiple] = 0;
                    break;
                }
                mu[multiple] = -mu[i];
            }
        }
        let mut lambda = vec![0.0; n + 1];
        for &p in &primes {
            let log_p = f64::from(p).ln();
            let mut power = p as u64;
            while power <= n as u64 {
                lambda[power as usize] = log_p;
                power *= u64::from(p);
            }
        }
        Ok(Self { limit, smallest_prime_factor: spf, primes, lambda, mu })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Von Mangoldt `Λ(n)` for `1 <= n <= limit`.
    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        u64::from(self.smallest_prime_factor[n as usize])
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes `<= x` in increasing order; `x` must not exceed the limit.
    pub fn primes_up_to(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        assert!(x <= self.limit, "{x} exceeds sieve limit {}", self.limit);
        let end = self.primes.partition_point(|&p| u64::from(p) <= x);
        self.primes[..end].iter().map(|&p| u64::from(p))
    }

    /// Distinct prime factors of `n`, ascending.
    pub fn distinct_prime_factors(&self, mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.smallest_prime_factor(n);
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        out
    }

    /// `Σ_{d | v, d <= cutoff} μ(d)`, enumerating the squarefree divisors of `v`.
    pub fn mu_partial_divisor_sum(&self, v: u64, cutoff: u64) -> i64 {
        if cutoff == 0 {
            return 0;
        }
        let primes = self.distinct_prime_factors(v);
        let mut divisors: Vec<(u64, i64)> = vec![(1, 1)];
        for &p in &primes {
            let extended: Vec<_> = divisors
                .iter()
                .filter(|&&(d, _)| d * p <= cutoff)
                .map(|&(d, sign)| (d * p, -sign))
                .collect();
            divisors.extend(extended);
        }
        divisors.iter().map(|&(_, sign)| sign).sum()
    }
}
