//! Cancellation harness: consecutive, bilinear, hyperbolic and prime-argument
//! sums of `K(·, a; q)`, plus the congruence-class majorant of bilinear sums.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::kloosterman::{explicit_unit, kloosterman_bruteforce, DEFAULT_BRUTE_FORCE_CAP};
use crate::modular::{legendre, mul_mod, reduce, PrimePower};
use crate::padic::hensel_sqrt;
use crate::report::{SumParams, SumReport};
use crate::sieve::SieveTables;
use crate::sum::{chunked_tally, parallel_table, KahanSum, Term};
use crate::weights::WeightSeq;
use crate::kloosterman::ThetaQ;
use crate::sum::Tally;

pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;

/// Where the per-term values `K(n, a; q)` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSource {
    Explicit,
    /// The defining sum; `O(q)` per term.
    BruteForce { cap: u64 },
}

/// Harness for sums of `K(n, a; q)` with fixed `q = p^k` and `a`.
#[derive(Debug, Clone)]
pub struct Harness {
    pp: PrimePower,
    a: i64,
    a_mod: u64,
    source: KernelSource,
    workers: usize,
    work_cap: u64,
}

/// `T_s(u, v)` together with whether `(r_{m,n}/p)` was constant over the class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSum {
    pub value: f64,
    pub root_symbol_constant: bool,
}

impl Harness {
    pub fn new(pp: PrimePower, a: i64) -> Result<Self> {
        if pp.k() < 2 {
            return Err(Error::BadArgument(format!("k = {} but the harness needs k >= 2", pp.k())));
        }
        if reduce(a, pp.p()) == 0 {
            return Err(Error::BadArgument(format!("gcd(a, p) > 1 for a = {a}, p = {}", pp.p())));
        }
        Ok(Self {
            pp,
            a,
            a_mod: reduce(a, pp.q()),
            source: KernelSource::Explicit,
            workers: 1,
            work_cap: DEFAULT_WORK_CAP,
        })
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_work_cap(mut self, cap: u64) -> Self {
        self.work_cap = cap;
        self
    }

    pub fn with_source(mut self, source: KernelSource) -> Result<Self> {
        if let KernelSource::BruteForce { cap } = source {
            if self.pp.q() > cap {
                return Err(Error::ModulusTooLarge { q: self.pp.q(), cap });
            }
        }
        self.source = source;
        Ok(self)
    }

    /// Brute-force kernel with the default cap.
    pub fn brute_force(self) -> Result<Self> {
        self.with_source(KernelSource::BruteForce { cap: DEFAULT_BRUTE_FORCE_CAP })
    }

    pub fn prime_power(&self) -> &PrimePower {
        &self.pp
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// `K(n, a; q)`.
    #[inline]
    pub fn kernel(&self, n: u64) -> f64 {
        let q = self.pp.q();
        match self.source {
            KernelSource::Explicit => explicit_unit(mul_mod(n % q, self.a_mod, q), &self.pp),
            KernelSource::BruteForce { cap } => {
                kloosterman_bruteforce((n % q) as i64, self.a, q, cap).expect("cap checked")
            }
        }
    }

    #[inline]
    fn coprime(&self, n: u64) -> bool {
        n % self.pp.p() != 0
    }

    fn check_work(&self, work: u64) -> Result<()> {
        if work > self.work_cap {
            return Err(Error::WorkCapExceeded { work, cap: self.work_cap });
        }
        Ok(())
    }

    fn params(&self) -> SumParams {
        SumParams::new(&self.pp, self.a)
    }

    /// `Σ_{1 <= n <= N} K(n, a; q)`.
    pub fn consecutive_sum(&self, n_max: u64) -> Result<SumReport> {
        self.check_work(n_max)?;
        let start = Instant::now();
        let tally = chunked_tally(n_max, self.workers, |i| {
            let n = i + 1;
            let bound = if self.coprime(n) { 2.0 } else { 0.0 };
            Some(Term { value: self.kernel(n), bound })
        });
        let params = SumParams { n: Some(n_max), ..self.params() };
        Ok(report(tally, start, params))
    }

    /// `S = Σ_{m <= M} Σ_{n <= N} α_m β_n K(mn, a; q)`.
    pub fn bilinear_sum(
        &self,
        alpha: &WeightSeq,
        beta: &WeightSeq,
        m_max: u64,
        n_max: u64,
    ) -> Result<SumReport> {
        let work = m_max
            .checked_mul(n_max)
            .ok_or(Error::WorkCapExceeded { work: u64::MAX, cap: self.work_cap })?;
        self.check_work(work)?;
        let start = Instant::now();
        let alpha = alpha.materialize(m_max)?;
        let beta = beta.materialize(n_max)?;
        let tally = chunked_tally(work, self.workers, |i| {
            let (m, n) = (i / n_max + 1, i % n_max + 1);
            let mn = mul_mod(m, n, self.pp.q());
            let bound = if self.coprime(m) && self.coprime(n) { 2.0 } else { 0.0 };
            let weight = alpha[m as usize - 1] * beta[n as usize - 1];
            let value = if weight == 0.0 { 0.0 } else { weight * self.kernel(mn) };
            Some(Term { value, bound })
        });
        let params = SumParams { m: Some(m_max), n: Some(n_max), ..self.params() };
        Ok(report(tally, start, params))
    }

    /// `T_s(u, v) = Σ_{n ≡ v} |Σ_{m ≡ u} α_m (r_{m,n}/p)^k Re(ϑ_q e(2 r_{m,n} / q))|`
    /// with both congruences modulo `p^s`, `m <= M`, `n <= N`, and
    /// `r_{m,n}^2 ≡ amn (mod q)`.
    ///
    /// `alpha[m - 1]` is the weight of `m`; it must cover `1..=M`.
    pub fn t_sum(
        &self,
        s: u32,
        u: u64,
        v: u64,
        alpha: &[f64],
        m_max: u64,
        n_max: u64,
    ) -> Result<ClassSum> {
        let (p, q, k) = (self.pp.p(), self.pp.q(), self.pp.k());
        if s == 0 || s > k {
            return Err(Error::BadArgument(format!("s = {s} outside [1, {k}]")));
        }
        if (alpha.len() as u64) < m_max {
            return Err(Error::BadArgument("weights shorter than M".into()));
        }
        let auv = mul_mod(mul_mod(self.a_mod % p, u % p, p), v % p, p);
        if auv == 0 || legendre(auv, p) != 1 {
            return Err(Error::BadArgument(format!(
                "class (u, v) = ({u}, {v}) does not have (auv/p) = 1"
            )));
        }
        let modulus = self.pp.power(s);
        let first = |c: u64| if c % modulus == 0 { modulus } else { c % modulus };
        let theta = ThetaQ::for_modulus(q);
        let mut common_symbol = None;
        let mut constant = true;
        let mut outer = KahanSum::default();
        for n in (first(v)..=n_max).step_by(modulus as usize) {
            let mut inner = KahanSum::default();
            for m in (first(u)..=m_max).step_by(modulus as usize) {
                let amn = mul_mod(self.a_mod, mul_mod(m, n, q), q);
                let r = hensel_sqrt(amn, &self.pp)?;
                let symbol = legendre(r, p);
                match common_symbol {
                    None => common_symbol = Some(symbol),
                    Some(c) if c != symbol => constant = false,
                    _ => {}
                }
                let sign = if k % 2 == 1 { f64::from(symbol) } else { 1.0 };
                inner.add(alpha[m as usize - 1] * sign * theta.real_part(mul_mod(2, r, q), q));
            }
            outer.add(inner.value().abs());
        }
        Ok(ClassSum { value: outer.value(), root_symbol_constant: constant })
    }

    /// `2 Σ*_u Σ*_v T_s(u, v)` over unit classes mod `p^s` with `(auv/p) = 1`;
    /// a majorant of `|S_{a,q}(A, B; M, N)|` for any `|β_n| <= 1`.
    pub fn decomposition_bound(
        &self,
        s: u32,
        alpha: &WeightSeq,
        m_max: u64,
        n_max: u64,
    ) -> Result<f64> {
        self.check_work(m_max.saturating_mul(n_max))?;
        let p = self.pp.p();
        if s == 0 || s > self.pp.k() {
            return Err(Error::BadArgument(format!("s = {s} outside [1, {}]", self.pp.k())));
        }
        let modulus = self.pp.power(s);
        let alpha = alpha.materialize(m_max)?;
        let mut total = KahanSum::default();
        for u in (1..=modulus.min(m_max)).filter(|u| u % p != 0) {
            for v in (1..=modulus.min(n_max)).filter(|v| v % p != 0) {
                let auv = mul_mod(mul_mod(self.a_mod % p, u, p), v, p);
                if legendre(auv, p) == 1 {
                    total.add(self.t_sum(s, u, v, &alpha, m_max, n_max)?.value);
                }
            }
        }
        Ok(2.0 * total.value())
    }

    /// `Σ_{m >= U, n >= V, mn <= X} α_m β_n K(mn, a; q)`, summed directly.
    pub fn hyperbolic_sum(
        &self,
        alpha: &WeightSeq,
        beta: &WeightSeq,
        u_min: u64,
        v_min: u64,
        x: u64,
    ) -> Result<SumReport> {
        if u_min == 0 || v_min == 0 {
            return Err(Error::BadArgument("U and V must be at least 1".into()));
        }
        let start = Instant::now();
        let params = SumParams { x: Some(x), u: Some(u_min), v: Some(v_min), ..self.params() };
        let m_last = x / v_min;
        // row_start[j] = number of lattice points in rows U..U+j
        let mut row_start = vec![0u64];
        for m in u_min..=m_last {
            let len = (x / m).saturating_sub(v_min - 1);
            if len == 0 {
                break;
            }
            row_start.push(row_start.last().unwrap() + len);
        }
        let total = *row_start.last().unwrap();
        self.check_work(total)?;
        let rows = row_start.len() as u64 - 1;
        if rows == 0 {
            return Ok(report(Tally::default(), start, params));
        }
        let alpha = alpha.materialize(u_min + rows - 1)?;
        let beta = beta.materialize(x / u_min)?;
        let tally = chunked_tally(total, self.workers, |i| {
            let row = row_start.partition_point(|&s| s <= i) - 1;
            let m = u_min + row as u64;
            let n = v_min + (i - row_start[row]);
            let weight = alpha[m as usize - 1] * beta[n as usize - 1];
            let bound = if self.coprime(m) && self.coprime(n) { 2.0 } else { 0.0 };
            let value = if weight == 0.0 { 0.0 } else { weight * self.kernel(mul_mod(m, n, self.pp.q())) };
            Some(Term { value, bound })
        });
        Ok(report(tally, start, params))
    }

    /// `Σ_{ℓ <= X prime} K(ℓ, a; q)`.
    pub fn prime_sum(&self, x: u64, tables: &SieveTables) -> Result<SumReport> {
        self.check_sieve(x, tables)?;
        let start = Instant::now();
        let end = tables.primes().partition_point(|&p| u64::from(p) <= x);
        let primes = &tables.primes()[..end];
        let tally = chunked_tally(primes.len() as u64, self.workers, |i| {
            let ell = u64::from(primes[i as usize]);
            let bound = if self.coprime(ell) { 2.0 } else { 0.0 };
            Some(Term { value: self.kernel(ell), bound })
        });
        let params = SumParams { x: Some(x), ..self.params() };
        Ok(report(tally, start, params))
    }

    /// `Σ_{n <= X} Λ(n) K(n, a; q)`; the trivial bound is `2 Σ Λ(n)` over `p ∤ n`.
    pub fn lambda_sum(&self, x: u64, tables: &SieveTables) -> Result<SumReport> {
        self.check_sieve(x, tables)?;
        let start = Instant::now();
        let tally = chunked_tally(x, self.workers, |i| {
            let n = i + 1;
            let weight = tables.lambda(n);
            if weight == 0.0 {
                return None;
            }
            let bound = if self.coprime(n) { 2.0 * weight } else { 0.0 };
            Some(Term { value: weight * self.kernel(n), bound })
        });
        let params = SumParams { x: Some(x), ..self.params() };
        Ok(report(tally, start, params))
    }

    /// `f(n) = K(n, a; q)` for `n in 0..=X` (with `f(0)` set to `0`).
    pub fn kernel_table(&self, x: u64) -> Result<Vec<f64>> {
        self.check_work(x)?;
        Ok(parallel_table(x + 1, self.workers, |n| if n == 0 { 0.0 } else { self.kernel(n) }))
    }

    fn check_sieve(&self, x: u64, tables: &SieveTables) -> Result<()> {
        self.check_work(x)?;
        if x > tables.limit() {
            return Err(Error::BadArgument(format!(
                "X = {x} exceeds the sieve limit {}",
                tables.limit()
            )));
        }
        Ok(())
    }
}

fn report(tally: Tally, start: Instant, params: SumParams) -> SumReport {
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    SumReport::new(tally.value.value(), tally.n_terms, tally.bound.value(), wall_ms, params)
}
