//! Vaughan's decomposition of `Σ_{n <= X} Λ(n) f(n)`.
//!
//! [`vaughan_split_with`] computes the four component sums that bound the
//! weighted sum. [`vaughan_coefficients`] gives the exact identity
//! `Λ = a1 + a2 + a3 + a4` behind them, which is what tests can assert.

use crate::error::{Error, Result};
use crate::harness::Harness;
use crate::sieve::SieveTables;
use crate::sum::KahanSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaughanSplit {
    /// `|Σ_{n <= U} Λ(n) f(n)|`
    pub sigma1: f64,
    /// `Σ_{v <= UV} |Σ_{s <= X/v} f(sv)|`
    pub sigma2: f64,
    /// `Σ_{v <= V} max_{w >= 1} |Σ_{w <= s <= X/v} f(sv)|`
    pub sigma3: f64,
    /// `Σ_{uv <= X, u > U, v > V} Λ(u) (Σ_{d | v, d <= V} μ(d)) f(uv)`, signed.
    pub sigma4: f64,
    pub u: f64,
    pub v: f64,
    pub x: u64,
}

impl VaughanSplit {
    pub fn sigma4_abs(&self) -> f64 {
        self.sigma4.abs()
    }
}

fn check_cutoffs(x: u64, u: f64, v: f64, f: &[f64], tables: &SieveTables) -> Result<()> {
    if !(u > 1.0 && v > 1.0 && u <= x as f64 && v <= x as f64) {
        return Err(Error::BadArgument(format!("need 1 < U, V <= X, got U = {u}, V = {v}, X = {x}")));
    }
    if (f.len() as u64) <= x {
        return Err(Error::BadArgument(format!("f table has {} entries, need X + 1", f.len())));
    }
    if x > tables.limit() {
        return Err(Error::BadArgument(format!("X = {x} exceeds the sieve limit {}", tables.limit())));
    }
    Ok(())
}

/// `G(k) = Σ_{d | k, d <= V} μ(d)` for `k in 0..=X`.
fn restricted_mobius_sums(x: u64, v: f64, tables: &SieveTables) -> Vec<i64> {
    let mut g = vec![0i64; x as usize + 1];
    let v_int = (v.floor() as u64).min(x);
    for d in 1..=v_int {
        let mu = i64::from(tables.mu(d));
        if mu != 0 {
            for k in (d..=x).step_by(d as usize) {
                g[k as usize] += mu;
            }
        }
    }
    g
}

/// The four Vaughan components for `f` given as a table `f[n]`, `n in 0..=X`.
pub fn vaughan_split_with(
    f: &[f64],
    x: u64,
    u: f64,
    v: f64,
    tables: &SieveTables,
) -> Result<VaughanSplit> {
    check_cutoffs(x, u, v, f, tables)?;
    let u_int = u.floor() as u64;
    let v_int = v.floor() as u64;

    let sigma1 = (1..=u_int.min(x))
        .map(|n| tables.lambda(n) * f[n as usize])
        .collect::<KahanSum>()
        .value()
        .abs();

    let uv_int = ((u * v).floor() as u64).min(x);
    let sigma2 = (1..=uv_int)
        .map(|d| (1..=x / d).map(|s| f[(s * d) as usize]).collect::<KahanSum>().value().abs())
        .collect::<KahanSum>()
        .value();

    // max_w |P(L) - P(w-1)| over w in 1..=L equals the largest distance from
    // P(L) to any earlier prefix sum
    let sigma3 = (1..=v_int.min(x))
        .map(|d| {
            let len = x / d;
            if len == 0 {
                return 0.0;
            }
            let mut prefix = KahanSum::default();
            let (mut lo, mut hi) = (0.0f64, 0.0f64);
            for s in 1..=len {
                if s > 1 {
                    lo = lo.min(prefix.value());
                    hi = hi.max(prefix.value());
                }
                prefix.add(f[(s * d) as usize]);
            }
            let total = prefix.value();
            (total - lo).abs().max((total - hi).abs())
        })
        .collect::<KahanSum>()
        .value();

    let g = restricted_mobius_sums(x, v, tables);
    let mut sigma4 = KahanSum::default();
    for m in (u_int + 1)..=x {
        let lambda = tables.lambda(m);
        if lambda == 0.0 {
            continue;
        }
        for k in (v_int + 1)..=(x / m) {
            let gk = g[k as usize];
            if gk != 0 {
                sigma4.add(lambda * gk as f64 * f[(m * k) as usize]);
            }
        }
    }

    Ok(VaughanSplit { sigma1, sigma2, sigma3, sigma4: sigma4.value(), u, v, x })
}

/// Coefficients `a1..a4` of the exact identity `Λ(n) = a1(n) + a2(n) + a3(n) + a4(n)`:
///
/// - `a1(n) = Λ(n) [n <= U]`
/// - `a2(n) = -Σ_{mdr = n, m <= U, d <= V} Λ(m) μ(d)`
/// - `a3(n) = Σ_{dh = n, d <= V} μ(d) log h`
/// - `a4(n) = -Σ_{mk = n, m > U, k > 1} Λ(m) Σ_{d | k, d <= V} μ(d)`
///
/// Each returned vector is indexed by `n in 0..=X`, with entry `0` unused.
pub fn vaughan_coefficients(x: u64, u: f64, v: f64, tables: &SieveTables) -> Result<[Vec<f64>; 4]> {
    if x > tables.limit() {
        return Err(Error::BadArgument(format!("X = {x} exceeds the sieve limit {}", tables.limit())));
    }
    let len = x as usize + 1;
    let u_int = (u.floor().max(0.0) as u64).min(x);
    let v_int = (v.floor().max(0.0) as u64).min(x);

    let mut a1 = vec![0.0; len];
    for n in 1..=u_int {
        a1[n as usize] = tables.lambda(n);
    }

    // c(e) = Σ_{md = e, m <= U, d <= V} Λ(m) μ(d); a2 = -(c * 1)
    let mut c = vec![0.0; len];
    for m in 1..=u_int {
        let lambda = tables.lambda(m);
        if lambda == 0.0 {
            continue;
        }
        for d in 1..=v_int.min(x / m) {
            c[(m * d) as usize] += lambda * f64::from(tables.mu(d));
        }
    }
    let mut a2 = vec![0.0; len];
    for e in 1..=x {
        let ce = c[e as usize];
        if ce != 0.0 {
            for n in (e..=x).step_by(e as usize) {
                a2[n as usize] -= ce;
            }
        }
    }

    let mut a3 = vec![0.0; len];
    for d in 1..=v_int {
        let mu = f64::from(tables.mu(d));
        if mu != 0.0 {
            for h in 1..=x / d {
                a3[(d * h) as usize] += mu * (h as f64).ln();
            }
        }
    }

    let g = restricted_mobius_sums(x, v.max(0.0), tables);
    let mut a4 = vec![0.0; len];
    for m in (u_int + 1)..=x {
        let lambda = tables.lambda(m);
        if lambda == 0.0 {
            continue;
        }
        for k in 2..=x / m {
            a4[(m * k) as usize] -= lambda * g[k as usize] as f64;
        }
    }
    Ok([a1, a2, a3, a4])
}

/// `Σ_{n <= X} a_i(n) f(n)` for each of the four Vaughan coefficient sequences.
pub fn vaughan_reconstruct(
    f: &[f64],
    x: u64,
    u: f64,
    v: f64,
    tables: &SieveTables,
) -> Result<[f64; 4]> {
    check_cutoffs(x, u, v, f, tables)?;
    let coeffs = vaughan_coefficients(x, u, v, tables)?;
    Ok(coeffs.map(|a| (1..=x as usize).map(|n| a[n] * f[n]).collect::<KahanSum>().value()))
}

impl Harness {
    /// Vaughan components for `f(n) = K(n, a; q)`.
    pub fn vaughan_split(&self, x: u64, u: f64, v: f64, tables: &SieveTables) -> Result<VaughanSplit> {
        let f = self.kernel_table(x)?;
        vaughan_split_with(&f, x, u, v, tables)
    }
}
