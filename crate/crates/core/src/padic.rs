//! Square roots modulo `p^k`: Hensel lifting of a root mod `p`, and the
//! truncated binomial expansion of `(1 + γ p^s t)^{1/2}`.

use crate::error::{Error, Result};
use crate::modular::{
    add_mod, inv_mod, legendre, mul_mod, pow_mod, reduce, sqrt_mod_p, sub_mod, PrimePower,
};

/// The lift to `p^k` of the canonical square root of `a` modulo `p`.
///
/// Newton steps `r <- r - (r^2 - a)(2r)^{-1}` double the precision each round.
pub fn hensel_sqrt(a: u64, pp: &PrimePower) -> Result<u64> {
    let (p, q) = (pp.p(), pp.q());
    let a = a % q;
    if a % p == 0 {
        return Err(Error::NotUnit { a, p });
    }
    if legendre(a % p, p) != 1 {
        return Err(Error::NotAResidue { a, p });
    }
    let mut r = sqrt_mod_p(a % p, p)?;
    let mut precision = 1;
    while precision < pp.k() {
        precision = (2 * precision).min(pp.k());
        let m = pp.power(precision);
        let residual = sub_mod(mul_mod(r, r, m), a % m, m);
        let step = mul_mod(residual, inv_mod(2 * r % m, m)?, m);
        r = sub_mod(r, step, m);
    }
    Ok(r)
}

/// `g(0..=jmax)`: representatives modulo `q` of `binom(1/2, j)`.
///
/// Uses `binom(1/2, j) = (-1)^(j-1) C_(j-1) / 2^(2j-1)` with `C` the Catalan
/// numbers, so only powers of two are inverted and any `jmax` works for odd `p`.
pub fn binomial_half_coeffs(pp: &PrimePower, jmax: u64) -> Result<Vec<u64>> {
    let q = pp.q();
    let n = jmax as usize;
    // C_0..C_(n-1) modulo q via C_(i+1) = sum_j C_j C_(i-j)
    let mut catalan = Vec::with_capacity(n);
    if n > 0 {
        catalan.push(1 % q);
    }
    while catalan.len() < n {
        let i = catalan.len() - 1;
        let next = (0..=i).fold(0, |acc, j| add_mod(acc, mul_mod(catalan[j], catalan[i - j], q), q));
        catalan.push(next);
    }
    let inv_two = inv_mod(2 % q, q)?;
    let inv_four = mul_mod(inv_two, inv_two, q);
    let mut g = Vec::with_capacity(n + 1);
    g.push(1 % q);
    let mut inv_pow = inv_two;
    for (i, &c) in catalan.iter().enumerate() {
        let term = mul_mod(c, inv_pow, q);
        g.push(if i % 2 == 0 { term } else { sub_mod(0, term, q) });
        inv_pow = mul_mod(inv_pow, inv_four, q);
    }
    Ok(g)
}

/// Step parameter `s = floor(eta log N / (3000 log p))`, clamped to `[1, k]`.
///
/// Takes `ln N` so that astronomically large `N` can be expressed.
pub fn choose_s_from_ln(ln_n: f64, pp: &PrimePower, eta: f64) -> u32 {
    let quotient = eta * ln_n / (3000.0 * (pp.p() as f64).ln());
    // absorb rounding in the ratio of logarithms, e.g. 6000 ln 3 / (3000 ln 3)
    let s = (quotient * (1.0 + 1e-12)).floor();
    (s.max(1.0) as u32).min(pp.k())
}

pub fn choose_s(n: u64, pp: &PrimePower, eta: f64) -> u32 {
    choose_s_from_ln((n.max(2) as f64).ln(), pp, eta)
}

/// The sparse polynomial `f(X) = Σ_j g(j) γ^j p^{js} X^j` for `j <= floor(k/s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionPlan {
    pp: PrimePower,
    s: u32,
    gamma: u64,
    g: Vec<u64>,
    f_coeffs: Vec<u64>,
}

impl ExpansionPlan {
    pub fn new(pp: PrimePower, s: u32, gamma: u64) -> Result<Self> {
        if s == 0 || s > pp.k() {
            return Err(Error::BadArgument(format!("s = {s} outside [1, {}]", pp.k())));
        }
        let q = pp.q();
        let gamma = gamma % q;
        if gamma % pp.p() == 0 {
            return Err(Error::NotUnit { a: gamma, p: pp.p() });
        }
        let jmax = u64::from(pp.k() / s);
        let g = binomial_half_coeffs(&pp, jmax)?;
        let step = mul_mod(gamma, pow_mod(pp.p(), u64::from(s), q), q);
        let mut scale = 1 % q;
        let f_coeffs = g
            .iter()
            .map(|&gj| {
                let c = mul_mod(gj, scale, q);
                scale = mul_mod(scale, step, q);
                c
            })
            .collect();
        Ok(Self { pp, s, gamma, g, f_coeffs })
    }

    pub fn prime_power(&self) -> &PrimePower {
        &self.pp
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn g(&self) -> &[u64] {
        &self.g
    }

    pub fn f_coeffs(&self) -> &[u64] {
        &self.f_coeffs
    }

    /// Horner evaluation of `f(t)` modulo `q`.
    pub fn eval(&self, t: i64) -> u64 {
        let q = self.pp.q();
        let t = reduce(t, q);
        self.f_coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, t, q), c, q))
    }
}

pub fn build_expansion(pp: &PrimePower, s: u32, gamma: u64) -> Result<ExpansionPlan> {
    ExpansionPlan::new(*pp, s, gamma)
}

pub fn eval_poly(plan: &ExpansionPlan, t: i64) -> u64 {
    plan.eval(t)
}
