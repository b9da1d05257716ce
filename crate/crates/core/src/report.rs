use crate::modular::PrimePower;

/// Values below this magnitude are treated as this magnitude when measuring cancellation.
pub const VALUE_FLOOR: f64 = 1e-12;

/// Measured power saving `log(trivial / |value|) / log q`.
///
/// Returns `0` for an empty sum (`trivial_bound == 0`).
pub fn cancellation_exponent(value: f64, trivial_bound: f64, q: u64) -> f64 {
    if trivial_bound <= 0.0 {
        return 0.0;
    }
    (trivial_bound / value.abs().max(VALUE_FLOOR)).ln() / (q as f64).ln()
}

/// Inputs echoed alongside a result.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SumParams {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub a: i64,
    pub x: Option<u64>,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub u: Option<u64>,
    pub v: Option<u64>,
}

impl SumParams {
    pub fn new(pp: &PrimePower, a: i64) -> Self {
        Self { p: pp.p(), k: pp.k(), q: pp.q(), a, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumReport {
    pub value: f64,
    pub n_terms: u64,
    pub trivial_bound: f64,
    pub delta: f64,
    /// `|value|` fell under [`VALUE_FLOOR`].
    pub floored: bool,
    pub wall_ms: f64,
    pub params: SumParams,
}

impl SumReport {
    pub fn new(value: f64, n_terms: u64, trivial_bound: f64, wall_ms: f64, params: SumParams) -> Self {
        Self {
            value,
            n_terms,
            trivial_bound,
            delta: cancellation_exponent(value, trivial_bound, params.q),
            floored: value.abs() < VALUE_FLOOR,
            wall_ms,
            params,
        }
    }
}
