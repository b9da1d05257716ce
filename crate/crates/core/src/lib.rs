//! Exact Kloosterman sums modulo odd prime powers, and a harness for
//! measuring cancellation in sums of them.
//!
//! The fast path evaluates `K(n, a; p^k)` for `k >= 2` in `O(log q)` through a
//! Hensel-lifted square root of `na`; the defining `O(q)` sum is kept as an
//! oracle.

pub mod error;
pub mod harness;
pub mod kloosterman;
pub mod modular;
pub mod padic;
pub mod report;
pub mod sieve;
pub mod sum;
pub mod vaughan;
pub mod weights;

pub use error::{Error, Result};
pub use harness::{ClassSum, Harness, KernelSource, DEFAULT_WORK_CAP};
pub use kloosterman::{
    explicit_from_root, kloosterman, kloosterman_bruteforce, kloosterman_explicit,
    kloosterman_with_cap, ThetaQ, DEFAULT_BRUTE_FORCE_CAP,
};
pub use modular::PrimePower;
pub use padic::{build_expansion, choose_s, eval_poly, hensel_sqrt, ExpansionPlan};
pub use report::{cancellation_exponent, SumParams, SumReport};
pub use sieve::SieveTables;
pub use vaughan::{vaughan_coefficients, vaughan_reconstruct, vaughan_split_with, VaughanSplit};
pub use weights::WeightSeq;
