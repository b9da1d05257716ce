//! Order-fixed compensated summation.
//!
//! Index ranges are cut into chunks of [`CHUNK`] consecutive indices. Each
//! chunk is summed with Kahan compensation and the chunk partials are combined
//! strictly in chunk order, so the result is identical for every worker count.

use rayon::prelude::*;

pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::default();
        iter.into_iter().for_each(|x| acc.add(x));
        acc
    }
}

/// One summand: its value and its contribution to the trivial bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Tally {
    pub value: KahanSum,
    pub bound: KahanSum,
    pub n_terms: u64,
}

impl Tally {
    fn push(&mut self, term: Term) {
        self.value.add(term.value);
        self.bound.add(term.bound);
        self.n_terms += 1;
    }

    fn absorb(&mut self, chunk: &Tally) {
        self.value.add(chunk.value.value());
        self.bound.add(chunk.bound.value());
        self.n_terms += chunk.n_terms;
    }
}

/// Runs `op` on a dedicated pool of `workers` threads.
pub fn with_workers<R, F>(workers: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(op)
}

/// Sums `term(i)` over `i in 0..len`; `None` marks an index that is not a summand.
pub fn chunked_tally<F>(len: u64, workers: usize, term: F) -> Tally
where
    F: Fn(u64) -> Option<Term> + Sync,
{
    let n_chunks = len.div_ceil(CHUNK);
    let partials: Vec<Tally> = with_workers(workers, || {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let mut tally = Tally::default();
                for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                    if let Some(t) = term(i) {
                        tally.push(t);
                    }
                }
                tally
            })
            .collect()
    });
    let mut total = Tally::default();
    partials.iter().for_each(|p| total.absorb(p));
    total
}

/// Evaluates `f(i)` for `i in 0..len` on `workers` threads.
pub fn parallel_table<F>(len: u64, workers: usize, f: F) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync,
{
    with_workers(workers, || (0..len).into_par_iter().map(&f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_small_terms() {
        let mut acc = KahanSum::default();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-15);
    }

    #[test]
    fn tally_is_independent_of_workers() {
        let term = |i: u64| (i % 3 != 0).then(|| Term { value: ((i * 7919) as f64).sin(), bound: 2.0 });
        let len = 5 * CHUNK + 123;
        let one = chunked_tally(len, 1, term);
        for workers in [2, 3, 8] {
            let many = chunked_tally(len, workers, term);
            assert_eq!(one.value.value().to_bits(), many.value.value().to_bits());
            assert_eq!(one.n_terms, many.n_terms);
        }
        assert_eq!(one.n_terms, (0..len).filter(|i| i % 3 != 0).count() as u64);
        assert_eq!(one.bound.value(), 2.0 * one.n_terms as f64);
    }

    #[test]
    fn empty_range() {
        let t = chunked_tally(0, 4, |_| Some(Term { value: 1.0, bound: 1.0 }));
        assert_eq!(t.n_terms, 0);
        assert_eq!(t.value.value(), 0.0);
        assert!(parallel_table(0, 2, |i| i as f64).is_empty());
    }
}
