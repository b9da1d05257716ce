use klab_core::sieve::SieveTables;

fn trial_division_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

#[test]
fn primes_match_trial_division() {
    let tables = SieveTables::build(5000).unwrap();
    assert_eq!(tables.primes_up_to(5000).collect::<Vec<_>>(), trial_division_primes(5000));
}

#[test]
fn prime_count_to_one_million() {
    let tables = SieveTables::build(1_000_000).unwrap();
    assert_eq!(tables.primes_up_to(1_000_000).count(), 78498);
}

#[test]
fn mobius_sums_over_divisors() {
    let tables = SieveTables::build(10_000).unwrap();
    let mut sums = vec![0i64; 10_001];
    for d in 1..=10_000u64 {
        for n in (d..=10_000).step_by(d as usize) {
            sums[n as usize] += i64::from(tables.mu(d));
        }
    }
    assert_eq!(sums[1], 1);
    assert!(sums[2..].iter().all(|&s| s == 0));
}

#[test]
fn lambda_is_mobius_convolution_of_log() {
    let tables = SieveTables::build(10_000).unwrap();
    let mut conv = vec![0.0f64; 10_001];
    for d in 1..=10_000u64 {
        let mu = f64::from(tables.mu(d));
        if mu != 0.0 {
            for h in 1..=10_000 / d {
                conv[(d * h) as usize] += mu * (h as f64).ln();
            }
        }
    }
    for n in 1..=10_000u64 {
        assert!((conv[n as usize] - tables.lambda(n)).abs() < 1e-9, "n = {n}");
    }
}

#[test]
fn chebyshev_psi_is_log_lcm() {
    let tables = SieveTables::build(10_000).unwrap();
    let psi: f64 = (1..=10_000).map(|n| tables.lambda(n)).sum();
    // log lcm(1..X) = Σ_ℓ floor(log_ℓ X) log ℓ, via repeated multiplication
    let lcm_log: f64 = trial_division_primes(10_000)
        .into_iter()
        .map(|p| {
            let mut e = 0;
            let mut power = p;
            while power <= 10_000 {
                e += 1;
                power *= p;
            }
            e as f64 * (p as f64).ln()
        })
        .sum();
    assert!((psi - lcm_log).abs() < 1e-6);
}

#[test]
fn partial_divisor_sum_with_large_cutoff() {
    let tables = SieveTables::build(3000).unwrap();
    for v in 1..=3000u64 {
        let expected = i64::from(v == 1);
        assert_eq!(tables.mu_partial_divisor_sum(v, v), expected);
        assert_eq!(tables.mu_partial_divisor_sum(v, 5000), expected);
        let direct: i64 = (1..=v.min(10))
            .filter(|d| v % d == 0)
            .map(|d| i64::from(tables.mu(d)))
            .sum();
        assert_eq!(tables.mu_partial_divisor_sum(v, 10), direct);
    }
}
