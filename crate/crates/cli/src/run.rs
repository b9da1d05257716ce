//! Executes a validated configuration against the harness.

use klab_core::kloosterman::kloosterman_with_cap;
use klab_core::padic::choose_s;
use klab_core::{Harness, SieveTables, SumReport};

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::output::ResultRow;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs `config`, returning all rows.
pub fn run(config: &RunConfig) -> Result<Vec<ResultRow>, CliError> {
    let mut rows = Vec::new();
    run_streaming(config, |row| {
        rows.push(row);
        Ok(())
    })?;
    Ok(rows)
}

/// Runs `config`, handing each row to `emit` as soon as it is complete.
pub fn run_streaming<F>(config: &RunConfig, mut emit: F) -> Result<(), CliError>
where
    F: FnMut(ResultRow) -> Result<(), CliError>,
{
    let base = base_row(config);
    if config.mode == Mode::Eval {
        let (m, n) = config.eval_args.expect("validated");
        let value = kloosterman_with_cap(m, n, config.pp.q(), config.brute_force_cap)?;
        return emit(ResultRow { big_m: Some(m), big_n: Some(n), value, ..base });
    }

    let a = config.a.expect("validated");
    let harness = Harness::new(config.pp, a)?
        .with_workers(config.workers)
        .with_work_cap(config.work_cap);

    match config.mode {
        Mode::Scan => {
            let varies_n = matches!(config.scan_of, Mode::Consecutive | Mode::Bilinear);
            let top = if varies_n { config.big_n } else { config.x }
                .ok_or_else(|| CliError::Validation(format!("scan of {} needs a range", config.scan_of.name())))?;
            let grid = scan_grid(top, config.scan_min, config.scan_points);
            let tables = sieve_for(config.scan_of, top)?;
            for point in grid {
                let (x, n) = if varies_n { (config.x, Some(point)) } else { (Some(point), config.big_n) };
                let row = sum_row(config, &harness, tables.as_ref(), config.scan_of, x, n)?;
                emit(row)?;
            }
            Ok(())
        }
        Mode::Vaughan => {
            let x = config.x.expect("validated");
            let (u, v) = (config.big_u.expect("validated"), config.big_v.expect("validated"));
            let tables = SieveTables::build(x)?;
            let split = harness.vaughan_split(x, u as f64, v as f64, &tables)?;
            let parts = [split.sigma1, split.sigma2, split.sigma3, split.sigma4];
            for (i, value) in parts.into_iter().enumerate() {
                emit(ResultRow {
                    mode: format!("vaughan-sigma{}", i + 1),
                    a: Some(a),
                    x: Some(x),
                    big_u: Some(u),
                    big_v: Some(v),
                    value,
                    ..base.clone()
                })?;
            }
            Ok(())
        }
        mode => {
            let tables = sieve_for(mode, config.x.unwrap_or(0))?;
            let row = sum_row(config, &harness, tables.as_ref(), mode, config.x, config.big_n)?;
            emit(row)?;
            if mode == Mode::Bilinear {
                emit(majorant_row(config, &harness)?)?;
            }
            Ok(())
        }
    }
}

/// `X_i = ceil(top / 2^i)`, strictly decreasing and at least `min`.
pub fn scan_grid(top: u64, min: u64, points: Option<usize>) -> Vec<u64> {
    let mut grid: Vec<u64> = Vec::new();
    for i in 0..64 {
        let point = top.div_ceil(1u64 << i);
        if point < min || grid.last().is_some_and(|&last| point >= last) {
            break;
        }
        if points.is_some_and(|p| grid.len() >= p) {
            break;
        }
        grid.push(point);
    }
    grid
}

fn sieve_for(mode: Mode, x: u64) -> Result<Option<SieveTables>, CliError> {
    Ok(match mode {
        Mode::PrimeSum | Mode::LambdaSum => Some(SieveTables::build(x)?),
        _ => None,
    })
}

fn base_row(config: &RunConfig) -> ResultRow {
    ResultRow {
        mode: config.target_mode().name().to_string(),
        p: config.pp.p(),
        k: config.pp.k(),
        q: config.pp.q(),
        a: config.a,
        x: None,
        big_m: None,
        big_n: None,
        big_u: None,
        big_v: None,
        seed: None,
        s: None,
        value: 0.0,
        n_terms: None,
        trivial_bound: None,
        delta: None,
        wall_ms: None,
        version: VERSION.to_string(),
    }
}

fn sum_row(
    config: &RunConfig,
    harness: &Harness,
    tables: Option<&SieveTables>,
    mode: Mode,
    x: Option<u64>,
    n: Option<u64>,
) -> Result<ResultRow, CliError> {
    let alpha = config.weights_a.to_weights()?;
    let beta = config.weights_b.to_weights()?;
    let weighted = matches!(mode, Mode::Bilinear | Mode::Hyperbolic);
    let report: SumReport = match mode {
        Mode::Consecutive => harness.consecutive_sum(n.expect("validated"))?,
        Mode::Bilinear => harness.bilinear_sum(&alpha, &beta, config.big_m.expect("validated"), n.expect("validated"))?,
        Mode::Hyperbolic => harness.hyperbolic_sum(
            &alpha,
            &beta,
            config.big_u.expect("validated"),
            config.big_v.expect("validated"),
            x.expect("validated"),
        )?,
        Mode::PrimeSum => harness.prime_sum(x.expect("validated"), tables.expect("sieve"))?,
        Mode::LambdaSum => harness.lambda_sum(x.expect("validated"), tables.expect("sieve"))?,
        Mode::Eval | Mode::Vaughan | Mode::Scan => unreachable!("not a sum mode"),
    };
    let params = report.params;
    Ok(ResultRow {
        mode: mode.name().to_string(),
        x: params.x,
        big_m: params.m.map(|m| m as i64),
        big_n: params.n.map(|n| n as i64),
        big_u: params.u,
        big_v: params.v,
        seed: if weighted { config.weights_a.seed().or(config.weights_b.seed()) } else { None },
        value: report.value,
        n_terms: Some(report.n_terms),
        trivial_bound: Some(report.trivial_bound),
        delta: Some(report.delta),
        wall_ms: config.timing.then_some(report.wall_ms),
        ..base_row(config)
    })
}

/// `2 Σ*_u Σ*_v T_s(u, v)`, the congruence-class majorant of the bilinear sum.
fn majorant_row(config: &RunConfig, harness: &Harness) -> Result<ResultRow, CliError> {
    let (m, n) = (config.big_m.expect("validated"), config.big_n.expect("validated"));
    let s = config
        .s_override
        .unwrap_or_else(|| choose_s(m.min(n).max(2), &config.pp, config.eta));
    let alpha = config.weights_a.to_weights()?;
    let start = std::time::Instant::now();
    let value = harness.decomposition_bound(s, &alpha, m, n)?;
    Ok(ResultRow {
        mode: "bilinear-majorant".to_string(),
        big_m: Some(m as i64),
        big_n: Some(n as i64),
        seed: config.weights_a.seed(),
        s: Some(s),
        value,
        wall_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        ..base_row(config)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        assert_eq!(scan_grid(1 << 20, 1 << 10, None).len(), 11);
        assert_eq!(scan_grid(1000, 1, Some(8)), vec![1000, 500, 250, 125, 63, 32, 16, 8]);
        assert_eq!(scan_grid(5, 1, None), vec![5, 3, 2, 1]);
        assert_eq!(scan_grid(5, 6, None), Vec::<u64>::new());
    }
}
