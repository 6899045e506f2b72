use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use super::{Failure, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE};
use crate::instance::{generate, Instance};
use crate::solver::{solve_traced, Family};

pub const CSV_HEADER: &str = "n,build_ms,cover_ms,total_ms";

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated instance sizes, ascending.
    #[arg(long, value_delimiter = ',', default_values_t = [4096usize, 8192, 16384, 32768, 65536, 131072])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub fingerprint: u64,
    pub build_ms: f64,
    pub cover_ms: f64,
    pub total_ms: f64,
    pub size: usize,
}

/// The instance timed for size `n`: `n` points and `n` half-planes, always
/// feasible.
pub fn bench_instance(n: usize, seed: u64) -> Instance {
    generate(n, n, seed.wrapping_add(n as u64), true)
}

pub fn run_bench(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>, String> {
    sizes
        .iter()
        .map(|&n| {
            let inst = bench_instance(n, seed);
            let started = Instant::now();
            let (set, trace) = solve_traced(&inst, Family::Reduced).map_err(|e| e.to_string())?;
            let total = started.elapsed();
            Ok(BenchRow {
                n,
                fingerprint: inst.fingerprint(),
                build_ms: trace.build.as_secs_f64() * 1e3,
                cover_ms: trace.cover.as_secs_f64() * 1e3,
                total_ms: total.as_secs_f64() * 1e3,
                size: set.size(),
            })
        })
        .collect()
}

/// Least-squares slope of `ln total_ms` against `ln n`.
pub fn fitted_slope(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.total_ms.max(1e-6).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    for r in rows {
        s.push_str(&format!(
            "\n{},{:.3},{:.3},{:.3}",
            r.n, r.build_ms, r.cover_ms, r.total_ms
        ));
    }
    s.push('\n');
    s
}

pub fn cmd_bench(
    args: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if args.sizes.is_empty() || args.sizes.windows(2).any(|w| w[0] > w[1]) || args.sizes[0] == 0 {
        return Err(Failure {
            code: EXIT_PARSE,
            message: "sizes must be positive and ascending".into(),
        });
    }
    let rows = run_bench(&args.sizes, args.seed).map_err(|m| Failure {
        code: EXIT_INTERNAL,
        message: m,
    })?;
    for r in &rows {
        let _ = writeln!(
            err,
            "n={} fingerprint={:016x} optimum={} total_ms={:.1}",
            r.n, r.fingerprint, r.size, r.total_ms
        );
    }
    let csv = to_csv(&rows);
    match &args.csv {
        Some(path) => fs::write(path, &csv).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("{}: {e}", path.display()),
        })?,
        None => {
            let _ = write!(out, "{csv}");
        }
    }
    if rows.len() >= 2 {
        let _ = writeln!(err, "log-log slope: {:.3}", fitted_slope(&rows));
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_laws() {
        let row = |n: usize, t: f64| BenchRow {
            n,
            fingerprint: 0,
            build_ms: 0.0,
            cover_ms: 0.0,
            total_ms: t,
            size: 0,
        };
        let rows: Vec<_> = [1usize, 2, 4, 8]
            .iter()
            .map(|&n| row(n, 3.0 * (n * n) as f64))
            .collect();
        assert!((fitted_slope(&rows) - 2.0).abs() < 1e-9);
        let rows: Vec<_> = [10usize, 100]
            .iter()
            .map(|&n| row(n, 5.0 * n as f64))
            .collect();
        assert!((fitted_slope(&rows) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_shape_and_determinism() {
        let rows = run_bench(&[64, 128], 5).unwrap();
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("64,"));
        let again = run_bench(&[64, 128], 5).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.fingerprint).collect::<Vec<_>>(),
            again.iter().map(|r| r.fingerprint).collect::<Vec<_>>()
        );
    }
}
