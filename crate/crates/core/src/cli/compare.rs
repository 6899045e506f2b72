use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Failure, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE};
use crate::instance::{
    generate, serialize_instance, verify_hitting_set, HittingSet, Instance, Verdict,
};
use crate::solver::{solve, solve_baseline, solve_brute_force, SolveError};

/// Largest point count for which brute force runs.
pub const BRUTE_MAX_POINTS: usize = 14;

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Inclusive seed range, `a..b`.
    #[arg(long, value_parser = parse_seed_range)]
    pub seeds: RangeInclusive<u64>,
    #[arg(long, default_value_t = 10)]
    pub max_points: usize,
    #[arg(long, default_value_t = 10)]
    pub max_halfplanes: usize,
    /// Skip the brute-force tier even for small instances.
    #[arg(long)]
    pub no_brute: bool,
    /// Where the shrunk instance of the first disagreement is written.
    #[arg(long, default_value = "compare-repro.json")]
    pub repro: PathBuf,
    /// Replace the solver by a deliberately wrong one, to exercise the harness.
    #[arg(long, hide = true)]
    pub inject_bug: bool,
}

pub fn parse_seed_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad seed {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad seed {b:?}"))?;
    if a > b {
        return Err(format!("empty seed range {s:?}"));
    }
    Ok(a..=b)
}

/// The instance compared for `seed`; sizes and feasibility are drawn from
/// the seed so every run is reproducible.
pub fn instance_for_seed(seed: u64, max_points: usize, max_halfplanes: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let m = rng.random_range(1..=max_points.max(1));
    let n = rng.random_range(1..=max_halfplanes.max(1));
    let feasible = rng.random_bool(0.85);
    generate(m, n, seed, feasible)
}

pub type Solver = dyn Fn(&Instance) -> Result<HittingSet, SolveError> + Sync;

/// `Err` describes the first disagreement between `solver`, the baseline,
/// and (when `brute`) exhaustive search.
pub fn compare_instance(inst: &Instance, solver: &Solver, brute: bool) -> Result<(), String> {
    let fast = solver(inst).map_err(|e| format!("solver: {e}"))?;
    let base = solve_baseline(inst).map_err(|e| format!("baseline: {e}"))?;
    if fast.is_optimal() {
        match verify_hitting_set(inst, &fast.point_ids) {
            Ok(Verdict::Ok) => {}
            Ok(Verdict::FirstViolation(h)) => {
                return Err(format!(
                    "solver answer {:?} misses half-plane {h}",
                    fast.point_ids
                ))
            }
            Err(e) => return Err(format!("solver answer: {e}")),
        }
    }
    let same = |a: &HittingSet, b: &HittingSet| a.status == b.status && a.size() == b.size();
    if !same(&fast, &base) {
        return Err(format!("solver {fast:?} vs baseline {base:?}"));
    }
    if brute {
        let exact = solve_brute_force(inst, inst.points().len())
            .map_err(|e| format!("brute force: {e}"))?;
        if !same(&fast, &exact) {
            return Err(format!("solver {fast:?} vs brute force {exact:?}"));
        }
    }
    Ok(())
}

/// Removes half-planes, then points, one at a time while `failing` holds.
pub fn minimize(inst: &Instance, failing: impl Fn(&Instance) -> bool) -> Instance {
    let mut cur = inst.clone();
    loop {
        let mut shrunk = false;
        let mut i = 0;
        while i < cur.halfplanes().len() {
            let mut hs = cur.halfplanes().to_vec();
            hs.remove(i);
            match Instance::new(cur.points().to_vec(), hs) {
                Ok(next) if failing(&next) => {
                    cur = next;
                    shrunk = true;
                }
                _ => i += 1,
            }
        }
        let mut i = 0;
        while i < cur.points().len() {
            let mut ps = cur.points().to_vec();
            ps.remove(i);
            match Instance::new(ps, cur.halfplanes().to_vec()) {
                Ok(next) if failing(&next) => {
                    cur = next;
                    shrunk = true;
                }
                _ => i += 1,
            }
        }
        if !shrunk {
            return cur;
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub seed: u64,
    pub detail: String,
    pub reproducer: Instance,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub total: usize,
    pub agreed: usize,
    /// Disagreement with the lowest seed, shrunk.
    pub first_mismatch: Option<Mismatch>,
}

pub fn run_compare(
    seeds: RangeInclusive<u64>,
    max_points: usize,
    max_halfplanes: usize,
    brute: bool,
    solver: &Solver,
) -> CompareReport {
    let seeds: Vec<u64> = seeds.collect();
    let outcomes: Vec<(u64, Result<(), String>)> = seeds
        .par_iter()
        .map(|&seed| {
            let inst = instance_for_seed(seed, max_points, max_halfplanes);
            (seed, compare_instance(&inst, solver, brute))
        })
        .collect();
    let agreed = outcomes.iter().filter(|(_, r)| r.is_ok()).count();
    let first_mismatch = outcomes
        .into_iter()
        .find_map(|(seed, r)| r.err().map(|d| (seed, d)))
        .map(|(seed, detail)| {
            let inst = instance_for_seed(seed, max_points, max_halfplanes);
            let reproducer = minimize(&inst, |i| compare_instance(i, solver, brute).is_err());
            Mismatch {
                seed,
                detail,
                reproducer,
            }
        });
    CompareReport {
        total: seeds.len(),
        agreed,
        first_mismatch,
    }
}

/// Drops the last chosen point, so any nonempty answer becomes wrong.
fn buggy_solve(inst: &Instance) -> Result<HittingSet, SolveError> {
    let mut set = solve(inst)?;
    if set.point_ids.len() > 1 {
        set.point_ids.pop();
    }
    Ok(set)
}

pub fn cmd_compare(
    args: &CompareArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let brute = !args.no_brute && args.max_points <= BRUTE_MAX_POINTS;
    let solver: &Solver = if args.inject_bug {
        &buggy_solve
    } else {
        &solve
    };
    let report = run_compare(
        args.seeds.clone(),
        args.max_points,
        args.max_halfplanes,
        brute,
        solver,
    );
    let _ = writeln!(out, "{}/{} agree", report.agreed, report.total);
    let Some(m) = report.first_mismatch else {
        return Ok(EXIT_OK);
    };
    fs::write(&args.repro, serialize_instance(&m.reproducer)).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", args.repro.display()),
    })?;
    let _ = writeln!(
        err,
        "mismatch at seed {}: {}\nreproducer with {} points and {} half-planes written to {}",
        m.seed,
        m.detail,
        m.reproducer.points().len(),
        m.reproducer.halfplanes().len(),
        args.repro.display()
    );
    Ok(EXIT_MISMATCH)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seed_range("1..500"), Ok(1..=500));
        assert_eq!(parse_seed_range("7..7"), Ok(7..=7));
        assert!(parse_seed_range("5..1").is_err());
        assert!(parse_seed_range("5").is_err());
    }

    #[test]
    fn seeded_instances_are_stable() {
        let a = instance_for_seed(3, 10, 10);
        assert_eq!(a, instance_for_seed(3, 10, 10));
        assert!(a.points().len() <= 10 && a.halfplanes().len() <= 10);
    }

    #[test]
    fn clean_run_agrees() {
        let report = run_compare(1..=40, 8, 8, true, &solve);
        assert_eq!((report.agreed, report.total), (40, 40));
        assert!(report.first_mismatch.is_none());
    }

    #[test]
    fn injected_bug_is_caught_and_shrunk() {
        let report = run_compare(1..=40, 8, 8, true, &buggy_solve);
        let m = report.first_mismatch.expect("bug must be found");
        assert!(report.agreed < report.total);
        let original = instance_for_seed(m.seed, 8, 8);
        assert!(m.reproducer.halfplanes().len() <= original.halfplanes().len());
        assert!(compare_instance(&m.reproducer, &buggy_solve, true).is_err());
    }
}
