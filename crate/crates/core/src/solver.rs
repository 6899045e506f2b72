//! The full pipeline and the two reference tiers used to check it.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::circular_cover::{min_circular_point_cover, CoverProblem, CoverSolution};
use crate::instance::{hits, verify_hitting_set, HittingSet, Instance, Verdict};
use crate::preprocess::{
    dedupe_normals, feasibility_check, rotate_if_needed, singleton_check, Feasibility, Rotation,
};
use crate::reduction::{
    build_circle, build_envelope_trees, build_full_arcs, build_reduced_arcs, Arc,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("no hitting set with at most {0} points")]
    LimitExceeded(usize),
}

fn invariant(e: impl std::fmt::Display) -> SolveError {
    SolveError::InternalInvariant(e.to_string())
}

/// Which arc family the pipeline covers with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// At most four arcs per point, `O(n log^2 n)` to build.
    Reduced,
    /// Every maximal arc, `O(n m)` to build.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    Infeasible,
    Singleton,
    Reduction,
}

/// What a pipeline run did, for tests and benchmarks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub path: SolvePath,
    pub halfplanes_kept: usize,
    pub rotation: Rotation,
    pub arcs: usize,
    /// Preprocessing plus arc construction.
    pub build: Duration,
    /// Cover computation plus mapping back to points.
    pub cover: Duration,
}

/// An optimal hitting set in `O(n log^2 n)` time for `n` points and
/// half-planes.
pub fn solve(inst: &Instance) -> Result<HittingSet, SolveError> {
    solve_traced(inst, Family::Reduced).map(|(h, _)| h)
}

/// Same contract as [`solve`], covering with the full arc family.
pub fn solve_baseline(inst: &Instance) -> Result<HittingSet, SolveError> {
    solve_traced(inst, Family::Full).map(|(h, _)| h)
}

pub fn solve_traced(inst: &Instance, family: Family) -> Result<(HittingSet, Trace), SolveError> {
    let start = Instant::now();
    let mut trace = Trace {
        path: SolvePath::Infeasible,
        halfplanes_kept: 0,
        rotation: Rotation::IDENTITY,
        arcs: 0,
        build: Duration::ZERO,
        cover: Duration::ZERO,
    };
    let deduped = dedupe_normals(inst.halfplanes());
    trace.halfplanes_kept = deduped.halfplanes.len();
    if let Feasibility::Infeasible(_) = feasibility_check(inst.points(), &deduped.halfplanes) {
        trace.build = start.elapsed();
        return Ok((HittingSet::infeasible(), trace));
    }
    if let Some(i) = singleton_check(inst.points(), &deduped.halfplanes) {
        trace.path = SolvePath::Singleton;
        trace.build = start.elapsed();
        return Ok((HittingSet::optimal(vec![i]), trace));
    }
    trace.path = SolvePath::Reduction;
    let (points, halfplanes, rotation) = rotate_if_needed(inst.points(), &deduped.halfplanes);
    trace.rotation = rotation;
    let circle = build_circle(&halfplanes).map_err(invariant)?;
    let arcs = match family {
        Family::Reduced => {
            let trees = build_envelope_trees(&halfplanes, &circle);
            build_reduced_arcs(&points, &trees)
        }
        Family::Full => build_full_arcs(&points, &halfplanes, &circle),
    }
    .map_err(invariant)?;
    trace.arcs = arcs.len();
    trace.build = start.elapsed();

    let started_cover = Instant::now();
    let prob = CoverProblem::new(circle.n(), arcs.iter().map(|a| (a.start, a.end)).collect());
    let cover = min_circular_point_cover(&prob).map_err(invariant)?;
    let set = map_cover_to_hitting_set(inst, &cover, &arcs)?;
    trace.cover = started_cover.elapsed();
    Ok((set, trace))
}

/// Owners of the chosen arcs. A minimum cover never uses two arcs of one
/// point, so the owners are distinct and as many as the arcs, and they must
/// hit every half-plane of `inst`.
pub fn map_cover_to_hitting_set(
    inst: &Instance,
    cover: &CoverSolution,
    arcs: &[Arc],
) -> Result<HittingSet, SolveError> {
    let owners: Vec<usize> = cover.interval_ids.iter().map(|&i| arcs[i].owner).collect();
    let distinct: HashSet<usize> = owners.iter().copied().collect();
    if distinct.len() != owners.len() {
        return Err(SolveError::InternalInvariant(format!(
            "cover uses two arcs of one point: owners {owners:?}"
        )));
    }
    match verify_hitting_set(inst, &owners).map_err(invariant)? {
        Verdict::Ok => Ok(HittingSet::optimal(owners)),
        Verdict::FirstViolation(h) => Err(SolveError::InternalInvariant(format!(
            "owners {owners:?} miss half-plane {h}"
        ))),
    }
}

/// Smallest subset of at most `max_k` points hitting everything, by direct
/// enumeration in increasing size. No preprocessing or reduction is used.
pub fn solve_brute_force(inst: &Instance, max_k: usize) -> Result<HittingSet, SolveError> {
    let (points, halfplanes) = (inst.points(), inst.halfplanes());
    let words = halfplanes.len().div_ceil(64);
    let masks: Vec<Vec<u64>> = points
        .iter()
        .map(|p| {
            let mut m = vec![0u64; words];
            for (j, h) in halfplanes.iter().enumerate() {
                if hits(p, h) {
                    m[j / 64] |= 1 << (j % 64);
                }
            }
            m
        })
        .collect();
    let all = masks.iter().fold(vec![0u64; words], |acc, m| {
        acc.iter().zip(m).map(|(a, b)| a | b).collect()
    });
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let rem = halfplanes.len() % 64;
            if w + 1 < words || rem == 0 {
                u64::MAX
            } else {
                (1u64 << rem) - 1
            }
        })
        .collect();
    if all != full {
        return Ok(HittingSet::infeasible());
    }

    fn search(
        masks: &[Vec<u64>],
        full: &[u64],
        acc: &[u64],
        from: usize,
        left: usize,
        pick: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return acc == full;
        }
        for i in from..masks.len() {
            let next: Vec<u64> = acc.iter().zip(&masks[i]).map(|(a, b)| a | b).collect();
            pick.push(i);
            if search(masks, full, &next, i + 1, left - 1, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }

    let empty = vec![0u64; words];
    for k in 1..=max_k.min(points.len()) {
        let mut pick = Vec::with_capacity(k);
        if search(&masks, &full, &empty, 0, k, &mut pick) {
            return Ok(HittingSet::optimal(pick));
        }
    }
    Err(SolveError::LimitExceeded(max_k))
}
