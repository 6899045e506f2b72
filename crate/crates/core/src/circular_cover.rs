//! Fewest cyclic intervals covering every position of a circle.
//!
//! Positions are `0..n`; an interval `(start, end)` covers `start, start+1,
//! ..., end` taken cyclically, so `start > end` wraps through `n-1, 0`.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("circle has no positions")]
    NoPositions,
    #[error("interval {index} has an endpoint outside 0..{n}")]
    BadInterval { index: usize, n: usize },
    #[error("position {0} lies in no interval")]
    Uncoverable(usize),
    #[error("no cover with at most {0} intervals")]
    LimitExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverProblem {
    pub n: usize,
    pub intervals: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    /// Chosen interval indices, ascending.
    pub interval_ids: Vec<usize>,
}

impl CoverSolution {
    fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        CoverSolution { interval_ids: ids }
    }

    pub fn size(&self) -> usize {
        self.interval_ids.len()
    }
}

impl CoverProblem {
    pub fn new(n: usize, intervals: Vec<(usize, usize)>) -> Self {
        CoverProblem { n, intervals }
    }

    fn len_of(&self, (s, e): (usize, usize)) -> usize {
        if s <= e {
            e - s + 1
        } else {
            self.n - s + e + 1
        }
    }

    fn validate(&self) -> Result<(), CoverError> {
        if self.n == 0 {
            return Err(CoverError::NoPositions);
        }
        if let Some(index) = self
            .intervals
            .iter()
            .position(|&(s, e)| s >= self.n || e >= self.n)
        {
            return Err(CoverError::BadInterval { index, n: self.n });
        }
        Ok(())
    }

    /// Lowest position covered by no interval.
    fn first_uncovered(&self) -> Option<usize> {
        let n = self.n;
        let mut delta = vec![0i64; n + 1];
        for &(s, e) in &self.intervals {
            delta[s] += 1;
            if s <= e {
                delta[e + 1] -= 1;
            } else {
                delta[n] -= 1;
                delta[0] += 1;
                delta[e + 1] -= 1;
            }
        }
        let mut depth = 0;
        (0..n).find(|&q| {
            depth += delta[q];
            depth == 0
        })
    }

    /// Whether the chosen intervals cover every position.
    pub fn is_cover(&self, ids: &[usize]) -> bool {
        let mut seen = vec![false; self.n];
        for &i in ids {
            let (s, _) = self.intervals[i];
            for k in 0..self.len_of(self.intervals[i]) {
                seen[(s + k) % self.n] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Parses the text form: `n` on the first line, then one 1-based
    /// `start end` pair per line. Blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self, String> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or("missing position count")?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| format!("line 1: bad position count {:?}", first.trim()))?;
        let mut intervals = Vec::new();
        for (i, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| format!("line {}: expected two positive integers", i + 1))?;
            match nums[..] {
                [s, e] if (1..=n).contains(&s) && (1..=n).contains(&e) => {
                    intervals.push((s - 1, e - 1))
                }
                [_, _] => return Err(format!("line {}: endpoint outside 1..{n}", i + 1)),
                _ => return Err(format!("line {}: expected two positive integers", i + 1)),
            }
        }
        Ok(CoverProblem { n, intervals })
    }
}

/// A minimum cover in `O((n + m) log n)` time.
///
/// Every cover contains an interval through position 0. Positions are
/// unrolled onto `0..3n` with copies of each interval shifted by `0, n, 2n`;
/// from each candidate through position 0 (copy through `n`) the rest of the
/// circle is closed greedily, always taking the interval that reaches
/// farthest, and greedy runs are counted with binary lifting.
pub fn min_circular_point_cover(prob: &CoverProblem) -> Result<CoverSolution, CoverError> {
    prob.validate()?;
    if let Some(q) = prob.first_uncovered() {
        return Err(CoverError::Uncoverable(q));
    }
    let n = prob.n;
    if let Some(i) = prob.intervals.iter().position(|&iv| prob.len_of(iv) == n) {
        return Ok(CoverSolution::new(vec![i]));
    }

    let span = 3 * n;
    // best[s] = (end, id) of the farthest copy starting exactly at s
    let mut best: Vec<Option<(usize, usize)>> = vec![None; span];
    let better = |a: (usize, usize), b: Option<(usize, usize)>| match b {
        None => true,
        Some(b) => a.0 > b.0 || (a.0 == b.0 && a.1 < b.1),
    };
    for (id, &iv) in prob.intervals.iter().enumerate() {
        let len = prob.len_of(iv);
        for shift in [0, n, 2 * n] {
            let s = iv.0 + shift;
            let cand = (s + len - 1, id);
            if better(cand, best[s]) {
                best[s] = Some(cand);
            }
        }
    }
    // far[q]: farthest copy starting at or before q; it covers q on 0..3n
    // beyond the first n positions since every position is covered
    let mut far: Vec<(usize, usize)> = Vec::with_capacity(span);
    let mut run: Option<(usize, usize)> = None;
    for b in best {
        if let Some(b) = b {
            if better(b, run) {
                run = Some(b);
            }
        }
        far.push(run.unwrap_or((0, usize::MAX)));
    }

    let levels = usize::BITS as usize - span.leading_zeros() as usize;
    let cap = span as u32;
    let mut up: Vec<Vec<u32>> = Vec::with_capacity(levels);
    up.push(
        far.iter()
            .map(|&(e, _)| ((e + 1) as u32).min(cap))
            .collect(),
    );
    for j in 1..levels {
        let prev = &up[j - 1];
        let next = (0..span)
            .map(|q| {
                if prev[q] >= cap {
                    cap
                } else {
                    prev[prev[q] as usize]
                }
            })
            .collect();
        up.push(next);
    }
    // intervals still needed to cover from..=target
    let steps = |from: usize, target: usize| -> usize {
        if from > target {
            return 0;
        }
        let mut pos = from;
        let mut count = 0;
        for j in (0..levels).rev() {
            let nxt = up[j][pos] as usize;
            if nxt <= target {
                pos = nxt;
                count += 1 << j;
            }
        }
        count + 1
    };

    let mut choice: Option<(usize, usize, usize, usize)> = None; // (size, id, from, target)
    for (id, &iv) in prob.intervals.iter().enumerate() {
        let len = prob.len_of(iv);
        let a = if iv.0 == 0 {
            n
        } else if iv.0 > iv.1 {
            iv.0
        } else {
            continue;
        };
        let b = a + len - 1;
        if a > n || b < n {
            continue;
        }
        let target = a + n - 1;
        let size = 1 + steps(b + 1, target);
        if choice.is_none_or(|c| size < c.0) {
            choice = Some((size, id, b + 1, target));
        }
    }
    let (_, id, mut pos, target) = choice.expect("position 0 is covered");
    let mut ids = vec![id];
    while pos <= target {
        let (e, i) = far[pos];
        ids.push(i);
        pos = e + 1;
    }
    Ok(CoverSolution::new(ids))
}

/// Exact minimum by enumerating subsets in increasing size, up to
/// `max_intervals`. Ties go to the lexicographically first subset.
pub fn brute_force_cover(
    prob: &CoverProblem,
    max_intervals: usize,
) -> Result<CoverSolution, CoverError> {
    prob.validate()?;
    if let Some(q) = prob.first_uncovered() {
        return Err(CoverError::Uncoverable(q));
    }
    let n = prob.n;
    let words = n.div_ceil(64);
    let masks: Vec<Vec<u64>> = prob
        .intervals
        .iter()
        .map(|&iv| {
            let mut m = vec![0u64; words];
            for k in 0..prob.len_of(iv) {
                let q = (iv.0 + k) % n;
                m[q / 64] |= 1 << (q % 64);
            }
            m
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            if w + 1 < words || n.is_multiple_of(64) {
                u64::MAX
            } else {
                (1u64 << (n % 64)) - 1
            }
        })
        .collect();

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
    for k in 1..=max_intervals.min(masks.len()) {
        let mut pick = Vec::with_capacity(k);
        if search(&masks, &full, &empty, 0, k, &mut pick) {
            return Ok(CoverSolution::new(pick));
        }
    }
    Err(CoverError::LimitExceeded(max_intervals))
}
