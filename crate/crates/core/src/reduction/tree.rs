use rayon::prelude::*;

use crate::geom::{build_upper_chain, HalfPlane, Line, Point, Rational};

/// Lower envelope of a block of bounding lines, stored as the upper
/// envelope of the negated lines: `chain` lists local ids left to right.
#[derive(Debug, Clone)]
struct Node {
    chain: Vec<u32>,
    breaks: Vec<Rational>,
}

/// Balanced tree over a sequence of lower half-planes (`ny < 0`). Level `l`
/// holds one node per aligned block of `2^l` consecutive leaves; each node
/// stores the lower envelope of its block's bounding lines, so a point hits
/// every half-plane of the block iff it lies on or below that envelope.
#[derive(Debug, Clone)]
pub struct EnvelopeTree {
    halfplanes: Vec<HalfPlane>,
    negated: Vec<Line>,
    levels: Vec<Vec<Node>>,
}

const PAR_LEVEL_MIN: usize = 64;

impl EnvelopeTree {
    /// Panics on an empty input or on a half-plane that is not lower.
    pub fn new(halfplanes: Vec<HalfPlane>) -> Self {
        assert!(!halfplanes.is_empty(), "tree over no half-planes");
        let negated: Vec<Line> = halfplanes
            .iter()
            .map(|h| match h.bound() {
                crate::geom::Bound::Below(line) => line.negated(),
                _ => panic!("tree half-planes must be lower"),
            })
            .collect();
        let leaves: Vec<Node> = (0..halfplanes.len() as u32)
            .map(|i| Node {
                chain: vec![i],
                breaks: Vec::new(),
            })
            .collect();
        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let below = levels.last().unwrap();
            let merge = |pair: &[Node]| match pair {
                [a, b] => merge_nodes(a, b, &negated),
                [a] => a.clone(),
                _ => unreachable!(),
            };
            let next: Vec<Node> = if below.len() >= PAR_LEVEL_MIN {
                below.par_chunks(2).map(merge).collect()
            } else {
                below.chunks(2).map(merge).collect()
            };
            levels.push(next);
        }
        EnvelopeTree {
            halfplanes,
            negated,
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.halfplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfplanes.is_empty()
    }

    pub fn halfplane(&self, i: usize) -> &HalfPlane {
        &self.halfplanes[i]
    }

    pub fn hits(&self, i: usize, q: &Point) -> bool {
        self.halfplanes[i].contains(q)
    }

    /// Local ids carrying the root's lower envelope left to right, and its
    /// breakpoints.
    pub fn root_envelope(&self) -> (Vec<usize>, &[Rational]) {
        let root = &self.levels.last().unwrap()[0];
        (
            root.chain.iter().map(|&i| i as usize).collect(),
            &root.breaks,
        )
    }

    /// Bounding line of leaf `i` (not negated).
    pub fn line(&self, i: usize) -> Line {
        self.negated[i].negated()
    }

    fn range(&self, level: usize, j: usize) -> (usize, usize) {
        let lo = j << level;
        (lo, ((j + 1) << level).min(self.len()))
    }

    fn hits_all(&self, level: usize, j: usize, q: &Point) -> bool {
        let node = &self.levels[level][j];
        let k = node.breaks.partition_point(|b| b < &q.x);
        self.halfplanes[node.chain[k] as usize].contains(q)
    }

    fn child_count(&self, level: usize, j: usize) -> usize {
        if 2 * j + 1 < self.levels[level - 1].len() {
            2
        } else {
            1
        }
    }

    /// Smallest index `>= from` whose half-plane misses `q`.
    pub fn first_unhit(&self, from: usize, q: &Point) -> Option<usize> {
        if from >= self.len() {
            return None;
        }
        self.first_in(self.levels.len() - 1, 0, from, q)
    }

    /// Largest index `<= from` whose half-plane misses `q`.
    pub fn last_unhit(&self, from: usize, q: &Point) -> Option<usize> {
        let from = from.min(self.len() - 1);
        self.last_in(self.levels.len() - 1, 0, from, q)
    }

    fn first_in(&self, level: usize, j: usize, from: usize, q: &Point) -> Option<usize> {
        let (lo, hi) = self.range(level, j);
        if hi <= from {
            return None;
        }
        if from <= lo {
            if self.hits_all(level, j, q) {
                return None;
            }
            return Some(self.descend(level, j, q, true));
        }
        let l = level - 1;
        let left = self.first_in(l, 2 * j, from, q);
        if left.is_some() || self.child_count(level, j) == 1 {
            return left;
        }
        self.first_in(l, 2 * j + 1, from, q)
    }

    fn last_in(&self, level: usize, j: usize, from: usize, q: &Point) -> Option<usize> {
        let (lo, hi) = self.range(level, j);
        if lo > from {
            return None;
        }
        if hi - 1 <= from {
            if self.hits_all(level, j, q) {
                return None;
            }
            return Some(self.descend(level, j, q, false));
        }
        let l = level - 1;
        if self.child_count(level, j) == 2 {
            if let Some(r) = self.last_in(l, 2 * j + 1, from, q) {
                return Some(r);
            }
        }
        self.last_in(l, 2 * j, from, q)
    }

    /// Leftmost (or rightmost) missed leaf below a node known to contain one.
    fn descend(&self, mut level: usize, mut j: usize, q: &Point, leftmost: bool) -> usize {
        while level > 0 {
            let two = self.child_count(level, j) == 2;
            level -= 1;
            j = if !two {
                2 * j
            } else if leftmost {
                if self.hits_all(level, 2 * j, q) {
                    2 * j + 1
                } else {
                    2 * j
                }
            } else if self.hits_all(level, 2 * j + 1, q) {
                2 * j
            } else {
                2 * j + 1
            };
        }
        j
    }
}

fn merge_nodes(a: &Node, b: &Node, negated: &[Line]) -> Node {
    let slope = |i: &u32| &negated[*i as usize].slope;
    let mut merged = Vec::with_capacity(a.chain.len() + b.chain.len());
    let (mut x, mut y) = (a.chain.iter().peekable(), b.chain.iter().peekable());
    loop {
        let next = match (x.peek(), y.peek()) {
            (Some(p), Some(r)) => {
                if slope(p) <= slope(r) {
                    x.next()
                } else {
                    y.next()
                }
            }
            (Some(_), None) => x.next(),
            (None, Some(_)) => y.next(),
            (None, None) => break,
        };
        merged.push(*next.unwrap());
    }
    let (chain, breaks) = build_upper_chain(merged, |i| &negated[i as usize]);
    Node { chain, breaks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn two_lower_diagonals() {
        // y <= -x - 2 and y <= x - 2
        let tree = EnvelopeTree::new(vec![h(-1, -1, 2), h(1, -1, 2)]);
        let (ids, breaks) = tree.root_envelope();
        assert_eq!(ids, vec![1, 0]);
        assert_eq!(breaks, &[Rational::zero()]);
        let p1 = Point::from_ints(0, 3);
        let p3 = Point::from_ints(0, -3);
        assert_eq!(tree.first_unhit(0, &p1), Some(0));
        assert_eq!(tree.first_unhit(0, &p3), None);
        assert_eq!(tree.last_unhit(1, &p1), Some(1));
        assert_eq!(tree.last_unhit(1, &p3), None);
    }

    #[test]
    fn single_leaf() {
        let tree = EnvelopeTree::new(vec![h(0, -1, 0)]);
        let (ids, breaks) = tree.root_envelope();
        assert_eq!(ids, vec![0]);
        assert!(breaks.is_empty());
        assert_eq!(tree.first_unhit(0, &Point::from_ints(7, 1)), Some(0));
        assert_eq!(tree.first_unhit(0, &Point::from_ints(7, 0)), None);
        assert_eq!(tree.first_unhit(1, &Point::from_ints(7, 1)), None);
    }

    fn lower_halfplanes() -> impl Strategy<Value = Vec<HalfPlane>> {
        prop::collection::vec((-6i64..=6, -6i64..=-1, -30i64..=30), 1..40)
            .prop_map(|v| v.into_iter().map(|(a, b, c)| h(a, b, c)).collect())
    }

    proptest! {
        #[test]
        fn queries_match_linear_scan(
            hps in lower_halfplanes(),
            pts in prop::collection::vec((-12i64..=12, -12i64..=12), 1..10),
        ) {
            let tree = EnvelopeTree::new(hps.clone());
            for (x, y) in pts {
                let q = Point::from_ints(x, y);
                for from in 0..hps.len() {
                    let first = (from..hps.len()).find(|&i| !hps[i].contains(&q));
                    let last = (0..=from).rev().find(|&i| !hps[i].contains(&q));
                    prop_assert_eq!(tree.first_unhit(from, &q), first);
                    prop_assert_eq!(tree.last_unhit(from, &q), last);
                }
            }
        }

        #[test]
        fn root_envelope_is_pointwise_min(hps in lower_halfplanes(), xs in prop::collection::vec(-50i64..=50, 1..20)) {
            let tree = EnvelopeTree::new(hps.clone());
            let (ids, breaks) = tree.root_envelope();
            for x in xs {
                let x = Rational::from(x);
                let k = breaks.partition_point(|b| b < &x);
                let on_env = tree.line(ids[k]).eval(&x);
                let min = (0..hps.len()).map(|i| tree.line(i).eval(&x)).min().unwrap();
                prop_assert_eq!(on_env, min);
            }
        }
    }
}
