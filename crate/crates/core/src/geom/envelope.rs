use std::cmp::Ordering;

use super::{Line, Rational};

/// x-coordinate where two non-parallel lines meet.
pub(crate) fn intersect_x(a: &Line, b: &Line) -> Rational {
    (&b.intercept - &a.intercept) / (&a.slope - &b.slope)
}

/// Builds the upper envelope chain of the lines `ids`, which must be given in
/// nondecreasing slope order. Among parallel lines only the highest survives
/// (first one on exact ties). A line that touches the envelope at a single
/// vertex is dropped. Returns the surviving ids left to right and the
/// breakpoints between consecutive survivors.
pub(crate) fn build_upper_chain<'a, I, F>(ids: I, line: F) -> (Vec<u32>, Vec<Rational>)
where
    I: IntoIterator<Item = u32>,
    F: Fn(u32) -> &'a Line,
{
    let mut chain: Vec<u32> = Vec::new();
    let mut breaks: Vec<Rational> = Vec::new();
    for id in ids {
        let l = line(id);
        if let Some(&top) = chain.last() {
            let t = line(top);
            debug_assert!(t.slope <= l.slope, "lines out of slope order");
            if t.slope == l.slope {
                if l.intercept <= t.intercept {
                    continue;
                }
                chain.pop();
                breaks.pop();
            }
        }
        while chain.len() >= 2 {
            let below = line(chain[chain.len() - 2]);
            let x = intersect_x(below, l);
            if x <= *breaks.last().unwrap() {
                chain.pop();
                breaks.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = chain.last() {
            breaks.push(intersect_x(line(top), l));
        }
        chain.push(id);
    }
    (chain, breaks)
}

/// Pointwise maximum of a set of lines, as a left-to-right sequence of edges.
///
/// Edge `k` carries input line `line_id(k)` over the closed span
/// `[breakpoint(k-1), breakpoint(k)]`, unbounded at the two ends. Slopes
/// strictly increase from left to right.
#[derive(Debug, Clone)]
pub struct UpperEnvelope {
    lines: Vec<Line>,
    ids: Vec<u32>,
    breaks: Vec<Rational>,
    edge_of: Vec<Option<u32>>,
}

impl UpperEnvelope {
    /// Panics on an empty input.
    pub fn from_lines(lines: &[Line]) -> Self {
        assert!(!lines.is_empty(), "envelope of no lines");
        let mut order: Vec<u32> = (0..lines.len() as u32).collect();
        order.sort_by(|&a, &b| {
            let (la, lb) = (&lines[a as usize], &lines[b as usize]);
            la.slope
                .cmp(&lb.slope)
                .then_with(|| lb.intercept.cmp(&la.intercept))
                .then_with(|| a.cmp(&b))
        });
        let (ids, breaks) = build_upper_chain(order, |i| &lines[i as usize]);
        let mut edge_of = vec![None; lines.len()];
        for (k, &id) in ids.iter().enumerate() {
            edge_of[id as usize] = Some(k as u32);
        }
        UpperEnvelope {
            lines: ids.iter().map(|&i| lines[i as usize].clone()).collect(),
            ids,
            breaks,
            edge_of,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Input index of the line carrying edge `k`.
    pub fn line_id(&self, k: usize) -> usize {
        self.ids[k] as usize
    }

    pub fn line(&self, k: usize) -> &Line {
        &self.lines[k]
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    /// Closed x-span of edge `k`; `None` marks an infinite end.
    pub fn span(&self, k: usize) -> (Option<&Rational>, Option<&Rational>) {
        let left = if k == 0 {
            None
        } else {
            Some(&self.breaks[k - 1])
        };
        (left, self.breaks.get(k))
    }

    /// Edge index carried by input line `id`, if that line owns an edge.
    pub fn edge_of_line(&self, id: usize) -> Option<usize> {
        self.edge_of.get(id).copied().flatten().map(|k| k as usize)
    }

    /// Leftmost edge whose closed span contains `x`.
    pub fn locate(&self, x: &Rational) -> usize {
        self.breaks.partition_point(|b| b < x)
    }

    pub fn value_at(&self, x: &Rational) -> Rational {
        self.lines[self.locate(x)].eval(x)
    }

    /// Edge whose slope equals `slope` exactly, if any.
    pub fn edge_with_slope(&self, slope: &Rational) -> Result<usize, usize> {
        self.lines.binary_search_by(|l| l.slope.cmp(slope))
    }

    /// Shared vertex of edges `k - 1` and `k`.
    pub fn vertex_x(&self, k: usize) -> &Rational {
        &self.breaks[k - 1]
    }

    /// Index of the first edge with slope strictly greater than `slope`.
    pub fn first_steeper(&self, slope: &Rational) -> usize {
        self.lines
            .partition_point(|l| l.slope.cmp(slope) != Ordering::Greater)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(a: i64, b: i64) -> Line {
        Line::new(a.into(), b.into())
    }

    #[test]
    fn four_line_example() {
        let lines = vec![line(0, -3), line(3, 0), line(0, 3), line(-3, 0)];
        let env = UpperEnvelope::from_lines(&lines);
        assert_eq!(env.len(), 3);
        assert_eq!((env.line_id(0), env.line_id(1), env.line_id(2)), (3, 2, 1));
        assert_eq!(env.breakpoints(), &[Rational::from(-1), Rational::from(1)]);
        assert_eq!(env.edge_of_line(0), None);
        assert_eq!(
            env.span(1),
            (Some(&Rational::from(-1)), Some(&Rational::from(1)))
        );
        assert_eq!(env.span(0).0, None);
        assert_eq!(env.span(2).1, None);
    }

    #[test]
    fn single_and_parallel() {
        let env = UpperEnvelope::from_lines(&[line(0, 0)]);
        assert_eq!(env.len(), 1);
        assert_eq!(env.span(0), (None, None));
        let env = UpperEnvelope::from_lines(&[line(1, 0), line(1, 1)]);
        assert_eq!(env.len(), 1);
        assert_eq!(env.line_id(0), 1);
        let env = UpperEnvelope::from_lines(&[line(1, 1), line(1, 1)]);
        assert_eq!(env.line_id(0), 0);
    }

    #[test]
    fn concurrent_middle_line_is_not_an_edge() {
        // y = -x, y = 0, y = x all meet at the origin.
        let env = UpperEnvelope::from_lines(&[line(-1, 0), line(0, 0), line(1, 0)]);
        assert_eq!(env.len(), 2);
        assert_eq!(env.edge_of_line(1), None);
    }

    proptest! {
        #[test]
        fn envelope_is_pointwise_max(raw in prop::collection::vec((-8i64..8, -20i64..20), 1..30),
                                     xs in prop::collection::vec((-400i64..400, 1i64..7), 40)) {
            let lines: Vec<Line> = raw.iter().map(|&(a, b)| line(a, b)).collect();
            let env = UpperEnvelope::from_lines(&lines);
            for w in env.lines.windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
            }
            for (n, d) in xs {
                let x = Rational::new(n, d);
                let max = lines.iter().map(|l| l.eval(&x)).max().unwrap();
                prop_assert_eq!(env.value_at(&x), max);
            }
        }
    }
}
