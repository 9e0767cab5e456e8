//! Unit interval graph recognition by three LexBFS sweeps, with an explicit
//! check of the resulting order and a brute-force oracle for small graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;

/// Outcome of [`recognize_unit_interval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalOrderResult {
    UnitInterval(Ordering),
    NotUnitInterval,
    Disconnected,
}

impl IntervalOrderResult {
    pub fn ordering(&self) -> Option<&Ordering> {
        match self {
            IntervalOrderResult::UnitInterval(o) => Some(o),
            _ => None,
        }
    }
}

/// Lexicographic breadth-first search by partition refinement. `priority`
/// lists every vertex once; among vertices with equal labels the one listed
/// earliest is visited first. Returns the visit sequence.
pub fn lexbfs(g: &Graph, priority: &[usize]) -> Result<Vec<usize>> {
    Ok(lexbfs_tracked(g, priority)?.0)
}

/// Like [`lexbfs`], also reporting whether some visited vertex (after the
/// first) had no earlier-visited neighbour, i.e. the graph is disconnected.
fn lexbfs_tracked(g: &Graph, priority: &[usize]) -> Result<(Vec<usize>, bool)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if priority.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: priority.len(),
        });
    }
    let mut seen = vec![false; n];
    for &v in priority {
        if v >= n || seen[v] {
            return Err(Error::InvalidParameter(
                "priority is not a permutation".into(),
            ));
        }
        seen[v] = true;
    }

    let mut classes: Vec<Vec<usize>> = vec![priority.to_vec()];
    let mut reached = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut broken = false;
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        if !order.is_empty() && !reached[v] {
            broken = true;
        }
        order.push(v);
        let nv = g.neighbors(v);
        for u in nv.iter() {
            reached[u] = true;
        }
        let mut next = Vec::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&u| nv.contains(u));
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        classes = next;
    }
    Ok((order, broken))
}

/// Three-sweep recognition: an arbitrary sweep (which also detects
/// disconnection), then two LexBFS+ sweeps, each breaking ties in favour of
/// the vertex visited last by the previous sweep. The final sweep is checked
/// with [`is_robinsonian_under`]; runs of twins are put in index order.
pub fn recognize_unit_interval(g: &Graph) -> IntervalOrderResult {
    let n = g.n();
    if n == 0 {
        return IntervalOrderResult::UnitInterval(Ordering::identity(0));
    }
    let start: Vec<usize> = (0..n).collect();
    let (s1, broken) = lexbfs_tracked(g, &start).expect("identity priority is valid");
    if broken {
        return IntervalOrderResult::Disconnected;
    }
    let mut prev = s1;
    for _ in 0..2 {
        prev.reverse();
        prev = lexbfs(g, &prev).expect("previous sweep is a permutation");
    }
    sort_twin_runs(g, &mut prev);
    let ordering = Ordering::from_sequence(&prev).expect("sweep is a permutation");
    match is_robinsonian_under(g, &ordering) {
        Ok(true) => IntervalOrderResult::UnitInterval(ordering),
        _ => IntervalOrderResult::NotUnitInterval,
    }
}

fn same_closed_neighbourhood(g: &Graph, u: usize, v: usize) -> bool {
    if !g.has_edge(u, v) {
        return false;
    }
    let mut a = g.neighbors(u).clone();
    let mut b = g.neighbors(v).clone();
    a.insert(u);
    b.insert(v);
    a == b
}

fn sort_twin_runs(g: &Graph, seq: &mut [usize]) {
    let mut start = 0;
    while start < seq.len() {
        let mut end = start + 1;
        while end < seq.len() && same_closed_neighbourhood(g, seq[start], seq[end]) {
            end += 1;
        }
        seq[start..end].sort_unstable();
        start = end;
    }
}

/// `true` iff under `ordering` every closed neighbourhood occupies a
/// contiguous block of positions, i.e. the permuted adjacency matrix with a
/// unit diagonal has interval row supports around the diagonal.
pub fn is_robinsonian_under(g: &Graph, ordering: &Ordering) -> Result<bool> {
    let n = g.n();
    if ordering.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: ordering.n(),
        });
    }
    for v in 0..n {
        let rv = ordering.rank(v);
        let (mut lo, mut hi, mut count) = (rv, rv, 1);
        for u in g.neighbors(v).iter() {
            let r = ordering.rank(u);
            lo = lo.min(r);
            hi = hi.max(r);
            count += 1;
        }
        if hi - lo + 1 != count {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search for an order passing [`is_robinsonian_under`], by
/// backtracking with prefix pruning. Only for `n <= 9`.
pub fn brute_force_interval_order(g: &Graph) -> Result<Option<Ordering>> {
    let n = g.n();
    if n > 9 {
        return Err(Error::InvalidParameter(format!(
            "brute-force search supports n <= 9, got {n}"
        )));
    }
    let mut seq = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(g, &mut seq, &mut used) {
        Ok(Some(Ordering::from_sequence(&seq)?))
    } else {
        Ok(None)
    }
}

fn extend(g: &Graph, seq: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = g.n();
    if seq.len() == n {
        return true;
    }
    for w in 0..n {
        if used[w] || !placement_ok(g, seq, w) {
            continue;
        }
        used[w] = true;
        seq.push(w);
        if extend(g, seq, used) {
            return true;
        }
        seq.pop();
        used[w] = false;
    }
    false
}

/// Appending `w` keeps every closed neighbourhood contiguous within the
/// prefix: each placed neighbour `u` of `w` must see an unbroken run of its
/// closed neighbourhood up to the end, and `w`'s placed neighbours must be
/// exactly the last few positions.
fn placement_ok(g: &Graph, seq: &[usize], w: usize) -> bool {
    let Some(&last) = seq.last() else {
        return true;
    };
    let placed_nbrs = seq.iter().filter(|&&u| g.has_edge(u, w)).count();
    let tail = seq.iter().rev().take_while(|&&u| g.has_edge(u, w)).count();
    if tail != placed_nbrs {
        return false;
    }
    seq.iter()
        .filter(|&&u| g.has_edge(u, w))
        .all(|&u| u == last || g.has_edge(u, last))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn lexbfs_examples() {
        assert_eq!(
            lexbfs(&Graph::complete(3), &[0, 1, 2]).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(lexbfs(&Graph::empty(1), &[0]).unwrap(), vec![0]);
        assert_eq!(
            lexbfs(&Graph::path(4), &[0, 1, 2, 3]).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(lexbfs(&Graph::path(4), &[0, 1, 2]).is_err());
        assert!(lexbfs(&Graph::path(3), &[0, 0, 2]).is_err());
    }

    #[test]
    fn lexbfs_prefers_neighbours_of_earlier_vertices() {
        // star centre 0: after visiting leaf 3, centre 0 must come next
        let g = claw();
        let order = lexbfs(&g, &[3, 1, 2, 0]).unwrap();
        assert_eq!(order, vec![3, 0, 1, 2]);
    }

    #[test]
    fn recognize_examples() {
        let relabelled = Graph::from_edges(5, [(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        match recognize_unit_interval(&relabelled) {
            IntervalOrderResult::UnitInterval(o) => {
                let seq = o.sequence();
                assert!(
                    seq == vec![3, 0, 4, 1, 2] || seq == vec![2, 1, 4, 0, 3],
                    "{seq:?}"
                );
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            recognize_unit_interval(&claw()),
            IntervalOrderResult::NotUnitInterval
        );
        assert!(matches!(
            recognize_unit_interval(&Graph::complete(6)),
            IntervalOrderResult::UnitInterval(_)
        ));
        assert_eq!(
            recognize_unit_interval(&Graph::empty(2)),
            IntervalOrderResult::Disconnected
        );
    }

    #[test]
    fn complete_graph_orders_by_index() {
        let o = recognize_unit_interval(&Graph::complete(5));
        assert_eq!(o.ordering().unwrap(), &Ordering::identity(5));
    }

    #[test]
    fn robinsonian_examples() {
        let p = Graph::path(4);
        assert!(is_robinsonian_under(&p, &Ordering::identity(4)).unwrap());
        let swapped = Ordering::from_sequence(&[1, 0, 3, 2]).unwrap();
        assert!(!is_robinsonian_under(&p, &swapped).unwrap());
        let any = Ordering::from_sequence(&[2, 0, 3, 1]).unwrap();
        assert!(is_robinsonian_under(&Graph::complete(4), &any).unwrap());
        assert!(is_robinsonian_under(&p, &Ordering::identity(3)).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_interval_order(&claw()).unwrap(), None);
        let p5 = brute_force_interval_order(&Graph::path(5))
            .unwrap()
            .unwrap();
        assert!(is_robinsonian_under(&Graph::path(5), &p5).unwrap());
        assert_eq!(
            brute_force_interval_order(&Graph::empty(1)).unwrap(),
            Some(Ordering::identity(1))
        );
        assert!(brute_force_interval_order(&Graph::empty(10)).is_err());
    }

    #[test]
    fn cycle_is_rejected() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(
            recognize_unit_interval(&c5),
            IntervalOrderResult::NotUnitInterval
        );
        assert_eq!(brute_force_interval_order(&c5).unwrap(), None);
    }
}
