//! The coarse estimator: ordered subsamples of the threshold-square graph,
//! their global alignment, vote aggregation into a comparison function and a
//! local refinement pass.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::interval::{recognize_unit_interval, IntervalOrderResult};
use crate::ordering::Ordering;
pub use crate::ordering::{comparison_to_order, Comparison};
use crate::rng::{Purpose, Stream};

/// Subsample size, success count, alignment window and retry cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SketchParams {
    pub m: usize,
    pub t: usize,
    pub zeta: usize,
    pub max_attempts: usize,
    /// Set when the values come from the asymptotic formulas and are not
    /// expected to be practical.
    pub asymptotic: bool,
}

impl SketchParams {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.m < 3 || self.m > n {
            return Err(Error::InvalidParameter(format!(
                "m = {} must lie in [3, n = {n}]",
                self.m
            )));
        }
        if self.zeta == 0 || 2 * self.zeta >= self.m {
            return Err(Error::InvalidParameter(format!(
                "zeta = {} must satisfy 1 <= zeta < m/2",
                self.zeta
            )));
        }
        if self.t == 0 {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        if self.max_attempts < self.t {
            return Err(Error::InvalidParameter(format!(
                "max_attempts = {} is below t = {}",
                self.max_attempts, self.t
            )));
        }
        Ok(())
    }
}

fn largest_below_half(m: usize) -> usize {
    (m.saturating_sub(1) / 2).max(1)
}

/// `m = ln(n)^5`, `t = (n ln n)^2`, `zeta = 4 ln(n)^4`, with `m` clamped to
/// `[3, n]` and `zeta` to below `m / 2`.
pub fn paper_default_params(n: usize) -> SketchParams {
    let l = (n.max(3) as f64).ln();
    let m = (l.powi(5).round() as usize).clamp(3, n.max(3));
    let t = ((n as f64 * l).powi(2).round() as usize).max(1);
    let zeta = ((4.0 * l.powi(4)).round() as usize).clamp(1, largest_below_half(m));
    SketchParams {
        m,
        t,
        zeta,
        max_attempts: t.saturating_mul(20),
        asymptotic: true,
    }
}

/// Desk-scale parameters: `m = max(12, ln(n)^2 / 2)` (at most `n`),
/// `t = ceil((n/m)^2 ln n)` so each pair is co-sampled about `ln n` times,
/// `zeta = max(2, m/8)`.
pub fn desk_default_params(n: usize) -> SketchParams {
    let l = (n.max(3) as f64).ln();
    let m = ((0.5 * l * l).round() as usize).max(12).min(n.max(3));
    let t = ((n as f64 / m as f64).powi(2) * l).ceil().max(1.0) as usize;
    let zeta = ((m as f64 / 8.0).round() as usize)
        .max(2)
        .min(largest_below_half(m));
    SketchParams {
        m,
        t,
        zeta,
        max_attempts: t.saturating_mul(20),
        asymptotic: false,
    }
}

/// A subsample `S` (original labels) with an interval order of `H(S)`;
/// `order` ranks positions of `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SketchSample {
    pub vertices: Vec<usize>,
    pub order: Ordering,
}

impl SketchSample {
    /// Rank within the sample of the `i`-th sampled vertex.
    pub fn rank_at(&self, i: usize) -> usize {
        self.order.rank(i)
    }
}

/// Draws a uniform `m`-subset and orders it if the induced subgraph is a
/// connected unit interval graph.
pub fn ordered_subsample(h: &Graph, m: usize, rng: &mut Stream) -> Option<SketchSample> {
    if m == 0 || m > h.n() {
        return None;
    }
    let mut vertices = rng.sample_subset(h.n(), m);
    vertices.sort_unstable();
    let (sub, _) = h.induced_subgraph(&vertices).ok()?;
    match recognize_unit_interval(&sub) {
        IntervalOrderResult::UnitInterval(order) => Some(SketchSample { vertices, order }),
        _ => None,
    }
}

/// Orientation of each sample relative to the first sample of its component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub signs: Vec<i8>,
    pub consistent: bool,
    /// Constraints contradicting the first-found assignment.
    pub conflicts: usize,
}

/// Aligns samples by the overlap of their end windows: ranks `1..=zeta`
/// form the low window, ranks above `m - zeta` the high window. Two samples
/// sharing a vertex in same-side windows are aligned (+1); otherwise sharing
/// one in opposite windows makes them opposed (-1). Signs come from a
/// breadth-first two-colouring, first assignment winning.
pub fn global_order(samples: &[SketchSample], zeta: usize) -> Result<Alignment> {
    let t = samples.len();
    let Some(first) = samples.first() else {
        return Ok(Alignment {
            signs: Vec::new(),
            consistent: true,
            conflicts: 0,
        });
    };
    let m = first.vertices.len();
    if samples.iter().any(|s| s.vertices.len() != m) {
        return Err(Error::InvalidParameter("samples differ in size".into()));
    }
    if 2 * zeta >= m {
        return Err(Error::InvalidParameter(format!(
            "zeta = {zeta} must be below m/2"
        )));
    }

    // vertex -> occurrences (sample, high window?)
    let n = samples
        .iter()
        .flat_map(|s| s.vertices.iter())
        .max()
        .map_or(0, |v| v + 1);
    let mut windows: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (j, s) in samples.iter().enumerate() {
        for (i, &v) in s.vertices.iter().enumerate() {
            let r = s.rank_at(i);
            if r <= zeta {
                windows[v].push((j, false));
            } else if r > m - zeta {
                windows[v].push((j, true));
            }
        }
    }
    // bit 0: same-side overlap, bit 1: opposite-side overlap
    let mut relation: std::collections::BTreeMap<(usize, usize), u8> = Default::default();
    for occ in &windows {
        for (a, &(j, sj)) in occ.iter().enumerate() {
            for &(k, sk) in &occ[a + 1..] {
                if j == k {
                    continue;
                }
                let key = (j.min(k), j.max(k));
                *relation.entry(key).or_default() |= if sj == sk { 1 } else { 2 };
            }
        }
    }
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); t];
    for (&(j, k), &bits) in &relation {
        let h = if bits & 1 != 0 { 1 } else { -1 };
        adj[j].push((k, h));
        adj[k].push((j, h));
    }

    let mut signs = vec![0i8; t];
    let mut conflicts = 0;
    let mut queue = std::collections::VecDeque::new();
    for root in 0..t {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        queue.push_back(root);
        while let Some(j) = queue.pop_front() {
            for &(k, h) in &adj[j] {
                let want = h * signs[j];
                if signs[k] == 0 {
                    signs[k] = want;
                    queue.push_back(k);
                } else if signs[k] != want {
                    conflicts += 1;
                }
            }
        }
    }
    // each contradicted edge is seen from both endpoints
    let conflicts = conflicts / 2;
    Ok(Alignment {
        signs,
        consistent: conflicts == 0,
        conflicts,
    })
}

/// Result of [`sparse_sketch`].
#[derive(Debug, Clone)]
pub struct SketchOutput {
    pub comparison: Comparison,
    pub alignment: Alignment,
    /// Attempts consumed until the `t`-th success.
    pub attempts: usize,
    /// Pairs never sampled together (diagnostic).
    pub uncovered_pairs: usize,
}

const ATTEMPT_BATCH: usize = 256;

/// Collects `t` ordered subsamples (attempt `a` uses its own stream, so the
/// outcome does not depend on scheduling), aligns them, flips the samples
/// with sign -1 and returns the sign of the accumulated pairwise votes.
pub fn sparse_sketch(h: &Graph, params: &SketchParams, seed: u64) -> Result<SketchOutput> {
    let n = h.n();
    params.validate(n)?;
    let mut samples: Vec<SketchSample> = Vec::with_capacity(params.t);
    let mut next = 0;
    let mut attempts = 0;
    while samples.len() < params.t && next < params.max_attempts {
        let end = (next + ATTEMPT_BATCH).min(params.max_attempts);
        let batch: Vec<(usize, Option<SketchSample>)> = (next..end)
            .into_par_iter()
            .map(|a| {
                let mut rng = Stream::new(seed, Purpose::Subsample, a as u64);
                (a, ordered_subsample(h, params.m, &mut rng))
            })
            .collect();
        for (a, s) in batch {
            if samples.len() == params.t {
                break;
            }
            if let Some(s) = s {
                samples.push(s);
                attempts = a + 1;
            }
        }
        next = end;
    }
    if samples.len() < params.t {
        return Err(Error::BudgetExhausted {
            successes: samples.len(),
            required: params.t,
            attempts: params.max_attempts,
        });
    }

    let alignment = global_order(&samples, params.zeta)?;
    let m = params.m;
    let mut votes = vec![0i32; n * n];
    let mut seen = vec![false; n * n];
    for (s, &sign) in samples.iter().zip(&alignment.signs) {
        let eff: Vec<usize> = (0..m)
            .map(|i| {
                if sign < 0 {
                    m + 1 - s.rank_at(i)
                } else {
                    s.rank_at(i)
                }
            })
            .collect();
        for a in 0..m {
            let u = s.vertices[a];
            for b in 0..m {
                if a == b {
                    continue;
                }
                let v = s.vertices[b];
                votes[u * n + v] += if eff[a] < eff[b] { 1 } else { -1 };
                seen[u * n + v] = true;
            }
        }
    }
    let vals = votes.iter().map(|c| c.signum() as i8).collect();
    let uncovered_pairs = (0..n)
        .map(|u| (u + 1..n).filter(|&v| !seen[u * n + v]).count())
        .sum();
    Ok(SketchOutput {
        comparison: Comparison::from_raw(n, vals),
        alignment,
        attempts,
        uncovered_pairs,
    })
}

/// One pass of neighbourhood-difference voting. For `u < v`,
/// `D(u, v) = Σ F(x, v)` over `x ∈ N(u) \ N(v)`; the larger of `|D(u, v)|`
/// and `|D(v, u)|` decides `F'(u, v)`, with ties going to the second branch.
/// `F'(v, u) = -F'(u, v)`.
pub fn local_refinement(h: &Graph, f: &Comparison) -> Result<Comparison> {
    let n = h.n();
    if f.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: f.n(),
        });
    }
    // ahead[v] = {x : F(x, v) = 1}, behind[v] = {x : F(x, v) = -1}
    let (ahead, behind): (Vec<BitSet>, Vec<BitSet>) = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut a = BitSet::new(n);
            let mut b = BitSet::new(n);
            for x in 0..n {
                match f.get(x, v) {
                    1 => a.insert(x),
                    -1 => b.insert(x),
                    _ => {}
                }
            }
            (a, b)
        })
        .unzip();
    let d = |u: usize, v: usize| -> i64 {
        let (nu, nv) = (h.neighbors(u).words(), h.neighbors(v).words());
        let (a, b) = (ahead[v].words(), behind[v].words());
        let mut total = 0i64;
        for w in 0..nu.len() {
            let only_u = nu[w] & !nv[w];
            total += (only_u & a[w]).count_ones() as i64 - (only_u & b[w]).count_ones() as i64;
        }
        total
    };
    let rows: Vec<Vec<i8>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut row = vec![0i8; n];
            for (v, slot) in row.iter_mut().enumerate().skip(u + 1) {
                let (duv, dvu) = (d(u, v), d(v, u));
                *slot = if duv.abs() > dvu.abs() {
                    if duv > 0 {
                        1
                    } else {
                        -1
                    }
                } else if dvu < 0 {
                    1
                } else {
                    -1
                };
            }
            row
        })
        .collect();
    let mut out = Comparison::zeros(n);
    for (u, row) in rows.iter().enumerate() {
        for (v, &x) in row.iter().enumerate().skip(u + 1) {
            out.set(u, v, x);
        }
    }
    Ok(out)
}

/// Intermediate results of [`main_estimate_detailed`].
#[derive(Debug, Clone)]
pub struct MainEstimate {
    pub ordering: Ordering,
    pub sketch: SketchOutput,
    pub refined: Comparison,
}

/// Threshold-square graph, sketch, local refinement, ordering.
pub fn main_estimate(g: &Graph, alpha: f64, params: &SketchParams, seed: u64) -> Result<Ordering> {
    Ok(main_estimate_detailed(g, alpha, params, seed)?.ordering)
}

pub fn main_estimate_detailed(
    g: &Graph,
    alpha: f64,
    params: &SketchParams,
    seed: u64,
) -> Result<MainEstimate> {
    let h = g.threshold_square(alpha)?;
    let sketch = sparse_sketch(&h, params, seed)?;
    let refined = local_refinement(&h, &sketch.comparison)?;
    Ok(MainEstimate {
        ordering: comparison_to_order(&refined),
        sketch,
        refined,
    })
}
