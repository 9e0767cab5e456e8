//! Iterative refinement: a nested ladder of vertex samples `V_1 ⊂ ... ⊂ V_k = V`,
//! an initial ordering of `V_1`, and repeated extension of the current
//! ordering to the next level using rank-extreme neighbourhoods.
//!
//! Orderings of a vertex subset are indexed by position in the ascending list
//! of that subset's vertices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BitSet, Graph};
use crate::ordering::{comparison_to_order, Comparison, Ordering};
use crate::rng::{derive_key, uniform_at, Purpose};
use crate::sketch::{desk_default_params, main_estimate};

/// How the per-stage margins are derived from `(p_i, d_i, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdRule {
    /// `C1 = ⌈p d n ln⁴n⌉`, `C2 = ⌊√(p d n) ln⁶n⌋`, `C3 = ⌊√(p d n) ln²n⌋`.
    Asymptotic,
    /// Logarithmic factors dropped, margins a few binomial deviations wide:
    /// `C1 = ⌈p d n⌉`, `C2 = ⌊2√(p d n)⌋`, `C3 = ⌊0.75 √(p d n)⌋`.
    #[default]
    Desk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageThresholds {
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefineSchedule {
    pub epsilon: f64,
    pub n: usize,
    pub k: usize,
    pub beta: f64,
    /// Sampling rates `p_1 < ... < p_k = 1`.
    pub p: Vec<f64>,
    /// Precision levels `d_1, ..., d_k`.
    pub d: Vec<f64>,
    /// Thresholds for the refinement from stage `i` to `i + 1`, `k - 1` entries.
    pub thresholds: Vec<StageThresholds>,
    pub rule: ThresholdRule,
    /// Some threshold had to be clamped into `[1, n]`.
    pub clamped: bool,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "epsilon",
            value: epsilon,
            range: "(0, 0.5)",
        })
    }
}

/// `k = ⌊-log₂ ε⌋ + 1`, `β = (ε - 2^-k) / k`, `p_i = n^{-(k-i)β}`,
/// `d_1 = n^{-(1 - kβ)/2}`, `d_{i+1} = √(d_i / (p_i n)) ln n`, with margins
/// from [`ThresholdRule::Asymptotic`].
pub fn build_schedule(epsilon: f64, n: usize) -> Result<RefineSchedule> {
    build_schedule_with(epsilon, n, ThresholdRule::Asymptotic)
}

pub fn build_schedule_with(epsilon: f64, n: usize, rule: ThresholdRule) -> Result<RefineSchedule> {
    check_epsilon(epsilon)?;
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let nf = n as f64;
    let ln = nf.ln();
    let k = (-epsilon.log2()).floor() as usize + 1;
    let beta = (epsilon - 0.5f64.powi(k as i32)) / k as f64;
    let p: Vec<f64> = (1..=k).map(|i| nf.powf(-((k - i) as f64) * beta)).collect();
    let mut d = vec![nf.powf(-0.5 * (1.0 - k as f64 * beta))];
    for i in 0..k - 1 {
        d.push((d[i] / (p[i] * nf)).sqrt() * ln);
    }
    let mut clamped = false;
    let mut clamp = |x: f64| -> usize {
        let c = x.clamp(1.0, nf);
        if c != x {
            clamped = true;
        }
        c as usize
    };
    let thresholds = (0..k - 1)
        .map(|i| {
            let pdn = p[i] * d[i] * nf;
            match rule {
                ThresholdRule::Asymptotic => StageThresholds {
                    c1: clamp((pdn * ln.powi(4)).ceil()),
                    c2: clamp((pdn.sqrt() * ln.powi(6)).floor()),
                    c3: clamp((pdn.sqrt() * ln.powi(2)).floor()),
                },
                ThresholdRule::Desk => StageThresholds {
                    c1: clamp(pdn.ceil()),
                    c2: clamp((2.0 * pdn.sqrt()).floor()),
                    c3: clamp((0.75 * pdn.sqrt()).floor()),
                },
            }
        })
        .collect();
    Ok(RefineSchedule {
        epsilon,
        n,
        k,
        beta,
        p,
        d,
        thresholds,
        rule,
        clamped,
    })
}

/// The `c` highest- and `c` lowest-ranked members of `s` under `sigma`
/// (`sigma` indexed by vertex). Returned as `(R, L)`, each sorted by vertex.
pub fn rank_extremes(s: &[usize], sigma: &Ordering, c: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if c > s.len() {
        return Err(Error::InvalidParameter(format!(
            "c = {c} exceeds the set size {}",
            s.len()
        )));
    }
    let mut by_rank = s.to_vec();
    by_rank.sort_by_key(|&v| sigma.rank(v));
    let mut low = by_rank[..c].to_vec();
    let mut high = by_rank[by_rank.len() - c..].to_vec();
    low.sort_unstable();
    high.sort_unstable();
    Ok((high, low))
}

/// What to do when a pair passes the margin test in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Contradiction {
    /// Leave the pair undecided.
    #[default]
    Abstain,
    /// Take the first test's answer, as the if/else chain would.
    PreferFirst,
}

#[derive(Debug, Clone)]
pub struct RefineOutput {
    /// Ordering of `v2`, indexed by position in `v2`.
    pub ordering: Ordering,
    /// Vertices of `v2` with no neighbour in `v2 \ v1`.
    pub degenerate_vertices: usize,
    /// Pairs where both directions passed a margin test.
    pub contradictions: usize,
    /// The pairwise decisions the ordering was built from, over `v2` positions.
    pub comparison: Comparison,
    /// `v2 \ v1`, ascending, its first-phase decisions and ordering.
    pub fresh: Vec<usize>,
    pub fresh_comparison: Comparison,
    pub fresh_order: Ordering,
}

fn check_subset(n: usize, set: &[usize], name: &str) -> Result<()> {
    if set.windows(2).any(|w| w[0] >= w[1]) || set.last().is_some_and(|&v| v >= n) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be strictly increasing vertex labels below {n}"
        )));
    }
    Ok(())
}

/// Position of the `c`-th highest set bit (1-based `c`) in `words`.
fn nth_highest(words: &[u64], c: usize) -> usize {
    let mut left = c;
    for w in (0..words.len()).rev() {
        let ones = words[w].count_ones() as usize;
        if ones >= left {
            let mut x = words[w];
            for _ in 1..left {
                x &= !(1u64 << (63 - x.leading_zeros()));
            }
            return w * 64 + (63 - x.leading_zeros() as usize);
        }
        left -= ones;
    }
    0
}

/// Position of the `c`-th lowest set bit (1-based `c`) in `words`.
fn nth_lowest(words: &[u64], c: usize) -> usize {
    let mut left = c;
    for (w, &word) in words.iter().enumerate() {
        let ones = word.count_ones() as usize;
        if ones >= left {
            let mut x = word;
            for _ in 1..left {
                x &= x - 1;
            }
            return w * 64 + x.trailing_zeros() as usize;
        }
        left -= ones;
    }
    0
}

/// Set bits of `words` at positions `>= from`.
fn count_from(words: &[u64], from: usize) -> usize {
    let (w0, b0) = (from / 64, from % 64);
    if w0 >= words.len() {
        return 0;
    }
    let mut total = (words[w0] >> b0).count_ones() as usize;
    for &w in &words[w0 + 1..] {
        total += w.count_ones() as usize;
    }
    total
}

/// Set bits of `words` at positions `<= to`.
fn count_to(words: &[u64], to: usize) -> usize {
    let (w0, b0) = (to / 64, to % 64);
    let mut total: usize = words[..w0].iter().map(|w| w.count_ones() as usize).sum();
    let mask = if b0 == 63 {
        u64::MAX
    } else {
        (1u64 << (b0 + 1)) - 1
    };
    total += (words[w0] & mask).count_ones() as usize;
    total
}

fn decide(fwd: bool, bwd: bool, policy: Contradiction, contradictions: &mut usize) -> i8 {
    match (fwd, bwd) {
        (true, false) => 1,
        (false, true) => -1,
        (true, true) => {
            *contradictions += 1;
            match policy {
                Contradiction::Abstain => 0,
                Contradiction::PreferFirst => 1,
            }
        }
        (false, false) => 0,
    }
}

/// Extends an ordering of `v1` to `v2 ⊇ v1`.
///
/// First, vertices of `D = v2 \ v1` are compared pairwise: for `i, j ∈ D`,
/// `R` and `L` are the `c1` highest and lowest members of
/// `v1 ∩ (N(i) ∪ N(j))` under `sigma1` (all of it if smaller), and `j` is
/// placed after `i` when it has more than `c2` extra neighbours in `R`, or
/// `i` more than `c2` extra in `L`. This orders `D`. Then every vertex gets
/// `t` and `b`, the highest and lowest rank of its neighbours in `D`, and the
/// pairs involving `v1` are decided by `t` and `b` differences above `c3`.
pub fn refine(
    g: &Graph,
    v1: &[usize],
    v2: &[usize],
    sigma1: &Ordering,
    thresholds: StageThresholds,
    policy: Contradiction,
) -> Result<RefineOutput> {
    let n = g.n();
    check_subset(n, v1, "v1")?;
    check_subset(n, v2, "v2")?;
    if sigma1.n() != v1.len() {
        return Err(Error::SizeMismatch {
            expected: v1.len(),
            got: sigma1.n(),
        });
    }
    let StageThresholds { c1, c2, c3 } = thresholds;
    if c1 == 0 || c2 == 0 || c3 == 0 {
        return Err(Error::InvalidParameter(
            "thresholds must be at least 1".into(),
        ));
    }
    let mut in_v1 = vec![false; n];
    for &v in v1 {
        in_v1[v] = true;
    }
    let mut pos2 = vec![usize::MAX; n];
    for (i, &v) in v2.iter().enumerate() {
        pos2[v] = i;
    }
    if v1.iter().any(|&v| pos2[v] == usize::MAX) {
        return Err(Error::InvalidParameter("v1 must be a subset of v2".into()));
    }
    let fresh: Vec<usize> = v2.iter().copied().filter(|&v| !in_v1[v]).collect();
    let n2 = v2.len();
    if fresh.is_empty() {
        let mut comparison = Comparison::zeros(n2);
        let f1 = Comparison::from_ordering(sigma1);
        for a in 0..n2 {
            for b in a + 1..n2 {
                comparison.set(a, b, f1.get(a, b));
            }
        }
        return Ok(RefineOutput {
            ordering: sigma1.clone(),
            degenerate_vertices: 0,
            contradictions: 0,
            comparison,
            fresh: Vec::new(),
            fresh_comparison: Comparison::zeros(0),
            fresh_order: Ordering::identity(0),
        });
    }

    // phase 1: neighbours in v1 as bit positions in sigma1 order (0 = lowest rank)
    let n1 = v1.len();
    let mut rank_pos = vec![usize::MAX; n];
    for (i, &v) in v1.iter().enumerate() {
        rank_pos[v] = sigma1.rank(i) - 1;
    }
    let nb1: Vec<BitSet> = fresh
        .par_iter()
        .map(|&x| {
            BitSet::from_members(
                n1,
                g.neighbors(x)
                    .iter()
                    .filter(|&u| in_v1[u])
                    .map(|u| rank_pos[u]),
            )
        })
        .collect();
    let nd = fresh.len();
    let phase1: Vec<(Vec<i8>, usize)> = (0..nd)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0i8; nd];
            let mut contradictions = 0;
            let mut union = vec![0u64; nb1[a].words().len()];
            for b in a + 1..nd {
                let (wa, wb) = (nb1[a].words(), nb1[b].words());
                for w in 0..union.len() {
                    union[w] = wa[w] | wb[w];
                }
                let total: usize = union.iter().map(|w| w.count_ones() as usize).sum();
                if total == 0 {
                    continue;
                }
                let c = c1.min(total);
                let hi_cut = nth_highest(&union, c);
                let lo_cut = nth_lowest(&union, c);
                let (ra, rb) = (count_from(wa, hi_cut), count_from(wb, hi_cut));
                let (la, lb) = (count_to(wa, lo_cut), count_to(wb, lo_cut));
                let fwd = rb > ra + c2 || la > lb + c2;
                let bwd = ra > rb + c2 || lb > la + c2;
                row[b] = decide(fwd, bwd, policy, &mut contradictions);
            }
            (row, contradictions)
        })
        .collect();
    let mut contradictions = 0;
    let mut f_fresh = Comparison::zeros(nd);
    for (a, (row, c)) in phase1.iter().enumerate() {
        contradictions += c;
        for (b, &x) in row.iter().enumerate().skip(a + 1) {
            if x != 0 {
                f_fresh.set(a, b, x);
            }
        }
    }
    let sigma_fresh = comparison_to_order(&f_fresh);

    // phase 2
    let mut fresh_rank = vec![0usize; n];
    for (a, &v) in fresh.iter().enumerate() {
        fresh_rank[v] = sigma_fresh.rank(a);
    }
    let mut degenerate = 0;
    let tb: Vec<(usize, usize)> = v2
        .iter()
        .map(|&v| {
            let ranks = g
                .neighbors(v)
                .iter()
                .filter(|&u| fresh_rank[u] > 0)
                .map(|u| fresh_rank[u]);
            let (t, b) = ranks.fold((0, nd + 1), |(t, b), r| (t.max(r), b.min(r)));
            if t == 0 {
                degenerate += 1;
            }
            (t, b)
        })
        .collect();
    let c3 = c3 as isize;
    let phase2: Vec<(Vec<i8>, usize)> = (0..n2)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0i8; n2];
            let mut contradictions = 0;
            for b in a + 1..n2 {
                if !in_v1[v2[a]] && !in_v1[v2[b]] {
                    continue;
                }
                // orient as (i in v1, j in v2)
                let (i, j, flip) = if in_v1[v2[a]] { (a, b, 1) } else { (b, a, -1) };
                let (ti, bi) = (tb[i].0 as isize, tb[i].1 as isize);
                let (tj, bj) = (tb[j].0 as isize, tb[j].1 as isize);
                let fwd = tj - ti > c3 || bj - bi > c3;
                let bwd = ti - tj > c3 || bi - bj > c3;
                row[b] = flip * decide(fwd, bwd, policy, &mut contradictions);
            }
            (row, contradictions)
        })
        .collect();
    let mut f2 = Comparison::zeros(n2);
    for (a, (row, c)) in phase2.iter().enumerate() {
        contradictions += c;
        for (b, &x) in row.iter().enumerate().skip(a + 1) {
            if x != 0 {
                f2.set(a, b, x);
            }
        }
    }
    for (a, &va) in fresh.iter().enumerate() {
        for (b, &vb) in fresh.iter().enumerate().skip(a + 1) {
            let value = f_fresh.get(a, b);
            if value != 0 {
                f2.set(pos2[va], pos2[vb], value);
            }
        }
    }
    Ok(RefineOutput {
        ordering: comparison_to_order(&f2),
        degenerate_vertices: degenerate,
        contradictions,
        comparison: f2,
        fresh,
        fresh_comparison: f_fresh,
        fresh_order: sigma_fresh,
    })
}

/// Supplies the ordering of the first-level sample.
pub trait InitialOrderer: Sync {
    /// `sub` is the subgraph induced on `vertices` (ascending original labels);
    /// the result is indexed by position in `vertices`.
    fn order(&self, sub: &Graph, vertices: &[usize], seed: u64) -> Result<Ordering>;
}

/// The coarse estimator with desk-scale sketch parameters.
#[derive(Debug, Clone, Copy)]
pub struct MainEstimateHook {
    pub alpha: f64,
}

impl InitialOrderer for MainEstimateHook {
    fn order(&self, sub: &Graph, _vertices: &[usize], seed: u64) -> Result<Ordering> {
        let params = desk_default_params(sub.n());
        main_estimate(sub, self.alpha, &params, derive_key(seed, Purpose::Hook, 0))
    }
}

/// A fixed ordering of all vertices, restricted to whatever sample is asked for.
#[derive(Debug, Clone)]
pub struct FixedOrderHook {
    pub full: Ordering,
}

impl InitialOrderer for FixedOrderHook {
    fn order(&self, _sub: &Graph, vertices: &[usize], _seed: u64) -> Result<Ordering> {
        if vertices.iter().any(|&v| v >= self.full.n()) {
            return Err(Error::SizeMismatch {
                expected: self.full.n(),
                got: vertices.len(),
            });
        }
        let mut seq: Vec<usize> = (0..vertices.len()).collect();
        seq.sort_by_key(|&i| self.full.rank(vertices[i]));
        Ordering::from_sequence(&seq)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IterativeOptions {
    pub rule: ThresholdRule,
    pub contradiction: Contradiction,
}

#[derive(Debug, Clone)]
pub struct IterativeOutput {
    pub ordering: Ordering,
    pub schedule: RefineSchedule,
    /// `V_1, ..., V_k`, each ascending.
    pub levels: Vec<Vec<usize>>,
    /// Ordering of each level, indexed by position in that level.
    pub stage_orders: Vec<Ordering>,
    /// Per refinement step.
    pub stage_reports: Vec<RefineOutput>,
}

/// The nested levels `V_i = {j : B_j <= p_i}` from shared uniforms `B_j`.
pub fn stage_levels(schedule: &RefineSchedule, seed: u64) -> Vec<Vec<usize>> {
    let key = derive_key(seed, Purpose::StageMarks, 0);
    let marks: Vec<f64> = (0..schedule.n).map(|j| uniform_at(key, j as u64)).collect();
    schedule
        .p
        .iter()
        .map(|&p| (0..schedule.n).filter(|&j| marks[j] <= p).collect())
        .collect()
}

pub fn iterative_estimate(
    g: &Graph,
    epsilon: f64,
    initial: &dyn InitialOrderer,
    seed: u64,
    options: IterativeOptions,
) -> Result<IterativeOutput> {
    check_epsilon(epsilon)?;
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let schedule = build_schedule_with(epsilon, n, options.rule)?;
    let mut levels = stage_levels(&schedule, seed);
    // p_k = 1, so the last level is everything
    *levels.last_mut().unwrap() = (0..n).collect();
    for (i, level) in levels.iter().enumerate() {
        if level.len() < 3 {
            return Err(Error::DegenerateStage {
                stage: i + 1,
                size: level.len(),
            });
        }
    }
    let (sub, _) = g.induced_subgraph(&levels[0])?;
    let mut current = initial.order(&sub, &levels[0], seed)?;
    if current.n() != levels[0].len() {
        return Err(Error::SizeMismatch {
            expected: levels[0].len(),
            got: current.n(),
        });
    }
    let mut stage_orders = vec![current.clone()];
    let mut stage_reports = Vec::with_capacity(schedule.k - 1);
    for i in 0..schedule.k - 1 {
        let out = refine(
            g,
            &levels[i],
            &levels[i + 1],
            &current,
            schedule.thresholds[i],
            options.contradiction,
        )?;
        current = out.ordering.clone();
        stage_orders.push(current.clone());
        stage_reports.push(out);
    }
    Ok(IterativeOutput {
        ordering: current,
        schedule,
        levels,
        stage_orders,
        stage_reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_examples() {
        let s = build_schedule(0.45, 1000).unwrap();
        assert_eq!(s.k, 2);
        assert!((s.beta - 0.1).abs() < 1e-12);
        assert_eq!(s.p[1], 1.0);
        let s = build_schedule(0.25, 1000).unwrap();
        assert_eq!(s.k, 3);
        assert!((s.beta - 0.125 / 3.0).abs() < 1e-12);
        let s = build_schedule(0.49, 5000).unwrap();
        assert_eq!(s.k, 2);
        assert!((s.p[0] - 5000f64.powf(-0.12)).abs() < 1e-12);
        assert_eq!(s.thresholds.len(), 1);
    }

    #[test]
    fn schedule_rejects_bad_epsilon() {
        assert!(matches!(
            build_schedule(0.6, 100),
            Err(Error::Domain { .. })
        ));
        assert!(build_schedule(0.0, 100).is_err());
        assert!(build_schedule(0.5, 100).is_err());
        assert!(build_schedule(0.3, 2).is_err());
    }

    #[test]
    fn asymptotic_thresholds_clamp_at_desk_scale() {
        let s = build_schedule(0.45, 1000).unwrap();
        assert!(s.clamped);
        assert_eq!(s.thresholds[0].c1, 1000);
        assert_eq!(s.thresholds[0].c2, 1000);
    }

    #[test]
    fn desk_thresholds_at_thousand() {
        let s = build_schedule_with(0.45, 1000, ThresholdRule::Desk).unwrap();
        assert_eq!(
            s.thresholds[0],
            StageThresholds {
                c1: 32,
                c2: 11,
                c3: 4
            }
        );
        assert!(!s.clamped);
    }

    #[test]
    fn rank_extremes_examples() {
        let sigma = Ordering::identity(10);
        assert_eq!(
            rank_extremes(&[0, 1, 2], &sigma, 1).unwrap(),
            (vec![2], vec![0])
        );
        assert_eq!(
            rank_extremes(&[4, 7, 9], &sigma, 3).unwrap(),
            (vec![4, 7, 9], vec![4, 7, 9])
        );
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(
            rank_extremes(&all, &sigma, 3).unwrap(),
            (vec![7, 8, 9], vec![0, 1, 2])
        );
        assert!(rank_extremes(&[1, 2], &sigma, 3).is_err());
    }

    #[test]
    fn bit_helpers() {
        let words = [0b1011u64, 1 << 5];
        assert_eq!(nth_highest(&words, 1), 69);
        assert_eq!(nth_highest(&words, 2), 3);
        assert_eq!(nth_highest(&words, 4), 0);
        assert_eq!(nth_lowest(&words, 1), 0);
        assert_eq!(nth_lowest(&words, 3), 3);
        assert_eq!(nth_lowest(&words, 4), 69);
        assert_eq!(count_from(&words, 3), 2);
        assert_eq!(count_to(&words, 1), 2);
        assert_eq!(count_to(&words, 69), 4);
    }

    #[test]
    fn empty_difference_returns_sigma1() {
        let g = Graph::path(5);
        let v: Vec<usize> = (0..5).collect();
        let sigma = Ordering::from_ranks(vec![2, 1, 3, 5, 4]).unwrap();
        let t = StageThresholds {
            c1: 2,
            c2: 1,
            c3: 1,
        };
        let out = refine(&g, &v, &v, &sigma, t, Contradiction::Abstain).unwrap();
        assert_eq!(out.ordering, sigma);
    }

    #[test]
    fn isolated_new_vertices_tie_break_by_index() {
        // 0-1-2 path in v1; 3 and 4 isolated and new
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let t = StageThresholds {
            c1: 2,
            c2: 1,
            c3: 1,
        };
        let out = refine(
            &g,
            &[0, 1, 2],
            &[0, 1, 2, 3, 4],
            &Ordering::identity(3),
            t,
            Contradiction::Abstain,
        )
        .unwrap();
        assert_eq!(out.comparison.get(3, 4), 0);
        assert!(out.ordering.before(3, 4));
        assert_eq!(out.degenerate_vertices, 5);
    }

    #[test]
    fn refine_validates_inputs() {
        let g = Graph::path(5);
        let t = StageThresholds {
            c1: 2,
            c2: 1,
            c3: 1,
        };
        assert!(refine(
            &g,
            &[0, 1],
            &[0, 2, 3],
            &Ordering::identity(2),
            t,
            Contradiction::Abstain
        )
        .is_err());
        assert!(refine(
            &g,
            &[0, 1],
            &[0, 1, 2],
            &Ordering::identity(3),
            t,
            Contradiction::Abstain
        )
        .is_err());
        let zero = StageThresholds {
            c1: 0,
            c2: 1,
            c3: 1,
        };
        assert!(refine(
            &g,
            &[0, 1],
            &[0, 1, 2],
            &Ordering::identity(2),
            zero,
            Contradiction::Abstain
        )
        .is_err());
    }

    #[test]
    fn fixed_hook_restricts() {
        let hook = FixedOrderHook {
            full: Ordering::from_ranks(vec![5, 4, 3, 2, 1]).unwrap(),
        };
        let o = hook.order(&Graph::empty(3), &[0, 2, 4], 0).unwrap();
        assert_eq!(o.ranks(), &[3, 2, 1]);
    }

    #[test]
    fn levels_are_nested() {
        let s = build_schedule(0.2, 2000).unwrap();
        let levels = stage_levels(&s, 11);
        for w in levels.windows(2) {
            assert!(w[0].iter().all(|v| w[1].binary_search(v).is_ok()));
        }
        assert_eq!(levels.last().unwrap().len(), 2000);
    }
}
