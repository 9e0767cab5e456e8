//! Data-driven checks for choosing the threshold `alpha`.
//!
//! Each candidate is scored by the fraction of random subsamples of the
//! threshold-square graph that are connected unit interval graphs, together
//! with goodness, connectivity, separation and split statistics computed from
//! the common-neighbour counts. All of these are necessary conditions only.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitSet, CommonNeighborMatrix, Graph};
use crate::ordering::Comparison;
use crate::rng::{Purpose, Stream};
use crate::sketch::{desk_default_params, ordered_subsample};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    /// Subsamples drawn per candidate.
    pub trials: usize,
    /// Subsample size.
    pub m: usize,
    /// Slack for the connectivity and split tests.
    pub epsilon: f64,
    /// Minimum subsample success rate for `pig_pass`.
    pub pig_threshold: f64,
    /// Largest acceptable `A` in the goodness test.
    pub goodness_a: f64,
    /// Quantiles of `|cn / (n - 2) - alpha|` used as test widths.
    pub delta_quantiles: Vec<f64>,
    /// Smallest acceptable typical slope of the sorted `s_v` vectors.
    pub separation_b: f64,
    /// Vertices `v` for which `s_v` is computed.
    pub separation_samples: usize,
    pub seed: u64,
}

impl ScanConfig {
    pub fn for_size(n: usize, seed: u64) -> Self {
        Self {
            trials: 200,
            m: desk_default_params(n).m.min(n),
            epsilon: 0.05,
            pig_threshold: 0.8,
            goodness_a: 25.0,
            delta_quantiles: vec![0.01, 0.02, 0.05],
            separation_b: 0.15,
            separation_samples: 16,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodnessProbe {
    pub delta: f64,
    /// `max_v |{w : |alpha - cn(v, w) / (n - 2)| <= delta}| / (delta n)`.
    pub a_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaDiagnostics {
    pub alpha: f64,
    pub h_edges: usize,
    pub pig_success_rate: f64,
    pub pig_pass: bool,
    pub goodness_pass: bool,
    pub goodness: Vec<GoodnessProbe>,
    pub connectivity_pass: bool,
    /// `min_v |{w : cn(v, w) >= alpha (n - 2)}| / n`.
    pub connectivity_eps: f64,
    pub separation_pass: bool,
    /// Median over sampled `v` of the smallest slope of sorted `s_v`.
    pub separation_typical: f64,
    pub separation_worst: f64,
    pub split_pass: bool,
    /// Unordered pairs whose threshold-square neighbourhoods are disjoint.
    pub split_pairs: usize,
    pub split_target: f64,
}

impl AlphaDiagnostics {
    pub const CSV_HEADER: [&'static str; 15] = [
        "alpha",
        "h_edges",
        "pig_success_rate",
        "pig_pass",
        "goodness_pass",
        "goodness",
        "connectivity_pass",
        "connectivity_eps",
        "separation_pass",
        "separation_typical",
        "separation_worst",
        "split_pass",
        "split_pairs",
        "split_target",
        "sharp_boundary_flag",
    ];

    /// One CSV record; the sharp-boundary column is left empty because it
    /// needs a refinement pass and is filled in by the caller when available.
    pub fn csv_record(&self, sharp_boundary: Option<bool>) -> Vec<String> {
        let goodness = self
            .goodness
            .iter()
            .map(|p| format!("{}:{}", p.delta, p.a_hat))
            .collect::<Vec<_>>()
            .join(";");
        vec![
            self.alpha.to_string(),
            self.h_edges.to_string(),
            self.pig_success_rate.to_string(),
            self.pig_pass.to_string(),
            self.goodness_pass.to_string(),
            goodness,
            self.connectivity_pass.to_string(),
            self.connectivity_eps.to_string(),
            self.separation_pass.to_string(),
            self.separation_typical.to_string(),
            self.separation_worst.to_string(),
            self.split_pass.to_string(),
            self.split_pairs.to_string(),
            self.split_target.to_string(),
            sharp_boundary.map(|b| b.to_string()).unwrap_or_default(),
        ]
    }
}

fn validate(n: usize, candidates: &[f64], config: &ScanConfig) -> Result<()> {
    if candidates.is_empty() {
        return Err(Error::InvalidParameter("candidate grid is empty".into()));
    }
    if let Some(&a) = candidates.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {a} must lie in (0, 1)"
        )));
    }
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    if config.m < 3 || config.m > n {
        return Err(Error::InvalidParameter(format!(
            "m = {} must lie in [3, {n}]",
            config.m
        )));
    }
    if !(config.epsilon > 0.0 && config.epsilon < 1.0) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1)".into()));
    }
    if config
        .delta_quantiles
        .iter()
        .any(|&q| !(q > 0.0 && q < 1.0))
    {
        return Err(Error::InvalidParameter(
            "delta quantiles must lie in (0, 1)".into(),
        ));
    }
    Ok(())
}

pub fn scan_alpha(
    g: &Graph,
    candidates: &[f64],
    config: &ScanConfig,
) -> Result<Vec<AlphaDiagnostics>> {
    let n = g.n();
    validate(n, candidates, config)?;
    let cn = g.common_neighbors();
    let sep_vertices = {
        let k = config.separation_samples.min(n);
        let mut rng = Stream::new(config.seed, Purpose::AlphaScan, u64::MAX);
        let mut vs = rng.sample_subset(n, k);
        vs.sort_unstable();
        vs
    };
    Ok(candidates
        .par_iter()
        .map(|&alpha| diagnose(&cn, alpha, config, &sep_vertices))
        .collect())
}

fn diagnose(
    cn: &CommonNeighborMatrix,
    alpha: f64,
    config: &ScanConfig,
    sep_vertices: &[usize],
) -> AlphaDiagnostics {
    let n = cn.n();
    let scale = (n - 2) as f64;
    let cut = alpha * scale;
    let h = cn.threshold(alpha);

    let successes = (0..config.trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = Stream::new(config.seed, Purpose::AlphaScan, t as u64);
            ordered_subsample(&h, config.m, &mut rng).is_some()
        })
        .count();
    let pig_success_rate = if config.trials == 0 {
        0.0
    } else {
        successes as f64 / config.trials as f64
    };

    let goodness = goodness_probes(cn, alpha, &config.delta_quantiles);
    let goodness_pass = goodness.iter().all(|p| p.a_hat <= config.goodness_a);

    let min_reach = (0..n)
        .into_par_iter()
        .map(|v| {
            cn.row(v)
                .iter()
                .enumerate()
                .filter(|&(w, &c)| w != v && c as f64 >= cut)
                .count()
        })
        .min()
        .unwrap_or(0);
    let connectivity_eps = min_reach as f64 / n as f64;

    let (separation_typical, separation_worst) = separation(cn, cut, sep_vertices, config.epsilon);

    let split_pairs: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            let ni = h.neighbors(i);
            (i + 1..n)
                .filter(|&j| ni.intersection_count(h.neighbors(j)) == 0)
                .count()
        })
        .sum();
    let split_target = config.epsilon * config.epsilon * (n * n) as f64 / 2.0;

    AlphaDiagnostics {
        alpha,
        h_edges: h.edge_count(),
        pig_success_rate,
        pig_pass: pig_success_rate >= config.pig_threshold,
        goodness_pass,
        goodness,
        connectivity_pass: min_reach as f64 > config.epsilon * n as f64,
        connectivity_eps,
        separation_pass: separation_typical >= config.separation_b,
        separation_typical,
        separation_worst,
        split_pass: split_pairs as f64 >= split_target,
        split_pairs,
        split_target,
    }
}

fn goodness_probes(cn: &CommonNeighborMatrix, alpha: f64, quantiles: &[f64]) -> Vec<GoodnessProbe> {
    let n = cn.n();
    let scale = (n - 2) as f64;
    let mut gaps: Vec<f64> = (0..n)
        .flat_map(|v| (v + 1..n).map(move |w| (v, w)))
        .map(|(v, w)| (cn.get(v, w) as f64 / scale - alpha).abs())
        .collect();
    gaps.sort_by(f64::total_cmp);
    let floor = 0.5 / scale;
    quantiles
        .iter()
        .map(|&q| {
            let idx = ((q * gaps.len() as f64).ceil() as usize).clamp(1, gaps.len().max(1)) - 1;
            let delta = gaps.get(idx).copied().unwrap_or(0.0).max(floor);
            let worst = (0..n)
                .into_par_iter()
                .map(|v| {
                    cn.row(v)
                        .iter()
                        .enumerate()
                        .filter(|&(w, &c)| w != v && (alpha - c as f64 / scale).abs() <= delta)
                        .count()
                })
                .max()
                .unwrap_or(0);
            GoodnessProbe {
                delta,
                a_hat: worst as f64 / (delta * n as f64),
            }
        })
        .collect()
}

/// For each sampled `v`: `s_v[u]` counts `w` on opposite sides of the cut for
/// `v` and `u`. After sorting, the smallest slope `(s[j] - s[i]) / (j - i)`
/// over index gaps of at least `epsilon n`, taken before `s` reaches 90% of
/// its maximum. Returns the median and the minimum over `v`.
fn separation(cn: &CommonNeighborMatrix, cut: f64, vertices: &[usize], epsilon: f64) -> (f64, f64) {
    let n = cn.n();
    if vertices.is_empty() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let side = |above: bool| -> Vec<BitSet> {
        (0..n)
            .into_par_iter()
            .map(|v| {
                BitSet::from_members(
                    n,
                    cn.row(v)
                        .iter()
                        .enumerate()
                        .filter(|&(_, &c)| {
                            if above {
                                c as f64 > cut
                            } else {
                                (c as f64) < cut
                            }
                        })
                        .map(|(w, _)| w),
                )
            })
            .collect()
    };
    let above = side(true);
    let below = side(false);
    let window = ((epsilon * n as f64).ceil() as usize).max(1);
    let mut slopes: Vec<f64> = vertices
        .par_iter()
        .map(|&v| {
            let mut s: Vec<usize> = (0..n)
                .filter(|&u| u != v)
                .map(|u| {
                    above[v].intersection_count(&below[u]) + below[v].intersection_count(&above[u])
                })
                .collect();
            s.sort_unstable();
            let top = *s.last().unwrap_or(&0) as f64;
            let end = s
                .iter()
                .position(|&x| x as f64 >= 0.9 * top)
                .unwrap_or(s.len());
            let mut best = f64::INFINITY;
            for i in 0..end {
                for j in i + window..end {
                    best = best.min((s[j] - s[i]) as f64 / (j - i) as f64);
                }
            }
            best
        })
        .collect();
    slopes.sort_by(f64::total_cmp);
    (slopes[slopes.len() / 2], slopes[0])
}

/// The candidate with the highest subsample success rate among those passing
/// the connectivity and split tests; ties go to the smaller `alpha`.
pub fn pick_alpha(diags: &[AlphaDiagnostics]) -> Option<f64> {
    diags
        .iter()
        .filter(|d| d.connectivity_pass && d.split_pass)
        .fold(None::<&AlphaDiagnostics>, |best, d| match best {
            Some(b)
                if b.pig_success_rate > d.pig_success_rate
                    || (b.pig_success_rate == d.pig_success_rate && b.alpha <= d.alpha) =>
            {
                Some(b)
            }
            _ => Some(d),
        })
        .map(|d| d.alpha)
}

/// Default slack for [`diagnose_sharp_boundary`].
pub const SHARP_BOUNDARY_SLACK: f64 = 4.0;

/// Over pairs with `F(i, j) = -1`, the largest number of `k` with
/// `F(i, k) = F(k, j) = 1`.
pub fn max_disagreement_witnesses(f: &Comparison) -> usize {
    let n = f.n();
    let ahead: Vec<BitSet> = (0..n)
        .map(|i| BitSet::from_members(n, (0..n).filter(|&k| f.get(i, k) == 1)))
        .collect();
    let behind: Vec<BitSet> = (0..n)
        .map(|j| BitSet::from_members(n, (0..n).filter(|&k| f.get(k, j) == 1)))
        .collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| f.get(i, j) == -1)
                .map(|j| ahead[i].intersection_count(&behind[j]))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// `true` when the first-phase decisions of a refinement pass look
/// consistent with precision about `d2`: the largest disagreement witness set
/// is at most `slack * d2 * n`.
pub fn diagnose_sharp_boundary(f2: &Comparison, d2: f64, n: usize, slack: f64) -> bool {
    max_disagreement_witnesses(f2) as f64 <= slack * d2 * n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::{sample_graph, GraphonSpec};
    use crate::ordering::Ordering;

    fn diag(alpha: f64, rate: f64, conn: bool, split: bool) -> AlphaDiagnostics {
        AlphaDiagnostics {
            alpha,
            h_edges: 0,
            pig_success_rate: rate,
            pig_pass: rate >= 0.8,
            goodness_pass: true,
            goodness: vec![],
            connectivity_pass: conn,
            connectivity_eps: 0.0,
            separation_pass: true,
            separation_typical: 1.0,
            separation_worst: 1.0,
            split_pass: split,
            split_pairs: 0,
            split_target: 0.0,
        }
    }

    #[test]
    fn pick_examples() {
        assert_eq!(pick_alpha(&[diag(0.1, 0.5, true, true)]), Some(0.1));
        assert_eq!(
            pick_alpha(&[diag(0.1, 0.9, false, true), diag(0.2, 0.9, true, false)]),
            None
        );
        assert_eq!(
            pick_alpha(&[diag(0.2, 0.7, true, true), diag(0.1, 0.7, true, true)]),
            Some(0.1)
        );
        assert_eq!(
            pick_alpha(&[
                diag(0.1, 0.3, true, true),
                diag(0.2, 0.6, true, true),
                diag(0.3, 0.9, false, true)
            ]),
            Some(0.2)
        );
        assert_eq!(pick_alpha(&[]), None);
    }

    #[test]
    fn complete_graph_fails_split() {
        let g = Graph::complete(30);
        let d = scan_alpha(&g, &[0.5], &ScanConfig::for_size(30, 1)).unwrap();
        assert_eq!(d[0].pig_success_rate, 1.0);
        assert!(!d[0].split_pass);
        assert_eq!(d[0].split_pairs, 0);
        assert_eq!(pick_alpha(&d), None);
    }

    #[test]
    fn empty_graph_fails_connectivity() {
        let g = Graph::empty(30);
        let d = scan_alpha(&g, &[0.1, 0.5], &ScanConfig::for_size(30, 1)).unwrap();
        assert!(d.iter().all(|x| !x.connectivity_pass));
        assert!(d.iter().all(|x| x.pig_success_rate == 0.0));
    }

    #[test]
    fn scan_validates() {
        let g = Graph::complete(10);
        let c = ScanConfig::for_size(10, 0);
        assert!(scan_alpha(&g, &[], &c).is_err());
        assert!(scan_alpha(&g, &[1.5], &c).is_err());
        assert!(scan_alpha(&g, &[0.5], &ScanConfig { m: 11, ..c.clone() }).is_err());
    }

    #[test]
    fn edge_count_nonincreasing_over_grid() {
        let g = sample_graph(&GraphonSpec::step(0.8, 0.1, 0.2).unwrap(), 150, 3)
            .unwrap()
            .graph;
        let grid = [0.04, 0.06, 0.08, 0.1, 0.12, 0.14];
        let d = scan_alpha(
            &g,
            &grid,
            &ScanConfig {
                trials: 20,
                ..ScanConfig::for_size(150, 3)
            },
        )
        .unwrap();
        assert!(d.windows(2).all(|w| w[0].h_edges >= w[1].h_edges));
    }

    #[test]
    fn sharp_boundary_examples() {
        assert!(diagnose_sharp_boundary(
            &Comparison::zeros(10),
            0.01,
            10,
            4.0
        ));
        let exact = Comparison::from_ordering(&Ordering::identity(20));
        assert_eq!(max_disagreement_witnesses(&exact), 0);
        // 0 before 1 before every k, but F(0, 19) = -1: 18 middle witnesses
        let mut f = Comparison::from_ordering(&Ordering::identity(20));
        f.set(0, 19, -1);
        assert_eq!(max_disagreement_witnesses(&f), 18);
        assert!(!diagnose_sharp_boundary(&f, 0.01, 20, 4.0));
    }

    #[test]
    fn csv_record_matches_header() {
        let d = diag(0.1, 0.5, true, true);
        assert_eq!(d.csv_record(None).len(), AlphaDiagnostics::CSV_HEADER.len());
        assert_eq!(d.csv_record(Some(true))[14], "true");
    }
}
