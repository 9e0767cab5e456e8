//! Graphon models, the squared graphon `w2(x, y) = ∫ w(x, u) w(u, y) du`,
//! random graph sampling and numeric checks of the identifiability conditions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};
use crate::graph::{BitSet, Graph};
use crate::rng::{derive_key, uniform_at, Purpose};

/// Minimum number of quadrature nodes accepted by [`GraphonSpec::square_eval`].
pub const MIN_QUAD_POINTS: usize = 64;

/// Quadrature resolution used where callers do not choose one.
pub const DEFAULT_QUAD_POINTS: usize = 4096;

/// A symmetric link-probability model on `[0, 1]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphonSpec {
    /// `w(x, y) = c`.
    Constant { c: f64 },
    /// `w(x, y) = p` if `|x - y| < d`, else `q`.
    Step { p: f64, q: f64, d: f64 },
    /// `w(x, y) = f(|x - y|)` with `f` piecewise linear through
    /// `(distance, value)` breakpoints and constant after the last one.
    Profile { breakpoints: Vec<(f64, f64)> },
    /// `w(x, y) = base(F(x), F(y))` for a piecewise-linear increasing bijection
    /// `F` given by `(x, F(x))` knots from `(0, 0)` to `(1, 1)`.
    Warped {
        base: Box<GraphonSpec>,
        cdf: Vec<(f64, f64)>,
    },
}

impl GraphonSpec {
    pub fn step(p: f64, q: f64, d: f64) -> Result<Self> {
        let s = GraphonSpec::Step { p, q, d };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GraphonSpec::Constant { c } => check_unit("c", *c),
            GraphonSpec::Step { p, q, d } => validate_step(*p, *q, *d),
            GraphonSpec::Profile { breakpoints } => {
                let first = breakpoints
                    .first()
                    .ok_or_else(|| Error::InvalidParameter("profile needs breakpoints".into()))?;
                if first.0 != 0.0 {
                    return Err(Error::InvalidParameter(
                        "profile must start at distance 0".into(),
                    ));
                }
                for &(z, v) in breakpoints {
                    check_unit("profile distance", z)?;
                    check_unit("profile value", v)?;
                }
                for w in breakpoints.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return Err(Error::InvalidParameter(
                            "profile distances must be strictly increasing".into(),
                        ));
                    }
                    if w[1].1 > w[0].1 {
                        return Err(Error::InvalidParameter(
                            "profile values must be nonincreasing in distance".into(),
                        ));
                    }
                }
                Ok(())
            }
            GraphonSpec::Warped { base, cdf } => {
                base.validate()?;
                if cdf.len() < 2 || cdf[0] != (0.0, 0.0) || *cdf.last().unwrap() != (1.0, 1.0) {
                    return Err(Error::InvalidParameter(
                        "cdf must run from (0, 0) to (1, 1)".into(),
                    ));
                }
                for w in cdf.windows(2) {
                    if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                        return Err(Error::InvalidParameter(
                            "cdf must be strictly increasing".into(),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// `w(x, y)` with domain checks.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_unit("x", x)?;
        check_unit("y", y)?;
        Ok(self.value(x, y))
    }

    /// `w(x, y)` for `x, y` already known to be in `[0, 1]`.
    #[inline]
    pub fn value(&self, x: f64, y: f64) -> f64 {
        match self {
            GraphonSpec::Constant { c } => *c,
            GraphonSpec::Step { p, q, d } => {
                if (x - y).abs() < *d {
                    *p
                } else {
                    *q
                }
            }
            GraphonSpec::Profile { breakpoints } => profile_at(breakpoints, (x - y).abs()),
            GraphonSpec::Warped { base, cdf } => base.value(interp(cdf, x), interp(cdf, y)),
        }
    }

    /// Points `u` in `(0, 1)` where `w(x, ·)` is not smooth.
    fn row_breakpoints(&self, x: f64, out: &mut Vec<f64>) {
        match self {
            GraphonSpec::Constant { .. } => {}
            GraphonSpec::Step { d, .. } => out.extend([x - d, x + d]),
            GraphonSpec::Profile { breakpoints } => {
                for &(z, _) in breakpoints {
                    out.extend([x - z, x + z]);
                }
            }
            GraphonSpec::Warped { base, cdf } => {
                out.extend(cdf.iter().map(|k| k.0));
                let mut inner = Vec::new();
                base.row_breakpoints(interp(cdf, x), &mut inner);
                out.extend(
                    inner
                        .into_iter()
                        .filter(|b| *b > 0.0 && *b < 1.0)
                        .map(|b| interp_inverse(cdf, b)),
                );
            }
        }
    }

    /// `w2(x, y)` by composite midpoint quadrature, subdivided at every
    /// breakpoint of the two factors. Exact for step graphons.
    pub fn square_eval(&self, x: f64, y: f64, quad_points: usize) -> Result<f64> {
        check_unit("x", x)?;
        check_unit("y", y)?;
        if quad_points < MIN_QUAD_POINTS {
            return Err(Error::InvalidParameter(format!(
                "quad_points = {quad_points} is below {MIN_QUAD_POINTS}"
            )));
        }
        Ok(self.square_quadrature(x, y, quad_points))
    }

    fn square_quadrature(&self, x: f64, y: f64, quad_points: usize) -> f64 {
        let mut cuts = vec![0.0, 1.0];
        self.row_breakpoints(x, &mut cuts);
        self.row_breakpoints(y, &mut cuts);
        cuts.retain(|c| (0.0..=1.0).contains(c));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = 0.0;
        for seg in cuts.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let len = b - a;
            if len <= 0.0 {
                continue;
            }
            let k = ((quad_points as f64 * len).ceil() as usize).max(1);
            let h = len / k as f64;
            let mut s = 0.0;
            for i in 0..k {
                let u = a + (i as f64 + 0.5) * h;
                s += self.value(x, u) * self.value(u, y);
            }
            total += s * h;
        }
        total
    }

    /// `w2(x, y)` using the exact closed form when one exists.
    pub fn square_value(&self, x: f64, y: f64) -> f64 {
        match self {
            GraphonSpec::Constant { c } => c * c,
            GraphonSpec::Step { p, q, d } => step_square(*p, *q, *d, x, y),
            _ => self.square_quadrature(x, y, DEFAULT_QUAD_POINTS),
        }
    }

    /// Short label used in experiment output.
    pub fn tag(&self) -> String {
        match self {
            GraphonSpec::Constant { c } => format!("constant(c={c})"),
            GraphonSpec::Step { p, q, d } => format!("step(p={p},q={q},d={d})"),
            GraphonSpec::Profile { breakpoints } => format!("profile({} knots)", breakpoints.len()),
            GraphonSpec::Warped { base, .. } => format!("warped({})", base.tag()),
        }
    }

    /// For uniformly embedded variants: the link function's value at `z`.
    fn link(&self, z: f64) -> Option<f64> {
        match self {
            GraphonSpec::Constant { c } => Some(*c),
            GraphonSpec::Step { p, q, d } => Some(if z < *d { *p } else { *q }),
            GraphonSpec::Profile { breakpoints } => Some(profile_at(breakpoints, z)),
            GraphonSpec::Warped { .. } => None,
        }
    }

    /// Distance beyond which the link function is constant.
    fn plateau_distance(&self) -> f64 {
        match self {
            GraphonSpec::Constant { .. } => 0.0,
            GraphonSpec::Step { d, .. } => *d,
            GraphonSpec::Profile { breakpoints } => {
                let last = breakpoints.last().unwrap().1;
                let mut d = breakpoints.last().unwrap().0;
                for &(z, v) in breakpoints.iter().rev() {
                    if v == last {
                        d = z;
                    } else {
                        break;
                    }
                }
                d
            }
            GraphonSpec::Warped { base, .. } => base.plateau_distance(),
        }
    }
}

impl fmt::Display for GraphonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Key/value shorthand: `constant:c=0.3`, `step:p=0.8,q=0.1,d=0.2`,
/// `profile:0=0.9,0.1=0.5,0.3=0`. Warped graphons need the JSON form.
impl FromStr for GraphonSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let spec: GraphonSpec = serde_json::from_str(s).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?;
            spec.validate()?;
            return Ok(spec);
        }
        let (variant, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut pairs = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad_shorthand(format!("expected key=value, got {item:?}")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| bad_shorthand(format!("not a number: {v:?}")))?;
            pairs.push((k.trim().to_string(), v));
        }
        let get = |key: &str| -> Result<f64> {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|p| p.1)
                .ok_or_else(|| bad_shorthand(format!("missing key {key:?}")))
        };
        let known = |keys: &[&str]| -> Result<()> {
            match pairs.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
                Some((k, _)) => Err(bad_shorthand(format!("unknown key {k:?}"))),
                None => Ok(()),
            }
        };
        let spec = match variant.trim() {
            "constant" => {
                known(&["c"])?;
                GraphonSpec::Constant { c: get("c")? }
            }
            "step" => {
                known(&["p", "q", "d"])?;
                GraphonSpec::Step {
                    p: get("p")?,
                    q: get("q")?,
                    d: get("d")?,
                }
            }
            "profile" => {
                let mut breakpoints = Vec::with_capacity(pairs.len());
                for (k, v) in &pairs {
                    let z: f64 = k
                        .parse()
                        .map_err(|_| bad_shorthand(format!("not a distance: {k:?}")))?;
                    breakpoints.push((z, *v));
                }
                GraphonSpec::Profile { breakpoints }
            }
            other => return Err(bad_shorthand(format!("unknown variant {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn bad_shorthand(msg: String) -> Error {
    Error::Parse { line: 1, msg }
}

fn validate_step(p: f64, q: f64, d: f64) -> Result<()> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    if q > p {
        return Err(Error::InvalidParameter(format!(
            "step needs q <= p, got q={q} p={p}"
        )));
    }
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "step needs 0 < d < 1, got d={d}"
        )));
    }
    Ok(())
}

fn profile_at(bp: &[(f64, f64)], z: f64) -> f64 {
    let idx = bp.partition_point(|k| k.0 <= z);
    if idx == bp.len() {
        return bp[bp.len() - 1].1;
    }
    // idx >= 1 since bp[0].0 == 0 <= z
    let (z0, v0) = bp[idx - 1];
    let (z1, v1) = bp[idx];
    v0 + (v1 - v0) * (z - z0) / (z1 - z0)
}

fn interp(knots: &[(f64, f64)], x: f64) -> f64 {
    let idx = knots
        .partition_point(|k| k.0 <= x)
        .clamp(1, knots.len() - 1);
    let (x0, y0) = knots[idx - 1];
    let (x1, y1) = knots[idx];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn interp_inverse(knots: &[(f64, f64)], y: f64) -> f64 {
    let idx = knots
        .partition_point(|k| k.1 <= y)
        .clamp(1, knots.len() - 1);
    let (x0, y0) = knots[idx - 1];
    let (x1, y1) = knots[idx];
    x0 + (x1 - x0) * (y - y0) / (y1 - y0)
}

fn overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0.0)
}

fn step_window(x: f64, d: f64) -> (f64, f64) {
    ((x - d).max(0.0), (x + d).min(1.0))
}

fn step_square(p: f64, q: f64, d: f64, x: f64, y: f64) -> f64 {
    let (ix, iy) = (step_window(x, d), step_window(y, d));
    let both = overlap(ix, iy);
    let only_x = (ix.1 - ix.0) - both;
    let only_y = (iy.1 - iy.0) - both;
    let neither = 1.0 - both - only_x - only_y;
    both * p * p + (only_x + only_y) * p * q + neither * q * q
}

/// Exact `w2(x, y)` for the step graphon, by interval-overlap integration:
/// the `p`-windows of `x` and `y` split `[0, 1]` into a shared part (`p^2`),
/// parts covered by one window (`pq`) and the rest (`q^2`).
pub fn square_closed_form_step(p: f64, q: f64, d: f64, x: f64, y: f64) -> Result<f64> {
    validate_step(p, q, d)?;
    check_unit("x", x)?;
    check_unit("y", y)?;
    Ok(step_square(p, q, d, x, y))
}

/// A sampled graph together with the latent positions it was generated from.
/// The latents are for evaluation only; no estimator takes them as input.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    pub graph: Graph,
    pub latents: Option<Vec<f64>>,
    pub seed: u64,
}

impl SampledGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Index of the unordered pair `{i, j}` (`i < j`) in an enumeration that does
/// not depend on `n`, so graphs of different sizes from one seed are nested.
#[inline]
fn pair_index(i: usize, j: usize) -> u64 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j as u64) * (j as u64 - 1) / 2 + i as u64
}

/// Latent positions `U_1..U_n` for a seed.
pub fn sample_latents(n: usize, seed: u64) -> Vec<f64> {
    let key = derive_key(seed, Purpose::Latent, 0);
    (0..n).map(|i| uniform_at(key, i as u64)).collect()
}

/// Samples `G ~ w` on `n` vertices: uniform latents, then edge `{i, j}` iff an
/// independent uniform falls below `w(U_i, U_j)`.
pub fn sample_graph(spec: &GraphonSpec, n: usize, seed: u64) -> Result<SampledGraph> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let latents = sample_latents(n, seed);
    let coin_key = derive_key(seed, Purpose::EdgeCoin, 0);
    let rows: Vec<BitSet> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = BitSet::new(n);
            for j in 0..n {
                if j != i
                    && uniform_at(coin_key, pair_index(i, j)) < spec.value(latents[i], latents[j])
                {
                    r.insert(j);
                }
            }
            r
        })
        .collect();
    Ok(SampledGraph {
        graph: Graph::from_rows(rows),
        latents: Some(latents),
        seed,
    })
}

/// The noiseless thresholded graph: `i ~ j` iff `w2(U_i, U_j) >= alpha`.
pub fn oracle_threshold_graph(
    spec: &GraphonSpec,
    latents: &[f64],
    alpha: f64,
) -> Result<SampledGraph> {
    spec.validate()?;
    for &u in latents {
        check_unit("latent", u)?;
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )));
    }
    let graph = Graph::from_fn(latents.len(), |i, j| {
        spec.square_value(latents[i], latents[j]) >= alpha
    });
    Ok(SampledGraph {
        graph,
        latents: Some(latents.to_vec()),
        seed: 0,
    })
}

/// Numeric evidence for the identifiability conditions at a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionReport {
    /// `inf_{s in [0, d]} w2(0, s)`.
    pub alpha_lower: f64,
    /// `w2((1 - d') / 2, (1 + d') / 2)` with `d' = min(0.5, 2d)`.
    pub alpha_upper: f64,
    /// Some threshold separates the two sides.
    pub alpha_feasible: bool,
    /// The supplied threshold lies strictly between the two sides.
    pub alpha_in_window: bool,
    pub sharp_delta: Option<f64>,
    pub sharp_b: Option<f64>,
    pub connect_eps: Option<f64>,
    pub goodness_a: Option<f64>,
    pub goodness_delta: Option<f64>,
    pub split_eps: Option<f64>,
    pub sep_eps: Option<f64>,
}

const GRID: usize = 200;

/// Evaluates both sides of the threshold-existence condition and the
/// goodness / connectedness / split / separation constants of `w2` at
/// `alpha` on a grid. Warped graphons get only the threshold window, computed
/// from the base link function; the other fields stay empty.
pub fn check_assumptions(
    spec: &GraphonSpec,
    alpha: f64,
    quad_points: usize,
) -> Result<AssumptionReport> {
    spec.validate()?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )));
    }
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::InvalidParameter(format!(
            "quad_points = {quad_points} is below {MIN_QUAD_POINTS}"
        )));
    }
    let embedded = match spec {
        GraphonSpec::Warped { base, .. } => base.as_ref(),
        other => other,
    };
    let (alpha_lower, alpha_upper) = alpha_window(embedded, quad_points);
    let mut report = AssumptionReport {
        alpha_lower,
        alpha_upper,
        alpha_feasible: alpha_lower > alpha_upper,
        alpha_in_window: alpha_lower > alpha && alpha > alpha_upper,
        sharp_delta: None,
        sharp_b: None,
        connect_eps: None,
        goodness_a: None,
        goodness_delta: None,
        split_eps: None,
        sep_eps: None,
    };
    if matches!(spec, GraphonSpec::Warped { .. }) {
        return Ok(report);
    }

    if let GraphonSpec::Step { p, q, d } = *spec {
        if q == 0.0 && p > 0.0 {
            report.sharp_delta = Some(p / 2.0);
            report.sharp_b = Some(sharp_boundary_rate(d));
        }
    }

    let table = SquareTable::new(spec, quad_points);
    report.connect_eps = Some(table.connect_eps(alpha));
    let delta = (alpha_lower - alpha)
        .min(alpha - alpha_upper)
        .abs()
        .max(1e-3)
        / 2.0;
    report.goodness_delta = Some(delta);
    report.goodness_a = Some(table.goodness_a(alpha, delta));
    report.split_eps = Some(table.split_eps(alpha));
    report.sep_eps = Some(table.separation(alpha));
    Ok(report)
}

fn alpha_window(spec: &GraphonSpec, quad_points: usize) -> (f64, f64) {
    let d = spec.plateau_distance();
    let f = |z: f64| spec.link(z).unwrap_or(0.0);
    // ∫_0^1 f(|a - z|) f(|b - z|) dz, split at the link breakpoints
    let integral = |a: f64, b: f64| -> f64 {
        let mut cuts = vec![0.0, 1.0];
        spec.row_breakpoints(a, &mut cuts);
        spec.row_breakpoints(b, &mut cuts);
        cuts.retain(|c| (0.0..=1.0).contains(c));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = 0.0;
        for seg in cuts.windows(2) {
            let len = seg[1] - seg[0];
            if len <= 0.0 {
                continue;
            }
            let k = ((quad_points as f64 * len).ceil() as usize).max(1);
            let h = len / k as f64;
            for i in 0..k {
                let z = seg[0] + (i as f64 + 0.5) * h;
                total += f((z - a).abs()) * f((z - b).abs()) * h;
            }
        }
        total
    };
    let steps = 400;
    let lower = (0..=steps)
        .map(|i| integral(0.0, d * i as f64 / steps as f64))
        .fold(f64::INFINITY, f64::min);
    let dp = (2.0 * d).min(0.5);
    let upper = integral((1.0 - dp) / 2.0, (1.0 + dp) / 2.0);
    (lower, upper)
}

/// `min Vol(N(x) Δ N(y)) / |x - y|` over grid pairs, where `N(x)` is the
/// support `(x - d, x + d) ∩ [0, 1]` of a step graphon with `q = 0`.
fn sharp_boundary_rate(d: f64) -> f64 {
    let g = GRID;
    let mut best = f64::INFINITY;
    for a in 0..=g {
        for b in a + 1..=g {
            let (x, y) = (a as f64 / g as f64, b as f64 / g as f64);
            let (ix, iy) = (step_window(x, d), step_window(y, d));
            let sym = (ix.1 - ix.0) + (iy.1 - iy.0) - 2.0 * overlap(ix, iy);
            best = best.min(sym / (y - x));
        }
    }
    best
}

/// `w2` tabulated on a uniform `(GRID + 1)^2` grid.
struct SquareTable {
    g: usize,
    vals: Vec<f64>,
}

impl SquareTable {
    fn new(spec: &GraphonSpec, quad_points: usize) -> Self {
        let g = GRID;
        let vals = (0..=g)
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = i as f64 / g as f64;
                (0..=g).map(move |j| {
                    let y = j as f64 / g as f64;
                    match spec {
                        GraphonSpec::Step { .. } | GraphonSpec::Constant { .. } => {
                            spec.square_value(x, y)
                        }
                        _ => spec.square_quadrature(x, y, quad_points),
                    }
                })
            })
            .collect();
        Self { g, vals }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.vals[i * (self.g + 1) + j]
    }

    fn step(&self) -> f64 {
        1.0 / self.g as f64
    }

    /// Largest grid `eps` with `min { w2(u, v) : |u - v| <= eps } > alpha`.
    fn connect_eps(&self, alpha: f64) -> f64 {
        let g = self.g;
        let mut last_ok = 0;
        for s in 0..=g {
            let ok = (0..=g - s).all(|i| self.at(i, i + s) > alpha);
            if !ok {
                break;
            }
            last_ok = s;
        }
        last_ok as f64 * self.step()
    }

    /// `sup over delta' in (0, delta]` and grid rows of
    /// `Vol { y : |alpha - w2(x, y)| <= delta' } / delta'`.
    fn goodness_a(&self, alpha: f64, delta: f64) -> f64 {
        let g = self.g;
        let mut worst: f64 = 0.0;
        for k in 1..=8 {
            let dp = delta * k as f64 / 8.0;
            for i in 0..=g {
                let hits = (0..=g)
                    .filter(|&j| (alpha - self.at(i, j)).abs() <= dp)
                    .count();
                worst = worst.max(hits as f64 * self.step() / dp);
            }
        }
        worst
    }

    fn row_support(&self, i: usize, alpha: f64) -> Vec<bool> {
        (0..=self.g).map(|j| self.at(i, j) >= alpha).collect()
    }

    /// Largest grid `eps` such that rows at distance `>= 1 - eps` have
    /// disjoint thresholded supports.
    fn split_eps(&self, alpha: f64) -> f64 {
        let g = self.g;
        let rows: Vec<Vec<bool>> = (0..=g).map(|i| self.row_support(i, alpha)).collect();
        let disjoint = |a: usize, b: usize| !rows[a].iter().zip(&rows[b]).any(|(x, y)| *x && *y);
        let mut eps_steps = 0;
        for k in 0..g {
            // pairs at grid distance g - k, i.e. y - x = 1 - k/g
            let gap = g - k;
            if (0..=g - gap).all(|i| disjoint(i, i + gap)) {
                eps_steps = k;
            } else {
                break;
            }
        }
        eps_steps as f64 * self.step()
    }

    /// `min Vol { z : thresholded rows of x and y differ } / |x - y|`.
    fn separation(&self, alpha: f64) -> f64 {
        let g = self.g;
        let rows: Vec<Vec<bool>> = (0..=g).map(|i| self.row_support(i, alpha)).collect();
        let mut best = f64::INFINITY;
        for a in 0..=g {
            for b in a + 1..=g {
                let diff = rows[a].iter().zip(&rows[b]).filter(|(x, y)| x != y).count();
                best = best.min(diff as f64 / (b - a) as f64);
            }
        }
        best
    }
}
