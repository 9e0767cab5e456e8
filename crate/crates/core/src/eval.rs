//! Ground-truth evaluation of estimated orderings against latent positions.

use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::ordering::induced_order;
use crate::ordering::{Comparison, Ordering};

/// Which of the true order and its reversal an estimate was scored against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    /// Smallest `D` such that every pair more than `D` apart in the true order
    /// is ordered correctly, minimised over the two directions.
    pub error_d: usize,
    pub misordered_pairs: usize,
    pub chosen_correct: Direction,
}

fn check_len(sigma: &Ordering, latents: &[f64]) -> Result<()> {
    if sigma.n() != latents.len() {
        return Err(Error::SizeMismatch {
            expected: latents.len(),
            got: sigma.n(),
        });
    }
    Ok(())
}

/// For the forward and reverse directions: (largest true-rank gap among
/// misordered pairs, number of misordered pairs).
fn misorder_scan(sigma: &Ordering, truth: &Ordering) -> [(usize, usize); 2] {
    let n = sigma.n();
    let mut out = [(0, 0); 2];
    for i in 0..n {
        for j in 0..n {
            if truth.rank(i) > truth.rank(j) && sigma.rank(i) < sigma.rank(j) {
                let f = &mut out[0];
                f.0 = f.0.max(truth.rank(i) - truth.rank(j));
                f.1 += 1;
            } else if truth.rank(i) < truth.rank(j) && sigma.rank(i) < sigma.rank(j) {
                let r = &mut out[1];
                r.0 = r.0.max(truth.rank(j) - truth.rank(i));
                r.1 += 1;
            }
        }
    }
    out
}

pub fn ordering_error(sigma: &Ordering, latents: &[f64]) -> Result<ErrorReport> {
    check_len(sigma, latents)?;
    let truth = induced_order(latents);
    let [fwd, rev] = misorder_scan(sigma, &truth);
    Ok(if rev.0 < fwd.0 {
        ErrorReport {
            error_d: rev.0,
            misordered_pairs: rev.1,
            chosen_correct: Direction::Reverse,
        }
    } else {
        ErrorReport {
            error_d: fwd.0,
            misordered_pairs: fwd.1,
            chosen_correct: Direction::Forward,
        }
    })
}

/// Whether `sigma` orders every pair with latent gap at least `d` correctly,
/// in one of the two directions, and the largest latent gap among misordered
/// pairs under the better direction.
pub fn precision_agreement(sigma: &Ordering, latents: &[f64], d: f64) -> Result<(bool, f64)> {
    check_len(sigma, latents)?;
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::Domain {
            what: "d",
            value: d,
            range: "[0, 1]",
        });
    }
    let n = sigma.n();
    let (mut fwd, mut rev): (Option<f64>, Option<f64>) = (None, None);
    for i in 0..n {
        for j in 0..n {
            if sigma.rank(i) >= sigma.rank(j) || latents[i] == latents[j] {
                continue;
            }
            let gap = (latents[i] - latents[j]).abs();
            let slot = if latents[i] > latents[j] {
                &mut fwd
            } else {
                &mut rev
            };
            *slot = Some(slot.map_or(gap, |g: f64| g.max(gap)));
        }
    }
    let worst = match (fwd, rev) {
        (None, _) | (_, None) => None,
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    Ok(match worst {
        None => (true, 0.0),
        Some(g) => (g < d, g),
    })
}

/// Fraction of pairs with latent gap above `gap` on which `f` matches the
/// latent comparison, under the better global sign. 1.0 when no pair
/// qualifies.
pub fn comparison_accuracy(f: &Comparison, latents: &[f64], gap: f64) -> Result<f64> {
    let n = latents.len();
    if f.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: f.n(),
        });
    }
    let (mut total, mut fwd, mut rev) = (0usize, 0usize, 0usize);
    for i in 0..n {
        for j in i + 1..n {
            if (latents[i] - latents[j]).abs() <= gap {
                continue;
            }
            total += 1;
            let truth = if latents[i] < latents[j] { 1 } else { -1 };
            let v = f.get(i, j);
            if v == truth {
                fwd += 1;
            } else if v == -truth {
                rev += 1;
            }
        }
    }
    Ok(if total == 0 {
        1.0
    } else {
        fwd.max(rev) as f64 / total as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_ranks(n: usize, a: usize, b: usize) -> Ordering {
        let mut r: Vec<usize> = (1..=n).collect();
        r.swap(a, b);
        Ordering::from_ranks(r).unwrap()
    }

    #[test]
    fn ordering_error_examples() {
        let lat = [0.1, 0.2, 0.3, 0.4, 0.5];
        let id = Ordering::identity(5);
        assert_eq!(ordering_error(&id, &lat).unwrap().error_d, 0);
        assert_eq!(ordering_error(&id.reversed(), &lat).unwrap().error_d, 0);
        let r = ordering_error(&swap_ranks(5, 1, 2), &lat).unwrap();
        assert_eq!(r.error_d, 1);
        assert_eq!(r.misordered_pairs, 1);
        assert_eq!(r.chosen_correct, Direction::Forward);
        assert!(ordering_error(&id, &lat[..4]).is_err());
    }

    #[test]
    fn reversal_is_scored_against_reverse() {
        let lat = [0.1, 0.2, 0.3, 0.4, 0.5];
        let r = ordering_error(&swap_ranks(5, 1, 2).reversed(), &lat).unwrap();
        assert_eq!(r.error_d, 1);
        assert_eq!(r.chosen_correct, Direction::Reverse);
    }

    #[test]
    fn precision_examples() {
        let lat = [0.1, 0.2, 0.21, 0.4];
        let id = Ordering::identity(4);
        assert_eq!(precision_agreement(&id, &lat, 0.3).unwrap(), (true, 0.0));
        let sw = swap_ranks(4, 1, 2);
        let (ok, g) = precision_agreement(&sw, &lat, 0.02).unwrap();
        assert!(ok);
        assert!((g - 0.01).abs() < 1e-12);
        assert!(!precision_agreement(&sw, &lat, 0.005).unwrap().0);
        assert!(precision_agreement(&sw.reversed(), &lat, 0.02).unwrap().0);
    }

    #[test]
    fn accuracy_examples() {
        let lat = [0.3, 0.1, 0.9, 0.5];
        let truth = Comparison::from_ordering(&induced_order(&lat));
        assert_eq!(comparison_accuracy(&truth, &lat, 0.0).unwrap(), 1.0);
        assert_eq!(
            comparison_accuracy(&truth.negated(), &lat, 0.0).unwrap(),
            1.0
        );
        assert_eq!(
            comparison_accuracy(&Comparison::zeros(4), &lat, 0.0).unwrap(),
            0.0
        );
        assert_eq!(
            comparison_accuracy(&Comparison::zeros(4), &lat, 0.9).unwrap(),
            1.0
        );
    }
}
