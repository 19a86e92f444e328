//! Formula-free capacity estimator via the transfinite diameter.
//!
//! A greedy Leja sequence is grown over a fixed candidate grid: each new
//! point maximizes the product of distances to all points chosen so far,
//! and the normalized pairwise product
//!
//! ```text
//! ( prod_{i<j} |z_i - z_j| )^(2 / (n(n-1)))
//! ```
//!
//! converges to the capacity from above as n grows. Distances accumulate
//! as log-sums, so nothing overflows even for very long sequences. The
//! estimator shares no elliptic-function code with the exact formula; it
//! is deliberately simple and slow.

use rayon::prelude::*;

use crate::capacity::{capacity_exact, IntervalPair};
use crate::error::{Error, Result};
use crate::real::Real;

/// Candidate grid size per segment, as a multiple of the sequence length.
const CANDIDATES_PER_POINT: usize = 40;

/// A greedy Leja configuration with its accumulated log-product.
#[derive(Debug, Clone)]
pub struct LejaSequence<F> {
    /// The chosen points, in selection order.
    pub points: Vec<F>,
    /// `sum_{i<j} ln |z_i - z_j|`.
    pub log_product_sum: F,
}

impl<F: Real> LejaSequence<F> {
    /// Grows a greedy sequence of `n` points over the candidate grid for
    /// the given segments. The first point is the leftmost endpoint; ties
    /// in the greedy argmax break toward the smaller coordinate.
    pub fn grow(segments: &[(F, F)], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::CountTooSmall { min: 2, got: n });
        }
        let candidates = candidate_grid(segments, CANDIDATES_PER_POINT * n);

        let first = segments
            .iter()
            .map(|s| s.0)
            .fold(F::infinity(), F::min);

        let mut points = Vec::with_capacity(n);
        points.push(first);
        let mut log_sum = F::zero();

        // Per-candidate accumulated log-distance to every chosen point.
        let mut acc: Vec<F> = candidates
            .par_iter()
            .map(|&c| (c - first).abs().ln())
            .collect();

        for _ in 1..n {
            let (best_idx, best_val) = acc
                .par_iter()
                .enumerate()
                .map(|(i, &v)| (i, v))
                .reduce(
                    || (usize::MAX, F::neg_infinity()),
                    |a, b| better_candidate(a, b, &candidates),
                );
            let chosen = candidates[best_idx];
            log_sum = log_sum + best_val;
            points.push(chosen);
            acc.par_iter_mut().zip(candidates.par_iter()).for_each(|(a, &c)| {
                *a = *a + (c - chosen).abs().ln();
            });
        }

        Ok(LejaSequence {
            points,
            log_product_sum: log_sum,
        })
    }

    /// The normalized product `exp(log_product_sum * 2/(n(n-1)))`.
    pub fn capacity_estimate(&self) -> F {
        let n = self.points.len();
        let pairs = F::of((n * (n - 1)) as f64 * 0.5);
        (self.log_product_sum / pairs).exp()
    }
}

/// Greedy tie-break: larger accumulated value wins; exact ties go to the
/// smaller coordinate so runs are reproducible under any thread count.
fn better_candidate<F: Real>(
    a: (usize, F),
    b: (usize, F),
    candidates: &[F],
) -> (usize, F) {
    if a.0 == usize::MAX {
        return b;
    }
    if b.0 == usize::MAX {
        return a;
    }
    if a.1 > b.1 {
        a
    } else if b.1 > a.1 {
        b
    } else if candidates[a.0] <= candidates[b.0] {
        a
    } else {
        b
    }
}

/// Chebyshev-distributed candidates over each segment (density grows
/// toward every endpoint, mirroring the equilibrium measure), generated in
/// exactly mirror-symmetric offset pairs so that reflected interval pairs
/// see reflected grids bit for bit.
fn candidate_grid<F: Real>(segments: &[(F, F)], per_segment: usize) -> Vec<F> {
    let mut grid = Vec::with_capacity(segments.len() * (per_segment + 2));
    for &(a, b) in segments {
        let mid = (a + b) * F::of(0.5);
        let half = (b - a) * F::of(0.5);
        grid.push(a);
        grid.push(b);
        let m = per_segment.max(2) - 1;
        for j in 1..=(m / 2) {
            let offset = half * (F::PI() * F::of(j as f64 / m as f64)).cos();
            grid.push(clamp(mid + offset, a, b));
            grid.push(clamp(mid - offset, a, b));
        }
    }
    grid
}

#[inline]
fn clamp<F: Real>(x: F, lo: F, hi: F) -> F {
    x.max(lo).min(hi)
}

/// Transfinite-diameter estimate for the pair `[-1, alpha] u [beta, 1]`
/// with an `n`-point greedy sequence.
pub fn leja_capacity_estimate<F: Real>(ip: IntervalPair<F>, n: usize) -> Result<F> {
    let seq = LejaSequence::grow(
        &[(-F::one(), ip.alpha()), (ip.beta(), F::one())],
        n,
    )?;
    Ok(seq.capacity_estimate())
}

/// Estimate over arbitrary segments (used for scaling checks and the
/// single-interval sanity run).
pub fn leja_estimate_on_segments<F: Real>(segments: &[(F, F)], n: usize) -> Result<F> {
    Ok(LejaSequence::grow(segments, n)?.capacity_estimate())
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<F> {
    pub n: usize,
    pub estimate: F,
    /// `estimate - capacity_exact`.
    pub gap: F,
}

/// Convergence study of the estimator against the exact capacity.
#[derive(Debug, Clone)]
pub struct ConvergenceReport<F> {
    pub rows: Vec<ConvergenceRow<F>>,
    /// Whether |gap| decreased monotonically down the rows.
    pub monotone: bool,
}

/// Runs the estimator at each count in `ns` (ascending) and tabulates the
/// gap to the exact capacity; flags non-monotone error decay.
pub fn convergence_report<F: Real>(
    ip: IntervalPair<F>,
    ns: &[usize],
) -> Result<ConvergenceReport<F>> {
    let exact = capacity_exact(ip).cap;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let estimate = leja_capacity_estimate(ip, n)?;
        rows.push(ConvergenceRow {
            n,
            estimate,
            gap: estimate - exact,
        });
    }
    let monotone = rows.windows(2).all(|w| w[1].gap.abs() <= w[0].gap.abs());
    Ok(ConvergenceReport { rows, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(alpha: f64, beta: f64) -> IntervalPair<f64> {
        IntervalPair::new(alpha, beta).unwrap()
    }

    #[test]
    fn two_points_pick_the_outer_endpoints() {
        let est = leja_capacity_estimate(pair(-0.6, 0.6), 2).unwrap();
        // {-1, 1} with exponent 2/(2*1) = 1: the bare diameter.
        assert!((est - 2.0).abs() < 1e-14);
        let seq = LejaSequence::grow(&[(-1.0_f64, -0.6), (0.6, 1.0)], 2).unwrap();
        assert_eq!(seq.points, vec![-1.0, 1.0]);
    }

    #[test]
    fn rejects_tiny_sequences() {
        assert!(matches!(
            leja_capacity_estimate(pair(-0.6, 0.6), 1),
            Err(Error::CountTooSmall { min: 2, got: 1 })
        ));
    }

    #[test]
    fn estimate_is_reflection_invariant() {
        // Mirrored pairs see bit-for-bit mirrored candidate grids, and the
        // first two chosen points are always the outer endpoints, so the
        // two greedy runs stay exact mirrors of each other.
        for &(alpha, beta, n) in &[(-0.35, 0.7, 120), (-0.8, -0.2, 90), (0.15, 0.55, 150)] {
            let ip = pair(alpha, beta);
            let a = leja_capacity_estimate(ip, n).unwrap();
            let b = leja_capacity_estimate(ip.reflected(), n).unwrap();
            assert!((a - b).abs() <= 1e-14 * a.abs(), "({alpha},{beta}): {a} vs {b}");
        }
    }

    #[test]
    fn estimate_obeys_the_scaling_law() {
        let n = 100;
        let base = leja_estimate_on_segments(&[(-1.0_f64, -0.2), (0.4, 1.0)], n).unwrap();
        let scaled = leja_estimate_on_segments(&[(-3.0_f64, -0.6), (1.2, 3.0)], n).unwrap();
        assert!(
            (scaled - 3.0 * base).abs() < 1e-12 * scaled.abs(),
            "{scaled} vs 3 * {base}"
        );
    }

    #[test]
    fn single_interval_estimate_near_one_half() {
        let est = leja_estimate_on_segments(&[(-1.0_f64, 1.0)], 600).unwrap();
        assert!((est - 0.5).abs() / 0.5 < 0.02, "estimate {est}");
    }

    #[test]
    fn moderate_run_lands_near_known_capacity() {
        let est = leja_capacity_estimate(pair(-0.6, 0.6), 400).unwrap();
        assert!((est - 0.4).abs() / 0.4 < 0.05, "estimate {est}");
    }

    #[test]
    fn convergence_report_shrinks_gap() {
        let report = convergence_report(pair(-0.6, 0.6), &[10, 100, 1000]).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(
            report.monotone,
            "gaps did not shrink: {:?}",
            report.rows.iter().map(|r| r.gap).collect::<Vec<_>>()
        );
        // The estimate approaches from above.
        assert!(report.rows.last().unwrap().gap > 0.0);
    }

    #[test]
    fn symmetric_pair_estimates_match_reflection_exactly() {
        let ip = pair(-0.45, 0.45);
        let a = leja_capacity_estimate(ip, 80).unwrap();
        let b = leja_capacity_estimate(ip.reflected(), 80).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log_sums_stay_finite_for_long_sequences() {
        let seq = LejaSequence::grow(&[(-1.0_f64, -0.1), (0.2, 1.0)], 300).unwrap();
        assert!(seq.log_product_sum.is_finite());
        assert!(seq.capacity_estimate().is_finite());
        assert_eq!(seq.points.len(), 300);
        // Every chosen point lies in one of the segments.
        assert!(seq
            .points
            .iter()
            .all(|&p| (-1.0..=-0.1).contains(&p) || (0.2..=1.0).contains(&p)));
        // Chosen points are pairwise distinct (duplicates would zero the
        // product and can never win the greedy argmax).
        let mut sorted = seq.points.clone();
        sorted.sort_by(f64::total_cmp);
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }
}
