//! Grid verification of the elliptic/theta inequalities and identities
//! underlying the bounds: closed theta values at K/2, two monotonicity
//! statements, the cosh sandwich, the zeta bound, the theta-ratio bound,
//! and the elementary K/E sandwiches with their crossover points.
//!
//! Each check sweeps a grid, records the worst signed violation and where
//! it happened, and passes when that violation stays within a small
//! floating-point slack. These back the `verify` command and the
//! acceptance suite.

use crate::bounds::ke_bounds;
use crate::elliptic::{complete_ke, complete_k, Modulus};
use crate::jacobi::jacobi_sncndn;
use crate::theta::{jacobi_zn, theta_quad};

/// Floating-point slack for equality-adjacent grid points.
const EQUALITY_SLACK: f64 = 1e-12;

/// Slack for the finite-difference monotonicity checks.
const MONOTONE_SLACK: f64 = 1e-9;

/// Relative slack for the K/E sandwich; the true gaps shrink like k^4
/// near k = 0 and fall below one ulp, so strictness can only be checked
/// up to roundoff there.
const SANDWICH_SLACK: f64 = 2e-15;

/// Outcome of one lemma check.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    /// Short label, e.g. "lemma 5 (cosh sandwich)".
    pub name: &'static str,
    /// Worst signed violation found (positive means the inequality failed
    /// by that much).
    pub max_violation: f64,
    /// Where it happened, as (k, u-or-lambda).
    pub worst_at: (f64, f64),
    /// Whether the check passed within its slack.
    pub pass: bool,
}

impl LemmaReport {
    fn from_scan(name: &'static str, max_violation: f64, worst_at: (f64, f64), slack: f64) -> Self {
        LemmaReport {
            name,
            max_violation,
            worst_at,
            pass: max_violation <= slack,
        }
    }
}

/// Tracks the worst violation over a scan.
struct Worst {
    violation: f64,
    at: (f64, f64),
}

impl Worst {
    fn new() -> Self {
        Worst {
            violation: f64::NEG_INFINITY,
            at: (f64::NAN, f64::NAN),
        }
    }

    fn update(&mut self, violation: f64, at: (f64, f64)) {
        if violation > self.violation {
            self.violation = violation;
            self.at = at;
        }
    }
}

fn modulus_grid(count: usize) -> Vec<f64> {
    // Strictly inside (0, 1), away from the sub-ulp regime at k -> 0.
    (0..count)
        .map(|i| 0.05 + (0.99 - 0.05) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Lemma 1: closed forms of the four theta functions at K/2, checked as
/// relative errors against `(2(1 +- k')K^2 sqrt(k')/pi^2)^(1/4)`.
pub fn check_theta_half_k(k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for &k in &modulus_grid(k_count) {
        let m = Modulus::<f64>::new(k).unwrap();
        let kp = m.k_prime();
        let big_k = complete_k(m);
        let tq = theta_quad(0.5 * big_k, m);
        let pi2 = std::f64::consts::PI.powi(2);
        let theta_closed = (2.0 * (1.0 + kp) * big_k * big_k * kp.sqrt() / pi2).powf(0.25);
        let h_closed = (2.0 * (1.0 - kp) * big_k * big_k * kp.sqrt() / pi2).powf(0.25);
        for (value, closed) in [
            (tq.theta, theta_closed),
            (tq.theta1, theta_closed),
            (tq.h, h_closed),
            (tq.h1, h_closed),
        ] {
            worst.update(((value - closed) / closed).abs(), (k, 0.5 * big_k));
        }
    }
    LemmaReport::from_scan("lemma 1 (theta closed forms at K/2)", worst.violation, worst.at, 1e-10)
}

/// Lemma 2: `dn^2(u) Theta^4(u)` strictly increases over `[0, K/2]`,
/// checked as strict increase over an equispaced grid.
pub fn check_dn_theta_increasing(u_count: usize, k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for &k in &modulus_grid(k_count) {
        let m = Modulus::<f64>::new(k).unwrap();
        let big_k = complete_k(m);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..u_count {
            let u = 0.5 * big_k * i as f64 / (u_count - 1) as f64;
            let dn = jacobi_sncndn(u, m).dn;
            let value = dn * dn * theta_quad(u, m).theta.powi(4);
            if i > 0 {
                worst.update(prev - value, (k, u));
            }
            prev = value;
        }
    }
    LemmaReport::from_scan(
        "lemma 2 (dn^2 Theta^4 increasing on [0, K/2])",
        worst.violation,
        worst.at,
        MONOTONE_SLACK,
    )
}

/// Lemma 3: at fixed `u`, cn increases and dn decreases with the modulus;
/// finite differences with step 1e-4 in k.
pub fn check_cn_dn_modulus_monotone(k_count: usize, u_count: usize) -> LemmaReport {
    let dk = 1e-4;
    let mut worst = Worst::new();
    for i in 0..k_count {
        let k = 0.05 + (0.99 - dk - 0.05) * i as f64 / (k_count - 1) as f64;
        let m1 = Modulus::<f64>::new(k).unwrap();
        let m2 = Modulus::<f64>::new(k + dk).unwrap();
        let big_k1 = complete_k(m1);
        for j in 1..=u_count {
            // u < K(k) <= K(k + dk), so both evaluations are in range.
            let u = big_k1 * (0.9 * j as f64 / u_count as f64 + 0.05);
            let t1 = jacobi_sncndn(u, m1);
            let t2 = jacobi_sncndn(u, m2);
            worst.update(t1.cn - t2.cn, (k, u));
            worst.update(t2.dn - t1.dn, (k, u));
        }
    }
    LemmaReport::from_scan(
        "lemma 3 (cn up, dn down in the modulus)",
        worst.violation,
        worst.at,
        MONOTONE_SLACK,
    )
}

/// Lemma 4: `max(K1,K2) < K < min(K3,K4,K5)` and `E1 < E < E2` over a
/// modulus grid spanning (1e-6, 1 - 1e-6).
pub fn check_ke_sandwich(k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for i in 0..k_count {
        let k = 1e-6 + (1.0 - 2e-6) * i as f64 / (k_count - 1) as f64;
        let m = Modulus::<f64>::new(k).unwrap();
        let (big_k, big_e) = complete_ke(m);
        let kb = ke_bounds(m);
        // Relative violations so that a single slack covers K ~ 1..20.
        worst.update((kb.k1.max(kb.k2) - big_k) / big_k, (k, 0.0));
        worst.update((big_k - kb.k3.min(kb.k4).min(kb.k5)) / big_k, (k, 0.0));
        worst.update((kb.e1 - big_e) / big_e, (k, 0.0));
        worst.update((big_e - kb.e2) / big_e, (k, 0.0));
    }
    LemmaReport::from_scan(
        "lemma 4 (elementary K/E sandwiches)",
        worst.violation,
        worst.at,
        SANDWICH_SLACK,
    )
}

/// Lemma 5: `1/dn(u) <= cosh(u) <= 1/cn(u)` and its logarithmic form
/// `log((1 + k sn)/dn) <= u <= log((1 + sn)/cn)` on `u in (0, 0.95 K)`.
pub fn check_cosh_sandwich(u_count: usize, k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for &k in &modulus_grid(k_count) {
        let m = Modulus::<f64>::new(k).unwrap();
        let big_k = complete_k(m);
        for i in 1..=u_count {
            let u = 0.95 * big_k * i as f64 / (u_count + 1) as f64;
            let t = jacobi_sncndn(u, m);
            let ch = u.cosh();
            worst.update(1.0 / t.dn - ch, (k, u));
            worst.update(ch - 1.0 / t.cn, (k, u));
            let lower_log = ((1.0 + k * t.sn) / t.dn).ln();
            let upper_log = ((1.0 + t.sn) / t.cn).ln();
            worst.update(lower_log - u, (k, u));
            worst.update(u - upper_log, (k, u));
        }
    }
    LemmaReport::from_scan(
        "lemma 5 (cosh sandwich and log form)",
        worst.violation,
        worst.at,
        EQUALITY_SLACK,
    )
}

/// Lemma 6: `zn(u) <= (E - k'^2 K)(1 - u/K)` on the same grid.
pub fn check_zeta_bound(u_count: usize, k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for &k in &modulus_grid(k_count) {
        let m = Modulus::<f64>::new(k).unwrap();
        let (big_k, big_e) = complete_ke(m);
        let slope = big_e - m.mc() * big_k;
        for i in 1..=u_count {
            let u = 0.95 * big_k * i as f64 / (u_count + 1) as f64;
            let bound = slope * (1.0 - u / big_k);
            worst.update(jacobi_zn(u, m) - bound, (k, u));
        }
    }
    LemmaReport::from_scan("lemma 6 (zeta line bound)", worst.violation, worst.at, EQUALITY_SLACK)
}

/// Lemma 7: `Theta(0)/Theta(lambda K) <= sqrt(k') exp((E/K - k'^2)(1-lambda)^2 K^2 / 2)`
/// over a lambda grid in [0, 1].
pub fn check_theta_ratio_bound(lambda_count: usize, k_count: usize) -> LemmaReport {
    let mut worst = Worst::new();
    for &k in &modulus_grid(k_count) {
        let m = Modulus::<f64>::new(k).unwrap();
        let (big_k, big_e) = complete_ke(m);
        let theta0 = theta_quad(0.0, m).theta;
        for i in 0..=lambda_count {
            let lambda = i as f64 / lambda_count as f64;
            let ratio = theta0 / theta_quad(lambda * big_k, m).theta;
            let exponent =
                0.5 * (big_e / big_k - m.mc()) * (1.0 - lambda).powi(2) * big_k * big_k;
            let bound = m.k_prime().sqrt() * exponent.exp();
            // Relative violation; at lambda = 1 the bound is an equality.
            worst.update((ratio - bound) / bound, (k, lambda));
        }
    }
    LemmaReport::from_scan(
        "lemma 7 (theta ratio bound)",
        worst.violation,
        worst.at,
        EQUALITY_SLACK,
    )
}

/// Crossover points of the elementary K bounds, located by bisection:
/// K1/K2, K3/K4 and K4/K5.
pub fn ke_crossovers() -> [f64; 3] {
    let diff_12 = |k: f64| {
        let kb = ke_bounds(Modulus::<f64>::new(k).unwrap());
        kb.k1 - kb.k2
    };
    let diff_34 = |k: f64| {
        let kb = ke_bounds(Modulus::<f64>::new(k).unwrap());
        kb.k3 - kb.k4
    };
    let diff_45 = |k: f64| {
        let kb = ke_bounds(Modulus::<f64>::new(k).unwrap());
        kb.k4 - kb.k5
    };
    [
        bisect(diff_12, 0.8, 0.95),
        bisect(diff_34, 0.9, 0.985),
        bisect(diff_45, 0.985, 0.9999),
    ]
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    debug_assert!(flo * f(hi) < 0.0, "crossover not bracketed");
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Runs the full suite at the given grid resolution (points along the
/// u/lambda axis; the modulus axis uses 20 points, the sandwich 10000).
pub fn run_all(grid: usize) -> Vec<LemmaReport> {
    vec![
        check_theta_half_k(20),
        check_dn_theta_increasing(grid, 20),
        check_cn_dn_modulus_monotone(grid, 20),
        check_ke_sandwich(10_000),
        check_cosh_sandwich(grid, 20),
        check_zeta_bound(grid, 20),
        check_theta_ratio_bound(grid, 20),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_lemmas_pass_on_default_grids() {
        for report in run_all(200) {
            assert!(
                report.pass,
                "{} failed: violation {:.3e} at (k, x) = {:?}",
                report.name, report.max_violation, report.worst_at
            );
        }
    }

    #[test]
    fn crossovers_match_reported_locations() {
        let [c12, c34, c45] = ke_crossovers();
        assert!((c12 - 0.888).abs() < 2e-3, "K1/K2 crossover at {c12}");
        assert!((c34 - 0.971).abs() < 2e-3, "K3/K4 crossover at {c34}");
        assert!((c45 - 0.990).abs() < 2e-3, "K4/K5 crossover at {c45}");
    }
}
