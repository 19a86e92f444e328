//! Lower and upper bounds for the capacity of two intervals, including the
//! fully elementary upper bound obtained by replacing E and K in the main
//! bound with their elementary sandwiches.

use crate::capacity::IntervalPair;
use crate::elliptic::{complete_ke, Modulus};
use crate::jacobi::jacobi_sncndn;
use crate::real::Real;

/// Angles `phi = arccos(alpha)`, `psi = arccos(beta)` with
/// `0 < psi < phi < pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleChart<F> {
    pub phi: F,
    pub psi: F,
}

impl<F: Real> AngleChart<F> {
    pub fn for_pair(ip: IntervalPair<F>) -> Self {
        AngleChart {
            phi: ip.alpha().acos(),
            psi: ip.beta().acos(),
        }
    }
}

/// Every bound value for one pair, with applicability flags.
///
/// All entries refer to the canonical orientation: when the input pair has
/// `alpha + beta < 0` it is mirrored first and `reflected` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport<F> {
    /// `sqrt(1 - beta^2)/2`; present when `alpha + beta >= 0`.
    pub lb_symmetric: Option<F>,
    /// `(1 + alpha)/4 + (1 - beta)/4`.
    pub lb_pommerenke: F,
    /// `sqrt(k')/(1 + k')` in radicals of alpha, beta.
    pub lb_elementary: F,
    /// Maximized angular product bound.
    pub lb_solynin: F,
    /// The maximizing delta for `lb_solynin`.
    pub lb_solynin_delta: F,
    /// `sqrt(1 - alpha^2)/2`; present when `alpha + beta >= 0` and `alpha < 0`.
    pub ub_reflection: Option<F>,
    /// Capacity of `[-1, 1]`, always 1/2.
    pub ub_unit: F,
    /// Two-interval specialization of the Gillis inequality.
    pub ub_gillis: F,
    /// The main elliptic upper bound.
    pub ub_main: F,
    /// The main bound with E, K replaced by elementary sandwiches.
    pub ub_elementary: F,
    /// Whether the input was mirrored to reach `alpha + beta >= 0`.
    pub reflected: bool,
}

impl<F: Real> BoundsReport<F> {
    /// Largest lower bound in the report.
    pub fn max_lower(&self) -> F {
        let mut best = self.lb_pommerenke.max(self.lb_elementary).max(self.lb_solynin);
        if let Some(v) = self.lb_symmetric {
            best = best.max(v);
        }
        best
    }

    /// Smallest applicable upper bound in the report.
    pub fn min_upper(&self) -> F {
        let mut best = self.ub_unit.min(self.ub_gillis).min(self.ub_main).min(self.ub_elementary);
        if let Some(v) = self.ub_reflection {
            best = best.min(v);
        }
        best
    }
}

/// Elementary sandwich bounds `max(K1,K2) < K < min(K3,K4,K5)` and
/// `E1 < E < E2`, with the two fixed exponents they use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeBounds<F> {
    pub k1: F,
    pub k2: F,
    pub k3: F,
    pub k4: F,
    pub k5: F,
    pub e1: F,
    pub e2: F,
    /// `(4 - (pi/4) e^(pi/2)) / (e^(pi/2) - 4)`, the exponent in K4.
    pub gamma: F,
    /// `log 2 / log(pi/2)`, the exponent in E2.
    pub delta_exp: F,
}

/// Symmetric lower bound `sqrt(1 - beta^2)/2`, applicable for
/// `alpha + beta >= 0`; mirror the pair first otherwise.
pub fn lb_symmetric<F: Real>(ip: IntervalPair<F>) -> Option<F> {
    if ip.alpha() + ip.beta() >= F::zero() {
        let beta = ip.beta();
        Some(F::of(0.5) * ((F::one() - beta) * (F::one() + beta)).sqrt())
    } else {
        None
    }
}

/// Sum of the capacities of the two component intervals:
/// `(1 + alpha)/4 + (1 - beta)/4`.
pub fn lb_pommerenke<F: Real>(ip: IntervalPair<F>) -> F {
    F::of(0.25) * (F::one() + ip.alpha()) + F::of(0.25) * (F::one() - ip.beta())
}

/// Elementary lower bound
/// `((1-alpha^2)(1-beta^2))^(1/4) / (sqrt((1-alpha)(1+beta)) + sqrt((1+alpha)(1-beta)))`,
/// which equals `sqrt(k')/(1 + k')`; tight exactly when `alpha + beta = 0`.
pub fn lb_elementary<F: Real>(ip: IntervalPair<F>) -> F {
    let (alpha, beta) = (ip.alpha(), ip.beta());
    let p = (F::one() - alpha) * (F::one() + beta);
    let q = (F::one() + alpha) * (F::one() - beta);
    (p * q).sqrt().sqrt() / (p.sqrt() + q.sqrt())
}

/// Log of the angular product in the maximized lower bound, at angle delta.
fn solynin_log_objective<F: Real>(angles: AngleChart<F>, delta: F) -> F {
    let pi = F::PI();
    let two = F::of(2.0);
    let first = (angles.psi * pi / (two * delta)).sin().ln();
    let second = ((pi - angles.phi) * pi / (two * (pi - delta))).sin().ln();
    two * delta * delta / (pi * pi) * first
        + two * (pi - delta) * (pi - delta) / (pi * pi) * second
}

/// Maximized angular lower bound; returns the bound and the maximizing
/// delta in `[psi, phi]`.
///
/// Golden-section search down to an interval of 1e-10, then a 1000-point
/// grid scan guards against multimodality (unimodality is observed but not
/// proven); the better of the two wins.
pub fn lb_solynin<F: Real>(ip: IntervalPair<F>) -> (F, F) {
    let angles = AngleChart::for_pair(ip);
    let (lo, hi) = (angles.psi, angles.phi);
    let objective = |d: F| solynin_log_objective(angles, d);

    // Golden-section maximization.
    let inv_phi = F::of(0.618_033_988_749_894_9);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..200 {
        if (b - a).abs() < F::of(1e-10) {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        }
    }
    let (mut best_d, mut best_f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };

    // Guard scan.
    let n = 1000;
    for i in 0..=n {
        let d = lo + (hi - lo) * F::of(i as f64 / n as f64);
        let f = objective(d);
        if f > best_f {
            best_f = f;
            best_d = d;
        }
    }
    (F::of(0.5) * best_f.exp(), best_d)
}

/// Value of the angular bound at the midpoint heuristic
/// `delta = (psi + phi)/2`.
pub fn lb_solynin_heuristic<F: Real>(ip: IntervalPair<F>) -> F {
    let angles = AngleChart::for_pair(ip);
    let d = F::of(0.5) * (angles.psi + angles.phi);
    F::of(0.5) * solynin_log_objective(angles, d).exp()
}

/// Reflection upper bound `sqrt(1 - alpha^2)/2`, applicable for
/// `alpha + beta >= 0` and `alpha < 0`.
pub fn ub_reflection<F: Real>(ip: IntervalPair<F>) -> Option<F> {
    let alpha = ip.alpha();
    if ip.alpha() + ip.beta() >= F::zero() && alpha < F::zero() {
        Some(F::of(0.5) * ((F::one() - alpha) * (F::one() + alpha)).sqrt())
    } else {
        None
    }
}

/// Gillis upper bound
/// `2 exp( log((1+alpha)/8) log((1-beta)/8) / log((1+alpha)(1-beta)/64) )`.
pub fn ub_gillis<F: Real>(ip: IntervalPair<F>) -> F {
    let p = (F::one() + ip.alpha()) / F::of(8.0);
    let q = (F::one() - ip.beta()) / F::of(8.0);
    F::of(2.0) * (p.ln() * q.ln() / (p * q).ln()).exp()
}

/// Main upper bound
/// `dn^2(lambda K)/2 * exp(2 (E/K - k'^2) log^2((1 + sn(lambda K))/cn(lambda K)))`,
/// evaluated on the mirrored pair when `alpha + beta < 0` (the bound is only
/// sharp on that side).
pub fn ub_main<F: Real>(ip: IntervalPair<F>) -> F {
    let (canon, _) = ip.canonical();
    let p = crate::capacity::param_from_intervals(canon);
    let (big_k, big_e) = complete_ke(p.modulus);
    let u = p.lambda * big_k;
    let t = jacobi_sncndn(u, p.modulus);
    let log_term = ((F::one() + t.sn) / t.cn).ln();
    let exponent = F::of(2.0) * (big_e / big_k - p.modulus.mc()) * log_term * log_term;
    F::of(0.5) * t.dn * t.dn * exponent.exp()
}

/// The main bound rewritten directly in alpha and beta (used to
/// cross-check `ub_main` and to build the elementary bound):
/// `(1+alpha)/(2(1+beta)) exp[2 (r - k'^2) log^2((sqrt2 + sqrt(1-alpha))/sqrt(1+alpha))]`
/// where `r` stands for E/K or its elementary over-estimate.
fn ub_main_rewritten<F: Real>(ip: IntervalPair<F>, ratio_e_over_k: F) -> F {
    let (alpha, beta) = (ip.alpha(), ip.beta());
    let mc = (F::one() + alpha) * (F::one() - beta)
        / ((F::one() - alpha) * (F::one() + beta));
    let prefactor = (F::one() + alpha) / (F::of(2.0) * (F::one() + beta));
    let log_term =
        ((F::of(2.0).sqrt() + (F::one() - alpha).sqrt()) / (F::one() + alpha).sqrt()).ln();
    prefactor * (F::of(2.0) * (ratio_e_over_k - mc) * log_term * log_term).exp()
}

/// The rewritten form of the main bound with the exact E/K; agrees with
/// [`ub_main`] to roundoff.
pub fn ub_main_interval_form<F: Real>(ip: IntervalPair<F>) -> F {
    let (canon, _) = ip.canonical();
    let p = crate::capacity::param_from_intervals(canon);
    let (big_k, big_e) = complete_ke(p.modulus);
    ub_main_rewritten(canon, big_e / big_k)
}

/// Elementary sandwich bounds for K(k) and E(k).
pub fn ke_bounds<F: Real>(modulus: Modulus<F>) -> KeBounds<F> {
    let k = modulus.k();
    let kp = modulus.k_prime();
    let mc = modulus.mc();
    let half_pi = F::FRAC_PI_2();
    let quarter = F::of(0.25);

    // log(k')/(k' - 1) without cancellation: k' - 1 = -k^2/(1 + k').
    let kp_minus_1 = -modulus.m() / (F::one() + kp);
    let log_ratio = kp_minus_1.ln_1p() / kp_minus_1;

    let log_4_over_kp = (F::of(4.0) / kp).ln();
    let e_half_pi = half_pi.exp();
    let gamma = (F::of(4.0) - quarter * F::PI() * e_half_pi) / (e_half_pi - F::of(4.0));
    let delta_exp = F::of(2.0).ln() / half_pi.ln();

    let k1 = half_pi * (k.atanh() / k).powf(F::of(0.75));
    let k2 = (F::one() + quarter * mc) * log_4_over_kp - quarter * mc;
    let k3 = half_pi * (F::of(0.75) * log_ratio + F::one() / (F::of(2.0) * (F::one() + kp)));
    let k4 = (F::of(4.0) / kp + (e_half_pi - F::of(4.0)) * kp.powf(gamma)).ln();
    let k5 = (F::one() + quarter * mc) * log_4_over_kp;
    let e1 = half_pi
        * ((F::one() + kp.powf(F::of(1.5))) * F::of(0.5)).powf(F::of(2.0) / F::of(3.0));
    let e2 = half_pi * ((F::one() + kp.powf(delta_exp)) * F::of(0.5)).powf(F::one() / delta_exp);

    KeBounds {
        k1,
        k2,
        k3,
        k4,
        k5,
        e1,
        e2,
        gamma,
        delta_exp,
    }
}

/// Upper bound in elementary functions only: the rewritten main bound with
/// `E` replaced by its upper sandwich `E2` and `K` by its lower sandwich
/// `max(K1, K2)`. Over-estimating `E/K` can only increase the bound since
/// the squared-log factor is non-negative, so validity is preserved.
pub fn ub_elementary<F: Real>(ip: IntervalPair<F>) -> F {
    let (canon, _) = ip.canonical();
    let p = crate::capacity::param_from_intervals(canon);
    let kb = ke_bounds(p.modulus);
    let k_lower = kb.k1.max(kb.k2);
    ub_main_rewritten(canon, kb.e2 / k_lower)
}

/// Computes every bound for the pair, mirroring to the canonical
/// orientation first when `alpha + beta < 0`.
pub fn bounds_report<F: Real>(ip: IntervalPair<F>) -> BoundsReport<F> {
    let (canon, reflected) = ip.canonical();
    let (solynin, delta) = lb_solynin(canon);
    BoundsReport {
        lb_symmetric: lb_symmetric(canon),
        lb_pommerenke: lb_pommerenke(canon),
        lb_elementary: lb_elementary(canon),
        lb_solynin: solynin,
        lb_solynin_delta: delta,
        ub_reflection: ub_reflection(canon),
        ub_unit: F::of(0.5),
        ub_gillis: ub_gillis(canon),
        ub_main: ub_main(canon),
        ub_elementary: ub_elementary(canon),
        reflected,
    }
}
