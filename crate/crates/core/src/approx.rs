//! Closed-form and low-temperature approximations for the two-qubit ring,
//! each paired with an exact numerical counterpart elsewhere in the crate.
//!
//! Everything here measures energies in units of the coupling, i.e. J = 1,
//! except where J appears explicitly in a signature. Each formula has a
//! region of validity; [`ApproxInputs`] carries the corresponding flags so
//! downstream consumers can mask values they should not trust.

use serde::Serialize;

use crate::entanglement::PairSelector;
use crate::error::{Error, Result};
use crate::hamiltonian::RingConfig;
use crate::ring_pair_concurrence;

/// Two-level truncation is trusted for B and T up to this fraction of J.
pub const TWO_LEVEL_LIMIT: f64 = 0.25;

/// Pole safety margin: |Bz| must stay below (1 - margin) * 2J for the gap
/// expansion to be trusted.
pub const POLE_MARGIN: f64 = 0.1;

/// Inputs to the approximation formulas plus their region-of-validity flags.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ApproxInputs {
    pub b: f64,
    pub theta: f64,
    pub bx: f64,
    pub bz: f64,
    pub temperature: f64,
    /// B, T small enough that only the two lowest levels matter.
    pub two_level_valid: bool,
    /// |Bz| far enough from the poles at +/- 2J.
    pub pole_safe: bool,
}

impl ApproxInputs {
    pub fn new(bx: f64, bz: f64, temperature: f64) -> Self {
        let b = bx.hypot(bz);
        Self {
            b,
            theta: bx.atan2(bz),
            bx,
            bz,
            temperature,
            two_level_valid: b <= TWO_LEVEL_LIMIT && temperature <= TWO_LEVEL_LIMIT,
            pole_safe: bz.abs() < 2.0 * (1.0 - POLE_MARGIN),
        }
    }
}

/// How an optimal angle was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleMethod {
    Analytic,
    Numeric,
}

/// A field orientation maximizing the tangle at fixed (B, T).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OptimalAngle {
    /// Angle from the z axis, in [0, pi/2].
    pub theta_star: f64,
    pub method: AngleMethod,
}

/// Ground-state tangle of the two-qubit ring in a strictly orthogonal
/// field: tau = J^2 / (J^2 + B^2).
///
/// Not valid at B = 0, where the ground space is degenerate and carries no
/// entanglement; that point is a domain error.
pub fn ground_tangle_orthogonal(j: f64, b: f64) -> Result<f64> {
    if b <= 0.0 {
        return Err(Error::domain(
            "the orthogonal-field tangle formula needs B > 0; at B = 0 no entanglement is present",
        ));
    }
    Ok(j * j / (j * j + b * b))
}

/// Two-level thermal concurrence C = |w0 J/sqrt(J^2+B^2) - w1| with
/// Boltzmann weights over the two lowest orthogonal-field levels.
pub fn two_level_concurrence(j: f64, b: f64, temperature: f64) -> Result<f64> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::domain(format!(
            "two-level concurrence needs T > 0, got {temperature}"
        )));
    }
    let gap = 2.0 * (j * j + b * b).sqrt() - 2.0 * j;
    let boltz = (-gap / temperature).exp();
    let w0 = 1.0 / (1.0 + boltz);
    let w1 = 1.0 - w0;
    Ok((w0 * j / (j * j + b * b).sqrt() - w1).abs())
}

/// Low-field gap between the two lowest levels: 4 Bx^2 / (4 - Bz^2), J = 1.
pub fn gap_approx(bx: f64, bz: f64) -> Result<f64> {
    if bz.abs() >= 2.0 {
        return Err(Error::domain(format!(
            "the gap expansion has poles at Bz = +/-2J; got Bz = {bz}"
        )));
    }
    Ok(4.0 * bx * bx / (4.0 - bz * bz))
}

/// Square-root resummation of the ground energy: -2 sqrt(1 + gap), J = 1.
pub fn ground_energy_approx(bx: f64, bz: f64) -> Result<f64> {
    Ok(-2.0 * (1.0 + gap_approx(bx, bz)?).sqrt())
}

/// Ground-state concurrence approximation C0 = 1 / sqrt(1 + gap), J = 1.
pub fn ground_concurrence_approx(bx: f64, bz: f64) -> Result<f64> {
    Ok(1.0 / (1.0 + gap_approx(bx, bz)?).sqrt())
}

/// The gap at which the two-level thermal concurrence is maximal for a given
/// temperature: root of T (1 + e^(gap/T)) = 2 (1 + gap + sqrt(1 + gap)),
/// found by bisection on gap in [0, 4].
pub fn optimal_gap_exact(temperature: f64) -> Result<f64> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::domain(format!(
            "optimal gap needs T > 0, got {temperature}"
        )));
    }
    let f = |gap: f64| {
        temperature * (1.0 + (gap / temperature).exp()) - 2.0 * (1.0 + gap + (1.0 + gap).sqrt())
    };
    bisect_root(f, 0.0, 4.0, 1e-12)
}

/// Closed-form simplification of the optimal gap: gap = T ln(4/T), valid
/// for T well below both J and the gap itself.
pub fn optimal_gap_closed_form(temperature: f64) -> Result<f64> {
    if !temperature.is_finite() || temperature <= 0.0 || temperature >= 4.0 {
        return Err(Error::domain(format!(
            "closed-form optimal gap needs 0 < T < 4, got {temperature}"
        )));
    }
    Ok(temperature * (4.0 / temperature).ln())
}

/// Analytic optimal angle: sin(theta*) = sqrt( gap/(4-gap) * (4-B^2)/B^2 )
/// with the gap from the closed form above; positive branch.
///
/// Requires the square-root argument in [0, 1] - equivalently B^2 >= gap
/// and B <= 2 - otherwise the optimum lies outside the angular ellipse.
pub fn optimal_angle_analytic(b: f64, temperature: f64) -> Result<OptimalAngle> {
    if b <= 0.0 {
        return Err(Error::domain(format!(
            "field amplitude must be > 0, got {b}"
        )));
    }
    let gap = optimal_gap_closed_form(temperature)?;
    let arg = gap / (4.0 - gap) * (4.0 - b * b) / (b * b);
    if !(0.0..=1.0).contains(&arg) {
        return Err(Error::domain(format!(
            "sin^2(theta*) = {arg:.6} falls outside [0, 1]: (B, T) = ({b}, {temperature}) \
             is outside the constant-gap ellipse"
        )));
    }
    Ok(OptimalAngle {
        theta_star: arg.sqrt().asin(),
        method: AngleMethod::Analytic,
    })
}

/// The transverse field component of the optimal-orientation ellipse at a
/// given Bz: Bx = sqrt( gap * (1 - Bz^2/4) ), positive branch, |Bz| < 2.
pub fn optimal_bx_analytic(bz: f64, temperature: f64) -> Result<f64> {
    if bz.abs() >= 2.0 {
        return Err(Error::domain(format!(
            "the ellipse parameterization needs |Bz| < 2, got {bz}"
        )));
    }
    let gap = optimal_gap_closed_form(temperature)?;
    Ok((gap * (1.0 - bz * bz / 4.0)).sqrt())
}

/// Numerically locate the angle maximizing the exact tangle over
/// theta in [0, pi/2] at fixed B and T: a 65-point coarse grid followed by
/// golden-section refinement to 1e-4 rad. J = 1.
pub fn optimal_angle_numeric(
    b: f64,
    temperature: f64,
    n_qubits: usize,
    pair: &PairSelector,
) -> Result<OptimalAngle> {
    if b <= 0.0 {
        return Err(Error::domain(format!(
            "field amplitude must be > 0, got {b}"
        )));
    }
    if temperature < 0.0 {
        return Err(Error::domain(format!(
            "temperature must be >= 0, got {temperature}"
        )));
    }
    let tangle_at = |theta: f64| -> Result<f64> {
        let cfg = RingConfig::from_polar(n_qubits, 1.0, b, theta)?;
        Ok(ring_pair_concurrence(&cfg, temperature, pair)?.tangle)
    };

    const COARSE_POINTS: usize = 65;
    let top = std::f64::consts::FRAC_PI_2;
    let step = top / (COARSE_POINTS - 1) as f64;
    let mut best_idx = 0;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..COARSE_POINTS {
        let val = tangle_at(i as f64 * step)?;
        if val > best_val {
            best_val = val;
            best_idx = i;
        }
    }
    let lo = (best_idx as f64 - 1.0).max(0.0) * step;
    let hi = ((best_idx + 1) as f64 * step).min(top);
    let theta_star = golden_section_max(&tangle_at, lo, hi, 1e-4)?;
    Ok(OptimalAngle {
        theta_star,
        method: AngleMethod::Numeric,
    })
}

/// Bisection root finder; requires a sign change over [lo, hi].
fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NumericalFailure(format!(
            "no bracketed root in [{lo}, {hi}]: f = ({flo:.3e}, {fhi:.3e})"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section maximization on [a, b] down to an interval of width `tol`.
fn golden_section_max(
    f: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::diagonalize;

    #[test]
    fn ground_tangle_examples() {
        assert!((ground_tangle_orthogonal(1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((ground_tangle_orthogonal(1.0, 3.0).unwrap() - 0.1).abs() < 1e-15);
        assert!(ground_tangle_orthogonal(1.0, 1e-6).unwrap() > 0.999999999);
        assert!(ground_tangle_orthogonal(1.0, 0.0).is_err());
    }

    #[test]
    fn two_level_limits() {
        // T -> 0+: the weight collapses onto the ground state and C becomes
        // the square root of the zero-temperature tangle.
        let c = two_level_concurrence(1.0, 0.5, 1e-6).unwrap();
        let want = ground_tangle_orthogonal(1.0, 0.5).unwrap().sqrt();
        assert!((c - want).abs() < 1e-12);
        assert!(two_level_concurrence(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn two_level_tracks_exact_concurrence() {
        // (J=1, B=0.5, T=0.1): two-level truncation against the exact
        // four-level thermal concurrence; tolerance set by the Boltzmann
        // weight of the second excited level.
        let cfg = RingConfig::new(2, 1.0, 0.5, 0.0).unwrap();
        let pair = PairSelector::new(0, 1, 2).unwrap();
        let exact = ring_pair_concurrence(&cfg, 0.1, &pair).unwrap().concurrence;
        let approx = two_level_concurrence(1.0, 0.5, 0.1).unwrap();
        assert!((exact - approx).abs() < 2e-3, "exact {exact} vs {approx}");
    }

    #[test]
    fn gap_and_energy_examples() {
        assert_eq!(gap_approx(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(ground_energy_approx(0.0, 0.7).unwrap(), -2.0);
        assert!((gap_approx(0.2, 0.0).unwrap() - 0.04).abs() < 1e-15);
        assert!(gap_approx(0.5, 2.0).is_err());
        assert!(gap_approx(0.5, -2.3).is_err());

        // At Bz = 0 the square-root form reproduces the exact ground energy.
        let exact = diagonalize(&RingConfig::new(2, 1.0, 0.2, 0.0).unwrap().hamiltonian())
            .unwrap()
            .eigenvalues()[0];
        let approx = ground_energy_approx(0.2, 0.0).unwrap();
        assert!(((approx - exact) / exact).abs() < 0.01);
    }

    #[test]
    fn ground_concurrence_examples() {
        assert_eq!(ground_concurrence_approx(0.0, 0.5).unwrap(), 1.0);

        // Bz = 0, Bx = 1: must match the exact orthogonal-field value.
        let c0 = ground_concurrence_approx(1.0, 0.0).unwrap();
        assert!((c0 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        // Tilted field: within 2% of the exact ground-state concurrence.
        let (bx, bz) = (0.3, 0.5);
        let spec = diagonalize(&RingConfig::new(2, 1.0, bx, bz).unwrap().hamiltonian()).unwrap();
        let v0 = spec.eigenvector(0);
        let exact = crate::entanglement::pure_concurrence(&[v0[0], v0[1], v0[2], v0[3]]).unwrap();
        let approx = ground_concurrence_approx(bx, bz).unwrap();
        assert!(
            ((approx - exact) / exact).abs() < 0.02,
            "approx {approx} vs exact {exact}"
        );
    }

    #[test]
    fn optimal_gap_routes_agree_at_low_t() {
        // Closed form at T = 0.1: 0.1 * ln(40).
        let closed = optimal_gap_closed_form(0.1).unwrap();
        assert!((closed - 0.1 * 40.0f64.ln()).abs() < 1e-15);
        assert!((closed - 0.368_888).abs() < 1e-3);

        // Bisected root vs closed form at T = 0.05: within 10%.
        let exact = optimal_gap_exact(0.05).unwrap();
        let simple = optimal_gap_closed_form(0.05).unwrap();
        assert!(
            ((exact - simple) / exact).abs() < 0.10,
            "{exact} vs {simple}"
        );

        // Both collapse to zero with T.
        assert!(optimal_gap_exact(1e-6).unwrap() < 1e-4);
        assert!(optimal_gap_closed_form(1e-6).unwrap() < 1e-4);
    }

    #[test]
    fn optimal_gap_requires_bracket() {
        assert!(optimal_gap_exact(0.0).is_err());
        // Far outside the validity range the bracket disappears.
        assert!(matches!(
            optimal_gap_exact(2.5),
            Err(Error::NumericalFailure(_))
        ));
    }

    #[test]
    fn analytic_angle_branches() {
        // B = 2 kills the (4 - B^2) factor regardless of the gap.
        let angle = optimal_angle_analytic(2.0, 0.1).unwrap();
        assert!(angle.theta_star.abs() < 1e-12);

        // Tiny T means tiny gap and theta* -> 0.
        let angle = optimal_angle_analytic(1.0, 1e-9).unwrap();
        assert!(angle.theta_star < 1e-3);

        // B below sqrt(gap): outside the ellipse.
        assert!(optimal_angle_analytic(0.1, 0.2).is_err());
        assert!(optimal_angle_analytic(2.5, 0.1).is_err());
    }

    #[test]
    fn angle_and_bx_parameterizations_are_consistent() {
        // Substituting Bz = B cos(theta*) into the Bx form must recover
        // Bx = B sin(theta*): an algebraic identity given the same gap.
        for (b, t) in [(1.0, 0.1), (1.5, 0.05), (0.8, 0.12)] {
            let theta = optimal_angle_analytic(b, t).unwrap().theta_star;
            let bz = b * theta.cos();
            let bx = optimal_bx_analytic(bz, t).unwrap();
            assert!(
                (bx - b * theta.sin()).abs() < 1e-9,
                "b={b} t={t}: {bx} vs {}",
                b * theta.sin()
            );
        }
    }

    #[test]
    fn numeric_angle_matches_analytic_in_validity_range() {
        // The analytic chain (two-level truncation, low-field gap expansion)
        // tracks the exact maximizer tightly at low T and drifts as T grows;
        // these bounds pin the measured envelope.
        let pair = PairSelector::new(0, 1, 2).unwrap();
        for (b, t, tol) in [(1.0, 0.02, 0.01), (1.0, 0.05, 0.05), (1.0, 0.1, 0.1)] {
            let numeric = optimal_angle_numeric(b, t, 2, &pair).unwrap();
            let analytic = optimal_angle_analytic(b, t).unwrap();
            let diff = (numeric.theta_star - analytic.theta_star).abs();
            assert!(
                diff < tol,
                "b={b} t={t}: numeric {} vs analytic {} (diff {diff})",
                numeric.theta_star,
                analytic.theta_star
            );
        }
    }

    #[test]
    fn high_temperature_prefers_orthogonal_fields() {
        let pair = PairSelector::new(0, 1, 2).unwrap();
        let hot = optimal_angle_numeric(1.0, 1.0, 2, &pair).unwrap();
        assert!(hot.theta_star > std::f64::consts::FRAC_PI_2 - 0.1);
    }

    #[test]
    fn zero_temperature_prefers_longitudinal_limit() {
        // At T = 0 with B < 2J the tangle climbs toward 1 as theta -> 0+
        // while theta = 0 itself is the degenerate unentangled point, so the
        // located maximizer sits just off the axis.
        let pair = PairSelector::new(0, 1, 2).unwrap();
        let cold = optimal_angle_numeric(1.0, 0.0, 2, &pair).unwrap();
        assert!(cold.theta_star > 0.0);
        assert!(cold.theta_star < 0.05, "theta* = {}", cold.theta_star);
    }

    #[test]
    fn exact_tangle_is_unimodal_in_b_at_fixed_t() {
        // Along T = 0.2, the orthogonal-field tangle rises to a single
        // interior peak and then decays.
        let pair = PairSelector::new(0, 1, 2).unwrap();
        let tangles: Vec<f64> = (1..=60)
            .map(|i| {
                let b = i as f64 * 0.05;
                let cfg = RingConfig::new(2, 1.0, b, 0.0).unwrap();
                ring_pair_concurrence(&cfg, 0.2, &pair).unwrap().tangle
            })
            .collect();
        let peak = tangles
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        for w in tangles[..=peak].windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "not rising before the peak");
        }
        for w in tangles[peak..].windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "not falling after the peak");
        }
        assert!(peak > 0 && peak < 59, "peak must be interior");
    }

    #[test]
    fn optimal_angle_is_nondecreasing_in_temperature() {
        let pair = PairSelector::new(0, 1, 2).unwrap();
        for b in [0.5, 1.5] {
            let mut last = 0.0;
            for t in [0.02, 0.05, 0.1, 0.2, 0.5, 1.0] {
                let theta = optimal_angle_numeric(b, t, 2, &pair).unwrap().theta_star;
                assert!(
                    theta >= last - 1e-4,
                    "b={b}: theta*({t}) = {theta} dropped below {last}"
                );
                last = theta;
            }
        }
    }

    #[test]
    fn validity_flags() {
        let inside = ApproxInputs::new(0.1, 0.1, 0.1);
        assert!(inside.two_level_valid && inside.pole_safe);
        let hot = ApproxInputs::new(0.1, 0.1, 0.5);
        assert!(!hot.two_level_valid);
        let near_pole = ApproxInputs::new(0.1, 1.9, 0.1);
        assert!(!near_pole.pole_safe);
    }
}
