//! Cutoff-modified photon-gas thermodynamics.
//!
//! The mean spectral energy of a level with ε = p (massless dispersion,
//! cutoff units where E* = 1 and p ∈ [0, 1]) is
//!
//! ```text
//! ε̄(p) = ε / (exp((ε − μ)/T) − (1 − ε))
//! ```
//!
//! and the free energy is the capped quadrature of the matching log term
//! over the density of states. As the cutoff recedes (T ≪ 1 in cutoff
//! units) all state functions approach the standard Planck-gas closed
//! forms, which serve as oracles.

use crate::specfun::integrate_adaptive;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.2020569031595943;

/// Width of the analytic branch at the p = 1 endpoint of the F integrand.
const ENDPOINT_BRANCH: f64 = 1e-4;

/// A thermodynamic state point in cutoff units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    /// Temperature in E*/k_B.
    pub t: f64,
    /// Chemical potential in E*, ≤ 0 (0 for the photon gas).
    pub mu: f64,
    /// Volume in V* = L*³.
    pub v: f64,
    /// Spin degeneracy, 1 or 2.
    pub g_s: u8,
}

impl ThermoPoint {
    pub fn new(t: f64, mu: f64, v: f64, g_s: u8) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::domain(format!("temperature must be > 0, got {t}")));
        }
        if mu.is_nan() || mu > 0.0 {
            return Err(Error::domain(format!("chemical potential must be <= 0, got {mu}")));
        }
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::domain(format!("volume must be > 0, got {v}")));
        }
        if g_s != 1 && g_s != 2 {
            return Err(Error::domain(format!("g_s must be 1 or 2, got {g_s}")));
        }
        Ok(ThermoPoint { t, mu, v, g_s })
    }

    /// Photon-gas default: μ = 0, two polarizations.
    pub fn photon(t: f64, v: f64) -> Result<Self> {
        ThermoPoint::new(t, 0.0, v, 2)
    }
}

/// The derived state functions at a [`ThermoPoint`], all in cutoff units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateFunctions {
    pub free_energy: f64,
    pub internal_energy: f64,
    pub particle_number: f64,
    pub entropy: f64,
    pub pressure: f64,
}

fn check_spectral_args(p: f64, t: f64, mu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::domain(format!(
            "momentum must lie in [0, 1] (cutoff units), got {p}"
        )));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("temperature must be > 0, got {t}")));
    }
    if mu.is_nan() || mu > 0.0 {
        return Err(Error::domain(format!("chemical potential must be <= 0, got {mu}")));
    }
    Ok(())
}

// exp((p - mu)/T) - (1 - p), written through expm1 so the small-ε
// cancellation at μ = 0 is handled without an explicit series branch
fn denominator(p: f64, t: f64, mu: f64) -> f64 {
    ((p - mu) / t).exp_m1() + p
}

/// Mean spectral energy ε̄(p) of the level ε = p.
pub fn mean_energy(p: f64, t: f64, mu: f64) -> Result<f64> {
    check_spectral_args(p, t, mu)?;
    if p == 0.0 && mu == 0.0 {
        // limit of p / (p/T + p)
        return Ok(t / (1.0 + t));
    }
    Ok(p / denominator(p, t, mu))
}

/// Mean occupancy n̄(p) = ε̄(p)/ε(p). Diverges at p = 0, μ = 0 like the
/// standard Bose distribution.
pub fn occupancy(p: f64, t: f64, mu: f64) -> Result<f64> {
    check_spectral_args(p, t, mu)?;
    Ok(1.0 / denominator(p, t, mu))
}

/// Standard Bose mean energy ε/(e^{(ε−μ)/T} − 1), the infinite-cutoff limit.
pub fn bose_mean_energy(p: f64, t: f64, mu: f64) -> Result<f64> {
    check_spectral_args(p, t, mu)?;
    if p == 0.0 && mu == 0.0 {
        return Ok(t);
    }
    Ok(p / ((p - mu) / t).exp_m1())
}

fn free_energy_integrand(p: f64, t: f64, mu: f64) -> f64 {
    let q = 1.0 - p;
    let a = (-(p - mu) / t).exp();
    if q < ENDPOINT_BRANCH {
        // ln(1 - qA) = -qA - q²A²/2 - ..., cancelling the 1/q prefactor
        -p * p * (a + 0.5 * q * a * a)
    } else {
        // ln_1p keeps the tail accurate when qA drops below machine epsilon
        p * p / q * (-q * a).ln_1p()
    }
}

/// Free energy F(T, V) = g_s·(V/2π²)·T·∫₀¹ p²/(1−p)·ln{1 − (1−p)e^{−(p−μ)/T}} dp.
///
/// Negative for every valid state point; P·V = −F.
pub fn free_energy(point: &ThermoPoint) -> Result<f64> {
    let ThermoPoint { t, mu, v, g_s } = *point;
    let q = integrate_adaptive(|p| free_energy_integrand(p, t, mu), 0.0, 1.0, 1e-10, 1e-250)?;
    Ok(g_s as f64 * v / (2.0 * PI * PI) * t * q.value)
}

/// All state functions: F by quadrature, U and N as mode sums of ε̄ and n̄
/// over the density of states, S = (U − F − μN)/T and P = −F/V.
pub fn state_functions(point: &ThermoPoint) -> Result<StateFunctions> {
    let ThermoPoint { t, mu, v, g_s } = *point;
    let dos = g_s as f64 * v / (2.0 * PI * PI);
    let f = free_energy(point)?;
    let u = dos
        * integrate_adaptive(|p| p * p * p / denominator(p, t, mu), 0.0, 1.0, 1e-10, 1e-250)?
            .value;
    let n = dos
        * integrate_adaptive(|p| p * p / denominator(p, t, mu), 0.0, 1.0, 1e-10, 1e-250)?
            .value;
    Ok(StateFunctions {
        free_energy: f,
        internal_energy: u,
        particle_number: n,
        entropy: (u - f - mu * n) / t,
        pressure: -f / v,
    })
}

/// Standard Planck-gas free energy −g_s·(π²/90)·V·T⁴ (μ = 0 closed form).
pub fn classical_free_energy(point: &ThermoPoint) -> f64 {
    -(point.g_s as f64) * PI * PI / 90.0 * point.v * point.t.powi(4)
}

/// Standard Planck-gas internal energy g_s·(π²/30)·V·T⁴.
pub fn classical_internal_energy(point: &ThermoPoint) -> f64 {
    point.g_s as f64 * PI * PI / 30.0 * point.v * point.t.powi(4)
}

/// Standard Planck-gas photon number g_s·(ζ(3)/π²)·V·T³.
pub fn classical_particle_number(point: &ThermoPoint) -> f64 {
    point.g_s as f64 * ZETA_3 / (PI * PI) * point.v * point.t.powi(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn thermo_point_validation() {
        assert!(ThermoPoint::new(-1.0, 0.0, 1.0, 2).is_err());
        assert!(ThermoPoint::new(1.0, 0.5, 1.0, 2).is_err());
        assert!(ThermoPoint::new(1.0, 0.0, 0.0, 2).is_err());
        assert!(ThermoPoint::new(1.0, 0.0, 1.0, 3).is_err());
        assert!(ThermoPoint::photon(0.1, 1.0).is_ok());
    }

    #[test]
    fn mean_energy_frozen_value() {
        // 0.5 / (e^5 - 0.5), direct evaluation
        assert_relative_eq!(
            mean_energy(0.5, 0.1, 0.0).unwrap(),
            3.380361849030984e-3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn mean_energy_at_cutoff_is_boltzmann() {
        for &t in &[0.3, 1.0, 2.0] {
            assert_relative_eq!(
                mean_energy(1.0, t, 0.0).unwrap(),
                (-1.0 / t).exp(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn occupancy_values() {
        assert_relative_eq!(
            occupancy(1.0, 1.0, 0.0).unwrap(),
            (-1.0_f64).exp(),
            max_relative = 1e-13
        );
        // suppression at low temperature
        assert!(occupancy(0.5, 0.01, 0.0).unwrap() < 1e-20);
        for &p in &[0.1, 0.5, 0.9] {
            assert_relative_eq!(
                mean_energy(p, 0.7, -0.3).unwrap() / p,
                occupancy(p, 0.7, -0.3).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn spectral_domain_errors() {
        assert!(mean_energy(1.5, 1.0, 0.0).is_err());
        assert!(mean_energy(-0.1, 1.0, 0.0).is_err());
        assert!(mean_energy(0.5, 0.0, 0.0).is_err());
        assert!(occupancy(0.5, 1.0, 0.1).is_err());
    }

    #[test]
    fn cutoff_suppresses_mean_energy_below_bose() {
        // the extra ε in the denominator enlarges it, so ε̄ ≤ the Bose value
        for &p in &[0.01, 0.1, 0.5, 0.9, 1.0] {
            for &t in &[0.05, 0.5, 2.0] {
                let cut = mean_energy(p, t, 0.0).unwrap();
                let bose = bose_mean_energy(p, t, 0.0).unwrap();
                assert!(cut <= bose, "p={p}, T={t}: {cut} > {bose}");
            }
        }
    }

    #[test]
    fn free_energy_negative_and_pv_identity() {
        let point = ThermoPoint::photon(0.1, 3.0).unwrap();
        let f = free_energy(&point).unwrap();
        assert!(f < 0.0);
        let sf = state_functions(&point).unwrap();
        assert_relative_eq!(sf.pressure * point.v, -sf.free_energy, max_relative = 1e-15);
        assert!(sf.entropy >= 0.0);
    }

    #[test]
    fn free_energy_vanishes_at_low_temperature() {
        let point = ThermoPoint::photon(1e-4, 1.0).unwrap();
        let f = free_energy(&point).unwrap();
        assert!(f < 0.0 && f > -1e-12);
    }

    #[test]
    fn classical_limit_recovery() {
        let point = ThermoPoint::photon(1e-3, 1.0).unwrap();
        let sf = state_functions(&point).unwrap();
        assert_relative_eq!(sf.free_energy, classical_free_energy(&point), max_relative = 1e-2);
        assert_relative_eq!(
            sf.internal_energy,
            classical_internal_energy(&point),
            max_relative = 1e-2
        );
        assert_relative_eq!(
            sf.particle_number,
            classical_particle_number(&point),
            max_relative = 1e-2
        );
    }

    #[test]
    fn classical_deviation_decreases_with_temperature() {
        let mut last = f64::INFINITY;
        for &t in &[1e-1, 1e-2, 1e-3] {
            let point = ThermoPoint::photon(t, 1.0).unwrap();
            let dev = (free_energy(&point).unwrap() / classical_free_energy(&point) - 1.0).abs();
            assert!(dev < last, "deviation not monotone at T={t}");
            last = dev;
        }
    }

    #[test]
    fn endpoint_branch_continuous() {
        let (t, mu) = (0.7, -0.2);
        let inside = free_energy_integrand(1.0 - ENDPOINT_BRANCH * 0.999, t, mu);
        let outside = free_energy_integrand(1.0 - ENDPOINT_BRANCH * 1.001, t, mu);
        assert_relative_eq!(inside, outside, max_relative = 1e-7);
    }

    #[test]
    fn endpoint_excision_oracle() {
        // at T = 0.04 the strip [1-1e-4, 1] contributes below 1e-8 relative,
        // so the branched full-range integral must match the excised one
        let (t, mu) = (0.04, 0.0);
        let full = integrate_adaptive(|p| free_energy_integrand(p, t, mu), 0.0, 1.0, 1e-11, 1e-250)
            .unwrap()
            .value;
        let excised = integrate_adaptive(
            |p| p * p / (1.0 - p) * (1.0 - (1.0 - p) * (-(p - mu) / t).exp()).ln(),
            0.0,
            1.0 - ENDPOINT_BRANCH,
            1e-11,
            1e-250,
        )
        .unwrap()
        .value;
        assert_relative_eq!(full, excised, max_relative = 1e-8);
    }

    #[test]
    fn thermodynamic_derivative_consistency() {
        let (t, mu, v) = (0.2, -0.1, 1.0);
        let sf = state_functions(&ThermoPoint::new(t, mu, v, 2).unwrap()).unwrap();
        let h_mu = 1e-4 * mu.abs();
        let f_plus = free_energy(&ThermoPoint::new(t, mu + h_mu, v, 2).unwrap()).unwrap();
        let f_minus = free_energy(&ThermoPoint::new(t, mu - h_mu, v, 2).unwrap()).unwrap();
        let n_fd = -(f_plus - f_minus) / (2.0 * h_mu);
        assert!((n_fd - sf.particle_number).abs() <= 1e-6_f64.max(1e-4 * sf.particle_number.abs()));

        let h_t = 1e-4 * t;
        let f_plus = free_energy(&ThermoPoint::new(t + h_t, mu, v, 2).unwrap()).unwrap();
        let f_minus = free_energy(&ThermoPoint::new(t - h_t, mu, v, 2).unwrap()).unwrap();
        let s_fd = -(f_plus - f_minus) / (2.0 * h_t);
        assert!((s_fd - sf.entropy).abs() <= 1e-6_f64.max(1e-4 * sf.entropy.abs()));
    }

    #[test]
    fn all_state_functions_finite_on_grid() {
        for &t in &[1e-3, 0.1, 1.0, 10.0] {
            for &mu in &[0.0, -0.5, -5.0] {
                let sf = state_functions(&ThermoPoint::new(t, mu, 2.0, 2).unwrap()).unwrap();
                for v in [
                    sf.free_energy,
                    sf.internal_energy,
                    sf.particle_number,
                    sf.entropy,
                    sf.pressure,
                ] {
                    assert!(v.is_finite(), "non-finite at T={t}, mu={mu}");
                }
            }
        }
    }
}
