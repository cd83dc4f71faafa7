//! The Planck scale and the internal natural-unit convention.
//!
//! Internally ħ = c = k_B = 1 and the Planck quantities E*, L*, P* are the
//! units of energy, length and momentum, so all of them equal 1 as well
//! (P*·L* = ħ holds as 1·1 = 1). The only role of this module beyond holding
//! the fine-structure constant is converting internal values to SI display
//! units.

use crate::{Error, Result};

/// CODATA value of the fine-structure constant's inverse, used as default.
pub const DEFAULT_INVERSE_ALPHA: f64 = 137.035999;

/// Planck mass in grams.
pub const PLANCK_MASS_G: f64 = 2.18e-5;
/// Planck energy in erg (M* c² with c in cm/s).
pub const PLANCK_ENERGY_ERG: f64 = PLANCK_MASS_G * C_CM_PER_S * C_CM_PER_S;
/// Planck length in cm (CODATA).
pub const PLANCK_LENGTH_CM: f64 = 1.616255e-33;
/// Planck momentum in g·cm/s.
pub const PLANCK_MOMENTUM_G_CM_PER_S: f64 = PLANCK_MASS_G * C_CM_PER_S;

const C_CM_PER_S: f64 = 2.99792458e10;

/// Kinds of quantities with an SI display conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Energy,
    Length,
    Momentum,
    Mass,
}

/// The cutoff scale: fine-structure constant plus the internal units.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanckScale {
    alpha: f64,
    energy_star: f64,
    length_star: f64,
    momentum_star: f64,
    si_mass_star: f64,
}

impl PlanckScale {
    /// Builds a scale record with internal units fixed to 1.
    ///
    /// Fails unless 0 < alpha < 1.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) || !alpha.is_finite() {
            return Err(Error::domain(format!(
                "alpha must satisfy 0 < alpha < 1, got {alpha}"
            )));
        }
        Ok(PlanckScale {
            alpha,
            energy_star: 1.0,
            length_star: 1.0,
            momentum_star: 1.0,
            si_mass_star: PLANCK_MASS_G,
        })
    }

    /// Fine-structure constant e²/ħc.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Planck energy in internal units (always 1).
    pub fn energy_star(&self) -> f64 {
        self.energy_star
    }

    /// Planck length in internal units (always 1).
    pub fn length_star(&self) -> f64 {
        self.length_star
    }

    /// Planck momentum in internal units (always 1).
    pub fn momentum_star(&self) -> f64 {
        self.momentum_star
    }

    /// Converts an internal-unit value to cgs display units
    /// (erg, cm, g·cm/s or g depending on `kind`).
    pub fn to_display(&self, value: f64, kind: Kind) -> f64 {
        value * Self::display_unit(kind)
    }

    /// Converts a cgs display value back to internal units.
    pub fn from_display(&self, value: f64, kind: Kind) -> f64 {
        value / Self::display_unit(kind)
    }

    fn display_unit(kind: Kind) -> f64 {
        match kind {
            Kind::Energy => PLANCK_ENERGY_ERG,
            Kind::Length => PLANCK_LENGTH_CM,
            Kind::Momentum => PLANCK_MOMENTUM_G_CM_PER_S,
            Kind::Mass => PLANCK_MASS_G,
        }
    }
}

impl Default for PlanckScale {
    fn default() -> Self {
        PlanckScale::new(1.0 / DEFAULT_INVERSE_ALPHA).expect("default alpha is in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn alpha_range_enforced() {
        assert!(PlanckScale::new(0.0).is_err());
        assert!(PlanckScale::new(1.0).is_err());
        assert!(PlanckScale::new(-0.5).is_err());
        assert!(PlanckScale::new(f64::NAN).is_err());
        assert!(PlanckScale::new(0.5).is_ok());
    }

    #[test]
    fn ratio_prefactor_matches_137_over_16pi() {
        let scale = PlanckScale::new(1.0 / 137.0).unwrap();
        let prefactor = 1.0 / (16.0 * PI * scale.alpha());
        assert_relative_eq!(prefactor, 137.0 / (16.0 * PI), max_relative = 1e-15);
        assert!((prefactor - 2.73).abs() < 0.01);
    }

    #[test]
    fn default_alpha_self_energy() {
        let scale = PlanckScale::default();
        // E0 = (alpha/pi) E* for alpha = 1/137.035999
        assert_relative_eq!(
            scale.alpha() / PI,
            2.3228194671955555e-3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn unit_alpha_collapses_to_one_over_pi() {
        let scale = PlanckScale::new(1.0 - 1e-12).unwrap();
        assert_relative_eq!(scale.alpha() / PI, 1.0 / PI, max_relative = 1e-9);
    }

    #[test]
    fn display_conversions() {
        let scale = PlanckScale::default();
        assert_relative_eq!(scale.to_display(1.0, Kind::Mass), 2.18e-5);
        assert_eq!(scale.to_display(0.0, Kind::Energy), 0.0);
        // standard CODATA Planck length as oracle
        assert_relative_eq!(
            scale.to_display(2.0, Kind::Length),
            2.0 * 1.616255e-33,
            max_relative = 1e-12
        );
    }

    #[test]
    fn display_round_trip() {
        let scale = PlanckScale::default();
        for kind in [Kind::Energy, Kind::Length, Kind::Momentum, Kind::Mass] {
            let v = 3.7;
            assert_relative_eq!(
                scale.from_display(scale.to_display(v, kind), kind),
                v,
                max_relative = 1e-12
            );
        }
    }
}
