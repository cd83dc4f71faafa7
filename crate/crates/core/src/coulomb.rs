//! Regularized Coulomb interaction under the momentum cutoff.
//!
//! With the mode sum capped at k* = 1/L*, the pair interaction becomes
//! (2/π)·Si(r/L*)/r — finite at r = 0 where it tends to 2/(πL*), and the
//! ordinary 1/r Coulomb law at large separation. The i = j terms of the
//! double sum are the (now finite) self-energies.

use crate::specfun::sine_integral;
use crate::units::PlanckScale;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Below this separation the kernel switches to its Taylor expansion.
const KERNEL_TAYLOR_THRESHOLD: f64 = 1e-4;

/// A point charge: magnitude in units of the elementary charge e and
/// position in units of L*.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointCharge {
    pub e: f64,
    pub r: [f64; 3],
}

/// A configuration of point charges. Coincident positions are allowed; the
/// kernel is finite there.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ChargeConfig {
    pub charges: Vec<PointCharge>,
}

impl ChargeConfig {
    pub fn new(charges: Vec<PointCharge>) -> Result<Self> {
        for (i, c) in charges.iter().enumerate() {
            if !c.e.is_finite() || c.r.iter().any(|x| !x.is_finite()) {
                return Err(Error::domain(format!("charge {i} has non-finite data")));
            }
        }
        Ok(ChargeConfig { charges })
    }

    pub fn len(&self) -> usize {
        self.charges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }
}

pub(crate) fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Regularized pair kernel (2/π)·Si(r)/r in units of 1/L*.
///
/// Finite and positive for all r ≥ 0; kernel(0) = 2/π, kernel(r) → 1/r for
/// r ≫ 1.
pub fn kernel(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::domain(format!("kernel requires r >= 0, got {r}")));
    }
    if r < KERNEL_TAYLOR_THRESHOLD {
        let r2 = r * r;
        Ok((2.0 / PI) * (1.0 - r2 / 18.0 + r2 * r2 / 600.0))
    } else {
        Ok((2.0 / PI) * sine_integral(r)? / r)
    }
}

/// Total interaction energy ½ Σᵢ Σⱼ eᵢeⱼ·kernel(rᵢⱼ) in units of e²/L*.
///
/// With `include_self` the i = j terms contribute the finite self-energies;
/// without it they are skipped.
pub fn config_energy(config: &ChargeConfig, include_self: bool) -> Result<f64> {
    let n = config.charges.len();
    // fixed upper-triangle order keeps the reduction deterministic
    let mut energy = 0.0;
    for i in 0..n {
        let ci = config.charges[i];
        if include_self {
            energy += 0.5 * ci.e * ci.e * kernel(0.0)?;
        }
        for j in (i + 1)..n {
            let cj = config.charges[j];
            let r = distance(ci.r, cj.r);
            energy += ci.e * cj.e * kernel(r)?;
        }
    }
    Ok(energy)
}

/// Self-energy of a single charge, (e²α/π)·E*. For e = 1 this is (α/π)·E*.
pub fn self_energy(e: f64, scale: &PlanckScale) -> f64 {
    e * e * scale.alpha() / PI * scale.energy_star()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn unit_charge(r: [f64; 3]) -> PointCharge {
        PointCharge { e: 1.0, r }
    }

    #[test]
    fn kernel_at_zero_is_two_over_pi() {
        assert_abs_diff_eq!(kernel(0.0).unwrap(), 2.0 / PI, epsilon = 1e-15);
    }

    #[test]
    fn kernel_taylor_branch_continuous() {
        let below = kernel(KERNEL_TAYLOR_THRESHOLD * 0.999).unwrap();
        let above = kernel(KERNEL_TAYLOR_THRESHOLD * 1.001).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-10);
    }

    #[test]
    fn kernel_at_one() {
        // (2/pi) * Si(1), Si(1) frozen from the quadrature oracle
        assert_abs_diff_eq!(kernel(1.0).unwrap(), 0.6022951888979785, epsilon = 1e-12);
    }

    #[test]
    fn kernel_coulomb_recovery() {
        for &r in &[1e3, 1e4, 1e5] {
            let k = kernel(r).unwrap();
            assert!((k * r - 1.0).abs() <= 2.0 / (PI * r) * (1.0 + 1.0 / r));
        }
    }

    #[test]
    fn kernel_rejects_negative() {
        assert!(kernel(-1.0).is_err());
        assert!(kernel(f64::NAN).is_err());
    }

    #[test]
    fn single_charge_self_energy_is_one_over_pi() {
        let config = ChargeConfig::new(vec![unit_charge([0.0; 3])]).unwrap();
        assert_abs_diff_eq!(
            config_energy(&config, true).unwrap(),
            1.0 / PI,
            epsilon = 1e-14
        );
        assert_eq!(config_energy(&config, false).unwrap(), 0.0);
    }

    #[test]
    fn opposite_charges_far_apart_recover_coulomb() {
        let r = 1e4;
        let config = ChargeConfig::new(vec![
            unit_charge([0.0; 3]),
            PointCharge {
                e: -1.0,
                r: [r, 0.0, 0.0],
            },
        ])
        .unwrap();
        let e = config_energy(&config, false).unwrap();
        assert_relative_eq!(e, -1.0 / r, max_relative = 1e-3);
    }

    #[test]
    fn two_unit_charges_at_unit_distance() {
        let config = ChargeConfig::new(vec![unit_charge([0.0; 3]), unit_charge([1.0, 0.0, 0.0])])
            .unwrap();
        assert_abs_diff_eq!(
            config_energy(&config, false).unwrap(),
            0.6022951888979785,
            epsilon = 1e-12
        );
    }

    #[test]
    fn coincident_distinct_charges_finite() {
        let config =
            ChargeConfig::new(vec![unit_charge([0.5; 3]), unit_charge([0.5; 3])]).unwrap();
        let e = config_energy(&config, false).unwrap();
        assert_abs_diff_eq!(e, 2.0 / PI, epsilon = 1e-14);
        assert!(config_energy(&config, true).unwrap().is_finite());
    }

    #[test]
    fn self_energy_values() {
        let scale = PlanckScale::default();
        assert_relative_eq!(
            self_energy(1.0, &scale),
            2.3228194671955555e-3,
            max_relative = 1e-12
        );
        assert_eq!(self_energy(0.0, &scale), 0.0);
        assert_relative_eq!(
            self_energy(2.0, &scale),
            4.0 * self_energy(1.0, &scale),
            max_relative = 1e-14
        );
    }

    #[test]
    fn config_rejects_non_finite() {
        assert!(ChargeConfig::new(vec![PointCharge {
            e: f64::NAN,
            r: [0.0; 3]
        }])
        .is_err());
        assert!(ChargeConfig::new(vec![PointCharge {
            e: 1.0,
            r: [f64::INFINITY, 0.0, 0.0]
        }])
        .is_err());
    }

    fn rotate_z(p: [f64; 3], angle: f64) -> [f64; 3] {
        let (s, c) = angle.sin_cos();
        [c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]]
    }

    proptest! {
        #[test]
        fn energy_finite_for_finite_configs(
            charges in proptest::collection::vec(
                (-3.0_f64..3.0, -10.0_f64..10.0, -10.0_f64..10.0, -10.0_f64..10.0), 0..6)
        ) {
            let config = ChargeConfig::new(
                charges.iter().map(|&(e, x, y, z)| PointCharge { e, r: [x, y, z] }).collect()
            ).unwrap();
            prop_assert!(config_energy(&config, true).unwrap().is_finite());
        }

        #[test]
        fn energy_invariant_under_permutation_and_motion(
            charges in proptest::collection::vec(
                (-2.0_f64..2.0, -5.0_f64..5.0, -5.0_f64..5.0, -5.0_f64..5.0), 2..5),
            shift in (-3.0_f64..3.0, -3.0_f64..3.0, -3.0_f64..3.0),
            angle in 0.0_f64..std::f64::consts::TAU,
        ) {
            let base: Vec<PointCharge> = charges
                .iter()
                .map(|&(e, x, y, z)| PointCharge { e, r: [x, y, z] })
                .collect();
            let mut permuted = base.clone();
            permuted.reverse();
            let moved: Vec<PointCharge> = base
                .iter()
                .map(|c| {
                    let r = rotate_z(c.r, angle);
                    PointCharge { e: c.e, r: [r[0] + shift.0, r[1] + shift.1, r[2] + shift.2] }
                })
                .collect();
            let e0 = config_energy(&ChargeConfig::new(base).unwrap(), true).unwrap();
            let e1 = config_energy(&ChargeConfig::new(permuted).unwrap(), true).unwrap();
            let e2 = config_energy(&ChargeConfig::new(moved).unwrap(), true).unwrap();
            prop_assert!((e0 - e1).abs() <= 1e-9 * e0.abs().max(1.0));
            prop_assert!((e0 - e2).abs() <= 1e-9 * e0.abs().max(1.0));
        }

        #[test]
        fn energy_bilinear_in_single_charge(lambda in -3.0_f64..3.0) {
            // E(lambda e_k) = E(others) + lambda * (cross) + lambda^2 * (self)
            let others = vec![
                PointCharge { e: 1.0, r: [0.0, 0.0, 0.0] },
                PointCharge { e: -0.5, r: [2.0, 0.0, 0.0] },
            ];
            let with = |ek: f64| {
                let mut cs = others.clone();
                cs.push(PointCharge { e: ek, r: [0.0, 1.0, 0.0] });
                config_energy(&ChargeConfig::new(cs).unwrap(), true).unwrap()
            };
            let e0 = with(0.0);
            let e1 = with(1.0);
            let em1 = with(-1.0);
            let cross = 0.5 * (e1 - em1);
            let self_term = 0.5 * (e1 + em1) - e0;
            let predicted = e0 + lambda * cross + lambda * lambda * self_term;
            prop_assert!((with(lambda) - predicted).abs() <= 1e-10);
        }
    }
}
