//! Brute-force oracles for the mode-sum quantities.
//!
//! The closed forms in [`crate::coulomb`] come from replacing the mode sum
//! Σ_s by a k-integral capped at k* = 1/L*. This module recomputes them the
//! slow way: 1-D quadrature of (2/π)·sin(kr)/(kr) over [0, k*], and a seeded
//! Monte-Carlo average over the direction cosine μ between k⃗ and r⃗ᵢⱼ. It
//! also carries the cutoff zero-point energy, the state count and the
//! zero-point/self-energy ratio.

use crate::coulomb::distance;
use crate::specfun::{integrate_adaptive, integrate_adaptive_with_budget};
use crate::units::PlanckScale;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::f64::consts::PI;

/// A Monte-Carlo estimate with its statistical error. Reproducible: the same
/// seed and inputs give bit-identical results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Quadrature oracle for the pair kernel: (2/π)∫₀^{k*} sin(kr)/(kr) dk.
///
/// With k* = 1 this must reproduce [`coulomb::kernel`] to 1e-9.
pub fn kernel_quadrature_oracle(r: f64, k_star: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!("r must be > 0, got {r}")));
    }
    if !k_star.is_finite() || k_star <= 0.0 {
        return Err(Error::domain(format!("k_star must be > 0, got {k_star}")));
    }
    let integrand = |k: f64| {
        let kr = k * r;
        if kr.abs() < 1e-8 {
            1.0 - kr * kr / 6.0
        } else {
            kr.sin() / kr
        }
    };
    // the extended budget covers cutoffs with many oscillation periods
    let q = integrate_adaptive_with_budget(integrand, 0.0, k_star, 1e-10, 1e-11, 10_000_000)?;
    Ok(2.0 / PI * q.value)
}

/// Monte-Carlo oracle for the pair kernel between positions `r_i` and `r_j`.
///
/// Samples k uniform on [0, k*] and the direction cosine μ uniform on
/// [−1, 1]; each sample contributes (2/π)·k*·cos(k·r·μ). The ½ from the
/// phase-shift average is applied analytically (cross-phase terms vanish in
/// the mean).
pub fn kernel_mc_oracle(
    r_i: [f64; 3],
    r_j: [f64; 3],
    k_star: f64,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    let r = distance(r_i, r_j);
    if r == 0.0 {
        return Err(Error::domain(
            "coincident positions: use the quadrature oracle limit".to_string(),
        ));
    }
    if !r.is_finite() || !k_star.is_finite() || k_star <= 0.0 {
        return Err(Error::domain("r_ij and k_star must be finite, k_star > 0".to_string()));
    }
    if n_samples < 1000 {
        return Err(Error::domain(format!(
            "need at least 1000 samples, got {n_samples}"
        )));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let prefactor = 2.0 / PI * k_star;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n_samples {
        let k: f64 = rng.gen_range(0.0..k_star);
        let mu: f64 = rng.gen_range(-1.0..1.0);
        let v = prefactor * (k * r * mu).cos();
        sum += v;
        sum_sq += v * v;
    }
    let n = n_samples as f64;
    let mean = sum / n;
    let variance = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (variance / n).sqrt(),
        samples: n_samples,
        seed,
    })
}

/// Zero-point energy of the radiation field: (1/16π²)·V·E* with V in V* = L*³.
pub fn zero_point_energy(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("volume must be >= 0, got {v}")));
    }
    Ok(v / (16.0 * PI * PI))
}

/// The integral form (1/4π²)·V·∫₀^{k*} k³ dk of the zero-point energy,
/// evaluated by quadrature for cross-checking the closed form.
pub fn zero_point_energy_quadrature(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("volume must be >= 0, got {v}")));
    }
    let q = integrate_adaptive(|k| k * k * k, 0.0, 1.0, 1e-12, 1e-14)?;
    Ok(v / (4.0 * PI * PI) * q.value)
}

/// Maximum number of quantum states in a 3-volume V: N = V/(6π²).
///
/// Inverting this is the volume quantization V = 6π²·N·V*.
pub fn state_count(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("volume must be >= 0, got {v}")));
    }
    Ok(v / (6.0 * PI * PI))
}

/// Ratio of zero-point energy to the single-electron self-energy:
/// V/(16πα). At V = V* and α = 1/137 this is 137/16π ≈ 2.73.
pub fn zero_point_to_self_energy_ratio(v: f64, scale: &PlanckScale) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("volume must be >= 0, got {v}")));
    }
    Ok(v / (16.0 * PI * scale.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coulomb;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::rngs::StdRng;

    #[test]
    fn quadrature_oracle_matches_closed_form_at_unit_cutoff() {
        assert_abs_diff_eq!(
            kernel_quadrature_oracle(1.0, 1.0).unwrap(),
            0.6022951888979785,
            epsilon = 1e-10
        );
        for &r in &[0.01, 0.3, 2.0, 17.0, 400.0] {
            let oracle = kernel_quadrature_oracle(r, 1.0).unwrap();
            let closed = coulomb::kernel(r).unwrap();
            assert!((oracle - closed).abs() <= 1e-9, "mismatch at r={r}");
        }
    }

    #[test]
    fn quadrature_oracle_large_cutoff_recovers_coulomb() {
        let r = 1.0;
        let oracle = kernel_quadrature_oracle(r, 1e5).unwrap();
        assert_abs_diff_eq!(oracle * r, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn quadrature_oracle_small_r_limit() {
        assert_abs_diff_eq!(
            kernel_quadrature_oracle(1e-6, 1.0).unwrap(),
            2.0 / PI,
            epsilon = 1e-9
        );
    }

    #[test]
    fn quadrature_oracle_random_pairs() {
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let r: f64 = rng.gen_range(0.05..50.0);
            let k_star: f64 = rng.gen_range(0.1..5.0);
            let oracle = kernel_quadrature_oracle(r, k_star).unwrap();
            let closed = 2.0 / PI * crate::specfun::sine_integral(k_star * r).unwrap() / r;
            assert!(
                (oracle - closed).abs() <= 1e-9,
                "mismatch at r={r}, k*={k_star}"
            );
        }
    }

    #[test]
    fn mc_oracle_agrees_with_quadrature() {
        let est = kernel_mc_oracle([0.0; 3], [1.0, 0.0, 0.0], 1.0, 1_000_000, 7).unwrap();
        let truth = kernel_quadrature_oracle(1.0, 1.0).unwrap();
        assert!(
            (est.mean - truth).abs() <= 3.0 * est.std_error,
            "mc {} vs quad {truth}, 3se = {}",
            est.mean,
            3.0 * est.std_error
        );
    }

    #[test]
    fn mc_oracle_deterministic_per_seed() {
        let a = kernel_mc_oracle([0.0; 3], [0.0, 2.0, 0.0], 1.0, 10_000, 9).unwrap();
        let b = kernel_mc_oracle([0.0; 3], [0.0, 2.0, 0.0], 1.0, 10_000, 9).unwrap();
        assert_eq!(a, b);
        let c = kernel_mc_oracle([0.0; 3], [0.0, 2.0, 0.0], 1.0, 10_000, 10).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn mc_oracle_rejects_bad_input() {
        assert!(kernel_mc_oracle([1.0; 3], [1.0; 3], 1.0, 10_000, 0).is_err());
        assert!(kernel_mc_oracle([0.0; 3], [1.0; 3], 1.0, 10, 0).is_err());
    }

    #[test]
    fn mc_error_scales_as_inverse_sqrt_n() {
        let se = |n: usize| {
            kernel_mc_oracle([0.0; 3], [3.0, 0.0, 0.0], 1.0, n, 5)
                .unwrap()
                .std_error
        };
        let (s4, s5, s6) = (se(10_000), se(100_000), se(1_000_000));
        for (coarse, fine) in [(s4, s5), (s5, s6)] {
            let ratio = coarse / fine;
            assert!(
                ratio > 10.0_f64.sqrt() / 2.0 && ratio < 10.0_f64.sqrt() * 2.0,
                "scaling off: {ratio}"
            );
        }
    }

    #[test]
    fn zero_point_energy_closed_form() {
        assert_abs_diff_eq!(
            zero_point_energy(1.0).unwrap(),
            6.332573977646111e-3,
            epsilon = 1e-15
        );
        assert_eq!(zero_point_energy(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            zero_point_energy(16.0 * PI * PI).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn zero_point_energy_quadrature_cross_check() {
        for &v in &[0.5, 1.0, 7.0, 100.0] {
            let closed = zero_point_energy(v).unwrap();
            let quad = zero_point_energy_quadrature(v).unwrap();
            assert_relative_eq!(closed, quad, max_relative = 1e-10);
        }
    }

    #[test]
    fn volume_quantization() {
        assert_abs_diff_eq!(state_count(6.0 * PI * PI).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state_count(12.0 * PI * PI).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_point_per_state_is_three_eighths() {
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let v: f64 = rng.gen_range(0.1..1e4);
            let e = zero_point_energy(v).unwrap();
            let n = state_count(v).unwrap();
            assert_relative_eq!(e / n, 3.0 / 8.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn ratio_values() {
        let scale137 = PlanckScale::new(1.0 / 137.0).unwrap();
        assert_relative_eq!(
            zero_point_to_self_energy_ratio(1.0, &scale137).unwrap(),
            137.0 / (16.0 * PI),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            zero_point_to_self_energy_ratio(2.0, &scale137).unwrap(),
            2.0 * zero_point_to_self_energy_ratio(1.0, &scale137).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn ratio_consistent_with_its_parts() {
        let scale = PlanckScale::default();
        for &v in &[0.3, 1.0, 42.0] {
            let ratio = zero_point_to_self_energy_ratio(v, &scale).unwrap();
            let direct = zero_point_energy(v).unwrap() / coulomb::self_energy(1.0, &scale);
            assert_relative_eq!(ratio, direct, max_relative = 1e-12);
        }
    }
}
