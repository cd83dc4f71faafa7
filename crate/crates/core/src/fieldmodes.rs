//! Classical integration of the sourced Fourier-mode oscillator equations.
//!
//! Each partial wave carries canonical pairs (φ_s, π_s) and (a⃗_s, b⃗_s)
//! with coupling g = V/8π (c = 1) and equations of motion
//!
//! ```text
//! φ̇ = −π/g          π̇ = gω²φ − Σᵢ eᵢ cos Γᵢ
//! ȧ⃗ = +b⃗/g          ḃ⃗ = −gω²a⃗ + Σᵢ eᵢ ṙ⃗ᵢ sin Γᵢ
//! ```
//!
//! with Γᵢ = k⃗·r⃗ᵢ(t) + ϑ. Charge trajectories are prescribed inputs; the
//! integrator monitors the per-mode Lorenz constraints ω·a₁ + φ̇ = 0 and its
//! time derivative along the way. Because ω = |k⃗|, the constraint residual
//! obeys a homogeneous oscillator equation and stays zero if it starts zero.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale3(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// A single partial wave: wave vector, phase shift, and the orthonormal
/// triad with n̂₁ along the propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    k_vec: Vec3,
    theta: f64,
    omega: f64,
    basis: [Vec3; 3],
}

impl Mode {
    pub fn new(k_vec: Vec3, theta: f64) -> Result<Self> {
        let k = norm(k_vec);
        if !k.is_finite() || k <= 0.0 || !theta.is_finite() {
            return Err(Error::domain(format!(
                "mode needs |k| > 0 finite and finite phase, got k={k_vec:?}, theta={theta}"
            )));
        }
        let n1 = scale3(k_vec, 1.0 / k);
        // helper axis least aligned with n1
        let helper = if n1[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let t = cross(helper, n1);
        let n2 = scale3(t, 1.0 / norm(t));
        let n3 = cross(n1, n2);
        Ok(Mode {
            k_vec,
            theta,
            omega: k,
            basis: [n1, n2, n3],
        })
    }

    pub fn k_vec(&self) -> Vec3 {
        self.k_vec
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Angular frequency ω = |k⃗| (c = 1).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Orthonormal triad (n̂₁ = k̂, n̂₂, n̂₃).
    pub fn basis(&self) -> [Vec3; 3] {
        self.basis
    }

    /// Phase Γ = k⃗·r⃗ + ϑ at a charge position.
    pub fn phase_at(&self, position: Vec3) -> f64 {
        dot(self.k_vec, position) + self.theta
    }
}

/// Builds `count` modes of magnitude `k_mag` with seeded uniform directions
/// and phases.
pub fn isotropic_shell(k_mag: f64, count: usize, seed: u64) -> Result<Vec<Mode>> {
    if !k_mag.is_finite() || k_mag <= 0.0 {
        return Err(Error::domain(format!("k_mag must be > 0, got {k_mag}")));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut modes = Vec::with_capacity(count);
    for _ in 0..count {
        let mu: f64 = rng.gen_range(-1.0..1.0);
        let azimuth: f64 = rng.gen_range(0.0..2.0 * PI);
        let s = (1.0 - mu * mu).sqrt();
        let dir = [s * azimuth.cos(), s * azimuth.sin(), mu];
        let theta: f64 = rng.gen_range(0.0..2.0 * PI);
        modes.push(Mode::new(scale3(dir, k_mag), theta)?);
    }
    Ok(modes)
}

/// Canonical field coordinates of one mode. The vector components a, b are
/// stored in the mode basis (index 0 along n̂₁).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeState {
    pub phi: f64,
    pub pi: f64,
    pub a: Vec3,
    pub b: Vec3,
    /// Coupling constant g = V/8π.
    pub g: f64,
}

impl ModeState {
    pub fn zero(g: f64) -> Self {
        ModeState {
            g,
            ..Default::default()
        }
    }

    pub fn is_finite(&self) -> bool {
        self.phi.is_finite()
            && self.pi.is_finite()
            && self.a.iter().all(|x| x.is_finite())
            && self.b.iter().all(|x| x.is_finite())
    }
}

/// Coupling constant g = V/8π for a quantization volume V (in V*).
pub fn coupling_constant(volume: f64) -> f64 {
    volume / (8.0 * PI)
}

/// Sector energies of a free mode: (vector, scalar), each of the form
/// (momenta² + g²ω²·coordinates²)/2g. The scalar sector enters the
/// Hamiltonian with a negative sign, so it is reported separately.
pub fn mode_energies(state: &ModeState, mode: &Mode) -> (f64, f64) {
    let g = state.g;
    let w2 = mode.omega * mode.omega;
    let vector = (dot(state.b, state.b) + g * g * w2 * dot(state.a, state.a)) / (2.0 * g);
    let scalar = (state.pi * state.pi + g * g * w2 * state.phi * state.phi) / (2.0 * g);
    (vector, scalar)
}

/// A prescribed charge trajectory (the velocities stand in for cα⃗ᵢ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Trajectory {
    Static {
        position: Vec3,
    },
    Circular {
        center: Vec3,
        radius: f64,
        angular_frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    LinearOscillation {
        center: Vec3,
        amplitude: Vec3,
        angular_frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Piecewise-linear interpolation of sampled (t, r, ṙ) triples.
    CustomSampled {
        times: Vec<f64>,
        positions: Vec<Vec3>,
        velocities: Vec<Vec3>,
    },
}

impl Trajectory {
    /// Position and velocity at time `t`.
    pub fn eval(&self, t: f64) -> (Vec3, Vec3) {
        match self {
            Trajectory::Static { position } => (*position, [0.0; 3]),
            Trajectory::Circular {
                center,
                radius,
                angular_frequency,
                phase,
            } => {
                let arg = angular_frequency * t + phase;
                let (s, c) = arg.sin_cos();
                let pos = [center[0] + radius * c, center[1] + radius * s, center[2]];
                let v = radius * angular_frequency;
                (pos, [-v * s, v * c, 0.0])
            }
            Trajectory::LinearOscillation {
                center,
                amplitude,
                angular_frequency,
                phase,
            } => {
                let arg = angular_frequency * t + phase;
                let (s, c) = arg.sin_cos();
                let pos = [
                    center[0] + amplitude[0] * s,
                    center[1] + amplitude[1] * s,
                    center[2] + amplitude[2] * s,
                ];
                let vel = scale3(*amplitude, angular_frequency * c);
                (pos, vel)
            }
            Trajectory::CustomSampled {
                times,
                positions,
                velocities,
            } => {
                if times.is_empty() {
                    return ([0.0; 3], [0.0; 3]);
                }
                let idx = match times.binary_search_by(|probe| probe.total_cmp(&t)) {
                    Ok(i) => return (positions[i], velocities[i]),
                    Err(0) => return (positions[0], velocities[0]),
                    Err(i) if i >= times.len() => {
                        return (positions[times.len() - 1], velocities[times.len() - 1])
                    }
                    Err(i) => i,
                };
                let (t0, t1) = (times[idx - 1], times[idx]);
                let w = (t - t0) / (t1 - t0);
                let lerp = |lo: Vec3, hi: Vec3| {
                    [
                        lo[0] + w * (hi[0] - lo[0]),
                        lo[1] + w * (hi[1] - lo[1]),
                        lo[2] + w * (hi[2] - lo[2]),
                    ]
                };
                (
                    lerp(positions[idx - 1], positions[idx]),
                    lerp(velocities[idx - 1], velocities[idx]),
                )
            }
        }
    }

    /// Maximum speed the trajectory reaches; must stay below 1 (c = 1).
    pub fn max_speed(&self) -> f64 {
        match self {
            Trajectory::Static { .. } => 0.0,
            Trajectory::Circular {
                radius,
                angular_frequency,
                ..
            } => (radius * angular_frequency).abs(),
            Trajectory::LinearOscillation {
                amplitude,
                angular_frequency,
                ..
            } => norm(*amplitude) * angular_frequency.abs(),
            Trajectory::CustomSampled { velocities, .. } => velocities
                .iter()
                .map(|v| norm(*v))
                .fold(0.0, f64::max),
        }
    }
}

/// A point charge following a prescribed trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovingCharge {
    pub e: f64,
    pub trajectory: Trajectory,
}

/// Source terms of the mode equations at time `t`:
/// scalar (1/g)Σᵢ eᵢ cos Γᵢ and Cartesian vector (1/g)Σᵢ eᵢ ṙ⃗ᵢ sin Γᵢ.
pub fn source_terms(mode: &Mode, g: f64, charges: &[MovingCharge], t: f64) -> (f64, Vec3) {
    let mut scalar = 0.0;
    let mut vector = [0.0; 3];
    for charge in charges {
        let (pos, vel) = charge.trajectory.eval(t);
        let gamma = mode.phase_at(pos);
        let (s, c) = gamma.sin_cos();
        scalar += charge.e * c;
        vector[0] += charge.e * vel[0] * s;
        vector[1] += charge.e * vel[1] * s;
        vector[2] += charge.e * vel[2] * s;
    }
    (scalar / g, scale3(vector, 1.0 / g))
}

/// Lorenz-constraint residuals of one mode:
/// c1 = ω·a₁ − π/g and c2 = ω·b₁/g − ω²·φ + scalar source.
pub fn lorenz_residual(
    state: &ModeState,
    mode: &Mode,
    charges: &[MovingCharge],
    t: f64,
) -> (f64, f64) {
    let w = mode.omega;
    let (scalar_source, _) = source_terms(mode, state.g, charges, t);
    let c1 = w * state.a[0] - state.pi / state.g;
    let c2 = w * state.b[0] / state.g - w * w * state.phi + scalar_source;
    (c1, c2)
}

/// One sampled step of the history: state and residuals per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryRow {
    pub t: f64,
    pub states: Vec<ModeState>,
    pub residuals: Vec<(f64, f64)>,
}

/// Full sampled history of an integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeHistory {
    pub rows: Vec<HistoryRow>,
}

impl ModeHistory {
    pub fn final_states(&self) -> &[ModeState] {
        &self.rows.last().expect("history never empty").states
    }

    /// CSV header for [`Self::csv_rows`].
    pub const CSV_HEADERS: [&'static str; 12] = [
        "t", "mode", "phi", "pi", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2",
    ];

    /// Flattens the history into numeric CSV rows, one per (step, mode).
    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (m, (state, res)) in row.states.iter().zip(row.residuals.iter()).enumerate() {
                out.push(vec![
                    row.t, m as f64, state.phi, state.pi, state.a[0], state.a[1], state.a[2],
                    state.b[0], state.b[1], state.b[2], res.0, res.1,
                ]);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Default)]
struct Derivative {
    phi: f64,
    pi: f64,
    a: Vec3,
    b: Vec3,
}

fn derivative(state: &ModeState, mode: &Mode, charges: &[MovingCharge], t: f64) -> Derivative {
    let g = state.g;
    let w2 = mode.omega * mode.omega;
    let (scalar_source, vector_source) = source_terms(mode, g, charges, t);
    let mut d = Derivative {
        phi: -state.pi / g,
        pi: g * w2 * state.phi - g * scalar_source,
        ..Default::default()
    };
    for m in 0..3 {
        d.a[m] = state.b[m] / g;
        d.b[m] = -g * w2 * state.a[m] + g * dot(vector_source, mode.basis[m]);
    }
    d
}

fn advance(state: &ModeState, d: &Derivative, dt: f64) -> ModeState {
    ModeState {
        phi: state.phi + dt * d.phi,
        pi: state.pi + dt * d.pi,
        a: [
            state.a[0] + dt * d.a[0],
            state.a[1] + dt * d.a[1],
            state.a[2] + dt * d.a[2],
        ],
        b: [
            state.b[0] + dt * d.b[0],
            state.b[1] + dt * d.b[1],
            state.b[2] + dt * d.b[2],
        ],
        g: state.g,
    }
}

/// Advances all modes with classical RK4 over `n_steps` steps of size `dt`,
/// recording state and Lorenz residuals at every step (including t = 0).
///
/// Requires dt·max(ω) ≤ 0.1 and |ṙ| < 1 for every trajectory.
pub fn integrate(
    modes: &[Mode],
    initial: &[ModeState],
    charges: &[MovingCharge],
    dt: f64,
    n_steps: usize,
) -> Result<ModeHistory> {
    if modes.len() != initial.len() {
        return Err(Error::domain(format!(
            "{} modes but {} initial states",
            modes.len(),
            initial.len()
        )));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::domain(format!("dt must be > 0, got {dt}")));
    }
    let max_omega = modes.iter().map(|m| m.omega).fold(0.0, f64::max);
    if dt * max_omega > 0.1 + 1e-12 {
        return Err(Error::domain(format!(
            "resolution guard: dt*max(omega) = {} exceeds 0.1",
            dt * max_omega
        )));
    }
    for (i, charge) in charges.iter().enumerate() {
        if charge.trajectory.max_speed() >= 1.0 {
            return Err(Error::domain(format!(
                "trajectory {i} reaches speed {} >= c",
                charge.trajectory.max_speed()
            )));
        }
    }

    let mut states = initial.to_vec();
    let mut rows = Vec::with_capacity(n_steps + 1);
    let record = |t: f64, states: &[ModeState]| HistoryRow {
        t,
        states: states.to_vec(),
        residuals: modes
            .iter()
            .zip(states.iter())
            .map(|(mode, state)| lorenz_residual(state, mode, charges, t))
            .collect(),
    };
    rows.push(record(0.0, &states));

    for step in 0..n_steps {
        let t = step as f64 * dt;
        for (mode, state) in modes.iter().zip(states.iter_mut()) {
            let k1 = derivative(state, mode, charges, t);
            let s2 = advance(state, &k1, 0.5 * dt);
            let k2 = derivative(&s2, mode, charges, t + 0.5 * dt);
            let s3 = advance(state, &k2, 0.5 * dt);
            let k3 = derivative(&s3, mode, charges, t + 0.5 * dt);
            let s4 = advance(state, &k3, dt);
            let k4 = derivative(&s4, mode, charges, t + dt);
            let combined = Derivative {
                phi: (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi) / 6.0,
                pi: (k1.pi + 2.0 * k2.pi + 2.0 * k3.pi + k4.pi) / 6.0,
                a: [
                    (k1.a[0] + 2.0 * k2.a[0] + 2.0 * k3.a[0] + k4.a[0]) / 6.0,
                    (k1.a[1] + 2.0 * k2.a[1] + 2.0 * k3.a[1] + k4.a[1]) / 6.0,
                    (k1.a[2] + 2.0 * k2.a[2] + 2.0 * k3.a[2] + k4.a[2]) / 6.0,
                ],
                b: [
                    (k1.b[0] + 2.0 * k2.b[0] + 2.0 * k3.b[0] + k4.b[0]) / 6.0,
                    (k1.b[1] + 2.0 * k2.b[1] + 2.0 * k3.b[1] + k4.b[1]) / 6.0,
                    (k1.b[2] + 2.0 * k2.b[2] + 2.0 * k3.b[2] + k4.b[2]) / 6.0,
                ],
            };
            *state = advance(state, &combined, dt);
            if !state.is_finite() {
                return Err(Error::Integration { step });
            }
        }
        rows.push(record(t + dt, &states));
    }
    Ok(ModeHistory { rows })
}

/// The static solution of the scalar equation for time-independent sources:
/// φ = S/ω², π = 0, a⃗ = b⃗ = 0. Satisfies both Lorenz residuals.
pub fn static_solution(mode: &Mode, g: f64, charges: &[MovingCharge]) -> ModeState {
    let (scalar_source, _) = source_terms(mode, g, charges, 0.0);
    ModeState {
        phi: scalar_source / (mode.omega * mode.omega),
        ..ModeState::zero(g)
    }
}

/// Convenience: a [`crate::coulomb::ChargeConfig`] snapshot of the charges at
/// time `t`, used by scale-aware consumers.
pub fn snapshot(charges: &[MovingCharge], t: f64) -> crate::coulomb::ChargeConfig {
    crate::coulomb::ChargeConfig {
        charges: charges
            .iter()
            .map(|c| crate::coulomb::PointCharge {
                e: c.e,
                r: c.trajectory.eval(t).0,
            })
            .collect(),
    }
}

/// Linearity helper used in tests and sweeps: per-mode response amplitude.
pub fn state_amplitude(state: &ModeState) -> f64 {
    state
        .phi
        .abs()
        .max(state.pi.abs())
        .max(norm(state.a))
        .max(norm(state.b))
}
