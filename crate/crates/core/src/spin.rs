//! Spin-1/2 precession in a static field.
//!
//! The interaction Hamiltonian gives the closed-form propagator
//! `U(t) = I cos(B̃t) + i (n̂·σ) sin(B̃t)` with `B̃ⁱ = g e Bᵢ / (4m)`.
//! States are written in the ordered basis (|0⟩ spin-down, |1⟩ spin-up) and
//! the spin operators are `ψ̂ᵢ = ħσᵢ/2` with the Pauli matrices of
//! [`crate::linalg::pauli`], so `ψ̂₃|0⟩ = −(ħ/2)|0⟩`.
//!
//! Time is continuous here, unlike the discrete systems of [`crate::dynsys`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c, max_abs, pauli, CMatrix, CVector};

pub type Vec3 = [f64; 3];

pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const ELECTRON_G: f64 = 2.0;

fn norm3(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Levi-Civita symbol on 0-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Active rotation by `angle` about the unit vector `axis` (Rodrigues).
pub fn rotation_matrix(axis: Vec3, angle: f64) -> [[f64; 3]; 3] {
    let (s, co) = angle.sin_cos();
    let k = 1.0 - co;
    let [x, y, z] = axis;
    [
        [co + x * x * k, x * y * k - z * s, x * z * k + y * s],
        [y * x * k + z * s, co + y * y * k, y * z * k - x * s],
        [z * x * k - y * s, z * y * k + x * s, co + z * z * k],
    ]
}

pub fn rotate(r: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    [dot3(r[0], v), dot3(r[1], v), dot3(r[2], v)]
}

/// A spin-1/2 particle in a static field, with the free Hamiltonian dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSystem {
    pub field: Vec3,
    pub g: f64,
    pub charge: f64,
    pub mass: f64,
    pub hbar: f64,
    b_tilde: Vec3,
    strength: f64,
    axis: Vec3,
}

impl SpinSystem {
    pub fn new(field: Vec3, g: f64, charge: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0) {
            return Err(Error::InvalidArgument("mass and hbar must be positive".into()));
        }
        let coupling = g * charge / (4.0 * mass);
        let b_tilde = field.map(|b| coupling * b);
        let strength = norm3(b_tilde);
        if !(strength > 0.0 && strength.is_finite()) {
            return Err(Error::ZeroField);
        }
        let axis = b_tilde.map(|b| b / strength);
        Ok(SpinSystem { field, g, charge, mass, hbar, b_tilde, strength, axis })
    }

    /// Natural units `e = m = ħ = 1` with `g = 2`, so `B̃ = |B| / 2`.
    pub fn natural(field: Vec3) -> Result<Self> {
        Self::new(field, ELECTRON_G, 1.0, 1.0, 1.0)
    }

    /// An electron in a field given in tesla.
    pub fn si(field: Vec3) -> Result<Self> {
        Self::new(field, ELECTRON_G, ELEMENTARY_CHARGE, ELECTRON_MASS, HBAR)
    }

    /// Field direction `n̂` along which the propagator is parametrized by `B̃`
    /// with `B̃ⁱ ∝ Bᵢ`.
    pub fn with_axis_and_strength(axis: Vec3, strength: f64) -> Result<Self> {
        let n = norm3(axis);
        if n.is_nan() || n <= 0.0 {
            return Err(Error::ZeroField);
        }
        Self::natural(axis.map(|a| 2.0 * strength * a / n))
    }

    /// `B̃ = |B̃_vec|`.
    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn b_tilde(&self) -> Vec3 {
        self.b_tilde
    }

    /// Unit vector `n̂`.
    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// `2π/B̃`, after which `U(t) = I`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.strength
    }

    /// `ψ̂ᵢ = ħσᵢ/2` for `axis` in {1, 2, 3}.
    pub fn spin_operator(&self, axis: usize) -> Result<CMatrix> {
        Ok(pauli(axis)?.scale(self.hbar / 2.0))
    }

    /// `n̂·σ`.
    fn axis_sigma(&self) -> CMatrix {
        let mut m = CMatrix::zeros(2, 2);
        for (k, n) in self.axis.iter().enumerate() {
            m += pauli(k + 1).expect("valid axis").scale(*n);
        }
        m
    }

    /// `U(t) = I cos(B̃t) + i (n̂·σ) sin(B̃t)`.
    pub fn evolution_operator(&self, t: f64) -> CMatrix {
        let (s, co) = (self.strength * t).sin_cos();
        linalg::identity(2).scale(co) + self.axis_sigma() * c(0.0, s)
    }

    pub fn evolve_state(&self, psi0: &SpinState, t: f64) -> SpinState {
        let v = self.evolution_operator(t) * psi0.vector();
        SpinState { amplitudes: [v[0], v[1]] }
    }

    /// Heisenberg-picture operator `U†(t) ψ̂ᵢ U(t)`.
    pub fn heisenberg_spin(&self, axis: usize, t: f64) -> Result<CMatrix> {
        let u = self.evolution_operator(t);
        Ok(u.adjoint() * self.spin_operator(axis)? * u)
    }

    /// `Σⱼ R^{ij} ψ̂ⱼ` with `R` the rotation by `2B̃t` about `n̂` acting on
    /// the frame, i.e. the active rotation by `−2B̃t`. Equal to
    /// [`Self::heisenberg_spin`].
    pub fn heisenberg_by_rotation(&self, axis: usize, t: f64) -> Result<CMatrix> {
        if !(1..=3).contains(&axis) {
            return Err(Error::BadAxis(axis));
        }
        let r = rotation_matrix(self.axis, -2.0 * self.strength * t);
        let mut m = CMatrix::zeros(2, 2);
        for (j, &rij) in r[axis - 1].iter().enumerate() {
            m += self.spin_operator(j + 1)?.scale(rij);
        }
        Ok(m)
    }

    /// Right-hand side of the precession equation,
    /// `dψ̂ᵢ/dt = −(g e / 2m) εᵢⱼₖ Bⱼ ψ̂ₖ(t)`.
    pub fn precession_rate(&self, axis: usize, t: f64) -> Result<CMatrix> {
        if !(1..=3).contains(&axis) {
            return Err(Error::BadAxis(axis));
        }
        let i = axis - 1;
        let coupling = self.g * self.charge / (2.0 * self.mass);
        let mut m = CMatrix::zeros(2, 2);
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0.0 {
                    m -= self.heisenberg_spin(k + 1, t)?.scale(coupling * e * self.field[j]);
                }
            }
        }
        Ok(m)
    }

    /// `ψ̂₃` carried along with the state: `U(t) ψ̂₃ U(t)†`.
    pub fn corotating_observable(&self, t: f64) -> CMatrix {
        let u = self.evolution_operator(t);
        &u * self.spin_operator(3).expect("valid axis") * u.adjoint()
    }

    /// `‖ψ̂₃(t)|Ψ(t)⟩ + (ħ/2)|Ψ(t)⟩‖` with `|Ψ(t)⟩ = U(t)|0⟩` and the
    /// co-rotated observable.
    pub fn corotating_eigencheck(&self, t: f64) -> f64 {
        let psi = self.evolve_state(&SpinState::down(), t).vector();
        (self.corotating_observable(t) * &psi + psi.scale(self.hbar / 2.0)).norm()
    }

    /// Samples the Bloch trajectory of `psi0` and classifies the orbit.
    pub fn reachability_orbit(&self, psi0: &SpinState, dt: f64, steps: usize, tol: f64) -> Result<OrbitReport> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        let horizon = dt * steps as f64;
        if horizon < self.period() {
            return Err(Error::HorizonTooShort { horizon, period: self.period() });
        }
        let states: Vec<(f64, SpinState)> =
            (0..=steps).map(|k| k as f64 * dt).map(|t| (t, self.evolve_state(psi0, t))).collect();
        let samples: Vec<(f64, Vec3)> = states.iter().map(|(t, s)| (*t, s.bloch())).collect();
        let b0 = samples[0].1;

        let spread = max_pairwise(&samples);
        let classification = if spread <= tol { OrbitKind::FixedPoint } else { OrbitKind::Circle };

        let axis = self.axis;
        let offsets: Vec<f64> = samples.iter().map(|(_, b)| dot3(*b, axis)).collect();
        let radii: Vec<f64> = samples
            .iter()
            .zip(&offsets)
            .map(|((_, b), &o)| norm3(sub3(*b, axis.map(|a| a * o))))
            .collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let radius = mean(&radii);
        let radius_spread = radii.iter().map(|r| (r - radius).abs()).fold(0.0, f64::max);

        let (period_estimate, bloch_return) = match classification {
            OrbitKind::FixedPoint => (None, None),
            OrbitKind::Circle => {
                let v0 = psi0.vector();
                let spinor: Vec<f64> = states.iter().map(|(_, s)| (s.vector() - &v0).norm_squared()).collect();
                let bloch: Vec<f64> = samples.iter().map(|(_, b)| norm3(sub3(*b, b0)).powi(2)).collect();
                (first_return(&spinor, dt, tol), first_return(&bloch, dt, tol))
            }
        };

        Ok(OrbitReport {
            samples,
            period_estimate,
            bloch_return,
            classification,
            plane_axis: axis,
            axis_offset: mean(&offsets),
            radius,
            radius_spread,
        })
    }
}

fn max_pairwise(samples: &[(f64, Vec3)]) -> f64 {
    let mut worst: f64 = 0.0;
    if samples.len() <= 4096 {
        for (i, (_, a)) in samples.iter().enumerate() {
            for (_, b) in &samples[i + 1..] {
                worst = worst.max(norm3(sub3(*a, *b)));
            }
        }
    } else {
        // Bounded by twice the largest distance from the first sample.
        let b0 = samples[0].1;
        worst = samples.iter().map(|(_, b)| 2.0 * norm3(sub3(*b, b0))).fold(0.0, f64::max);
    }
    worst
}

/// First local minimum of the squared distance to the start, once the
/// curve has moved away, refined by a parabola through three samples.
/// A minimum counts as a return when the sampled distance is within one
/// step length (or `tol`) of zero.
fn first_return(dist2: &[f64], dt: f64, tol: f64) -> Option<f64> {
    let step = dist2.get(1).map_or(0.0, |d| d.sqrt());
    let near = tol.max(2.0 * step);
    let mut left = false;
    for k in 1..dist2.len().saturating_sub(1) {
        let (y0, y1, y2) = (dist2[k - 1], dist2[k], dist2[k + 1]);
        left |= y1.sqrt() > near;
        if left && y1 <= y0 && y1 <= y2 && y1.sqrt() <= near {
            let curvature = y0 - 2.0 * y1 + y2;
            let shift = if curvature > 0.0 { 0.5 * (y0 - y2) / curvature } else { 0.0 };
            return Some((k as f64 + shift) * dt);
        }
    }
    None
}

/// Normalized two-component spinor in the (|0⟩, |1⟩) basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub amplitudes: [Complex64; 2],
}

impl SpinState {
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("spinor norm {norm} is not 1")));
        }
        Ok(SpinState { amplitudes: [a0, a1] })
    }

    /// Rescales any nonzero spinor to unit norm.
    pub fn normalized(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument("zero spinor".into()));
        }
        Ok(SpinState { amplitudes: [a0 / norm, a1 / norm] })
    }

    /// `|0⟩`, spin-down along axis 3.
    pub fn down() -> Self {
        SpinState { amplitudes: [c(1.0, 0.0), c(0.0, 0.0)] }
    }

    /// `|1⟩`, spin-up along axis 3.
    pub fn up() -> Self {
        SpinState { amplitudes: [c(0.0, 0.0), c(1.0, 0.0)] }
    }

    /// Eigenstate of `σ_axis` with eigenvalue `sign` (±1).
    pub fn eigenstate(axis: usize, sign: f64) -> Result<Self> {
        let (values, vectors) = linalg::hermitian_eigen(&pauli(axis)?);
        let k = if sign >= 0.0 { 1 } else { 0 };
        debug_assert!((values[k] - sign.signum()).abs() < 1e-12);
        // Fix the global phase so the first nonzero amplitude is real positive.
        let v = vectors.column(k).into_owned();
        let lead = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
        let phase = lead.conj() / lead.norm();
        Self::normalized(v[0] * phase, v[1] * phase)
    }

    pub fn vector(&self) -> CVector {
        CVector::from_column_slice(&self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        (self.amplitudes[0].norm_sqr() + self.amplitudes[1].norm_sqr()).sqrt()
    }

    /// Bloch vector `(⟨σ₁⟩, ⟨σ₂⟩, ⟨σ₃⟩)`.
    pub fn bloch(&self) -> Vec3 {
        let v = self.vector();
        [1, 2, 3].map(|k| v.dotc(&(pauli(k).expect("valid axis") * &v)).re)
    }

    /// `⟨ψ|A|ψ⟩` for a 2x2 operator.
    pub fn expect(&self, a: &CMatrix) -> f64 {
        let v = self.vector();
        v.dotc(&(a * &v)).re
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    FixedPoint,
    Circle,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::FixedPoint => "FixedPoint",
            OrbitKind::Circle => "Circle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    /// `(t, Bloch vector)` at `t = k·dt`, `k = 0..=steps`.
    pub samples: Vec<(f64, Vec3)>,
    /// First return of the spinor itself, where `U(t) = I`.
    pub period_estimate: Option<f64>,
    /// First return of the Bloch vector (half the spinor period).
    pub bloch_return: Option<f64>,
    pub classification: OrbitKind,
    pub plane_axis: Vec3,
    /// Mean of `b·n̂`: where the orbit plane cuts the axis.
    pub axis_offset: f64,
    /// Mean distance of the samples from the `n̂` axis.
    pub radius: f64,
    /// Largest deviation of a sample's axis distance from `radius`.
    pub radius_spread: f64,
}

impl OrbitReport {
    pub fn max_sphere_deviation(&self) -> f64 {
        self.samples.iter().map(|(_, b)| (norm3(*b) - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// `max |U†U − I|`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    max_abs(&(u.adjoint() * u - linalg::identity(u.nrows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagator_basics() {
        let sys = SpinSystem::natural([0.3, -1.2, 0.7]).unwrap();
        assert!(max_abs(&(sys.evolution_operator(0.0) - linalg::identity(2))) < 1e-15);
        let u = sys.evolution_operator(0.37);
        assert!(unitarity_residual(&u) < 1e-14);
        assert!((u.determinant() - c(1.0, 0.0)).norm() < 1e-14);
        let full = sys.evolution_operator(sys.period());
        assert!(max_abs(&(full - linalg::identity(2))) < 1e-14);
        let half = sys.evolution_operator(sys.period() / 2.0);
        assert!(max_abs(&(half + linalg::identity(2))) < 1e-14);
    }

    #[test]
    fn quarter_period_about_z_is_diagonal() {
        let sys = SpinSystem::natural([0.0, 0.0, 2.0]).unwrap();
        let u = sys.evolution_operator(PI / (2.0 * sys.strength()));
        // I cos + i σ₃ sin at B̃t = π/2 is i·diag(−1, 1).
        assert!((u[(0, 0)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!(u[(0, 1)].norm() < 1e-15 && u[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn evolved_down_state_matches_closed_form() {
        let sys = SpinSystem::natural([1.0, 2.0, -0.5]).unwrap();
        let [n1, n2, n3] = sys.axis();
        for &t in &[0.0, 0.4, 1.9, 7.3] {
            let (s, co) = (sys.strength() * t).sin_cos();
            let psi = sys.evolve_state(&SpinState::down(), t);
            let first = c(co, -n3 * s);
            let second = c(0.0, 1.0) * c(n1, -n2) * s;
            assert!((psi.amplitudes[0] - first).norm() < 1e-14);
            assert!((psi.amplitudes[1] - second).norm() < 1e-14);
            assert!((psi.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn z_field_leaves_down_state_bloch_vector_fixed() {
        let sys = SpinSystem::natural([0.0, 0.0, 1.0]).unwrap();
        for &t in &[0.3, 1.1, 5.0] {
            let b = sys.evolve_state(&SpinState::down(), t).bloch();
            assert!(norm3(sub3(b, [0.0, 0.0, -1.0])) < 1e-14);
        }
    }

    #[test]
    fn heisenberg_matches_rotation() {
        let sys = SpinSystem::natural([0.2, 0.9, -0.4]).unwrap();
        for axis in 1..=3 {
            for &t in &[0.0, 0.25, 3.0] {
                let direct = sys.heisenberg_spin(axis, t).unwrap();
                let rotated = sys.heisenberg_by_rotation(axis, t).unwrap();
                assert!(max_abs(&(direct - rotated)) < 1e-14);
            }
        }
        assert_eq!(sys.heisenberg_spin(4, 0.0).unwrap_err(), Error::BadAxis(4));
    }

    #[test]
    fn psi3_is_fixed_by_z_field() {
        let sys = SpinSystem::natural([0.0, 0.0, 3.0]).unwrap();
        let psi3 = sys.spin_operator(3).unwrap();
        assert!(max_abs(&(sys.heisenberg_spin(3, 0.77).unwrap() - psi3)) < 1e-15);
    }

    #[test]
    fn corotating_residuals() {
        let sys = SpinSystem::natural([0.6, -0.3, 0.74]).unwrap();
        assert_eq!(sys.corotating_eigencheck(0.0), 0.0);
        assert!(sys.corotating_eigencheck(1.7 / sys.strength()) < 1e-10);
        assert!(sys.corotating_eigencheck(sys.period()) < 1e-10);
    }

    #[test]
    fn zero_field_rejected() {
        assert_eq!(SpinSystem::natural([0.0; 3]).unwrap_err(), Error::ZeroField);
    }

    #[test]
    fn orbit_about_x() {
        let sys = SpinSystem::natural([1.0, 0.0, 0.0]).unwrap();
        let b = sys.strength();
        let dt = 0.01 / b;
        let rep = sys.reachability_orbit(&SpinState::down(), dt, 700, 1e-6).unwrap();
        assert_eq!(rep.classification, OrbitKind::Circle);
        assert!((rep.period_estimate.unwrap() - sys.period()).abs() <= 2.0 * dt);
        assert!((rep.bloch_return.unwrap() - sys.period() / 2.0).abs() <= 2.0 * dt);
        assert!(rep.radius_spread < 1e-9);
        assert!(rep.max_sphere_deviation() < 1e-9);
    }

    #[test]
    fn orbit_fixed_point_and_short_horizon() {
        let sys = SpinSystem::natural([0.0, 0.0, 1.0]).unwrap();
        let dt = 0.01 / sys.strength();
        let rep = sys.reachability_orbit(&SpinState::down(), dt, 700, 1e-6).unwrap();
        assert_eq!(rep.classification, OrbitKind::FixedPoint);
        assert!(rep.period_estimate.is_none());
        assert!(matches!(sys.reachability_orbit(&SpinState::down(), dt, 10, 1e-6), Err(Error::HorizonTooShort { .. })));
    }

    #[test]
    fn eigenstates() {
        for axis in 1..=3 {
            for sign in [-1.0, 1.0] {
                let s = SpinState::eigenstate(axis, sign).unwrap();
                let mut expected = [0.0; 3];
                expected[axis - 1] = sign;
                assert!(norm3(sub3(s.bloch(), expected)) < 1e-12);
            }
        }
        assert_eq!(SpinState::eigenstate(3, -1.0).unwrap().bloch(), SpinState::down().bloch());
    }

    #[test]
    fn rotation_is_orthogonal() {
        let r = rotation_matrix([0.0, 0.0, 1.0], PI / 2.0);
        let v = rotate(&r, [1.0, 0.0, 0.0]);
        assert!(norm3(sub3(v, [0.0, 1.0, 0.0])) < 1e-15);
    }
}
