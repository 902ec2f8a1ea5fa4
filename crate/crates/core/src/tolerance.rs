//! Numerical tolerance presets.

/// Thresholds used by the linear-algebra constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Gram eigenvalues at or below `rank_rel * max eigenvalue` span the null space.
    pub rank_rel: f64,
    /// Max-entry asymmetry allowed for a self-adjoint matrix.
    pub self_adjoint: f64,
    /// Max-entry norm of a commutator still counted as commuting.
    pub commute: f64,
    /// Hermiticity, positivity and trace slack for density matrices.
    pub state: f64,
    /// Eigenvalues closer than `degeneracy_rel * spectral range` are merged.
    pub degeneracy_rel: f64,
    pub degeneracy_floor: f64,
    /// Bloch-sphere distance below which two samples coincide.
    pub orbit: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        rank_rel: 1e-9,
        self_adjoint: 1e-10,
        commute: 1e-10,
        state: 1e-10,
        degeneracy_rel: 1e-8,
        degeneracy_floor: 1e-12,
        orbit: 1e-6,
    };

    pub const STRICT: Tolerances = Tolerances {
        rank_rel: 1e-11,
        self_adjoint: 1e-12,
        commute: 1e-12,
        state: 1e-12,
        degeneracy_rel: 1e-10,
        degeneracy_floor: 1e-13,
        orbit: 1e-8,
    };

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::DEFAULT),
            "strict" => Some(Self::STRICT),
            _ => None,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
