//! Finite-dimensional *-algebras, states given by density matrices, and
//! the GNS construction.
//!
//! The GNS space is built from the Gram matrix `G_ij = ω(b_i† b_j)` of an
//! algebra basis. Eigenvectors of `G` with non-negligible eigenvalues give
//! an orthonormal basis of the quotient by the null space; the represented
//! operators are `π(x)_kl = ω(e_k† x e_l)` in that basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigen, max_abs, trace, CMatrix, CVector, Span};
use crate::tolerance::Tolerances;

/// Relative residual below which a matrix counts as inside a span.
pub const SPAN_TOL: f64 = 1e-10;

/// Linear span of `d x d` matrices containing the identity and closed under
/// adjoint and product. The stored basis is Hilbert–Schmidt orthonormal.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    dim: usize,
    span: Span,
}

impl StarAlgebra {
    /// Smallest *-algebra containing the identity and every generator.
    pub fn generate(dim: usize, generators: &[CMatrix]) -> Result<Self> {
        let mut span = Span::new(dim);
        span.try_add(&linalg::identity(dim), SPAN_TOL)?;
        for g in generators {
            span.try_add(g, SPAN_TOL)?;
            span.try_add(&g.adjoint(), SPAN_TOL)?;
        }
        // The span never exceeds dim², so this terminates.
        loop {
            let snapshot: Vec<CMatrix> = span.basis().to_vec();
            let mut grew = false;
            for a in &snapshot {
                grew |= span.try_add(&a.adjoint(), SPAN_TOL)?;
                for b in &snapshot {
                    grew |= span.try_add(&(a * b), SPAN_TOL)?;
                }
            }
            if !grew || span.len() >= dim * dim {
                break;
            }
        }
        Ok(StarAlgebra { dim, span })
    }

    /// All `d x d` matrices.
    pub fn full(dim: usize) -> Self {
        let mut span = Span::new(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut e = CMatrix::zeros(dim, dim);
                e[(i, j)] = Complex64::new(1.0, 0.0);
                span.try_add(&e, SPAN_TOL).expect("square");
            }
        }
        StarAlgebra { dim, span }
    }

    /// Uses the span of `basis` as given, failing unless it is already a
    /// unital *-algebra.
    pub fn from_basis(dim: usize, basis: &[CMatrix]) -> Result<Self> {
        let mut span = Span::new(dim);
        for b in basis {
            span.try_add(b, SPAN_TOL)?;
        }
        let alg = StarAlgebra { dim, span };
        let missing_identity = alg.span.residual(&linalg::identity(dim));
        let residual = alg.closure_residual().max(missing_identity);
        if residual > SPAN_TOL {
            return Err(Error::NonClosedAlgebra(residual));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hilbert–Schmidt orthonormal basis.
    pub fn basis(&self) -> &[CMatrix] {
        self.span.basis()
    }

    /// Dimension of the algebra as a vector space.
    pub fn len(&self) -> usize {
        self.span.len()
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_empty()
    }

    pub fn contains(&self, m: &CMatrix) -> bool {
        m.nrows() == self.dim && self.span.residual(m) <= SPAN_TOL
    }

    /// Largest relative residual of adjoints and products of basis elements
    /// outside the span.
    pub fn closure_residual(&self) -> f64 {
        let basis = self.span.basis();
        let mut worst: f64 = 0.0;
        for a in basis {
            worst = worst.max(self.span.residual(&a.adjoint()));
            for b in basis {
                worst = worst.max(self.span.residual(&(a * b)));
            }
        }
        worst
    }
}

/// State `ω(A) = tr(ρA)` on a matrix algebra.
#[derive(Debug, Clone)]
pub struct AlgState {
    density: CMatrix,
}

impl AlgState {
    /// Checks `ρ = ρ†`, `ρ ≥ 0` and `tr ρ = 1` within `tol`.
    pub fn new(density: CMatrix, tol: f64) -> Result<Self> {
        if !density.is_square() {
            return Err(Error::NotAState(format!("{}x{} matrix is not square", density.nrows(), density.ncols())));
        }
        let asym = linalg::asymmetry(&density);
        if asym > tol {
            return Err(Error::NotAState(format!("not Hermitian (asymmetry {asym:.3e})")));
        }
        let (eigs, _) = hermitian_eigen(&density);
        if let Some(&min) = eigs.first() {
            if min < -tol {
                return Err(Error::NotAState(format!("negative eigenvalue {min:.3e}")));
            }
        }
        let tr = trace(&density);
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::NotAState(format!("trace {:.12} differs from 1", tr.re)));
        }
        Ok(AlgState { density })
    }

    /// Pure state `|v⟩⟨v|` of a unit vector.
    pub fn vector_state(v: &CVector) -> Result<Self> {
        Self::new(v * v.adjoint(), Tolerances::DEFAULT.state)
    }

    /// Normalized trace.
    pub fn tracial(dim: usize) -> Self {
        AlgState { density: linalg::identity(dim).unscale(dim as f64) }
    }

    pub fn density(&self) -> &CMatrix {
        &self.density
    }

    pub fn dim(&self) -> usize {
        self.density.nrows()
    }

    /// `ω(a) = tr(ρ a)`.
    pub fn expect(&self, a: &CMatrix) -> Complex64 {
        // tr(ρa) = Σ_ij ρ_ij a_ji, without forming the product.
        let n = self.dim();
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += self.density[(i, j)] * a[(j, i)];
            }
        }
        s
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimMismatch(dim, self.dim()));
        }
        Ok(())
    }
}

/// Cyclic representation of a *-algebra induced by a state.
#[derive(Debug, Clone)]
pub struct GnsRepresentation {
    algebra: StarAlgebra,
    state: AlgState,
    gram: CMatrix,
    gram_eigenvalues: Vec<f64>,
    quotient_basis: Vec<CMatrix>,
    omega: CVector,
}

/// Runs the GNS construction with a relative rank cut `rank_tolerance`.
pub fn gns(algebra: &StarAlgebra, state: &AlgState, rank_tolerance: f64) -> Result<GnsRepresentation> {
    state.check_dim(algebra.dim())?;
    let residual = algebra.closure_residual();
    if residual > SPAN_TOL {
        return Err(Error::NonClosedAlgebra(residual));
    }
    let basis = algebra.basis();
    let m = basis.len();
    let gram = CMatrix::from_fn(m, m, |i, j| state.expect(&(basis[i].adjoint() * &basis[j])));
    let (values, vectors) = hermitian_eigen(&gram);
    let top = values.iter().copied().fold(0.0, f64::max);
    let cut = rank_tolerance * top;

    let mut quotient_basis = Vec::new();
    // Largest eigenvalues first.
    for k in (0..m).rev().filter(|&k| values[k] > cut) {
        let scale = values[k].sqrt();
        let mut e = CMatrix::zeros(algebra.dim(), algebra.dim());
        for (i, b) in basis.iter().enumerate() {
            e += b * (vectors[(i, k)] / scale);
        }
        quotient_basis.push(e);
    }
    let omega = CVector::from_iterator(
        quotient_basis.len(),
        quotient_basis.iter().map(|e| state.expect(&e.adjoint())),
    );
    Ok(GnsRepresentation {
        algebra: algebra.clone(),
        state: state.clone(),
        gram,
        gram_eigenvalues: values,
        quotient_basis,
        omega,
    })
}

impl GnsRepresentation {
    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    /// Ascending eigenvalues of the Gram matrix.
    pub fn gram_eigenvalues(&self) -> &[f64] {
        &self.gram_eigenvalues
    }

    /// Dimension of the GNS Hilbert space.
    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Algebra elements whose classes form an orthonormal basis of the quotient.
    pub fn quotient_basis(&self) -> &[CMatrix] {
        &self.quotient_basis
    }

    /// The cyclic vector, i.e. the class of the identity.
    pub fn omega(&self) -> &CVector {
        &self.omega
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn state(&self) -> &AlgState {
        &self.state
    }

    /// Coordinates of the class `[y]` in the quotient basis.
    pub fn class_of(&self, y: &CMatrix) -> CVector {
        CVector::from_iterator(
            self.quotient_dim(),
            self.quotient_basis.iter().map(|e| self.state.expect(&(e.adjoint() * y))),
        )
    }

    /// Left multiplication by `x` on the quotient.
    pub fn pi(&self, x: &CMatrix) -> CMatrix {
        let n = self.quotient_dim();
        let moved: Vec<CMatrix> = self.quotient_basis.iter().map(|e| x * e).collect();
        CMatrix::from_fn(n, n, |k, l| self.state.expect(&(self.quotient_basis[k].adjoint() * &moved[l])))
    }

    /// `⟨Ω, π(x) Ω⟩`.
    pub fn vector_expectation(&self, x: &CMatrix) -> Complex64 {
        self.omega.dotc(&(self.pi(x) * &self.omega))
    }

    /// `max_x |ω(x) − ⟨Ω, π(x)Ω⟩|` over the algebra basis.
    pub fn reproduction_residual(&self) -> f64 {
        self.algebra
            .basis()
            .iter()
            .map(|x| (self.state.expect(x) - self.vector_expectation(x)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest violation of `π(xy) = π(x)π(y)` and `π(x†) = π(x)†` on basis pairs.
    pub fn homomorphism_residual(&self) -> f64 {
        let basis = self.algebra.basis();
        let pis: Vec<CMatrix> = basis.iter().map(|x| self.pi(x)).collect();
        let mut worst: f64 = 0.0;
        for (i, x) in basis.iter().enumerate() {
            worst = worst.max(max_abs(&(self.pi(&x.adjoint()) - pis[i].adjoint())));
            for (j, y) in basis.iter().enumerate() {
                worst = worst.max(max_abs(&(self.pi(&(x * y)) - &pis[i] * &pis[j])));
            }
        }
        worst
    }

    /// Rank of `{π(b_i)Ω}`; equals the quotient dimension for a cyclic Ω.
    pub fn cyclic_rank(&self) -> usize {
        let basis = self.algebra.basis();
        let n = self.quotient_dim();
        if n == 0 {
            return 0;
        }
        let cols: Vec<CVector> = basis.iter().map(|b| self.pi(b) * &self.omega).collect();
        let mut m = CMatrix::zeros(n, n);
        for v in &cols {
            m += v * v.adjoint();
        }
        let (vals, _) = hermitian_eigen(&m);
        let top = vals.iter().copied().fold(0.0, f64::max);
        vals.iter().filter(|&&v| v > 1e-9 * top).count()
    }
}

/// Ladder operators truncated to `levels` states, with the vacuum state and
/// its GNS representation.
#[derive(Debug, Clone)]
pub struct Oscillator {
    pub levels: usize,
    /// `a|n⟩ = √n |n−1⟩`.
    pub annihilation: CMatrix,
    pub creation: CMatrix,
    pub algebra: StarAlgebra,
    /// Ground-state projector state ω₀.
    pub vacuum: AlgState,
    pub rep: GnsRepresentation,
}

pub fn truncated_oscillator(levels: usize) -> Result<Oscillator> {
    if levels < 2 {
        return Err(Error::InvalidArgument(format!("oscillator needs at least 2 levels, got {levels}")));
    }
    let mut a = CMatrix::zeros(levels, levels);
    for n in 1..levels {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let creation = a.adjoint();
    let algebra = StarAlgebra::generate(levels, &[a.clone(), creation.clone()])?;
    let mut ground = CVector::zeros(levels);
    ground[0] = Complex64::new(1.0, 0.0);
    let vacuum = AlgState::vector_state(&ground)?;
    let rep = gns(&algebra, &vacuum, Tolerances::DEFAULT.rank_rel)?;
    Ok(Oscillator { levels, annihilation: a, creation, algebra, vacuum, rep })
}

impl Oscillator {
    /// `[a, a†]`; the identity except the last diagonal entry, `1 − N`.
    pub fn commutator(&self) -> CMatrix {
        &self.annihilation * &self.creation - &self.creation * &self.annihilation
    }

    /// `ω₀(a†a)`.
    pub fn vacuum_number(&self) -> f64 {
        self.vacuum.expect(&(&self.creation * &self.annihilation)).re
    }

    /// `‖π(a)Ω‖`.
    pub fn annihilated_vacuum_norm(&self) -> f64 {
        (self.rep.pi(&self.annihilation) * self.rep.omega()).norm()
    }

    /// `|n⟩ = π(a†)ⁿ Ω / √n!` for `n < count`.
    pub fn ladder(&self, count: usize) -> Vec<CVector> {
        let raise = self.rep.pi(&self.creation);
        let mut out = Vec::with_capacity(count);
        let mut v = self.rep.omega().clone();
        for n in 0..count {
            if n > 0 {
                v = (&raise * v).unscale((n as f64).sqrt());
            }
            out.push(v.clone());
        }
        out
    }

    /// `max |⟨m|n⟩ − δ_mn|` over the first `count` ladder states.
    pub fn ladder_orthonormality(&self, count: usize) -> f64 {
        let states = self.ladder(count);
        let mut worst: f64 = 0.0;
        for (m, u) in states.iter().enumerate() {
            for (n, v) in states.iter().enumerate() {
                let delta = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((u.dotc(v) - Complex64::new(delta, 0.0)).norm());
            }
        }
        worst
    }
}

/// Seeded random unital *-algebras for testing.
pub mod random {
    use super::*;
    use rand::Rng;

    /// `V (⊕ₖ M_{nₖ} ⊗ I_{mₖ}) V†` for a random block structure fitting
    /// `dim` and a random unitary `V`.
    pub fn algebra<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StarAlgebra {
        let v = linalg::random::unitary(rng, dim);
        let mut generators = Vec::new();
        let mut offset = 0;
        while offset < dim {
            let room = dim - offset;
            let mult = if room >= 2 && rng.random_bool(0.3) { 2 } else { 1 };
            let size = rng.random_range(1..=room / mult);
            for i in 0..size {
                for j in 0..size {
                    let mut e = CMatrix::zeros(dim, dim);
                    for r in 0..mult {
                        e[(offset + r * size + i, offset + r * size + j)] = Complex64::new(1.0, 0.0);
                    }
                    generators.push(&v * e * v.adjoint());
                }
            }
            offset += size * mult;
        }
        StarAlgebra::generate(dim, &generators).expect("square generators")
    }

    /// Random state of random rank.
    pub fn state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> AlgState {
        let rank = rng.random_range(1..=dim);
        AlgState::new(linalg::random::density(rng, dim, rank), 1e-9).expect("density matrix")
    }
}
