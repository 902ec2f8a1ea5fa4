//! Dense complex matrices and the handful of operations the constructions
//! need: adjoints, commutators, Hermitian eigendecomposition and
//! Hilbert–Schmidt spans.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Builds a matrix from row-major `(re, im)` pairs.
pub fn from_rows(rows: &[&[(f64, f64)]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| c(rows[i][j].0, rows[i][j].1))
}

pub fn real_diagonal(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(values.len(), values.iter().map(|&v| c(v, 0.0))))
}

/// Pauli matrix for `axis` in {1, 2, 3}, written in the ordered basis
/// (|0⟩ spin-down, |1⟩ spin-up), so that σ₃|0⟩ = −|0⟩.
///
/// These are the textbook matrices conjugated by the basis swap:
/// σ₁ is unchanged, σ₂ and σ₃ flip sign. All commutation relations hold.
pub fn pauli(axis: usize) -> Result<CMatrix> {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let m = match axis {
        1 => [[o, one], [one, o]],
        2 => [[o, I], [-I, o]],
        3 => [[-one, o], [o, one]],
        _ => return Err(Error::BadAxis(axis)),
    };
    Ok(CMatrix::from_fn(2, 2, |i, j| m[i][j]))
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

fn same_square(a: &CMatrix, b: &CMatrix) -> Result<usize> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
    }
    if a.nrows() != b.nrows() {
        return Err(Error::DimMismatch(a.nrows(), b.nrows()));
    }
    Ok(a.nrows())
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    same_square(a, b)?;
    Ok(a * b - b * a)
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |a − a†|`.
pub fn asymmetry(a: &CMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(a - a.adjoint()))
}

pub fn is_self_adjoint(a: &CMatrix, tol: f64) -> bool {
    asymmetry(a) <= tol
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `tr(a† b)`, the Hilbert–Schmidt inner product.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hs_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigendecomposition of the Hermitian part of `a`; eigenvalues ascending,
/// eigenvectors as matching columns.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (a + a.adjoint()).scale(0.5);
    let n = h.nrows();
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

/// Orthogonal projector onto the span of the given orthonormal columns.
pub fn projector(vectors: &CMatrix, columns: &[usize]) -> CMatrix {
    let n = vectors.nrows();
    let mut p = CMatrix::zeros(n, n);
    for &k in columns {
        let v = vectors.column(k);
        p += v * v.adjoint();
    }
    p
}

/// Hilbert–Schmidt orthonormal basis of a linear span of matrices.
#[derive(Debug, Clone)]
pub struct Span {
    dim: usize,
    basis: Vec<CMatrix>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, basis: Vec::new() }
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Component of `m` orthogonal to the span (two Gram–Schmidt passes).
    pub fn orthogonal_part(&self, m: &CMatrix) -> CMatrix {
        let mut r = m.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let coef = hs_inner(b, &r);
                r -= b * coef;
            }
        }
        r
    }

    /// Relative distance of `m` from the span.
    pub fn residual(&self, m: &CMatrix) -> f64 {
        let norm = hs_norm(m);
        if norm == 0.0 {
            return 0.0;
        }
        hs_norm(&self.orthogonal_part(m)) / norm
    }

    /// Adds `m` if its relative distance from the span exceeds `tol`.
    pub fn try_add(&mut self, m: &CMatrix, tol: f64) -> Result<bool> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimMismatch(self.dim, m.nrows()));
        }
        if self.residual(m) <= tol {
            return Ok(false);
        }
        let r = self.orthogonal_part(m);
        let norm = hs_norm(&r);
        self.basis.push(r.unscale(norm));
        Ok(true)
    }
}

/// Seeded generators of random test matrices.
pub mod random {
    use super::*;
    use rand::Rng;

    pub fn complex<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
    }

    pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
        let a = complex(rng, d, d);
        (&a + a.adjoint()).scale(0.5)
    }

    /// Unitary from the QR factor of a random complex matrix.
    pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
        complex(rng, d, d).qr().q()
    }

    /// Random density matrix of the given rank (`1 <= rank <= d`).
    pub fn density<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> CMatrix {
        let g = complex(rng, d, rank.clamp(1, d));
        let rho = &g * g.adjoint();
        let tr = trace(&rho).re;
        rho.unscale(tr)
    }

    /// Random unit vector.
    pub fn state_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
        let v = complex(rng, d, 1).column(0).into_owned();
        let n = v.norm();
        v.unscale(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_commutators() {
        let s: Vec<CMatrix> = (1..=3).map(|k| pauli(k).unwrap()).collect();
        let eps = |i: usize, j: usize, k: usize| -> f64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = CMatrix::zeros(2, 2);
                for (k, sk) in s.iter().enumerate() {
                    expected += sk * c(0.0, 2.0 * eps(i, j, k));
                }
                assert!(max_abs(&(commutator(&s[i], &s[j]).unwrap() - expected)) < 1e-15);
                let anti = &s[i] * &s[j] + &s[j] * &s[i];
                let delta = if i == j { 2.0 } else { 0.0 };
                assert!(max_abs(&(anti - identity(2).scale(delta))) < 1e-15);
            }
        }
        assert!(pauli(0).is_err());
    }

    #[test]
    fn adjoint_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random::complex(&mut rng, 4, 4);
        let b = random::complex(&mut rng, 4, 4);
        assert_eq!(adjoint(&adjoint(&a)), a);
        assert!(max_abs(&(adjoint(&(&a * &b)) - adjoint(&b) * adjoint(&a))) < 1e-14);
        assert_eq!(max_abs(&commutator(&a, &a).unwrap()), 0.0);
    }

    #[test]
    fn commutator_dims_must_match() {
        assert_eq!(commutator(&identity(2), &identity(3)), Err(Error::DimMismatch(2, 3)));
    }

    #[test]
    fn eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random::hermitian(&mut rng, 5);
        let (vals, vecs) = hermitian_eigen(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let recon = &vecs * real_diagonal(&vals) * vecs.adjoint();
        assert!(max_abs(&(recon - h)) < 1e-12);
    }

    #[test]
    fn span_membership() {
        let mut span = Span::new(2);
        assert!(span.try_add(&identity(2), 1e-10).unwrap());
        assert!(span.try_add(&pauli(3).unwrap(), 1e-10).unwrap());
        assert!(!span.try_add(&real_diagonal(&[2.0, -5.0]), 1e-10).unwrap());
        assert!(span.residual(&pauli(1).unwrap()) > 0.99);
    }
}
