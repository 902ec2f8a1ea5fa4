//! Measure spaces induced by the choice of observables.
//!
//! Choosing a self-adjoint observable (or a commuting family) against a
//! state yields a finite measure space: the points are the (joint)
//! eigenvalues, every set of points is measurable, and the weight of a
//! point is the Born probability `tr(ρ P)` of its spectral projector.
//! Non-commuting observables have no common refinement, which surfaces as
//! [`Error::ContextIncompatible`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gns::AlgState;
use crate::linalg::{self, hermitian_eigen, max_abs, projector, trace, CMatrix};
use crate::tolerance::Tolerances;

/// Retries of the random linear combination before giving up.
pub const MAX_RETRIES: usize = 8;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct Observable {
    pub name: String,
    matrix: CMatrix,
}

impl Observable {
    pub fn new(name: impl Into<String>, matrix: CMatrix, tol: f64) -> Result<Self> {
        let name = name.into();
        let asymmetry = linalg::asymmetry(&matrix);
        if asymmetry > tol {
            return Err(Error::NotSelfAdjoint { name, asymmetry });
        }
        Ok(Observable { name, matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// The measure space `(points, all subsets, Born weights)` of a context.
#[derive(Debug, Clone)]
pub struct SpectralContext {
    pub observables: Vec<String>,
    /// One eigenvalue tuple per joint eigenspace, lexicographically ascending.
    pub points: Vec<Vec<f64>>,
    pub projectors: Vec<CMatrix>,
    pub weights: Vec<f64>,
}

impl SpectralContext {
    /// `Σ λ μ` for the `k`-th observable of the context.
    pub fn expectation(&self, k: usize) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| p[k] * w).sum()
    }

    /// `max |Σ P − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.projectors.first().map_or(0, |p| p.nrows());
        let sum = self.projectors.iter().fold(CMatrix::zeros(d, d), |acc, p| acc + p);
        max_abs(&(sum - linalg::identity(d)))
    }

    /// Largest `|P_i P_j|` for `i ≠ j`, and `|P² − P|`, `|P − P†|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, p) in self.projectors.iter().enumerate() {
            worst = worst.max(max_abs(&(p * p - p))).max(linalg::asymmetry(p));
            for q in &self.projectors[i + 1..] {
                worst = worst.max(max_abs(&(p * q)));
            }
        }
        worst
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Distribution of the `k`-th observable alone: merged values and weights.
    pub fn marginal(&self, k: usize, tol: f64) -> (Vec<f64>, Vec<f64>) {
        let mut pairs: Vec<(f64, f64)> = self.points.iter().zip(&self.weights).map(|(p, &w)| (p[k], w)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values: Vec<f64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (v, w) in pairs {
            match values.last() {
                Some(&last) if (v - last).abs() <= tol => *weights.last_mut().expect("paired") += w,
                _ => {
                    values.push(v);
                    weights.push(w);
                }
            }
        }
        (values, weights)
    }
}

fn degeneracy_tol(values: &[f64], tols: &Tolerances) -> f64 {
    let range = match (values.first(), values.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    (tols.degeneracy_rel * range).max(tols.degeneracy_floor)
}

/// Groups ascending eigenvalues into clusters no wider than `tol` per step.
fn clusters(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(group) if v - values[*group.last().expect("nonempty")] <= tol => group.push(k),
            _ => out.push(vec![k]),
        }
    }
    out
}

fn born_weights(state: &AlgState, projectors: &[CMatrix]) -> Vec<f64> {
    projectors.iter().map(|p| state.expect(p).re).collect()
}

fn check_state(obs: &Observable, state: &AlgState) -> Result<()> {
    if obs.dim() != state.dim() {
        return Err(Error::DimMismatch(obs.dim(), state.dim()));
    }
    Ok(())
}

/// Measure space of a single observable in state `state`.
pub fn spectral_context(a: &Observable, state: &AlgState, tols: &Tolerances) -> Result<SpectralContext> {
    check_state(a, state)?;
    let (values, vectors) = hermitian_eigen(a.matrix());
    let tol = degeneracy_tol(&values, tols);
    let mut points = Vec::new();
    let mut projectors = Vec::new();
    for group in clusters(&values, tol) {
        let mean = group.iter().map(|&k| values[k]).sum::<f64>() / group.len() as f64;
        points.push(vec![mean]);
        projectors.push(projector(&vectors, &group));
    }
    let weights = born_weights(state, &projectors);
    Ok(SpectralContext { observables: vec![a.name.clone()], points, projectors, weights })
}

/// Whether `‖[a, b]‖_max ≤ tol`.
pub fn commutes(a: &Observable, b: &Observable, tol: f64) -> Result<bool> {
    Ok(commutator_norm(a, b)? <= tol)
}

pub fn commutator_norm(a: &Observable, b: &Observable) -> Result<f64> {
    Ok(max_abs(&linalg::commutator(a.matrix(), b.matrix())?))
}

fn check_family(obs: &[Observable], tols: &Tolerances) -> Result<()> {
    let first = obs.first().ok_or(Error::EmptyContext)?;
    for (i, a) in obs.iter().enumerate() {
        if a.dim() != first.dim() {
            return Err(Error::DimMismatch(first.dim(), a.dim()));
        }
        for (j, b) in obs.iter().enumerate().skip(i + 1) {
            let norm = commutator_norm(a, b)?;
            if norm > tols.commute {
                return Err(Error::ContextIncompatible(i, j, norm));
            }
        }
    }
    Ok(())
}

/// Joint eigenspaces of a commuting family: eigenvalue tuples with their
/// projectors, in lexicographic order.
fn diagonalize(obs: &[Observable], tols: &Tolerances, seed: u64) -> Result<Vec<(Vec<f64>, CMatrix)>> {
    check_family(obs, tols)?;
    let d = obs[0].dim();
    let scales: Vec<f64> = obs.iter().map(|a| max_abs(a.matrix()).max(1e-300)).collect();
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut mix = CMatrix::zeros(d, d);
        for (a, s) in obs.iter().zip(&scales) {
            let coef: f64 = rng.random_range(0.5..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            mix += a.matrix().scale(coef / s);
        }
        let (values, vectors) = hermitian_eigen(&mix);
        let tol = degeneracy_tol(&values, tols);
        let mut joint: Vec<(Vec<f64>, CMatrix)> = Vec::new();
        let mut consistent = true;
        for group in clusters(&values, tol) {
            let p = projector(&vectors, &group);
            let rank = group.len() as f64;
            let tuple: Vec<f64> = obs.iter().map(|a| trace(&(a.matrix() * &p)).re / rank).collect();
            for ((a, &lambda), s) in obs.iter().zip(&tuple).zip(&scales) {
                // a must act as the scalar λ on the group's eigenspace.
                if max_abs(&(a.matrix() * &p - p.scale(lambda))) > 1e-8 * s.max(1.0) {
                    consistent = false;
                }
            }
            joint.push((tuple, p));
        }
        if !consistent {
            continue;
        }
        joint.sort_by(|x, y| {
            x.0.iter().zip(&y.0).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        return Ok(merge_equal_tuples(joint, obs, tols));
    }
    Err(Error::DiagonalizationFailed(MAX_RETRIES))
}

fn merge_equal_tuples(joint: Vec<(Vec<f64>, CMatrix)>, obs: &[Observable], tols: &Tolerances) -> Vec<(Vec<f64>, CMatrix)> {
    let per_obs_tol: Vec<f64> = obs
        .iter()
        .map(|a| {
            let (v, _) = hermitian_eigen(a.matrix());
            degeneracy_tol(&v, tols)
        })
        .collect();
    let mut out: Vec<(Vec<f64>, CMatrix)> = Vec::new();
    for (tuple, p) in joint {
        let same = out.iter_mut().find(|(t, _)| t.iter().zip(&tuple).zip(&per_obs_tol).all(|((a, b), tol)| (a - b).abs() <= *tol));
        match same {
            Some((_, q)) => *q += p,
            None => out.push((tuple, p)),
        }
    }
    out
}

/// Measure space of a commuting family, built on a common eigenbasis.
pub fn joint_context(obs: &[Observable], state: &AlgState, tols: &Tolerances, seed: u64) -> Result<SpectralContext> {
    check_family(obs, tols)?;
    check_state(&obs[0], state)?;
    let joint = diagonalize(obs, tols, seed)?;
    let (points, projectors): (Vec<_>, Vec<_>) = joint.into_iter().unzip();
    let weights = born_weights(state, &projectors);
    Ok(SpectralContext { observables: obs.iter().map(|o| o.name.clone()).collect(), points, projectors, weights })
}

/// Characters of the commutative algebra generated by a commuting family:
/// each point assigns one joint eigenvalue to every observable.
#[derive(Debug, Clone)]
pub struct GelfandSpectrum {
    pub points: Vec<Vec<f64>>,
    pub projectors: Vec<CMatrix>,
}

pub fn gelfand_points(obs: &[Observable], tols: &Tolerances, seed: u64) -> Result<GelfandSpectrum> {
    let (points, projectors) = diagonalize(obs, tols, seed)?.into_iter().unzip();
    Ok(GelfandSpectrum { points, projectors })
}

impl GelfandSpectrum {
    /// Checks that `f_matrix` (a function of the observables) acts on each
    /// joint eigenspace as the scalar `f(point)`. Returns the worst residual.
    pub fn functional_residual<F: Fn(&[f64]) -> f64>(&self, f: F, f_matrix: &CMatrix) -> f64 {
        self.points
            .iter()
            .zip(&self.projectors)
            .map(|(pt, p)| max_abs(&(f_matrix * p - p.scale(f(pt)))))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, pauli, real_diagonal, CVector};

    fn obs(name: &str, m: CMatrix) -> Observable {
        Observable::new(name, m, 1e-10).unwrap()
    }

    fn spin_down() -> AlgState {
        let mut v = CVector::zeros(2);
        v[0] = c(1.0, 0.0);
        AlgState::vector_state(&v).unwrap()
    }

    const TOL: Tolerances = Tolerances::DEFAULT;

    #[test]
    fn spin_down_is_sharp_for_psi3() {
        let ctx = spectral_context(&obs("psi3", pauli(3).unwrap().scale(0.5)), &spin_down(), &TOL).unwrap();
        assert_eq!(ctx.points, vec![vec![-0.5], vec![0.5]]);
        assert!((ctx.weights[0] - 1.0).abs() < 1e-12 && ctx.weights[1].abs() < 1e-12);
    }

    #[test]
    fn identity_has_one_atom() {
        let ctx = spectral_context(&obs("id", linalg::identity(3)), &AlgState::tracial(3), &TOL).unwrap();
        assert_eq!(ctx.points.len(), 1);
        assert!((ctx.weights[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psi1_on_spin_down_is_fair() {
        let ctx = spectral_context(&obs("psi1", pauli(1).unwrap().scale(0.5)), &spin_down(), &TOL).unwrap();
        assert!(ctx.weights.iter().all(|w| (w - 0.5).abs() < 1e-12));
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = linalg::identity(2);
        m[(0, 1)] = c(0.3, 0.0);
        let err = Observable::new("bad", m, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NotSelfAdjoint { asymmetry, .. } if (asymmetry - 0.3).abs() < 1e-15));
    }

    #[test]
    fn commutation_checks() {
        let s1 = obs("s1", pauli(1).unwrap());
        let s2 = obs("s2", pauli(2).unwrap());
        assert!(!commutes(&s1, &s2, 1e-10).unwrap());
        assert!(commutes(&s1, &s1, 1e-10).unwrap());
        assert!(commutes(&obs("a", real_diagonal(&[1.0, 2.0])), &obs("b", real_diagonal(&[3.0, 4.0])), 1e-10).unwrap());
        assert!(commutes(&s1, &obs("c", linalg::identity(3)), 1e-10).is_err());
    }

    #[test]
    fn joint_contexts() {
        let s3 = obs("s3", pauli(3).unwrap());
        let solo = spectral_context(&s3, &spin_down(), &TOL).unwrap();
        let joint = joint_context(std::slice::from_ref(&s3), &spin_down(), &TOL, DEFAULT_SEED).unwrap();
        assert_eq!(solo.points, joint.points);

        let a = obs("a", real_diagonal(&[1.0, 2.0, 2.0]));
        let b = obs("b", real_diagonal(&[5.0, 3.0, 3.0]));
        let ctx = joint_context(&[a, b], &AlgState::tracial(3), &TOL, DEFAULT_SEED).unwrap();
        assert_eq!(ctx.points.len(), 2);
        assert!((ctx.points[0][0] - 1.0).abs() < 1e-12 && (ctx.points[0][1] - 5.0).abs() < 1e-12);
        assert!((ctx.points[1][0] - 2.0).abs() < 1e-12 && (ctx.points[1][1] - 3.0).abs() < 1e-12);
        assert!((ctx.weights[1] - 2.0 / 3.0).abs() < 1e-12);

        let err = joint_context(&[obs("s1", pauli(1).unwrap()), obs("s2", pauli(2).unwrap())], &spin_down(), &TOL, 1)
            .unwrap_err();
        assert!(matches!(err, Error::ContextIncompatible(0, 1, n) if (n - 2.0).abs() < 1e-12));
        assert_eq!(joint_context(&[], &spin_down(), &TOL, 1).unwrap_err(), Error::EmptyContext);
    }

    #[test]
    fn gelfand_examples() {
        let g = gelfand_points(&[obs("d", real_diagonal(&[1.0, 2.0]))], &TOL, DEFAULT_SEED).unwrap();
        assert_eq!(g.points, vec![vec![1.0], vec![2.0]]);
        let g = gelfand_points(&[obs("s3", pauli(3).unwrap())], &TOL, DEFAULT_SEED).unwrap();
        assert_eq!(g.points, vec![vec![-1.0], vec![1.0]]);

        let a = real_diagonal(&[1.0, 2.0, 3.0]);
        let a2 = &a * &a;
        let g = gelfand_points(&[obs("A", a.clone()), obs("A2", a2.clone())], &TOL, DEFAULT_SEED).unwrap();
        let pts: Vec<Vec<f64>> = g.points.iter().map(|p| p.iter().map(|x| x.round()).collect()).collect();
        assert_eq!(pts, vec![vec![1.0, 1.0], vec![2.0, 4.0], vec![3.0, 9.0]]);
        let poly = &a2 * &a - a.scale(2.0) + linalg::identity(3);
        assert!(g.functional_residual(|p| p[1] * p[0] - 2.0 * p[0] + 1.0, &poly) < 1e-9);
    }
}
