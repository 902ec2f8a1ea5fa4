//! GNS construction on random finite *-algebras.

use emergent_space::gns::{self, gns, AlgState, StarAlgebra};
use emergent_space::linalg::{c, hermitian_eigen, CMatrix, CVector};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// dim(A/N) without the Gram matrix: `ω(x†x) = 0` iff `xρ = 0`, so the
/// quotient dimension is the rank of `x ↦ xρ` on the algebra, read off
/// the singular values of the stacked `vec(bᵢρ)`.
fn quotient_dim_oracle(alg: &StarAlgebra, st: &AlgState) -> usize {
    let d = alg.dim();
    let cols: Vec<CMatrix> = alg.basis().iter().map(|b| b * st.density()).collect();
    let m = DMatrix::<Complex64>::from_fn(d * d, cols.len(), |r, k| cols[k][(r / d, r % d)]);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > 1e-6 * top).count()
}

fn random_element<R: Rng>(rng: &mut R, alg: &StarAlgebra) -> CMatrix {
    let d = alg.dim();
    alg.basis()
        .iter()
        .fold(CMatrix::zeros(d, d), |acc, b| acc + b * c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

#[test]
fn random_pairs_satisfy_gns_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..60 {
        let dim = rng.random_range(2..=6);
        let alg = gns::random::algebra(&mut rng, dim);
        assert!(alg.closure_residual() < 1e-10);
        let st = gns::random::state(&mut rng, dim);
        let rep = gns(&alg, &st, 1e-9).unwrap();

        assert!(rep.gram_eigenvalues()[0] >= -1e-9, "gram not PSD");
        assert!(emergent_space::linalg::asymmetry(rep.gram()) < 1e-12);
        assert!((rep.omega().norm_squared() - 1.0).abs() < 1e-10);
        assert!(rep.reproduction_residual() <= 1e-9);
        assert!(rep.homomorphism_residual() <= 1e-9);
        assert_eq!(rep.quotient_dim(), quotient_dim_oracle(&alg, &st));
        assert_eq!(rep.cyclic_rank(), rep.quotient_dim());
    }
}

#[test]
fn states_obey_cauchy_schwarz() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let dim = rng.random_range(2..=5);
        let alg = gns::random::algebra(&mut rng, dim);
        let st = gns::random::state(&mut rng, dim);
        let x = random_element(&mut rng, &alg);
        let y = random_element(&mut rng, &alg);
        let lhs = st.expect(&(x.adjoint() * &y)).norm_sqr();
        let rhs = st.expect(&(x.adjoint() * &x)).re * st.expect(&(y.adjoint() * &y)).re;
        assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
    }
}

#[test]
fn represented_elements_act_like_left_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let alg = StarAlgebra::full(3);
    let st = gns::random::state(&mut rng, 3);
    let rep = gns(&alg, &st, 1e-9).unwrap();
    let x = random_element(&mut rng, &alg);
    let y = random_element(&mut rng, &alg);
    // π(x)[y] = [xy]
    let lhs = rep.pi(&x) * rep.class_of(&y);
    let rhs = rep.class_of(&(&x * &y));
    assert!((lhs - rhs).norm() < 1e-10);
    // [x] = π(x)Ω
    assert!((rep.pi(&x) * rep.omega() - rep.class_of(&x)).norm() < 1e-10);
}

#[test]
fn canonical_two_by_two_states() {
    let alg = StarAlgebra::full(2);
    let mut e0 = CVector::zeros(2);
    e0[0] = c(1.0, 0.0);
    let vector = AlgState::vector_state(&e0).unwrap();
    // Gram over E00, E01, E10, E11 with ω = ⟨e0|·|e0⟩: rank 2.
    let units: Vec<CMatrix> = (0..4)
        .map(|k| {
            let mut m = CMatrix::zeros(2, 2);
            m[(k / 2, k % 2)] = c(1.0, 0.0);
            m
        })
        .collect();
    let gram = CMatrix::from_fn(4, 4, |i, j| vector.expect(&(units[i].adjoint() * &units[j])));
    let (vals, _) = hermitian_eigen(&gram);
    assert_eq!(vals.iter().filter(|&&v| v > 1e-12).count(), 2);
    assert_eq!(gns(&alg, &vector, 1e-9).unwrap().quotient_dim(), 2);

    let tracial = AlgState::tracial(2);
    let gram = CMatrix::from_fn(4, 4, |i, j| tracial.expect(&(units[i].adjoint() * &units[j])));
    assert!((gram - CMatrix::identity(4, 4).scale(0.5)).iter().all(|z| z.norm() < 1e-15));
    assert_eq!(gns(&alg, &tracial, 1e-9).unwrap().quotient_dim(), 4);
}

#[test]
fn generated_algebras_contain_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = emergent_space::linalg::random::complex(&mut rng, 3, 3);
    let alg = StarAlgebra::generate(3, std::slice::from_ref(&a)).unwrap();
    // A generic matrix generates all of M_3.
    assert_eq!(alg.len(), 9);
    assert!(alg.contains(&(&a * a.adjoint() * &a)));
}

#[test]
fn rank_cut_is_relative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = gns::random::algebra(&mut rng, 4);
    let st = gns::random::state(&mut rng, 4);
    let scaled: Vec<CMatrix> = alg.basis().iter().map(|b| b.scale(1e6)).collect();
    let big = StarAlgebra::from_basis(4, &scaled).unwrap();
    assert_eq!(gns(&alg, &st, 1e-9).unwrap().quotient_dim(), gns(&big, &st, 1e-9).unwrap().quotient_dim());
}

#[test]
fn oscillator_ladders() {
    for levels in [4, 8] {
        let osc = gns::truncated_oscillator(levels).unwrap();
        assert_eq!(osc.vacuum_number(), 0.0);
        assert!(osc.annihilated_vacuum_norm() <= 1e-10);
        assert!(osc.ladder_orthonormality(levels - 1) <= 1e-10);
        let corner = osc.commutator()[(levels - 1, levels - 1)];
        assert!((corner - c(1.0 - levels as f64, 0.0)).norm() < 1e-12);
    }
}
