mod common;

use common::{random_hermitian, random_matrix, rng};
use magblock_core::fockspace::{self, HilbertLayout};
use magblock_core::linalg::{self, LuDecomposition};
use magblock_core::{Complex64, ComplexMatrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, c in 1usize..4) {
        let mut r = rng(seed);
        let (x, y, z) = (random_matrix(&mut r, a, a), random_matrix(&mut r, b, b), random_matrix(&mut r, c, c));
        let left = fockspace::kron(&fockspace::kron(&x, &y).unwrap(), &z).unwrap();
        let right = fockspace::kron(&x, &fockspace::kron(&y, &z).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn dagger_reverses_products(seed in any::<u64>(), n in 1usize..7, k in 1usize..7, m in 1usize..7) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, k);
        let b = random_matrix(&mut r, k, m);
        let lhs = fockspace::dagger(&fockspace::matmul(&a, &b).unwrap());
        let rhs = fockspace::matmul(&fockspace::dagger(&b), &fockspace::dagger(&a)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), n in 1usize..8, k in 1usize..8) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, k);
        let b = random_matrix(&mut r, k, n);
        let ab = fockspace::trace(&a.matmul(&b).unwrap()).unwrap();
        let ba = fockspace::trace(&b.matmul(&a).unwrap()).unwrap();
        prop_assert!((ab - ba).norm() < 1e-12);
    }

    #[test]
    fn kron_trace_factorizes(seed in any::<u64>(), a in 1usize..5, b in 1usize..5) {
        let mut r = rng(seed);
        let (x, y) = (random_matrix(&mut r, a, a), random_matrix(&mut r, b, b));
        let t = fockspace::trace(&fockspace::kron(&x, &y).unwrap()).unwrap();
        let want = x.trace().unwrap() * y.trace().unwrap();
        prop_assert!((t - want).norm() < 1e-12);
    }

    #[test]
    fn qubit_and_magnon_lifts_commute(seed in any::<u64>(), n_fock in 2usize..8) {
        let mut r = rng(seed);
        let layout = HilbertLayout::new(n_fock).unwrap();
        let q = layout.lift_qubit(&random_matrix(&mut r, 2, 2)).unwrap();
        let m = layout.lift_magnon(&random_matrix(&mut r, n_fock, n_fock)).unwrap();
        prop_assert!(fockspace::commutator(&q, &m).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn vectorization_is_column_stacking(seed in any::<u64>(), d in 1usize..5) {
        let mut r = rng(seed);
        let (a, x, b) = (random_matrix(&mut r, d, d), random_matrix(&mut r, d, d), random_matrix(&mut r, d, d));
        let axb = a.matmul(&x).unwrap().matmul(&b).unwrap();
        let sup = b.transpose().kron(&a).unwrap();
        let got = sup.mul_vec(&linalg::vectorize(&x)).unwrap();
        let want = linalg::vectorize(&axb);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).norm() < 1e-12);
        }
        let back = linalg::unvectorize(&want, d).unwrap();
        prop_assert_eq!(back, axb);
    }

    #[test]
    fn lu_solves_random_systems(seed in any::<u64>(), d in 1usize..12) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, d, d);
        let x: Vec<Complex64> = random_matrix(&mut r, d, 1).into_vec();
        let b = a.mul_vec(&x).unwrap();
        let lu = LuDecomposition::factor(&a, 1e-12).unwrap();
        let got = lu.solve(&b).unwrap();
        let res: Vec<Complex64> = a.mul_vec(&got).unwrap().iter().zip(&b).map(|(p, q)| p - q).collect();
        prop_assert!(linalg::vector_norm(&res) < 1e-9 * (1.0 + linalg::vector_norm(&b)));
    }

    #[test]
    fn hermitian_spectrum_matches_trace_invariants(seed in any::<u64>(), d in 1usize..10) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, d);
        let e = linalg::hermitian_eigenvalues(&h).unwrap();
        prop_assert_eq!(e.len(), d);
        prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
        let tr = h.trace().unwrap().re;
        prop_assert!((e.iter().sum::<f64>() - tr).abs() < 1e-10);
        let tr2 = h.matmul(&h).unwrap().trace().unwrap().re;
        prop_assert!((e.iter().map(|x| x * x).sum::<f64>() - tr2).abs() < 1e-10);
    }
}

#[test]
fn basis_is_qubit_major() {
    let layout = HilbertLayout::new(6).unwrap();
    assert_eq!(layout.total_dim(), 12);
    assert_eq!(layout.index(false, 0), 0);
    assert_eq!(layout.index(false, 5), 5);
    assert_eq!(layout.index(true, 0), 6);
    assert_eq!(layout.index(true, 5), 11);
    let sz = layout.lift_qubit(&fockspace::sigma_z()).unwrap();
    for n in 0..6 {
        assert_eq!(sz[(n, n)].re, -1.0);
        assert_eq!(sz[(6 + n, 6 + n)].re, 1.0);
    }
}

#[test]
fn kron_rejects_non_square() {
    let a = ComplexMatrix::zeros(2, 3);
    assert!(fockspace::kron(&a, &a).is_err());
}

#[test]
fn singular_system_is_reported() {
    let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 2.0]);
    assert!(matches!(
        LuDecomposition::factor(&a, 1e-12),
        Err(magblock_core::Error::NonUniqueSteadyState)
    ));
}
