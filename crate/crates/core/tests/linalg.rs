use magblock_core::linalg::*;
use magblock_core::*;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn vectorization_stacks_columns() {
    let m = ComplexMatrix::from_row_major(2, 2, vec![re(1.0), re(2.0), re(3.0), re(4.0)]).unwrap();
    assert_eq!(vectorize(&m), [re(1.0), re(3.0), re(2.0), re(4.0)]);
    assert_eq!(unvectorize(&vectorize(&m), 2).unwrap(), m);
    assert!(unvectorize(&[re(1.0); 3], 2).is_err());
}

#[test]
fn lu_solves_small_system() {
    let a = ComplexMatrix::from_row_major(
        3,
        3,
        vec![
            re(0.0),
            re(2.0),
            Complex64::new(0.0, 1.0),
            re(1.0),
            re(1.0),
            re(0.0),
            Complex64::new(3.0, -1.0),
            re(0.0),
            re(1.0),
        ],
    )
    .unwrap();
    let x_true = [Complex64::new(1.0, 2.0), re(-0.5), Complex64::new(0.0, 3.0)];
    let b = a.mul_vec(&x_true).unwrap();
    let x = LuDecomposition::factor(&a, 1e-12)
        .unwrap()
        .solve(&b)
        .unwrap();
    for (u, v) in x.iter().zip(&x_true) {
        assert!((u - v).norm() < 1e-13);
    }
}

#[test]
fn lu_detects_singularity() {
    let a = ComplexMatrix::from_row_major(2, 2, vec![re(1.0), re(2.0), re(2.0), re(4.0)]).unwrap();
    assert_eq!(
        LuDecomposition::factor(&a, 1e-12).unwrap_err(),
        Error::NonUniqueSteadyState
    );
    assert!(LuDecomposition::factor(&ComplexMatrix::zeros(3, 3), 1e-12).is_err());
}

#[test]
fn hermitian_eigenvalues_of_pauli_y_like() {
    // [[1, -i], [i, 1]] has eigenvalues 0 and 2
    let h = ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            re(1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            re(1.0),
        ],
    )
    .unwrap();
    let e = hermitian_eigenvalues(&h).unwrap();
    assert!(
        (e[0] - 0.0).abs() < 1e-12 && (e[1] - 2.0).abs() < 1e-12,
        "{e:?}"
    );
}

#[test]
fn hermitian_eigenvalues_of_diagonal() {
    let h = ComplexMatrix::from_real_diagonal(&[3.0, -1.0, 0.5]);
    let e = hermitian_eigenvalues(&h).unwrap();
    assert_eq!(e.len(), 3);
    assert!((e[0] + 1.0).abs() < 1e-14);
    assert!((e[1] - 0.5).abs() < 1e-14);
    assert!((e[2] - 3.0).abs() < 1e-14);
}
