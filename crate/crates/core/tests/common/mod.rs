#![allow(dead_code)]

use magblock_core::{Complex64, ComplexMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
    random_matrix(rng, dim, dim).hermitian_part().unwrap()
}

/// `A A† / Tr(A A†)`.
pub fn random_density(rng: &mut StdRng, dim: usize) -> ComplexMatrix {
    let a = random_matrix(rng, dim, dim);
    let rho = a.matmul(&a.dagger()).unwrap();
    let tr = rho.trace().unwrap().re;
    rho.scale_real(1.0 / tr).hermitian_part().unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
