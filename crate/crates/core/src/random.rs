//! Seeded sampling helpers shared by the property checks.

use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math in no_std
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{inner, vec_norm, ComplexMatrix, C64};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample in `[-1, 1)`.
pub fn unit(rng: &mut impl Rng) -> f64 {
    rng.gen::<f64>() * 2.0 - 1.0
}

pub fn complex(rng: &mut impl Rng) -> C64 {
    C64::new(unit(rng), unit(rng))
}

pub fn complex_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex(rng)).collect()
}

pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    let v = complex_vector(rng, n);
    let norm = vec_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

pub fn complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn real_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(unit(rng), 0.0))
}

pub fn hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    complex_matrix(rng, n, n).hermitian_part()
}

pub fn real_symmetric(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    real_matrix(rng, n, n).hermitian_part()
}

/// Random unitary from Gram-Schmidt orthonormalisation of a random matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = complex_vector(rng, n);
        for q in &cols {
            let p = inner(q, &v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= p * qi;
            }
        }
        let norm = vec_norm(&v);
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Unit-modulus complex number with uniform phase.
pub fn phase(rng: &mut impl Rng) -> C64 {
    let t = rng.gen::<f64>() * core::f64::consts::TAU;
    C64::new(t.cos(), t.sin())
}
