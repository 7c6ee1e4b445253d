//! Real-linear *-representations of finite algebras on `ℂʰ`.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{AlgebraElement, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// A representation stored as the images of the canonical real basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dim: usize,
    images: Vec<ComplexMatrix>,
}

/// Residuals of the *-homomorphism identities over a set of samples.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HomomorphismResidual {
    pub multiplicative: f64,
    pub adjoint: f64,
    pub unital: f64,
}

impl HomomorphismResidual {
    pub fn max(&self) -> f64 {
        self.multiplicative.max(self.adjoint).max(self.unital)
    }
}

impl Representation {
    pub fn new(alg: &FiniteStarAlgebra, dim: usize, images: Vec<ComplexMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("representation space must be nonzero".into()));
        }
        if images.len() != alg.real_dim() {
            return Err(Error::Shape(format!(
                "algebra {} has real dimension {} but {} basis images were given",
                alg.describe(),
                alg.real_dim(),
                images.len()
            )));
        }
        for (k, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!(
                    "basis image {k} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            m.ensure_finite()?;
        }
        Ok(Self { dim, images })
    }

    /// Builds the representation from its action on each basis element.
    pub fn from_fn(
        alg: &FiniteStarAlgebra,
        dim: usize,
        f: impl FnMut(&AlgebraElement) -> ComplexMatrix,
    ) -> Result<Self> {
        let images = alg.basis().iter().map(f).collect();
        Self::new(alg, dim, images)
    }

    /// The defining representation `a ↦ a` on `ℂ^{matrix_size}`.
    pub fn defining(alg: &FiniteStarAlgebra) -> Self {
        let images = alg.basis().into_iter().map(AlgebraElement::into_matrix).collect();
        Self {
            dim: alg.matrix_size(),
            images,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn apply(&self, alg: &FiniteStarAlgebra, a: &AlgebraElement) -> Result<ComplexMatrix> {
        if a.matrix().rows() != alg.matrix_size() || a.matrix().cols() != alg.matrix_size() {
            return Err(Error::Shape(format!(
                "element is {}x{} but algebra {} acts on C^{}",
                a.matrix().rows(),
                a.matrix().cols(),
                alg.describe(),
                alg.matrix_size()
            )));
        }
        if self.images.len() != alg.real_dim() {
            return Err(Error::Shape("representation does not match algebra".into()));
        }
        Ok(self.apply_coordinates(&alg.coordinates(a)))
    }

    pub fn apply_coordinates(&self, x: &[f64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.images) {
            if *c != 0.0 {
                out.axpy(C64::new(*c, 0.0), m);
            }
        }
        out
    }

    /// `a ↦ ρ(a) ⊗ 1_k`
    pub fn amplified(&self, k: usize) -> Self {
        let id = ComplexMatrix::identity(k);
        Self {
            dim: self.dim * k,
            images: self.images.iter().map(|m| m.kron(&id)).collect(),
        }
    }

    /// `a ↦ W ρ(a) W*`
    pub fn conjugated(&self, w: &ComplexMatrix) -> Self {
        Self {
            dim: self.dim,
            images: self.images.iter().map(|m| m.conjugate_by(w)).collect(),
        }
    }

    /// Direct sum of two representations of the same algebra.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            dim: self.dim + other.dim,
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| ComplexMatrix::block_diag(&[a, b]))
                .collect(),
        }
    }

    /// Replaces the image of one basis element. Used to build corrupted inputs.
    pub fn with_image(mut self, k: usize, m: ComplexMatrix) -> Self {
        self.images[k] = m;
        self
    }

    /// True when `ρ(i a) = i ρ(a)` for every basis element `a` of a complex-type algebra.
    pub fn is_complex_linear(&self, alg: &FiniteStarAlgebra) -> bool {
        if !alg.is_complex_type() {
            return false;
        }
        let i1 = alg.identity().scale(crate::matrix::I);
        alg.basis().iter().all(|b| {
            let lhs = self.apply(alg, &i1.mul(b)).expect("shape checked");
            let rhs = self.apply(alg, b).expect("shape checked").scale(crate::matrix::I);
            lhs.max_abs_diff(&rhs) < 1e-12
        })
    }

    /// Checks `ρ(ab) = ρ(a)ρ(b)`, `ρ(a*) = ρ(a)*` and `ρ(1) = 1` on all pairs of
    /// basis elements and on `samples` random pairs.
    pub fn homomorphism_residual(
        &self,
        alg: &FiniteStarAlgebra,
        samples: usize,
        rng: &mut impl Rng,
    ) -> Result<HomomorphismResidual> {
        let mut els = alg.basis();
        for _ in 0..samples {
            els.push(alg.random_element(rng));
        }
        let imgs: Vec<ComplexMatrix> = els.iter().map(|a| self.apply(alg, a)).collect::<Result<_>>()?;
        let mut r = HomomorphismResidual::default();
        for (a, ra) in els.iter().zip(&imgs) {
            let adj = self.apply(alg, &a.adjoint())?;
            r.adjoint = r.adjoint.max(adj.max_abs_diff(&ra.adjoint()));
            for (b, rb) in els.iter().zip(&imgs) {
                let rab = self.apply(alg, &a.mul(b))?;
                r.multiplicative = r.multiplicative.max(rab.max_abs_diff(&(ra * rb)));
            }
        }
        let one = self.apply(alg, &alg.identity())?;
        r.unital = one.max_abs_diff(&ComplexMatrix::identity(self.dim));
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Block, Field};
    use crate::random::rng;

    #[test]
    fn defining_rep_is_identity_map() {
        let alg = FiniteStarAlgebra::new(alloc::vec![
            Block::new(Field::Quaternion, 1),
            Block::new(Field::Complex, 2),
        ])
        .unwrap();
        let rep = Representation::defining(&alg);
        let mut r = rng(1);
        let a = alg.random_element(&mut r);
        assert!(rep.apply(&alg, &a).unwrap().max_abs_diff(a.matrix()) < 1e-15);
        let res = rep.homomorphism_residual(&alg, 4, &mut r).unwrap();
        assert!(res.max() < 1e-13);
    }

    #[test]
    fn conjugate_action_is_a_real_representation() {
        // C acting by λ ↦ λ̄ on C^1
        let alg = FiniteStarAlgebra::commutative(1).unwrap();
        let rep = Representation::from_fn(&alg, 1, |b| b.matrix().conj()).unwrap();
        let mut r = rng(2);
        assert!(rep.homomorphism_residual(&alg, 5, &mut r).unwrap().max() < 1e-14);
        assert!(!rep.is_complex_linear(&alg));
        assert!(Representation::defining(&alg).is_complex_linear(&alg));
    }

    #[test]
    fn amplified_and_sum_stay_homomorphisms() {
        let alg = FiniteStarAlgebra::matrices(2).unwrap();
        let rep = Representation::defining(&alg).amplified(3);
        let rep = rep.direct_sum(&Representation::defining(&alg));
        assert_eq!(rep.dim(), 8);
        let mut r = rng(3);
        assert!(rep.homomorphism_residual(&alg, 3, &mut r).unwrap().max() < 1e-13);
    }

    #[test]
    fn broken_image_is_detected() {
        let alg = FiniteStarAlgebra::commutative(2).unwrap();
        let rep = Representation::defining(&alg);
        let bad = rep.images()[0].scale_real(2.0);
        let rep = rep.with_image(0, bad);
        let mut r = rng(4);
        assert!(rep.homomorphism_residual(&alg, 2, &mut r).unwrap().max() > 0.5);
    }

    #[test]
    fn rejects_wrong_image_count() {
        let alg = FiniteStarAlgebra::commutative(2).unwrap();
        assert!(Representation::new(&alg, 2, alloc::vec![ComplexMatrix::identity(2)]).is_err());
    }
}
