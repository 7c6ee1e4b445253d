//! Finite spectral triples: data, the KO sign table, axiom checks and the
//! spectral distance.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{op_norm, ComplexMatrix, C64};
use crate::representation::Representation;

mod axioms;
mod distance;

pub use axioms::{
    check_axioms, check_axioms_with, AxiomId, AxiomOutcome, AxiomReport, AxiomResult, DEFAULT_SAMPLES,
    DEFAULT_SEED,
};
pub use distance::{spectral_distance, DistanceResult};

/// Signs `(ε, ε′, ε″)` with `J² = ε`, `JD = ε′DJ`, `Jγ = ε″γJ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignTriple {
    pub epsilon: i8,
    pub epsilon_prime: i8,
    /// Only defined for even KO dimension.
    pub epsilon_double_prime: Option<i8>,
}

/// KO-dimension sign table, `n` taken mod 8.
pub fn sign_table(n: u8) -> SignTriple {
    const E: [i8; 8] = [1, 1, -1, -1, -1, -1, 1, 1];
    const E1: [i8; 8] = [1, -1, 1, 1, 1, -1, 1, 1];
    const E2: [i8; 4] = [1, -1, 1, -1];
    let n = (n % 8) as usize;
    SignTriple {
        epsilon: E[n],
        epsilon_prime: E1[n],
        epsilon_double_prime: n.is_multiple_of(2).then(|| E2[n / 2]),
    }
}

/// Antilinear `J ξ = U conj(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealStructure {
    pub u: ComplexMatrix,
}

impl RealStructure {
    pub fn new(u: ComplexMatrix) -> Self {
        Self { u }
    }

    pub fn apply(&self, xi: &[C64]) -> Vec<C64> {
        let c: Vec<C64> = xi.iter().map(|z| z.conj()).collect();
        self.u.mul_vec(&c)
    }

    /// `J A J⁻¹ = U conj(A) U*`
    pub fn conjugate(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &(&self.u * &a.conj()) * &self.u.adjoint()
    }

    /// Matrix of the linear operator `J²`.
    pub fn squared(&self) -> ComplexMatrix {
        &self.u * &self.u.conj()
    }

    /// The real structure transported by a unitary `W`: `W J W*`.
    pub fn conjugated_by(&self, w: &ComplexMatrix) -> Self {
        Self {
            u: &(w * &self.u) * &w.transpose(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpectralTriple {
    pub algebra: FiniteStarAlgebra,
    pub rep: Representation,
    pub d: ComplexMatrix,
    pub gamma: Option<ComplexMatrix>,
    pub j: Option<RealStructure>,
    pub ko: u8,
}

impl FiniteSpectralTriple {
    /// Checks shapes and finiteness only. The axioms are left to
    /// [`check_axioms`] so that defective triples can still be inspected.
    pub fn new(
        algebra: FiniteStarAlgebra,
        rep: Representation,
        d: ComplexMatrix,
        gamma: Option<ComplexMatrix>,
        j: Option<RealStructure>,
        ko: u8,
    ) -> Result<Self> {
        let h = rep.dim();
        let check = |m: &ComplexMatrix, what: &str| -> Result<()> {
            m.ensure_finite()?;
            if m.rows() != h || m.cols() != h {
                return Err(Error::Shape(format!(
                    "{what} is {}x{}, expected {h}x{h}",
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(())
        };
        check(&d, "D")?;
        if let Some(g) = &gamma {
            check(g, "grading")?;
        }
        if let Some(j) = &j {
            check(&j.u, "J unitary")?;
        }
        if rep.images().len() != algebra.real_dim() {
            return Err(Error::Shape("representation does not match algebra".into()));
        }
        Ok(Self {
            algebra,
            rep,
            d,
            gamma,
            j,
            ko: ko % 8,
        })
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn rho(&self, a: &AlgebraElement) -> Result<ComplexMatrix> {
        self.rep.apply(&self.algebra, a)
    }

    /// `[D, ρ(f)]`
    pub fn commutator(&self, f: &AlgebraElement) -> Result<ComplexMatrix> {
        Ok(self.d.commutator(&self.rho(f)?))
    }

    /// Transports the whole triple by a unitary `W`.
    pub fn conjugated_by(&self, w: &ComplexMatrix) -> Self {
        Self {
            algebra: self.algebra.clone(),
            rep: self.rep.conjugated(w),
            d: self.d.conjugate_by(w),
            gamma: self.gamma.as_ref().map(|g| g.conjugate_by(w)),
            j: self.j.as_ref().map(|j| j.conjugated_by(w)),
            ko: self.ko,
        }
    }

    pub fn with_dirac(&self, d: ComplexMatrix) -> Result<Self> {
        Self::new(
            self.algebra.clone(),
            self.rep.clone(),
            d,
            self.gamma.clone(),
            self.j.clone(),
            self.ko,
        )
    }
}

/// `‖[D, ρ(f)]‖`
pub fn commutator_norm(t: &FiniteSpectralTriple, f: &AlgebraElement) -> Result<f64> {
    t.algebra.ensure_conforms(f)?;
    op_norm(&t.commutator(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{self, rng};

    #[test]
    fn sign_table_golden() {
        let rows: [(i8, i8, Option<i8>); 8] = [
            (1, 1, Some(1)),
            (1, -1, None),
            (-1, 1, Some(-1)),
            (-1, 1, None),
            (-1, 1, Some(1)),
            (-1, -1, None),
            (1, 1, Some(-1)),
            (1, 1, None),
        ];
        for (n, (e, e1, e2)) in rows.iter().enumerate() {
            let s = sign_table(n as u8);
            assert_eq!(
                (s.epsilon, s.epsilon_prime, s.epsilon_double_prime),
                (*e, *e1, *e2)
            );
        }
        assert_eq!(sign_table(10), sign_table(2));
    }

    #[test]
    fn conjugation_by_j_matches_vector_action() {
        let mut r = rng(21);
        let u = random::unitary(&mut r, 3);
        let j = RealStructure::new(u);
        let a = random::complex_matrix(&mut r, 3, 3);
        let xi = random::complex_vector(&mut r, 3);
        // J A J⁻¹ (J ξ) = J (A ξ)
        let lhs = j.conjugate(&a).mul_vec(&j.apply(&xi));
        let rhs = j.apply(&a.mul_vec(&xi));
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn commutator_norm_of_identity_is_zero() {
        let alg = FiniteStarAlgebra::commutative(2).unwrap();
        let mut r = rng(22);
        let d = random::hermitian(&mut r, 2);
        let t =
            FiniteSpectralTriple::new(alg.clone(), Representation::defining(&alg), d, None, None, 0).unwrap();
        assert_eq!(commutator_norm(&t, &alg.identity()).unwrap(), 0.0);
        let f = alg.random_self_adjoint(&mut r);
        let bound = 2.0 * op_norm(&t.d).unwrap() * op_norm(f.matrix()).unwrap();
        assert!(commutator_norm(&t, &f).unwrap() <= bound + 1e-12);
    }

    #[test]
    fn shape_errors() {
        let alg = FiniteStarAlgebra::commutative(2).unwrap();
        let rep = Representation::defining(&alg);
        assert!(FiniteSpectralTriple::new(alg, rep, ComplexMatrix::identity(3), None, None, 0).is_err());
    }
}
