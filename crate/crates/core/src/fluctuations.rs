//! Inner fluctuations `D ↦ D + A + JAJ⁻¹` with `A = Σ ρ(aᵢ)[D, ρ(bᵢ)]`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{AlgebraElement, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ABS_TOL};
use crate::random;
use crate::representation::Representation;
use crate::triple::{FiniteSpectralTriple, RealStructure};

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    pub pairs: Vec<(AlgebraElement, AlgebraElement)>,
}

impl PotentialSpec {
    pub fn new(pairs: Vec<(AlgebraElement, AlgebraElement)>) -> Self {
        Self { pairs }
    }

    /// An equivalent list whose potential is self-adjoint term by term: each
    /// `(a, b)` becomes `(a/2, b)`, `(b*/2, a*)` and `(−1/2, b*a*)`.
    ///
    /// Uses `(a[D,b])* = −[D,b*]a* = b*[D,a*] − [D,b*a*]`.
    pub fn self_adjoint(&self, one: &AlgebraElement) -> Self {
        let mut pairs = Vec::with_capacity(3 * self.pairs.len());
        for (a, b) in &self.pairs {
            let (a_s, b_s) = (a.adjoint(), b.adjoint());
            pairs.push((a.scale_real(0.5), b.clone()));
            pairs.push((b_s.scale_real(0.5), a_s.clone()));
            pairs.push((one.scale_real(-0.5), b_s.mul(&a_s)));
        }
        Self { pairs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub a: ComplexMatrix,
    /// `‖A − A*‖_max` of the returned matrix.
    pub self_adjoint_residual: f64,
}

/// `A₀ = Σ ρ(aᵢ)[D, ρ(bᵢ)]`, or its hermitian part when `symmetrize` is set.
pub fn potential(spec: &PotentialSpec, t: &FiniteSpectralTriple, symmetrize: bool) -> Result<Potential> {
    let h = t.dim();
    let mut a = ComplexMatrix::zeros(h, h);
    for (x, y) in &spec.pairs {
        t.algebra.ensure_conforms(x)?;
        t.algebra.ensure_conforms(y)?;
        a += &(&t.rho(x)? * &t.commutator(y)?);
    }
    if symmetrize {
        a = a.hermitian_part();
    }
    Ok(Potential {
        self_adjoint_residual: a.hermiticity_residual(),
        a,
    })
}

#[derive(Clone, Debug)]
pub struct Fluctuated {
    pub triple: FiniteSpectralTriple,
    pub note: Option<String>,
}

/// `JAJ⁻¹` for the triple's real structure, if any.
pub fn conjugate_potential(t: &FiniteSpectralTriple, a: &ComplexMatrix) -> Option<ComplexMatrix> {
    t.j.as_ref().map(|j| j.conjugate(a))
}

/// The fluctuated triple with Dirac operator `D + A + JAJ⁻¹`, or `D + A` when
/// there is no real structure.
pub fn fluctuate(t: &FiniteSpectralTriple, a: &ComplexMatrix) -> Result<Fluctuated> {
    if !a.same_shape(&t.d) {
        return Err(Error::Shape(format!(
            "potential is {}x{}, Dirac operator is {}x{}",
            a.rows(),
            a.cols(),
            t.d.rows(),
            t.d.cols()
        )));
    }
    let herm = a.hermiticity_residual();
    if herm > ABS_TOL * (1.0 + a.max_abs()) {
        return Err(Error::InvalidInput(format!(
            "potential must be self-adjoint (residual {herm:e})"
        )));
    }
    let mut d = &t.d + a;
    let note = match conjugate_potential(t, a) {
        Some(ja) => {
            d += &ja;
            None
        }
        None => Some(String::from("no real structure: returned D + A")),
    };
    Ok(Fluctuated {
        triple: t.with_dirac(d)?,
        note,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerUnitary {
    /// `U = ρ(u) J ρ(u) J⁻¹`
    pub u: ComplexMatrix,
    /// `A = ρ(u)[D, ρ(u)*]`
    pub a: ComplexMatrix,
    /// `‖U D U* − (D + A + JAJ⁻¹)‖_max`
    pub residual: f64,
    /// `‖U U* − 1‖_max`
    pub unitarity_residual: f64,
}

/// The unitary `U = uJuJ⁻¹` implementing the inner fluctuation by `A = u[D, u*]`.
pub fn inner_unitary(t: &FiniteSpectralTriple, u: &AlgebraElement) -> Result<InnerUnitary> {
    t.algebra.ensure_conforms(u)?;
    let id_alg = t.algebra.identity();
    let unit = u.mul(&u.adjoint()).matrix().max_abs_diff(id_alg.matrix());
    if unit > ABS_TOL {
        return Err(Error::Gauge(format!("u is not unitary (residual {unit:e})")));
    }
    let j =
        t.j.as_ref()
            .ok_or_else(|| Error::Missing("inner unitaries need a real structure".into()))?;
    let ru = t.rho(u)?;
    let big_u = &ru * &j.conjugate(&ru);
    let h = t.dim();
    let unitarity_residual = (&big_u * &big_u.adjoint()).max_abs_diff(&ComplexMatrix::identity(h));
    if unitarity_residual > ABS_TOL {
        return Err(Error::InternalConsistency {
            what: "uJuJ⁻¹ is not unitary".into(),
            residual: unitarity_residual,
        });
    }
    let a = &ru * &t.d.commutator(&ru.adjoint());
    let want = &(&t.d + &a) + &j.conjugate(&a);
    let residual = t.d.conjugate_by(&big_u).max_abs_diff(&want);
    Ok(InnerUnitary {
        u: big_u,
        a,
        residual,
        unitarity_residual,
    })
}

/// `‖A + JAJ⁻¹‖_max`, which vanishes for commutative triples satisfying the
/// order-one condition.
pub fn vanishing_residual(t: &FiniteSpectralTriple, a: &ComplexMatrix) -> Result<f64> {
    let ja = conjugate_potential(t, a)
        .ok_or_else(|| Error::Missing("vanishing check needs a real structure".into()))?;
    Ok((a + &ja).max_abs())
}

/// `ℂᵏ` acting on `⊕ᵢ ℂ^{nᵢ}` by `λᵢ` on the i-th summand, with a random
/// block-diagonal real symmetric `D` and `J` = complex conjugation. These are
/// the commutative triples on which the order-one condition holds.
pub fn commutative_triple(rng: &mut impl Rng, sizes: &[usize]) -> Result<FiniteSpectralTriple> {
    let alg = FiniteStarAlgebra::commutative(sizes.len())?;
    let h: usize = sizes.iter().sum();
    let rep = Representation::from_fn(&alg, h, |b| {
        let mut d = Vec::new();
        for (i, &n) in sizes.iter().enumerate() {
            d.extend(core::iter::repeat_n(b.matrix()[(i, i)], n));
        }
        ComplexMatrix::from_diag(&d)
    })?;
    let blocks: Vec<ComplexMatrix> = sizes.iter().map(|&n| random::real_symmetric(rng, n)).collect();
    let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
    FiniteSpectralTriple::new(
        alg,
        rep,
        ComplexMatrix::block_diag(&refs),
        None,
        Some(RealStructure::new(ComplexMatrix::identity(h))),
        0,
    )
}
