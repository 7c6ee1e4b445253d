//! The two-point space: `ℂ ⊕ ℂ` acting on `ℋ_a ⊕ ℋ_b` with Dirac operator
//! `D = [[0, M*], [M, 0]]`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, FiniteStarAlgebra, State};
use crate::error::{Error, Result};
use crate::forms::{FredholmModule, UniversalCalculus, UniversalForm};
use crate::matrix::{inner, ComplexMatrix, ABS_TOL, C64, ONE};
use crate::representation::Representation;
use crate::triple::{spectral_distance, DistanceResult, FiniteSpectralTriple};

/// Agreement required between the closed forms and the operator computations.
pub const DUAL_PATH_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct TwoPointGeometry {
    m: ComplexMatrix,
    triple: FiniteSpectralTriple,
}

/// A pair `(u₁, u₂)` of phases acting as `diag(u₁·1_a, u₂·1_b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugePair {
    pub u1: C64,
    pub u2: C64,
}

impl GaugePair {
    pub fn new(u1: C64, u2: C64) -> Result<Self> {
        for (name, u) in [("u1", u1), ("u2", u2)] {
            if (u.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Gauge(format!(
                    "{name} has modulus {}, expected 1",
                    u.norm()
                )));
            }
        }
        Ok(Self { u1, u2 })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curvature {
    /// `−(φ + φ̄ + |φ|²)·diag(−M*M, −MM*)`
    pub theta: ComplexMatrix,
    /// `ρ(dV) + V²` with `dV` taken in the universal calculus.
    pub operational: ComplexMatrix,
    /// `‖θ − (ρ(dV) + V²)‖_max`
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YangMills {
    /// `2(|φ+1|² − 1)² Tr((M*M)²)`
    pub value: f64,
    /// `Tr(θ²)` from the operator curvature.
    pub operational: f64,
    pub residual: f64,
}

impl TwoPointGeometry {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.ensure_finite()?;
        if m.rows() == 0 || m.cols() == 0 {
            return Err(Error::Shape("coupling matrix must be nonempty".into()));
        }
        if m.max_abs() == 0.0 {
            return Err(Error::DegenerateGeometry(
                "M = 0 disconnects the two points; their distance is infinite".into(),
            ));
        }
        let (na, nb) = (m.cols(), m.rows());
        let alg = FiniteStarAlgebra::commutative(2)?;
        let rep = Representation::from_fn(&alg, na + nb, |b| {
            let (fa, fb) = (b.matrix()[(0, 0)], b.matrix()[(1, 1)]);
            let mut diag = alloc::vec![fa; na];
            diag.extend(core::iter::repeat_n(fb, nb));
            ComplexMatrix::from_diag(&diag)
        })?;
        let d = dirac(&m, ONE);
        let mut g = alloc::vec![1.0; na];
        g.extend(core::iter::repeat_n(-1.0, nb));
        let triple =
            FiniteSpectralTriple::new(alg, rep, d, Some(ComplexMatrix::from_real_diag(&g)), None, 0)?;
        Ok(Self { m, triple })
    }

    pub fn m(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn triple(&self) -> &FiniteSpectralTriple {
        &self.triple
    }

    pub fn algebra(&self) -> &FiniteStarAlgebra {
        &self.triple.algebra
    }

    /// Projector onto point `a`: `e(a) = 1`, `e(b) = 0`.
    pub fn e(&self) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(ComplexMatrix::from_real_diag(&[1.0, 0.0]))
    }

    pub fn one_minus_e(&self) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(ComplexMatrix::from_real_diag(&[0.0, 1.0]))
    }

    /// The function with values `f(a)`, `f(b)`.
    pub fn function(&self, fa: C64, fb: C64) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(ComplexMatrix::from_diag(&[fa, fb]))
    }

    pub fn fredholm_module(&self) -> Result<FredholmModule> {
        FredholmModule::new(
            self.triple.algebra.clone(),
            self.triple.rep.clone(),
            self.triple.d.clone(),
        )
    }

    pub fn distance(&self) -> Result<DistanceResult> {
        spectral_distance(&self.triple, &State::Character(0), &State::Character(1))
    }

    /// `ρ(λe·de + μ(1−e)·d(1−e)) = [[0, −λM*], [−μM, 0]]`
    pub fn one_form(&self, lambda: C64, mu: C64) -> ComplexMatrix {
        let ms = self.m.adjoint();
        ComplexMatrix::from_blocks(
            &ComplexMatrix::zeros(ms.rows(), ms.rows()),
            &ms.scale(-lambda),
            &self.m.scale(-mu),
            &ComplexMatrix::zeros(self.m.rows(), self.m.rows()),
        )
        .expect("block shapes agree")
    }

    /// The universal 1-form `−φ̄ e de + φ (1−e) de`.
    pub fn vector_potential_form(&self, phi: C64) -> Result<UniversalForm> {
        let calc = UniversalCalculus::new(self.algebra().clone());
        let e = self.e();
        let t1 = calc.term(alloc::vec![e.scale(-phi.conj()), e.clone()])?;
        let t2 = calc.term(alloc::vec![self.one_minus_e().scale(phi), e])?;
        calc.add(&t1, &t2)
    }

    /// `V = [[0, φ̄M*], [φM, 0]]`
    pub fn vector_potential(&self, phi: C64) -> ComplexMatrix {
        dirac(&self.m, phi)
    }

    /// `D + V = [[0, (1+φ̄)M*], [(1+φ)M, 0]]`
    pub fn dirac_plus_potential(&self, phi: C64) -> ComplexMatrix {
        dirac(&self.m, ONE + phi)
    }

    /// Curvature `θ = dV + V²`, from the closed form and checked against the
    /// representation of the universal `dV` plus the operator square.
    pub fn curvature(&self, phi: C64) -> Result<Curvature> {
        let theta = self.curvature_closed_form(phi);
        let calc = UniversalCalculus::new(self.algebra().clone());
        let dv = calc.d(&self.vector_potential_form(phi)?)?;
        let v = self.vector_potential(phi);
        let operational = &calc.represent(&dv, &self.fredholm_module()?)? + &(&v * &v);
        let residual = theta.max_abs_diff(&operational);
        let scale = 1.0 + theta.max_abs();
        if residual > DUAL_PATH_TOL * scale {
            return Err(Error::InternalConsistency {
                what: "two-point curvature closed form vs operator computation".into(),
                residual,
            });
        }
        Ok(Curvature {
            theta,
            operational,
            residual,
        })
    }

    fn curvature_closed_form(&self, phi: C64) -> ComplexMatrix {
        let c = -(phi + phi.conj() + phi * phi.conj());
        let msm = &self.m.adjoint() * &self.m;
        let mms = &self.m * &self.m.adjoint();
        ComplexMatrix::block_diag(&[&msm.scale(-c), &mms.scale(-c)])
    }

    /// `YM = Tr(θ²) = 2(|φ+1|² − 1)² Tr((M*M)²)`.
    ///
    /// The closed form is returned as the value, so it vanishes exactly whenever
    /// `|φ+1|²` rounds to 1.
    pub fn ym_action(&self, phi: C64) -> Result<YangMills> {
        let msm = &self.m.adjoint() * &self.m;
        let tr4: f64 = msm.data().iter().map(|z| z.norm_sqr()).sum();
        let s = (phi + ONE).norm_sqr() - 1.0;
        let value = 2.0 * s * s * tr4;
        let theta = self.curvature(phi)?.operational;
        let operational = (&theta * &theta).trace().re;
        let residual = (value - operational).abs();
        if residual > DUAL_PATH_TOL * (1.0 + value.abs()) {
            return Err(Error::InternalConsistency {
                what: "Yang-Mills closed form vs Tr(θ²)".into(),
                residual,
            });
        }
        Ok(YangMills {
            value,
            operational,
            residual,
        })
    }

    fn gauge_matrix(&self, u: &GaugePair) -> ComplexMatrix {
        let mut d = alloc::vec![u.u1; self.m.cols()];
        d.extend(core::iter::repeat_n(u.u2, self.m.rows()));
        ComplexMatrix::from_diag(&d)
    }

    /// `V ↦ uVu* + u[D, u*]`
    pub fn gauge_transform(&self, v: &ComplexMatrix, u: &GaugePair) -> Result<ComplexMatrix> {
        let u = GaugePair::new(u.u1, u.u2)?;
        if !v.same_shape(&self.triple.d) {
            return Err(Error::Shape(format!(
                "potential is {}x{}, expected {}x{}",
                v.rows(),
                v.cols(),
                self.triple.d.rows(),
                self.triple.d.cols()
            )));
        }
        let um = self.gauge_matrix(&u);
        let inhom = &um * &self.triple.d.commutator(&um.adjoint());
        Ok(&v.conjugate_by(&um) + &inhom)
    }

    /// Parameter of the transformed potential: `φ′ = u₂(1+φ)ū₁ − 1`.
    pub fn transformed_phi(phi: C64, u: &GaugePair) -> C64 {
        u.u2 * (ONE + phi) * u.u1.conj() - ONE
    }

    /// `⟨ψ, (D + V)ψ⟩`
    pub fn fermionic_action(&self, phi: C64, psi: &[C64]) -> Result<f64> {
        let n = self.triple.dim();
        if psi.len() != n {
            return Err(Error::Shape(format!("ψ has length {}, expected {n}", psi.len())));
        }
        let dv = self.dirac_plus_potential(phi);
        let val = inner(psi, &dv.mul_vec(psi));
        debug_assert!(val.im.abs() <= ABS_TOL * (1.0 + val.re.abs()));
        Ok(val.re)
    }

    /// Eigenvalues of `D + V`, ascending.
    pub fn spectrum(&self, phi: C64) -> Result<Vec<f64>> {
        Ok(crate::matrix::hermitian_eigen(&self.dirac_plus_potential(phi))?.values)
    }
}

/// `[[0, c̄M*], [cM, 0]]`
fn dirac(m: &ComplexMatrix, c: C64) -> ComplexMatrix {
    let (na, nb) = (m.cols(), m.rows());
    ComplexMatrix::from_blocks(
        &ComplexMatrix::zeros(na, na),
        &m.adjoint().scale(c.conj()),
        &m.scale(c),
        &ComplexMatrix::zeros(nb, nb),
    )
    .expect("block shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{op_norm, I, ZERO};
    use crate::random::{self, rng};
    use crate::triple::{check_axioms, commutator_norm};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn scalar(x: f64) -> ComplexMatrix {
        ComplexMatrix::scalar(c(x, 0.0))
    }

    #[test]
    fn unit_coupling_triple() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        let d = &g.triple().d;
        assert_eq!(d[(0, 1)], ONE);
        assert_eq!(d[(1, 0)], ONE);
        assert!(check_axioms(g.triple()).unwrap().all_applicable_pass());
    }

    #[test]
    fn zero_coupling_is_degenerate() {
        assert!(matches!(
            TwoPointGeometry::new(ComplexMatrix::zeros(2, 1)),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn distances_are_inverse_norm() {
        let g = TwoPointGeometry::new(scalar(2.0)).unwrap();
        assert!((g.distance().unwrap().value - 0.5).abs() < 1e-12);
        let g = TwoPointGeometry::new(ComplexMatrix::from_real_diag(&[1.0, 3.0])).unwrap();
        assert!((g.distance().unwrap().value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn commutator_norm_is_jump_times_norm() {
        let mut r = rng(41);
        let m = random::complex_matrix(&mut r, 3, 2);
        let g = TwoPointGeometry::new(m.clone()).unwrap();
        let f = g.function(c(0.3, 0.0), c(-1.2, 0.0));
        let want = 1.5 * op_norm(&m).unwrap();
        assert!((commutator_norm(g.triple(), &f).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn one_form_matches_universal_forms() {
        let mut r = rng(42);
        let g = TwoPointGeometry::new(random::complex_matrix(&mut r, 2, 3)).unwrap();
        let (lambda, mu) = (random::complex(&mut r), random::complex(&mut r));
        let calc = UniversalCalculus::new(g.algebra().clone());
        let e = g.e();
        let ome = g.one_minus_e();
        let w = calc
            .add(
                &calc.term(alloc::vec![e.scale(lambda), e.clone()]).unwrap(),
                &calc.term(alloc::vec![ome.scale(mu), ome.clone()]).unwrap(),
            )
            .unwrap();
        let rep = calc.represent(&w, &g.fredholm_module().unwrap()).unwrap();
        assert!(rep.max_abs_diff(&g.one_form(lambda, mu)) < 1e-14);
    }

    #[test]
    fn one_form_unit_example() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        let w = g.one_form(ONE, ZERO);
        assert_eq!(w[(0, 1)], -ONE);
        assert_eq!(w[(1, 0)], ZERO);
    }

    #[test]
    fn vector_potential_examples() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        let v = g.vector_potential(I);
        assert_eq!(v[(0, 1)], -I);
        assert_eq!(v[(1, 0)], I);
        assert_eq!(v.hermiticity_residual(), 0.0);
        assert_eq!(g.vector_potential(ZERO).max_abs(), 0.0);
        let form = g.vector_potential_form(c(0.4, -0.7)).unwrap();
        let rep = UniversalCalculus::new(g.algebra().clone())
            .represent(&form, &g.fredholm_module().unwrap())
            .unwrap();
        assert!(rep.max_abs_diff(&g.vector_potential(c(0.4, -0.7))) < 1e-15);
    }

    #[test]
    fn curvature_examples() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        assert_eq!(g.curvature(ZERO).unwrap().theta.max_abs(), 0.0);
        let th = g.curvature(c(-1.0, 0.0)).unwrap().theta;
        assert_eq!(th, ComplexMatrix::from_real_diag(&[-1.0, -1.0]));
        let phi = c(0.5, 3f64.sqrt() / 2.0) - ONE;
        assert!(g.curvature(phi).unwrap().theta.max_abs() < 1e-15);
    }

    #[test]
    fn ym_examples() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        assert_eq!(g.ym_action(ZERO).unwrap().value, 0.0);
        assert_eq!(g.ym_action(c(-1.0, 0.0)).unwrap().value, 2.0);
        assert_eq!(g.ym_action(c(1.0, 0.0)).unwrap().value, 18.0);
    }

    #[test]
    fn gauge_examples() {
        let mut r = rng(43);
        let g = TwoPointGeometry::new(random::complex_matrix(&mut r, 2, 2)).unwrap();
        let v = g.vector_potential(c(0.2, 0.9));
        let same = g.gauge_transform(&v, &GaugePair::new(ONE, ONE).unwrap()).unwrap();
        assert!(same.max_abs_diff(&v) < 1e-15);

        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        let zero = ComplexMatrix::zeros(2, 2);
        let u = GaugePair::new(ONE, -ONE).unwrap();
        let vp = g.gauge_transform(&zero, &u).unwrap();
        assert_eq!(vp, g.vector_potential(c(-2.0, 0.0)));
        assert!(GaugePair::new(c(1.1, 0.0), ONE).is_err());
    }

    #[test]
    fn transformed_phi_matches_matrix() {
        let mut r = rng(44);
        for _ in 0..20 {
            let g = TwoPointGeometry::new(random::complex_matrix(&mut r, 2, 3)).unwrap();
            let phi = random::complex(&mut r);
            let u = GaugePair::new(random::phase(&mut r), random::phase(&mut r)).unwrap();
            let vp = g.gauge_transform(&g.vector_potential(phi), &u).unwrap();
            let want = g.vector_potential(TwoPointGeometry::transformed_phi(phi, &u));
            assert!(vp.max_abs_diff(&want) < 1e-13);
        }
    }

    #[test]
    fn fermionic_examples() {
        let g = TwoPointGeometry::new(scalar(1.0)).unwrap();
        let s = 0.5f64.sqrt();
        let psi = [c(s, 0.0), c(s, 0.0)];
        assert!((g.fermionic_action(ZERO, &psi).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(g.fermionic_action(c(-1.0, 0.0), &psi).unwrap(), 0.0);
        assert_eq!(g.fermionic_action(ZERO, &[ZERO, ZERO]).unwrap(), 0.0);
        assert!(g.fermionic_action(ZERO, &[ONE]).is_err());
    }
}
