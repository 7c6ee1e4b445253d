use proptest::prelude::*;

use ncg_core::algebra::{characters, spectrum};
use ncg_core::clifford::{
    classification, clifford_action, generate_gammas, operator_matrix, reflection, reflection_determinant,
};
use ncg_core::connes_lott::{
    chirality, internal_algebra, product_triple, random_admissible_factor, represent_internal, FermionBasis,
};
use ncg_core::fluctuations::{commutative_triple, fluctuate, potential, vanishing_residual, PotentialSpec};
use ncg_core::forms::{FredholmModule, UniversalCalculus};
use ncg_core::matrix::{hermitian_eigen, op_norm, ComplexMatrix, C64};
use ncg_core::random::{self, rng};
use ncg_core::spectral_action::{counting, spectral_action, CutoffFunction, SpectrumModel, TorusSpectrum};
use ncg_core::triple::{check_axioms, spectral_distance, FiniteSpectralTriple, RealStructure};
use ncg_core::two_point::{GaugePair, TwoPointGeometry};
use ncg_core::{FiniteStarAlgebra, Representation, State};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// `ℂ³` on `ℂ³` with a dense random hermitian `D`.
fn c3(seed: u64) -> FiniteSpectralTriple {
    let alg = FiniteStarAlgebra::commutative(3).unwrap();
    let d = random::hermitian(&mut rng(seed), 3);
    FiniteSpectralTriple::new(alg.clone(), Representation::defining(&alg), d, None, None, 0).unwrap()
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn c_star_identity(seed: u64, n in 1usize..6) {
        let x = random::complex_matrix(&mut rng(seed), n, n);
        let nx = op_norm(&x).unwrap();
        let nxx = op_norm(&(&x.adjoint() * &x)).unwrap();
        prop_assert!((nx * nx - nxx).abs() <= 1e-10 * nxx.max(1.0));
    }

    #[test]
    fn unitary_spectrum_on_circle(seed: u64) {
        let alg = FiniteStarAlgebra::new(vec![
            ncg_core::Block { field: ncg_core::Field::Complex, n: 2 },
            ncg_core::Block { field: ncg_core::Field::Quaternion, n: 1 },
        ]).unwrap();
        let u = alg.random_unitary(&mut rng(seed));
        for z in spectrum(&alg, &u).unwrap().values {
            prop_assert!((z.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn commutative_norm_is_max_entry(seed: u64, k in 1usize..7) {
        let alg = FiniteStarAlgebra::commutative(k).unwrap();
        let a = alg.random_element(&mut rng(seed));
        let max = (0..k).map(|i| a.matrix()[(i, i)].norm()).fold(0.0, f64::max);
        prop_assert!((op_norm(a.matrix()).unwrap() - max).abs() < 1e-12);
    }

    #[test]
    fn characters_multiplicative_and_perturbations_not(seed: u64, eps in 0.01f64..1.0) {
        let alg = FiniteStarAlgebra::commutative(4).unwrap();
        let mut r = rng(seed);
        let (f, g) = (alg.random_element(&mut r), alg.random_element(&mut r));
        for chi in characters(&alg).unwrap() {
            let ev = |x| chi.evaluate(&alg, None, x).unwrap();
            prop_assert!((ev(&f.mul(&g)) - ev(&f) * ev(&g)).norm() < 1e-12);
        }
        // (1−ε)χ₀ + εχ₁ is linear but not multiplicative on e₀ = e₀²
        let e0 = alg.from_coordinates(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let mixed = |x: &ncg_core::AlgebraElement| {
            x.matrix()[(0, 0)].scale(1.0 - eps) + x.matrix()[(1, 1)].scale(eps)
        };
        prop_assert!((mixed(&e0.mul(&e0)) - mixed(&e0) * mixed(&e0)).norm() > 1e-6);
    }

    #[test]
    fn reflection_is_an_involution(v in prop::collection::vec(-3.0f64..3.0, 1..7), w in prop::collection::vec(-3.0f64..3.0, 6)) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        let w = &w[..v.len()];
        let back = reflection(&v, &reflection(&v, w).unwrap()).unwrap();
        for (a, b) in back.iter().zip(w) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        prop_assert!((reflection_determinant(&v).unwrap() + 1.0).abs() < 1e-10);
    }

    #[test]
    fn clifford_action_squares_to_minus_norm(v in prop::collection::vec(-2.0f64..2.0, 1..6)) {
        let n = v.len();
        let c = operator_matrix(n, |x| clifford_action(&v, x)).unwrap();
        let g: f64 = v.iter().map(|x| x * x).sum();
        let target = ComplexMatrix::identity(1 << n).scale_real(-g);
        prop_assert!((&c * &c).max_abs_diff(&target) < 1e-12);
    }

    #[test]
    fn d_squared_vanishes(seed: u64, degree in 0usize..4, matrices: bool) {
        let alg = if matrices {
            FiniteStarAlgebra::matrices(2).unwrap()
        } else {
            FiniteStarAlgebra::commutative(3).unwrap()
        };
        let calc = UniversalCalculus::new(alg.clone());
        let mut r = rng(seed);
        let slots = (0..=degree).map(|_| alg.random_element(&mut r)).collect();
        let w = calc.term(slots).unwrap();
        let dd = calc.d(&calc.d(&w).unwrap()).unwrap();
        prop_assert!(calc.is_zero(&dd, 0.0));
    }

    #[test]
    fn represent_is_multiplicative_on_one_forms(seed: u64) {
        let alg = FiniteStarAlgebra::matrices(2).unwrap();
        let calc = UniversalCalculus::new(alg.clone());
        let mut r = rng(seed);
        let rep = Representation::defining(&alg).amplified(2);
        let fm = FredholmModule::new(alg.clone(), rep, random::hermitian(&mut r, 4)).unwrap();
        let mut one_form = || calc.term(vec![alg.random_element(&mut r), alg.random_element(&mut r)]).unwrap();
        let (w, v) = (one_form(), one_form());
        let lhs = calc.represent(&calc.mul(&w, &v).unwrap(), &fm).unwrap();
        let rhs = &calc.represent(&w, &fm).unwrap() * &calc.represent(&v, &fm).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn scalar_shift_is_invisible(seed: u64, c in -2.0f64..2.0) {
        let alg = FiniteStarAlgebra::commutative(3).unwrap();
        let calc = UniversalCalculus::new(alg.clone());
        let mut r = rng(seed);
        let fm = FredholmModule::new(alg.clone(), Representation::defining(&alg), random::hermitian(&mut r, 3)).unwrap();
        let (a, b) = (alg.random_element(&mut r), alg.random_element(&mut r));
        let shifted = b.add(&alg.identity().scale_real(c));
        let x = calc.represent(&calc.term(vec![a.clone(), b]).unwrap(), &fm).unwrap();
        let y = calc.represent(&calc.term(vec![a, shifted]).unwrap(), &fm).unwrap();
        prop_assert!(x.max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn axioms_invariant_under_conjugation(seed: u64) {
        let mut r = rng(seed);
        let t = random_admissible_factor(2, &mut r).unwrap();
        let w = random::unitary(&mut r, t.dim());
        let rep = check_axioms(&t.conjugated_by(&w)).unwrap();
        prop_assert!(rep.all_applicable_pass());
        prop_assert!(rep.max_residual() < 1e-10);
    }

    #[test]
    fn ym_nonnegative_and_gauge_invariant(seed: u64) {
        let mut r = rng(seed);
        let m = random::complex_matrix(&mut r, 2, 3);
        let g = TwoPointGeometry::new(m).unwrap();
        let phi = random::complex(&mut r);
        let ym = g.ym_action(phi).unwrap();
        prop_assert!(ym.value >= 0.0);
        let u = GaugePair::new(random::phase(&mut r), random::phase(&mut r)).unwrap();
        let moved = g.ym_action(TwoPointGeometry::transformed_phi(phi, &u)).unwrap();
        prop_assert!((moved.value - ym.value).abs() <= 1e-10 * (1.0 + ym.value));
    }

    #[test]
    fn fluctuation_keeps_dirac_hermitian(seed: u64) {
        let mut r = rng(seed);
        let t = commutative_triple(&mut r, &[2, 2]).unwrap();
        let pairs = (0..3).map(|_| (t.algebra.random_element(&mut r), t.algebra.random_element(&mut r))).collect();
        let a = potential(&PotentialSpec::new(pairs), &t, true).unwrap().a;
        prop_assert!(fluctuate(&t, &a).unwrap().triple.d.hermiticity_residual() < 1e-12);
        prop_assert!(vanishing_residual(&t, &a).unwrap() < 1e-12);
    }

    #[test]
    fn counting_is_monotone_and_matches_hard_action(a in 0.1f64..10.0, b in 0.1f64..10.0) {
        let sm = SpectrumModel::torus(3, 5.0, 12).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(counting(&sm, lo).unwrap() <= counting(&sm, hi).unwrap());
        prop_assert_eq!(spectral_action(&sm, CutoffFunction::Hard, hi).unwrap(), counting(&sm, hi).unwrap() as f64);
    }

    #[test]
    fn smooth_action_is_sandwiched(lambda in 1.0f64..9.0, delta in 0.01f64..0.9) {
        let sm = SpectrumModel::torus(2, 4.0, 40).unwrap();
        let phi = CutoffFunction::smooth(delta).unwrap();
        let s = spectral_action(&sm, phi, lambda).unwrap();
        prop_assert!(counting(&sm, lambda * (1.0 - delta)).unwrap() as f64 <= s + 1e-9);
        prop_assert!(s <= counting(&sm, lambda * (1.0 + delta)).unwrap() as f64 + 1e-9);
        let s2 = spectral_action(&sm, phi, lambda * 1.05).unwrap();
        prop_assert!(s <= s2 + 1e-9);
    }

    #[test]
    fn torus_total_count(n in 1usize..5, k in 1u64..5) {
        let t = TorusSpectrum::new(n, 1.0, k).unwrap();
        let points = (2 * k as u128 + 1).pow(n as u32);
        prop_assert_eq!(t.total(), (1u128 << (n / 2)) * points);
    }

    #[test]
    fn internal_representation_and_chirality(seed: u64) {
        let b = FermionBasis::new(1).unwrap();
        let alg = internal_algebra();
        let mut r = rng(seed);
        let (x, y) = (alg.random_element(&mut r), alg.random_element(&mut r));
        let (rx, ry) = (represent_internal(&b, x.matrix()), represent_internal(&b, y.matrix()));
        prop_assert!(represent_internal(&b, x.mul(&y).matrix()).max_abs_diff(&(&rx * &ry)) < 1e-12);
        prop_assert!(chirality(&b).commutator(&rx).max_abs() == 0.0);
    }

    #[test]
    fn product_cross_terms_cancel(seed: u64) {
        let mut r = rng(seed);
        let t1 = random_admissible_factor(1, &mut r).unwrap();
        let t2 = random_admissible_factor(2, &mut r).unwrap();
        let p = product_triple(&t1, &t2).unwrap();
        let a = t1.d.kron(&ComplexMatrix::identity(t2.dim()));
        let b = t1.gamma.as_ref().unwrap().kron(&t2.d);
        prop_assert!(a.anticommutator(&b).max_abs() < 1e-12);
        prop_assert!(p.triple.d.max_abs_diff(&(&a + &b)) == 0.0);
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn gammas_anticommute(n in 1usize..=12) {
        let g = generate_gammas(n).unwrap();
        prop_assert!(g.anticommutator_residual() < 1e-12);
        prop_assert_eq!(g.size(), 1 << (n / 2));
        prop_assert_eq!(classification(n).real_dim(), Some(1u128 << n));
    }

    #[test]
    fn distance_is_a_metric(seed: u64) {
        let t = c3(seed);
        let d = |i: usize, j: usize| spectral_distance(&t, &State::Character(i), &State::Character(j)).unwrap();
        let (d01, d12, d02) = (d(0, 1), d(1, 2), d(0, 2));
        prop_assert_eq!(d01.value, d(1, 0).value);
        prop_assert_eq!(d(1, 1).value, 0.0);
        let tol = 2e-8 * (d01.value + d12.value);
        prop_assert!(d02.value <= d01.value + d12.value + tol);
        prop_assert!(d01.value <= d02.value + d12.value + tol);
    }

    #[test]
    fn distance_scales_inversely(seed: u64, c in 0.2f64..5.0) {
        let t = c3(seed);
        let scaled = t.with_dirac(t.d.scale_real(c)).unwrap();
        let s = (State::Character(0), State::Character(2));
        let a = spectral_distance(&t, &s.0, &s.1).unwrap().value;
        let b = spectral_distance(&scaled, &s.0, &s.1).unwrap().value;
        prop_assert!((b * c / a - 1.0).abs() < 1e-7);
    }

    #[test]
    fn witness_is_feasible(seed: u64) {
        let t = c3(seed);
        let res = spectral_distance(&t, &State::Character(0), &State::Character(1)).unwrap();
        let f = res.witness.unwrap();
        let norm = op_norm(&t.commutator(&f).unwrap()).unwrap();
        prop_assert!(norm <= 1.0 + 1e-9);
        let gap = (f.matrix()[(0, 0)] - f.matrix()[(1, 1)]).norm();
        prop_assert!(gap <= res.value + 1e-9);
    }

    #[test]
    fn inner_unitary_preserves_spectrum(seed: u64) {
        let mut r = rng(seed);
        let alg = FiniteStarAlgebra::matrices(2).unwrap();
        let rep = Representation::from_fn(&alg, 4, |b| b.matrix().kron(&ComplexMatrix::identity(2))).unwrap();
        let mut swap = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(i, j)] = C64::new(1.0, 0.0);
        }
        let k = random::hermitian(&mut r, 2);
        let id = ComplexMatrix::identity(2);
        let d = &k.kron(&id) + &id.kron(&k.conj());
        let t = FiniteSpectralTriple::new(alg.clone(), rep, d, None, Some(RealStructure::new(swap)), 0).unwrap();
        let u = alg.random_unitary(&mut r);
        let iu = ncg_core::fluctuations::inner_unitary(&t, &u).unwrap();
        let moved = fluctuate(&t, &iu.a).unwrap().triple.d;
        let (x, y) = (hermitian_eigen(&t.d).unwrap().values, hermitian_eigen(&moved).unwrap().values);
        for (a, b) in x.iter().zip(&y) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
