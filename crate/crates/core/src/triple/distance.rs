//! Connes distance `sup { |s₁(f) − s₂(f)| : f = f*, ‖[D, ρ(f)]‖ ≤ 1 }`.
//!
//! With `ℓ(f) = s₁(f) − s₂(f)` the supremum equals `1 / min { N(f) : ℓ(f) = 1 }`
//! where `N(f) = ‖[D, ρ(f)]‖` is a convex seminorm. Directions on which `N`
//! vanishes are split off first: if one of them separates the states the
//! distance is infinite, otherwise they are dropped. The remaining problem is
//! minimised by subgradient descent from several starts, then refined by an
//! ellipsoid method (bisection in one dimension) that also yields a certified
//! lower bound on the minimum.

use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math in no_std
use num_traits::Float;
use rand::Rng;

use crate::algebra::{AlgebraElement, State};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

use crate::matrix::{hermitian_eigen, ComplexMatrix, C64, I};
use crate::random::{self, rng};

use super::FiniteSpectralTriple;

const KERNEL_REL: f64 = 1e-9;
const SEPARATION_TOL: f64 = 1e-9;
const SEEDS: usize = 8;
const SUBGRADIENT_STEPS: usize = 300;
const REL_GAP: f64 = 1e-9;
const MAX_REFINE_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceResult {
    /// Attained lower estimate `|s₁(f) − s₂(f)|` for the witness `f`.
    pub value: f64,
    /// Certified upper bound on the true supremum.
    pub upper_bound: f64,
    /// Self-adjoint `f` with `‖[D, ρ(f)]‖ ≤ 1` attaining `value`, or, when the
    /// distance is infinite, a separating `f` with `[D, ρ(f)] = 0`.
    pub witness: Option<AlgebraElement>,
}

impl DistanceResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            upper_bound: 0.0,
            witness: None,
        }
    }
}

struct Problem {
    h0: ComplexMatrix,
    dirs: Vec<ComplexMatrix>,
}

impl Problem {
    fn operator(&self, t: &[f64]) -> ComplexMatrix {
        let mut m = self.h0.clone();
        for (c, e) in t.iter().zip(&self.dirs) {
            if *c != 0.0 {
                m.axpy(C64::new(*c, 0.0), e);
            }
        }
        m
    }

    /// `N(t)` and a subgradient.
    fn eval(&self, t: &[f64]) -> Result<(f64, Vec<f64>)> {
        let e = hermitian_eigen(&self.operator(t))?;
        let (lo, hi) = (e.values[0], e.values[e.values.len() - 1]);
        let (k, sign) = if hi.abs() >= lo.abs() {
            (e.values.len() - 1, 1.0)
        } else {
            (0, -1.0)
        };
        let v = e.vector(k);
        let g = self
            .dirs
            .iter()
            .map(|m| sign * crate::matrix::inner(&v, &m.mul_vec(&v)).re)
            .collect();
        Ok((hi.abs().max(lo.abs()), g))
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Orthonormal basis of the complement of a unit vector `n` in `ℝʳ`.
fn complement_basis(n: &[f64]) -> Vec<Vec<f64>> {
    let r = n.len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(r.saturating_sub(1));
    for k in 0..r {
        if out.len() + 1 == r {
            break;
        }
        let mut v = alloc::vec![0.0; r];
        v[k] = 1.0;
        for _ in 0..2 {
            let p = dot(n, &v);
            for (vi, ni) in v.iter_mut().zip(n) {
                *vi -= p * ni;
            }
            for q in &out {
                let p = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let l = norm(&v);
        if l > 1e-6 {
            out.push(v.into_iter().map(|x| x / l).collect());
        }
    }
    out
}

/// Connes spectral distance between two states.
pub fn spectral_distance(t: &FiniteSpectralTriple, s1: &State, s2: &State) -> Result<DistanceResult> {
    s1.validate(&t.algebra, Some(&t.rep))?;
    s2.validate(&t.algebra, Some(&t.rep))?;
    let basis = t.algebra.self_adjoint_basis();
    let m0 = basis.len();
    let mut ell = Vec::with_capacity(m0);
    let mut cs = Vec::with_capacity(m0);
    for b in &basis {
        let diff = s1.evaluate(&t.algebra, Some(&t.rep), b)? - s2.evaluate(&t.algebra, Some(&t.rep), b)?;
        ell.push(diff.re);
        cs.push(t.commutator(b)?.scale(I));
    }
    let ell_norm = norm(&ell);
    if ell_norm == 0.0 {
        return Ok(DistanceResult::zero());
    }
    // the sign of ℓ does not change the minimum; fixing it makes d symmetric bit for bit
    if let Some(first) = ell.iter().find(|x| x.abs() > 1e-12 * ell_norm) {
        if *first < 0.0 {
            ell.iter_mut().for_each(|x| *x = -*x);
        }
    }

    let (sigma, vecs) = right_singular(&cs);
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let cut = KERNEL_REL * sigma_max;
    let mut range = Vec::new();
    let mut mu_min = f64::INFINITY;
    for (s, z) in sigma.iter().zip(&vecs) {
        if *s <= cut {
            if dot(&ell, z).abs() > SEPARATION_TOL * ell_norm {
                let f = combine(&basis, z);
                return Ok(DistanceResult {
                    value: f64::INFINITY,
                    upper_bound: f64::INFINITY,
                    witness: Some(f),
                });
            }
        } else {
            mu_min = mu_min.min(s * s);
            range.push(z.clone());
        }
    }

    // restricted problem in coordinates y of span(range)
    let ell_r: Vec<f64> = range.iter().map(|z| dot(&ell, z)).collect();
    let lr = norm(&ell_r);
    if lr <= SEPARATION_TOL * ell_norm {
        return Ok(DistanceResult::zero());
    }
    let c_r: Vec<ComplexMatrix> = range.iter().map(|z| combine_matrices(&cs, z)).collect();
    let f0: Vec<f64> = ell_r.iter().map(|x| x / (lr * lr)).collect();
    let unit: Vec<f64> = ell_r.iter().map(|x| x / lr).collect();
    let comp = complement_basis(&unit);
    let problem = Problem {
        h0: combine_matrices(&c_r, &f0),
        dirs: comp.iter().map(|e| combine_matrices(&c_r, e)).collect(),
    };
    let m = problem.dirs.len();

    let (n0, _) = problem.eval(&alloc::vec![0.0; m])?;
    let (best_t, n_best, n_lower) = if m == 0 {
        (Vec::new(), n0, n0)
    } else {
        let h = t.dim() as f64;
        let radius = 1.01 * h.sqrt() * n0 / mu_min.sqrt();
        minimise(&problem, radius)?
    };
    if n_best <= 0.0 {
        return Err(Error::InternalConsistency {
            what: "distance solver reached a zero commutator off the kernel".into(),
            residual: n_best,
        });
    }

    // y = f0 + Σ tᵢ eᵢ, then back to self-adjoint basis coordinates
    let mut y = f0.clone();
    for (ti, e) in best_t.iter().zip(&comp) {
        for (yi, ei) in y.iter_mut().zip(e) {
            *yi += ti * ei;
        }
    }
    let mut x = alloc::vec![0.0; m0];
    for (yj, z) in y.iter().zip(&range) {
        for (xi, zi) in x.iter_mut().zip(z) {
            *xi += yj * zi;
        }
    }
    let witness = combine(&basis, &x).scale_real(1.0 / n_best);
    Ok(DistanceResult {
        value: 1.0 / n_best,
        upper_bound: 1.0 / n_lower.max(f64::MIN_POSITIVE),
        witness: Some(witness),
    })
}

/// Singular values and right singular vectors of the real-linear map
/// `x ↦ Σ xₖ Cₖ`, one pair per coordinate.
fn right_singular(cs: &[ComplexMatrix]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m0 = cs.len();
    let len = 2 * cs[0].data().len();
    let rows = len.max(m0);
    let a = DMatrix::<f64>::from_fn(rows, m0, |i, k| {
        if i >= len {
            return 0.0;
        }
        let z = cs[k].data()[i / 2];
        if i % 2 == 0 {
            z.re
        } else {
            z.im
        }
    });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let values = svd.singular_values.iter().copied().collect();
    let vectors = (0..m0).map(|k| (0..m0).map(|j| vt[(k, j)]).collect()).collect();
    (values, vectors)
}

fn combine(basis: &[AlgebraElement], x: &[f64]) -> AlgebraElement {
    let mats: Vec<ComplexMatrix> = basis.iter().map(|b| b.matrix().clone()).collect();
    AlgebraElement::from_matrix_unchecked(combine_matrices(&mats, x))
}

fn combine_matrices(mats: &[ComplexMatrix], x: &[f64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(mats[0].rows(), mats[0].cols());
    for (c, m) in x.iter().zip(mats) {
        out.axpy(C64::new(*c, 0.0), m);
    }
    out
}

/// Returns `(t_best, N(t_best), certified lower bound on min N)`. The minimiser
/// is known to lie within `radius` of the origin.
fn minimise(p: &Problem, radius: f64) -> Result<(Vec<f64>, f64, f64)> {
    let m = p.dirs.len();
    let mut r = rng(0x0d15_7a9c);
    let mut best_t = alloc::vec![0.0; m];
    let (mut best_n, _) = p.eval(&best_t)?;

    for seed in 0..SEEDS {
        let mut t: Vec<f64> = if seed == 0 {
            alloc::vec![0.0; m]
        } else {
            (0..m).map(|_| random::unit(&mut r) * radius * 0.5).collect()
        };
        let step0 = radius * 0.25;
        for k in 0..SUBGRADIENT_STEPS {
            let (n, g) = p.eval(&t)?;
            if n < best_n {
                best_n = n;
                best_t = t.clone();
            }
            let gn = norm(&g);
            if gn == 0.0 {
                break;
            }
            let step = step0 / ((k + 1) as f64).sqrt() / gn;
            for (ti, gi) in t.iter_mut().zip(&g) {
                *ti -= step * gi;
            }
            // stay inside the ball known to contain the minimiser
            let tn = norm(&t);
            if tn > radius {
                t.iter_mut().for_each(|x| *x *= radius / tn);
            }
        }
        let _ = r.gen::<u32>();
    }

    let ball = radius + norm(&best_t);
    if m == 1 {
        bisect(p, best_t, best_n, ball)
    } else {
        ellipsoid(p, best_t, best_n, ball)
    }
}

fn gap_closed(upper: f64, lower: f64) -> bool {
    upper - lower <= REL_GAP * upper
}

fn bisect(p: &Problem, mut best_t: Vec<f64>, mut best_n: f64, half: f64) -> Result<(Vec<f64>, f64, f64)> {
    let (mut a, mut b) = (best_t[0] - half, best_t[0] + half);
    let mut lower = 0.0f64;
    for _ in 0..MAX_REFINE_STEPS {
        let c = 0.5 * (a + b);
        let (n, g) = p.eval(&[c])?;
        if n < best_n {
            best_n = n;
            best_t = alloc::vec![c];
        }
        lower = lower.max(n - g[0].abs() * 0.5 * (b - a));
        if gap_closed(best_n, lower) || b - a < 1e-15 * (1.0 + c.abs()) {
            break;
        }
        if g[0] > 0.0 {
            b = c;
        } else if g[0] < 0.0 {
            a = c;
        } else {
            lower = n;
            break;
        }
    }
    Ok((best_t, best_n, lower.min(best_n)))
}

fn ellipsoid(
    p: &Problem,
    mut best_t: Vec<f64>,
    mut best_n: f64,
    radius: f64,
) -> Result<(Vec<f64>, f64, f64)> {
    let m = p.dirs.len();
    let mf = m as f64;
    let mut c = best_t.clone();
    let mut pm = alloc::vec![0.0; m * m];
    for i in 0..m {
        pm[i * m + i] = radius * radius;
    }
    let mut lower = 0.0f64;
    for _ in 0..MAX_REFINE_STEPS {
        let (n, g) = p.eval(&c)?;
        if n < best_n {
            best_n = n;
            best_t = c.clone();
        }
        let pg: Vec<f64> = (0..m).map(|i| dot(&pm[i * m..(i + 1) * m], &g)).collect();
        let gpg = dot(&g, &pg).max(0.0);
        if gpg == 0.0 {
            lower = n;
            break;
        }
        let s = gpg.sqrt();
        lower = lower.max(n - s);
        if gap_closed(best_n, lower) {
            break;
        }
        let b: Vec<f64> = pg.iter().map(|x| x / s).collect();
        for (ci, bi) in c.iter_mut().zip(&b) {
            *ci -= bi / (mf + 1.0);
        }
        let f = mf * mf / (mf * mf - 1.0);
        for i in 0..m {
            for j in 0..m {
                pm[i * m + j] = f * (pm[i * m + j] - 2.0 / (mf + 1.0) * b[i] * b[j]);
            }
        }
        for i in 0..m {
            for j in 0..i {
                let s = 0.5 * (pm[i * m + j] + pm[j * m + i]);
                pm[i * m + j] = s;
                pm[j * m + i] = s;
            }
        }
    }
    Ok((best_t, best_n, lower.min(best_n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteStarAlgebra;
    use crate::matrix::{op_norm, ZERO};
    use crate::representation::Representation;

    fn c3_triple(d: ComplexMatrix) -> FiniteSpectralTriple {
        let alg = FiniteStarAlgebra::commutative(3).unwrap();
        FiniteSpectralTriple::new(alg.clone(), Representation::defining(&alg), d, None, None, 0).unwrap()
    }

    fn tridiagonal(a: f64, b: f64) -> ComplexMatrix {
        let mut d = ComplexMatrix::zeros(3, 3);
        d[(0, 1)] = C64::new(a, 0.0);
        d[(1, 0)] = C64::new(a, 0.0);
        d[(1, 2)] = C64::new(b, 0.0);
        d[(2, 1)] = C64::new(b, 0.0);
        d
    }

    /// Fixes f₁ = 0 and fᵢ − fⱼ = 1, leaving one free coordinate s. The norm
    /// N(s) is convex, so a zooming grid finds its minimum; d = 1 / min N.
    fn grid_oracle(t: &FiniteSpectralTriple, i: usize, j: usize, bound: f64) -> f64 {
        let point = |s: f64| -> [f64; 3] {
            match (i, j) {
                (0, 1) => [0.0, -1.0, s],
                (0, 2) => [0.0, s, -1.0],
                (1, 2) => [0.0, s, s - 1.0],
                _ => unreachable!(),
            }
        };
        let n = |s: f64| op_norm(&t.d.commutator(&ComplexMatrix::from_real_diag(&point(s)))).unwrap();
        let (mut c, mut h) = (0.0, bound);
        let mut best = n(c);
        for _ in 0..60 {
            let steps = 200;
            let mut bc = c;
            for a in 0..=steps {
                let s = c - h + 2.0 * h * a as f64 / steps as f64;
                let v = n(s);
                if v < best {
                    best = v;
                    bc = s;
                }
            }
            c = bc;
            h *= 0.1;
        }
        1.0 / best
    }

    #[test]
    fn c3_tridiagonal_matches_grid() {
        let t = c3_triple(tridiagonal(1.0, 2.0));
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let d = spectral_distance(&t, &State::Character(i), &State::Character(j)).unwrap();
            let oracle = grid_oracle(&t, i, j, 4.0);
            assert!((d.value - oracle).abs() < 1e-4, "{i}{j}: {} vs {oracle}", d.value);
            assert!(d.upper_bound >= d.value);
            assert!((d.upper_bound - d.value) <= 1e-8 * d.value);
        }
    }

    #[test]
    fn same_state_is_zero() {
        let t = c3_triple(tridiagonal(1.0, 2.0));
        let d = spectral_distance(&t, &State::Character(1), &State::Character(1)).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn disconnected_points_are_infinitely_far() {
        let mut d = tridiagonal(1.0, 0.0);
        d[(2, 2)] = C64::new(3.0, 0.0);
        let t = c3_triple(d);
        let r = spectral_distance(&t, &State::Character(0), &State::Character(2)).unwrap();
        assert!(r.value.is_infinite());
        let r = spectral_distance(&t, &State::Character(0), &State::Character(1)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn symmetric_and_scaling() {
        let t = c3_triple(tridiagonal(0.7, 1.3));
        let a = spectral_distance(&t, &State::Character(0), &State::Character(2)).unwrap();
        let b = spectral_distance(&t, &State::Character(2), &State::Character(0)).unwrap();
        assert_eq!(a.value, b.value);
        let t2 = t.with_dirac(t.d.scale_real(2.5)).unwrap();
        let c = spectral_distance(&t2, &State::Character(0), &State::Character(2)).unwrap();
        assert!(
            (c.value * 2.5 - a.value).abs() < 1e-7 * a.value,
            "{} {}",
            c.value * 2.5,
            a.value
        );
    }

    #[test]
    fn witness_is_feasible() {
        let t = c3_triple(tridiagonal(1.0, 0.5));
        let r = spectral_distance(&t, &State::Character(0), &State::Character(2)).unwrap();
        let f = r.witness.unwrap();
        let n = op_norm(&t.commutator(&f).unwrap()).unwrap();
        assert!(n <= 1.0 + 1e-9);
        let diff = (f.matrix()[(0, 0)] - f.matrix()[(2, 2)]).norm();
        assert!((diff - r.value).abs() < 1e-9);
    }

    #[test]
    fn mismatched_vector_state_is_shape_error() {
        let t = c3_triple(tridiagonal(1.0, 1.0));
        let s = State::Vector(alloc::vec![C64::new(1.0, 0.0), ZERO]);
        assert!(matches!(
            spectral_distance(&t, &s, &State::Character(0)),
            Err(Error::Shape(_))
        ));
    }
}
