//! Tensor products of finite spectral triples, `D = D₁⊗1 + γ₁⊗D₂`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{AlgebraElement, Block, Field, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ABS_TOL, C64, ONE, ZERO};
use crate::random;
use crate::representation::Representation;
use crate::triple::{sign_table, FiniteSpectralTriple, RealStructure};

#[derive(Clone, Debug)]
pub struct ProductTriple {
    pub triple: FiniteSpectralTriple,
    /// Set when a grading or real structure could not be formed.
    pub note: Option<String>,
}

fn matrix_unit(alg: &FiniteStarAlgebra, r: usize, c: usize, v: C64) -> AlgebraElement {
    let n = alg.matrix_size();
    let mut m = ComplexMatrix::zeros(n, n);
    m[(r, c)] = v;
    AlgebraElement::from_matrix_unchecked(m)
}

fn ensure_complex(t: &FiniteSpectralTriple, which: &str) -> Result<()> {
    if t.algebra.blocks().iter().any(|b| b.field != Field::Complex) {
        return Err(Error::UnsupportedAlgebra(format!(
            "{which} factor {} is not a sum of complex matrix algebras",
            t.algebra.describe()
        )));
    }
    if !t.rep.is_complex_linear(&t.algebra) {
        return Err(Error::UnsupportedAlgebra(format!(
            "{which} representation is not complex-linear"
        )));
    }
    Ok(())
}

/// Residual of the sign relations of KO dimension `ko` for a candidate `J`.
fn sign_residual(u: &ComplexMatrix, d: &ComplexMatrix, gamma: Option<&ComplexMatrix>, ko: u8) -> f64 {
    let s = sign_table(ko);
    let n = u.rows();
    let id = ComplexMatrix::identity(n);
    let mut r = (u * &u.adjoint()).max_abs_diff(&id);
    r = r.max((u * &u.conj()).max_abs_diff(&id.scale_real(s.epsilon as f64)));
    let scale = d.max_abs().max(1.0);
    r = r.max((u * &d.conj()).max_abs_diff(&(d * u).scale_real(s.epsilon_prime as f64)) / scale);
    if let (Some(g), Some(e2)) = (gamma, s.epsilon_double_prime) {
        r = r.max((u * &g.conj()).max_abs_diff(&(g * u).scale_real(e2 as f64)));
    }
    r
}

/// The product of two finite triples over the complex tensor product of their
/// algebras. `t₁` must be graded; both algebras must be sums of `M_n(ℂ)`.
///
/// The composite `γ₁⊗γ₂` is formed when both factors are graded. For the real
/// structure the candidates `J₁⊗J₂`, `J₁γ₁⊗J₂`, `J₁⊗J₂γ₂`, `J₁γ₁⊗J₂γ₂` are
/// tried in that order and the first obeying the sign relations of KO
/// dimension `ko₁ + ko₂` is kept.
pub fn product_triple(t1: &FiniteSpectralTriple, t2: &FiniteSpectralTriple) -> Result<ProductTriple> {
    let g1 = t1
        .gamma
        .as_ref()
        .ok_or_else(|| Error::Missing("the first factor needs a grading to form D₁⊗1 + γ₁⊗D₂".into()))?;
    ensure_complex(t1, "first")?;
    ensure_complex(t2, "second")?;
    let (h1, h2) = (t1.dim(), t2.dim());
    let (b1, b2) = (t1.algebra.blocks(), t2.algebra.blocks());
    let (o1, o2) = (t1.algebra.block_offsets(), t2.algebra.block_offsets());

    let mut blocks = Vec::new();
    for x in b1 {
        for y in b2 {
            blocks.push(Block {
                field: Field::Complex,
                n: x.n * y.n,
            });
        }
    }
    let alg = FiniteStarAlgebra::new(blocks)?;
    let offsets = alg.block_offsets();
    let mut images = Vec::with_capacity(alg.real_dim());
    for b in alg.basis() {
        let m = b.matrix();
        let (r, c, v) = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .find_map(|(r, c)| (m[(r, c)] != ZERO).then(|| (r, c, m[(r, c)])))
            .expect("basis elements are nonzero");
        let k = offsets.iter().rposition(|&o| o <= r).expect("offset");
        let (i, j) = (k / b2.len(), k % b2.len());
        let w = b2[j].n;
        let (rl, cl) = (r - offsets[k], c - offsets[k]);
        let e1 = matrix_unit(&t1.algebra, o1[i] + rl / w, o1[i] + cl / w, ONE);
        let e2 = matrix_unit(&t2.algebra, o2[j] + rl % w, o2[j] + cl % w, ONE);
        images.push(t1.rho(&e1)?.kron(&t2.rho(&e2)?).scale(v));
    }
    let rep = Representation::new(&alg, h1 * h2, images)?;

    let id2 = ComplexMatrix::identity(h2);
    let d = &t1.d.kron(&id2) + &g1.kron(&t2.d);
    let mut notes = Vec::new();
    let gamma = match &t2.gamma {
        Some(g2) => Some(g1.kron(g2)),
        None => {
            notes.push(String::from("second factor ungraded; product left ungraded"));
            None
        }
    };
    let ko = (t1.ko + t2.ko) % 8;
    let j = match (&t1.j, &t2.j) {
        (Some(j1), Some(j2)) => {
            let j1g = &j1.u * &g1.conj();
            let j2g = t2.gamma.as_ref().map(|g2| &j2.u * &g2.conj());
            let mut cands = alloc::vec![j1.u.kron(&j2.u), j1g.kron(&j2.u)];
            if let Some(j2g) = &j2g {
                cands.push(j1.u.kron(j2g));
                cands.push(j1g.kron(j2g));
            }
            let found = cands
                .into_iter()
                .find(|u| sign_residual(u, &d, gamma.as_ref(), ko) < ABS_TOL);
            if found.is_none() {
                notes.push(format!(
                    "no tensor candidate for J satisfies the KO dimension {ko} signs"
                ));
            }
            found.map(RealStructure::new)
        }
        _ => {
            notes.push(String::from("a factor has no real structure; product has none"));
            None
        }
    };
    let triple = FiniteSpectralTriple::new(alg, rep, d, gamma, j, ko)?;
    Ok(ProductTriple {
        triple,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// A random KO-dimension-0 triple satisfying every checked axiom: `M_n(ℂ)`
/// acting as `a⊗1⊗1` on `ℂⁿ⊗ℂⁿ⊗ℂ²`, `D = (K⊗1 + 1⊗K̄)⊗σ₁` for a random
/// hermitian `K`, `γ = 1⊗1⊗σ₃` and `J` = swap of the `ℂⁿ` factors with
/// complex conjugation.
pub fn random_admissible_factor(n: usize, rng: &mut impl Rng) -> Result<FiniteSpectralTriple> {
    let alg = FiniteStarAlgebra::matrices(n)?;
    let idn = ComplexMatrix::identity(n);
    let id2 = ComplexMatrix::identity(2);
    let rep = Representation::from_fn(&alg, 2 * n * n, |b| b.matrix().kron(&idn).kron(&id2))?;
    let k = random::hermitian(rng, n);
    let sigma1 = ComplexMatrix::from_rows(&[alloc::vec![ZERO, ONE], alloc::vec![ONE, ZERO]])?;
    let sigma3 = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
    let d = (&k.kron(&idn) + &idn.kron(&k.conj())).kron(&sigma1);
    let gamma = ComplexMatrix::identity(n * n).kron(&sigma3);
    let mut swap = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            swap[(i * n + j, j * n + i)] = ONE;
        }
    }
    FiniteSpectralTriple::new(
        alg,
        rep,
        d,
        Some(gamma),
        Some(RealStructure::new(swap.kron(&id2))),
        0,
    )
}
