//! Finite-dimensional C*-algebras as block-diagonal matrix algebras.
//!
//! An algebra is an ordered list of simple blocks `M_n(ℝ)`, `M_n(ℂ)` or
//! `M_n(ℍ)`. Elements are stored as one block-diagonal complex matrix; a
//! quaternion entry `α + βj` occupies a 2x2 complex cell `[[α, β], [−β̄, ᾱ]]`.
//!
//! Every algebra is treated as a real vector space with a canonical basis
//! (see [`FiniteStarAlgebra::basis`]). Representations are real-linear maps
//! specified on that basis, so conjugate-linear actions such as `λ ↦ λ̄` are
//! expressible.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{
    eigenvalues, inner, op_norm, sort_complex, vec_norm, ComplexMatrix, ABS_TOL, C64, I, ONE, ZERO,
};
use crate::random;
use crate::representation::Representation;

/// Non-normal blocks larger than this get a conditioning note on their spectrum.
pub const CONDITIONING_NOTE_SIZE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension of one scalar of this field.
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "R" => Some(Field::Real),
            "C" => Some(Field::Complex),
            "H" => Some(Field::Quaternion),
            _ => None,
        }
    }
}

/// One simple summand `M_n(field)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub field: Field,
    pub n: usize,
}

impl Block {
    pub const fn new(field: Field, n: usize) -> Self {
        Self { field, n }
    }

    /// Side length of the complex matrix realising this block.
    pub fn matrix_size(&self) -> usize {
        match self.field {
            Field::Quaternion => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn real_dim(&self) -> usize {
        self.n * self.n * self.field.real_dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteStarAlgebra {
    blocks: Vec<Block>,
}

/// An element of a [`FiniteStarAlgebra`], held as its block-diagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement(ComplexMatrix);

impl AlgebraElement {
    /// Wraps a matrix without checking conformity; see [`FiniteStarAlgebra::element`].
    pub fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self(self.0.scale_real(c))
    }

    /// Complex scaling. Only stays inside the algebra when every block is complex.
    pub fn scale(&self, c: C64) -> Self {
        Self(self.0.scale(c))
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.0.is_hermitian(tol)
    }
}

impl FiniteStarAlgebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("algebra needs at least one block".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.n == 0) {
            return Err(Error::InvalidInput(format!(
                "block {}[{}] has zero size",
                b.field.symbol(),
                b.n
            )));
        }
        Ok(Self { blocks })
    }

    /// The commutative algebra `ℂᵏ`.
    pub fn commutative(k: usize) -> Result<Self> {
        Self::new((0..k).map(|_| Block::new(Field::Complex, 1)).collect())
    }

    /// The full matrix algebra `M_n(ℂ)`.
    pub fn matrices(n: usize) -> Result<Self> {
        Self::new(alloc::vec![Block::new(Field::Complex, n)])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn matrix_size(&self) -> usize {
        self.blocks.iter().map(Block::matrix_size).sum()
    }

    pub fn real_dim(&self) -> usize {
        self.blocks.iter().map(Block::real_dim).sum()
    }

    /// Matrix offset of each block along the diagonal.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = off;
                off += b.matrix_size();
                o
            })
            .collect()
    }

    /// `ℂᵏ`: every block is a 1x1 complex block.
    pub fn is_commutative_complex(&self) -> bool {
        self.blocks.iter().all(|b| b.field == Field::Complex && b.n == 1)
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.n == 1 && b.field != Field::Quaternion)
    }

    /// True when every block is complex, i.e. `i·1` lies in the algebra.
    pub fn is_complex_type(&self) -> bool {
        self.blocks.iter().all(|b| b.field == Field::Complex)
    }

    /// The field of scalars `c·1` contained in the algebra.
    pub fn scalar_field(&self) -> Field {
        if self.is_complex_type() {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if b.n == 1 {
                    b.field.symbol().to_string()
                } else {
                    format!("M{}({})", b.n, b.field.symbol())
                }
            })
            .collect();
        parts.join("+")
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement(ComplexMatrix::identity(self.matrix_size()))
    }

    pub fn zero(&self) -> AlgebraElement {
        let s = self.matrix_size();
        AlgebraElement(ComplexMatrix::zeros(s, s))
    }

    /// Largest violation of the block layout: off-block entries, non-real
    /// entries in real blocks and malformed quaternion cells.
    pub fn conformity_residual(&self, m: &ComplexMatrix) -> f64 {
        let s = self.matrix_size();
        if m.rows() != s || m.cols() != s {
            return f64::INFINITY;
        }
        let offsets = self.block_offsets();
        let mut owner = alloc::vec![0usize; s];
        for (bi, (b, &o)) in self.blocks.iter().zip(&offsets).enumerate() {
            for k in 0..b.matrix_size() {
                owner[o + k] = bi;
            }
        }
        let mut r: f64 = 0.0;
        for i in 0..s {
            for j in 0..s {
                if owner[i] != owner[j] {
                    r = r.max(m[(i, j)].norm());
                }
            }
        }
        for (b, &o) in self.blocks.iter().zip(&offsets) {
            match b.field {
                Field::Complex => {}
                Field::Real => {
                    for i in 0..b.n {
                        for j in 0..b.n {
                            r = r.max(m[(o + i, o + j)].im.abs());
                        }
                    }
                }
                Field::Quaternion => {
                    for p in 0..b.n {
                        for q in 0..b.n {
                            let (i, j) = (o + 2 * p, o + 2 * q);
                            let (alpha, beta) = (m[(i, j)], m[(i, j + 1)]);
                            r = r.max((m[(i + 1, j)] + beta.conj()).norm());
                            r = r.max((m[(i + 1, j + 1)] - alpha.conj()).norm());
                        }
                    }
                }
            }
        }
        r
    }

    /// Validates and wraps a matrix as an element of this algebra.
    pub fn element(&self, m: ComplexMatrix) -> Result<AlgebraElement> {
        m.ensure_finite()?;
        let r = self.conformity_residual(&m);
        if r > ABS_TOL {
            return Err(Error::InvalidInput(format!(
                "matrix does not conform to algebra {} (residual {r:e})",
                self.describe()
            )));
        }
        Ok(AlgebraElement(m))
    }

    /// Builds the element with the given block contents. Quaternion blocks are
    /// given in their complex 2n x 2n realisation.
    pub fn from_blocks(&self, blocks: &[ComplexMatrix]) -> Result<AlgebraElement> {
        if blocks.len() != self.blocks.len() {
            return Err(Error::Shape(format!(
                "expected {} blocks, got {}",
                self.blocks.len(),
                blocks.len()
            )));
        }
        let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
        self.element(ComplexMatrix::block_diag(&refs))
    }

    pub fn block_of(&self, a: &AlgebraElement, index: usize) -> ComplexMatrix {
        let o = self.block_offsets()[index];
        let s = self.blocks[index].matrix_size();
        a.0.submatrix(o, o, s, s)
    }

    /// Real coordinates in the canonical basis.
    ///
    /// Per block, entries are visited row-major; a complex entry contributes
    /// `(re, im)`, a real entry one value and a quaternion entry
    /// `(Re α, Im α, Re β, Im β)`.
    pub fn coordinates(&self, a: &AlgebraElement) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.real_dim());
        for (b, o) in self.blocks.iter().zip(self.block_offsets()) {
            for p in 0..b.n {
                for q in 0..b.n {
                    match b.field {
                        Field::Real => out.push(a.0[(o + p, o + q)].re),
                        Field::Complex => {
                            let z = a.0[(o + p, o + q)];
                            out.push(z.re);
                            out.push(z.im);
                        }
                        Field::Quaternion => {
                            let (i, j) = (o + 2 * p, o + 2 * q);
                            let (alpha, beta) = (a.0[(i, j)], a.0[(i, j + 1)]);
                            out.extend_from_slice(&[alpha.re, alpha.im, beta.re, beta.im]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn from_coordinates(&self, x: &[f64]) -> Result<AlgebraElement> {
        if x.len() != self.real_dim() {
            return Err(Error::Shape(format!(
                "expected {} real coordinates, got {}",
                self.real_dim(),
                x.len()
            )));
        }
        let s = self.matrix_size();
        let mut m = ComplexMatrix::zeros(s, s);
        let mut k = 0;
        for (b, o) in self.blocks.iter().zip(self.block_offsets()) {
            for p in 0..b.n {
                for q in 0..b.n {
                    match b.field {
                        Field::Real => {
                            m[(o + p, o + q)] = C64::new(x[k], 0.0);
                            k += 1;
                        }
                        Field::Complex => {
                            m[(o + p, o + q)] = C64::new(x[k], x[k + 1]);
                            k += 2;
                        }
                        Field::Quaternion => {
                            let alpha = C64::new(x[k], x[k + 1]);
                            let beta = C64::new(x[k + 2], x[k + 3]);
                            let (i, j) = (o + 2 * p, o + 2 * q);
                            m[(i, j)] = alpha;
                            m[(i, j + 1)] = beta;
                            m[(i + 1, j)] = -beta.conj();
                            m[(i + 1, j + 1)] = alpha.conj();
                            k += 4;
                        }
                    }
                }
            }
        }
        Ok(AlgebraElement(m))
    }

    /// Canonical real basis: the unit vectors of [`Self::coordinates`].
    pub fn basis(&self) -> Vec<AlgebraElement> {
        let d = self.real_dim();
        (0..d)
            .map(|k| {
                let mut x = alloc::vec![0.0; d];
                x[k] = 1.0;
                self.from_coordinates(&x).expect("coordinate length matches")
            })
            .collect()
    }

    /// Orthonormal basis of the self-adjoint part, for the real inner product
    /// `⟨a, b⟩ = Re tr(a* b)`.
    pub fn self_adjoint_basis(&self) -> Vec<AlgebraElement> {
        let mut out: Vec<ComplexMatrix> = Vec::new();
        for b in self.basis() {
            let mut v = b.0.hermitian_part();
            for q in &out {
                let p = real_inner(q, &v);
                v.axpy(C64::new(-p, 0.0), q);
            }
            let norm = v.frobenius_norm();
            if norm > 1e-9 {
                out.push(v.scale_real(1.0 / norm));
            }
        }
        out.into_iter().map(AlgebraElement).collect()
    }

    /// Coordinates with respect to the scalar field: complex entries when every
    /// block is complex, real coordinates otherwise.
    pub fn field_coordinates(&self, a: &AlgebraElement) -> Vec<C64> {
        if self.is_complex_type() {
            let mut out = Vec::new();
            for (b, o) in self.blocks.iter().zip(self.block_offsets()) {
                for p in 0..b.n {
                    for q in 0..b.n {
                        out.push(a.0[(o + p, o + q)]);
                    }
                }
            }
            out
        } else {
            self.coordinates(a)
                .into_iter()
                .map(|x| C64::new(x, 0.0))
                .collect()
        }
    }

    /// Trace-normalised scalar component `s` with `a − s·1` scalar-free.
    pub fn scalar_part(&self, a: &AlgebraElement) -> C64 {
        let s = a.0.trace() / self.matrix_size() as f64;
        match self.scalar_field() {
            Field::Complex => s,
            _ => C64::new(s.re, 0.0),
        }
    }

    /// `a` with its scalar component removed.
    pub fn reduce_scalar(&self, a: &AlgebraElement) -> AlgebraElement {
        let s = self.scalar_part(a);
        let mut m = a.0.clone();
        if s != ZERO {
            for i in 0..m.rows() {
                m[(i, i)] -= s;
            }
        }
        AlgebraElement(m)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> AlgebraElement {
        let x: Vec<f64> = (0..self.real_dim()).map(|_| random::unit(rng)).collect();
        self.from_coordinates(&x).expect("coordinate length matches")
    }

    pub fn random_self_adjoint(&self, rng: &mut impl Rng) -> AlgebraElement {
        let a = self.random_element(rng);
        AlgebraElement(a.0.hermitian_part())
    }

    /// Random unitary element via the Cayley transform of a skew-adjoint element.
    pub fn random_unitary(&self, rng: &mut impl Rng) -> AlgebraElement {
        let a = self.random_element(rng);
        let x = (&a.0 - &a.0.adjoint()).scale_real(0.5);
        let id = ComplexMatrix::identity(x.rows());
        let num = &id - &x;
        let den = (&id + &x).to_nalgebra();
        // 1 + X is invertible for skew-adjoint X
        let inv = den.try_inverse().expect("1 + skew-adjoint is invertible");
        AlgebraElement(&num * &ComplexMatrix::from_nalgebra(&inv))
    }

    pub fn ensure_conforms(&self, a: &AlgebraElement) -> Result<()> {
        let r = self.conformity_residual(&a.0);
        if r > ABS_TOL {
            return Err(Error::Shape(format!(
                "element does not conform to algebra {} (residual {r:e})",
                self.describe()
            )));
        }
        Ok(())
    }
}

/// `Re tr(a* b)`
pub fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues with algebraic multiplicity, sorted by (re, im).
    pub values: Vec<C64>,
    /// Present when a large non-normal block makes the values ill-conditioned.
    pub conditioning_note: Option<String>,
}

/// Eigenvalues of an algebra element, computed block by block.
pub fn spectrum(alg: &FiniteStarAlgebra, a: &AlgebraElement) -> Result<Spectrum> {
    alg.ensure_conforms(a)?;
    let mut values = Vec::with_capacity(alg.matrix_size());
    let mut note = None;
    for (k, b) in alg.blocks().iter().enumerate() {
        let m = alg.block_of(a, k);
        if b.matrix_size() > CONDITIONING_NOTE_SIZE {
            let normal = m.adjoint().commutator(&m).max_abs() <= ABS_TOL * (1.0 + m.max_abs());
            if !normal {
                note = Some(format!(
                    "block {k} is non-normal with size {}; eigenvalues may be ill-conditioned",
                    b.matrix_size()
                ));
            }
        }
        values.extend(eigenvalues(&m)?);
    }
    sort_complex(&mut values);
    Ok(Spectrum {
        values,
        conditioning_note: note,
    })
}

// ---------------------------------------------------------------------------
// States and characters
// ---------------------------------------------------------------------------

/// A state on a finite algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    /// Evaluation at the i-th point of `ℂᵏ`.
    Character(usize),
    /// Vector state `a ↦ ⟨ξ, ρ(a) ξ⟩` for a unit vector in the representation space.
    Vector(Vec<C64>),
}

impl State {
    pub fn evaluate(
        &self,
        alg: &FiniteStarAlgebra,
        rep: Option<&Representation>,
        a: &AlgebraElement,
    ) -> Result<C64> {
        match self {
            State::Character(i) => {
                if !alg.is_commutative_complex() {
                    return Err(Error::UnsupportedAlgebra(format!(
                        "characters need a commutative algebra C^k, got {}",
                        alg.describe()
                    )));
                }
                if *i >= alg.matrix_size() {
                    return Err(Error::Shape(format!(
                        "character index {i} out of range for C^{}",
                        alg.matrix_size()
                    )));
                }
                Ok(a.matrix()[(*i, *i)])
            }
            State::Vector(xi) => {
                let rep = rep.ok_or_else(|| Error::Missing("vector states need a representation".into()))?;
                if xi.len() != rep.dim() {
                    return Err(Error::Shape(format!(
                        "state vector has length {} but the representation space has dimension {}",
                        xi.len(),
                        rep.dim()
                    )));
                }
                let m = rep.apply(alg, a)?;
                Ok(inner(xi, &m.mul_vec(xi)))
            }
        }
    }

    pub fn validate(&self, alg: &FiniteStarAlgebra, rep: Option<&Representation>) -> Result<()> {
        match self {
            State::Vector(xi) => {
                let n = vec_norm(xi);
                if (n - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidInput(format!(
                        "state vector must have unit norm, got {n}"
                    )));
                }
                let _ = self.evaluate(alg, rep, &alg.identity())?;
                Ok(())
            }
            State::Character(_) => self.evaluate(alg, rep, &alg.identity()).map(|_| ()),
        }
    }
}

/// The characters of `ℂᵏ`: `χᵢ(f) = fᵢ`.
pub fn characters(alg: &FiniteStarAlgebra) -> Result<Vec<State>> {
    if !alg.is_commutative_complex() {
        return Err(Error::UnsupportedAlgebra(format!(
            "characters are defined here for C^k only, got {}",
            alg.describe()
        )));
    }
    Ok((0..alg.matrix_size()).map(State::Character).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GelfandCheck {
    /// `max_i |χᵢ(a)|`, the sup norm of the Gelfand transform.
    pub sup_norm: f64,
    pub op_norm: f64,
    pub residual: f64,
    pub holds: bool,
}

/// Compares the sup norm of the Gelfand transform with the operator norm.
pub fn gelfand_isometry_check(alg: &FiniteStarAlgebra, a: &AlgebraElement) -> Result<GelfandCheck> {
    let chars = characters(alg)?;
    alg.ensure_conforms(a)?;
    let mut sup: f64 = 0.0;
    for c in &chars {
        sup = sup.max(c.evaluate(alg, None, a)?.norm());
    }
    let norm = op_norm(a.matrix())?;
    let residual = (sup - norm).abs();
    Ok(GelfandCheck {
        sup_norm: sup,
        op_norm: norm,
        residual,
        holds: residual <= ABS_TOL * (1.0 + norm),
    })
}

/// The quaternion `α + βj` as the 2x2 cell `[[α, β], [−β̄, ᾱ]]`.
pub fn quaternion(alpha: C64, beta: C64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[alloc::vec![alpha, beta], alloc::vec![-beta.conj(), alpha.conj()]])
        .expect("2x2")
}

/// The unit quaternion `j` in its complex realisation.
pub fn quaternion_j() -> ComplexMatrix {
    quaternion(ZERO, ONE)
}

#[allow(dead_code)]
fn quaternion_i() -> ComplexMatrix {
    quaternion(I, ZERO)
}
