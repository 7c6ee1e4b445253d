//! Clifford algebras of Euclidean `ℝⁿ` in the convention `v² = −g(v)·1`.
//!
//! Gamma matrices are anti-hermitian and square to `−1`. The exterior algebra
//! `Λ*ℝⁿ` is indexed by bitmasks: bit `i` set means `eᵢ₊₁` is present.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::matrix::{real_rank, real_symmetric_eigen, ComplexMatrix, C64, I, ONE, ZERO};

pub const MAX_GAMMA_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub n: usize,
    pub gammas: Vec<ComplexMatrix>,
}

impl GammaSet {
    pub fn size(&self) -> usize {
        1 << (self.n / 2)
    }

    /// Largest entry of `{γᵘ, γᵛ} + 2δᵘᵛ` over all pairs.
    pub fn anticommutator_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.size());
        let mut r: f64 = 0.0;
        for (u, gu) in self.gammas.iter().enumerate() {
            for gv in &self.gammas[u..] {
                let mut ac = gu.anticommutator(gv);
                if core::ptr::eq(gu, gv) {
                    ac.axpy(C64::new(2.0, 0.0), &id);
                }
                r = r.max(ac.max_abs());
            }
        }
        r
    }

    /// Largest `‖γ* + γ‖`.
    pub fn anti_hermiticity_residual(&self) -> f64 {
        self.gammas
            .iter()
            .map(|g| (&g.adjoint() + g).max_abs())
            .fold(0.0, f64::max)
    }
}

fn pauli() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let s1 = ComplexMatrix::from_rows(&[alloc::vec![ZERO, ONE], alloc::vec![ONE, ZERO]]).unwrap();
    let s2 = ComplexMatrix::from_rows(&[alloc::vec![ZERO, -I], alloc::vec![I, ZERO]]).unwrap();
    let s3 = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
    (s1, s2, s3)
}

/// Gamma matrices for `Cl(ℝⁿ)`, `1 ≤ n ≤ 12`, of size `2^⌊n/2⌋`.
///
/// Even sets double recursively: `γ ↦ γ⊗σ₃`, then `1⊗iσ₁` and `1⊗iσ₂` are
/// appended. Odd sets append the normalised product of the previous even set.
pub fn generate_gammas(n: usize) -> Result<GammaSet> {
    if !(1..=MAX_GAMMA_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: MAX_GAMMA_DIM,
        });
    }
    let (s1, s2, s3) = pauli();
    let mut gammas: Vec<ComplexMatrix> = Vec::new();
    let mut size = 1;
    for _ in 0..n / 2 {
        let id = ComplexMatrix::identity(size);
        gammas = gammas.iter().map(|g| g.kron(&s3)).collect();
        gammas.push(id.kron(&s1.scale(I)));
        gammas.push(id.kron(&s2.scale(I)));
        size *= 2;
    }
    if n % 2 == 1 {
        let mut p = ComplexMatrix::identity(size);
        for g in &gammas {
            p = &p * g;
        }
        // p² = ±1; pick the phase that makes the new generator square to −1
        let sq = (&p * &p)[(0, 0)];
        let c = if sq.re > 0.0 { I } else { ONE };
        gammas.push(p.scale(c));
    }
    Ok(GammaSet { n, gammas })
}

/// Isomorphism type of `Cl(ℝⁿ)`: `summands` copies of `M_size(field)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordDescriptor {
    pub n: usize,
    pub field: Field,
    pub summands: usize,
    /// Matrix size for `n mod 8`; the actual size is this times `16^bott_shift`.
    pub base_size: usize,
    pub bott_shift: u32,
}

impl CliffordDescriptor {
    pub fn size(&self) -> Option<u128> {
        16u128
            .checked_pow(self.bott_shift)
            .and_then(|s| s.checked_mul(self.base_size as u128))
    }

    /// Real dimension, `summands · size² · dim(field)`, when it fits in a `u128`.
    pub fn real_dim(&self) -> Option<u128> {
        let s = self.size()?;
        s.checked_mul(s)?
            .checked_mul(self.summands as u128)?
            .checked_mul(self.field.real_dim() as u128)
    }

    /// `log₂` of the real dimension; always `n`.
    pub fn real_dim_log2(&self) -> usize {
        let s = self.base_size.trailing_zeros() as usize + 4 * self.bott_shift as usize;
        2 * s + self.summands.trailing_zeros() as usize + self.field.real_dim().trailing_zeros() as usize
    }

    /// Text form such as `H⊕H`, `H[2]` or `C[16]`.
    pub fn structure(&self) -> String {
        let one = match self.size() {
            Some(1) => String::from(self.field.symbol()),
            Some(s) => format!("{}[{}]", self.field.symbol(), s),
            None => format!(
                "{}[{}*16^{}]",
                self.field.symbol(),
                self.base_size,
                self.bott_shift
            ),
        };
        let parts: Vec<String> = (0..self.summands).map(|_| one.clone()).collect();
        parts.join("⊕")
    }
}

/// Classification of `Cl(ℝⁿ)` for `n mod 8`, extended by Bott periodicity
/// `Cl_{n+8} = Cl_n ⊗ ℝ[16]`.
pub fn classification(n: usize) -> CliffordDescriptor {
    let (field, base_size, summands) = match n % 8 {
        0 => (Field::Real, 1, 1),
        1 => (Field::Complex, 1, 1),
        2 => (Field::Quaternion, 1, 1),
        3 => (Field::Quaternion, 1, 2),
        4 => (Field::Quaternion, 2, 1),
        5 => (Field::Complex, 4, 1),
        6 => (Field::Real, 8, 1),
        _ => (Field::Real, 8, 2),
    };
    CliffordDescriptor {
        n,
        field,
        summands,
        base_size,
        bott_shift: (n / 8) as u32,
    }
}

fn dot(v: &[f64], w: &[f64]) -> f64 {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// `w − 2 g(v,w) v / g(v)`, the reflection of `w` across `v⊥`.
pub fn reflection(v: &[f64], w: &[f64]) -> Result<Vec<f64>> {
    if v.len() != w.len() {
        return Err(Error::Shape(format!(
            "vectors of length {} and {}",
            v.len(),
            w.len()
        )));
    }
    let gv = dot(v, v);
    if gv == 0.0 || !gv.is_finite() {
        return Err(Error::SingularVector);
    }
    let c = 2.0 * dot(v, w) / gv;
    Ok(w.iter().zip(v).map(|(wi, vi)| wi - c * vi).collect())
}

/// Row-major matrix of the reflection across `v⊥`.
pub fn reflection_matrix(v: &[f64]) -> Result<Vec<f64>> {
    let n = v.len();
    let mut out = alloc::vec![0.0; n * n];
    for j in 0..n {
        let mut e = alloc::vec![0.0; n];
        e[j] = 1.0;
        for (i, x) in reflection(v, &e)?.into_iter().enumerate() {
            out[i * n + j] = x;
        }
    }
    Ok(out)
}

/// Determinant of a reflection matrix, which is symmetric, as the product of its eigenvalues.
pub fn reflection_determinant(v: &[f64]) -> Result<f64> {
    let m = reflection_matrix(v)?;
    let (vals, _) = real_symmetric_eigen(v.len(), &m);
    Ok(vals.iter().product())
}

// ---------------------------------------------------------------------------
// Exterior algebra
// ---------------------------------------------------------------------------

/// The basis element `e_{i₁} ∧ … ∧ e_{i_k}` of `Λ*ℝⁿ`, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExteriorBasisElement(pub u32);

impl ExteriorBasisElement {
    /// From 1-based indices; repeated indices give `None`.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut m = 0u32;
        for &i in indices {
            if i == 0 || i > 31 || m & (1 << (i - 1)) != 0 {
                return None;
            }
            m |= 1 << (i - 1);
        }
        Some(Self(m))
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..32)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }
}

/// Coefficients on `Λ*ℝⁿ`, indexed by bitmask.
pub type ExteriorVector = Vec<f64>;

fn check_exterior_dim(n: usize) -> Result<()> {
    if n > MAX_GAMMA_DIM {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 0,
            max: MAX_GAMMA_DIM,
        });
    }
    Ok(())
}

/// `ε(v)·x = v ∧ x`.
pub fn wedge(v: &[f64], x: &[f64]) -> Result<ExteriorVector> {
    let n = v.len();
    check_exterior_dim(n)?;
    check_len(n, x)?;
    let mut out = alloc::vec![0.0; 1 << n];
    for (mask, &c) in x.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for (i, &vi) in v.iter().enumerate() {
            if mask & (1 << i) != 0 || vi == 0.0 {
                continue;
            }
            let before = (mask & ((1 << i) - 1)).count_ones();
            let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
            out[mask | (1 << i)] += sign * vi * c;
        }
    }
    Ok(out)
}

/// `ι(v)·x` with `ι(v)(v₁∧…∧v_k) = Σⱼ (−1)ʲ g(v, vⱼ) v₁∧…v̂ⱼ…∧v_k`, `j` counted from 1.
pub fn contract(v: &[f64], x: &[f64]) -> Result<ExteriorVector> {
    let n = v.len();
    check_exterior_dim(n)?;
    check_len(n, x)?;
    let mut out = alloc::vec![0.0; 1 << n];
    for (mask, &c) in x.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mut j = 0;
        for (i, &vi) in v.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            j += 1;
            if vi != 0.0 {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                out[mask & !(1 << i)] += sign * vi * c;
            }
        }
    }
    Ok(out)
}

/// `c(v) = ε(v) + ι(v)`.
pub fn clifford_action(v: &[f64], x: &[f64]) -> Result<ExteriorVector> {
    let a = wedge(v, x)?;
    let b = contract(v, x)?;
    Ok(a.into_iter().zip(b).map(|(p, q)| p + q).collect())
}

fn check_len(n: usize, x: &[f64]) -> Result<()> {
    if x.len() != 1 << n {
        return Err(Error::Shape(format!(
            "exterior vector has length {}, expected 2^{n}",
            x.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorOps {
    pub wedge: ExteriorVector,
    pub contract: ExteriorVector,
    pub clifford: ExteriorVector,
}

/// `(ε(v)·e_I, ι(v)·e_I, c(v)·e_I)`.
pub fn exterior_ops(v: &[f64], elem: ExteriorBasisElement) -> Result<ExteriorOps> {
    let n = v.len();
    check_exterior_dim(n)?;
    if elem.0 >> n != 0 {
        return Err(Error::Shape(format!(
            "basis element {:?} is not in the exterior algebra of R^{n}",
            elem.indices()
        )));
    }
    let mut x = alloc::vec![0.0; 1 << n];
    x[elem.0 as usize] = 1.0;
    let wedge = wedge(v, &x)?;
    let contract = contract(v, &x)?;
    let clifford = wedge.iter().zip(&contract).map(|(a, b)| a + b).collect();
    Ok(ExteriorOps {
        wedge,
        contract,
        clifford,
    })
}

/// Matrix of a linear operator on `Λ*ℝⁿ` given its action on vectors.
pub fn operator_matrix(n: usize, op: impl Fn(&[f64]) -> Result<ExteriorVector>) -> Result<ComplexMatrix> {
    check_exterior_dim(n)?;
    let d = 1 << n;
    let mut m = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let mut e = alloc::vec![0.0; d];
        e[j] = 1.0;
        for (i, x) in op(&e)?.into_iter().enumerate() {
            m[(i, j)] = C64::new(x, 0.0);
        }
    }
    Ok(m)
}

/// Rank of the symbol map `e_{i₁}⋯e_{i_k} ↦ c(e_{i₁})⋯c(e_{i_k})·1` from
/// `Cl(ℝⁿ)` to `Λ*ℝⁿ`. It is an isomorphism exactly when the rank is `2ⁿ`.
pub fn symbol_map_rank(n: usize) -> Result<usize> {
    check_exterior_dim(n)?;
    let d = 1usize << n;
    let mut cols = alloc::vec![0.0; d * d];
    for mask in 0..d {
        let mut x = alloc::vec![0.0; d];
        x[0] = 1.0;
        // apply factors right to left so that the product reads e_{i₁}⋯e_{i_k}
        for i in (0..n).rev() {
            if mask & (1 << i) != 0 {
                let mut e = alloc::vec![0.0; n];
                e[i] = 1.0;
                x = clifford_action(&e, &x)?;
            }
        }
        for (r, v) in x.into_iter().enumerate() {
            cols[r * d + mask] = v;
        }
    }
    Ok(real_rank(d, d, &cols, 1e-9))
}
