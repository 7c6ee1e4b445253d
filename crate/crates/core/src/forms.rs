//! Universal differential forms over a finite algebra and their operator
//! representation through a Fredholm module.
//!
//! A form of degree p is a sum of terms `a₀ da₁ … da_p`. Slots `i ≥ 1` are
//! kept with their scalar part removed, which makes `d² = 0` hold exactly and
//! turns equality into a comparison of coefficient tensors.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ABS_TOL, C64, ZERO};
use crate::representation::Representation;

/// Hard cap on form degree. One above 4 so that `d²` of a 3-form can be formed.
pub const MAX_DEGREE: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalForm {
    degree: usize,
    terms: Vec<Vec<AlgebraElement>>,
}

impl UniversalForm {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Each term is `[a₀, a₁, …, a_p]`.
    pub fn terms(&self) -> &[Vec<AlgebraElement>] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Operations on universal forms over one algebra.
#[derive(Clone, Debug)]
pub struct UniversalCalculus {
    algebra: FiniteStarAlgebra,
}

impl UniversalCalculus {
    pub fn new(algebra: FiniteStarAlgebra) -> Self {
        Self { algebra }
    }

    pub fn algebra(&self) -> &FiniteStarAlgebra {
        &self.algebra
    }

    pub fn zero(&self, degree: usize) -> Result<UniversalForm> {
        check_degree(degree)?;
        Ok(UniversalForm {
            degree,
            terms: Vec::new(),
        })
    }

    pub fn element(&self, a: &AlgebraElement) -> Result<UniversalForm> {
        self.term(alloc::vec![a.clone()])
    }

    /// The elementary form `a₀ da₁ … da_p`.
    pub fn term(&self, slots: Vec<AlgebraElement>) -> Result<UniversalForm> {
        if slots.is_empty() {
            return Err(Error::InvalidInput(
                "a term needs at least the coefficient slot".into(),
            ));
        }
        let degree = slots.len() - 1;
        check_degree(degree)?;
        for a in &slots {
            self.algebra.ensure_conforms(a)?;
        }
        let mut form = UniversalForm {
            degree,
            terms: Vec::new(),
        };
        self.push_term(&mut form, slots);
        Ok(form)
    }

    /// `da`
    pub fn differential_of(&self, a: &AlgebraElement) -> Result<UniversalForm> {
        self.term(alloc::vec![self.algebra.identity(), a.clone()])
    }

    fn reduce(&self, a: &AlgebraElement) -> Option<AlgebraElement> {
        if is_exact_scalar(a.matrix()) {
            return None;
        }
        Some(self.algebra.reduce_scalar(a))
    }

    fn push_term(&self, form: &mut UniversalForm, mut slots: Vec<AlgebraElement>) {
        for a in slots.iter_mut().skip(1) {
            match self.reduce(a) {
                Some(r) => *a = r,
                None => return,
            }
        }
        if slots[0].matrix().data().iter().all(|z| *z == ZERO) {
            return;
        }
        form.terms.push(slots);
    }

    /// Universal differential: `a₀ da₁ … ↦ 1 dā₀ da₁ …`.
    pub fn d(&self, w: &UniversalForm) -> Result<UniversalForm> {
        let mut out = self.zero(w.degree + 1)?;
        for t in &w.terms {
            let mut slots = Vec::with_capacity(t.len() + 1);
            slots.push(self.algebra.identity());
            slots.extend(t.iter().cloned());
            self.push_term(&mut out, slots);
        }
        Ok(out)
    }

    pub fn add(&self, a: &UniversalForm, b: &UniversalForm) -> Result<UniversalForm> {
        if a.degree != b.degree {
            return Err(Error::Shape(format!(
                "cannot add forms of degree {} and {}",
                a.degree, b.degree
            )));
        }
        let mut out = a.clone();
        out.terms.extend(b.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale_real(&self, w: &UniversalForm, c: f64) -> UniversalForm {
        let mut out = UniversalForm {
            degree: w.degree,
            terms: Vec::new(),
        };
        for t in &w.terms {
            let mut slots = t.clone();
            slots[0] = slots[0].scale_real(c);
            self.push_term(&mut out, slots);
        }
        out
    }

    pub fn sub(&self, a: &UniversalForm, b: &UniversalForm) -> Result<UniversalForm> {
        self.add(a, &self.scale_real(b, -1.0))
    }

    /// `x · ω`
    pub fn left_mul(&self, x: &AlgebraElement, w: &UniversalForm) -> Result<UniversalForm> {
        self.algebra.ensure_conforms(x)?;
        let mut out = UniversalForm {
            degree: w.degree,
            terms: Vec::new(),
        };
        for t in &w.terms {
            let mut slots = t.clone();
            slots[0] = x.mul(&slots[0]);
            self.push_term(&mut out, slots);
        }
        Ok(out)
    }

    /// `ω · c`, expanded with `(ω′ da)·c = ω′ d(ac) − (ω′·a) dc`.
    pub fn right_mul(&self, w: &UniversalForm, c: &AlgebraElement) -> Result<UniversalForm> {
        self.algebra.ensure_conforms(c)?;
        let mut out = UniversalForm {
            degree: w.degree,
            terms: Vec::new(),
        };
        for t in &w.terms {
            for s in self.right_mul_term(t, c) {
                self.push_term(&mut out, s);
            }
        }
        Ok(out)
    }

    fn right_mul_term(&self, t: &[AlgebraElement], c: &AlgebraElement) -> Vec<Vec<AlgebraElement>> {
        let p = t.len() - 1;
        if p == 0 {
            return alloc::vec![alloc::vec![t[0].mul(c)]];
        }
        let head = &t[..p];
        let last = &t[p];
        let mut first = head.to_vec();
        first.push(last.mul(c));
        let mut out = alloc::vec![first];
        for mut s in self.right_mul_term(head, last) {
            s[0] = s[0].scale_real(-1.0);
            s.push(c.clone());
            out.push(s);
        }
        out
    }

    /// Product of forms: `ω · (b₀ db₁ … db_q) = (ω·b₀) db₁ … db_q`.
    pub fn mul(&self, w: &UniversalForm, v: &UniversalForm) -> Result<UniversalForm> {
        let degree = w.degree + v.degree;
        check_degree(degree)?;
        let mut out = UniversalForm {
            degree,
            terms: Vec::new(),
        };
        for tv in &v.terms {
            let head = self.right_mul(w, &tv[0])?;
            for th in head.terms {
                let mut slots = th;
                slots.extend(tv[1..].iter().cloned());
                self.push_term(&mut out, slots);
            }
        }
        Ok(out)
    }

    /// Coefficient tensor of the form: sum over terms of the Kronecker product
    /// of the slot coordinates over the scalar field.
    pub fn coefficients(&self, w: &UniversalForm) -> Vec<C64> {
        let n = if self.algebra.is_complex_type() {
            self.algebra.blocks().iter().map(|b| b.n * b.n).sum::<usize>()
        } else {
            self.algebra.real_dim()
        };
        let len = n.pow(w.degree as u32 + 1);
        let mut out = alloc::vec![ZERO; len];
        for t in &w.terms {
            let mut acc: Vec<C64> = alloc::vec![C64::new(1.0, 0.0)];
            for a in t {
                let x = self.algebra.field_coordinates(a);
                let mut next = Vec::with_capacity(acc.len() * x.len());
                for u in &acc {
                    for v in &x {
                        next.push(u * v);
                    }
                }
                acc = next;
            }
            for (o, v) in out.iter_mut().zip(acc) {
                *o += v;
            }
        }
        out
    }

    pub fn equals(&self, a: &UniversalForm, b: &UniversalForm, tol: f64) -> bool {
        a.degree == b.degree
            && self
                .coefficients(a)
                .iter()
                .zip(self.coefficients(b))
                .all(|(x, y)| (x - y).norm() <= tol)
    }

    pub fn is_zero(&self, w: &UniversalForm, tol: f64) -> bool {
        self.coefficients(w).iter().all(|z| z.norm() <= tol)
    }

    /// `Σ ρ(a₀)[F, ρ(a₁)]…[F, ρ(a_p)]`
    pub fn represent(&self, w: &UniversalForm, fm: &FredholmModule) -> Result<ComplexMatrix> {
        if fm.algebra != self.algebra {
            return Err(Error::Shape("Fredholm module is over a different algebra".into()));
        }
        let h = fm.rep.dim();
        let mut out = ComplexMatrix::zeros(h, h);
        for t in &w.terms {
            let mut m = fm.rep.apply(&self.algebra, &t[0])?;
            for a in &t[1..] {
                let ra = fm.rep.apply(&self.algebra, a)?;
                m = &m * &fm.f.commutator(&ra);
            }
            out += &m;
        }
        Ok(out)
    }
}

fn check_degree(p: usize) -> Result<()> {
    if p > MAX_DEGREE {
        Err(Error::DegreeCap(p))
    } else {
        Ok(())
    }
}

fn is_exact_scalar(m: &ComplexMatrix) -> bool {
    let d = m[(0, 0)];
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == if i == j { d } else { ZERO }))
}

/// An algebra acting on `ℂʰ` together with a self-adjoint operator `F`.
#[derive(Clone, Debug)]
pub struct FredholmModule {
    algebra: FiniteStarAlgebra,
    rep: Representation,
    f: ComplexMatrix,
    f_squared_residual: f64,
}

impl FredholmModule {
    pub fn new(algebra: FiniteStarAlgebra, rep: Representation, f: ComplexMatrix) -> Result<Self> {
        f.ensure_square("F")?;
        f.ensure_finite()?;
        if f.rows() != rep.dim() {
            return Err(Error::Shape(format!(
                "F is {}x{} but the representation acts on C^{}",
                f.rows(),
                f.cols(),
                rep.dim()
            )));
        }
        let herm = f.hermiticity_residual();
        if herm > ABS_TOL {
            return Err(Error::InvalidInput(format!(
                "F must be self-adjoint (residual {herm:e})"
            )));
        }
        let f2 = &f * &f;
        let f_squared_residual = rep
            .images()
            .iter()
            .map(|m| f2.commutator(m).max_abs())
            .fold(0.0, f64::max);
        Ok(Self {
            algebra,
            rep,
            f,
            f_squared_residual,
        })
    }

    pub fn algebra(&self) -> &FiniteStarAlgebra {
        &self.algebra
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn f(&self) -> &ComplexMatrix {
        &self.f
    }

    /// Largest `‖[F², ρ(b)]‖` over basis elements.
    pub fn f_squared_residual(&self) -> f64 {
        self.f_squared_residual
    }

    pub fn f_squared_commutes(&self) -> bool {
        self.f_squared_residual <= ABS_TOL
    }
}
