//! The internal space of the electroweak-strong model: `𝒜_F = ℂ ⊕ ℍ ⊕ M₃(ℂ)`
//! acting on 30 fermions per generation, the Yukawa Dirac operator, the Higgs
//! doublet read off from inner fluctuations, and the gauge matrices.
//!
//! Layout of `ℋ_F = ℋ⁺ ⊕ ℋ⁻` (particles, then antiparticles). Each sector is
//! generation-major with 15 slots per generation: the quarks at
//! `flavour·3 + colour` with flavours `(u_L, d_L, u_R, d_R)`, then the leptons
//! `(e_R, ν_L, e_L)` at slots 12, 13, 14.

mod product;

pub use product::{product_triple, random_admissible_factor, ProductTriple};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{quaternion, AlgebraElement, Block, Field, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{real_rank, ComplexMatrix, C64, ONE, ZERO};
use crate::representation::Representation;
use crate::triple::{FiniteSpectralTriple, RealStructure};

/// Fermions per generation and sector.
pub const SECTOR_SLOTS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Particle {
    UL,
    DL,
    UR,
    DR,
    ER,
    NuL,
    EL,
}

impl Particle {
    pub const ALL: [Particle; 7] = [
        Particle::UL,
        Particle::DL,
        Particle::UR,
        Particle::DR,
        Particle::ER,
        Particle::NuL,
        Particle::EL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Particle::UL => "u_L",
            Particle::DL => "d_L",
            Particle::UR => "u_R",
            Particle::DR => "d_R",
            Particle::ER => "e_R",
            Particle::NuL => "nu_L",
            Particle::EL => "e_L",
        }
    }

    pub fn is_quark(self) -> bool {
        matches!(self, Particle::UL | Particle::DL | Particle::UR | Particle::DR)
    }

    pub fn is_right(self) -> bool {
        matches!(self, Particle::UR | Particle::DR | Particle::ER)
    }

    pub fn colours(self) -> usize {
        if self.is_quark() {
            3
        } else {
            1
        }
    }

    fn slot(self, colour: usize) -> usize {
        match self {
            Particle::UL => colour,
            Particle::DL => 3 + colour,
            Particle::UR => 6 + colour,
            Particle::DR => 9 + colour,
            Particle::ER => 12,
            Particle::NuL => 13,
            Particle::EL => 14,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermionBasis {
    pub generations: usize,
}

impl FermionBasis {
    pub fn new(generations: usize) -> Result<Self> {
        if generations == 0 || generations > 8 {
            return Err(Error::DimensionOutOfRange {
                n: generations,
                min: 1,
                max: 8,
            });
        }
        Ok(Self { generations })
    }

    pub fn sector_dim(&self) -> usize {
        SECTOR_SLOTS * self.generations
    }

    /// `30g`
    pub fn dim(&self) -> usize {
        2 * self.sector_dim()
    }

    pub fn index(&self, anti: bool, generation: usize, p: Particle, colour: usize) -> usize {
        debug_assert!(generation < self.generations && colour < p.colours());
        (anti as usize) * self.sector_dim() + generation * SECTOR_SLOTS + p.slot(colour)
    }

    /// Indices of one species ordered by `(generation, colour)`.
    pub fn species(&self, anti: bool, p: Particle) -> Vec<usize> {
        let mut out = Vec::new();
        for g in 0..self.generations {
            for c in 0..p.colours() {
                out.push(self.index(anti, g, p, c));
            }
        }
        out
    }

    pub fn label(&self, i: usize) -> String {
        let anti = i >= self.sector_dim();
        let r = i % self.sector_dim();
        let (g, slot) = (r / SECTOR_SLOTS, r % SECTOR_SLOTS);
        let (name, colour) = if slot < 12 {
            (Particle::ALL[slot / 3].name(), Some(slot % 3))
        } else {
            (Particle::ALL[4 + slot - 12].name(), None)
        };
        let bar = if anti { "bar_" } else { "" };
        match colour {
            Some(c) => format!("{bar}{name}[g{g},c{c}]"),
            None => format!("{bar}{name}[g{g}]"),
        }
    }
}

/// `ℂ ⊕ ℍ ⊕ M₃(ℂ)`, realised in `M₆(ℂ)` as `diag(λ, q, m)`.
pub fn internal_algebra() -> FiniteStarAlgebra {
    FiniteStarAlgebra::new(alloc::vec![
        Block {
            field: Field::Complex,
            n: 1
        },
        Block {
            field: Field::Quaternion,
            n: 1
        },
        Block {
            field: Field::Complex,
            n: 3
        },
    ])
    .expect("valid blocks")
}

/// `(λ, α + βj, m)`
pub fn internal_element(lambda: C64, alpha: C64, beta: C64, m: &ComplexMatrix) -> Result<AlgebraElement> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Shape(format!(
            "colour block must be 3x3, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let alg = internal_algebra();
    alg.from_blocks(&[ComplexMatrix::scalar(lambda), quaternion(alpha, beta), m.clone()])
}

/// `(λ, α, β)` of an internal element.
pub fn internal_parts(a: &AlgebraElement) -> (C64, C64, C64) {
    let m = a.matrix();
    (m[(0, 0)], m[(1, 1)], m[(1, 2)])
}

/// The action of `a ∈ 𝒜_F` on `ℋ_F`. The doublets `(u_L, d_L)` and `(ν_L, e_L)`
/// carry the quaternion cell itself, `u_R ↦ λ`, `d_R, e_R ↦ λ̄`, antileptons
/// `↦ λ` and antiquarks see `m` on colour.
pub fn represent_internal(basis: &FermionBasis, a: &ComplexMatrix) -> ComplexMatrix {
    let lambda = a[(0, 0)];
    let q = a.submatrix(1, 1, 2, 2);
    let m = a.submatrix(3, 3, 3, 3);
    let mut r = ComplexMatrix::zeros(basis.dim(), basis.dim());
    for g in 0..basis.generations {
        for c in 0..3 {
            let doublet = [
                basis.index(false, g, Particle::UL, c),
                basis.index(false, g, Particle::DL, c),
            ];
            for (i, &x) in doublet.iter().enumerate() {
                for (j, &y) in doublet.iter().enumerate() {
                    r[(x, y)] = q[(i, j)];
                }
            }
            r[(
                basis.index(false, g, Particle::UR, c),
                basis.index(false, g, Particle::UR, c),
            )] = lambda;
            let dr = basis.index(false, g, Particle::DR, c);
            r[(dr, dr)] = lambda.conj();
        }
        let er = basis.index(false, g, Particle::ER, 0);
        r[(er, er)] = lambda.conj();
        let doublet = [
            basis.index(false, g, Particle::NuL, 0),
            basis.index(false, g, Particle::EL, 0),
        ];
        for (i, &x) in doublet.iter().enumerate() {
            for (j, &y) in doublet.iter().enumerate() {
                r[(x, y)] = q[(i, j)];
            }
        }
        for p in [Particle::ER, Particle::NuL, Particle::EL] {
            let k = basis.index(true, g, p, 0);
            r[(k, k)] = lambda;
        }
        for p in [Particle::UL, Particle::DL, Particle::UR, Particle::DR] {
            for c in 0..3 {
                for c2 in 0..3 {
                    r[(basis.index(true, g, p, c), basis.index(true, g, p, c2))] = m[(c, c2)];
                }
            }
        }
    }
    r
}

/// Which index the `⊗1₃` of the quark Yukawa block runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegeneracyAxis {
    /// `M_u, M_d` are `g×g` on generations, repeated for each colour.
    #[default]
    Color,
    /// `M_u, M_d` are `3×3` on colour, repeated for each generation.
    Generation,
}

/// Yukawa mass matrices. `M_l` is always `g×g`.
#[derive(Clone, Debug, PartialEq)]
pub struct YukawaData {
    pub mu: ComplexMatrix,
    pub md: ComplexMatrix,
    pub ml: ComplexMatrix,
}

impl YukawaData {
    /// Generation count implied by `M_l`, after checking all shapes.
    pub fn generations(&self, axis: DegeneracyAxis) -> Result<usize> {
        let g = self.ml.rows();
        let quark = match axis {
            DegeneracyAxis::Color => g,
            DegeneracyAxis::Generation => 3,
        };
        for (name, m, n) in [
            ("Mu", &self.mu, quark),
            ("Md", &self.md, quark),
            ("Ml", &self.ml, g),
        ] {
            m.ensure_finite()?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        FermionBasis::new(g)?;
        Ok(g)
    }
}

/// `D_F = diag(Y, Ȳ)` with `u_L ↔ u_R` via `M_u`, `d_L ↔ d_R` via `M_d` and
/// `e_R ↔ e_L` via `M_l`; `ν_L` is uncoupled.
pub fn build_dirac(y: &YukawaData, axis: DegeneracyAxis) -> Result<ComplexMatrix> {
    let basis = FermionBasis::new(y.generations(axis)?)?;
    let mut d = ComplexMatrix::zeros(basis.dim(), basis.dim());
    for anti in [false, true] {
        let mut put = |r: usize, c: usize, v: C64| {
            let v = if anti { v.conj() } else { v };
            d[(r, c)] = v;
            d[(c, r)] = v.conj();
        };
        for (left, right, m) in [
            (Particle::UL, Particle::UR, &y.mu),
            (Particle::DL, Particle::DR, &y.md),
        ] {
            for g in 0..basis.generations {
                for c in 0..3 {
                    match axis {
                        DegeneracyAxis::Color => {
                            for g2 in 0..basis.generations {
                                put(
                                    basis.index(anti, g, left, c),
                                    basis.index(anti, g2, right, c),
                                    m[(g, g2)],
                                );
                            }
                        }
                        DegeneracyAxis::Generation => {
                            for c2 in 0..3 {
                                put(
                                    basis.index(anti, g, left, c),
                                    basis.index(anti, g, right, c2),
                                    m[(c, c2)],
                                );
                            }
                        }
                    }
                }
            }
        }
        for g in 0..basis.generations {
            for g2 in 0..basis.generations {
                put(
                    basis.index(anti, g, Particle::ER, 0),
                    basis.index(anti, g2, Particle::EL, 0),
                    y.ml[(g, g2)],
                );
            }
        }
    }
    Ok(d)
}

/// `+1` on right-handed, `−1` on left-handed fermions, in both sectors.
pub fn chirality(basis: &FermionBasis) -> ComplexMatrix {
    let mut diag = alloc::vec![0.0; basis.dim()];
    for anti in [false, true] {
        for p in Particle::ALL {
            for i in basis.species(anti, p) {
                diag[i] = if p.is_right() { 1.0 } else { -1.0 };
            }
        }
    }
    ComplexMatrix::from_real_diag(&diag)
}

/// `J(ξ, η̄) = (η, ξ̄)`: the sector swap followed by complex conjugation.
pub fn real_structure(basis: &FermionBasis) -> RealStructure {
    let h = basis.sector_dim();
    let mut u = ComplexMatrix::zeros(2 * h, 2 * h);
    for i in 0..h {
        u[(i, h + i)] = ONE;
        u[(h + i, i)] = ONE;
    }
    RealStructure::new(u)
}

#[derive(Clone, Debug)]
pub struct InternalTriple {
    pub basis: FermionBasis,
    pub axis: DegeneracyAxis,
    pub yukawa: YukawaData,
    pub triple: FiniteSpectralTriple,
}

impl InternalTriple {
    pub fn new(yukawa: YukawaData, axis: DegeneracyAxis) -> Result<Self> {
        let basis = FermionBasis::new(yukawa.generations(axis)?)?;
        let alg = internal_algebra();
        let rep = Representation::from_fn(&alg, basis.dim(), |b| represent_internal(&basis, b.matrix()))?;
        let d = build_dirac(&yukawa, axis)?;
        let triple = FiniteSpectralTriple::new(
            alg,
            rep,
            d,
            Some(chirality(&basis)),
            Some(real_structure(&basis)),
            0,
        )?;
        Ok(Self {
            basis,
            axis,
            yukawa,
            triple,
        })
    }

    /// The block of `D_F` between two particle species, indexed by `(generation, colour)`.
    fn yukawa_block(&self, row: Particle, col: Particle) -> ComplexMatrix {
        let r = self.basis.species(false, row);
        let c = self.basis.species(false, col);
        ComplexMatrix::from_fn(r.len(), c.len(), |i, j| self.triple.d[(r[i], c[j])])
    }

    fn place(&self, target: &mut ComplexMatrix, row: Particle, col: Particle, block: &ComplexMatrix) {
        let r = self.basis.species(false, row);
        let c = self.basis.species(false, col);
        for (i, &x) in r.iter().enumerate() {
            for (j, &y) in c.iter().enumerate() {
                target[(x, y)] = block[(i, j)];
            }
        }
    }
}

/// The scalar fields of the discrete part of a vector potential.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsFields {
    pub phi1: C64,
    pub phi2: C64,
    pub phi1_prime: C64,
    pub phi2_prime: C64,
}

impl HiggsFields {
    /// `q = φ₁ + φ₂j`
    pub fn q(&self) -> ComplexMatrix {
        quaternion(self.phi1, self.phi2)
    }

    /// `q′ = φ′₁ + φ′₂j`
    pub fn q_prime(&self) -> ComplexMatrix {
        quaternion(self.phi1_prime, self.phi2_prime)
    }
}

#[derive(Clone, Debug)]
pub struct HiggsExtraction {
    pub fields: HiggsFields,
    /// `Σ ρ(aᵢ)[D_F, ρ(a′ᵢ)]`
    pub potential: ComplexMatrix,
    /// The potential rebuilt from the four fields.
    pub reconstructed: ComplexMatrix,
    /// Entrywise distance between the two.
    pub residual: f64,
    pub hermiticity_residual: f64,
    /// `‖q′ − q*‖` when the potential is self-adjoint.
    pub doublet_residual: Option<f64>,
}

/// Tolerance on the hermiticity of the potential before `q′ = q*` is asserted.
pub const SELF_ADJOINT_TOL: f64 = 1e-12;

/// `φ₁ = Σ λ(α′ − λ′)`, `φ₂ = Σ λβ′`, `φ′₁ = Σ α(λ′ − α′) + ββ̄′`,
/// `φ′₂ = Σ β(λ̄′ − ᾱ′) − αβ′`.
pub fn higgs_fields(pairs: &[(AlgebraElement, AlgebraElement)]) -> HiggsFields {
    let mut f = HiggsFields {
        phi1: ZERO,
        phi2: ZERO,
        phi1_prime: ZERO,
        phi2_prime: ZERO,
    };
    for (a, b) in pairs {
        let (l, al, be) = internal_parts(a);
        let (lp, alp, bep) = internal_parts(b);
        f.phi1 += l * (alp - lp);
        f.phi2 += l * bep;
        f.phi1_prime += al * (lp - alp) + be * bep.conj();
        f.phi2_prime += be * (lp.conj() - alp.conj()) - al * bep;
    }
    f
}

/// Computes the Higgs fields from the scalar formulas and checks them against
/// the commutator potential entry by entry.
pub fn higgs_from_fluctuation(
    t: &InternalTriple,
    pairs: &[(AlgebraElement, AlgebraElement)],
) -> Result<HiggsExtraction> {
    let alg = &t.triple.algebra;
    let mut potential = ComplexMatrix::zeros(t.basis.dim(), t.basis.dim());
    for (a, b) in pairs {
        alg.ensure_conforms(a)?;
        alg.ensure_conforms(b)?;
        potential += &(&t.triple.rho(a)? * &t.triple.commutator(b)?);
    }
    let fields = higgs_fields(pairs);
    let HiggsFields {
        phi1,
        phi2,
        phi1_prime: p1,
        phi2_prime: p2,
    } = fields.clone();
    use Particle::*;
    let mut rec = ComplexMatrix::zeros(t.basis.dim(), t.basis.dim());
    let y = |r, c| t.yukawa_block(r, c);
    for (row, col, coeff, src) in [
        (UR, UL, phi1, (UR, UL)),
        (UR, DL, phi2, (UR, UL)),
        (DR, UL, -phi2.conj(), (DR, DL)),
        (DR, DL, phi1.conj(), (DR, DL)),
        (UL, UR, p1, (UL, UR)),
        (UL, DR, p2, (DL, DR)),
        (DL, UR, -p2.conj(), (UL, UR)),
        (DL, DR, p1.conj(), (DL, DR)),
        (ER, NuL, -phi2.conj(), (ER, EL)),
        (ER, EL, phi1.conj(), (ER, EL)),
        (NuL, ER, p2, (EL, ER)),
        (EL, ER, p1.conj(), (EL, ER)),
    ] {
        t.place(&mut rec, row, col, &y(src.0, src.1).scale(coeff));
    }
    let residual = potential.max_abs_diff(&rec);
    let scale = 1.0 + potential.max_abs().max(rec.max_abs());
    if residual > 1e-10 * scale {
        return Err(Error::InternalConsistency {
            what: "Higgs fields against the commutator potential".into(),
            residual,
        });
    }
    let hermiticity_residual = potential.hermiticity_residual();
    let doublet_residual = (hermiticity_residual <= SELF_ADJOINT_TOL * scale)
        .then(|| fields.q_prime().max_abs_diff(&fields.q().adjoint()));
    Ok(HiggsExtraction {
        fields,
        potential,
        reconstructed: rec,
        residual,
        hermiticity_residual,
        doublet_residual,
    })
}

/// Pointwise values of the gauge fields: `Λ` for `U(1)`, `Q` (2x2) for
/// `SU(2)`, `V` (3x3) for `U(3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFieldSample {
    pub lambda: C64,
    pub q: ComplexMatrix,
    pub v: ComplexMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeMatrices {
    /// Basis `(u_L, d_L, u_R, d_R) ⊗ colour`.
    pub quark: ComplexMatrix,
    /// Basis `(e_R, ν_L, e_L)`.
    pub lepton: ComplexMatrix,
    /// The `V` actually used.
    pub v: ComplexMatrix,
    /// Coefficient of `Λ` on the diagonal for each species, when `Trace V = Λ` is imposed.
    pub hypercharges: Option<Vec<(Particle, f64)>>,
}

fn gauge_matrices(lambda: C64, q: &ComplexMatrix, v: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let one3 = ComplexMatrix::identity(3);
    let mut quark = ComplexMatrix::zeros(12, 12);
    quark.set_block(0, 0, &(&one3.scale(q[(0, 0)]) + v));
    quark.set_block(0, 3, &one3.scale(q[(0, 1)]));
    quark.set_block(3, 0, &one3.scale(q[(1, 0)]));
    quark.set_block(3, 3, &(&one3.scale(q[(1, 1)]) + v));
    quark.set_block(6, 6, &(&one3.scale(lambda) + v));
    quark.set_block(9, 9, &(&one3.scale(-lambda) + v));
    let mut lepton = ComplexMatrix::zeros(3, 3);
    lepton[(0, 0)] = lambda.scale(-2.0);
    lepton[(1, 1)] = q[(0, 0)] - lambda;
    lepton[(1, 2)] = q[(0, 1)];
    lepton[(2, 1)] = q[(1, 0)];
    lepton[(2, 2)] = q[(1, 1)] - lambda;
    (quark, lepton)
}

/// Assembles the gauge part of `A + JAJ⁻¹` on quarks and leptons. With
/// `enforce_trace`, `V` is replaced by `V′ + Λ/3` where `V′` is its traceless part.
pub fn assemble_gauge_matrices(gf: &GaugeFieldSample, enforce_trace: bool) -> Result<GaugeMatrices> {
    if gf.q.rows() != 2 || gf.q.cols() != 2 || gf.v.rows() != 3 || gf.v.cols() != 3 {
        return Err(Error::Shape("gauge sample needs a 2x2 Q and a 3x3 V".into()));
    }
    gf.q.ensure_finite()?;
    gf.v.ensure_finite()?;
    let one3 = ComplexMatrix::identity(3);
    let v = if enforce_trace {
        let traceless = &gf.v - &one3.scale(gf.v.trace() / 3.0);
        &traceless + &one3.scale(gf.lambda / 3.0)
    } else {
        gf.v.clone()
    };
    let (quark, lepton) = gauge_matrices(gf.lambda, &gf.q, &v);
    let hypercharges = enforce_trace.then(|| {
        let (qu, le) = gauge_matrices(ONE, &ComplexMatrix::zeros(2, 2), &one3.scale_real(1.0 / 3.0));
        let mut out = Vec::new();
        for (k, p) in Particle::ALL[..4].iter().enumerate() {
            out.push((*p, qu[(3 * k, 3 * k)].re));
        }
        for (k, p) in Particle::ALL[4..].iter().enumerate() {
            out.push((*p, le[(k, k)].re));
        }
        out
    });
    Ok(GaugeMatrices {
        quark,
        lepton,
        v,
        hypercharges,
    })
}

/// `‖a*a − 1‖_max`
pub fn unitarity_residual(a: &AlgebraElement) -> f64 {
    let n = a.matrix().rows();
    (&a.matrix().adjoint() * a.matrix()).max_abs_diff(&ComplexMatrix::identity(n))
}

/// Dimension of the Lie algebra `{X : X + X* = 0}` of the unitary group of `alg`.
pub fn unitary_lie_dimension(alg: &FiniteStarAlgebra) -> usize {
    let basis = alg.basis();
    let n = basis.len();
    // column k = coordinates of X_k + X_k*
    let mut a = alloc::vec![0.0; n * n];
    for (k, b) in basis.iter().enumerate() {
        let x = alg.coordinates(&b.add(&b.adjoint()));
        for (i, v) in x.into_iter().enumerate() {
            a[i * n + k] = v;
        }
    }
    n - real_rank(n, n, &a, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluctuations::PotentialSpec;
    use crate::random::{self, rng};
    use crate::triple::{check_axioms, AxiomId};

    fn yukawa(g: usize, seed: u64) -> YukawaData {
        let mut r = rng(seed);
        YukawaData {
            mu: random::complex_matrix(&mut r, g, g),
            md: random::complex_matrix(&mut r, g, g),
            ml: random::complex_matrix(&mut r, g, g),
        }
    }

    fn scalar_yukawa(u: f64, d: f64, l: f64) -> YukawaData {
        YukawaData {
            mu: ComplexMatrix::scalar(C64::new(u, 0.0)),
            md: ComplexMatrix::scalar(C64::new(d, 0.0)),
            ml: ComplexMatrix::scalar(C64::new(l, 0.0)),
        }
    }

    #[test]
    fn dimensions() {
        let b = FermionBasis::new(3).unwrap();
        assert_eq!(b.dim(), 90);
        assert_eq!(internal_algebra().real_dim(), 24);
        assert_eq!(b.label(b.index(true, 1, Particle::DR, 2)), "bar_d_R[g1,c2]");
    }

    #[test]
    fn identity_and_right_handed_action() {
        let b = FermionBasis::new(1).unwrap();
        let alg = internal_algebra();
        assert_eq!(
            represent_internal(&b, alg.identity().matrix()),
            ComplexMatrix::identity(30)
        );
        let two = C64::new(0.0, 2.0);
        let a = internal_element(two, ZERO, ZERO, &ComplexMatrix::zeros(3, 3)).unwrap();
        let r = represent_internal(&b, a.matrix());
        let ur = b.index(false, 0, Particle::UR, 1);
        let dr = b.index(false, 0, Particle::DR, 1);
        let er = b.index(false, 0, Particle::ER, 0);
        assert_eq!(r[(ur, ur)], two);
        assert_eq!(r[(dr, dr)], two.conj());
        assert_eq!(r[(er, er)], two.conj());
    }

    #[test]
    fn representation_is_a_star_homomorphism() {
        let b = FermionBasis::new(2).unwrap();
        let alg = internal_algebra();
        let mut r = rng(4);
        for _ in 0..20 {
            let x = alg.random_element(&mut r);
            let y = alg.random_element(&mut r);
            let rx = represent_internal(&b, x.matrix());
            let ry = represent_internal(&b, y.matrix());
            assert!(represent_internal(&b, x.mul(&y).matrix()).max_abs_diff(&(&rx * &ry)) < 1e-12);
            assert!(represent_internal(&b, x.adjoint().matrix()).max_abs_diff(&rx.adjoint()) < 1e-12);
        }
    }

    #[test]
    fn yukawa_spectrum() {
        let t = InternalTriple::new(scalar_yukawa(1.0, 2.0, 3.0), DegeneracyAxis::Color).unwrap();
        let ev = crate::matrix::hermitian_eigen(&t.triple.d).unwrap().values;
        let count = |x: f64| ev.iter().filter(|v| (**v - x).abs() < 1e-12).count();
        // each sector: quarks ±1, ±2 three times, leptons ±3 and 0
        assert_eq!(count(1.0), 6);
        assert_eq!(count(-2.0), 6);
        assert_eq!(count(3.0), 2);
        assert_eq!(count(0.0), 2);
        let g = chirality(&t.basis);
        assert_eq!(g.anticommutator(&t.triple.d).max_abs(), 0.0);
    }

    #[test]
    fn zero_yukawa_gives_zero_dirac() {
        let d = build_dirac(&scalar_yukawa(0.0, 0.0, 0.0), DegeneracyAxis::Color).unwrap();
        assert_eq!(d.max_abs(), 0.0);
    }

    #[test]
    fn j_swaps_sectors_and_squares_to_one() {
        let b = FermionBasis::new(1).unwrap();
        let j = real_structure(&b);
        assert_eq!(j.squared(), ComplexMatrix::identity(30));
        let mut xi = alloc::vec![ZERO; 30];
        xi[b.index(false, 0, Particle::UL, 0)] = ONE;
        let out = j.apply(&xi);
        assert_eq!(out[b.index(true, 0, Particle::UL, 0)], ONE);
    }

    #[test]
    fn internal_triple_passes_axioms() {
        for g in [1, 3] {
            let t = InternalTriple::new(yukawa(g, 9), DegeneracyAxis::Color).unwrap();
            let rep = check_axioms(&t.triple).unwrap();
            assert!(rep.all_applicable_pass(), "g = {g}: {:?}", rep.failed());
            assert!(rep.max_residual() < 1e-10);
        }
    }

    #[test]
    fn generation_axis_breaks_order_one() {
        let mut r = rng(2);
        let y = YukawaData {
            mu: random::complex_matrix(&mut r, 3, 3),
            md: random::complex_matrix(&mut r, 3, 3),
            ml: ComplexMatrix::scalar(ONE),
        };
        let t = InternalTriple::new(y, DegeneracyAxis::Generation).unwrap();
        let rep = check_axioms(&t.triple).unwrap();
        assert_eq!(rep.failed(), [AxiomId::OrderOne]);
    }

    #[test]
    fn identity_pair_gives_no_higgs() {
        let t = InternalTriple::new(yukawa(1, 1), DegeneracyAxis::Color).unwrap();
        let one = t.triple.algebra.identity();
        let h = higgs_from_fluctuation(&t, &[(one.clone(), one)]).unwrap();
        assert_eq!(h.fields.phi1, ZERO);
        assert_eq!(h.fields.phi2, ZERO);
        assert_eq!(h.potential.max_abs(), 0.0);
    }

    #[test]
    fn single_pair_fields() {
        let t = InternalTriple::new(yukawa(1, 1), DegeneracyAxis::Color).unwrap();
        let z = ComplexMatrix::zeros(3, 3);
        let a = internal_element(ONE, ZERO, ZERO, &z).unwrap();
        let b = internal_element(ZERO, ZERO, ONE, &z).unwrap();
        let h = higgs_from_fluctuation(&t, &[(a, b)]).unwrap();
        assert_eq!(h.fields.phi1, ZERO);
        assert_eq!(h.fields.phi2, ONE);
        assert!(h.residual < 1e-12);
    }

    #[test]
    fn self_adjoint_potential_gives_doublet_relation() {
        let t = InternalTriple::new(yukawa(3, 5), DegeneracyAxis::Color).unwrap();
        let alg = &t.triple.algebra;
        let mut r = rng(6);
        let pairs = (0..3)
            .map(|_| (alg.random_element(&mut r), alg.random_element(&mut r)))
            .collect();
        let spec = PotentialSpec::new(pairs).self_adjoint(&alg.identity());
        let h = higgs_from_fluctuation(&t, &spec.pairs).unwrap();
        assert!(h.residual < 1e-12);
        assert!(h.doublet_residual.unwrap() < 1e-12);
    }

    #[test]
    fn hypercharges_from_trace_condition() {
        let gf = GaugeFieldSample {
            lambda: ONE,
            q: ComplexMatrix::zeros(2, 2),
            v: ComplexMatrix::zeros(3, 3),
        };
        let m = assemble_gauge_matrices(&gf, true).unwrap();
        let y: Vec<f64> = m.hypercharges.unwrap().iter().map(|p| p.1).collect();
        let expect = [1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0, -2.0 / 3.0, -2.0, -1.0, -1.0];
        for (a, b) in y.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((m.v.trace() - ONE).norm() < 1e-15);
    }

    #[test]
    fn left_blocks_carry_q() {
        let mut r = rng(8);
        let q = random::complex_matrix(&mut r, 2, 2);
        let gf = GaugeFieldSample {
            lambda: ZERO,
            q: q.clone(),
            v: ComplexMatrix::zeros(3, 3),
        };
        let m = assemble_gauge_matrices(&gf, false).unwrap();
        assert_eq!(m.quark.submatrix(0, 0, 6, 6), q.kron(&ComplexMatrix::identity(3)));
        assert_eq!(m.lepton.submatrix(1, 1, 2, 2), q);
        assert!(m.hypercharges.is_none());
    }

    #[test]
    fn unitary_group_dimension() {
        assert_eq!(unitary_lie_dimension(&internal_algebra()), 13);
        let alg = internal_algebra();
        let u = alg.random_unitary(&mut rng(3));
        assert!(unitarity_residual(&u) < 1e-12);
        let (l, al, be) = internal_parts(&u);
        assert!((l.norm() - 1.0).abs() < 1e-12);
        assert!((al.norm_sqr() + be.norm_sqr() - 1.0).abs() < 1e-12);
    }
}
