//! JSON file formats for matrices, algebras, triples and the Connes-Lott inputs.

use serde::{Deserialize, Serialize};

use ncg_core::algebra::{AlgebraElement, Block, Field, FiniteStarAlgebra};
use ncg_core::connes_lott::{internal_element, GaugeFieldSample, YukawaData};
use ncg_core::matrix::{ComplexMatrix, C64};
use ncg_core::triple::{FiniteSpectralTriple, RealStructure};
use ncg_core::{Error, Representation, Result};

/// Row-major `{"rows", "cols", "re", "im"}`; `im` may be omitted for real matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.rows * self.cols;
        if self.re.len() != n || !(self.im.is_empty() || self.im.len() == n) {
            return Err(Error::Shape(format!(
                "matrix declares {}x{} but has {} real and {} imaginary entries",
                self.rows,
                self.cols,
                self.re.len(),
                self.im.len()
            )));
        }
        let im = if self.im.is_empty() {
            vec![0.0; n]
        } else {
            self.im.clone()
        };
        let m = ComplexMatrix::from_parts(self.rows, self.cols, &self.re, &im)?;
        m.ensure_finite()?;
        Ok(m)
    }
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.re(),
            im: m.im(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub field: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub blocks: Vec<BlockJson>,
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<FiniteStarAlgebra> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let field = Field::from_symbol(&b.field).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown field {:?}, expected R, C or H", b.field))
                })?;
                Ok(Block { field, n: b.n })
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteStarAlgebra::new(blocks)
    }
}

impl From<&FiniteStarAlgebra> for AlgebraJson {
    fn from(a: &FiniteStarAlgebra) -> Self {
        Self {
            blocks: a
                .blocks()
                .iter()
                .map(|b| BlockJson {
                    field: b.field.symbol().into(),
                    n: b.n,
                })
                .collect(),
        }
    }
}

/// Either the images of the real basis, or the defining representation
/// repeated `defining` times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepJson {
    Basis { dim: usize, basis: Vec<MatrixJson> },
    Defining { defining: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealStructureJson {
    #[serde(rename = "U")]
    pub u: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleJson {
    pub algebra: AlgebraJson,
    pub rep: RepJson,
    #[serde(rename = "D")]
    pub d: MatrixJson,
    #[serde(default)]
    pub gamma: Option<MatrixJson>,
    #[serde(rename = "J", default)]
    pub j: Option<RealStructureJson>,
    #[serde(default)]
    pub ko: u8,
}

impl TripleJson {
    pub fn to_triple(&self) -> Result<FiniteSpectralTriple> {
        let alg = self.algebra.to_algebra()?;
        let rep = match &self.rep {
            RepJson::Basis { dim, basis } => {
                let images = basis
                    .iter()
                    .map(MatrixJson::to_matrix)
                    .collect::<Result<Vec<_>>>()?;
                Representation::new(&alg, *dim, images)?
            }
            RepJson::Defining { defining } => {
                if *defining == 0 {
                    return Err(Error::InvalidInput(
                        "defining multiplicity must be positive".into(),
                    ));
                }
                Representation::defining(&alg).amplified(*defining)
            }
        };
        let gamma = self.gamma.as_ref().map(MatrixJson::to_matrix).transpose()?;
        let j = self
            .j
            .as_ref()
            .map(|j| j.u.to_matrix().map(RealStructure::new))
            .transpose()?;
        if self.ko > 7 {
            return Err(Error::InvalidInput(format!(
                "KO dimension must be in 0..=7, got {}",
                self.ko
            )));
        }
        FiniteSpectralTriple::new(alg, rep, self.d.to_matrix()?, gamma, j, self.ko)
    }
}

impl From<&FiniteSpectralTriple> for TripleJson {
    fn from(t: &FiniteSpectralTriple) -> Self {
        Self {
            algebra: (&t.algebra).into(),
            rep: RepJson::Basis {
                dim: t.rep.dim(),
                basis: t.rep.images().iter().map(MatrixJson::from).collect(),
            },
            d: (&t.d).into(),
            gamma: t.gamma.as_ref().map(MatrixJson::from),
            j: t.j.as_ref().map(|j| RealStructureJson { u: (&j.u).into() }),
            ko: t.ko,
        }
    }
}

/// Algebra elements as full block-diagonal matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairsJson {
    pub pairs: Vec<[MatrixJson; 2]>,
}

impl PairsJson {
    pub fn to_pairs(&self, alg: &FiniteStarAlgebra) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
        self.pairs
            .iter()
            .map(|[a, b]| Ok((alg.element(a.to_matrix()?)?, alg.element(b.to_matrix()?)?)))
            .collect()
    }
}

/// `[re, im]`
pub type ComplexJson = [f64; 2];

fn complex(z: ComplexJson) -> C64 {
    C64::new(z[0], z[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YukawaJson {
    #[serde(rename = "Mu")]
    pub mu: MatrixJson,
    #[serde(rename = "Md")]
    pub md: MatrixJson,
    #[serde(rename = "Ml")]
    pub ml: MatrixJson,
}

impl YukawaJson {
    pub fn to_yukawa(&self) -> Result<YukawaData> {
        Ok(YukawaData {
            mu: self.mu.to_matrix()?,
            md: self.md.to_matrix()?,
            ml: self.ml.to_matrix()?,
        })
    }
}

/// `(λ, α + βj, m)`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InternalElementJson {
    pub lambda: ComplexJson,
    pub alpha: ComplexJson,
    pub beta: ComplexJson,
    pub m: MatrixJson,
}

impl InternalElementJson {
    pub fn to_element(&self) -> Result<AlgebraElement> {
        internal_element(
            complex(self.lambda),
            complex(self.alpha),
            complex(self.beta),
            &self.m.to_matrix()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InternalPairsJson {
    pub pairs: Vec<[InternalElementJson; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeFieldJson {
    #[serde(rename = "Lambda")]
    pub lambda: ComplexJson,
    #[serde(rename = "Q")]
    pub q: MatrixJson,
    #[serde(rename = "V")]
    pub v: MatrixJson,
}

impl GaugeFieldJson {
    pub fn to_sample(&self) -> Result<GaugeFieldSample> {
        Ok(GaugeFieldSample {
            lambda: complex(self.lambda),
            q: self.q.to_matrix()?,
            v: self.v.to_matrix()?,
        })
    }
}

/// Explicit spectrum: `[[λ, multiplicity], ...]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub eigenvalues: Vec<(f64, u64)>,
}
