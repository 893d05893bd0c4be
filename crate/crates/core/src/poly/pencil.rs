use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::rational::Rational;

/// Affine symmetric matrix function `L(x) = L₀ + Σ xᵢ Lᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PencilWire", into = "PencilWire")]
pub struct AffinePencil {
    constant: SymMatrix,
    coefficients: Vec<SymMatrix>,
}

#[derive(Serialize, Deserialize)]
struct PencilWire {
    dim: usize,
    nvars: usize,
    constant: SymMatrix,
    coefficients: Vec<SymMatrix>,
}

impl TryFrom<PencilWire> for AffinePencil {
    type Error = Error;

    fn try_from(w: PencilWire) -> Result<Self> {
        if w.coefficients.len() != w.nvars {
            return Err(Error::Parse(format!(
                "pencil declares {} variables but has {} coefficient matrices",
                w.nvars,
                w.coefficients.len()
            )));
        }
        if w.constant.dim() != w.dim {
            return Err(Error::Parse("pencil constant has the wrong dimension".into()));
        }
        AffinePencil::new(w.constant, w.coefficients)
    }
}

impl From<AffinePencil> for PencilWire {
    fn from(p: AffinePencil) -> Self {
        PencilWire {
            dim: p.dim(),
            nvars: p.nvars(),
            constant: p.constant,
            coefficients: p.coefficients,
        }
    }
}

impl AffinePencil {
    pub fn new(constant: SymMatrix, coefficients: Vec<SymMatrix>) -> Result<Self> {
        let dim = constant.dim();
        if let Some(bad) = coefficients.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(AffinePencil {
            constant,
            coefficients,
        })
    }

    pub fn dim(&self) -> usize {
        self.constant.dim()
    }

    pub fn nvars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn constant(&self) -> &SymMatrix {
        &self.constant
    }

    pub fn coefficients(&self) -> &[SymMatrix] {
        &self.coefficients
    }

    pub fn eval(&self, x: &[Rational]) -> Result<SymMatrix> {
        if x.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: x.len(),
            });
        }
        let n = self.dim();
        Ok(SymMatrix::from_upper_fn(n, |i, j| {
            let mut v = self.constant.get(i, j).clone();
            for (xk, lk) in x.iter().zip(&self.coefficients) {
                let c = lk.get(i, j);
                if !c.is_zero() && !xk.is_zero() {
                    v += xk * c;
                }
            }
            v
        }))
    }

    /// Entry `(i, j)` as `(constant, [coefficient of x_k])`.
    pub fn entry_affine(&self, i: usize, j: usize) -> (Rational, Vec<Rational>) {
        (
            self.constant.get(i, j).clone(),
            self.coefficients.iter().map(|m| m.get(i, j).clone()).collect(),
        )
    }
}
