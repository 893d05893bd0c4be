use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Closed axis-aligned box `{x : lower_i <= x_i <= upper_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BoxWire", into = "BoxWire")]
pub struct BoxDomain {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct BoxWire {
    lower: Vec<String>,
    upper: Vec<String>,
}

impl TryFrom<BoxWire> for BoxDomain {
    type Error = Error;

    fn try_from(w: BoxWire) -> Result<Self> {
        BoxDomain::new(rational::parse_vec(&w.lower)?, rational::parse_vec(&w.upper)?)
    }
}

impl From<BoxDomain> for BoxWire {
    fn from(b: BoxDomain) -> Self {
        BoxWire {
            lower: rational::format_vec(&b.lower),
            upper: rational::format_vec(&b.upper),
        }
    }
}

impl BoxDomain {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::BadInput(format!(
                "box bound {i} has lower {} > upper {}",
                lower[i], upper[i]
            )));
        }
        Ok(BoxDomain { lower, upper })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (l, u))| l <= x && x <= u)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l == u)
    }

    /// Coordinates pinned by `lower_i = upper_i`.
    pub fn fixed_coordinates(&self) -> BTreeMap<usize, Rational> {
        (0..self.dim())
            .filter(|&i| self.lower[i] == self.upper[i])
            .map(|i| (i, self.lower[i].clone()))
            .collect()
    }

    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.lower[i] != self.upper[i]).collect()
    }

    /// The box on the free coordinates only.
    pub fn reduced(&self) -> BoxDomain {
        let idx = self.free_indices();
        BoxDomain {
            lower: idx.iter().map(|&i| self.lower[i].clone()).collect(),
            upper: idx.iter().map(|&i| self.upper[i].clone()).collect(),
        }
    }

    /// `self × other`.
    pub fn product(&self, other: &BoxDomain) -> BoxDomain {
        let mut lower = self.lower.clone();
        lower.extend(other.lower.iter().cloned());
        let mut upper = self.upper.clone();
        upper.extend(other.upper.iter().cloned());
        BoxDomain { lower, upper }
    }

    /// Number of extreme points counted over all coordinates, `2^dim`.
    pub fn vertex_count(&self) -> u64 {
        assert!(self.dim() < 64, "too many coordinates to enumerate vertices");
        1u64 << self.dim()
    }

    /// The `index`-th vertex in lexicographic order: coordinate 0 is the most
    /// significant digit and `lower` precedes `upper`.
    pub fn vertex(&self, index: u64) -> Vec<Rational> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                if (index >> (d - 1 - i)) & 1 == 0 {
                    self.lower[i].clone()
                } else {
                    self.upper[i].clone()
                }
            })
            .collect()
    }
}
