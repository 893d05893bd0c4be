//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are positional: a term is keyed by its exponent vector, whose
//! length always equals `nvars`.

mod pencil;
mod region;

pub use pencil::AffinePencil;
pub use region::BoxDomain;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialWire", into = "PolynomialWire")]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    nvars: usize,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exps: Vec<u32>,
    coef: String,
}

impl TryFrom<PolynomialWire> for Polynomial {
    type Error = Error;

    fn try_from(w: PolynomialWire) -> Result<Self> {
        let mut p = Polynomial::zero(w.nvars);
        let mut seen = BTreeSet::new();
        for t in w.terms {
            if t.exps.len() != w.nvars {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} in a polynomial with {} variables",
                    t.exps.len(),
                    w.nvars
                )));
            }
            if !seen.insert(t.exps.clone()) {
                return Err(Error::Parse(format!("duplicate exponent vector {:?}", t.exps)));
            }
            p.add_term(t.exps, rational::parse(&t.coef)?);
        }
        Ok(p)
    }
}

impl From<Polynomial> for PolynomialWire {
    fn from(p: Polynomial) -> Self {
        PolynomialWire {
            nvars: p.nvars,
            terms: p
                .terms
                .into_iter()
                .map(|(exps, c)| TermWire {
                    exps,
                    coef: rational::format(&c),
                })
                .collect(),
        }
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate polynomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(exps, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, coef: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coef);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coef: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(coef);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximum total degree; `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// `∂p/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * rational::int(e[i] as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Matrix of second partials; symmetric as polynomials.
    pub fn hessian(&self) -> Vec<Vec<Polynomial>> {
        let grad = self.gradient();
        let n = self.nvars;
        let mut h = vec![vec![Polynomial::zero(n); n]; n];
        for i in 0..n {
            for j in i..n {
                let d = grad[i].derivative(j);
                h[j][i] = d.clone();
                h[i][j] = d;
            }
        }
        h
    }

    /// Exact Hessian value at `point`.
    pub fn hessian_at(&self, point: &[Rational]) -> Result<SymMatrix> {
        hessian_value(&self.hessian(), point)
    }

    /// Affine Hessian of a polynomial of degree at most 3.
    pub fn hessian_pencil(&self) -> Result<AffinePencil> {
        let degree = self.degree();
        if degree > 3 {
            return Err(Error::DegreeTooHigh { degree, max: 3 });
        }
        let n = self.nvars;
        let hess = self.hessian();
        let zero_exps = vec![0u32; n];
        let constant = SymMatrix::from_upper_fn(n, |i, j| hess[i][j].coefficient(&zero_exps));
        let coefficients = (0..n)
            .map(|k| {
                let mut e = vec![0u32; n];
                e[k] = 1;
                SymMatrix::from_upper_fn(n, |i, j| hess[i][j].coefficient(&e))
            })
            .collect();
        AffinePencil::new(constant, coefficients)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes the assigned variables and renumbers the rest in order.
    pub fn restrict(&self, assignments: &BTreeMap<usize, Rational>) -> Self {
        assert!(
            assignments.keys().all(|&i| i < self.nvars),
            "restricted variable out of range"
        );
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !assignments.contains_key(i)).collect();
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            for (&i, v) in assignments {
                for _ in 0..e[i] {
                    coef *= v;
                }
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), coef);
        }
        out
    }

    /// Re-embeds into `nvars` variables, placing the existing ones first.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }
}

/// Evaluates a matrix of polynomials (as returned by [`Polynomial::hessian`]).
pub fn hessian_value(hess: &[Vec<Polynomial>], point: &[Rational]) -> Result<SymMatrix> {
    let n = hess.len();
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            out.set(i, j, hess[i][j].eval(point)?);
        }
    }
    Ok(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
