//! Exact symmetric matrices over the rationals and certified PSD testing.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Dense symmetric matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixWire> for SymMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self> {
        let rows = parse_square(w.n, &w.entries)?;
        SymMatrix::from_rows(rows)
    }
}

impl From<SymMatrix> for MatrixWire {
    fn from(m: SymMatrix) -> Self {
        MatrixWire {
            n: m.dim,
            entries: m.to_string_rows(),
        }
    }
}

/// Parses an `n × n` grid of rational strings.
pub(crate) fn parse_square(n: usize, rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    if n == 0 {
        return Err(Error::Parse("matrix dimension must be positive".into()));
    }
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix entries are not {n}x{n}")));
    }
    rows.iter().map(|r| rational::parse_vec(r)).collect()
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle `i <= j`.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Checks squareness and symmetry.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadInput("matrix rows are not square".into()));
        }
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        let m = SymMatrix { dim, entries };
        for i in 0..dim {
            for j in (i + 1)..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::BadInput(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        if i != j {
            self.entries[j * self.dim + i] = v.clone();
        }
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix add");
        SymMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in mat-vec");
        (0..self.dim).map(|i| rational::dot(self.row(i), v)).collect()
    }

    /// `vᵀ M v`.
    pub fn quad_form(&self, v: &[Rational]) -> Rational {
        rational::dot(v, &self.mul_vec(v))
    }

    /// General product `self · other`; not symmetric in general.
    pub fn mul_dense(&self, other: &Self) -> Vec<Vec<Rational>> {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + self.get(i, k) * other.get(k, j)
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        SymMatrix::from_upper_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| rational::to_f64(self.get(i, j)))
    }

    pub(crate) fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| rational::format_vec(self.row(i)))
            .collect()
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_string_rows()).finish()
    }
}

/// `M = L D Lᵀ` with `L` unit lower triangular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdlFactorization {
    pub lower: Vec<Vec<Rational>>,
    pub diagonal: Vec<Rational>,
}

impl LdlFactorization {
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.diagonal.len();
        SymMatrix::from_upper_fn(n, |i, j| {
            (0..=i.min(j)).fold(Rational::zero(), |acc, k| {
                acc + &self.lower[i][k] * &self.diagonal[k] * &self.lower[j][k]
            })
        })
    }
}

/// Outcome of the exact PSD test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdCertificate {
    /// Every pivot is nonnegative; the factorization reconstructs the input.
    Psd(LdlFactorization),
    /// `vector` satisfies `vᵀ M v = value < 0`.
    NotPsd { vector: Vec<Rational>, value: Rational },
}

impl PsdCertificate {
    pub fn verdict(&self) -> bool {
        matches!(self, PsdCertificate::Psd(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            PsdCertificate::Psd(_) => None,
            PsdCertificate::NotPsd { vector, .. } => Some(vector),
        }
    }
}

/// Exact PSD test by symmetric elimination down the diagonal.
///
/// A zero pivot is acceptable only when the rest of its row is zero. The first
/// negative pivot, or zero pivot with a nonzero row, yields a witness obtained
/// by back-substitution through the multipliers recorded so far.
pub fn is_psd(m: &SymMatrix) -> PsdCertificate {
    let n = m.dim();
    let mut work = m.entries.clone();
    let mut lower: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut diagonal = Vec::with_capacity(n);

    for k in 0..n {
        let pivot = work[k * n + k].clone();
        if pivot.is_negative() {
            let mut u = vec![Rational::zero(); n];
            u[k] = Rational::one();
            return fail(m, &lower, u);
        }
        if pivot.is_zero() {
            match ((k + 1)..n).find(|&j| !work[k * n + j].is_zero()) {
                None => {
                    diagonal.push(Rational::zero());
                    continue;
                }
                Some(j) => {
                    // u = t e_k + e_j with t chosen so that uᵀWu = -1
                    let b = &work[k * n + j];
                    let c = &work[j * n + j];
                    let t = -(c + Rational::one()) / (b * rational::int(2));
                    let mut u = vec![Rational::zero(); n];
                    u[k] = t;
                    u[j] = Rational::one();
                    return fail(m, &lower, u);
                }
            }
        }
        for i in (k + 1)..n {
            if work[i * n + k].is_zero() {
                continue;
            }
            let factor = &work[i * n + k] / &pivot;
            for j in i..n {
                let delta = &factor * &work[k * n + j];
                work[i * n + j] -= delta;
            }
            lower[i][k] = factor;
        }
        for i in (k + 1)..n {
            for j in (i + 1)..n {
                work[j * n + i] = work[i * n + j].clone();
            }
        }
        diagonal.push(pivot);
    }
    PsdCertificate::Psd(LdlFactorization { lower, diagonal })
}

fn fail(m: &SymMatrix, lower: &[Vec<Rational>], u: Vec<Rational>) -> PsdCertificate {
    // v = L⁻ᵀ u, so vᵀ M v = uᵀ (L⁻¹ M L⁻ᵀ) u
    let n = u.len();
    let mut v = u;
    for i in (0..n).rev() {
        let mut acc = v[i].clone();
        for (j, vj) in v.iter().enumerate().skip(i + 1) {
            if !lower[j][i].is_zero() {
                acc -= &lower[j][i] * vj;
            }
        }
        v[i] = acc;
    }
    let value = m.quad_form(&v);
    debug_assert!(value.is_negative(), "witness must be strictly negative");
    PsdCertificate::NotPsd { vector: v, value }
}

/// PSD verdict for an integer symmetric matrix (rows of full length) by
/// fraction-free elimination. Same pivot rules as [`is_psd`]; every division
/// is exact, so no gcd work is done. Rows are consumed as scratch space.
pub fn is_psd_integer(mut a: Vec<Vec<BigInt>>) -> bool {
    let n = a.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if a[k][(k + 1)..].iter().any(|v| !v.is_zero()) {
                return false;
            }
            continue;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let row_k = &head[k];
        for (off, row_i) in tail.iter_mut().enumerate() {
            let i = k + 1 + off;
            let aki = &row_k[i];
            for j in i..n {
                let mut v = &pivot * &row_i[j];
                if !aki.is_zero() && !row_k[j].is_zero() {
                    v -= aki * &row_k[j];
                }
                row_i[j] = v / &prev;
            }
        }
        prev = pivot;
    }
    true
}

/// Coefficients `c_0, …, c_n` of `det(λI − M)` (ascending powers), by
/// Faddeev–LeVerrier in exact arithmetic.
pub fn characteristic_polynomial(m: &SymMatrix) -> Vec<Rational> {
    let n = m.dim();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let a = m.rows();
    let mut prev = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut cur = dense_mul(&a, &prev);
        for (i, row) in cur.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = dense_mul(&a, &cur);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / rational::int(k as i64);
        prev = cur;
    }
    coeffs
}

fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Rational::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + &a[i][k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// PSD test via sign alternation of the characteristic polynomial.
///
/// For a real symmetric matrix every root is real, so all roots are
/// nonnegative iff `(-1)^(n-i) c_i >= 0` for every coefficient.
pub fn is_psd_charpoly(m: &SymMatrix) -> bool {
    let coeffs = characteristic_polynomial(m);
    let n = m.dim();
    coeffs.iter().enumerate().all(|(i, c)| {
        if (n - i) % 2 == 0 {
            !c.is_negative()
        } else {
            !c.is_positive()
        }
    })
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn invert(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.dim();
    let mut a = m.rows();
    let mut inv = SymMatrix::identity(n).rows();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let da = &f * &a[col][j];
                a[r][j] -= da;
                let di = &f * &inv[col][j];
                inv[r][j] -= di;
            }
        }
    }
    // the inverse of a symmetric matrix is symmetric
    SymMatrix::from_rows(inv)
}

/// `minᵢ (Mᵢᵢ − Σ_{j≠i} |Mᵢⱼ|)`, a lower bound on `λ_min(M)`.
pub fn gershgorin_lower_bound(m: &SymMatrix) -> Rational {
    let n = m.dim();
    (0..n)
        .map(|i| {
            let radius = (0..n)
                .filter(|&j| j != i)
                .fold(Rational::zero(), |acc, j| acc + m.get(i, j).abs());
            m.get(i, i) - radius
        })
        .min()
        .unwrap_or_else(Rational::zero)
}

/// Floating-point eigenvalues in ascending order. Cross-checks only.
pub fn approx_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    if m.dim() == 0 {
        return Vec::new();
    }
    let mut vals: Vec<f64> = SymmetricEigen::new(m.to_f64()).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn mat(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_is_psd() {
        let cert = is_psd(&SymMatrix::identity(3));
        assert!(cert.verdict());
        if let PsdCertificate::Psd(f) = cert {
            assert_eq!(f.reconstruct(), SymMatrix::identity(3));
        }
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = mat(&[&[1, 2], &[2, 1]]);
        match is_psd(&m) {
            PsdCertificate::NotPsd { vector, value } => {
                assert!(value.is_negative());
                assert_eq!(m.quad_form(&vector), value);
            }
            _ => panic!("expected failure"),
        }
        let v = [int(1), int(-1)];
        assert_eq!(m.quad_form(&v), int(-2));
        assert!(!is_psd_charpoly(&m));
    }

    #[test]
    fn zero_diagonal_with_coupling_is_indefinite() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        let cert = is_psd(&m);
        assert!(!cert.verdict());
        assert!(m.quad_form(cert.witness().unwrap()).is_negative());
    }

    #[test]
    fn zero_row_is_skipped() {
        let m = mat(&[&[0, 0, 0], &[0, 2, 1], &[0, 1, 1]]);
        match is_psd(&m) {
            PsdCertificate::Psd(f) => {
                assert_eq!(f.diagonal[0], int(0));
                assert_eq!(f.reconstruct(), m);
            }
            _ => panic!("expected psd"),
        }
    }

    #[test]
    fn negative_pivot_after_elimination() {
        // leading pivot positive, Schur complement negative
        let m = mat(&[&[1, 2, 0], &[2, 3, 0], &[0, 0, 5]]);
        let cert = is_psd(&m);
        assert!(!cert.verdict());
        assert!(m.quad_form(cert.witness().unwrap()).is_negative());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(
            characteristic_polynomial(&SymMatrix::identity(2)),
            vec![int(1), int(-2), int(1)]
        );
        assert!(is_psd_charpoly(&SymMatrix::identity(2)));
        let z = SymMatrix::zeros(2);
        assert_eq!(characteristic_polynomial(&z), vec![int(0), int(0), int(1)]);
        assert!(is_psd_charpoly(&z));
        assert!(is_psd(&z).verdict());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&SymMatrix::identity(3)).unwrap(), SymMatrix::identity(3));
        let half = SymMatrix::from_diagonal(&[ratio(1, 2)]);
        assert_eq!(invert(&half).unwrap(), SymMatrix::from_diagonal(&[int(2)]));
        assert_eq!(invert(&mat(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn invert_needs_row_swap() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul_dense(&inv), SymMatrix::identity(2).rows());
    }

    #[test]
    fn gershgorin_examples() {
        assert_eq!(gershgorin_lower_bound(&SymMatrix::identity(4)), int(1));
        assert_eq!(gershgorin_lower_bound(&mat(&[&[2, 1], &[1, 2]])), int(1));
        assert_eq!(gershgorin_lower_bound(&mat(&[&[1, -3], &[-3, 5]])), int(-2));
    }

    #[test]
    fn approx_eigenvalues_sorted() {
        let ev = approx_eigenvalues(&mat(&[&[1, 2], &[2, 1]]));
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_and_symmetry_check() {
        let m = SymMatrix::from_rows(vec![
            vec![ratio(1, 2), int(-3)],
            vec![int(-3), ratio(4, 6)],
        ])
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[["1/2","-3"],["-3","2/3"]]}"#);
        assert_eq!(serde_json::from_str::<SymMatrix>(&s).unwrap(), m);
        let asym = r#"{"n":2,"entries":[["1","2"],["3","1"]]}"#;
        assert!(serde_json::from_str::<SymMatrix>(asym).is_err());
    }

    fn to_integer_rows(m: &SymMatrix) -> Vec<Vec<BigInt>> {
        m.rows().iter().map(|r| r.iter().map(|v| v.to_integer()).collect()).collect()
    }

    #[test]
    fn integer_elimination_examples() {
        assert!(is_psd_integer(to_integer_rows(&mat(&[&[2, 1], &[1, 2]]))));
        assert!(is_psd_integer(to_integer_rows(&mat(&[&[0, 0], &[0, 3]]))));
        assert!(!is_psd_integer(to_integer_rows(&mat(&[&[0, 1], &[1, 0]]))));
        assert!(!is_psd_integer(to_integer_rows(&mat(&[&[1, 2], &[2, 1]]))));
        assert!(is_psd_integer(Vec::new()));
    }

    proptest::proptest! {
        #[test]
        fn integer_elimination_matches_rational(
            n in 1usize..=6,
            raw in proptest::collection::vec(-3i64..=3, 36),
            rank in 0usize..=6,
        ) {
            // mix of indefinite matrices and low-rank Gram matrices
            let m = if rank == 6 {
                SymMatrix::from_upper_fn(n, |i, j| int(raw[i * 6 + j]))
            } else {
                SymMatrix::from_upper_fn(n, |i, j| {
                    int((0..rank.min(n)).map(|r| raw[r * 6 + i] * raw[r * 6 + j]).sum())
                })
            };
            proptest::prop_assert_eq!(is_psd_integer(to_integer_rows(&m)), is_psd(&m).verdict());
        }
    }
}
