//! Positive semidefiniteness of interval families of symmetric matrices.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_psd, parse_square, PsdCertificate, SymMatrix};
use crate::poly::{AffinePencil, BoxDomain};
use crate::rational::{self, Rational};

/// All symmetric `M` with `lower_ij <= m_ij <= upper_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntervalWire", into = "IntervalWire")]
pub struct IntervalSymMatrix {
    lower: SymMatrix,
    upper: SymMatrix,
}

#[derive(Serialize, Deserialize)]
struct IntervalWire {
    n: usize,
    lower: Vec<Vec<String>>,
    upper: Vec<Vec<String>>,
}

impl TryFrom<IntervalWire> for IntervalSymMatrix {
    type Error = Error;

    fn try_from(w: IntervalWire) -> Result<Self> {
        let lower = SymMatrix::from_rows(parse_square(w.n, &w.lower)?)?;
        let upper = SymMatrix::from_rows(parse_square(w.n, &w.upper)?)?;
        IntervalSymMatrix::new(lower, upper)
    }
}

impl From<IntervalSymMatrix> for IntervalWire {
    fn from(f: IntervalSymMatrix) -> Self {
        IntervalWire {
            n: f.dim(),
            lower: f.lower.to_string_rows(),
            upper: f.upper.to_string_rows(),
        }
    }
}

impl IntervalSymMatrix {
    pub fn new(lower: SymMatrix, upper: SymMatrix) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                found: upper.dim(),
            });
        }
        let n = lower.dim();
        for i in 0..n {
            for j in i..n {
                if lower.get(i, j) > upper.get(i, j) {
                    return Err(Error::BadInput(format!(
                        "interval entry ({i}, {j}) has lower bound above upper bound"
                    )));
                }
            }
        }
        Ok(IntervalSymMatrix { lower, upper })
    }

    /// The single-matrix family `{m}`.
    pub fn point(m: SymMatrix) -> Self {
        IntervalSymMatrix {
            lower: m.clone(),
            upper: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &SymMatrix {
        &self.lower
    }

    pub fn upper(&self) -> &SymMatrix {
        &self.upper
    }

    pub fn contains(&self, m: &SymMatrix) -> bool {
        let n = self.dim();
        m.dim() == n
            && (0..n).all(|i| {
                (i..n).all(|j| self.lower.get(i, j) <= m.get(i, j) && m.get(i, j) <= self.upper.get(i, j))
            })
    }

    /// Off-diagonal pairs `(i, j)`, `i < j`, with a nondegenerate interval, in
    /// lexicographic order.
    pub fn free_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lower.get(i, j) != self.upper.get(i, j))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalViolation {
    pub matrix: SymMatrix,
    pub vector: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPsdResult {
    pub all_psd: bool,
    pub violation: Option<IntervalViolation>,
}

#[derive(Serialize)]
struct IntervalResultWire {
    all_psd: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_matrix: Option<SymMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_vector: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_value: Option<String>,
}

impl Serialize for IntervalPsdResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalResultWire {
            all_psd: self.all_psd,
            witness_matrix: self.violation.as_ref().map(|v| v.matrix.clone()),
            witness_vector: self.violation.as_ref().map(|v| rational::format_vec(&v.vector)),
            witness_value: self.violation.as_ref().map(|v| rational::format(&v.value)),
        }
        .serialize(s)
    }
}

/// Vertex matrix for the given pattern: diagonal at its lower bound, free
/// pair `t` at its upper bound iff bit `t` (most significant first) is set.
fn vertex_matrix(f: &IntervalSymMatrix, pairs: &[(usize, usize)], pattern: u64) -> SymMatrix {
    let n = f.dim();
    let mut m = f.lower.clone();
    let k = pairs.len();
    for (t, &(i, j)) in pairs.iter().enumerate() {
        if (pattern >> (k - 1 - t)) & 1 == 1 {
            m.set(i, j, f.upper.get(i, j).clone());
        }
    }
    debug_assert_eq!(m.dim(), n);
    m
}

/// Exact test that every member of the family is PSD.
///
/// Diagonal entries sit at their lower bounds (a nonnegative diagonal shift
/// cannot lower `λ_min`); then, as `λ_min` is concave, checking the
/// `2^(free pairs)` vertex matrices in lexicographic order is exact. The first
/// failing vertex is reported.
pub fn check_interval_psd(f: &IntervalSymMatrix) -> IntervalPsdResult {
    let pairs = f.free_pairs();
    assert!(pairs.len() < 64, "too many free off-diagonal pairs to enumerate");
    let count = 1u64 << pairs.len();
    let violation = (0..count).into_par_iter().find_map_first(|pattern| {
        let m = vertex_matrix(f, &pairs, pattern);
        match is_psd(&m) {
            PsdCertificate::Psd(_) => None,
            PsdCertificate::NotPsd { vector, value } => Some(IntervalViolation {
                matrix: m,
                vector,
                value,
            }),
        }
    });
    IntervalPsdResult {
        all_psd: violation.is_none(),
        violation,
    }
}

/// Variant that also enumerates both diagonal bounds; used to confirm that
/// fixing the diagonal at its lower bound never changes the verdict.
pub fn check_interval_psd_full_diagonal(f: &IntervalSymMatrix) -> bool {
    let n = f.dim();
    let diag: Vec<usize> = (0..n).filter(|&i| f.lower.get(i, i) != f.upper.get(i, i)).collect();
    let pairs = f.free_pairs();
    assert!(diag.len() + pairs.len() < 64);
    let count = 1u64 << (diag.len() + pairs.len());
    (0..count).all(|pattern| {
        let mut m = vertex_matrix(f, &pairs, pattern & ((1u64 << pairs.len()) - 1));
        for (t, &i) in diag.iter().enumerate() {
            if (pattern >> (pairs.len() + t)) & 1 == 1 {
                m.set(i, i, f.upper.get(i, i).clone());
            }
        }
        is_psd(&m).verdict()
    })
}

/// Entrywise exact range of an affine pencil over a box.
///
/// Always a superset of `{L(x) : x ∈ B}`; equal to it when no variable couples
/// two distinct entry pairs.
pub fn interval_enclosure(p: &AffinePencil, b: &BoxDomain) -> Result<IntervalSymMatrix> {
    if p.nvars() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            found: b.dim(),
        });
    }
    let n = p.dim();
    let mut lower = SymMatrix::zeros(n);
    let mut upper = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let (c0, coeffs) = p.entry_affine(i, j);
            let (mut lo, mut hi) = (c0.clone(), c0);
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let a = c * &b.lower()[k];
                let z = c * &b.upper()[k];
                if a <= z {
                    lo += a;
                    hi += z;
                } else {
                    lo += z;
                    hi += a;
                }
            }
            lower.set(i, j, lo);
            upper.set(i, j, hi);
        }
    }
    IntervalSymMatrix::new(lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mat(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn point_family_identity() {
        let r = check_interval_psd(&IntervalSymMatrix::point(SymMatrix::identity(3)));
        assert!(r.all_psd);
        assert!(r.violation.is_none());
    }

    #[test]
    fn off_diagonal_range_breaks_psd() {
        let f = IntervalSymMatrix::new(mat(&[&[1, -2], &[-2, 1]]), mat(&[&[1, 2], &[2, 1]])).unwrap();
        let r = check_interval_psd(&f);
        assert!(!r.all_psd);
        let v = r.violation.unwrap();
        // lexicographically first vertex is the lower bound
        assert_eq!(v.matrix, mat(&[&[1, -2], &[-2, 1]]));
        assert!(f.contains(&v.matrix));
        assert_eq!(v.matrix.quad_form(&v.vector), v.value);
        // the upper vertex is the stated example matrix and also fails
        assert!(!is_psd(&mat(&[&[1, 2], &[2, 1]])).verdict());
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(IntervalSymMatrix::new(SymMatrix::identity(2), SymMatrix::zeros(2)).is_err());
    }

    #[test]
    fn enclosure_of_constant_pencil() {
        let l0 = mat(&[&[2, 1], &[1, 2]]);
        let p = AffinePencil::new(l0.clone(), vec![SymMatrix::zeros(2)]).unwrap();
        let b = BoxDomain::cube(1, int(-1), int(1)).unwrap();
        let f = interval_enclosure(&p, &b).unwrap();
        assert_eq!(f.lower(), &l0);
        assert_eq!(f.upper(), &l0);
    }

    #[test]
    fn enclosure_of_correlated_pencil() {
        // [[x, x], [x, 1]] over [0, 1]
        let p = AffinePencil::new(mat(&[&[0, 0], &[0, 1]]), vec![mat(&[&[1, 1], &[1, 0]])]).unwrap();
        let b = BoxDomain::cube(1, int(0), int(1)).unwrap();
        let f = interval_enclosure(&p, &b).unwrap();
        assert_eq!(f.lower(), &mat(&[&[0, 0], &[0, 1]]));
        assert_eq!(f.upper(), &mat(&[&[1, 1], &[1, 1]]));
        // conservative: L(x) is PSD on [0, 1] (det = x - x^2 >= 0) but the
        // enclosure contains [[0, 1], [1, 1]]
        assert!(!check_interval_psd(&f).all_psd);
        assert!(interval_enclosure(&p, &BoxDomain::cube(2, int(0), int(1)).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = IntervalSymMatrix::new(mat(&[&[1, -2], &[-2, 1]]), mat(&[&[1, 2], &[2, 1]])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":2,"lower":[["1","-2"],["-2","1"]],"upper":[["1","2"],["2","1"]]}"#);
        assert_eq!(serde_json::from_str::<IntervalSymMatrix>(&s).unwrap(), f);
    }
}
