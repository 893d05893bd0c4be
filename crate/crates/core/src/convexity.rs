//! Convexity of polynomials over boxes.
//!
//! Degree at most 3 is decided exactly: the Hessian is affine, so it is PSD on
//! the whole box iff it is PSD at every vertex. Degree 4 and higher gets a
//! sound sufficient test and a sound necessary test, and may end `Unknown`.
//!
//! A box with `lower_i = upper_i` is handled on its affine hull: the pinned
//! coordinates are substituted first and witnesses are re-embedded with a zero
//! direction component on them.

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{is_psd, is_psd_integer, PsdCertificate};
use crate::poly::{hessian_value, AffinePencil, BoxDomain, Polynomial};
use crate::rational::{self, Rational};

/// Denominator used when rationalizing sampled points and directions.
pub const SAMPLE_DENOMINATOR: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificationMode {
    VertexEnumeration,
    ConstantHessian,
    GershgorinSufficient,
    NegativeCurvatureSearch,
}

impl CertificationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificationMode::VertexEnumeration => "exact-vertex-enumeration",
            CertificationMode::ConstantHessian => "constant-hessian",
            CertificationMode::GershgorinSufficient => "gershgorin-sufficient",
            CertificationMode::NegativeCurvatureSearch => "negative-curvature-search",
        }
    }
}

/// A point of the box and a direction with `zᵀ ∇²p(point) z = value < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureWitness {
    pub point: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexityVerdict {
    Convex {
        mode: CertificationMode,
    },
    NotConvex {
        mode: CertificationMode,
        witness: CurvatureWitness,
    },
    Unknown {
        diagnostics: String,
    },
}

impl ConvexityVerdict {
    pub fn is_convex(&self) -> bool {
        matches!(self, ConvexityVerdict::Convex { .. })
    }

    pub fn is_not_convex(&self) -> bool {
        matches!(self, ConvexityVerdict::NotConvex { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            ConvexityVerdict::Convex { .. } => "convex",
            ConvexityVerdict::NotConvex { .. } => "not_convex",
            ConvexityVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&CurvatureWitness> {
        match self {
            ConvexityVerdict::NotConvex { witness, .. } => Some(witness),
            _ => None,
        }
    }

    fn map_witness(self, f: impl FnOnce(CurvatureWitness) -> CurvatureWitness) -> Self {
        match self {
            ConvexityVerdict::NotConvex { mode, witness } => ConvexityVerdict::NotConvex {
                mode,
                witness: f(witness),
            },
            other => other,
        }
    }
}

#[derive(Serialize)]
struct VerdictWire<'a> {
    status: &'static str,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_direction: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<&'a str>,
}

impl Serialize for ConvexityVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut wire = VerdictWire {
            status: self.status(),
            mode: "none",
            witness_point: None,
            witness_direction: None,
            witness_value: None,
            diagnostics: None,
        };
        match self {
            ConvexityVerdict::Convex { mode } => wire.mode = mode.as_str(),
            ConvexityVerdict::NotConvex { mode, witness } => {
                wire.mode = mode.as_str();
                wire.witness_point = Some(rational::format_vec(&witness.point));
                wire.witness_direction = Some(rational::format_vec(&witness.direction));
                wire.witness_value = Some(rational::format(&witness.value));
            }
            ConvexityVerdict::Unknown { diagnostics } => wire.diagnostics = Some(diagnostics),
        }
        wire.serialize(s)
    }
}

fn check_dims(p: &Polynomial, b: &BoxDomain) -> Result<()> {
    if p.nvars() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            found: b.dim(),
        });
    }
    Ok(())
}

fn check_degree(p: &Polynomial, max: u32) -> Result<()> {
    let degree = p.degree();
    if degree > max {
        return Err(Error::DegreeTooHigh { degree, max });
    }
    Ok(())
}

/// Runs `check` on the restriction of `p` to the affine hull of `b`.
fn on_affine_hull(
    p: &Polynomial,
    b: &BoxDomain,
    check: impl FnOnce(&Polynomial, &BoxDomain) -> Result<ConvexityVerdict>,
) -> Result<ConvexityVerdict> {
    if !b.is_degenerate() {
        return check(p, b);
    }
    let fixed = b.fixed_coordinates();
    let free = b.free_indices();
    let verdict = check(&p.restrict(&fixed), &b.reduced())?;
    Ok(verdict.map_witness(|w| {
        let mut point: Vec<Rational> = b.lower().to_vec();
        let mut direction = vec![Rational::zero(); b.dim()];
        for (k, &i) in free.iter().enumerate() {
            point[i] = w.point[k].clone();
            direction[i] = w.direction[k].clone();
        }
        CurvatureWitness {
            point,
            direction,
            value: w.value,
        }
    }))
}

/// Exact convexity test for polynomials of degree at most 3.
///
/// Vertices are visited in lexicographic order and the first failing one is
/// reported, together with the PSD-failure direction at that vertex.
pub fn check_cubic_exact(p: &Polynomial, b: &BoxDomain) -> Result<ConvexityVerdict> {
    check_dims(p, b)?;
    check_degree(p, 3)?;
    on_affine_hull(p, b, cubic_full_dimensional)
}

fn cubic_full_dimensional(p: &Polynomial, b: &BoxDomain) -> Result<ConvexityVerdict> {
    let mode = CertificationMode::VertexEnumeration;
    if p.nvars() == 0 {
        return Ok(ConvexityVerdict::Convex { mode });
    }
    let pencil = p.hessian_pencil()?;
    let scaled = IntegerPencil::new(&pencil, b);
    let failing = (0..b.vertex_count())
        .into_par_iter()
        .find_first(|&index| !is_psd_integer(scaled.at_vertex(index)));
    Ok(match failing {
        None => ConvexityVerdict::Convex { mode },
        Some(index) => {
            let vertex = b.vertex(index);
            let hess = pencil.eval(&vertex).expect("vertex has box dimension");
            match is_psd(&hess) {
                PsdCertificate::NotPsd { vector, value } => ConvexityVerdict::NotConvex {
                    mode,
                    witness: CurvatureWitness {
                        point: vertex,
                        direction: vector,
                        value,
                    },
                },
                PsdCertificate::Psd(_) => unreachable!("integer and rational elimination disagree"),
            }
        }
    })
}

/// A Hessian pencil over a box, scaled by a positive integer so that its value
/// at every vertex is an integer matrix (upper triangle only).
struct IntegerPencil {
    constant: Vec<Vec<BigInt>>,
    // per variable: nonzero (i, j, coefficient) with i <= j
    terms: Vec<Vec<(usize, usize, BigInt)>>,
    lower: Vec<BigInt>,
    upper: Vec<BigInt>,
}

fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl IntegerPencil {
    fn new(pencil: &AffinePencil, b: &BoxDomain) -> Self {
        let n = pencil.dim();
        let d = denominator_lcm(
            pencil
                .constant()
                .entries()
                .chain(pencil.coefficients().iter().flat_map(|m| m.entries())),
        );
        let q = denominator_lcm(b.lower().iter().chain(b.upper()));
        let whole = |v: &Rational, s: &BigInt| (v * Rational::from_integer(s.clone())).to_integer();
        let dq = &d * &q;
        let constant = (0..n)
            .map(|i| (0..n).map(|j| whole(pencil.constant().get(i, j), &dq)).collect())
            .collect();
        let terms = pencil
            .coefficients()
            .iter()
            .map(|m| {
                (0..n)
                    .flat_map(|i| (i..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !m.get(i, j).is_zero())
                    .map(|(i, j)| (i, j, whole(m.get(i, j), &d)))
                    .collect()
            })
            .collect();
        IntegerPencil {
            constant,
            terms,
            lower: b.lower().iter().map(|v| whole(v, &q)).collect(),
            upper: b.upper().iter().map(|v| whole(v, &q)).collect(),
        }
    }

    /// Scaled Hessian at [`BoxDomain::vertex`]`(index)`.
    fn at_vertex(&self, index: u64) -> Vec<Vec<BigInt>> {
        let dim = self.terms.len();
        let mut m = self.constant.clone();
        for (k, terms) in self.terms.iter().enumerate() {
            let v = if (index >> (dim - 1 - k)) & 1 == 0 {
                &self.lower[k]
            } else {
                &self.upper[k]
            };
            if v.is_zero() {
                continue;
            }
            for (i, j, c) in terms {
                m[*i][*j] += c * v;
            }
        }
        m
    }
}

/// Degree at most 2: one PSD test of the constant Hessian. The box only
/// supplies the reported witness point (its lower corner).
pub fn check_quadratic(p: &Polynomial, b: &BoxDomain) -> Result<ConvexityVerdict> {
    check_dims(p, b)?;
    check_degree(p, 2)?;
    let mode = CertificationMode::ConstantHessian;
    let origin = vec![Rational::zero(); p.nvars()];
    let hess = p.hessian_at(&origin)?;
    Ok(match is_psd(&hess) {
        PsdCertificate::Psd(_) => ConvexityVerdict::Convex { mode },
        PsdCertificate::NotPsd { vector, value } => ConvexityVerdict::NotConvex {
            mode,
            witness: CurvatureWitness {
                point: b.lower().to_vec(),
                direction: vector,
                value,
            },
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Interval {
            lo: products.iter().min().cloned().expect("nonempty"),
            hi: products.iter().max().cloned().expect("nonempty"),
        }
    }

    /// Exact range of `x^e` for `x` in the interval.
    fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(rational::int(1));
        }
        let p = |x: &Rational| (0..e).fold(rational::int(1), |acc, _| acc * x);
        let (a, b) = (p(&self.lo), p(&self.hi));
        if e % 2 == 1 {
            Interval { lo: a, hi: b }
        } else if !self.lo.is_positive() && !self.hi.is_negative() {
            Interval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    fn magnitude(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }
}

fn enclose(p: &Polynomial, b: &BoxDomain) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for (exps, coef) in p.terms() {
        let mut term = Interval::point(coef.clone());
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                let r = Interval {
                    lo: b.lower()[i].clone(),
                    hi: b.upper()[i].clone(),
                };
                term = term.mul(&r.pow(e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Sound sufficient test: interval enclosure of every Hessian entry over the
/// box, then Gershgorin diagonal dominance of the interval matrix.
/// `true` proves convexity over `b`; `false` is inconclusive.
pub fn gershgorin_box_sufficient(p: &Polynomial, b: &BoxDomain) -> bool {
    if p.nvars() != b.dim() {
        return false;
    }
    let hess = p.hessian();
    let n = p.nvars();
    let enclosures: Vec<Vec<Interval>> = hess
        .iter()
        .map(|row| row.iter().map(|h| enclose(h, b)).collect())
        .collect();
    (0..n).all(|i| {
        let radius = (0..n)
            .filter(|&j| j != i)
            .fold(Rational::zero(), |acc, j| acc + enclosures[i][j].magnitude());
        !(&enclosures[i][i].lo - radius).is_negative()
    })
}

/// Seeded sampling for a direction of negative curvature.
///
/// Each sample point is rationalized to denominator [`SAMPLE_DENOMINATOR`] and
/// clamped into the box; a numeric eigenvector of the Hessian there is
/// rationalized the same way and accepted only after exact re-verification.
pub fn negative_curvature_search(
    p: &Polynomial,
    b: &BoxDomain,
    samples: usize,
    seed: u64,
) -> Option<CurvatureWitness> {
    if p.nvars() != b.dim() {
        return None;
    }
    let free = b.free_indices();
    if free.is_empty() {
        return None;
    }
    let hess = p.hessian();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let point: Vec<Rational> = (0..b.dim())
            .map(|i| {
                let (lo, hi) = (&b.lower()[i], &b.upper()[i]);
                if lo == hi {
                    return lo.clone();
                }
                let (l, u) = (rational::to_f64(lo), rational::to_f64(hi));
                let x = l + (u - l) * rng.random::<f64>();
                rational::clamp(rational::round_to_denominator(x, SAMPLE_DENOMINATOR), lo, hi)
            })
            .collect();
        let h = hessian_value(&hess, &point).expect("point has box dimension");
        let sub = h.principal(&free);
        let eig = SymmetricEigen::new(sub.to_f64());
        let (k, lambda) = eig
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty spectrum");
        if !(lambda < 0.0) {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let scale = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut direction = vec![Rational::zero(); b.dim()];
        for (t, &i) in free.iter().enumerate() {
            direction[i] = rational::round_to_denominator(v[t] / scale, SAMPLE_DENOMINATOR);
        }
        let mut value = h.quad_form(&direction);
        if !value.is_negative() {
            // rounding destroyed the curvature; fall back to the exact pivot witness
            match is_psd(&sub) {
                PsdCertificate::NotPsd { vector, .. } => {
                    direction = vec![Rational::zero(); b.dim()];
                    for (t, &i) in free.iter().enumerate() {
                        direction[i] = vector[t].clone();
                    }
                    value = h.quad_form(&direction);
                }
                PsdCertificate::Psd(_) => continue,
            }
        }
        if value.is_negative() {
            return Some(CurvatureWitness {
                point,
                direction,
                value,
            });
        }
    }
    None
}

/// Exact re-check of a witness: the point lies in the box, the direction does
/// not move pinned coordinates, and the stated curvature is exact and negative.
pub fn verify_witness(p: &Polynomial, b: &BoxDomain, w: &CurvatureWitness) -> bool {
    if !b.contains(&w.point) || w.direction.len() != b.dim() {
        return false;
    }
    let pinned_ok = (0..b.dim())
        .filter(|&i| b.lower()[i] == b.upper()[i])
        .all(|i| w.direction[i].is_zero());
    if !pinned_ok {
        return false;
    }
    match p.hessian_at(&w.point) {
        Ok(h) => {
            let q = h.quad_form(&w.direction);
            q == w.value && q.is_negative()
        }
        Err(_) => false,
    }
}

/// Dispatch on degree. Never claims `Convex` or `NotConvex` without an exact
/// certificate; degree 4 and higher may return `Unknown`.
pub fn check_general(
    p: &Polynomial,
    b: &BoxDomain,
    budget: usize,
    seed: u64,
) -> Result<ConvexityVerdict> {
    check_dims(p, b)?;
    on_affine_hull(p, b, |q, rb| match q.degree() {
        0..=2 => check_quadratic(q, rb),
        3 => check_cubic_exact(q, rb),
        _ => Ok(sufficient_then_search(q, rb, budget, seed)),
    })
}

/// Like [`check_general`] but skips vertex enumeration for cubics, so degree
/// 3 and up go straight to the sufficient and necessary tests.
pub fn check_fast(
    p: &Polynomial,
    b: &BoxDomain,
    budget: usize,
    seed: u64,
) -> Result<ConvexityVerdict> {
    check_dims(p, b)?;
    on_affine_hull(p, b, |q, rb| match q.degree() {
        0..=2 => check_quadratic(q, rb),
        _ => Ok(sufficient_then_search(q, rb, budget, seed)),
    })
}

fn sufficient_then_search(p: &Polynomial, b: &BoxDomain, budget: usize, seed: u64) -> ConvexityVerdict {
    if gershgorin_box_sufficient(p, b) {
        return ConvexityVerdict::Convex {
            mode: CertificationMode::GershgorinSufficient,
        };
    }
    match negative_curvature_search(p, b, budget, seed) {
        Some(witness) => ConvexityVerdict::NotConvex {
            mode: CertificationMode::NegativeCurvatureSearch,
            witness,
        },
        None => ConvexityVerdict::Unknown {
            diagnostics: format!(
                "degree {}: interval Gershgorin test inconclusive and no negative curvature in {budget} samples (seed {seed})",
                p.degree()
            ),
        },
    }
}

/// Convexity of `g + x_{n+1}^d` over `b × [0, 1]`.
///
/// The Hessian is block diagonal with the scalar block `d(d-1)x^{d-2} >= 0` on
/// `[0, 1]`, so the verdict is that of `g` over `b`; a witness gains a trailing
/// zero in both point and direction.
pub fn check_lifted_exact(g: &Polynomial, b: &BoxDomain, d: u32) -> Result<ConvexityVerdict> {
    check_degree(g, 3)?;
    if d < 4 {
        return Err(Error::BadDegree(d));
    }
    let verdict = check_cubic_exact(g, b)?;
    Ok(verdict.map_witness(|mut w| {
        w.point.push(Rational::zero());
        w.direction.push(Rational::zero());
        w
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn mono(exps: &[u32], c: i64) -> Polynomial {
        Polynomial::monomial(exps.to_vec(), int(c))
    }

    fn unit(n: usize) -> BoxDomain {
        BoxDomain::cube(n, int(-1), int(1)).unwrap()
    }

    #[test]
    fn cubic_examples() {
        assert!(check_cubic_exact(&mono(&[2], 1), &unit(1)).unwrap().is_convex());
        let v = check_cubic_exact(&mono(&[3], 1), &unit(1)).unwrap();
        let w = v.witness().expect("not convex");
        assert_eq!(w.point, vec![int(-1)]);
        assert_eq!(w.value, int(-6) * &w.direction[0] * &w.direction[0]);
        assert!(verify_witness(&mono(&[3], 1), &unit(1), w));
    }

    #[test]
    fn cubic_reports_lexicographically_first_vertex() {
        // Hessian of x0^2 x1 is [[2x1, 2x0], [2x0, 0]]: every vertex fails
        let p = mono(&[2, 1], 1);
        let v = check_cubic_exact(&p, &unit(2)).unwrap();
        assert_eq!(v.witness().unwrap().point, vec![int(-1), int(-1)]);
    }

    #[test]
    fn cubic_errors() {
        assert_eq!(
            check_cubic_exact(&mono(&[4], 1), &unit(1)),
            Err(Error::DegreeTooHigh { degree: 4, max: 3 })
        );
        assert!(matches!(
            check_cubic_exact(&mono(&[3], 1), &unit(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quadratic_examples() {
        let v = check_quadratic(&(&x(2, 0) * &x(2, 1)), &unit(2)).unwrap();
        assert!(v.is_not_convex());
        assert!(check_quadratic(&(&x(2, 0) + &x(2, 1)), &unit(2)).unwrap().is_convex());
        let sq = &mono(&[2, 0], 1) + &mono(&[0, 2], 1);
        assert!(check_quadratic(&sq, &unit(2)).unwrap().is_convex());
        assert!(check_quadratic(&mono(&[3, 0], 1), &unit(2)).is_err());
    }

    #[test]
    fn gershgorin_examples() {
        let sq = &mono(&[2, 0], 1) + &mono(&[0, 2], 1);
        assert!(gershgorin_box_sufficient(&sq, &unit(2)));
        assert!(!gershgorin_box_sufficient(&mono(&[3], 1), &unit(1)));
        let quartic = &mono(&[4, 0], 1) + &mono(&[0, 4], 1);
        let b = BoxDomain::cube(2, int(1), int(2)).unwrap();
        assert!(gershgorin_box_sufficient(&quartic, &b));
    }

    #[test]
    fn interval_powers() {
        let i = Interval { lo: int(-2), hi: int(1) };
        assert_eq!(i.pow(2), Interval { lo: int(0), hi: int(4) });
        assert_eq!(i.pow(3), Interval { lo: int(-8), hi: int(1) });
        let j = Interval { lo: int(-3), hi: int(-1) };
        assert_eq!(j.pow(2), Interval { lo: int(1), hi: int(9) });
    }

    #[test]
    fn search_examples() {
        let convex = &mono(&[2, 0], 3) + &mono(&[0, 2], 1);
        for seed in 0..5 {
            assert!(negative_curvature_search(&convex, &unit(2), 50, seed).is_none());
        }
        let cube = mono(&[3], 1);
        let w = negative_curvature_search(&cube, &unit(1), 64, 7).unwrap();
        assert!(w.point[0].is_negative());
        assert!(verify_witness(&cube, &unit(1), &w));
        let concave = mono(&[2], -1);
        let w = negative_curvature_search(&concave, &unit(1), 1, 3).unwrap();
        assert!(verify_witness(&concave, &unit(1), &w));
    }

    #[test]
    fn general_dispatch() {
        let quartic = mono(&[4], 1);
        let b = BoxDomain::cube(1, int(1), int(2)).unwrap();
        assert_eq!(
            check_general(&quartic, &b, 10, 0).unwrap(),
            ConvexityVerdict::Convex {
                mode: CertificationMode::GershgorinSufficient
            }
        );
        let p = &mono(&[4], 1) - &mono(&[2], 3);
        let v = check_general(&p, &unit(1), 100, 1).unwrap();
        let w = v.witness().expect("indefinite quartic");
        assert!(verify_witness(&p, &unit(1), w));
        let t = &w.point[0];
        assert!((int(12) * t * t - int(6)).is_negative());
        let cube = mono(&[3], 1);
        assert_eq!(
            check_general(&cube, &unit(1), 1, 0).unwrap(),
            check_cubic_exact(&cube, &unit(1)).unwrap()
        );
    }

    #[test]
    fn degree_four_can_be_unknown() {
        // (x + y)^4 is convex, but its Hessian 12(x+y)^2 [[1,1],[1,1]] is not
        // interval diagonally dominant, and no negative curvature exists
        let s = &x(2, 0) + &x(2, 1);
        let sq = &s * &s;
        let p = &sq * &sq;
        let v = check_general(&p, &unit(2), 40, 0).unwrap();
        assert!(matches!(v, ConvexityVerdict::Unknown { .. }));
        assert_eq!(serde_json::to_value(&v).unwrap()["status"], "unknown");
    }

    #[test]
    fn degenerate_box_uses_affine_hull() {
        // x0 x1 with x1 pinned is linear in x0, hence convex on the box
        let p = &x(2, 0) * &x(2, 1);
        let b = BoxDomain::new(vec![int(-1), int(2)], vec![int(1), int(2)]).unwrap();
        assert!(check_cubic_exact(&p, &b).unwrap().is_convex());
        assert!(check_general(&p, &b, 5, 0).unwrap().is_convex());

        // x0^2 x1 with x1 pinned at -1 is -x0^2: witness keeps pinned slot fixed
        let q = mono(&[2, 1], 1);
        let b = BoxDomain::new(vec![int(-1), int(-1)], vec![int(1), int(-1)]).unwrap();
        let v = check_cubic_exact(&q, &b).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.point[1], int(-1));
        assert!(w.direction[1].is_zero());
        assert!(verify_witness(&q, &b, w));
    }

    #[test]
    fn lifted_examples() {
        let sq = mono(&[2], 1);
        assert!(check_lifted_exact(&sq, &unit(1), 4).unwrap().is_convex());
        let v = check_lifted_exact(&mono(&[3], 1), &unit(1), 5).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.point.len(), 2);
        assert_eq!(check_lifted_exact(&sq, &unit(1), 3), Err(Error::BadDegree(3)));
        assert!(check_lifted_exact(&mono(&[4], 1), &unit(1), 4).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = check_cubic_exact(&mono(&[3], 1), &unit(1)).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["status"], "not_convex");
        assert_eq!(j["mode"], "exact-vertex-enumeration");
        assert_eq!(j["witness_point"], serde_json::json!(["-1"]));
        let c = serde_json::to_value(ConvexityVerdict::Convex {
            mode: CertificationMode::ConstantHessian,
        })
        .unwrap();
        assert_eq!(c, serde_json::json!({"status": "convex", "mode": "constant-hessian"}));
    }
}
