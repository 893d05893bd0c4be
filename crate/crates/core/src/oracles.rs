//! Brute-force and inequality oracles for the reduction chain.
//!
//! Enumeration guards are hard errors: an oracle never answers for an
//! instance it cannot enumerate exhaustively.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::convexity::check_cubic_exact;
use crate::error::{Error, Result};
use crate::gadgets::{
    build_gadget, check_indicator, cubic_from_gadget, gadget_matrix, maxcut_to_interval, witness_bound,
    witness_from_cut, Cut, Graph, NemirovskiGadget,
};
use crate::interval::check_interval_psd;
use crate::linalg::{invert, SymMatrix};
use crate::rational::{self, int, ratio, Rational};

pub const MAX_CUT_LIMIT: usize = 24;
pub const GAP_LIMIT: usize = 12;
pub const REDUCTION_LIMIT: usize = 6;

/// Slack for the floating-point `λ_max(H(y)ᵀH(y)) <= 8n` check.
pub const HTY_SLACK: f64 = 1e-9;

/// Largest cut by exhaustive search with `x_0 = +1` fixed. Among equal cuts
/// the lexicographically smallest indicator (`-1 < +1`) wins.
pub fn max_cut_bruteforce(g: &Graph) -> Result<Cut> {
    let n = g.n();
    if n > MAX_CUT_LIMIT {
        return Err(Error::TooLarge { n, limit: MAX_CUT_LIMIT });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let free = n - 1;
    // bit (free - t) of `pattern` set means vertex t is on the +1 side
    let side = |pattern: u64, v: usize| v == 0 || (pattern >> (free - v)) & 1 == 1;
    let mut best: Option<(u64, u64)> = None;
    for pattern in 0..(1u64 << free) {
        let size = edges
            .iter()
            .filter(|&&(i, j)| side(pattern, i) != side(pattern, j))
            .count() as u64;
        if best.is_none_or(|(s, _)| size > s) {
            best = Some((size, pattern));
        }
    }
    let (size, pattern) = best.expect("at least one pattern");
    let indicator = (0..n).map(|v| if side(pattern, v) { 1 } else { -1 }).collect();
    Ok(Cut { indicator, size })
}

/// `¼(eᵀAe − x̂ᵀAx̂)`.
pub fn cut_size(g: &Graph, indicator: &[i64]) -> Result<u64> {
    check_indicator(g.n(), indicator)?;
    let a = g.adjacency();
    let n = g.n();
    let mut total = 0i64;
    let mut form = 0i64;
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).is_one() {
                total += 1;
                form += indicator[i] * indicator[j];
            }
        }
    }
    Ok(((total - form) / 4) as u64)
}

fn check_zero_one(a: &SymMatrix) -> Result<()> {
    if a.entries().any(|v| !v.is_zero() && !v.is_one()) {
        return Err(Error::BadInput("matrix entries must be 0 or 1".into()));
    }
    Ok(())
}

/// Exact check of
/// `¼xᵀ((n+1)³I − A)x − ¼ <= xᵀC⁻¹x <= ¼xᵀ((n+1)³I − A)x + ¼`
/// for a symmetric 0/1 matrix `A` and `‖x‖∞ <= 1`.
pub fn lemma_bound_check(a: &SymMatrix, x: &[Rational]) -> Result<bool> {
    check_zero_one(a)?;
    let n = a.dim();
    if x.len() != n {
        return Err(Error::BadInput(format!("point has length {}, expected {n}", x.len())));
    }
    if x.iter().any(|v| v.abs() > Rational::one()) {
        return Err(Error::BadInput("point must satisfy |x_i| <= 1".into()));
    }
    let c_inv = invert(&gadget_matrix(a))?;
    let middle = c_inv.quad_form(x);
    let m = int(n as i64 + 1);
    let shifted = SymMatrix::identity(n).scale(&(&m * &m * &m)).add(&a.scale(&int(-1)));
    let center = shifted.quad_form(x) / int(4);
    let quarter = ratio(1, 4);
    Ok(&center - &quarter <= middle && middle <= center + quarter)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub max_value: Rational,
    pub maximizer: Vec<i64>,
    pub mu: Rational,
    pub in_forbidden_band: bool,
}

#[derive(Serialize)]
struct GapWire {
    max_value: String,
    maximizer: Vec<i64>,
    mu: String,
    band_lower: String,
    band_upper: String,
    in_forbidden_band: bool,
}

impl Serialize for GapReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GapWire {
            max_value: rational::format(&self.max_value),
            maximizer: self.maximizer.clone(),
            mu: rational::format(&self.mu),
            band_lower: rational::format(&(&self.mu + ratio(1, 4))),
            band_upper: rational::format(&(&self.mu + ratio(3, 4))),
            in_forbidden_band: self.in_forbidden_band,
        }
        .serialize(s)
    }
}

/// Maximum of `xᵀC⁻¹x` over `{−1, 1}ⁿ` (the maximum over the cube of this
/// convex form sits at a vertex) and whether it falls strictly inside
/// `(μ + ¼, μ + ¾)`.
pub fn gap_check(g: &NemirovskiGadget) -> Result<GapReport> {
    let n = g.n();
    if n > GAP_LIMIT {
        return Err(Error::TooLarge { n, limit: GAP_LIMIT });
    }
    let c_inv = invert(g.c())?;
    let mut best: Option<(Rational, Vec<i64>)> = None;
    for pattern in 0..(1u64 << n) {
        let signs: Vec<i64> = (0..n)
            .map(|i| if (pattern >> (n - 1 - i)) & 1 == 1 { 1 } else { -1 })
            .collect();
        let x: Vec<Rational> = signs.iter().map(|&s| int(s)).collect();
        let v = c_inv.quad_form(&x);
        if best.as_ref().is_none_or(|(b, _)| &v > b) {
            best = Some((v, signs));
        }
    }
    let (max_value, maximizer) = best.expect("nonempty cube");
    let mu = g.mu().clone();
    let in_forbidden_band = max_value > &mu + ratio(1, 4) && max_value < &mu + ratio(3, 4);
    Ok(GapReport {
        max_value,
        maximizer,
        mu,
        in_forbidden_band,
    })
}

/// `H(y)` in floating point.
pub fn mixed_partials_f64(n: usize, y: &[f64]) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(n, n + 1);
    for i in 0..n {
        h[(i, i)] += 2.0 * y[n];
        h[(i, n)] += 2.0 * y[i];
    }
    h
}

/// Numeric check of `λ_max(H(y)ᵀH(y)) <= 8n` (with [`HTY_SLACK`]).
pub fn hty_bound_check(n: usize, y: &[f64]) -> Result<bool> {
    if n == 0 || y.len() != n + 1 {
        return Err(Error::BadInput(format!("y must have length n + 1 = {}", n + 1)));
    }
    if y.iter().any(|v| !v.is_finite() || v.abs() > 1.0) {
        return Err(Error::BadInput("y must satisfy |y_i| <= 1".into()));
    }
    let h = mixed_partials_f64(n, y);
    let gram = h.transpose() * &h;
    let lambda_max = SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(lambda_max <= 8.0 * n as f64 + HTY_SLACK)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub indicator: Vec<i64>,
    pub cut_size: u64,
    pub point: Vec<String>,
    pub z: Vec<String>,
    pub value: String,
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub k: u64,
    pub max_cut: u64,
    pub interval_psd: bool,
    pub cubic_convex: bool,
    pub iff_holds: bool,
    pub witness: Option<WitnessReport>,
}

/// Runs all three legs on `(G, k)` and checks
/// `max cut >= k ⇔ family not all PSD ⇔ cubic not convex`, plus witness
/// negativity when a large cut exists.
pub fn verify_reduction(g: &Graph, k: u64) -> Result<ReductionReport> {
    let n = g.n();
    if n > REDUCTION_LIMIT {
        return Err(Error::TooLarge { n, limit: REDUCTION_LIMIT });
    }
    let gadget = build_gadget(g, k)?;
    let cut = max_cut_bruteforce(g)?;
    let interval_psd = check_interval_psd(&maxcut_to_interval(g, k)?).all_psd;
    let cubic = cubic_from_gadget(&gadget);
    let cubic_convex = check_cubic_exact(&cubic.f, &cubic.domain)?.is_convex();

    let large_cut = cut.size >= k;
    let witness = if large_cut {
        let w = witness_from_cut(&gadget, &cubic, &cut)?;
        let bound = witness_bound(n);
        let within_bound = w.value <= bound && cubic.domain.contains(&w.point);
        Some(WitnessReport {
            indicator: cut.indicator.clone(),
            cut_size: cut.size,
            point: rational::format_vec(&w.point),
            z: rational::format_vec(&w.z),
            value: rational::format(&w.value),
            bound: rational::format(&bound),
            within_bound,
        })
    } else {
        None
    };
    let witness_ok = witness.as_ref().is_none_or(|w| w.within_bound);
    let iff_holds = large_cut == !interval_psd && large_cut == !cubic_convex && witness_ok;
    Ok(ReductionReport {
        n,
        k,
        max_cut: cut.size,
        interval_psd,
        cubic_convex,
        iff_holds,
        witness,
    })
}

/// Exact `xᵀMx` for `x ∈ {−1, 1}ⁿ` given as signs; small helper for callers
/// comparing against [`gap_check`].
pub fn signed_quad_form(m: &SymMatrix, signs: &[i64]) -> Rational {
    let x: Vec<Rational> = signs.iter().map(|&s| Rational::from_integer(BigInt::from(s))).collect();
    m.quad_form(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn max_cut_examples() {
        assert_eq!(max_cut_bruteforce(&Graph::new(4, []).unwrap()).unwrap().size, 0);
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let c = max_cut_bruteforce(&edge).unwrap();
        assert_eq!((c.size, c.indicator.clone()), (1, vec![1, -1]));
        let t = max_cut_bruteforce(&triangle()).unwrap();
        assert_eq!(t.size, 2);
        // first maximizer in lexicographic order with x_0 = +1
        assert_eq!(t.indicator, vec![1, -1, -1]);
        assert_eq!(
            max_cut_bruteforce(&Graph::new(25, []).unwrap()),
            Err(Error::TooLarge { n: 25, limit: 24 })
        );
    }

    #[test]
    fn cut_size_examples() {
        let t = triangle();
        assert_eq!(cut_size(&t, &[1, 1, 1]).unwrap(), 0);
        assert_eq!(cut_size(&t, &[1, -1, -1]).unwrap(), 2);
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(cut_size(&edge, &[1, -1]).unwrap(), 1);
        assert_eq!(cut_size(&edge, &[1, 0]), Err(Error::BadIndicator));
        assert_eq!(cut_size(&edge, &[1]), Err(Error::BadIndicator));
    }

    #[test]
    fn max_cut_agrees_with_formula_route() {
        for n in 1..=5 {
            for mask in (0..(1u64 << (n * (n - 1) / 2))).step_by(7) {
                let g = Graph::from_mask(n, mask);
                let best = (0..(1u64 << n))
                    .map(|p| {
                        let ind: Vec<i64> = (0..n).map(|i| if (p >> i) & 1 == 1 { 1 } else { -1 }).collect();
                        cut_size(&g, &ind).unwrap()
                    })
                    .max()
                    .unwrap();
                let cut = max_cut_bruteforce(&g).unwrap();
                assert_eq!(cut.size, best);
                assert_eq!(cut_size(&g, &cut.indicator).unwrap(), cut.size);
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let a = SymMatrix::zeros(1);
        assert!(lemma_bound_check(&a, &[int(0)]).unwrap());
        assert!(lemma_bound_check(&a, &[int(1)]).unwrap());
        assert_eq!(invert(&gadget_matrix(&a)).unwrap(), SymMatrix::from_diagonal(&[int(2)]));
        assert!(lemma_bound_check(&a, &[int(2)]).is_err());
        let bad = SymMatrix::from_diagonal(&[int(2)]);
        assert!(lemma_bound_check(&bad, &[int(0)]).is_err());
    }

    #[test]
    fn gap_examples() {
        let single = build_gadget(&Graph::new(1, []).unwrap(), 1).unwrap();
        let r = gap_check(&single).unwrap();
        assert_eq!(r.max_value, int(2));
        assert!(r.max_value <= &r.mu + ratio(1, 4));
        assert!(!r.in_forbidden_band);

        let edge = build_gadget(&Graph::new(2, [(0, 1)]).unwrap(), 1).unwrap();
        let r = gap_check(&edge).unwrap();
        assert_eq!(r.max_value, ratio(5103, 364));
        assert!(r.max_value >= ratio(55, 4));
        assert!(!r.in_forbidden_band);
        assert_eq!(signed_quad_form(&invert(edge.c()).unwrap(), &r.maximizer), r.max_value);

        let big = build_gadget(&Graph::new(13, []).unwrap(), 1).unwrap();
        assert_eq!(gap_check(&big), Err(Error::TooLarge { n: 13, limit: 12 }));
    }

    #[test]
    fn hty_examples() {
        assert!(hty_bound_check(2, &[0.0, 0.0, 0.0]).unwrap());
        assert!(hty_bound_check(2, &[1.0, 1.0, 1.0]).unwrap());
        // H(1,1,1)ᵀH(1,1,1) = 4[[1,0,1],[0,1,1],[1,1,2]] has λ_max = 12
        let h = mixed_partials_f64(2, &[1.0, 1.0, 1.0]);
        let gram = h.transpose() * &h;
        let top = SymmetricEigen::new(gram).eigenvalues.max();
        assert!((top - 12.0).abs() < 1e-9 && top <= 16.0);
        assert!(hty_bound_check(2, &[1.0, 1.0]).is_err());
        assert!(hty_bound_check(2, &[1.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn reduction_examples() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let r = verify_reduction(&edge, 1).unwrap();
        assert_eq!((r.max_cut, r.interval_psd, r.cubic_convex, r.iff_holds), (1, false, false, true));
        assert!(r.witness.as_ref().unwrap().within_bound);
        let r = verify_reduction(&edge, 2).unwrap();
        assert_eq!((r.max_cut, r.interval_psd, r.cubic_convex, r.iff_holds), (1, true, true, true));
        assert!(r.witness.is_none());
        let r = verify_reduction(&Graph::new(3, []).unwrap(), 1).unwrap();
        assert!(r.interval_psd && r.cubic_convex && r.iff_holds);
        assert_eq!(
            verify_reduction(&Graph::new(7, []).unwrap(), 1),
            Err(Error::TooLarge { n: 7, limit: 6 })
        );
    }
}
