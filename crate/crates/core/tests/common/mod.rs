#![allow(dead_code)]

use std::collections::BTreeMap;

use boxconvex::rational::{int, ratio};
use boxconvex::{BoxDomain, Polynomial, Rational, SymMatrix};
use rand::Rng;

pub fn small_rational(rng: &mut impl Rng, range: i64, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    ratio(rng.random_range(-range * den..=range * den), den)
}

pub fn random_sym(rng: &mut impl Rng, n: usize) -> SymMatrix {
    SymMatrix::from_upper_fn(n, |_, _| {
        if rng.random_bool(0.2) {
            int(0)
        } else {
            small_rational(rng, 3, 4)
        }
    })
}

/// Random rank-deficient PSD matrix `BᵀB` with integer `B` of `rank` rows,
/// optionally perturbed on one diagonal entry.
pub fn random_gram(rng: &mut impl Rng, n: usize, rank: usize) -> SymMatrix {
    let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..n).map(|_| rng.random_range(-2..=2)).collect()).collect();
    SymMatrix::from_upper_fn(n, |i, j| int((0..rank).map(|r| b[r][i] * b[r][j]).sum()))
}

/// All exponent vectors in `nvars` variables with total degree at most `deg`.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, deg, &mut out);
    out
}

/// Sparse random polynomial of total degree at most `deg` whose quadratic
/// part is pushed toward convexity, so that both verdicts are common.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for e in monomials(nvars, deg) {
        if rng.random_bool(0.35) {
            p.add_term(e, small_rational(rng, 2, 3));
        }
    }
    let boost = int(rng.random_range(0..=6));
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = 2;
        p.add_term(e, boost.clone());
    }
    p
}

pub fn random_box(rng: &mut impl Rng, dim: usize, degenerate_prob: f64) -> BoxDomain {
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for _ in 0..dim {
        let a = small_rational(rng, 2, 4);
        if rng.random_bool(degenerate_prob) {
            lo.push(a.clone());
            hi.push(a);
        } else {
            let w = ratio(rng.random_range(1..=8), rng.random_range(1..=4));
            hi.push(&a + &w);
            lo.push(a);
        }
    }
    BoxDomain::new(lo, hi).unwrap()
}

/// Random rational point of the box on a grid of the given resolution.
pub fn random_point(rng: &mut impl Rng, b: &BoxDomain, steps: i64) -> Vec<Rational> {
    (0..b.dim())
        .map(|i| {
            let t = ratio(rng.random_range(0..=steps), steps);
            &b.lower()[i] + (&b.upper()[i] - &b.lower()[i]) * t
        })
        .collect()
}

pub fn fixed_restriction(p: &Polynomial, b: &BoxDomain) -> (Polynomial, BoxDomain) {
    let fixed: BTreeMap<usize, Rational> = b.fixed_coordinates();
    (p.restrict(&fixed), b.reduced())
}
