//! Reduction objects built from a simple-graph MAX-CUT instance `(G, k)`.
//!
//! With `A` the adjacency matrix of `G` on `n` vertices:
//!
//! - `C = 4/(n+1)³ · (I + A/(n+1)³)` and `μ = n(n+1)³/4 + k − 1 − eᵀAe/4`;
//! - the pencil `L(x) = [[C, x], [xᵀ, μ + 1/4]]`, PSD on `[-1, 1]ⁿ` iff `G` has
//!   no cut of size `k`;
//! - the interval family with `C` and `μ + 1/4` pinned and the last row and
//!   column free in `[-1, 1]`;
//! - the cubic `f(x, y) = ½ yᵀL(x)y + (α/2)xᵀx + (η/2)yᵀy` over `[-1, 1]^(2n+1)`
//!   with `α = 16n(1 + 16n⁷)` and `η = 1/(4(1 + 16n⁷))`, convex iff the pencil
//!   is PSD on the box.
//!
//! Variables of `f` are ordered `x_0 … x_{n-1}, y_0 … y_n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSymMatrix;
use crate::linalg::{invert, SymMatrix};
use crate::poly::{AffinePencil, BoxDomain, Polynomial};
use crate::rational::{self, int, ratio, Rational};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Self> {
        Graph::new(w.n, w.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> Self {
        GraphWire {
            n: g.n,
            edges: g.edges.into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::BadInput(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::BadInput(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::BadInput(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    /// Pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect()
    }

    /// The graph whose edge set is selected by `mask` over [`Graph::all_pairs`].
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let edges = Self::all_pairs(n)
            .into_iter()
            .enumerate()
            .filter(|(t, _)| (mask >> t) & 1 == 1)
            .map(|(_, e)| e);
        Graph::new(n, edges).expect("pairs from all_pairs are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for &(i, j) in &self.edges {
            a.set(i, j, Rational::one());
        }
        a
    }

    /// Number of edges whose endpoints carry different signs.
    pub fn crossing_edges(&self, indicator: &[i64]) -> Result<u64> {
        check_indicator(self.n, indicator)?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(i, j)| indicator[i] != indicator[j])
            .count() as u64)
    }
}

pub(crate) fn check_indicator(n: usize, indicator: &[i64]) -> Result<()> {
    if indicator.len() != n || indicator.iter().any(|&v| v != 1 && v != -1) {
        return Err(Error::BadIndicator);
    }
    Ok(())
}

/// A bipartition given by a `±1` indicator and the number of edges it cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub indicator: Vec<i64>,
    pub size: u64,
}

impl Cut {
    pub fn of(g: &Graph, indicator: Vec<i64>) -> Result<Self> {
        let size = g.crossing_edges(&indicator)?;
        Ok(Cut { indicator, size })
    }
}

fn cube(n: usize) -> Rational {
    let m = int(n as i64 + 1);
    &m * &m * &m
}

/// `C = 4/(n+1)³ (I + A/(n+1)³)` for a symmetric 0/1 matrix `A`.
pub fn gadget_matrix(adjacency: &SymMatrix) -> SymMatrix {
    let n = adjacency.dim();
    let c3 = cube(n);
    let off = adjacency.scale(&(Rational::one() / &c3));
    SymMatrix::identity(n).add(&off).scale(&(int(4) / c3))
}

/// `μ = n(n+1)³/4 + k − 1 − eᵀAe/4`.
pub fn gadget_mu(adjacency: &SymMatrix, k: u64) -> Rational {
    let n = adjacency.dim();
    let total = adjacency.entries().fold(Rational::zero(), |acc, v| acc + v);
    int(n as i64) * cube(n) / int(4) + Rational::from_integer(BigInt::from(k)) - int(1) - total / int(4)
}

fn seven_term(n: usize) -> Rational {
    // 1 + 16 n^7
    let n = int(n as i64);
    let n7 = (0..7).fold(int(1), |acc, _| acc * &n);
    int(1) + int(16) * n7
}

/// `α = 16 n (1 + 16 n⁷)`.
pub fn gadget_alpha(n: usize) -> Rational {
    int(16) * int(n as i64) * seven_term(n)
}

/// `η = 1 / (4 (1 + 16 n⁷))`.
pub fn gadget_eta(n: usize) -> Rational {
    Rational::one() / (int(4) * seven_term(n))
}

/// Witness-negativity bound `−1/(4(1 + 16 n⁷))`.
pub fn witness_bound(n: usize) -> Rational {
    -gadget_eta(n)
}

fn check_k(n: usize, k: u64) -> Result<()> {
    let max = (n as u64) * (n as u64);
    if k < 1 || k > max {
        return Err(Error::BadK { k, max });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NemirovskiGadget {
    adjacency: SymMatrix,
    k: u64,
    c: SymMatrix,
    mu: Rational,
    pencil: AffinePencil,
}

impl NemirovskiGadget {
    pub fn n(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn adjacency(&self) -> &SymMatrix {
        &self.adjacency
    }

    pub fn c(&self) -> &SymMatrix {
        &self.c
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// `μ + 1/4`, the corner entry of `L(x)`.
    pub fn corner(&self) -> Rational {
        &self.mu + ratio(1, 4)
    }

    pub fn pencil(&self) -> &AffinePencil {
        &self.pencil
    }
}

pub fn build_gadget(g: &Graph, k: u64) -> Result<NemirovskiGadget> {
    let n = g.n();
    check_k(n, k)?;
    let adjacency = g.adjacency();
    let c = gadget_matrix(&adjacency);
    let mu = gadget_mu(&adjacency, k);
    let corner = &mu + ratio(1, 4);
    let constant = SymMatrix::from_upper_fn(n + 1, |i, j| {
        if i < n && j < n {
            c.get(i, j).clone()
        } else if i == n && j == n {
            corner.clone()
        } else {
            Rational::zero()
        }
    });
    let coefficients = (0..n)
        .map(|i| {
            let mut m = SymMatrix::zeros(n + 1);
            m.set(i, n, Rational::one());
            m
        })
        .collect();
    let pencil = AffinePencil::new(constant, coefficients)?;
    Ok(NemirovskiGadget {
        adjacency,
        k,
        c,
        mu,
        pencil,
    })
}

/// The `(n+1) × (n+1)` interval family whose members are PSD iff `L(x)` is
/// PSD on `[-1, 1]ⁿ`.
pub fn maxcut_to_interval(g: &Graph, k: u64) -> Result<IntervalSymMatrix> {
    let gadget = build_gadget(g, k)?;
    let n = g.n();
    let base = gadget.pencil().constant();
    let mut lower = base.clone();
    let mut upper = base.clone();
    for i in 0..n {
        lower.set(i, n, int(-1));
        upper.set(i, n, int(1));
    }
    IntervalSymMatrix::new(lower, upper)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCubic {
    pub f: Polynomial,
    pub domain: BoxDomain,
    pub alpha: Rational,
    pub eta: Rational,
}

impl GadgetCubic {
    pub fn n(&self) -> usize {
        (self.f.nvars() - 1) / 2
    }
}

/// Builds `f` from an existing gadget.
pub fn cubic_from_gadget(gadget: &NemirovskiGadget) -> GadgetCubic {
    let n = gadget.n();
    let nv = 2 * n + 1;
    let y = |a: usize| n + a;
    let alpha = gadget_alpha(n);
    let eta = gadget_eta(n);
    let half = ratio(1, 2);
    let base = gadget.pencil().constant();
    let mut f = Polynomial::zero(nv);

    // ½ yᵀ L₀ y
    for a in 0..=n {
        for b in a..=n {
            let v = base.get(a, b);
            if v.is_zero() {
                continue;
            }
            let mut e = vec![0u32; nv];
            e[y(a)] += 1;
            e[y(b)] += 1;
            let coef = if a == b { v * &half } else { v.clone() };
            f.add_term(e, coef);
        }
    }
    // ½ yᵀ (Σ xᵢ Lᵢ) y = Σ xᵢ yᵢ y_n
    for i in 0..n {
        let mut e = vec![0u32; nv];
        e[i] = 1;
        e[y(i)] = 1;
        e[y(n)] = 1;
        f.add_term(e, Rational::one());
    }
    for i in 0..nv {
        let mut e = vec![0u32; nv];
        e[i] = 2;
        let c = if i < n { &alpha * &half } else { &eta * &half };
        f.add_term(e, c);
    }

    GadgetCubic {
        f,
        domain: BoxDomain::cube(nv, int(-1), int(1)).expect("valid unit box"),
        alpha,
        eta,
    }
}

pub fn maxcut_to_cubic(g: &Graph, k: u64) -> Result<GadgetCubic> {
    Ok(cubic_from_gadget(&build_gadget(g, k)?))
}

/// `H(y)`, the `n × (n+1)` matrix of mixed partials `∂²(yᵀL(x)y)/∂xᵢ∂yⱼ`:
/// `2y_n` on the diagonal, `2yᵢ` in the last column.
pub fn mixed_partials(n: usize, y: &[Rational]) -> Vec<Vec<Rational>> {
    assert_eq!(y.len(), n + 1, "y must have length n + 1");
    (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n + 1];
            row[i] += int(2) * &y[n];
            row[n] += int(2) * &y[i];
            row
        })
        .collect()
}

/// The block matrix `[[αI, ½H(y)], [½H(y)ᵀ, L(x) + ηI]]`.
pub fn block_hessian(gadget: &NemirovskiGadget, alpha: &Rational, eta: &Rational, x: &[Rational], y: &[Rational]) -> Result<SymMatrix> {
    let n = gadget.n();
    let l = gadget.pencil().eval(x)?;
    let h = mixed_partials(n, y);
    let half = ratio(1, 2);
    Ok(SymMatrix::from_upper_fn(2 * n + 1, |i, j| {
        match (i < n, j < n) {
            (true, true) => {
                if i == j {
                    alpha.clone()
                } else {
                    Rational::zero()
                }
            }
            (true, false) => &h[i][j - n] * &half,
            (false, false) => {
                let v = l.get(i - n, j - n).clone();
                if i == j {
                    v + eta
                } else {
                    v
                }
            }
            (false, true) => unreachable!("upper triangle only"),
        }
    }))
}

/// Explicit nonconvexity certificate built from a large cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetWitness {
    pub xbar: Vec<Rational>,
    /// `(x̄, 0)`, a point of the box.
    pub point: Vec<Rational>,
    /// `(0ₙ, −C⁻¹x̄, 1)`, unnormalized.
    pub z: Vec<Rational>,
    /// `zᵀ ∇²f(x̄, 0) z`.
    pub quad_form: Rational,
    /// `zᵀ ∇²f(x̄, 0) z / zᵀz`.
    pub value: Rational,
    /// `x̄ᵀ C⁻¹ x̄`.
    pub schur_value: Rational,
}

pub fn witness_from_cut(gadget: &NemirovskiGadget, cubic: &GadgetCubic, cut: &Cut) -> Result<GadgetWitness> {
    let n = gadget.n();
    check_indicator(n, &cut.indicator)?;
    let xbar: Vec<Rational> = cut.indicator.iter().map(|&v| int(v)).collect();
    let a = gadget.adjacency();
    let total = a.entries().fold(Rational::zero(), |acc, v| acc + v);
    let size = (total - a.quad_form(&xbar)) / int(4);
    if size != Rational::from_integer(BigInt::from(cut.size)) {
        return Err(Error::BadInput(format!(
            "cut records size {} but its indicator cuts {}",
            cut.size, size
        )));
    }
    if cut.size < gadget.k() {
        return Err(Error::CutTooSmall {
            size: cut.size,
            k: gadget.k(),
        });
    }
    let c_inv = invert(gadget.c())?;
    let w = c_inv.mul_vec(&xbar);
    let schur_value = rational::dot(&xbar, &w);

    let mut z = vec![Rational::zero(); 2 * n + 1];
    for i in 0..n {
        z[n + i] = -w[i].clone();
    }
    z[2 * n] = Rational::one();
    let mut point = xbar.clone();
    point.resize(2 * n + 1, Rational::zero());

    let hess = cubic.f.hessian_at(&point)?;
    let quad_form = hess.quad_form(&z);
    let norm2 = rational::dot(&z, &z);
    let value = &quad_form / norm2;
    debug_assert!(value.is_negative());
    Ok(GadgetWitness {
        xbar,
        point,
        z,
        quad_form,
        value,
        schur_value,
    })
}

/// `f = g + x_{n+1}^d` over `b × [0, 1]`.
pub fn lift_degree(g: &Polynomial, b: &BoxDomain, d: u32) -> Result<(Polynomial, BoxDomain)> {
    let degree = g.degree();
    if degree > 3 {
        return Err(Error::DegreeTooHigh { degree, max: 3 });
    }
    if d < 4 {
        return Err(Error::BadDegree(d));
    }
    if g.nvars() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.nvars(),
            found: b.dim(),
        });
    }
    let n = g.nvars();
    let mut exps = vec![0u32; n + 1];
    exps[n] = d;
    let f = &g.extend_vars(n + 1) + &Polynomial::monomial(exps, Rational::one());
    let unit = BoxDomain::new(vec![int(0)], vec![int(1)])?;
    Ok((f, b.product(&unit)))
}

/// Instance-size measures: `max` is the largest absolute numerator or
/// denominator, `length` the bit length of the canonical JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceMetrics {
    pub length: u64,
    pub max: BigInt,
}

pub trait Instance {
    fn rationals(&self) -> Vec<Rational>;
    fn canonical_json(&self) -> String;
}

pub fn instance_metrics(obj: &dyn Instance) -> InstanceMetrics {
    let max = obj
        .rationals()
        .iter()
        .map(rational::magnitude)
        .max()
        .unwrap_or_else(BigInt::zero);
    InstanceMetrics {
        length: 8 * obj.canonical_json().len() as u64,
        max,
    }
}

fn pencil_rationals(p: &AffinePencil) -> Vec<Rational> {
    let mut out: Vec<Rational> = p.constant().entries().cloned().collect();
    for m in p.coefficients() {
        out.extend(m.entries().cloned());
    }
    out
}

impl Instance for NemirovskiGadget {
    fn rationals(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.adjacency.entries().cloned().collect();
        out.push(Rational::from_integer(BigInt::from(self.k)));
        out.extend(self.c.entries().cloned());
        out.push(self.mu.clone());
        out.extend(pencil_rationals(&self.pencil));
        out
    }

    fn canonical_json(&self) -> String {
        serde_json::json!({
            "n": self.n(),
            "k": self.k,
            "adjacency": self.adjacency,
            "c": self.c,
            "mu": rational::format(&self.mu),
            "pencil": self.pencil,
        })
        .to_string()
    }
}

impl Instance for GadgetCubic {
    fn rationals(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.f.terms().map(|(_, c)| c.clone()).collect();
        out.extend(self.domain.lower().iter().cloned());
        out.extend(self.domain.upper().iter().cloned());
        out
    }

    fn canonical_json(&self) -> String {
        serde_json::json!({ "f": self.f, "box": self.domain }).to_string()
    }
}

impl Instance for IntervalSymMatrix {
    fn rationals(&self) -> Vec<Rational> {
        self.lower().entries().chain(self.upper().entries()).cloned().collect()
    }

    fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("interval family serializes")
    }
}

/// `{"n", "k", "mu", "alpha", "eta"}` for a constructed instance.
pub fn manifest(gadget: &NemirovskiGadget) -> serde_json::Value {
    let n = gadget.n();
    serde_json::json!({
        "n": n,
        "k": gadget.k(),
        "mu": rational::format(gadget.mu()),
        "alpha": rational::format(&gadget_alpha(n)),
        "eta": rational::format(&gadget_eta(n)),
    })
}
