//! Exact convexity detection for low-degree polynomials over boxes, interval
//! PSD testing, and the MAX-CUT gadgets that link the two.
//!
//! All arithmetic on instance data is exact ([`rational::Rational`]); floating
//! point appears only in sampling heuristics and cross-checks.

pub mod convexity;
pub mod error;
pub mod gadgets;
pub mod interval;
pub mod linalg;
pub mod oracles;
pub mod poly;
pub mod rational;

pub use convexity::{
    check_cubic_exact, check_fast, check_general, check_lifted_exact, check_quadratic,
    gershgorin_box_sufficient, negative_curvature_search, verify_witness, CertificationMode,
    ConvexityVerdict, CurvatureWitness,
};
pub use error::{Error, Result};
pub use gadgets::{
    build_gadget, instance_metrics, lift_degree, maxcut_to_cubic, maxcut_to_interval,
    witness_from_cut, Cut, GadgetCubic, Graph, InstanceMetrics, NemirovskiGadget,
};
pub use interval::{check_interval_psd, interval_enclosure, IntervalPsdResult, IntervalSymMatrix};
pub use linalg::{
    approx_eigenvalues, gershgorin_lower_bound, invert, is_psd, is_psd_charpoly, PsdCertificate,
    SymMatrix,
};
pub use oracles::{
    cut_size, gap_check, hty_bound_check, lemma_bound_check, max_cut_bruteforce, verify_reduction,
    ReductionReport,
};
pub use poly::{AffinePencil, BoxDomain, Polynomial};
pub use rational::Rational;
