//! Good pairs (V, W): checking the three defining conditions, extracting the
//! fibre data, and building pairs that are prime by construction.

pub mod build;
pub mod check;
pub mod factor;
pub mod fiber;
pub mod irreducible;
pub mod presentation;

pub use build::{build_bundle_pair, build_graph_pair, Fraction};
pub use check::{check_containment, check_generic_projection, check_good_pair, fibre_closure, CheckOptions, GoodPair, GoodPairCertificate};
pub use fiber::{fiber_analysis, FiberData, LinearFiberForm};
pub use presentation::{Family, Primality, RationalPoint, VarietyPresentation};
