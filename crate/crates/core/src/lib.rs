//! Distance-spectral toolkit for uniform hypertrees: family constructors,
//! distance matrices and Perron vectors, eigenvector identity checkers, graft
//! rewrites with strict spectral-radius comparisons, and exhaustive extremal
//! search over isomorphism classes.

pub mod canonical;
pub mod error;
pub mod families;
pub mod grafts;
pub mod hypergraph;
pub mod io;
pub mod report;
pub mod spectral;

pub use canonical::CanonicalCode;
pub use error::{Error, Result};
pub use families::{
    attach_two_paths, caterpillar, g_c, hyperstar, identify_roots, loose_path, rooted_product,
    CaterpillarParams, FamilySpec, GcParams, RootedHypergraph, SpineLabeledHypergraph,
};
pub use hypergraph::Hypergraph;
pub use report::{CheckReport, Sign, Tolerances, Verdict};
pub use spectral::{
    perron, perron_default, rayleigh, rayleigh_difference, DistanceMatrix, PerronOptions,
    SpectralResult,
};
