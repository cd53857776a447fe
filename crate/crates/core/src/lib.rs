//! Functorial clustering of finite metric spaces.
//!
//! Clustering schemes are treated as maps that must respect morphisms
//! between metric spaces: isometries, injective distance non-increasing
//! maps, or arbitrary distance non-increasing maps. The crate provides the
//! metric substrate, the three morphism families, numerical invariants,
//! flat schemes (Vietoris-Rips, motif-represented, clique and
//! invariant-driven schemes), hierarchical schemes (single linkage,
//! agglomerative linkage, trimming, clique-transformed single linkage) and
//! a randomized harness that checks the structural properties of all of
//! them on seeded corpora.

pub mod category;
pub mod cli;
pub mod error;
pub mod flat;
pub mod harness;
pub mod hierarchical;
pub mod invariants;
pub mod io;
pub mod metric;
pub mod partition;
pub mod union_find;

pub use category::{compose, exists_morphism, minimal_scale, CategoryTag, MetricMap, SearchLimits};
pub use error::{Error, Result};
pub use flat::{
    cluster_flat, cluster_flat_with, factorize_check, is_excisive_on, motif_metric_transform,
    richness_witness, scale_invariance_probe, Eta, FlatScheme, MotifSet,
};
pub use harness::{run_probe, ProbeConfig, ProbeId, ProbeReport};
pub use hierarchical::{
    agglomerative, dendrogram_to_ultrametric, is_persistence_preserving, rips_delta_m,
    scale_persistent, single_linkage_functor, trim_functor, Linkage, PersistentSet,
};
pub use invariants::{evaluate_invariant, InvariantSpec};
pub use metric::{
    collinear, delta_space, subdominant_ultrametric, validate_metric, FiniteMetricSpace,
    MetricOptions,
};
pub use partition::{pullback_partition, refines, Partition, PointMap};
