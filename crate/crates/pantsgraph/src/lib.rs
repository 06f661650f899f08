//! Exact combinatorics of the pants graph of a closed genus-2 surface and of
//! the once-punctured torus, with translation-length estimates for mapping
//! classes and a harness comparing them with mapping-torus volumes.

pub mod curves;
pub mod dt;
pub mod error;
pub mod farey;
pub mod freegroup;
pub mod genus2;
pub mod pants;
pub mod scalar;
pub mod surface;
pub mod translation;
pub mod volume;
pub mod word;

pub use curves::{apply_word, canonicalize, intersection_number, CurveSystem};
pub use error::{Error, Result};
pub use farey::{farey_distance, slope_intersection, Slope};
pub use pants::{
    is_elementary_move, neighbors, pants_distance, validate_pants, Cutoff, DistanceCertificate, PantsDecomposition,
    Status,
};
pub use surface::{Model, SurfaceSpec};
pub use translation::{
    orbit_distances, reducibility_heuristic, stable_length, Sample, TranslationEstimate, Verdict,
};
pub use volume::{
    attach_estimates, attach_samples, compare, export_monodromy, load_samples, load_volumes, parse_monodromy,
    power_consistency, write_samples, write_volumes, ComparisonReport, EstimatorConfig, MonodromyRecord,
};
pub use word::{Generator, MappingClassWord};

/// Curve systems over machine integers.
pub type Curve64 = CurveSystem<i64>;
/// Slopes over machine integers.
pub type Slope64 = Slope<i64>;
/// Pants decompositions over machine integers.
pub type Pants64 = PantsDecomposition<i64>;
/// Monodromy records with double-precision volumes.
pub type Record64 = MonodromyRecord<f64>;
