//! Pushforwards along semimodule maps, Baer sums and the classification of
//! fibres through factor systems.

mod classify;
mod cohomology;
mod factor;
mod pushforward;

use crate::action::ActionError;
use crate::extension::ExtensionError;
use crate::finmon::{Elem, MonoidError};

pub use classify::{
    a4_probe, classify_by_factor_systems, classify_by_tables, enumerate_factor_systems,
    fiber_classify, schreier_tables, unit_shifts, A4Probe, Classification, ClassifyMode,
    BRUTE_FORCE_BOUND, FACTOR_SYSTEM_BOUND,
};
pub use cohomology::{class_of, cohomology_monoid, orbit_minimum, CohomologyMonoid};
pub use factor::{crossed_product, extract_factor_system, normal_form, FactorSystem};
pub use pushforward::{
    baer_sum, cocartesian_factorize, count_factorizations, product_ext, pushforward, Pushforward,
};

/// The first condition a factor system violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSystemFault {
    Shape,
    Normalization { m: Elem },
    Cocycle { m: Elem, n: Elem, p: Elem },
    Compatibility { m: Elem, n: Elem, b: Elem },
    NotAssociative,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CofibError {
    #[error("map of kernels does not preserve the actions")]
    NotActionPreserving,
    #[error("lambda1 is not beta1 after alpha1")]
    FactorizationHypothesisFails,
    #[error("extensions lie in different fibres")]
    FibreMismatch,
    #[error("invalid factor system: {0:?}")]
    InvalidFactorSystem(FactorSystemFault),
    #[error("|K| * |M| = {size} exceeds the bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("{0}")]
    NotWellDefined(&'static str),
    #[error("data live over different monoids")]
    Mismatch,
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}
