//! Schreier extensions of finite monoids.
//!
//! Finite monoids are represented by multiplication tables on `0..n` with
//! element 0 as the identity.

pub mod action;
pub mod cofib;
pub mod direction;
pub mod extension;
pub mod finmon;

pub use action::{SchreierPoint, Semimodule};
pub use direction::{df_by_coequalizer, df_by_semidirect, DirectionBundle, DirectionError};
pub use extension::{ExtMorphism, Extension, ExtensionError, SchreierData};
pub use finmon::{Elem, FiniteMonoid, Hom, HomSearch, MonoidError};
