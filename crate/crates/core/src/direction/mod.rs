//! The direction of a Schreier extension with commutative kernel.
//!
//! For an extension `K -> X -> M` the relation `R_E = {(x, k(a) + x)}` is a
//! reflexive relation on `X`. When `K` is an abelian group the Chasles
//! relation on `R_E` is an equivalence and its quotient `d(E)` is a Schreier
//! point over `M` whose action is the induced one.

mod chasles;
mod df;
mod functor;
mod internal;
mod re;

use crate::action::ActionError;
use crate::extension::ExtensionError;
use crate::finmon::{Elem, MonoidError};

pub use chasles::{self_connector, Chasles};
pub use df::{df_by_coequalizer, df_by_semidirect, DirectionBundle};
pub use functor::{alpha1_is_equivariant, direction_on_morphism, product_preserved};
pub use internal::{internal_monoid_to_point, point_to_internal_monoid, InternalMonoid};
pub use re::{build_re, RelationOnExtension, RelationRE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DirectionError {
    #[error("kernel is not commutative")]
    NotCommutative,
    #[error("kernel is not cancellative")]
    NotCancellative,
    #[error("{0} is not well defined")]
    NotWellDefined(&'static str),
    #[error("identity fails: {0}")]
    IdentityFails(&'static str),
    #[error("not an internal monoid: {0} fails")]
    NotInternalMonoid(&'static str),
    #[error("multiplication is not forced at ({x}, {y})")]
    OmegaNotForced { x: Elem, y: Elem },
    #[error("data live over different monoids")]
    Mismatch,
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}
