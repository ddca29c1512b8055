//! Shared fixtures for benchmarks.

use schext::action::Semimodule;
use schext::cofib::{cohomology_monoid, ClassifyMode};
use schext::extension::Extension;
use schext::finmon::FiniteMonoid;

pub fn trivial(m: &FiniteMonoid, k: &FiniteMonoid) -> Semimodule {
    Semimodule::trivial(m, k).expect("the trivial action is valid")
}

/// The nonsplit extension of C2 by C2, with carrier C4.
pub fn c4_class() -> Extension {
    let c2 = FiniteMonoid::cyclic_group(2);
    let cm =
        cohomology_monoid(&trivial(&c2, &c2), ClassifyMode::FactorSystem).expect("small fibre");
    cm.extensions[1 - cm.unit].clone()
}
