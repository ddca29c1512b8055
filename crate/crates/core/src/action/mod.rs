//! Semimodules, induced actions, Schreier points and connectors.

mod connector;
mod induced;
mod point;

use crate::extension::ExtensionError;
use crate::finmon::{enumerate_homs, Elem, FiniteMonoid, Hom, MonoidError};

pub use connector::{connector, count_connectors, s_reflexive_check, Connector, SReflexive};
pub use induced::{induced_pre_action, patrick_check, to_semimodule};
pub use point::{point_action, point_iso_semidirect, semidirect, PointMorphism, SchreierPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("kernel is not commutative")]
    NotCommutative,
    #[error("action table has the wrong shape")]
    TableShape,
    #[error("action value out of range at ({m}, {a})")]
    OutOfRange { m: Elem, a: Elem },
    #[error("A1 fails: the identity moves {a}")]
    AxiomA1Violation { a: Elem },
    #[error("A2 fails: {m} does not fix 0")]
    AxiomA2Violation { m: Elem },
    #[error("A3 fails at ({m}, {a}, {b})")]
    AxiomA3Violation { m: Elem, a: Elem, b: Elem },
    #[error("A4 fails at ({m}, {m2}, {a})")]
    AxiomA4Violation { m: Elem, m2: Elem, a: Elem },
    #[error("induced action is not well defined at ({m}, {a})")]
    NotWellDefined { m: Elem, a: Elem },
    #[error("section is not a splitting of f")]
    NotSplit,
    #[error("no decomposition of {b}")]
    NoRetraction { b: Elem },
    #[error("several decompositions of {b}")]
    RetractionNotUnique { b: Elem },
    #[error("relation is not reflexive")]
    NotReflexive,
    #[error("relation is not S-reflexive: {0}")]
    NotSReflexive(Box<ActionError>),
    #[error("relations do not centralize: t = {t}, (x, y) = ({x}, {y})")]
    NotCentral { t: Elem, x: Elem, y: Elem },
    #[error("relations live on different monoids")]
    Mismatch,
    #[error("map of points fails: {0}")]
    PointMorphismFails(&'static str),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A commutative monoid `K` with an action `eta: M -> End(K)`, stored as a
/// dense table with `act(m, a) = eta(m)(a)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semimodule {
    m: FiniteMonoid,
    k: FiniteMonoid,
    act: Vec<Elem>,
}

impl Semimodule {
    /// Validates commutativity of `K` and the axioms A1 to A4, in that order.
    pub fn new(m: &FiniteMonoid, k: &FiniteMonoid, act: Vec<Elem>) -> Result<Self, ActionError> {
        if !k.is_commutative() {
            return Err(ActionError::NotCommutative);
        }
        let (nm, nk) = (m.order(), k.order());
        if act.len() != nm * nk {
            return Err(ActionError::TableShape);
        }
        if let Some(i) = act.iter().position(|&v| v >= nk) {
            return Err(ActionError::OutOfRange {
                m: i / nk,
                a: i % nk,
            });
        }
        let s = Semimodule {
            m: m.clone(),
            k: k.clone(),
            act,
        };
        s.check_axioms()?;
        Ok(s)
    }

    pub fn from_rows(
        m: &FiniteMonoid,
        k: &FiniteMonoid,
        rows: &[Vec<Elem>],
    ) -> Result<Self, ActionError> {
        if rows.len() != m.order() || rows.iter().any(|r| r.len() != k.order()) {
            return Err(ActionError::TableShape);
        }
        Self::new(m, k, rows.concat())
    }

    pub(crate) fn new_unchecked(m: &FiniteMonoid, k: &FiniteMonoid, act: Vec<Elem>) -> Self {
        Semimodule {
            m: m.clone(),
            k: k.clone(),
            act,
        }
    }

    fn check_axioms(&self) -> Result<(), ActionError> {
        let (m, k) = (&self.m, &self.k);
        if let Some(a) = k.elements().find(|&a| self.act(0, a) != a) {
            return Err(ActionError::AxiomA1Violation { a });
        }
        if let Some(x) = m.elements().find(|&x| self.act(x, 0) != 0) {
            return Err(ActionError::AxiomA2Violation { m: x });
        }
        for x in m.elements() {
            for a in k.elements() {
                for b in k.elements() {
                    if self.act(x, k.op(a, b)) != k.op(self.act(x, a), self.act(x, b)) {
                        return Err(ActionError::AxiomA3Violation { m: x, a, b });
                    }
                }
            }
        }
        for x in m.elements() {
            for y in m.elements() {
                for a in k.elements() {
                    if self.act(m.op(y, x), a) != self.act(y, self.act(x, a)) {
                        return Err(ActionError::AxiomA4Violation { m: x, m2: y, a });
                    }
                }
            }
        }
        Ok(())
    }

    /// `M` acting trivially on `K`.
    pub fn trivial(m: &FiniteMonoid, k: &FiniteMonoid) -> Result<Self, ActionError> {
        Self::new(m, k, m.elements().flat_map(|_| k.elements()).collect())
    }

    /// The semimodule given by a homomorphism into [`endomorphism_monoid`].
    pub fn from_endomorphisms(
        m: &FiniteMonoid,
        k: &FiniteMonoid,
        eta: &Hom,
        ends: &[Hom],
    ) -> Result<Self, ActionError> {
        Self::new(
            m,
            k,
            m.elements()
                .flat_map(|x| ends[eta.apply(x)].map().to_vec())
                .collect(),
        )
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.m
    }

    pub fn module(&self) -> &FiniteMonoid {
        &self.k
    }

    #[inline]
    pub fn act(&self, m: Elem, a: Elem) -> Elem {
        self.act[m * self.k.order() + a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.act
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.act
            .chunks(self.k.order().max(1))
            .map(<[Elem]>::to_vec)
            .collect()
    }

    /// The endomorphism `eta(m)` as a homomorphism of `K`.
    pub fn endomorphism(&self, m: Elem) -> Hom {
        let n = self.k.order();
        Hom::new_unchecked(&self.k, &self.k, self.act[m * n..(m + 1) * n].to_vec())
    }

    pub fn is_trivial_action(&self) -> bool {
        self.m
            .elements()
            .all(|x| self.k.elements().all(|a| self.act(x, a) == a))
    }

    /// Whether `h: K -> K'` commutes with the actions.
    pub fn is_equivariant(&self, h: &Hom, other: &Semimodule) -> bool {
        self.m == other.m
            && h.dom() == &self.k
            && h.cod() == &other.k
            && self.m.elements().all(|x| {
                self.k
                    .elements()
                    .all(|a| h.apply(self.act(x, a)) == other.act(x, h.apply(a)))
            })
    }
}

impl std::fmt::Debug for Semimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Semimodule(|M|={}, |K|={}, act={:?})",
            self.m.order(),
            self.k.order(),
            self.rows()
        )
    }
}

/// `End(K)` under composition, `(g . h)(a) = g(h(a))`, with the identity
/// first and the remaining endomorphisms in lexicographic order.
pub fn endomorphism_monoid(k: &FiniteMonoid) -> (FiniteMonoid, Vec<Hom>) {
    let id = Hom::identity(k);
    let mut ends = enumerate_homs(k, k, false);
    ends.retain(|h| *h != id);
    ends.insert(0, id);
    let n = ends.len();
    let index: std::collections::HashMap<&[Elem], usize> =
        ends.iter().enumerate().map(|(i, h)| (h.map(), i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for g in &ends {
        for h in &ends {
            let comp: Vec<Elem> = h.map().iter().map(|&a| g.apply(a)).collect();
            table.push(index[comp.as_slice()]);
        }
    }
    (FiniteMonoid::from_flat_unchecked(n, table), ends)
}

/// All actions of `m` on the commutative monoid `k`.
pub fn enumerate_semimodules(m: &FiniteMonoid, k: &FiniteMonoid) -> Vec<Semimodule> {
    if !k.is_commutative() {
        return Vec::new();
    }
    let (end, ends) = endomorphism_monoid(k);
    enumerate_homs(m, &end, false)
        .iter()
        .map(|eta| {
            Semimodule::new_unchecked(
                m,
                k,
                m.elements()
                    .flat_map(|x| ends[eta.apply(x)].map().to_vec())
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests;
