//! Monoid extensions `K -> X -> M` and their Schreier data.

mod constructors;
mod morphism;
mod schreier;

use std::sync::{Arc, OnceLock};

use crate::finmon::{congruence_closure, quotient_by, Elem, FiniteMonoid, Hom, MonoidError};

pub use constructors::{fibre_product, group_ext, product_extension, trivial_left, trivial_right};
pub use morphism::{
    enumerate_ext_morphisms, enumerate_extension_maps, extension_isomorphism, fibre_isomorphism,
    ExtMorphism, Square,
};
pub use schreier::SchreierData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("k is not injective")]
    NotInjective,
    #[error("f is not surjective")]
    NotSurjective,
    #[error("image of k is not the kernel of f")]
    NotKernel,
    #[error("k and f are not composable")]
    Mismatch,
    #[error("not a Schreier extension: fibre over {m} has no representative")]
    NotSchreier { m: Elem },
    #[error("square {0:?} does not commute")]
    SquareFails(Square),
    #[error("representatives over {m} are not preserved")]
    RepsNotPreserved { m: Elem },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

struct ExtInner {
    k: Hom,
    f: Hom,
    schreier: OnceLock<Result<SchreierData, ExtensionError>>,
}

/// An extension `k: K -> X`, `f: X -> M` with `k` a kernel of `f`.
///
/// Schreier data is computed on first use and cached.
#[derive(Clone)]
pub struct Extension(Arc<ExtInner>);

impl Extension {
    pub fn new(k: Hom, f: Hom) -> Result<Self, ExtensionError> {
        if k.cod() != f.dom() {
            return Err(ExtensionError::Mismatch);
        }
        if !k.is_injective() {
            return Err(ExtensionError::NotInjective);
        }
        if !f.is_surjective() {
            return Err(ExtensionError::NotSurjective);
        }
        if k.image() != f.preimage(0) {
            return Err(ExtensionError::NotKernel);
        }
        Ok(Self::new_unchecked(k, f))
    }

    pub(crate) fn new_unchecked(k: Hom, f: Hom) -> Self {
        Extension(Arc::new(ExtInner {
            k,
            f,
            schreier: OnceLock::new(),
        }))
    }

    /// The kernel extension of a surjective homomorphism.
    pub fn of_surjection(f: &Hom) -> Result<Self, ExtensionError> {
        if !f.is_surjective() {
            return Err(ExtensionError::NotSurjective);
        }
        let (_, k) = crate::finmon::submonoid(f.dom(), &f.preimage(0))?;
        Ok(Self::new_unchecked(k, f.clone()))
    }

    /// The same extension with the given Schreier data installed without
    /// validation.
    pub fn with_schreier_data(&self, data: SchreierData) -> Self {
        let cache = OnceLock::new();
        let _ = cache.set(Ok(data));
        Extension(Arc::new(ExtInner {
            k: self.0.k.clone(),
            f: self.0.f.clone(),
            schreier: cache,
        }))
    }

    pub fn kernel(&self) -> &FiniteMonoid {
        self.0.k.dom()
    }

    pub fn carrier(&self) -> &FiniteMonoid {
        self.0.f.dom()
    }

    pub fn base(&self) -> &FiniteMonoid {
        self.0.f.cod()
    }

    pub fn k(&self) -> &Hom {
        &self.0.k
    }

    pub fn f(&self) -> &Hom {
        &self.0.f
    }

    pub fn fibre(&self, m: Elem) -> Vec<Elem> {
        self.0.f.preimage(m)
    }

    /// `x + y` in the carrier.
    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.carrier().op(x, y)
    }

    /// Whether `a -> k(a) + u` is a bijection from `K` onto the fibre of `u`.
    pub fn is_representative(&self, u: Elem) -> bool {
        let m = self.f().apply(u);
        let fibre = self.fibre(m);
        if fibre.len() != self.kernel().order() {
            return false;
        }
        let mut seen = vec![false; self.carrier().order()];
        self.kernel()
            .elements()
            .all(|a| !std::mem::replace(&mut seen[self.add(self.k().apply(a), u)], true))
    }

    /// The set `B_m` of representatives over `m`, in ascending order.
    pub fn representatives(&self, m: Elem) -> Vec<Elem> {
        self.fibre(m)
            .into_iter()
            .filter(|&u| self.is_representative(u))
            .collect()
    }

    /// Cached Schreier data, or the first fibre without representatives.
    pub fn schreier(&self) -> Result<&SchreierData, ExtensionError> {
        self.0
            .schreier
            .get_or_init(|| SchreierData::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_schreier(&self) -> bool {
        self.schreier().is_ok()
    }

    /// Kernel commutative and cancellative; finite, so an abelian group.
    pub fn is_cc(&self) -> bool {
        self.kernel().is_commutative() && self.kernel().is_cancellative()
    }

    /// The retraction `q`; panics if the extension is not Schreier.
    pub fn q(&self, x: Elem) -> Elem {
        self.schreier().expect("Schreier extension").q(x)
    }

    /// The base representative `u_m`; panics if the extension is not Schreier.
    pub fn u(&self, m: Elem) -> Elem {
        self.schreier().expect("Schreier extension").base_rep(m)
    }

    /// Whether the quotient of `X` by the congruence generated by
    /// `(k(a), 0)` is isomorphic to `M` through the map induced by `f`.
    pub fn cokernel_check(&self) -> bool {
        let x = self.carrier();
        let c = congruence_closure(x, self.kernel().elements().map(|a| (self.k().apply(a), 0)));
        let Ok((q, proj)) = quotient_by(x, &c) else {
            return false;
        };
        if q.order() != self.base().order() {
            return false;
        }
        let mut induced = vec![usize::MAX; q.order()];
        for e in x.elements() {
            let (cls, m) = (proj.apply(e), self.f().apply(e));
            if induced[cls] == usize::MAX {
                induced[cls] = m;
            } else if induced[cls] != m {
                return false;
            }
        }
        Hom::new(&q, self.base(), induced)
            .map(|h| h.is_bijective())
            .unwrap_or(false)
    }
}

impl PartialEq for Extension {
    fn eq(&self, other: &Self) -> bool {
        self.0.k == other.0.k && self.0.f == other.0.f
    }
}

impl Eq for Extension {}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Extension({} -> {} -> {}; k={:?}, f={:?})",
            self.kernel().order(),
            self.carrier().order(),
            self.base().order(),
            self.k().map(),
            self.f().map()
        )
    }
}

#[cfg(test)]
mod tests;
