use super::{Extension, ExtensionError};
use crate::finmon::{Hom, HomSearch};

/// Which square of a morphism of extensions fails to commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Square {
    /// `k' . alpha1 = alpha2 . k`
    A,
    /// `f' . alpha2 = f`
    B,
}

/// A morphism of Schreier extensions over the same `M`, identity on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMorphism {
    src: Extension,
    dst: Extension,
    alpha1: Hom,
    alpha2: Hom,
}

impl ExtMorphism {
    /// Checks both squares and that base representatives land in
    /// representatives; the remaining ones then follow.
    pub fn new(
        src: &Extension,
        dst: &Extension,
        alpha1: Hom,
        alpha2: Hom,
    ) -> Result<Self, ExtensionError> {
        if src.base() != dst.base()
            || alpha1.dom() != src.kernel()
            || alpha1.cod() != dst.kernel()
            || alpha2.dom() != src.carrier()
            || alpha2.cod() != dst.carrier()
        {
            return Err(ExtensionError::Mismatch);
        }
        let (s, d) = (src.schreier()?, dst.schreier()?);
        if src
            .kernel()
            .elements()
            .any(|a| dst.k().apply(alpha1.apply(a)) != alpha2.apply(src.k().apply(a)))
        {
            return Err(ExtensionError::SquareFails(Square::A));
        }
        if src
            .carrier()
            .elements()
            .any(|x| dst.f().apply(alpha2.apply(x)) != src.f().apply(x))
        {
            return Err(ExtensionError::SquareFails(Square::B));
        }
        for m in src.base().elements() {
            if !d.reps(m).contains(&alpha2.apply(s.base_rep(m))) {
                return Err(ExtensionError::RepsNotPreserved { m });
            }
        }
        Ok(ExtMorphism {
            src: src.clone(),
            dst: dst.clone(),
            alpha1,
            alpha2,
        })
    }

    pub(crate) fn new_unchecked(
        src: &Extension,
        dst: &Extension,
        alpha1: Hom,
        alpha2: Hom,
    ) -> Self {
        ExtMorphism {
            src: src.clone(),
            dst: dst.clone(),
            alpha1,
            alpha2,
        }
    }

    pub fn identity(e: &Extension) -> Self {
        Self::new_unchecked(e, e, Hom::identity(e.kernel()), Hom::identity(e.carrier()))
    }

    /// Builds the morphism from `alpha2` alone, reading `alpha1` off the
    /// restriction to kernels.
    pub fn from_alpha2(
        src: &Extension,
        dst: &Extension,
        alpha2: Hom,
    ) -> Result<Self, ExtensionError> {
        let mut inv = vec![usize::MAX; dst.carrier().order()];
        for a in dst.kernel().elements() {
            inv[dst.k().apply(a)] = a;
        }
        let mut map = Vec::with_capacity(src.kernel().order());
        for a in src.kernel().elements() {
            let img = alpha2.apply(src.k().apply(a));
            if inv[img] == usize::MAX {
                return Err(ExtensionError::SquareFails(Square::A));
            }
            map.push(inv[img]);
        }
        let alpha1 = Hom::new(src.kernel(), dst.kernel(), map)?;
        Self::new(src, dst, alpha1, alpha2)
    }

    pub fn src(&self) -> &Extension {
        &self.src
    }

    pub fn dst(&self) -> &Extension {
        &self.dst
    }

    pub fn alpha1(&self) -> &Hom {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &Hom {
        &self.alpha2
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ExtMorphism) -> Result<ExtMorphism, ExtensionError> {
        if self.dst != g.src {
            return Err(ExtensionError::Mismatch);
        }
        Ok(Self::new_unchecked(
            &self.src,
            &g.dst,
            self.alpha1.then(&g.alpha1)?,
            self.alpha2.then(&g.alpha2)?,
        ))
    }

    pub fn is_iso(&self) -> bool {
        self.alpha1.is_bijective() && self.alpha2.is_bijective()
    }
}

fn fibre_restricted_search(src: &Extension, dst: &Extension) -> HomSearch {
    let mut search = HomSearch::new(src.carrier(), dst.carrier());
    for x in src.carrier().elements() {
        search = search.restrict(x, &dst.fibre(src.f().apply(x)));
    }
    search
}

/// Every morphism `src -> dst`, ordered by the table of `alpha2`.
pub fn enumerate_ext_morphisms(
    src: &Extension,
    dst: &Extension,
) -> Result<Vec<ExtMorphism>, ExtensionError> {
    if src.base() != dst.base() {
        return Err(ExtensionError::Mismatch);
    }
    let (s, d) = (src.schreier()?, dst.schreier()?);
    let mut search = fibre_restricted_search(src, dst);
    for m in src.base().elements() {
        search = search.restrict(s.base_rep(m), d.reps(m));
    }
    search
        .all()
        .into_iter()
        .map(|a2| ExtMorphism::from_alpha2(src, dst, a2))
        .collect()
}

/// An isomorphism `src -> dst` that is the identity on the common kernel.
pub fn fibre_isomorphism(src: &Extension, dst: &Extension) -> Option<ExtMorphism> {
    if src.base() != dst.base()
        || src.kernel() != dst.kernel()
        || src.carrier().order() != dst.carrier().order()
    {
        return None;
    }
    let mut search = fibre_restricted_search(src, dst).injective(true);
    for a in src.kernel().elements() {
        search = search.fix(src.k().apply(a), dst.k().apply(a));
    }
    let alpha2 = search.first()?;
    Some(ExtMorphism::new_unchecked(
        src,
        dst,
        Hom::identity(src.kernel()),
        alpha2,
    ))
}

/// Every `alpha2: X -> X'` over `M` that maps `k(K)` into `k'(K')`, with no
/// condition on representatives.
pub fn enumerate_extension_maps(
    src: &Extension,
    dst: &Extension,
) -> Result<Vec<Hom>, ExtensionError> {
    if src.base() != dst.base() {
        return Err(ExtensionError::Mismatch);
    }
    Ok(fibre_restricted_search(src, dst).all())
}

/// An isomorphism `src -> dst` over `M`, with any automorphism on kernels.
pub fn extension_isomorphism(src: &Extension, dst: &Extension) -> Option<ExtMorphism> {
    if src.base() != dst.base()
        || src.kernel() != dst.kernel()
        || src.carrier().order() != dst.carrier().order()
        || src.schreier().is_err()
        || dst.schreier().is_err()
    {
        return None;
    }
    let k = src.kernel();
    for phi in HomSearch::new(k, k).injective(true).all() {
        let mut search = fibre_restricted_search(src, dst).injective(true);
        for a in k.elements() {
            search = search.fix(src.k().apply(a), dst.k().apply(phi.apply(a)));
        }
        if let Some(alpha2) = search.first() {
            return Some(ExtMorphism::new_unchecked(src, dst, phi, alpha2));
        }
    }
    None
}
