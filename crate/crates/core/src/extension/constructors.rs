use super::{Extension, ExtensionError};
use crate::finmon::{product, pullback, FiniteMonoid, Hom};

/// `0 -> M = M`.
pub fn trivial_right(m: &FiniteMonoid) -> Extension {
    let zero = FiniteMonoid::trivial();
    Extension::new_unchecked(Hom::zero(&zero, m), Hom::identity(m))
}

/// `M = M -> 0`.
pub fn trivial_left(m: &FiniteMonoid) -> Extension {
    Extension::new_unchecked(Hom::identity(m), Hom::zero(m, &FiniteMonoid::trivial()))
}

/// `K -> K x M -> M` with `k(a) = (a, 0)`; the element `(a, m)` is
/// encoded as `a * |M| + m`.
pub fn product_extension(k: &FiniteMonoid, m: &FiniteMonoid) -> Extension {
    let p = product(k, m);
    let inj = Hom::new_unchecked(k, p.monoid(), k.elements().map(|a| a * m.order()).collect());
    Extension::new_unchecked(inj, p.projection(1))
}

/// The kernel extension of a surjection between groups.
pub fn group_ext(f: &Hom) -> Result<Extension, ExtensionError> {
    if !f.dom().is_group() || !f.cod().is_group() {
        return Err(ExtensionError::BadParams(
            "group_ext needs a homomorphism between groups".into(),
        ));
    }
    Extension::of_surjection(f)
}

impl Extension {
    /// `C3 -> S3 -> C2` through the sign homomorphism.
    pub fn es3() -> Extension {
        let s3 = FiniteMonoid::symmetric_group3();
        let sign = Hom::new_unchecked(&s3, &FiniteMonoid::cyclic_group(2), vec![0, 0, 0, 1, 1, 1]);
        Extension::of_surjection(&sign).expect("sign is onto")
    }
}

/// The fibre product `K x K' -> X x_M X' -> M` with the kernel pair
/// `(a, a')` encoded as `a * |K'| + a'`.
pub fn fibre_product(e1: &Extension, e2: &Extension) -> Result<Extension, ExtensionError> {
    if e1.base() != e2.base() {
        return Err(ExtensionError::Mismatch);
    }
    let x = pullback(e1.f(), e2.f())?;
    let kk = product(e1.kernel(), e2.kernel());
    let k = x.lift(kk.monoid(), |c| {
        let t = kk.tuple(c);
        vec![e1.k().apply(t[0]), e2.k().apply(t[1])]
    })?;
    let f = x.projection(0).then(e1.f())?;
    Extension::new(k, f)
}
