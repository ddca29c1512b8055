use super::{df_by_coequalizer, DirectionBundle, DirectionError};
use crate::action::{to_semimodule, PointMorphism};
use crate::extension::{fibre_product, ExtMorphism, Extension};
use crate::finmon::{product, pullback, Elem, Hom};

/// `d(alpha)(gamma(x, k(a) + x)) = gamma'(alpha(x), k'(alpha1(a)) + alpha(x))`.
pub fn direction_on_morphism(
    alpha: &ExtMorphism,
    src: &DirectionBundle,
    dst: &DirectionBundle,
) -> Result<PointMorphism, DirectionError> {
    if alpha.src() != src.extension() || alpha.dst() != dst.extension() {
        return Err(DirectionError::Mismatch);
    }
    let mut map = vec![usize::MAX; src.df().order()];
    for (w, (x, _)) in src.re().relation().pairs().enumerate() {
        let a = src.re().witness(w);
        let image = dst.gamma_at(alpha.alpha2().apply(x), alpha.alpha1().apply(a));
        let c = src.gamma().apply(w);
        if map[c] != usize::MAX && map[c] != image {
            return Err(DirectionError::NotWellDefined("d(alpha)"));
        }
        map[c] = image;
    }
    let d = Hom::new(src.df(), dst.df(), map)?;
    Ok(PointMorphism::new(
        src.point(),
        dst.point(),
        alpha.alpha1().clone(),
        d,
    )?)
}

/// Whether `alpha1` commutes with the induced actions.
pub fn alpha1_is_equivariant(alpha: &ExtMorphism) -> Result<bool, DirectionError> {
    let (s, t) = (to_semimodule(alpha.src())?, to_semimodule(alpha.dst())?);
    Ok(s.is_equivariant(alpha.alpha1(), &t))
}

/// Whether `d(E x_M E')` maps isomorphically onto `d(E) x_M d(E')` through
/// the images of the two projections, and the induced action of the product
/// is `m.(a, a') = (m.a, m.a')`.
pub fn product_preserved(e1: &Extension, e2: &Extension) -> Result<bool, DirectionError> {
    let prod = fibre_product(e1, e2)?;
    let x = pullback(e1.f(), e2.f())?;
    let kk = product(e1.kernel(), e2.kernel());
    let proj1 = ExtMorphism::new(&prod, e1, kk.projection(0), x.projection(0))?;
    let proj2 = ExtMorphism::new(&prod, e2, kk.projection(1), x.projection(1))?;
    let (dp, d1, d2) = (
        df_by_coequalizer(&prod)?,
        df_by_coequalizer(e1)?,
        df_by_coequalizer(e2)?,
    );
    let h1 = direction_on_morphism(&proj1, &dp, &d1)?;
    let h2 = direction_on_morphism(&proj2, &dp, &d2)?;
    let target = pullback(d1.point().f(), d2.point().f())?;
    let pairing: Option<Vec<Elem>> = dp
        .df()
        .elements()
        .map(|c| target.index_of(&[h1.alpha().apply(c), h2.alpha().apply(c)]))
        .collect();
    let Some(pairing) = pairing else {
        return Ok(false);
    };
    let iso = Hom::new(dp.df(), target.monoid(), pairing)?.is_bijective();

    let (s, s1, s2) = (
        to_semimodule(&prod)?,
        to_semimodule(e1)?,
        to_semimodule(e2)?,
    );
    let n2 = e2.kernel().order();
    let nu = e1.base().elements().all(|m| {
        kk.tuples()
            .iter()
            .enumerate()
            .all(|(c, t)| s.act(m, c) == s1.act(m, t[0]) * n2 + s2.act(m, t[1]))
    });
    Ok(iso && nu)
}
