use schext::direction::{
    alpha1_is_equivariant, direction_on_morphism, product_preserved, DirectionBundle,
};
use schext::finmon::Hom;
use schext::ExtMorphism;

use super::{ensure, Check, Context, Domain, Statement};

/// Composites are checked against this many follow-up morphisms.
pub const COMPOSITES_PER_MORPHISM: usize = 3;
/// Products over M are formed when they have at most this many elements.
pub const PRODUCT_CARRIER: usize = 16;

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "S7-d-morphisms",
            title: "d sends morphisms to point morphisms over alpha1, preserving identities and composites",
            scope: "sampled morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: d_morphisms,
        },
        Statement {
            id: "S7-conservative",
            title: "alpha is an isomorphism exactly when d(alpha) is",
            scope: "sampled morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: conservative,
        },
        Statement {
            id: "S7-mono-regepi",
            title: "alpha is injective (surjective) exactly when alpha1 and d(alpha) are",
            scope: "sampled morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: mono_regepi,
        },
        Statement {
            id: "S7-products",
            title: "d preserves the product over M and the product action is componentwise",
            scope: "pairs of cc Schreier extensions whose product has at most 16 elements",
            domain: Domain::Pairs,
            check: products,
        },
    ]
}

fn bundles<'c>(
    ctx: &'c Context,
    i: usize,
) -> Option<Result<(&'c ExtMorphism, &'c DirectionBundle, &'c DirectionBundle), String>> {
    let s = ctx.sample(i);
    let (e, e2) = (ctx.ext(s.src), ctx.ext(s.dst));
    if !(e.is_cc() && e2.is_cc()) {
        return None;
    }
    Some(match (&ctx.bundles[s.src], &ctx.bundles[s.dst]) {
        (Some(b), Some(b2)) => Ok((&s.morphism, b, b2)),
        _ => Err("a direction could not be built".to_string()),
    })
}

fn d_morphisms(ctx: &Context, i: usize) -> Option<Check> {
    let found = bundles(ctx, i)?;
    Some((|| {
        let (alpha, b, b2) = found?;
        let d = direction_on_morphism(alpha, b, b2).map_err(|e| e.to_string())?;
        ensure!(
            alpha1_is_equivariant(alpha) == Ok(true),
            "alpha1 does not preserve the induced actions"
        );
        if alpha.src() == alpha.dst() && *alpha.alpha2() == Hom::identity(alpha.src().carrier()) {
            ensure!(
                *d.alpha() == Hom::identity(b.df()),
                "d(id) is not the identity"
            );
        }
        let s = ctx.sample(i);
        let next = ctx.morphisms_from[s.dst]
            .iter()
            .filter(|&&j| ctx.bundles[ctx.sample(j).dst].is_some());
        for &j in next.take(COMPOSITES_PER_MORPHISM) {
            let t = ctx.sample(j);
            let b3 = ctx.bundles[t.dst].as_ref().expect("filtered");
            let beta = &t.morphism;
            let composite = alpha.then(beta).map_err(|e| e.to_string())?;
            let dc = direction_on_morphism(&composite, b, b3).map_err(|e| e.to_string())?;
            let db = direction_on_morphism(beta, b2, b3).map_err(|e| e.to_string())?;
            let chained = d.alpha().then(db.alpha()).map_err(|e| e.to_string())?;
            ensure!(
                *dc.alpha() == chained,
                "d(beta alpha) differs from d(beta) d(alpha) for morphism {j}"
            );
        }
        Ok(())
    })())
}

fn conservative(ctx: &Context, i: usize) -> Option<Check> {
    let found = bundles(ctx, i)?;
    Some((|| {
        let (alpha, b, b2) = found?;
        let d = direction_on_morphism(alpha, b, b2).map_err(|e| e.to_string())?;
        ensure!(
            d.is_iso() == alpha.is_iso(),
            "alpha iso {} but d(alpha) iso {}",
            alpha.is_iso(),
            d.is_iso()
        );
        Ok(())
    })())
}

fn mono_regepi(ctx: &Context, i: usize) -> Option<Check> {
    let found = bundles(ctx, i)?;
    Some((|| {
        let (alpha, b, b2) = found?;
        let d = direction_on_morphism(alpha, b, b2).map_err(|e| e.to_string())?;
        let (a1, a2, da) = (alpha.alpha1(), alpha.alpha2(), d.alpha());
        let inj = a1.is_injective() && a2.is_injective();
        ensure!(
            inj == (a1.is_injective() && da.is_injective()),
            "injectivity of alpha and d(alpha) disagree"
        );
        let surj = a1.is_surjective() && a2.is_surjective();
        ensure!(
            surj == (a1.is_surjective() && da.is_surjective()),
            "surjectivity of alpha and d(alpha) disagree"
        );
        Ok(())
    })())
}

fn products(ctx: &Context, i: usize) -> Option<Check> {
    let (a, b) = ctx.corpus.pairs[i];
    let (e, e2) = (ctx.ext(a), ctx.ext(b));
    if !(e.is_cc() && e2.is_cc())
        || e.carrier().order() * e2.carrier().order() > PRODUCT_CARRIER * e.base().order()
    {
        return None;
    }
    Some((|| {
        let ok = product_preserved(e, e2).map_err(|err| err.to_string())?;
        ensure!(
            ok,
            "d(E x E') is not d(E) x d(E') with the componentwise action"
        );
        Ok(())
    })())
}
