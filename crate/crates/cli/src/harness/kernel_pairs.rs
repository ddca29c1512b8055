use schext::extension::enumerate_ext_morphisms;
use schext::finmon::{kernel_pair, submonoid, Elem, Hom, Relation};
use schext::{ExtMorphism, Extension};

use super::{ensure, Check, Context, Domain, Statement};

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "A-kernel-pair",
            title: "Eq(alpha1) -> Eq(alpha) -> M is a cc Schreier extension and the kernel pair of alpha",
            scope: "sampled morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: kernel_pair_check,
        },
        Statement {
            id: "A-regepi",
            title: "a surjective alpha is the coequalizer of its kernel pair",
            scope: "sampled surjective morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: regepi,
        },
        Statement {
            id: "A-mono-char",
            title: "alpha is a monomorphism exactly when it is injective",
            scope: "sampled morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: mono_char,
        },
        Statement {
            id: "A-regepi-char",
            title: "a non-surjective alpha is not a regular epimorphism",
            scope: "sampled non-surjective morphisms between cc Schreier extensions",
            domain: Domain::Morphisms,
            check: regepi_char,
        },
    ]
}

/// `Eq(alpha1) -> Eq(alpha) -> M` with its two projections onto `E`.
struct KernelPair {
    eq1: Relation,
    eq: Relation,
    ext: Extension,
    rho1: ExtMorphism,
    rho2: ExtMorphism,
}

fn kernel_pair_of(alpha: &ExtMorphism) -> Result<KernelPair, String> {
    let e = alpha.src();
    let eq1 = kernel_pair(alpha.alpha1());
    let eq = kernel_pair(alpha.alpha2());
    let k = eq1
        .pairs()
        .map(|(a, b)| {
            eq.index_of(e.k().apply(a), e.k().apply(b))
                .ok_or("k x k leaves Eq(alpha)")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k = Hom::new(eq1.monoid(), eq.monoid(), k).map_err(|err| err.to_string())?;
    let f = eq.r1().then(e.f()).map_err(|err| err.to_string())?;
    let ext = Extension::new(k, f).map_err(|err| format!("kernel pair extension: {err}"))?;
    let rho1 =
        ExtMorphism::new(&ext, e, eq1.r1(), eq.r1()).map_err(|err| format!("rho1: {err}"))?;
    let rho2 =
        ExtMorphism::new(&ext, e, eq1.r2(), eq.r2()).map_err(|err| format!("rho2: {err}"))?;
    Ok(KernelPair {
        eq1,
        eq,
        ext,
        rho1,
        rho2,
    })
}

fn cc_sample<'c>(ctx: &'c Context, i: usize) -> Option<&'c ExtMorphism> {
    let s = ctx.sample(i);
    (ctx.ext(s.src).is_cc() && ctx.ext(s.dst).is_cc()).then_some(&s.morphism)
}

fn same(a: &ExtMorphism, b: &ExtMorphism) -> bool {
    a.alpha1() == b.alpha1() && a.alpha2() == b.alpha2()
}

fn after(g: &ExtMorphism, alpha: &ExtMorphism) -> Result<ExtMorphism, String> {
    g.then(alpha).map_err(|e| e.to_string())
}

fn kernel_pair_check(ctx: &Context, i: usize) -> Option<Check> {
    let alpha = cc_sample(ctx, i)?;
    let src = ctx.sample(i).src;
    Some((|| {
        let kp = kernel_pair_of(alpha)?;
        ensure!(
            kp.ext.is_schreier() && kp.ext.is_cc(),
            "the kernel pair extension is not cc Schreier"
        );
        let e = alpha.src();
        for m in e.base().elements() {
            let u = e.u(m);
            let w = kp.eq.index_of(u, u).expect("Eq(alpha) is reflexive");
            ensure!(
                kp.ext.is_representative(w),
                "(u_{m}, u_{m}) is not a representative"
            );
        }
        ensure!(
            same(&after(&kp.rho1, alpha)?, &after(&kp.rho2, alpha)?),
            "alpha does not equalize the projections"
        );
        // Pairs of sampled morphisms into E equalized by alpha factor through it.
        let into = &ctx.morphisms_into[src];
        for &g in into {
            for &h in into {
                let (sg, sh) = (ctx.sample(g), ctx.sample(h));
                if sg.src != sh.src
                    || !same(&after(&sg.morphism, alpha)?, &after(&sh.morphism, alpha)?)
                {
                    continue;
                }
                let f = ctx.ext(sg.src);
                let (mg, mh) = (&sg.morphism, &sh.morphism);
                let p1 = f
                    .kernel()
                    .elements()
                    .map(|a| kp.eq1.index_of(mg.alpha1().apply(a), mh.alpha1().apply(a)));
                let p2 = f
                    .carrier()
                    .elements()
                    .map(|x| kp.eq.index_of(mg.alpha2().apply(x), mh.alpha2().apply(x)));
                let (p1, p2): (Option<Vec<Elem>>, Option<Vec<Elem>>) = (p1.collect(), p2.collect());
                let (Some(p1), Some(p2)) = (p1, p2) else {
                    return Err(format!(
                        "the pairing of morphisms {g} and {h} leaves the kernel pair"
                    ));
                };
                let p1 =
                    Hom::new(f.kernel(), kp.ext.kernel(), p1).map_err(|err| err.to_string())?;
                let p2 =
                    Hom::new(f.carrier(), kp.ext.carrier(), p2).map_err(|err| err.to_string())?;
                ExtMorphism::new(f, &kp.ext, p1, p2).map_err(|err| {
                    format!("the pairing of morphisms {g} and {h} is not a morphism: {err}")
                })?;
            }
        }
        Ok(())
    })())
}

/// The map on the codomain determined by `beta` when `beta` is constant on
/// the fibres of the surjection `alpha`.
fn descend(alpha: &Hom, beta: &Hom) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; alpha.cod().order()];
    for x in alpha.dom().elements() {
        let y = alpha.apply(x);
        if map[y] != usize::MAX && map[y] != beta.apply(x) {
            return None;
        }
        map[y] = beta.apply(x);
    }
    Some(map)
}

fn regepi(ctx: &Context, i: usize) -> Option<Check> {
    let alpha = cc_sample(ctx, i)?;
    if !alpha.alpha2().is_surjective() {
        return None;
    }
    let s = ctx.sample(i);
    Some((|| {
        ensure!(
            alpha.alpha1().is_surjective(),
            "alpha is surjective but alpha1 is not"
        );
        kernel_pair_of(alpha)?;
        let e2 = alpha.dst();
        for &j in &ctx.morphisms_from[s.src] {
            let beta = &ctx.sample(j).morphism;
            let (Some(g2), Some(g1)) = (
                descend(alpha.alpha2(), beta.alpha2()),
                descend(alpha.alpha1(), beta.alpha1()),
            ) else {
                continue;
            };
            let f = beta.dst();
            let g1 =
                Hom::new(e2.kernel(), f.kernel(), g1).map_err(|e| format!("morphism {j}: {e}"))?;
            let g2 = Hom::new(e2.carrier(), f.carrier(), g2)
                .map_err(|e| format!("morphism {j}: {e}"))?;
            ExtMorphism::new(e2, f, g1, g2)
                .map_err(|e| format!("morphism {j} does not factor: {e}"))?;
        }
        Ok(())
    })())
}

fn mono_char(ctx: &Context, i: usize) -> Option<Check> {
    let alpha = cc_sample(ctx, i)?;
    let s = ctx.sample(i);
    let injective = alpha.alpha1().is_injective() && alpha.alpha2().is_injective();
    Some((|| {
        if injective {
            let into = &ctx.morphisms_into[s.src];
            for &g in into {
                for &h in into {
                    let (sg, sh) = (ctx.sample(g), ctx.sample(h));
                    if sg.src == sh.src
                        && same(&after(&sg.morphism, alpha)?, &after(&sh.morphism, alpha)?)
                    {
                        ensure!(
                            same(&sg.morphism, &sh.morphism),
                            "alpha does not cancel morphisms {g} and {h}"
                        );
                    }
                }
            }
        } else {
            let kp = kernel_pair_of(alpha)?;
            ensure!(
                !same(&kp.rho1, &kp.rho2),
                "the kernel pair projections coincide"
            );
        }
        Ok(())
    })())
}

/// The image factorization `E -> P -> E'` of `alpha`.
struct Image {
    ext: Extension,
    e: ExtMorphism,
    n: ExtMorphism,
}

fn image_of(alpha: &ExtMorphism) -> Result<Image, String> {
    let (e, e2) = (alpha.src(), alpha.dst());
    let image = alpha.alpha2().image();
    let (i, n2) = submonoid(e2.carrier(), &image).map_err(|err| err.to_string())?;
    let pos = |x: Elem| image.binary_search(&x).ok();
    let kernel: Vec<Elem> = e2
        .kernel()
        .elements()
        .filter(|&a| pos(e2.k().apply(a)).is_some())
        .collect();
    let (p, n1) = submonoid(e2.kernel(), &kernel).map_err(|err| err.to_string())?;
    let k = p
        .elements()
        .map(|a| pos(e2.k().apply(n1.apply(a))).expect("in the image"))
        .collect();
    let k = Hom::new(&p, &i, k).map_err(|err| err.to_string())?;
    let f = n2.then(e2.f()).map_err(|err| err.to_string())?;
    let ext = Extension::new(k, f).map_err(|err| format!("image extension: {err}"))?;
    let e1 = e
        .kernel()
        .elements()
        .map(|a| kernel.binary_search(&alpha.alpha1().apply(a)).ok());
    let e1: Vec<Elem> = e1
        .collect::<Option<_>>()
        .ok_or("alpha1 leaves the image kernel")?;
    let e1 = Hom::new(e.kernel(), &p, e1).map_err(|err| err.to_string())?;
    let e2map = e
        .carrier()
        .elements()
        .map(|x| pos(alpha.alpha2().apply(x)).expect("in the image"))
        .collect();
    let e2map = Hom::new(e.carrier(), &i, e2map).map_err(|err| err.to_string())?;
    let em = ExtMorphism::new(e, &ext, e1, e2map).map_err(|err| format!("E -> P: {err}"))?;
    let n = ExtMorphism::new(&ext, e2, n1, n2).map_err(|err| format!("P -> E': {err}"))?;
    Ok(Image { ext, e: em, n })
}

fn regepi_char(ctx: &Context, i: usize) -> Option<Check> {
    let alpha = cc_sample(ctx, i)?;
    if alpha.alpha2().is_surjective() {
        return None;
    }
    Some((|| {
        ensure!(
            !alpha.alpha1().is_surjective(),
            "alpha1 is surjective but alpha is not"
        );
        let img = image_of(alpha)?;
        ensure!(
            img.ext.is_schreier() && img.ext.is_cc(),
            "the image is not a cc Schreier extension"
        );
        let e = alpha.src();
        for m in e.base().elements() {
            ensure!(
                img.ext.is_representative(img.e.alpha2().apply(e.u(m))),
                "e(u_{m}) is not a representative"
            );
        }
        ensure!(
            !img.n.alpha2().is_surjective(),
            "the image inclusion is onto"
        );
        ensure!(
            same(&after(&img.e, &img.n)?, alpha),
            "n e differs from alpha"
        );
        let kp = kernel_pair_of(alpha)?;
        ensure!(
            same(&after(&kp.rho1, &img.e)?, &after(&kp.rho2, &img.e)?),
            "e does not coequalize the kernel pair"
        );
        // Either e does not factor through alpha, or alpha is not an
        // epimorphism at all.
        let gammas =
            enumerate_ext_morphisms(alpha.dst(), &img.ext).map_err(|err| err.to_string())?;
        for gamma in gammas {
            if same(&after(alpha, &gamma)?, &img.e) {
                let ng = after(&gamma, &img.n)?;
                let id = ExtMorphism::identity(alpha.dst());
                ensure!(
                    !same(&ng, &id),
                    "e factors through alpha and n gamma is the identity"
                );
                ensure!(
                    same(&after(alpha, &ng)?, alpha),
                    "n gamma alpha differs from alpha"
                );
            }
        }
        Ok(())
    })())
}
