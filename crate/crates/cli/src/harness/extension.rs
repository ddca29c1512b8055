use schext::extension::enumerate_extension_maps;
use schext::finmon::Elem;
use schext::Extension;

use super::{ensure, Check, Context, Domain, Statement};

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "S2-reps-cancel",
            title: "listed representatives are exactly the u with a -> k(a) + u a bijection onto the fibre",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: reps_cancel,
        },
        Statement {
            id: "S2-reps-units",
            title: "representatives over 1 are the images of the units of K",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: reps_units,
        },
        Statement {
            id: "S2-reps-translate",
            title: "two representatives of m differ by a unique unit of K",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: reps_translate,
        },
        Statement {
            id: "S2-reps-group",
            title: "a -> k(a) + u is a bijection from U(K) onto B_m for every u in B_m",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: reps_group,
        },
        Statement {
            id: "S2-retraction-1",
            title: "q(k(a)) = a and u_1 = 0",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: retraction_1,
        },
        Statement {
            id: "S2-retraction-2",
            title: "q_u(u) = 0 for every representative u, and x = k(q(x)) + u_f(x)",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: retraction_2,
        },
        Statement {
            id: "S2-retraction-3",
            title: "u + k(a) = k(q_u(u + k(a))) + u for every representative u",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: retraction_3,
        },
        Statement {
            id: "S2-retraction-4",
            title: "q_u(x) + q_v(y) = q_v(k(q_u(x)) + y) for all representatives u over f(x) and v over f(y)",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: retraction_4,
        },
        Statement {
            id: "S2-group-kernel",
            title: "every element is a representative exactly when K is a group",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: group_kernel,
        },
        Statement {
            id: "S2-cokernel",
            title: "f is the cokernel of k",
            scope: "Schreier extensions",
            domain: Domain::Extensions,
            check: cokernel,
        },
        Statement {
            id: "S2-rep-preservation",
            title: "a map of extensions preserves all representatives iff it preserves the chosen u_m",
            scope: "pairs over one base with carriers of at most 6 elements",
            domain: Domain::Pairs,
            check: rep_preservation,
        },
        Statement {
            id: "S2-short-five",
            title: "alpha1 injective forces alpha injective, alpha1 surjective forces alpha surjective",
            scope: "sampled morphisms of Schreier extensions",
            domain: Domain::Morphisms,
            check: short_five,
        },
    ]
}

fn schreier<'c>(ctx: &'c Context, i: usize) -> Option<&'c Extension> {
    let e = ctx.ext(i);
    e.is_schreier().then_some(e)
}

/// Whether `a -> k(a) + u` is a bijection onto the fibre of `u`, computed
/// without the library predicate.
fn bijects(e: &Extension, u: Elem) -> bool {
    let fibre = e.fibre(e.f().apply(u));
    let mut image: Vec<Elem> = e
        .kernel()
        .elements()
        .map(|a| e.add(e.k().apply(a), u))
        .collect();
    image.sort_unstable();
    image.dedup();
    image == fibre
}

fn reps_cancel(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    Some((|| {
        for m in e.base().elements() {
            let expected: Vec<Elem> = e.fibre(m).into_iter().filter(|&u| bijects(e, u)).collect();
            ensure!(
                data.reps(m) == expected,
                "B_{m} is listed as {:?}, expected {expected:?}",
                data.reps(m)
            );
        }
        Ok(())
    })())
}

fn reps_units(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    let mut units: Vec<Elem> = e
        .kernel()
        .units()
        .into_iter()
        .map(|a| e.k().apply(a))
        .collect();
    units.sort_unstable();
    Some((|| {
        ensure!(
            data.reps(0) == units,
            "B_1 = {:?} but k(U(K)) = {units:?}",
            data.reps(0)
        );
        Ok(())
    })())
}

fn reps_translate(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    let units = e.kernel().units();
    Some((|| {
        for m in e.base().elements() {
            for &u in data.reps(m) {
                for &v in data.reps(m) {
                    let between: Vec<Elem> = units
                        .iter()
                        .copied()
                        .filter(|&a| e.add(e.k().apply(a), u) == v)
                        .collect();
                    ensure!(
                        between.len() == 1,
                        "{v} = k(a) + {u} for the units {between:?}"
                    );
                }
            }
        }
        Ok(())
    })())
}

fn reps_group(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    let units = e.kernel().units();
    Some((|| {
        for m in e.base().elements() {
            let b = data.reps(m);
            for &u in b {
                let mut image: Vec<Elem> =
                    units.iter().map(|&a| e.add(e.k().apply(a), u)).collect();
                image.sort_unstable();
                ensure!(
                    image == b,
                    "a -> k(a) + {u} maps U(K) onto {image:?}, not B_{m} = {b:?}"
                );
            }
        }
        Ok(())
    })())
}

/// `q_u(x)`: the `a` with `x = k(a) + u`.
fn q_rel(e: &Extension, u: Elem, x: Elem) -> Option<Elem> {
    e.kernel()
        .elements()
        .find(|&a| e.add(e.k().apply(a), u) == x)
}

fn retraction_1(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    Some((|| {
        ensure!(data.base_rep(0) == 0, "u_1 = {}", data.base_rep(0));
        for a in e.kernel().elements() {
            let got = data.q(e.k().apply(a));
            ensure!(got == a, "q(k({a})) = {got}");
            ensure!(
                q_rel(e, 0, e.k().apply(a)) == Some(a),
                "q_(1,0)(k({a})) differs from {a}"
            );
        }
        Ok(())
    })())
}

fn retraction_2(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    Some((|| {
        for u in data.all_representatives() {
            ensure!(q_rel(e, u, u) == Some(0), "q_u({u}) is not 0");
        }
        for m in e.base().elements() {
            let u = data.base_rep(m);
            ensure!(
                bijects(e, u) && e.f().apply(u) == m,
                "u_{m} = {u} is not a representative over {m}"
            );
        }
        for x in e.carrier().elements() {
            let y = e.add(e.k().apply(data.q(x)), data.base_rep(e.f().apply(x)));
            ensure!(y == x, "k(q({x})) + u_f({x}) = {y}");
        }
        Ok(())
    })())
}

fn retraction_3(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    Some((|| {
        for u in data.all_representatives() {
            for a in e.kernel().elements() {
                let y = e.add(u, e.k().apply(a));
                let b = q_rel(e, u, y)
                    .ok_or_else(|| format!("{u} + k({a}) has no decomposition over {u}"))?;
                ensure!(
                    e.add(e.k().apply(b), u) == y,
                    "{u} + k({a}) differs from k({b}) + {u}"
                );
            }
        }
        Ok(())
    })())
}

fn retraction_4(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    let (kk, f) = (e.kernel(), e.f());
    Some((|| {
        for x in e.carrier().elements() {
            for y in e.carrier().elements() {
                let (qx, qy) = (data.q(x), data.q(y));
                let rhs = data.q(e.add(e.k().apply(qx), y));
                ensure!(
                    kk.op(qx, qy) == rhs,
                    "q({x}) + q({y}) = {} but q(kq({x}) + {y}) = {rhs}",
                    kk.op(qx, qy)
                );
                for &u in data.reps(f.apply(x)) {
                    for &v in data.reps(f.apply(y)) {
                        let qux = q_rel(e, u, x).ok_or("no decomposition")?;
                        let qvy = q_rel(e, v, y).ok_or("no decomposition")?;
                        let rhs =
                            q_rel(e, v, e.add(e.k().apply(qux), y)).ok_or("no decomposition")?;
                        ensure!(
                            kk.op(qux, qvy) == rhs,
                            "the identity fails for x = {x}, y = {y}, u = {u}, v = {v}"
                        );
                    }
                }
            }
        }
        Ok(())
    })())
}

fn group_kernel(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    let data = e.schreier().ok()?;
    let all = data.all_representatives().len() == e.carrier().order();
    let group = e.kernel().is_group();
    Some((|| {
        ensure!(
            all == group,
            "K is a group: {group}, every element a representative: {all}"
        );
        Ok(())
    })())
}

fn cokernel(ctx: &Context, i: usize) -> Option<Check> {
    let e = schreier(ctx, i)?;
    Some((|| {
        ensure!(e.cokernel_check(), "the quotient by (k(a), 0) is not M");
        Ok(())
    })())
}

fn rep_preservation(ctx: &Context, i: usize) -> Option<Check> {
    let (s, t) = ctx.corpus.pairs[i];
    let (e, e2) = (ctx.ext(s), ctx.ext(t));
    let (d, d2) = (e.schreier().ok()?, e2.schreier().ok()?);
    let maps = enumerate_extension_maps(e, e2).ok()?;
    Some((|| {
        for h in &maps {
            let all = e
                .base()
                .elements()
                .all(|m| d.reps(m).iter().all(|&u| d2.reps(m).contains(&h.apply(u))));
            let chosen = e
                .base()
                .elements()
                .all(|m| d2.reps(m).contains(&h.apply(d.base_rep(m))));
            ensure!(
                all == chosen,
                "map {:?}: all representatives {all}, chosen ones {chosen}",
                h.map()
            );
        }
        Ok(())
    })())
}

fn short_five(ctx: &Context, i: usize) -> Option<Check> {
    let m = &ctx.sample(i).morphism;
    let (a1, a2) = (m.alpha1(), m.alpha2());
    Some((|| {
        ensure!(
            !a1.is_injective() || a2.is_injective(),
            "alpha1 injective but alpha {:?} is not",
            a2.map()
        );
        ensure!(
            !a1.is_surjective() || a2.is_surjective(),
            "alpha1 surjective but alpha {:?} is not",
            a2.map()
        );
        Ok(())
    })())
}
