use schext::action::{
    connector, count_connectors, patrick_check, point_action, point_iso_semidirect,
    s_reflexive_check, semidirect, to_semimodule,
};
use schext::finmon::{kernel_pair, Elem, Relation};
use schext::Extension;

use super::{ensure, Check, Context, Domain, Statement};

/// Carriers up to this size get the exhaustive connector count.
pub const CONNECTOR_CARRIER: usize = 6;
/// The full relation has a large composite; it is only tried on smaller
/// carriers.
pub const FULL_RELATION_CARRIER: usize = 4;

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "S3-action-well-defined",
            title: "the b with v + k(a) = k(b) + v does not depend on the representative v of B_m",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: action_well_defined,
        },
        Statement {
            id: "S3-action-axioms",
            title: "the induced action fixes a at 1, fixes 0 and is additive; it composes when K is a group",
            scope: "Schreier extensions with commutative kernel; composition for cc kernels",
            domain: Domain::Extensions,
            check: action_axioms,
        },
        Statement {
            id: "S3-patrick",
            title: "x + k(a) = k(f(x).a) + x",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: patrick,
        },
        Statement {
            id: "S4-point-retraction-1",
            title: "q(k(a)) = a",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: point_retraction_1,
        },
        Statement {
            id: "S4-point-retraction-2",
            title: "q(s(m)) = 0",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: point_retraction_2,
        },
        Statement {
            id: "S4-point-retraction-3",
            title: "k(q(s(m) + k(a))) + s(m) = s(m) + k(a)",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: point_retraction_3,
        },
        Statement {
            id: "S4-point-retraction-4",
            title: "q(b + b') = q(b) + q(s(f(b)) + k(q(b')))",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: point_retraction_4,
        },
        Statement {
            id: "S4-point-action",
            title: "the point action is a semimodule, equal to the induced action, and the point is its semidirect product",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: point_action_check,
        },
        Statement {
            id: "S4-semidirect-round-trip",
            title: "the action of the semidirect product is the original action",
            scope: "corpus semimodules",
            domain: Domain::Semimodules,
            check: semidirect_round_trip,
        },
        Statement {
            id: "S4-s-reflexive",
            title: "S-reflexive relations are transitive, and symmetric exactly when their kernel is a group",
            scope: "R_E, Eq(f) and the diagonal of Schreier extensions",
            domain: Domain::Extensions,
            check: s_reflexive,
        },
        Statement {
            id: "S4-connector-criterion",
            title: "R and an S-reflexive R' admit a connector iff they centralize, and it is unique",
            scope: "R in {diagonal, R_E, Eq(f), full} and R' = R_E, carriers of at most 6 elements (full: 4)",
            domain: Domain::Extensions,
            check: connector_criterion,
        },
    ]
}

fn commutative<'c>(ctx: &'c Context, i: usize) -> Option<&'c Extension> {
    let e = ctx.ext(i);
    (e.is_schreier() && e.kernel().is_commutative()).then_some(e)
}

/// `b` with `k(b) + v = y`, for a representative `v`.
fn solve(e: &Extension, v: Elem, y: Elem) -> Option<Elem> {
    e.kernel()
        .elements()
        .find(|&b| e.add(e.k().apply(b), v) == y)
}

/// The action read off through the base representatives.
fn action_table(e: &Extension) -> Option<Vec<Vec<Elem>>> {
    let d = e.schreier().ok()?;
    e.base()
        .elements()
        .map(|m| {
            let u = d.base_rep(m);
            e.kernel()
                .elements()
                .map(|a| solve(e, u, e.add(u, e.k().apply(a))))
                .collect()
        })
        .collect()
}

fn action_well_defined(ctx: &Context, i: usize) -> Option<Check> {
    let e = commutative(ctx, i)?;
    let d = e.schreier().ok()?;
    Some((|| {
        let table = action_table(e).ok_or("u_m + k(a) has no decomposition over u_m")?;
        for m in e.base().elements() {
            for &v in d.reps(m) {
                for a in e.kernel().elements() {
                    let b = solve(e, v, e.add(v, e.k().apply(a)));
                    ensure!(
                        b == Some(table[m][a]),
                        "over {m}: v = {v} gives {b:?} for a = {a}, u_m gives {}",
                        table[m][a]
                    );
                }
            }
        }
        ensure!(
            to_semimodule(e).is_ok() || !e.is_cc(),
            "to_semimodule fails on a cc extension"
        );
        Ok(())
    })())
}

fn action_axioms(ctx: &Context, i: usize) -> Option<Check> {
    let e = commutative(ctx, i)?;
    let (kk, base) = (e.kernel(), e.base());
    Some((|| {
        let t = action_table(e).ok_or("no induced action")?;
        for a in kk.elements() {
            ensure!(t[0][a] == a, "1.{a} = {}", t[0][a]);
        }
        for m in base.elements() {
            ensure!(t[m][0] == 0, "{m}.0 = {}", t[m][0]);
            for a in kk.elements() {
                for b in kk.elements() {
                    ensure!(
                        t[m][kk.op(a, b)] == kk.op(t[m][a], t[m][b]),
                        "{m}.({a} + {b}) is not additive"
                    );
                }
            }
        }
        if e.is_cc() {
            for m in base.elements() {
                for n in base.elements() {
                    for a in kk.elements() {
                        ensure!(
                            t[base.op(m, n)][a] == t[m][t[n][a]],
                            "({m}{n}).{a} differs from {m}.({n}.{a})"
                        );
                    }
                }
            }
            let s = to_semimodule(e).map_err(|err| err.to_string())?;
            ensure!(
                base.elements()
                    .all(|m| kk.elements().all(|a| s.act(m, a) == t[m][a])),
                "library table differs"
            );
        }
        Ok(())
    })())
}

fn patrick(ctx: &Context, i: usize) -> Option<Check> {
    let e = commutative(ctx, i)?;
    let (kk, f) = (e.kernel(), e.f());
    Some((|| {
        let t = action_table(e).ok_or("no induced action")?;
        for x in e.carrier().elements() {
            for a in kk.elements() {
                let lhs = e.add(x, e.k().apply(a));
                let rhs = e.add(e.k().apply(t[f.apply(x)][a]), x);
                ensure!(
                    lhs == rhs,
                    "{x} + k({a}) = {lhs} but k(f({x}).{a}) + {x} = {rhs}"
                );
            }
        }
        ensure!(patrick_check(e) == Ok(true), "patrick_check disagrees");
        Ok(())
    })())
}

fn point_retraction_1(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    Some((|| {
        for a in p.kernel().elements() {
            ensure!(
                p.q(p.k().apply(a)) == a,
                "q(k({a})) = {}",
                p.q(p.k().apply(a))
            );
        }
        Ok(())
    })())
}

fn point_retraction_2(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    Some((|| {
        for m in p.base().elements() {
            ensure!(
                p.q(p.s().apply(m)) == 0,
                "q(s({m})) = {}",
                p.q(p.s().apply(m))
            );
        }
        Ok(())
    })())
}

fn point_retraction_3(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    let b = p.carrier();
    Some((|| {
        for m in p.base().elements() {
            let sm = p.s().apply(m);
            for a in p.kernel().elements() {
                let y = b.op(sm, p.k().apply(a));
                let lhs = b.op(p.k().apply(p.q(y)), sm);
                ensure!(
                    lhs == y,
                    "k(q(s({m}) + k({a}))) + s({m}) = {lhs}, expected {y}"
                );
            }
        }
        Ok(())
    })())
}

fn point_retraction_4(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    let (b, kk) = (p.carrier(), p.kernel());
    Some((|| {
        for x in b.elements() {
            for y in b.elements() {
                let lhs = p.q(b.op(x, y));
                let rhs = kk.op(
                    p.q(x),
                    p.q(b.op(p.s().apply(p.f().apply(x)), p.k().apply(p.q(y)))),
                );
                ensure!(lhs == rhs, "q({x} + {y}) = {lhs}, formula gives {rhs}");
            }
        }
        Ok(())
    })())
}

fn point_action_check(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    Some((|| {
        let s = point_action(p).map_err(|e| format!("point action: {e}"))?;
        let induced = to_semimodule(&p.extension()).map_err(|e| format!("induced action: {e}"))?;
        ensure!(s == induced, "point action differs from the induced action");
        let iso = point_iso_semidirect(p).map_err(|e| format!("semidirect comparison: {e}"))?;
        ensure!(iso.is_iso(), "k(a) + s(m) is not an isomorphism");
        Ok(())
    })())
}

fn semidirect_round_trip(ctx: &Context, i: usize) -> Option<Check> {
    let s = &ctx.corpus.semimodules[i];
    Some((|| {
        let p = semidirect(s).map_err(|e| e.to_string())?;
        ensure!(
            point_action(&p).as_ref() == Ok(s),
            "point action of the semidirect product differs"
        );
        ensure!(
            to_semimodule(&p.extension()).as_ref() == Ok(s),
            "induced action of the semidirect product differs"
        );
        Ok(())
    })())
}

/// `R_E` when available, `Eq(f)` and the diagonal.
fn relations(ctx: &Context, i: usize) -> Vec<(&'static str, Relation)> {
    let e = ctx.ext(i);
    let mut out = Vec::new();
    if let Some(re) = &ctx.res[i] {
        out.push(("R_E", re.relation().clone()));
    }
    out.push(("Eq(f)", kernel_pair(e.f())));
    out.push(("diagonal", Relation::diagonal(e.carrier())));
    out
}

fn s_reflexive(ctx: &Context, i: usize) -> Option<Check> {
    if !ctx.ext(i).is_schreier() {
        return None;
    }
    Some((|| {
        for (name, r) in relations(ctx, i) {
            let Ok(sr) = s_reflexive_check(&r) else {
                ensure!(name != "diagonal", "the diagonal is not S-reflexive");
                continue;
            };
            ensure!(
                r.is_transitive(),
                "{name} is S-reflexive but not transitive"
            );
            ensure!(
                r.is_symmetric() == sr.kernel_is_group(),
                "{name}: symmetric {} but kernel group {}",
                r.is_symmetric(),
                sr.kernel_is_group()
            );
        }
        Ok(())
    })())
}

fn connector_criterion(ctx: &Context, i: usize) -> Option<Check> {
    let e = ctx.ext(i);
    let n = e.carrier().order();
    if n > CONNECTOR_CARRIER {
        return None;
    }
    let re = ctx.res[i].as_ref()?;
    let r2 = s_reflexive_check(re.relation()).ok()?;
    let mut rs = relations(ctx, i);
    if n <= FULL_RELATION_CARRIER {
        rs.push(("full", Relation::full(e.carrier())));
    }
    Some((|| {
        for (name, r) in rs {
            let c = connector(&r, &r2);
            let count = count_connectors(&r, re.relation()).map_err(|err| err.to_string())?;
            ensure!(
                c.is_ok() == (count >= 1),
                "{name}: centralizing {} but {count} connectors",
                c.is_ok()
            );
            if c.is_ok() {
                ensure!(count == 1, "{name}: {count} connectors");
            }
        }
        Ok(())
    })())
}
