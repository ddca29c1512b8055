use schext::action::{s_reflexive_check, SchreierPoint};
use schext::direction::{
    df_by_semidirect, internal_monoid_to_point, point_to_internal_monoid, self_connector,
    DirectionBundle, InternalMonoid, RelationRE,
};
use schext::finmon::{kernel_pair, HomSearch};
use schext::Extension;

use super::{ensure, Check, Context, Domain, Statement};

/// Internal monoid structures are enumerated on carriers up to this size.
pub const INTERNAL_MONOID_CARRIER: usize = 4;

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "S5-re-coequalizer",
            title: "f is the coequalizer of the projections of R_E",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: re_coequalizer,
        },
        Statement {
            id: "S5-re-joint-epi",
            title: "k2 and the inclusion of R_E into Eq(f) are jointly surjective",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: re_joint_epi,
        },
        Statement {
            id: "S5-re-symmetry",
            title: "R_E is symmetric iff R_E = Eq(f) iff k2 factors through R_E iff K is a group",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: re_symmetry,
        },
        Statement {
            id: "S5-unique-witness",
            title: "each pair of R_E has a single witness exactly when K is cancellative",
            scope: "Schreier extensions with commutative kernel",
            domain: Domain::Extensions,
            check: unique_witness,
        },
        Statement {
            id: "S5-re-point",
            title: "(k1, r1, delta) is a Schreier point on R_E with retraction the witness",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: re_point,
        },
        Statement {
            id: "S5-relation-on-e",
            title: "K x K -> R_E -> M is a Schreier extension with (u_m, u_m) representatives",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: relation_on_e,
        },
        Statement {
            id: "S5-self-central",
            title: "R_E centralizes itself with connector p(x, y, z) = k(b) + x",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: self_central,
        },
        Statement {
            id: "S5-chasles-point",
            title: "the Chasles diagram commutes, Ch has the expected members and is S-reflexive",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: chasles_point,
        },
        Statement {
            id: "S5-chasles-symmetry",
            title: "Ch is symmetric exactly when K is a group",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: chasles_symmetry,
        },
        Statement {
            id: "S6-gamma-kernel-pair",
            title: "gamma identifies two pairs iff their witnesses agree and they lie over one fibre",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: gamma_kernel_pair,
        },
        Statement {
            id: "S6-gamma-determines",
            title: "gamma(x, k(a) + x) determines a and f(x) and nothing more",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: gamma_determines,
        },
        Statement {
            id: "S6-df-point",
            title: "d(E) is a Schreier point isomorphic to the semidirect product of the induced action",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: df_point,
        },
        Statement {
            id: "S6-internal-monoid-from-point",
            title: "a Schreier point gives an internal monoid whose point is the original one",
            scope: "semidirect products of corpus semimodules and directions of cc extensions",
            domain: Domain::Points,
            check: internal_monoid_from_point,
        },
        Statement {
            id: "S6-internal-monoid-to-point",
            title: "every internal monoid in the fibre of f comes from its Schreier point",
            scope: "Schreier extensions with at most 4 elements, all sections and multiplications",
            domain: Domain::Extensions,
            check: internal_monoid_to_point_check,
        },
        Statement {
            id: "S6-mu-bar",
            title: "d(E) carries the internal monoid gamma(x, a) . gamma(y, b) = gamma(x, a + b)",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: mu_bar,
        },
        Statement {
            id: "S6-chasles-identities",
            title: "gamma(x, x) = s(f(x)) and gamma(x, y) . gamma(y, z) = gamma(x, z)",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: chasles_identities,
        },
        Statement {
            id: "S6-action-coincidence",
            title: "the action of d(E) is the induced action of E",
            scope: "Schreier extensions with cc kernel",
            domain: Domain::Extensions,
            check: action_coincidence,
        },
    ]
}

fn re<'c>(ctx: &'c Context, i: usize) -> Option<&'c RelationRE> {
    ctx.res[i].as_ref()
}

fn cc_re<'c>(ctx: &'c Context, i: usize) -> Option<&'c RelationRE> {
    re(ctx, i).filter(|r| r.extension().is_cc())
}

/// A cc extension whose direction could not be built fails every
/// direction statement.
fn bundle<'c>(ctx: &'c Context, i: usize) -> Option<Result<&'c DirectionBundle, String>> {
    let e = ctx.ext(i);
    (e.is_cc() && e.is_schreier()).then(|| {
        ctx.bundles[i]
            .as_ref()
            .ok_or_else(|| "the direction could not be built".to_string())
    })
}

fn re_coequalizer(ctx: &Context, i: usize) -> Option<Check> {
    let r = re(ctx, i)?;
    Some((|| {
        ensure!(
            r.coequalizer_check(),
            "the congruence generated by R_E is not the kernel of f"
        );
        Ok(())
    })())
}

fn re_joint_epi(ctx: &Context, i: usize) -> Option<Check> {
    let r = re(ctx, i)?;
    Some((|| {
        ensure!(
            r.joint_epi_check(),
            "some (x, y) in Eq(f) is not k2(q(x)) + j(u_m, kq(y) + u_m)"
        );
        Ok(())
    })())
}

fn re_symmetry(ctx: &Context, i: usize) -> Option<Check> {
    let r = re(ctx, i)?;
    Some((|| {
        ensure!(
            r.symmetry_check(),
            "the symmetry conditions do not agree with K being a group"
        );
        Ok(())
    })())
}

fn unique_witness(ctx: &Context, i: usize) -> Option<Check> {
    let r = re(ctx, i)?;
    let cancellative = r.extension().kernel().is_cancellative();
    Some((|| {
        ensure!(
            r.unique_witness_check() == cancellative,
            "unique witnesses {} but cancellative {cancellative}",
            r.unique_witness_check()
        );
        Ok(())
    })())
}

fn re_point(ctx: &Context, i: usize) -> Option<Check> {
    let r = re(ctx, i)?;
    let e = r.extension();
    Some((|| {
        ensure!(
            r.point().is_some() == e.is_cc(),
            "point present {} but cc {}",
            r.point().is_some(),
            e.is_cc()
        );
        let Some(p) = r.point() else { return Ok(()) };
        let rel = r.relation();
        ensure!(*p.f() == rel.r1(), "the point projection is not r1");
        for x in e.carrier().elements() {
            ensure!(
                Some(p.s().apply(x)) == rel.index_of(x, x),
                "the section is not the diagonal at {x}"
            );
        }
        for w in 0..r.len() {
            ensure!(
                p.q(w) == r.witness(w),
                "q1 at pair {w} is {} but the witness is {}",
                p.q(w),
                r.witness(w)
            );
        }
        Ok(())
    })())
}

fn relation_on_e(ctx: &Context, i: usize) -> Option<Check> {
    let r = cc_re(ctx, i)?;
    Some((|| {
        let rel = r.relation_on_extension().map_err(|e| e.to_string())?;
        let upper = &rel.upper;
        ensure!(
            upper.is_schreier() && upper.is_cc(),
            "K x K -> R_E -> M is not a cc Schreier extension"
        );
        Ok(())
    })())
}

fn self_central(ctx: &Context, i: usize) -> Option<Check> {
    let r = cc_re(ctx, i)?;
    Some((|| {
        let c = self_connector(r).map_err(|e| e.to_string())?;
        ensure!(
            c.count_solutions() == 1,
            "{} connectors on R_E",
            c.count_solutions()
        );
        Ok(())
    })())
}

fn chasles_point(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        let ch = b?.chasles();
        ensure!(
            ch.diagram_commutes(),
            "the Chasles diagram does not commute"
        );
        ensure!(ch.membership_check(), "Ch has unexpected members");
        s_reflexive_check(ch.relation()).map_err(|e| format!("Ch is not S-reflexive: {e}"))?;
        Ok(())
    })())
}

fn chasles_symmetry(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        ensure!(
            b?.chasles().symmetry_check(),
            "symmetry of Ch disagrees with K being a group"
        );
        Ok(())
    })())
}

fn gamma_kernel_pair(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        ensure!(
            b?.kernel_pair_is_tau(),
            "the kernel pair of gamma is not tau"
        );
        Ok(())
    })())
}

fn gamma_determines(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        let [c1, c2, c3] = b?.gamma_consequences();
        ensure!(
            c1,
            "gamma(x, a) = gamma(y, b) is not (a = b and f(x) = f(y))"
        );
        ensure!(c2, "gamma(x, a) depends on more than f(x)");
        ensure!(c3, "gamma(x, -) is not injective");
        Ok(())
    })())
}

fn df_point(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        let b = b?;
        let e = b.extension();
        let iso = b.iso_from_semidirect().map_err(|err| err.to_string())?;
        ensure!(iso.is_iso(), "kappa(a) + s(m) is not an isomorphism");
        let d = df_by_semidirect(e).map_err(|err| err.to_string())?;
        ensure!(
            b.df().order() == d.carrier().order()
                && d.carrier().order() == e.kernel().order() * e.base().order(),
            "|d(E)| = {} but |K||M| = {}",
            b.df().order(),
            e.kernel().order() * e.base().order()
        );
        Ok(())
    })())
}

fn same_point(p: &SchreierPoint, q: &SchreierPoint) -> bool {
    p.k() == q.k() && p.f() == q.f() && p.s() == q.s() && p.q_table() == q.q_table()
}

fn internal_monoid_from_point(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.points[i];
    Some((|| {
        let im = point_to_internal_monoid(p).map_err(|e| e.to_string())?;
        let back = internal_monoid_to_point(p.k(), &im).map_err(|e| e.to_string())?;
        ensure!(
            same_point(p, &back),
            "the point of the internal monoid differs"
        );
        Ok(())
    })())
}

/// Every `(s, mu)` making `f` an internal commutative monoid.
fn internal_monoids(e: &Extension) -> Vec<InternalMonoid> {
    let (x, m, f) = (e.carrier(), e.base(), e.f());
    let eq = kernel_pair(f);
    let mut sections = HomSearch::new(m, x);
    for n in m.elements() {
        sections = sections.restrict(n, &e.fibre(n));
    }
    let mut out = Vec::new();
    for s in sections.all() {
        let mut search = HomSearch::new(eq.monoid(), x);
        for (w, (y, z)) in eq.pairs().enumerate() {
            let unit = s.apply(f.apply(y));
            if y == unit {
                search = search.fix(w, z);
            } else if z == unit {
                search = search.fix(w, y);
            } else {
                search = search.restrict(w, &e.fibre(f.apply(y)));
            }
        }
        for mu in search.all() {
            if let Ok(im) = InternalMonoid::new(f.clone(), s.clone(), mu) {
                out.push(im);
            }
        }
    }
    out
}

fn internal_monoid_to_point_check(ctx: &Context, i: usize) -> Option<Check> {
    let e = ctx.ext(i);
    if !e.is_schreier() || e.carrier().order() > INTERNAL_MONOID_CARRIER {
        return None;
    }
    Some((|| {
        for im in internal_monoids(e) {
            let p = internal_monoid_to_point(e.k(), &im).map_err(|err| {
                format!("section {:?}, mu {:?}: {err}", im.s().map(), im.hom().map())
            })?;
            let again = point_to_internal_monoid(&p).map_err(|err| err.to_string())?;
            ensure!(
                again == im,
                "section {:?}: the point does not recover mu {:?}",
                im.s().map(),
                im.hom().map()
            );
        }
        Ok(())
    })())
}

fn mu_bar(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        b?.internal_monoid().map_err(|e| e.to_string())?;
        Ok(())
    })())
}

fn chasles_identities(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        ensure!(
            b?.chasles_identities() == Ok(true),
            "a Chasles identity fails"
        );
        Ok(())
    })())
}

fn action_coincidence(ctx: &Context, i: usize) -> Option<Check> {
    let b = bundle(ctx, i)?;
    Some((|| {
        ensure!(
            b?.action_coincides() == Ok(true),
            "the action of d(E) differs from the induced action"
        );
        Ok(())
    })())
}
