use schext::action::to_semimodule;
use schext::cofib::{
    baer_sum, cocartesian_factorize, cohomology_monoid, crossed_product, enumerate_factor_systems,
    ClassifyMode, FACTOR_SYSTEM_BOUND,
};
use schext::extension::{enumerate_ext_morphisms, fibre_isomorphism};
use schext::finmon::{congruence_closure, HomSearch};
use schext::ExtMorphism;

use super::{ensure, Check, Context, Domain, Statement};

/// Semimodules with at most this many factor systems get the pairwise Baer
/// sum check.
pub const BAER_PAIR_LIMIT: usize = 64;
/// Morphisms out of the source tried against each pushforward.
pub const LAMBDAS_PER_PUSHFORWARD: usize = 2;

pub fn statements() -> Vec<Statement> {
    vec![
        Statement {
            id: "S7-rho",
            title: "rho is the congruence generated by (alpha1(a), 0) ~ (0, k(a))",
            scope: "pushforwards of Schreier extensions with at most 6 elements",
            domain: Domain::Pushforwards,
            check: rho,
        },
        Statement {
            id: "S7-pushforward",
            title: "the pushforward is a Schreier extension of order |K'||M| in the fibre of the target",
            scope: "pushforwards of Schreier extensions with at most 6 elements",
            domain: Domain::Pushforwards,
            check: pushforward_check,
        },
        Statement {
            id: "S7-cofibration",
            title: "every action-preserving alpha1 has a lift (alpha1, alpha) out of E",
            scope: "pushforwards of Schreier extensions with at most 6 elements",
            domain: Domain::Pushforwards,
            check: cofibration,
        },
        Statement {
            id: "S7-cocartesian-uniqueness",
            title: "a morphism lambda out of E factors through the lift exactly once for each admissible beta1",
            scope: "pushforwards against the first two sampled morphisms out of their source",
            domain: Domain::Pushforwards,
            check: cocartesian_uniqueness,
        },
        Statement {
            id: "S7-fibre-monoid",
            title: "fibre classes form a commutative monoid under Baer sum with the split class as unit",
            scope: "semimodules over groups K",
            domain: Domain::Semimodules,
            check: fibre_monoid,
        },
        Statement {
            id: "S7-baer-sum",
            title: "the Baer sum of crossed products is the crossed product of the sum",
            scope: "semimodules over groups K with at most 64 factor systems, all pairs",
            domain: Domain::Semimodules,
            check: baer_sum_check,
        },
    ]
}

fn rho(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.pushforwards[i];
    let pf = p.result.as_ref().ok()?;
    let e = &pf.source;
    let nx = e.carrier().order();
    Some((|| {
        let gens = e
            .kernel()
            .elements()
            .map(|a| (p.alpha1.apply(a) * nx, e.k().apply(a)));
        let generated = congruence_closure(&pf.semidirect, gens);
        ensure!(
            generated.is_finer_than(&pf.rho) && pf.rho.is_finer_than(&generated),
            "rho has {} classes, the generated congruence {}",
            pf.rho.num_classes(),
            generated.num_classes()
        );
        Ok(())
    })())
}

fn pushforward_check(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.pushforwards[i];
    let target = &ctx.corpus.semimodules[p.target];
    Some((|| {
        let pf = p.result.as_ref().map_err(|e| e.to_string())?;
        let t = &pf.target;
        ensure!(t.is_schreier(), "the pushforward is not Schreier");
        ensure!(
            t.carrier().order() == target.module().order() * t.base().order(),
            "|X'| = {} but |K'||M| = {}",
            t.carrier().order(),
            target.module().order() * t.base().order()
        );
        ensure!(
            to_semimodule(t).as_ref() == Ok(target),
            "the pushforward lies in another fibre"
        );
        Ok(())
    })())
}

fn cofibration(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.pushforwards[i];
    Some((|| {
        let pf = p.result.as_ref().map_err(|e| e.to_string())?;
        ensure!(
            pf.cocart.src() == ctx.ext(p.ext),
            "the lift does not start at E"
        );
        ensure!(
            *pf.cocart.alpha1() == p.alpha1,
            "the lift is not over alpha1"
        );
        Ok(())
    })())
}

fn cocartesian_uniqueness(ctx: &Context, i: usize) -> Option<Check> {
    let p = &ctx.pushforwards[i];
    let pf = p.result.as_ref().ok()?;
    let ep = &pf.target;
    let sp = to_semimodule(ep).ok()?;
    let lambdas = &ctx.morphisms_from[p.ext];
    if lambdas.is_empty() {
        return None;
    }
    Some((|| {
        for &j in lambdas.iter().take(LAMBDAS_PER_PUSHFORWARD) {
            let lambda = &ctx.sample(j).morphism;
            let f = lambda.dst();
            let Ok(sf) = to_semimodule(f) else { continue };
            let all = enumerate_ext_morphisms(ep, f).map_err(|e| e.to_string())?;
            let through: Vec<&ExtMorphism> = all
                .iter()
                .filter(|m| {
                    pf.cocart.alpha2().then(m.alpha2()).ok().as_ref() == Some(lambda.alpha2())
                })
                .collect();
            for beta1 in HomSearch::new(ep.kernel(), f.kernel()).all() {
                if !sp.is_equivariant(&beta1, &sf) {
                    continue;
                }
                let admissible =
                    p.alpha1.then(&beta1).map_err(|e| e.to_string())? == *lambda.alpha1();
                let count = through.iter().filter(|m| *m.alpha1() == beta1).count();
                if !admissible {
                    ensure!(
                        count == 0,
                        "morphism {j}: {count} factorizations with an inadmissible beta1"
                    );
                    continue;
                }
                ensure!(
                    count == 1,
                    "morphism {j}, beta1 {:?}: {count} factorizations",
                    beta1.map()
                );
                let beta = cocartesian_factorize(pf, lambda, &beta1)
                    .map_err(|e| format!("morphism {j}: {e}"))?;
                ensure!(
                    through.iter().any(|m| same(&beta, m)),
                    "morphism {j}: the factorization is not the enumerated one"
                );
            }
        }
        Ok(())
    })())
}

fn same(a: &ExtMorphism, b: &ExtMorphism) -> bool {
    a.alpha1() == b.alpha1() && a.alpha2() == b.alpha2()
}

fn fibre_monoid(ctx: &Context, i: usize) -> Option<Check> {
    let s = &ctx.corpus.semimodules[i];
    if !s.module().is_group() || s.module().order() * s.monoid().order() > FACTOR_SYSTEM_BOUND {
        return None;
    }
    Some((|| {
        let cm = cohomology_monoid(s, ClassifyMode::FactorSystem).map_err(|e| e.to_string())?;
        let t = &cm.table;
        let n = cm.len();
        ensure!(n >= 1, "empty fibre");
        ensure!(
            crossed_product(&cm.classification.classes[cm.unit]).map(|e| e.is_schreier())
                == Ok(true),
            "unit"
        );
        for a in 0..n {
            ensure!(
                t[cm.unit][a] == a && t[a][cm.unit] == a,
                "the split class is not a unit at {a}"
            );
            for b in 0..n {
                ensure!(t[a][b] == t[b][a], "[{a}] + [{b}] is not commutative");
                for c in 0..n {
                    ensure!(
                        t[t[a][b]][c] == t[a][t[b][c]],
                        "([{a}] + [{b}]) + [{c}] is not associative"
                    );
                }
            }
        }
        Ok(())
    })())
}

fn baer_sum_check(ctx: &Context, i: usize) -> Option<Check> {
    let s = &ctx.corpus.semimodules[i];
    if !s.module().is_group() || s.module().order() * s.monoid().order() > FACTOR_SYSTEM_BOUND {
        return None;
    }
    let gs = enumerate_factor_systems(s);
    if gs.len() > BAER_PAIR_LIMIT {
        return None;
    }
    Some((|| {
        let cps = gs
            .iter()
            .map(crossed_product)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for (a, g) in gs.iter().enumerate() {
            for (b, h) in gs.iter().enumerate() {
                let sum = baer_sum(&cps[a], &cps[b]).map_err(|e| e.to_string())?;
                let direct = crossed_product(&g.add(h).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    fibre_isomorphism(&sum, &direct).is_some(),
                    "CP({:?}) + CP({:?}) is not CP of the sum",
                    g.table(),
                    h.table()
                );
            }
        }
        Ok(())
    })())
}
