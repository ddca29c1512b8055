//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use schext::action::{
    connector, s_reflexive_check, semidirect, to_semimodule, SchreierPoint, Semimodule,
};
use schext::cofib::{
    baer_sum, cohomology_monoid, crossed_product, enumerate_factor_systems, ClassifyMode,
};
use schext::direction::{df_by_coequalizer, df_by_semidirect};
use schext::extension::{fibre_isomorphism, product_extension, Extension, ExtensionError};
use schext::finmon::{is_isomorphic, kernel_pair, product, Elem, FiniteMonoid, Hom};
use schext_cli::corpus::{build_corpus, Bounds, Corpus};
use schext_cli::doc::{emit, CorpusDoc, ExtensionDoc};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn c2() -> FiniteMonoid {
    FiniteMonoid::cyclic_group(2)
}

fn m2() -> FiniteMonoid {
    FiniteMonoid::two_element_semilattice()
}

/// Monoid tables on `K x M`, element `(a, m)` numbered `a * |M| + m`, with
/// `k(a) = (a, 1)`, `f(a, m) = m`, `k(a) + (0, m) = (a, m)` and
/// `(0, m) + k(a) = (m.a, m)`, up to isomorphisms fixing `k` and `f`.
/// Returns the class representatives as flat tables.
fn brute_force_classes(s: &Semimodule) -> Vec<Vec<Elem>> {
    let (k, m) = (s.module(), s.monoid());
    let (nk, nm) = (k.order(), m.order());
    let n = nk * nm;
    let enc = |a: Elem, x: Elem| a * nm + x;
    let fx = |e: Elem| e % nm;

    let mut fixed: Vec<Option<Elem>> = vec![None; n * n];
    for x in 0..n {
        fixed[x] = Some(x);
        fixed[x * n] = Some(x);
    }
    for a in k.elements() {
        for b in k.elements() {
            fixed[enc(a, 0) * n + enc(b, 0)] = Some(enc(k.op(a, b), 0));
        }
        for x in m.elements() {
            fixed[enc(a, 0) * n + enc(0, x)] = Some(enc(a, x));
            fixed[enc(0, x) * n + enc(a, 0)] = Some(enc(s.act(x, a), x));
        }
    }
    let free: Vec<usize> = (0..n * n).filter(|&c| fixed[c].is_none()).collect();
    let mut tables = Vec::new();
    let total = nk.pow(free.len() as u32);
    for code in 0..total {
        let mut t: Vec<Elem> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        let mut c = code;
        for &cell in &free {
            let (x, y) = (cell / n, cell % n);
            t[cell] = enc(c % nk, m.op(fx(x), fx(y)));
            c /= nk;
        }
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]]))
        });
        if assoc {
            tables.push(t);
        }
    }

    // Isomorphisms fixing k and f permute each fibre other than the first.
    let perms = permutations(nk);
    let mut maps: Vec<Vec<Elem>> = vec![(0..n).collect()];
    for x in 1..nm {
        let mut next = Vec::new();
        for phi in &maps {
            for p in &perms {
                let mut psi = phi.clone();
                for a in 0..nk {
                    psi[enc(a, x)] = enc(p[a], x);
                }
                next.push(psi);
            }
        }
        maps = next;
    }
    let mut reps: Vec<Vec<Elem>> = Vec::new();
    for t in tables {
        let same = reps.iter().any(|r| {
            maps.iter().any(|phi| {
                (0..n).all(|x| (0..n).all(|y| phi[t[x * n + y]] == r[phi[x] * n + phi[y]]))
            })
        });
        if !same {
            reps.push(t);
        }
    }
    reps
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = Semimodule::trivial(&c2(), &c2()).map_err(|e| e.to_string())?;
    let cm = cohomology_monoid(&s, ClassifyMode::FactorSystem).map_err(|e| e.to_string())?;
    let oracle = brute_force_classes(&s);
    check!(cm.len() == 2, "{} classes", cm.len());
    check!(
        oracle.len() == 2,
        "brute force finds {} classes",
        oracle.len()
    );
    let table = cm.as_monoid().map_err(|e| e.to_string())?;
    check!(
        is_isomorphic(&table, &c2()).is_some(),
        "Baer table {:?}",
        cm.table
    );
    let split = product_extension(&c2(), &c2());
    let unit = &cm.extensions[cm.unit];
    check!(
        fibre_isomorphism(unit, &split).is_some(),
        "the unit is not the split class"
    );
    check!(
        is_isomorphic(unit.carrier(), &FiniteMonoid::klein_four()).is_some(),
        "split carrier is not V4"
    );
    let other = &cm.extensions[1 - cm.unit];
    check!(
        is_isomorphic(other.carrier(), &FiniteMonoid::cyclic_group(4)).is_some(),
        "nonsplit carrier is not C4"
    );
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "2 classes, table C2, split V4, nonsplit C4 ({elapsed:.2?})"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let s = Semimodule::trivial(&c2(), &m2()).map_err(|e| e.to_string())?;
    let fs = cohomology_monoid(&s, ClassifyMode::FactorSystem).map_err(|e| e.to_string())?;
    let bf = cohomology_monoid(&s, ClassifyMode::BruteForce).map_err(|e| e.to_string())?;
    check!(fs.len() == 2, "{} classes", fs.len());
    check!(
        fs.classification.classes == bf.classification.classes && fs.table == bf.table,
        "modes disagree: {:?} vs {:?}",
        fs.table,
        bf.table
    );
    check!(brute_force_classes(&s).len() == 2, "table search disagrees");
    let c = 1 - fs.unit;
    check!(
        fs.table[c][c] == c,
        "the nontrivial class is not idempotent"
    );
    let table = fs.as_monoid().map_err(|e| e.to_string())?;
    check!(
        is_isomorphic(&table, &m2()).is_some(),
        "table {:?} is not M2",
        fs.table
    );
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "2 classes, idempotent, table M2, modes agree ({elapsed:.2?})"
    ))
}

fn criterion_3() -> Outcome {
    let s = Semimodule::trivial(&m2(), &c2()).map_err(|e| e.to_string())?;
    for mode in [ClassifyMode::FactorSystem, ClassifyMode::BruteForce] {
        let cm = cohomology_monoid(&s, mode).map_err(|e| e.to_string())?;
        check!(cm.len() == 1, "{mode:?}: {} classes", cm.len());
    }
    let oracle = brute_force_classes(&s).len();
    check!(oracle == 1, "table search finds {oracle} classes");
    Ok("1 class in both modes".into())
}

/// `a` with `x = k(a) + s(m)` in a point, found by search.
fn decompose(p: &SchreierPoint, x: Elem) -> Option<(Elem, Elem)> {
    let c = p.carrier();
    p.kernel().elements().find_map(|a| {
        p.base()
            .elements()
            .find(|&m| c.op(p.k().apply(a), p.s().apply(m)) == x)
            .map(|m| (a, m))
    })
}

/// Whether `phi(k(a) + s(m)) = k'(a) + s'(m)` is an isomorphism of points.
fn points_isomorphic(p: &SchreierPoint, q: &SchreierPoint) -> bool {
    if p.carrier().order() != q.carrier().order()
        || p.kernel() != q.kernel()
        || p.base() != q.base()
    {
        return false;
    }
    let Some(phi) = p
        .carrier()
        .elements()
        .map(|x| decompose(p, x).map(|(a, m)| q.carrier().op(q.k().apply(a), q.s().apply(m))))
        .collect::<Option<Vec<Elem>>>()
    else {
        return false;
    };
    let (pc, qc) = (p.carrier(), q.carrier());
    let bijective = phi.iter().collect::<HashSet<_>>().len() == phi.len();
    let hom = pc.elements().all(|x| {
        pc.elements()
            .all(|y| phi[pc.op(x, y)] == qc.op(phi[x], phi[y]))
    });
    let over = pc.elements().all(|x| q.f().apply(phi[x]) == p.f().apply(x));
    let under = p
        .kernel()
        .elements()
        .all(|a| phi[p.k().apply(a)] == q.k().apply(a));
    let section = p
        .base()
        .elements()
        .all(|m| phi[p.s().apply(m)] == q.s().apply(m));
    bijective && hom && over && under && section
}

/// `m.a` read off a point from `s(m) + k(a) = k(m.a) + s(m)`.
fn action_of_point(p: &SchreierPoint) -> Vec<Elem> {
    let c = p.carrier();
    let mut out = Vec::new();
    for m in p.base().elements() {
        for a in p.kernel().elements() {
            let lhs = c.op(p.s().apply(m), p.k().apply(a));
            let b = p
                .kernel()
                .elements()
                .find(|&b| c.op(p.k().apply(b), p.s().apply(m)) == lhs)
                .expect("points are Schreier");
            out.push(b);
        }
    }
    out
}

/// `m.a` from `u + k(a) = k(m.a) + u` for a representative `u` over `m`,
/// found without the cached Schreier data.
fn induced_action(e: &Extension) -> Option<Vec<Elem>> {
    let (x, k) = (e.carrier(), e.kernel());
    let mut out = Vec::new();
    for m in e.base().elements() {
        let fibre = e.fibre(m);
        let u = fibre.iter().copied().find(|&u| {
            let image: HashSet<Elem> = k.elements().map(|a| x.op(e.k().apply(a), u)).collect();
            image.len() == fibre.len() && fibre.iter().all(|y| image.contains(y))
        })?;
        for a in k.elements() {
            let lhs = x.op(u, e.k().apply(a));
            out.push(k.elements().find(|&b| x.op(e.k().apply(b), u) == lhs)?);
        }
    }
    Some(out)
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (i, e) in corpus.cc_extensions() {
        let bundle = df_by_coequalizer(e).map_err(|err| format!("extension {i}: {err}"))?;
        let sd = df_by_semidirect(e).map_err(|err| format!("extension {i}: {err}"))?;
        check!(
            points_isomorphic(&sd, bundle.point()),
            "extension {i}: the two constructions differ"
        );
        let induced = induced_action(e).ok_or(format!("extension {i}: no representative"))?;
        check!(
            action_of_point(bundle.point()) == induced,
            "extension {i}: the direction's action is not the induced action"
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    check!(checked > 0, "no cc extensions in the corpus");
    check!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{checked} extensions, zero failures ({elapsed:.2?})"
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let e = Extension::es3();
    let s = to_semimodule(&e).map_err(|err| err.to_string())?;
    let c3 = s.module();
    for a in c3.elements() {
        let inv = c3.elements().find(|&b| c3.op(a, b) == 0).expect("group");
        check!(s.act(1, a) == inv, "sigma.{a} = {}, not -{a}", s.act(1, a));
        check!(s.act(0, a) == a, "the unit acts nontrivially");
    }
    let p = semidirect(&s).map_err(|err| err.to_string())?;
    check!(
        is_isomorphic(p.carrier(), &FiniteMonoid::symmetric_group3()).is_some(),
        "the semidirect product is not S3"
    );
    let x = e.carrier();
    let eq = kernel_pair(e.f());
    let r = s_reflexive_check(&eq).map_err(|err| err.to_string())?;
    let c = connector(&eq, &r).map_err(|err| err.to_string())?;
    let mut triples = 0;
    for a in x.elements() {
        for b in x.elements() {
            for d in x.elements() {
                if e.f().apply(a) != e.f().apply(b) || e.f().apply(b) != e.f().apply(d) {
                    continue;
                }
                let inv = x.elements().find(|&y| x.op(b, y) == 0).expect("group");
                let expected = x.op(x.op(a, inv), d);
                check!(
                    c.apply(a, b, d) == Some(expected),
                    "p({a}, {b}, {d}) = {:?}, not {expected}",
                    c.apply(a, b, d)
                );
                triples += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "inversion, S3, connector x-y+z on {triples} triples ({elapsed:.2?})"
    ))
}

fn schext(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_schext"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

fn criterion_6() -> Outcome {
    let out_path = scratch("acceptance-report.json");
    let start = Instant::now();
    let out = schext(&["verify", "--out", out_path.to_str().unwrap()]);
    let elapsed = start.elapsed();
    check!(
        out.status.code() == Some(0),
        "verify exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let statements = report["statements"].as_array().ok_or("no statements")?;
    let mut least = usize::MAX;
    for st in statements {
        check!(st["verdict"] == "pass", "{} failed", st["id"]);
        let n = st["instances"].as_u64().unwrap_or(0) as usize;
        check!(n >= 10, "{} has only {n} instances", st["id"]);
        least = least.min(n);
    }
    Ok(format!(
        "{} statements pass, at least {least} instances each ({elapsed:.2?})",
        statements.len()
    ))
}

fn criterion_7() -> Outcome {
    let p = product(&m2(), &m2());
    let f = Hom::new(
        p.monoid(),
        &m2(),
        p.tuples().iter().map(|t| m2().op(t[0], t[1])).collect(),
    )
    .map_err(|e| e.to_string())?;
    let e = Extension::of_surjection(&f).map_err(|err| err.to_string())?;
    check!(e.kernel().is_trivial(), "the kernel is not trivial");
    let z = 1;
    check!(
        e.schreier().err() == Some(ExtensionError::NotSchreier { m: z }),
        "got {:?}",
        e.schreier().err()
    );

    let good = product_extension(&c2(), &c2());
    let mut doc = ExtensionDoc::with_schreier(&good);
    doc.schreier.as_mut().unwrap().q.swap(0, 2);
    let fixture = scratch("acceptance-fault.json");
    std::fs::write(
        &fixture,
        emit(&CorpusDoc {
            extensions: vec![doc],
        }),
    )
    .map_err(|e| e.to_string())?;
    let out = schext(&["verify", "--corpus", fixture.to_str().unwrap()]);
    check!(
        out.status.code() == Some(1),
        "verify exited {:?}",
        out.status.code()
    );
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report["failed"]
        .as_array()
        .ok_or("no failed list")?
        .iter()
        .filter_map(|v| v.as_str())
        .collect();
    check!(failed.contains(&"S2-retraction-1"), "failed: {failed:?}");
    check!(
        String::from_utf8_lossy(&out.stderr).contains("S2-retraction-1"),
        "the table does not name the statement"
    );
    Ok("NotSchreier at z; corrupted fixture exits 1 naming S2-retraction-1".into())
}

fn criterion_8(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    let mut semimodules = 0;
    for (i, s) in corpus.semimodules.iter().enumerate() {
        if s.module().order() * s.monoid().order() > 8 {
            continue;
        }
        semimodules += 1;
        let gs = enumerate_factor_systems(s);
        let cps = gs
            .iter()
            .map(crossed_product)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("semimodule {i}: {e}"))?;
        for (a, g) in gs.iter().enumerate() {
            for (b, h) in gs.iter().enumerate() {
                let sum = baer_sum(&cps[a], &cps[b]).map_err(|e| format!("semimodule {i}: {e}"))?;
                let direct = crossed_product(&g.add(h).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                check!(
                    fibre_isomorphism(&sum, &direct).is_some(),
                    "semimodule {i}: CP({:?}) + CP({:?}) is not CP of the sum",
                    g.table(),
                    h.table()
                );
                pairs += 1;
            }
        }
    }
    check!(pairs > 0, "no factor systems");
    Ok(format!(
        "{pairs} pairs over {semimodules} semimodules, zero failures ({:.2?})",
        start.elapsed()
    ))
}

fn main() {
    let corpus = build_corpus(Bounds::default()).expect("the default corpus builds");
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4(&corpus)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8(&corpus)),
    ];
    let mut failures = 0;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n}: PASS  {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n}: FAIL  {msg}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
