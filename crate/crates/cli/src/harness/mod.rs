//! The statement-check harness: one registered check per statement, each run
//! exhaustively over a domain of the corpus.

mod action;
mod cofib;
mod direction;
mod extension;
mod functor;
mod kernel_pairs;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use schext::action::{semidirect, to_semimodule, SchreierPoint, Semimodule};
use schext::cofib::{pushforward, CofibError, Pushforward};
use schext::direction::{build_re, df_by_coequalizer, DirectionBundle, RelationRE};
use schext::extension::Extension;
use schext::finmon::{Hom, HomSearch};

use crate::corpus::{Corpus, Sample};
use crate::doc::{ExtensionDoc, PointDoc, SemimoduleDoc};

/// Extensions with at most this many elements are used as pushforward
/// sources, and targets `K' x M` are kept to the same size.
pub const PUSHFORWARD_CARRIER: usize = 6;
/// At most this many kernel maps per pushforward source and target.
pub const PUSHFORWARD_PER_TARGET: usize = 4;

/// `Err` carries the first failed condition.
pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}
pub(crate) use ensure;

/// What a statement quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Extensions,
    Morphisms,
    Pairs,
    Semimodules,
    Points,
    Pushforwards,
}

pub struct Statement {
    pub id: &'static str,
    pub title: &'static str,
    pub scope: &'static str,
    pub domain: Domain,
    /// `None` when the instance is out of scope.
    pub check: fn(&Context, usize) -> Option<Check>,
}

/// A pushforward along a sampled equivariant kernel map.
pub struct PushSample {
    pub ext: usize,
    pub target: usize,
    pub alpha1: Hom,
    pub result: Result<Pushforward, CofibError>,
}

/// The corpus with everything derived from it that several checks share.
pub struct Context<'a> {
    pub corpus: &'a Corpus,
    pub semimodules: Vec<Option<Semimodule>>,
    pub res: Vec<Option<RelationRE>>,
    pub bundles: Vec<Option<DirectionBundle>>,
    pub points: Vec<SchreierPoint>,
    pub pushforwards: Vec<PushSample>,
    /// Indices into `corpus.morphisms`, grouped by source extension.
    pub morphisms_from: Vec<Vec<usize>>,
    pub morphisms_into: Vec<Vec<usize>>,
}

impl<'a> Context<'a> {
    pub fn new(corpus: &'a Corpus) -> Self {
        let exts = &corpus.extensions;
        let semimodules: Vec<Option<Semimodule>> =
            exts.par_iter().map(|e| to_semimodule(e).ok()).collect();
        let res: Vec<Option<RelationRE>> = exts
            .par_iter()
            .map(|e| {
                if e.is_schreier() {
                    build_re(e).ok()
                } else {
                    None
                }
            })
            .collect();
        let bundles: Vec<Option<DirectionBundle>> = exts
            .par_iter()
            .map(|e| {
                if e.is_cc() && e.is_schreier() {
                    df_by_coequalizer(e).ok()
                } else {
                    None
                }
            })
            .collect();
        let mut points: Vec<SchreierPoint> = corpus
            .semimodules
            .par_iter()
            .filter_map(|s| semidirect(s).ok())
            .collect();
        points.extend(bundles.iter().flatten().map(|b| b.point().clone()));

        let mut morphisms_from = vec![Vec::new(); exts.len()];
        let mut morphisms_into = vec![Vec::new(); exts.len()];
        for (i, s) in corpus.morphisms.iter().enumerate() {
            morphisms_from[s.src].push(i);
            morphisms_into[s.dst].push(i);
        }
        let pushforwards = push_samples(corpus, &semimodules);
        Context {
            corpus,
            semimodules,
            res,
            bundles,
            points,
            pushforwards,
            morphisms_from,
            morphisms_into,
        }
    }

    pub fn ext(&self, i: usize) -> &Extension {
        &self.corpus.extensions[i]
    }

    pub fn sample(&self, i: usize) -> &Sample {
        &self.corpus.morphisms[i]
    }

    fn len(&self, d: Domain) -> usize {
        match d {
            Domain::Extensions => self.corpus.extensions.len(),
            Domain::Morphisms => self.corpus.morphisms.len(),
            Domain::Pairs => self.corpus.pairs.len(),
            Domain::Semimodules => self.corpus.semimodules.len(),
            Domain::Points => self.points.len(),
            Domain::Pushforwards => self.pushforwards.len(),
        }
    }

    /// A self-contained description of one instance.
    fn describe(&self, d: Domain, i: usize) -> Value {
        let ext = |j: usize| {
            serde_json::to_value(ExtensionDoc::with_schreier(self.ext(j))).expect("serializable")
        };
        match d {
            Domain::Extensions => json!({ "extension": i, "doc": ext(i) }),
            Domain::Morphisms => {
                let s = self.sample(i);
                json!({
                    "morphism": i,
                    "src": s.src,
                    "dst": s.dst,
                    "alpha1": s.morphism.alpha1().map(),
                    "alpha2": s.morphism.alpha2().map(),
                    "src_doc": ext(s.src),
                    "dst_doc": ext(s.dst),
                })
            }
            Domain::Pairs => {
                let (a, b) = self.corpus.pairs[i];
                json!({ "pair": i, "first": ext(a), "second": ext(b) })
            }
            Domain::Semimodules => {
                json!({ "semimodule": i, "doc": SemimoduleDoc::from_semimodule(&self.corpus.semimodules[i]) })
            }
            Domain::Points => json!({ "point": i, "doc": PointDoc::from_point(&self.points[i]) }),
            Domain::Pushforwards => {
                let p = &self.pushforwards[i];
                json!({
                    "pushforward": i,
                    "source": ext(p.ext),
                    "target": SemimoduleDoc::from_semimodule(&self.corpus.semimodules[p.target]),
                    "alpha1": p.alpha1.map(),
                })
            }
        }
    }
}

fn push_samples(corpus: &Corpus, semimodules: &[Option<Semimodule>]) -> Vec<PushSample> {
    let mut jobs = Vec::new();
    for (i, e) in corpus.extensions.iter().enumerate() {
        let Some(s) = &semimodules[i] else { continue };
        if e.carrier().order() > PUSHFORWARD_CARRIER {
            continue;
        }
        for (t, target) in corpus.semimodules.iter().enumerate() {
            if target.monoid() == e.base()
                && target.module().order() * e.base().order() <= PUSHFORWARD_CARRIER
            {
                jobs.push((i, s, t, target));
            }
        }
    }
    let found: Vec<Vec<PushSample>> = jobs
        .par_iter()
        .map(|&(i, s, t, target)| {
            let maps: Vec<Hom> = HomSearch::new(s.module(), target.module())
                .all()
                .into_iter()
                .filter(|h| s.is_equivariant(h, target))
                .collect();
            crate::corpus::spread(maps, PUSHFORWARD_PER_TARGET)
                .into_iter()
                .map(|alpha1| {
                    let result = pushforward(&corpus.extensions[i], &alpha1, target);
                    PushSample {
                        ext: i,
                        target: t,
                        alpha1,
                        result,
                    }
                })
                .collect()
        })
        .collect();
    found.into_iter().flatten().collect()
}

/// The outcome of one statement over its domain.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: &'static str,
    pub title: &'static str,
    pub scope: &'static str,
    pub instances: usize,
    pub counterexample: Option<Value>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn run_statement(ctx: &Context, st: &Statement) -> Verdict {
    let start = Instant::now();
    let outcomes: Vec<Option<Check>> = (0..ctx.len(st.domain))
        .into_par_iter()
        .map(|i| (st.check)(ctx, i))
        .collect();
    let instances = outcomes.iter().filter(|o| o.is_some()).count();
    let counterexample = outcomes.iter().enumerate().find_map(|(i, o)| match o {
        Some(Err(detail)) => {
            Some(json!({ "detail": detail, "instance": ctx.describe(st.domain, i) }))
        }
        _ => None,
    });
    Verdict {
        id: st.id,
        title: st.title,
        scope: st.scope,
        instances,
        counterexample,
        elapsed: start.elapsed(),
    }
}

/// Every statement, in report order.
pub fn registry() -> Vec<Statement> {
    let mut all = Vec::new();
    all.extend(extension::statements());
    all.extend(action::statements());
    all.extend(direction::statements());
    all.extend(functor::statements());
    all.extend(cofib::statements());
    all.extend(kernel_pairs::statements());
    all
}

/// Runs the registry over the corpus; results are in registry order
/// whatever the number of workers.
pub fn run_all(ctx: &Context) -> Vec<Verdict> {
    registry()
        .par_iter()
        .map(|st| run_statement(ctx, st))
        .collect()
}

/// Non-cancellative kernels whose induced pre-action violates an axiom.
#[derive(Clone, Debug, Default)]
pub struct A4Report {
    pub searched: usize,
    pub violations: usize,
    pub first: Option<(usize, String)>,
}

pub fn a4_report(ctx: &Context) -> A4Report {
    let mut r = A4Report::default();
    for (i, e) in ctx.corpus.extensions.iter().enumerate() {
        if e.is_cc() || !e.is_schreier() {
            continue;
        }
        r.searched += 1;
        let Ok(table) = schext::action::induced_pre_action(e) else {
            continue;
        };
        if let Err(err) = Semimodule::new(e.base(), e.kernel(), table) {
            r.violations += 1;
            if r.first.is_none() {
                r.first = Some((i, err.to_string()));
            }
        }
    }
    r
}
