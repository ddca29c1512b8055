//! The finite universe the statement checks run over.

use std::collections::BTreeMap;

use rayon::prelude::*;

use schext::action::{enumerate_semimodules, to_semimodule, Semimodule};
use schext::cofib::{crossed_product, fiber_classify, schreier_tables, ClassifyMode};
use schext::extension::{enumerate_ext_morphisms, extension_isomorphism, ExtMorphism, Extension};
use schext::finmon::{element_invariants, enumerate_monoids, ElementInvariant, FiniteMonoid};

use crate::CliError;

pub const DEFAULT_MAX_ORDER: usize = 5;
pub const DEFAULT_MAX_CARRIER: usize = 8;
/// Largest accepted `--max-order`.
pub const MAX_ORDER_LIMIT: usize = 6;
/// Largest accepted `--max-carrier`; non-group kernels go through the
/// brute-force table search.
pub const MAX_CARRIER_LIMIT: usize = 8;

/// Extension pairs over a common base are sampled for morphisms when both
/// carriers have at most this many elements.
pub const SAMPLE_CARRIER: usize = 6;
/// At most this many morphisms are kept per sampled pair.
pub const SAMPLE_PER_PAIR: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_order: usize,
    pub max_carrier: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_order: DEFAULT_MAX_ORDER,
            max_carrier: DEFAULT_MAX_CARRIER,
        }
    }
}

impl Bounds {
    pub fn check(&self) -> Result<(), CliError> {
        if self.max_order > MAX_ORDER_LIMIT {
            return Err(CliError::BoundExceeded(format!(
                "--max-order {} exceeds the limit {MAX_ORDER_LIMIT}",
                self.max_order
            )));
        }
        if self.max_carrier > MAX_CARRIER_LIMIT {
            return Err(CliError::BoundExceeded(format!(
                "--max-carrier {} exceeds the limit {MAX_CARRIER_LIMIT}",
                self.max_carrier
            )));
        }
        Ok(())
    }
}

/// A morphism between two corpus extensions, by index.
#[derive(Clone, Debug)]
pub struct Sample {
    pub src: usize,
    pub dst: usize,
    pub morphism: ExtMorphism,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub monoids: Vec<FiniteMonoid>,
    /// Schreier extensions, one per isomorphism class over each base.
    pub extensions: Vec<Extension>,
    pub semimodules: Vec<Semimodule>,
    /// Ordered pairs of extensions over the same base that were searched
    /// for morphisms.
    pub pairs: Vec<(usize, usize)>,
    pub morphisms: Vec<Sample>,
}

fn invariant(e: &Extension) -> Vec<ElementInvariant> {
    let mut inv = element_invariants(e.carrier());
    inv.sort_unstable();
    inv
}

/// Keeps one extension per isomorphism class, in input order.
fn dedupe(candidates: Vec<Extension>) -> Vec<Extension> {
    let mut kept: Vec<Extension> = Vec::new();
    let mut buckets: BTreeMap<Vec<ElementInvariant>, Vec<usize>> = BTreeMap::new();
    for e in candidates {
        let bucket = buckets.entry(invariant(&e)).or_default();
        if bucket
            .iter()
            .any(|&i| extension_isomorphism(&kept[i], &e).is_some())
        {
            continue;
        }
        bucket.push(kept.len());
        kept.push(e);
    }
    kept
}

/// Schreier extensions of `k` by `m` up to isomorphism. Group kernels go
/// through factor systems, other kernels through normal-form tables.
fn extensions_of(k: &FiniteMonoid, m: &FiniteMonoid) -> Vec<Extension> {
    let candidates = if k.is_group() {
        let mut out = Vec::new();
        for s in enumerate_semimodules(m, k) {
            let classes = fiber_classify(&s, ClassifyMode::FactorSystem)
                .expect("within the factor-system bound");
            out.extend(
                classes
                    .classes
                    .iter()
                    .map(|g| crossed_product(g).expect("valid factor system")),
            );
        }
        out
    } else {
        schreier_tables(k, m)
    };
    dedupe(candidates)
}

pub fn build_corpus(bounds: Bounds) -> Result<Corpus, CliError> {
    bounds.check()?;
    let mut monoids = Vec::new();
    for n in 1..=bounds.max_order {
        monoids.extend(enumerate_monoids(n).map_err(|e| CliError::Internal(e.to_string()))?);
    }
    let mut jobs = Vec::new();
    for m in &monoids {
        for k in monoids.iter().filter(|k| k.is_commutative()) {
            if k.order() * m.order() <= bounds.max_carrier {
                jobs.push((k.clone(), m.clone()));
            }
        }
    }
    let extensions: Vec<Extension> = jobs
        .par_iter()
        .flat_map_iter(|(k, m)| extensions_of(k, m))
        .collect();
    let mut semimodules: Vec<Semimodule> = jobs
        .par_iter()
        .flat_map_iter(|(k, m)| enumerate_semimodules(m, k))
        .collect();
    semimodules.dedup();
    Ok(Corpus::assemble(monoids, extensions, semimodules))
}

impl Corpus {
    /// A corpus over explicit extensions; semimodules are their induced
    /// actions.
    pub fn from_extensions(extensions: Vec<Extension>) -> Corpus {
        let mut semimodules: Vec<Semimodule> = Vec::new();
        let mut monoids: Vec<FiniteMonoid> = Vec::new();
        for e in &extensions {
            for m in [e.kernel(), e.carrier(), e.base()] {
                if !monoids.contains(m) {
                    monoids.push(m.clone());
                }
            }
            if let Ok(s) = to_semimodule(e) {
                if !semimodules.contains(&s) {
                    semimodules.push(s);
                }
            }
        }
        Corpus::assemble(monoids, extensions, semimodules)
    }

    fn assemble(
        monoids: Vec<FiniteMonoid>,
        extensions: Vec<Extension>,
        semimodules: Vec<Semimodule>,
    ) -> Corpus {
        let small: Vec<usize> = (0..extensions.len())
            .filter(|&i| {
                extensions[i].carrier().order() <= SAMPLE_CARRIER && extensions[i].is_schreier()
            })
            .collect();
        let mut pairs = Vec::new();
        for &i in &small {
            for &j in &small {
                if extensions[i].base() == extensions[j].base() {
                    pairs.push((i, j));
                }
            }
        }
        let found: Vec<Vec<Sample>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let all =
                    enumerate_ext_morphisms(&extensions[i], &extensions[j]).unwrap_or_default();
                spread(all, SAMPLE_PER_PAIR)
                    .into_iter()
                    .map(|morphism| Sample {
                        src: i,
                        dst: j,
                        morphism,
                    })
                    .collect()
            })
            .collect();
        let morphisms = found.into_iter().flatten().collect();
        Corpus {
            monoids,
            extensions,
            semimodules,
            pairs,
            morphisms,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty() && self.semimodules.is_empty()
    }

    pub fn cc_extensions(&self) -> impl Iterator<Item = (usize, &Extension)> {
        self.extensions
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_cc() && e.is_schreier())
    }
}

/// Up to `n` evenly spaced members of `all`, always including the first and
/// the last.
pub(crate) fn spread<T>(all: Vec<T>, n: usize) -> Vec<T> {
    let len = all.len();
    if len <= n {
        return all;
    }
    let picks: Vec<usize> = (0..n).map(|i| i * (len - 1) / (n - 1)).collect();
    all.into_iter()
        .enumerate()
        .filter(|(i, _)| picks.contains(i))
        .map(|(_, t)| t)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use schext::extension::{fibre_isomorphism, product_extension};
    use schext::finmon::{is_isomorphic, Hom};

    fn c2() -> FiniteMonoid {
        FiniteMonoid::cyclic_group(2)
    }

    #[test]
    fn smallest_corpus_is_trivial() {
        let c = build_corpus(Bounds {
            max_order: 1,
            max_carrier: 1,
        })
        .unwrap();
        assert_eq!(c.monoids.len(), 1);
        assert_eq!(c.extensions.len(), 1);
        assert!(c.extensions[0].carrier().is_trivial());
    }

    #[test]
    fn empty_bounds_give_an_empty_corpus() {
        let c = build_corpus(Bounds {
            max_order: 0,
            max_carrier: 0,
        })
        .unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            build_corpus(Bounds {
                max_order: 7,
                max_carrier: 8
            }),
            Err(CliError::BoundExceeded(_))
        ));
        assert!(matches!(
            build_corpus(Bounds {
                max_order: 5,
                max_carrier: 9
            }),
            Err(CliError::BoundExceeded(_))
        ));
    }

    #[test]
    fn order_two_corpus_contents() {
        let c = build_corpus(Bounds {
            max_order: 2,
            max_carrier: 4,
        })
        .unwrap();
        let over_c2: Vec<&Extension> = c.extensions.iter().filter(|e| e.base() == &c2()).collect();
        let with = |k: &FiniteMonoid| {
            over_c2
                .iter()
                .filter(|e| e.kernel() == k)
                .copied()
                .collect::<Vec<_>>()
        };

        let c2_kernel = with(&c2());
        assert_eq!(c2_kernel.len(), 2);
        let split = product_extension(&c2(), &c2());
        assert!(c2_kernel
            .iter()
            .any(|e| fibre_isomorphism(e, &split).is_some()));
        let c4 = FiniteMonoid::cyclic_group(4);
        assert!(c2_kernel
            .iter()
            .any(|e| is_isomorphic(e.carrier(), &c4).is_some()));
        assert!(c2_kernel
            .iter()
            .any(|e| is_isomorphic(e.carrier(), &FiniteMonoid::klein_four()).is_some()));

        let m2 = FiniteMonoid::two_element_semilattice();
        assert_eq!(with(&m2).len(), 2);
        assert!(c.extensions.iter().all(|e| e.is_schreier()));
    }

    #[test]
    fn corpus_is_deterministic_and_duplicate_free() {
        let b = Bounds {
            max_order: 3,
            max_carrier: 6,
        };
        let (c1, c2) = (build_corpus(b).unwrap(), build_corpus(b).unwrap());
        assert_eq!(c1.extensions, c2.extensions);
        assert_eq!(c1.pairs, c2.pairs);
        for (i, e) in c1.extensions.iter().enumerate() {
            for f in &c1.extensions[i + 1..] {
                assert!(extension_isomorphism(e, f).is_none());
            }
        }
        assert!(c1
            .morphisms
            .iter()
            .all(|s| s.morphism.src() == &c1.extensions[s.src]));
        let id_count = c1
            .morphisms
            .iter()
            .filter(|s| {
                s.src == s.dst
                    && *s.morphism.alpha2() == Hom::identity(c1.extensions[s.src].carrier())
            })
            .count();
        assert!(id_count > 0);
    }

    #[test]
    fn spread_keeps_the_ends() {
        assert_eq!(spread((0..10).collect(), 4), vec![0, 3, 6, 9]);
        assert_eq!(spread(vec![1, 2], 4), vec![1, 2]);
    }
}
