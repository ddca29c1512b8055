use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::{select, subsequence};

use schext::action::{enumerate_semimodules, point_action, semidirect, to_semimodule, Semimodule};
use schext::cofib::{
    baer_sum, crossed_product, enumerate_factor_systems, extract_factor_system, unit_shifts,
};
use schext::direction::df_by_coequalizer;
use schext::extension::{fibre_isomorphism, Extension};
use schext::finmon::{
    canonical_table, congruence_closure, enumerate_homs, enumerate_monoids, is_isomorphic,
    quotient_by, FiniteMonoid,
};

fn monoids() -> &'static Vec<FiniteMonoid> {
    static M: OnceLock<Vec<FiniteMonoid>> = OnceLock::new();
    M.get_or_init(|| {
        (1..=4)
            .flat_map(|n| enumerate_monoids(n).unwrap())
            .collect()
    })
}

fn semimodules() -> &'static Vec<Semimodule> {
    static S: OnceLock<Vec<Semimodule>> = OnceLock::new();
    S.get_or_init(|| {
        let ms = monoids();
        let mut out = Vec::new();
        for m in ms.iter().filter(|m| m.order() <= 3) {
            for k in ms
                .iter()
                .filter(|k| k.is_commutative() && k.order() * m.order() <= 8)
            {
                out.extend(enumerate_semimodules(m, k));
            }
        }
        out
    })
}

fn surjections() -> &'static Vec<Extension> {
    static E: OnceLock<Vec<Extension>> = OnceLock::new();
    E.get_or_init(|| {
        let ms = monoids();
        let mut out = Vec::new();
        for x in ms {
            for m in ms.iter().filter(|m| m.order() <= x.order()) {
                for f in enumerate_homs(x, m, true) {
                    if let Ok(e) = Extension::of_surjection(&f) {
                        out.push(e);
                    }
                }
            }
        }
        out
    })
}

fn permutation_fixing_zero(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| {
            let mut p = vec![0];
            p.extend(rest);
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_invariant((m, p) in select(monoids().clone()).prop_flat_map(|m| {
        let n = m.order();
        (Just(m), permutation_fixing_zero(n))
    })) {
        let r = m.relabel(&p);
        prop_assert_eq!(canonical_table(&r), canonical_table(&m));
        prop_assert!(is_isomorphic(&r, &m).is_some());
    }

    #[test]
    fn closure_gives_a_quotient((m, pairs) in select(monoids().clone()).prop_flat_map(|m| {
        let n = m.order();
        (Just(m), proptest::collection::vec((0..n, 0..n), 0..3))
    })) {
        let c = congruence_closure(&m, pairs.iter().copied());
        for &(a, b) in &pairs {
            prop_assert!(c.related(a, b));
        }
        let (q, proj) = quotient_by(&m, &c).unwrap();
        prop_assert_eq!(q.order(), c.num_classes());
        prop_assert!(proj.is_surjective());
    }

    #[test]
    fn semidirect_round_trip(s in select(semimodules().clone())) {
        let p = semidirect(&s).unwrap();
        prop_assert_eq!(point_action(&p).unwrap(), s.clone());
        prop_assert_eq!(to_semimodule(&p.extension()).unwrap(), s);
    }

    #[test]
    fn schreier_retraction_identities(e in select(surjections().clone())) {
        if let Ok(data) = e.schreier() {
            for x in e.carrier().elements() {
                let u = data.base_rep(e.f().apply(x));
                prop_assert_eq!(e.add(e.k().apply(data.q(x)), u), x);
            }
            for m in e.base().elements() {
                prop_assert_eq!(data.reps(m).len(), e.kernel().units().len());
            }
        }
    }

    #[test]
    fn shifted_factor_systems_are_fibre_isomorphic((s, gi, di) in select(semimodules().clone())
        .prop_filter("cocycles exist", |s| s.monoid().order() <= 3)
        .prop_flat_map(|s| {
            let gs = enumerate_factor_systems(&s).len();
            let ds = unit_shifts(&s).len();
            (Just(s), 0..gs, 0..ds)
        }))
    {
        let g = &enumerate_factor_systems(&s)[gi];
        let h = g.shift(&unit_shifts(&s)[di]);
        let (a, b) = (crossed_product(g).unwrap(), crossed_product(&h).unwrap());
        prop_assert!(fibre_isomorphism(&a, &b).is_some());
        prop_assert_eq!(extract_factor_system(&b).unwrap(), h);
    }

    #[test]
    fn baer_sum_is_commutative((s, picks) in select(semimodules().clone()).prop_flat_map(|s| {
        let n = enumerate_factor_systems(&s).len();
        (Just(s), subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(2)))
    })) {
        let gs = enumerate_factor_systems(&s);
        if let [i, j] = picks[..] {
            let (a, b) = (crossed_product(&gs[i]).unwrap(), crossed_product(&gs[j]).unwrap());
            let ab = baer_sum(&a, &b).unwrap();
            let ba = baer_sum(&b, &a).unwrap();
            prop_assert!(fibre_isomorphism(&ab, &ba).is_some());
        }
    }

    #[test]
    fn direction_matches_semidirect(e in select(surjections().clone())
        .prop_filter("cc Schreier", |e| e.is_cc() && e.is_schreier()))
    {
        let d = df_by_coequalizer(&e).unwrap();
        prop_assert!(d.iso_from_semidirect().unwrap().is_iso());
        prop_assert!(d.action_coincides().unwrap());
    }
}
