use super::*;
use crate::extension::{product_extension, trivial_right, Extension};
use crate::finmon::{is_isomorphic, kernel_pair, product, Relation};

fn c2() -> FiniteMonoid {
    FiniteMonoid::cyclic_group(2)
}

fn c3() -> FiniteMonoid {
    FiniteMonoid::cyclic_group(3)
}

fn m2() -> FiniteMonoid {
    FiniteMonoid::two_element_semilattice()
}

fn inversion() -> Semimodule {
    Semimodule::from_rows(&c2(), &c3(), &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
}

fn s3_point() -> SchreierPoint {
    let e = Extension::es3();
    let s = Hom::new(e.base(), e.carrier(), vec![0, 3]).unwrap();
    SchreierPoint::new(e.k().clone(), e.f().clone(), s).unwrap()
}

fn product_point(k: &FiniteMonoid, m: &FiniteMonoid) -> SchreierPoint {
    let e = product_extension(k, m);
    let s = Hom::new(m, e.carrier(), m.elements().collect()).unwrap();
    SchreierPoint::new(e.k().clone(), e.f().clone(), s).unwrap()
}

#[test]
fn induced_actions() {
    assert!(to_semimodule(&product_extension(&c2(), &m2()))
        .unwrap()
        .is_trivial_action());
    assert_eq!(
        induced_pre_action(&Extension::es3()).unwrap(),
        vec![0, 1, 2, 0, 2, 1]
    );
    assert_eq!(to_semimodule(&Extension::es3()).unwrap(), inversion());
    let c4 = FiniteMonoid::cyclic_group(4);
    let central =
        Extension::of_surjection(&Hom::new(&c4, &c2(), vec![0, 1, 0, 1]).unwrap()).unwrap();
    assert!(to_semimodule(&central).unwrap().is_trivial_action());
    assert!(to_semimodule(&product_extension(&m2(), &c2()))
        .unwrap()
        .is_trivial_action());
}

#[test]
fn non_commutative_kernel_is_rejected() {
    let e = crate::extension::trivial_left(&FiniteMonoid::symmetric_group3());
    assert_eq!(induced_pre_action(&e), Err(ActionError::NotCommutative));
}

#[test]
fn patrick_identity() {
    assert!(patrick_check(&product_extension(&c2(), &m2())).unwrap());
    assert!(patrick_check(&Extension::es3()).unwrap());
    assert!(patrick_check(&trivial_right(&m2())).unwrap());
}

#[test]
fn points() {
    let p = product_point(&c2(), &m2());
    assert_eq!(p.q_table(), &[0, 0, 1, 1]);
    let s3 = s3_point();
    assert_eq!(s3.q_table(), &[0, 1, 2, 0, 1, 2]);
}

#[test]
fn duplicate_decomposition_is_rejected() {
    let x = FiniteMonoid::from_table(&[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]).unwrap();
    let f = Hom::new(&x, &m2(), vec![0, 0, 1]).unwrap();
    let e = Extension::of_surjection(&f).unwrap();
    let s = Hom::new(&m2(), &x, vec![0, 2]).unwrap();
    assert_eq!(
        SchreierPoint::new(e.k().clone(), f, s).unwrap_err(),
        ActionError::RetractionNotUnique { b: 2 }
    );
}

#[test]
fn point_actions() {
    assert!(point_action(&product_point(&c3(), &c2()))
        .unwrap()
        .is_trivial_action());
    assert_eq!(point_action(&s3_point()).unwrap(), inversion());
}

#[test]
fn semidirect_products() {
    let d = semidirect(&inversion()).unwrap();
    assert!(is_isomorphic(d.carrier(), &FiniteMonoid::symmetric_group3()).is_some());
    let direct = semidirect(&Semimodule::trivial(&c2(), &c3()).unwrap()).unwrap();
    assert_eq!(direct.carrier(), product(&c3(), &c2()).monoid());
    let mixed = semidirect(&Semimodule::trivial(&c2(), &m2()).unwrap()).unwrap();
    assert_eq!(mixed.carrier(), product(&m2(), &c2()).monoid());
    assert_eq!(mixed.q_table(), &[0, 0, 1, 1]);
}

#[test]
fn points_are_semidirect_products() {
    for p in [
        product_point(&c2(), &m2()),
        s3_point(),
        product_point(&m2(), &c3()),
    ] {
        let iso = point_iso_semidirect(&p).unwrap();
        assert!(iso.is_iso());
    }
}

#[test]
fn semidirect_round_trip() {
    let monoids = [c2(), m2(), c3(), FiniteMonoid::trivial()];
    let modules = [c2(), m2(), c3(), FiniteMonoid::klein_four()];
    let mut count = 0;
    for m in &monoids {
        for k in &modules {
            for s in enumerate_semimodules(m, k) {
                count += 1;
                assert_eq!(point_action(&semidirect(&s).unwrap()).unwrap(), s);
            }
        }
    }
    assert!(count > 20);
}

#[test]
fn endomorphisms_and_actions() {
    let (end, homs) = endomorphism_monoid(&c3());
    assert_eq!(end.order(), 3);
    assert_eq!(homs[0], Hom::identity(&c3()));
    assert_eq!(enumerate_semimodules(&c2(), &c3()).len(), 2);
    assert_eq!(enumerate_semimodules(&m2(), &c2()).len(), 2);
}

#[test]
fn axiom_violations_are_named() {
    assert_eq!(
        Semimodule::from_rows(&c2(), &c3(), &[vec![0, 2, 1], vec![0, 2, 1]]),
        Err(ActionError::AxiomA1Violation { a: 1 })
    );
    assert_eq!(
        Semimodule::from_rows(&c2(), &c3(), &[vec![0, 1, 2], vec![1, 1, 1]]),
        Err(ActionError::AxiomA2Violation { m: 1 })
    );
    assert_eq!(
        Semimodule::from_rows(&c2(), &c3(), &[vec![0, 1, 2], vec![0, 1, 1]]),
        Err(ActionError::AxiomA3Violation { m: 1, a: 1, b: 1 })
    );
    assert_eq!(
        Semimodule::from_rows(&c2(), &c2(), &[vec![0, 1], vec![0, 0]]),
        Err(ActionError::AxiomA4Violation { m: 1, m2: 1, a: 1 })
    );
}

#[test]
fn s_reflexive_relations() {
    let diag = s_reflexive_check(&Relation::diagonal(&m2())).unwrap();
    assert!(diag.point().kernel().is_trivial());
    let full = s_reflexive_check(&Relation::full(&m2())).unwrap_err();
    assert_eq!(
        full,
        ActionError::NotSReflexive(Box::new(ActionError::NoRetraction { b: 2 }))
    );

    let e = Extension::es3();
    let eq = s_reflexive_check(&kernel_pair(e.f())).unwrap();
    assert!(eq.is_transitive() && eq.is_symmetric() && eq.kernel_is_group());
}

#[test]
fn connector_on_s3_kernel_pair() {
    let e = Extension::es3();
    let x = e.carrier().clone();
    let eq = kernel_pair(e.f());
    let c = connector(&eq, &s_reflexive_check(&eq).unwrap()).unwrap();
    for t in c.composite().tuples() {
        let expected = x.op(x.op(t[0], x.inverse(t[1]).unwrap()), t[2]);
        assert_eq!(c.apply(t[0], t[1], t[2]), Some(expected));
    }
    assert_eq!(c.count_solutions(), 1);
}

#[test]
fn connector_on_diagonal() {
    let d = Relation::diagonal(&m2());
    let c = connector(&d, &s_reflexive_check(&d).unwrap()).unwrap();
    for x in m2().elements() {
        assert_eq!(c.apply(x, x, x), Some(x));
    }
}

#[test]
fn full_relation_does_not_centralize_kernel_pair_in_s3() {
    let e = Extension::es3();
    let full = Relation::full(e.carrier());
    let eq = kernel_pair(e.f());
    assert!(matches!(
        connector(&full, &s_reflexive_check(&eq).unwrap()),
        Err(ActionError::NotCentral { .. })
    ));
}

#[test]
fn induced_pre_action_can_violate_a4() {
    let x = FiniteMonoid::from_table(&[
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 1, 1, 1, 1, 1],
        vec![2, 4, 4, 5, 4, 4],
        vec![3, 4, 5, 3, 4, 5],
        vec![4, 4, 4, 4, 4, 4],
        vec![5, 4, 4, 5, 4, 4],
    ])
    .unwrap();
    let m = FiniteMonoid::from_table(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 1]]).unwrap();
    let f = Hom::new(&x, &m, (0..6).map(|e| e % 3).collect()).unwrap();
    let e = Extension::of_surjection(&f).unwrap();
    assert!(e.is_schreier());
    assert_eq!(e.kernel(), &m2());
    assert_eq!(
        to_semimodule(&e),
        Err(ActionError::AxiomA4Violation { m: 2, m2: 2, a: 1 })
    );
}

#[test]
fn full_relation_on_s3_has_no_connector() {
    let full = Relation::full(&FiniteMonoid::symmetric_group3());
    let s = s_reflexive_check(&full).unwrap();
    assert!(matches!(
        connector(&full, &s),
        Err(ActionError::NotCentral { .. })
    ));
    assert_eq!(count_connectors(&full, &full).unwrap(), 0);
    let eq = kernel_pair(Extension::es3().f());
    assert_eq!(count_connectors(&eq, &eq).unwrap(), 1);
}
