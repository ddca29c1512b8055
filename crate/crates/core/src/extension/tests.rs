use super::*;
use crate::finmon::{enumerate_monoids, product, FiniteMonoid, Hom};

fn c2() -> FiniteMonoid {
    FiniteMonoid::cyclic_group(2)
}

fn m2() -> FiniteMonoid {
    FiniteMonoid::two_element_semilattice()
}

/// C2 with an absorbing element adjoined: 0 = e, 1 = a, 2 = z.
fn c2_with_zero() -> FiniteMonoid {
    FiniteMonoid::from_table(&[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]).unwrap()
}

#[test]
fn validation_errors() {
    let trivial = FiniteMonoid::trivial();
    let c4 = FiniteMonoid::cyclic_group(4);
    let incl = Hom::new(&c2(), &c4, vec![0, 2]).unwrap();
    let zero = Hom::zero(&trivial, &c2());
    assert_eq!(
        Extension::new(zero, incl.clone()),
        Err(ExtensionError::NotSurjective)
    );

    let onto = Hom::new(&c4, &c2(), vec![0, 1, 0, 1]).unwrap();
    assert_eq!(
        Extension::new(Hom::zero(&c2(), &c4), Hom::zero(&trivial, &trivial)),
        Err(ExtensionError::Mismatch)
    );
    assert_eq!(
        Extension::new(Hom::zero(&c2(), &c4), onto.clone()),
        Err(ExtensionError::NotInjective)
    );
    assert_eq!(
        Extension::new(Hom::zero(&trivial, &c4), onto.clone()),
        Err(ExtensionError::NotKernel)
    );
    assert!(Extension::new(incl, onto).is_ok());
}

#[test]
fn product_extension_representatives() {
    let e = product_extension(&c2(), &m2());
    assert!(Extension::new(e.k().clone(), e.f().clone()).is_ok());
    assert_eq!(e.representatives(1), vec![1, 3]);
    assert_eq!(e.representatives(0), vec![0, 2]);
    let s = e.schreier().unwrap();
    assert_eq!(s.base_reps(), &[0, 1]);
    assert_eq!(e.q(3), 1);
    assert!(e.cokernel_check());
}

#[test]
fn trivial_extensions() {
    for m in [m2(), c2(), FiniteMonoid::klein_four()] {
        let right = trivial_right(&m);
        for x in m.elements() {
            assert_eq!(right.representatives(x), vec![x]);
        }
        assert!(right.cokernel_check());
        let left = trivial_left(&m);
        assert_eq!(left.representatives(0), m.units());
    }
}

#[test]
fn multiplication_on_m2_squared_is_not_schreier() {
    let p = product(&m2(), &m2());
    let f = Hom::new(
        p.monoid(),
        &m2(),
        p.tuples().iter().map(|t| m2().op(t[0], t[1])).collect(),
    )
    .unwrap();
    let e = Extension::new(Hom::zero(&FiniteMonoid::trivial(), p.monoid()), f).unwrap();
    assert_eq!(
        e.schreier().unwrap_err(),
        ExtensionError::NotSchreier { m: 1 }
    );
    assert_eq!(e.fibre(1).len(), 3);
}

#[test]
fn es3_is_schreier_with_all_elements_representatives() {
    let e = Extension::es3();
    assert_eq!(e.kernel(), &FiniteMonoid::cyclic_group(3));
    let s = e.schreier().unwrap();
    assert_eq!(s.all_representatives(), (0..6).collect::<Vec<_>>());
    assert_eq!(s.base_reps(), &[0, 3]);
    assert!(e.cokernel_check());
}

#[test]
fn retraction_examples() {
    for e in [
        product_extension(&c2(), &m2()),
        Extension::es3(),
        trivial_left(&m2()),
    ] {
        let s = e.schreier().unwrap();
        for a in e.kernel().elements() {
            assert_eq!(e.q(e.k().apply(a)), a);
        }
        for &u in s.base_reps() {
            assert_eq!(e.q(u), 0);
        }
        for x in e.carrier().elements() {
            assert_eq!(e.add(e.k().apply(e.q(x)), e.u(e.f().apply(x))), x);
        }
    }
}

#[test]
fn morphism_examples() {
    let e = product_extension(&c2(), &m2());
    assert!(ExtMorphism::new(
        &e,
        &e,
        Hom::identity(e.kernel()),
        Hom::identity(e.carrier())
    )
    .is_ok());

    let t = trivial_right(&m2());
    let unit = Hom::new(t.carrier(), e.carrier(), vec![0, 1]).unwrap();
    assert!(ExtMorphism::new(&t, &e, Hom::zero(t.kernel(), e.kernel()), unit).is_ok());

    let v = product_extension(&c2(), &c2());
    let id = Hom::identity(v.carrier());
    assert_eq!(
        ExtMorphism::new(&v, &v, Hom::zero(v.kernel(), v.kernel()), id),
        Err(ExtensionError::SquareFails(Square::A))
    );
    let sum = Hom::new(v.carrier(), v.carrier(), vec![0, 2, 2, 0]).unwrap();
    assert_eq!(
        ExtMorphism::new(&v, &v, Hom::identity(v.kernel()), sum),
        Err(ExtensionError::SquareFails(Square::B))
    );

    let w = product_extension(&m2(), &m2());
    let absorb = Hom::new(w.carrier(), w.carrier(), vec![0, 3, 2, 3]).unwrap();
    assert_eq!(
        ExtMorphism::new(&w, &w, Hom::identity(w.kernel()), absorb),
        Err(ExtensionError::RepsNotPreserved { m: 1 })
    );
}

#[test]
fn normal_epimorphism_that_is_not_schreier() {
    let x = c2_with_zero();
    let f = Hom::new(&x, &m2(), vec![0, 0, 1]).unwrap();
    let e = Extension::of_surjection(&f).unwrap();
    assert_eq!(e.kernel(), &c2());
    assert!(e.cokernel_check());
    assert_eq!(
        e.schreier().unwrap_err(),
        ExtensionError::NotSchreier { m: 1 }
    );
}

#[test]
fn representative_counts_match_units() {
    for n in 1..=3 {
        for k in enumerate_monoids(n).unwrap() {
            for m in [c2(), m2()] {
                let e = product_extension(&k, &m);
                let s = e.schreier().unwrap();
                let units = k.units().len();
                assert!(s.all_reps().iter().all(|b| b.len() == units));
                let group_kernel = k.is_group();
                assert_eq!(
                    s.all_representatives().len() == e.carrier().order(),
                    group_kernel
                );
                assert_eq!(s.reps(0) == e.fibre(0), group_kernel);
            }
        }
    }
}

#[test]
fn retraction_is_additive_along_kq() {
    let e = product_extension(&FiniteMonoid::cyclic_group(3), &m2());
    let x = e.carrier();
    for a in x.elements() {
        for b in x.elements() {
            let lhs = e.kernel().op(e.q(a), e.q(b));
            assert_eq!(lhs, e.q(x.op(e.k().apply(e.q(a)), b)));
        }
    }
}

#[test]
fn short_five_on_enumerated_morphisms() {
    let mod_two = Hom::new(&FiniteMonoid::cyclic_group(4), &c2(), vec![0, 1, 0, 1]).unwrap();
    let es = [
        product_extension(&c2(), &c2()),
        Extension::of_surjection(&mod_two).unwrap(),
        trivial_right(&c2()),
    ];
    let mut seen = 0;
    for a in &es {
        for b in &es {
            for mor in enumerate_ext_morphisms(a, b).unwrap() {
                seen += 1;
                if mor.alpha1().is_injective() {
                    assert!(mor.alpha2().is_injective());
                }
                if mor.alpha1().is_surjective() {
                    assert!(mor.alpha2().is_surjective());
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn fibre_isomorphism_respects_kernel() {
    let c4 = FiniteMonoid::cyclic_group(4);
    let nonsplit =
        Extension::of_surjection(&Hom::new(&c4, &c2(), vec![0, 1, 0, 1]).unwrap()).unwrap();
    let split = product_extension(&c2(), &c2());
    assert!(fibre_isomorphism(&split, &split).is_some());
    assert!(fibre_isomorphism(&split, &nonsplit).is_none());
    let iso = fibre_isomorphism(&nonsplit, &nonsplit).unwrap();
    assert!(iso.is_iso());
}

#[test]
fn extension_isomorphism_allows_kernel_automorphisms() {
    use crate::action::{enumerate_semimodules, semidirect};
    let v4 = FiniteMonoid::klein_four();
    let twisted: Vec<Extension> = enumerate_semimodules(&c2(), &v4)
        .into_iter()
        .filter(|s| !s.is_trivial_action())
        .map(|s| semidirect(&s).unwrap().extension())
        .collect();
    assert_eq!(twisted.len(), 3);
    let (a, b) = (&twisted[0], &twisted[1]);
    assert!(fibre_isomorphism(a, b).is_none());
    let iso = extension_isomorphism(a, b).unwrap();
    assert!(iso.is_iso());
    assert_ne!(*iso.alpha1(), Hom::identity(&v4));
    assert!(ExtMorphism::new(a, b, iso.alpha1().clone(), iso.alpha2().clone()).is_ok());
    assert!(extension_isomorphism(a, &product_extension(&v4, &c2())).is_none());
}

#[test]
fn extension_maps_include_non_schreier_morphisms() {
    let e = product_extension(&m2(), &c2());
    let maps = enumerate_extension_maps(&e, &e).unwrap();
    let morphisms = enumerate_ext_morphisms(&e, &e).unwrap();
    assert!(maps.len() >= morphisms.len());
    assert!(morphisms.iter().all(|m| maps.contains(m.alpha2())));
}
