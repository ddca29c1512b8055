use super::{Elem, FiniteMonoid, Hom, HomSearch};

/// Isomorphism-invariant data of a single element, used to prune the
/// bijection search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementInvariant {
    pub idempotent: bool,
    pub unit: bool,
    /// Index and period of the cyclic submonoid generated by the element.
    pub index: usize,
    pub period: usize,
    pub centralizer: usize,
    pub left_stabilizer: usize,
    pub right_stabilizer: usize,
    pub square_roots: usize,
}

fn index_and_period(m: &FiniteMonoid, x: Elem) -> (usize, usize) {
    let mut first_seen = vec![usize::MAX; m.order()];
    let mut power = x;
    let mut exp = 1;
    loop {
        if first_seen[power] != usize::MAX {
            return (first_seen[power], exp - first_seen[power]);
        }
        first_seen[power] = exp;
        power = m.op(power, x);
        exp += 1;
    }
}

pub fn element_invariants(m: &FiniteMonoid) -> Vec<ElementInvariant> {
    let mut roots = vec![0; m.order()];
    for y in m.elements() {
        roots[m.op(y, y)] += 1;
    }
    m.elements()
        .map(|x| {
            let (index, period) = index_and_period(m, x);
            ElementInvariant {
                idempotent: m.op(x, x) == x,
                unit: m.is_unit(x),
                index,
                period,
                centralizer: m.elements().filter(|&y| m.op(x, y) == m.op(y, x)).count(),
                left_stabilizer: m.elements().filter(|&y| m.op(y, x) == x).count(),
                right_stabilizer: m.elements().filter(|&y| m.op(x, y) == x).count(),
                square_roots: roots[x],
            }
        })
        .collect()
}

/// An isomorphism `m -> n` if one exists.
///
/// The witness is the lexicographically least bijection that is a
/// homomorphism.
pub fn is_isomorphic(m: &FiniteMonoid, n: &FiniteMonoid) -> Option<Hom> {
    if m.order() != n.order()
        || m.is_commutative() != n.is_commutative()
        || m.is_group() != n.is_group()
        || m.is_cancellative() != n.is_cancellative()
    {
        return None;
    }
    if m.table() == n.table() {
        return Some(Hom::identity(m));
    }
    let im = element_invariants(m);
    let inn = element_invariants(n);
    let (mut sm, mut sn) = (im.clone(), inn.clone());
    sm.sort_unstable();
    sn.sort_unstable();
    if sm != sn {
        return None;
    }
    let mut search = HomSearch::new(m, n).injective(true);
    for x in m.elements() {
        let allowed: Vec<Elem> = n.elements().filter(|&y| inn[y] == im[x]).collect();
        search = search.restrict(x, &allowed);
    }
    search.first()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmon::product;

    #[test]
    fn c4_is_not_v4() {
        assert!(
            is_isomorphic(&FiniteMonoid::cyclic_group(4), &FiniteMonoid::klein_four()).is_none()
        );
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let s3 = FiniteMonoid::symmetric_group3();
        assert_eq!(is_isomorphic(&s3, &s3), Some(Hom::identity(&s3)));
    }

    #[test]
    fn relabeled_v4_is_found() {
        let c2 = FiniteMonoid::cyclic_group(2);
        let p = product(&c2, &c2);
        let relabeled = p.monoid().relabel(&[0, 3, 1, 2]);
        let iso = is_isomorphic(&relabeled, &FiniteMonoid::klein_four()).unwrap();
        assert!(iso.is_bijective());
        assert!(Hom::new(iso.dom(), iso.cod(), iso.map().to_vec()).is_ok());
    }

    #[test]
    fn c2_times_c3_is_c6() {
        let p = product(
            &FiniteMonoid::cyclic_group(2),
            &FiniteMonoid::cyclic_group(3),
        );
        assert!(is_isomorphic(p.monoid(), &FiniteMonoid::cyclic_group(6)).is_some());
        assert!(is_isomorphic(p.monoid(), &FiniteMonoid::symmetric_group3()).is_none());
    }
}
