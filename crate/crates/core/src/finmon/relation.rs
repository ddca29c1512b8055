use std::collections::HashMap;
use std::sync::Arc;

use super::{Elem, FiniteMonoid, Hom, MonoidError};

struct TupleInner {
    monoid: FiniteMonoid,
    factors: Vec<FiniteMonoid>,
    tuples: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

/// A submonoid of a finite product, with elements numbered by the
/// lexicographic order of their tuples.
///
/// The identity tuple is lexicographically least, so it is element 0. For a
/// full product of two factors the element `(a, b)` has index
/// `a * |N| + b`.
#[derive(Clone)]
pub struct TupleMonoid(Arc<TupleInner>);

impl TupleMonoid {
    /// Builds the submonoid on `tuples`, which must contain the identity and
    /// be closed under the componentwise operation.
    pub fn new(
        factors: Vec<FiniteMonoid>,
        tuples: impl IntoIterator<Item = Vec<Elem>>,
    ) -> Result<Self, MonoidError> {
        let mut tuples: Vec<Vec<Elem>> = tuples.into_iter().collect();
        for t in &tuples {
            if t.len() != factors.len() || t.iter().zip(&factors).any(|(&x, f)| x >= f.order()) {
                return Err(MonoidError::NotSubmonoid {
                    detail: format!("malformed tuple {t:?}"),
                });
            }
        }
        tuples.sort_unstable();
        tuples.dedup();
        if tuples.first().is_none_or(|t| t.iter().any(|&x| x != 0)) {
            return Err(MonoidError::NotSubmonoid {
                detail: "identity tuple missing".into(),
            });
        }
        let index: HashMap<Vec<Elem>, Elem> = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let n = tuples.len();
        let mut table = Vec::with_capacity(n * n);
        let mut buf = vec![0; factors.len()];
        for s in &tuples {
            for t in &tuples {
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.op(s[i], t[i]);
                }
                match index.get(&buf) {
                    Some(&e) => table.push(e),
                    None => {
                        return Err(MonoidError::NotSubmonoid {
                            detail: format!("{s:?} * {t:?} = {buf:?} is not a member"),
                        })
                    }
                }
            }
        }
        let monoid = FiniteMonoid::from_flat_unchecked(n, table);
        Ok(TupleMonoid(Arc::new(TupleInner {
            monoid,
            factors,
            tuples,
            index,
        })))
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.0.monoid
    }

    pub fn factors(&self) -> &[FiniteMonoid] {
        &self.0.factors
    }

    pub fn len(&self) -> usize {
        self.0.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<Elem>] {
        &self.0.tuples
    }

    pub fn tuple(&self, e: Elem) -> &[Elem] {
        &self.0.tuples[e]
    }

    pub fn index_of(&self, t: &[Elem]) -> Option<Elem> {
        self.0.index.get(t).copied()
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        self.0.index.contains_key(t)
    }

    /// The `i`-th coordinate projection.
    pub fn projection(&self, i: usize) -> Hom {
        Hom::new_unchecked(
            self.monoid(),
            &self.0.factors[i],
            self.0.tuples.iter().map(|t| t[i]).collect(),
        )
    }

    /// The map `x -> index of f(x)` from `dom` into this monoid, validated as
    /// a homomorphism.
    pub fn lift(
        &self,
        dom: &FiniteMonoid,
        f: impl Fn(Elem) -> Vec<Elem>,
    ) -> Result<Hom, MonoidError> {
        let mut map = Vec::with_capacity(dom.order());
        for x in dom.elements() {
            let t = f(x);
            match self.index_of(&t) {
                Some(e) => map.push(e),
                None => {
                    return Err(MonoidError::NotSubmonoid {
                        detail: format!("{t:?} is not a member"),
                    })
                }
            }
        }
        Hom::new(dom, self.monoid(), map)
    }
}

impl PartialEq for TupleMonoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.factors == other.0.factors && self.0.tuples == other.0.tuples)
    }
}

impl Eq for TupleMonoid {}

impl std::fmt::Debug for TupleMonoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("TupleMonoid").field(&self.0.tuples).finish()
    }
}

/// The direct product with componentwise operation.
pub fn product(a: &FiniteMonoid, b: &FiniteMonoid) -> TupleMonoid {
    let tuples = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| vec![x, y]));
    TupleMonoid::new(vec![a.clone(), b.clone()], tuples).expect("a full product is a monoid")
}

/// `{(x, y) : f(x) = g(y)}`.
pub fn pullback(f: &Hom, g: &Hom) -> Result<TupleMonoid, MonoidError> {
    if f.cod() != g.cod() {
        return Err(MonoidError::Mismatch);
    }
    let tuples = f.dom().elements().flat_map(|x| {
        g.dom()
            .elements()
            .filter(move |&y| f.apply(x) == g.apply(y))
            .map(move |y| vec![x, y])
    });
    TupleMonoid::new(vec![f.dom().clone(), g.dom().clone()], tuples)
}

/// The submonoid on a set of elements, with its inclusion.
///
/// Elements keep their relative order, so the identity stays at 0.
pub fn submonoid(m: &FiniteMonoid, elems: &[Elem]) -> Result<(FiniteMonoid, Hom), MonoidError> {
    let mut elems = elems.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.first() != Some(&0) {
        return Err(MonoidError::NotSubmonoid {
            detail: "identity missing".into(),
        });
    }
    let mut pos = vec![usize::MAX; m.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &elems {
        for &b in &elems {
            let p = pos[m.op(a, b)];
            if p == usize::MAX {
                return Err(MonoidError::NotSubmonoid {
                    detail: format!("{a} * {b} leaves the subset"),
                });
            }
            table.push(p);
        }
    }
    let sub = FiniteMonoid::from_flat_unchecked(n, table);
    let incl = Hom::new_unchecked(&sub, m, elems);
    Ok((sub, incl))
}

/// The elements of the submonoid generated by `gens`, sorted.
pub fn generated_submonoid(m: &FiniteMonoid, gens: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; m.order()];
    member[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = m.op(x, g);
            if !std::mem::replace(&mut member[y], true) {
                frontier.push(y);
            }
        }
    }
    m.elements().filter(|&x| member[x]).collect()
}

/// An internal relation: a submonoid of `X x X`.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    base: FiniteMonoid,
    carrier: TupleMonoid,
}

impl Relation {
    pub fn from_pairs(
        base: &FiniteMonoid,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, MonoidError> {
        let carrier = TupleMonoid::new(
            vec![base.clone(), base.clone()],
            pairs.into_iter().map(|(x, y)| vec![x, y]),
        )?;
        Ok(Relation {
            base: base.clone(),
            carrier,
        })
    }

    pub fn diagonal(base: &FiniteMonoid) -> Self {
        Self::from_pairs(base, base.elements().map(|x| (x, x)))
            .expect("the diagonal is a submonoid")
    }

    pub fn full(base: &FiniteMonoid) -> Self {
        Relation {
            base: base.clone(),
            carrier: product(base, base),
        }
    }

    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn carrier(&self) -> &TupleMonoid {
        &self.carrier
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        self.carrier.monoid()
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn pair(&self, e: Elem) -> (Elem, Elem) {
        let t = self.carrier.tuple(e);
        (t[0], t[1])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.carrier.tuples().iter().map(|t| (t[0], t[1]))
    }

    pub fn index_of(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.carrier.index_of(&[x, y])
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.carrier.contains(&[x, y])
    }

    pub fn r1(&self) -> Hom {
        self.carrier.projection(0)
    }

    pub fn r2(&self) -> Hom {
        self.carrier.projection(1)
    }

    pub fn is_reflexive(&self) -> bool {
        self.base.elements().all(|x| self.contains(x, x))
    }

    /// The diagonal map `x -> (x, x)` when the relation is reflexive.
    pub fn delta(&self) -> Option<Hom> {
        let map: Option<Vec<Elem>> = self.base.elements().map(|x| self.index_of(x, x)).collect();
        map.map(|m| Hom::new_unchecked(&self.base, self.monoid(), m))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.base.order();
        let mut succ = vec![Vec::new(); n];
        for (x, y) in self.pairs() {
            succ[x].push(y);
        }
        self.pairs()
            .all(|(x, y)| succ[y].iter().all(|&z| self.contains(x, z)))
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// `Eq(f) = {(x, y) : f(x) = f(y)}`.
pub fn kernel_pair(f: &Hom) -> Relation {
    let carrier = pullback(f, f).expect("a kernel pair is a pullback along itself");
    Relation {
        base: f.dom().clone(),
        carrier,
    }
}

/// The kernel of a homomorphism and its kernel pair.
#[derive(Clone, Debug)]
pub struct KernelObjects {
    pub kernel: FiniteMonoid,
    pub inclusion: Hom,
    pub pair: Relation,
}

pub fn kernel_objects(f: &Hom) -> KernelObjects {
    let (kernel, inclusion) = submonoid(f.dom(), &f.preimage(0)).expect("a kernel is a submonoid");
    KernelObjects {
        kernel,
        inclusion,
        pair: kernel_pair(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmon::is_isomorphic;

    #[test]
    fn kernel_of_reduction_mod_two() {
        let c4 = FiniteMonoid::cyclic_group(4);
        let f = Hom::new(&c4, &FiniteMonoid::cyclic_group(2), vec![0, 1, 0, 1]).unwrap();
        let ko = kernel_objects(&f);
        assert_eq!(ko.inclusion.map(), &[0, 2]);
        assert_eq!(ko.kernel, FiniteMonoid::cyclic_group(2));
        // sum of squared fibre sizes: 2^2 + 2^2
        assert_eq!(ko.pair.len(), 8);
        assert!(ko.pair.is_reflexive() && ko.pair.is_symmetric() && ko.pair.is_transitive());
        assert_eq!(pullback(&f, &f).unwrap().len(), 8);
    }

    #[test]
    fn kernel_of_a_product_projection() {
        let p = product(
            &FiniteMonoid::cyclic_group(3),
            &FiniteMonoid::two_element_semilattice(),
        );
        let ko = kernel_objects(&p.projection(1));
        let firsts: Vec<_> = ko
            .inclusion
            .map()
            .iter()
            .map(|&e| p.tuple(e).to_vec())
            .collect();
        assert_eq!(firsts, vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
    }

    #[test]
    fn product_encoding_and_flags() {
        let c2 = FiniteMonoid::cyclic_group(2);
        let m2 = FiniteMonoid::two_element_semilattice();
        let p = product(&c2, &m2);
        assert_eq!(p.len(), 4);
        for a in 0..2 {
            for m in 0..2 {
                assert_eq!(p.index_of(&[a, m]), Some(a * 2 + m));
            }
        }
        assert!(p.monoid().is_commutative());
        assert_eq!(p.monoid().units().len(), 2);
    }

    #[test]
    fn pullback_along_identity_is_the_domain() {
        let s3 = FiniteMonoid::symmetric_group3();
        let sign = Hom::new(&s3, &FiniteMonoid::cyclic_group(2), vec![0, 0, 0, 1, 1, 1]).unwrap();
        let pb = pullback(&sign, &Hom::identity(sign.cod())).unwrap();
        assert!(is_isomorphic(pb.monoid(), &s3).is_some());
    }

    #[test]
    fn non_closed_pairs_are_rejected() {
        let c2 = FiniteMonoid::cyclic_group(2);
        assert!(Relation::from_pairs(&c2, [(0, 0), (0, 1)]).is_ok());
        assert!(Relation::from_pairs(&c2, [(0, 0), (1, 0), (0, 1)]).is_err());
        assert!(submonoid(&FiniteMonoid::cyclic_group(4), &[0, 1]).is_err());
    }

    #[test]
    fn generated_submonoids() {
        let c4 = FiniteMonoid::cyclic_group(4);
        assert_eq!(generated_submonoid(&c4, &[2]), vec![0, 2]);
        assert_eq!(generated_submonoid(&c4, &[1]), vec![0, 1, 2, 3]);
        assert_eq!(generated_submonoid(&c4, &[]), vec![0]);
    }
}
