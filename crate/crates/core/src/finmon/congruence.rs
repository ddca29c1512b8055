use std::collections::VecDeque;

use super::{Elem, FiniteMonoid, Hom, MonoidError};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Class labels numbered by first occurrence, so labels increase with
    /// the least element of each class.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut next = 0;
        let mut labels = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        labels
    }
}

/// A monoid congruence, stored as class labels.
///
/// Classes are numbered in order of their least element, so the class of
/// the identity is always 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    base: FiniteMonoid,
    class_of: Vec<usize>,
    classes: Vec<Vec<Elem>>,
}

impl Congruence {
    fn from_labels_unchecked(base: &FiniteMonoid, labels: Vec<usize>) -> Self {
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); count];
        for (x, &l) in labels.iter().enumerate() {
            classes[l].push(x);
        }
        Congruence {
            base: base.clone(),
            class_of: labels,
            classes,
        }
    }

    /// Builds a congruence from arbitrary labels, checking compatibility.
    pub fn from_labels(base: &FiniteMonoid, labels: &[usize]) -> Result<Self, MonoidError> {
        if labels.len() != base.order() {
            return Err(MonoidError::MapLength {
                len: labels.len(),
                expected: base.order(),
            });
        }
        let mut uf = UnionFind::new(base.order());
        let mut first = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            let r = *first.entry(l).or_insert(x);
            uf.union(r, x);
        }
        let c = Self::from_labels_unchecked(base, uf.labels());
        if let Some((a, b)) = c.compatibility_witness() {
            return Err(MonoidError::NotMultiplicative { a, b });
        }
        Ok(c)
    }

    pub fn discrete(base: &FiniteMonoid) -> Self {
        Self::from_labels_unchecked(base, base.elements().collect())
    }

    pub fn full(base: &FiniteMonoid) -> Self {
        Self::from_labels_unchecked(base, vec![0; base.order()])
    }

    /// The kernel congruence `{(a, b) : h(a) = h(b)}`.
    pub fn kernel_of(h: &Hom) -> Self {
        let mut uf = UnionFind::new(h.dom().order());
        let mut first = vec![usize::MAX; h.cod().order()];
        for x in h.dom().elements() {
            let y = h.apply(x);
            if first[y] == usize::MAX {
                first[y] = x;
            } else {
                uf.union(first[y], x);
            }
        }
        Self::from_labels_unchecked(h.dom(), uf.labels())
    }

    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Whether every pair related by `self` is related by `other`.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.related(c[0], x)))
    }

    /// All related pairs, in lexicographic order.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.base.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }

    /// A pair of elements `(a, c)` for which the class of `a*c` or `c*a`
    /// is not determined by the class of `a`.
    fn compatibility_witness(&self) -> Option<(Elem, Elem)> {
        for class in &self.classes {
            let r = class[0];
            for &a in &class[1..] {
                for c in self.base.elements() {
                    if !self.related(self.base.op(r, c), self.base.op(a, c))
                        || !self.related(self.base.op(c, r), self.base.op(c, a))
                    {
                        return Some((a, c));
                    }
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Congruence").field(&self.classes).finish()
    }
}

/// The smallest congruence on `m` containing `generators`.
///
/// Every pair that actually merges two classes pushes its left and right
/// translates by each element onto the work queue; the process stops when the
/// queue is empty.
pub fn congruence_closure(
    m: &FiniteMonoid,
    generators: impl IntoIterator<Item = (Elem, Elem)>,
) -> Congruence {
    let mut uf = UnionFind::new(m.order());
    let mut queue: VecDeque<(Elem, Elem)> = generators.into_iter().collect();
    while let Some((a, b)) = queue.pop_front() {
        if uf.union(a, b) {
            for c in m.elements() {
                queue.push_back((m.op(c, a), m.op(c, b)));
                queue.push_back((m.op(a, c), m.op(b, c)));
            }
        }
    }
    Congruence::from_labels_unchecked(m, uf.labels())
}

/// The quotient monoid together with the projection onto it.
pub fn quotient_by(m: &FiniteMonoid, c: &Congruence) -> Result<(FiniteMonoid, Hom), MonoidError> {
    if c.base() != m {
        return Err(MonoidError::Mismatch);
    }
    let k = c.num_classes();
    let reps: Vec<Elem> = c.classes().iter().map(|cl| cl[0]).collect();
    let table = (0..k * k)
        .map(|i| c.class_of(m.op(reps[i / k], reps[i % k])))
        .collect();
    let q = FiniteMonoid::from_flat_unchecked(k, table);
    let proj = Hom::new_unchecked(m, &q, c.labels().to_vec());
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmon::{enumerate_homs, is_isomorphic};

    #[test]
    fn closure_examples() {
        let c4 = FiniteMonoid::cyclic_group(4);
        let c = congruence_closure(&c4, [(0, 2)]);
        assert_eq!(c.classes(), &[vec![0, 2], vec![1, 3]]);
        let (q, proj) = quotient_by(&c4, &c).unwrap();
        assert_eq!(q, FiniteMonoid::cyclic_group(2));
        assert!(proj.is_surjective());

        let m2 = FiniteMonoid::two_element_semilattice();
        assert_eq!(congruence_closure(&m2, [(0, 1)]).num_classes(), 1);
        assert_eq!(congruence_closure(&c4, []), Congruence::discrete(&c4));
    }

    #[test]
    fn trivial_quotients() {
        let v4 = FiniteMonoid::klein_four();
        let (q, _) = quotient_by(&v4, &Congruence::discrete(&v4)).unwrap();
        assert_eq!(q, v4);
        let m2 = FiniteMonoid::two_element_semilattice();
        let (q, _) = quotient_by(&m2, &Congruence::full(&m2)).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn quotient_has_the_factorization_property() {
        let c4 = FiniteMonoid::cyclic_group(4);
        let c = congruence_closure(&c4, [(0, 2)]);
        let (q, proj) = quotient_by(&c4, &c).unwrap();
        for target in [
            FiniteMonoid::cyclic_group(2),
            FiniteMonoid::cyclic_group(4),
            FiniteMonoid::klein_four(),
        ] {
            for h in enumerate_homs(&c4, &target, false) {
                let respects = c.pairs().iter().all(|&(a, b)| h.apply(a) == h.apply(b));
                let factorizations = enumerate_homs(&q, &target, false)
                    .into_iter()
                    .filter(|g| proj.then(g).unwrap() == h)
                    .count();
                assert_eq!(factorizations, usize::from(respects), "{h:?}");
            }
        }
    }

    #[test]
    fn kernel_congruence_of_projection() {
        let s3 = FiniteMonoid::symmetric_group3();
        let sign = Hom::new(&s3, &FiniteMonoid::cyclic_group(2), vec![0, 0, 0, 1, 1, 1]).unwrap();
        let ker = Congruence::kernel_of(&sign);
        assert_eq!(ker.num_classes(), 2);
        assert_eq!(congruence_closure(&s3, [(0, 1)]), ker);
        let (q, _) = quotient_by(&s3, &ker).unwrap();
        assert!(is_isomorphic(&q, &FiniteMonoid::cyclic_group(2)).is_some());
    }

    #[test]
    fn from_labels_rejects_incompatible_partitions() {
        let c4 = FiniteMonoid::cyclic_group(4);
        assert!(Congruence::from_labels(&c4, &[0, 0, 1, 1]).is_err());
        assert!(Congruence::from_labels(&c4, &[5, 7, 5, 7]).is_ok());
    }
}
