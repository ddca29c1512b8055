use super::{ActionError, SchreierPoint};
use crate::finmon::{submonoid, Elem, Hom, HomSearch, Relation, TupleMonoid};

/// A reflexive relation whose first projection and diagonal form a
/// Schreier point, with kernel `{(0, y)}`.
#[derive(Clone, Debug)]
pub struct SReflexive {
    relation: Relation,
    point: SchreierPoint,
    kernel_targets: Vec<Elem>,
}

impl SReflexive {
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn point(&self) -> &SchreierPoint {
        &self.point
    }

    /// The `y` of each kernel element `(0, y)`, indexed by kernel element.
    pub fn kernel_targets(&self) -> &[Elem] {
        &self.kernel_targets
    }

    /// `w` with `q'(x, y) = (0, w)`; the pair must lie in the relation.
    pub fn retraction_target(&self, x: Elem, y: Elem) -> Elem {
        let e = self.relation.index_of(x, y).expect("pair in relation");
        self.kernel_targets[self.point.q(e)]
    }

    pub fn is_transitive(&self) -> bool {
        self.relation.is_transitive()
    }

    pub fn is_symmetric(&self) -> bool {
        self.relation.is_symmetric()
    }

    pub fn kernel_is_group(&self) -> bool {
        self.point.kernel().is_group()
    }
}

/// The point `K1 -> R <-> X` built from `r1` and the diagonal, if it is a
/// Schreier point.
pub fn s_reflexive_check(r: &Relation) -> Result<SReflexive, ActionError> {
    let delta = r.delta().ok_or(ActionError::NotReflexive)?;
    let zeros: Vec<Elem> = (0..r.len()).filter(|&e| r.pair(e).0 == 0).collect();
    let (k1, incl) = submonoid(r.monoid(), &zeros)?;
    let point = SchreierPoint::new(incl, r.r1(), delta)
        .map_err(|e| ActionError::NotSReflexive(Box::new(e)))?;
    debug_assert_eq!(k1.order(), zeros.len());
    let kernel_targets = zeros.iter().map(|&e| r.pair(e).1).collect();
    Ok(SReflexive {
        relation: r.clone(),
        point,
        kernel_targets,
    })
}

/// A connector `p` on the composite `{(x, y, z) : x R y, y R' z}`.
#[derive(Clone, Debug)]
pub struct Connector {
    composite: TupleMonoid,
    p: Hom,
}

impl Connector {
    pub fn composite(&self) -> &TupleMonoid {
        &self.composite
    }

    pub fn hom(&self) -> &Hom {
        &self.p
    }

    pub fn apply(&self, x: Elem, y: Elem, z: Elem) -> Option<Elem> {
        self.composite.index_of(&[x, y, z]).map(|e| self.p.apply(e))
    }

    /// Number of homomorphisms on the composite satisfying both connector
    /// identities.
    pub fn count_solutions(&self) -> usize {
        let x = self.p.cod();
        let mut search = HomSearch::new(self.composite.monoid(), x);
        for (e, t) in self.composite.tuples().iter().enumerate() {
            if t[0] == t[1] {
                search = search.fix(e, t[2]);
            }
            if t[1] == t[2] {
                search = search.fix(e, t[0]);
            }
        }
        search.count()
    }
}

/// Tests whether `r` and `r2` centralize each other and builds the
/// connector `p(x, y, z) = w + x` where `q'(y, z) = (0, w)`.
pub fn connector(r: &Relation, r2: &SReflexive) -> Result<Connector, ActionError> {
    let x = r.base();
    let rel2 = r2.relation();
    if rel2.base() != x {
        return Err(ActionError::Mismatch);
    }
    if !r.is_reflexive() {
        return Err(ActionError::NotReflexive);
    }
    for &t in r2.kernel_targets() {
        for (a, b) in r.pairs() {
            let w = r2.retraction_target(b, x.op(b, t));
            if x.op(w, a) != x.op(a, t) {
                return Err(ActionError::NotCentral { t, x: a, y: b });
            }
        }
    }
    let mut tuples = Vec::new();
    for (a, b) in r.pairs() {
        for c in x.elements().filter(|&c| rel2.contains(b, c)) {
            tuples.push(vec![a, b, c]);
        }
    }
    let composite = TupleMonoid::new(vec![x.clone(), x.clone(), x.clone()], tuples)?;
    let map = composite
        .tuples()
        .iter()
        .map(|t| x.op(r2.retraction_target(t[1], t[2]), t[0]))
        .collect();
    let p = Hom::new(composite.monoid(), x, map)?;
    for (e, t) in composite.tuples().iter().enumerate() {
        if (t[0] == t[1] && p.apply(e) != t[2]) || (t[1] == t[2] && p.apply(e) != t[0]) {
            return Err(ActionError::NotCentral {
                t: 0,
                x: t[0],
                y: t[1],
            });
        }
    }
    Ok(Connector { composite, p })
}

/// The number of homomorphisms on `{(x, y, z) : x R y, y R' z}` satisfying
/// `p(x, x, z) = z` and `p(x, y, y) = x`, found by exhaustive search.
pub fn count_connectors(r: &Relation, r2: &Relation) -> Result<usize, ActionError> {
    let x = r.base();
    if r2.base() != x {
        return Err(ActionError::Mismatch);
    }
    let mut tuples = Vec::new();
    for (a, b) in r.pairs() {
        for c in x.elements().filter(|&c| r2.contains(b, c)) {
            tuples.push(vec![a, b, c]);
        }
    }
    let composite = TupleMonoid::new(vec![x.clone(), x.clone(), x.clone()], tuples)?;
    let mut search = HomSearch::new(composite.monoid(), x);
    for (e, t) in composite.tuples().iter().enumerate() {
        if t[0] == t[1] {
            search = search.fix(e, t[2]);
        }
        if t[1] == t[2] {
            search = search.fix(e, t[0]);
        }
    }
    Ok(search.count())
}
