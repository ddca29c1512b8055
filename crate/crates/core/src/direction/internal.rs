use super::DirectionError;
use crate::action::SchreierPoint;
use crate::finmon::{kernel_pair, Elem, Hom, Relation};

/// A commutative monoid `mu: Eq(f) -> B` with unit `s` in the fibres of
/// `f: B -> M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalMonoid {
    f: Hom,
    s: Hom,
    eq: Relation,
    mu: Hom,
}

impl InternalMonoid {
    /// Checks that `mu` stays in fibres and is associative, commutative and
    /// unital with unit `s f`.
    pub fn new(f: Hom, s: Hom, mu: Hom) -> Result<Self, DirectionError> {
        let eq = kernel_pair(&f);
        if mu.dom() != eq.monoid()
            || mu.cod() != f.dom()
            || s.dom() != f.cod()
            || s.cod() != f.dom()
        {
            return Err(DirectionError::Mismatch);
        }
        let im = InternalMonoid { f, s, eq, mu };
        im.check_laws()?;
        Ok(im)
    }

    fn check_laws(&self) -> Result<(), DirectionError> {
        let b = self.f.dom();
        if self
            .f
            .cod()
            .elements()
            .any(|m| self.f.apply(self.s.apply(m)) != m)
        {
            return Err(DirectionError::NotInternalMonoid("section"));
        }
        if self
            .eq
            .pairs()
            .any(|(x, y)| self.f.apply(self.mu(x, y)) != self.f.apply(x))
        {
            return Err(DirectionError::NotInternalMonoid("fibrewise"));
        }
        for x in b.elements() {
            let e = self.s.apply(self.f.apply(x));
            if self.mu(e, x) != x || self.mu(x, e) != x {
                return Err(DirectionError::NotInternalMonoid("unit"));
            }
        }
        if self.eq.pairs().any(|(x, y)| self.mu(x, y) != self.mu(y, x)) {
            return Err(DirectionError::NotInternalMonoid("commutativity"));
        }
        for (x, y) in self.eq.pairs() {
            for z in self.f.preimage(self.f.apply(x)) {
                if self.mu(x, self.mu(y, z)) != self.mu(self.mu(x, y), z) {
                    return Err(DirectionError::NotInternalMonoid("associativity"));
                }
            }
        }
        Ok(())
    }

    pub fn f(&self) -> &Hom {
        &self.f
    }

    pub fn s(&self) -> &Hom {
        &self.s
    }

    pub fn kernel_pair(&self) -> &Relation {
        &self.eq
    }

    pub fn hom(&self) -> &Hom {
        &self.mu
    }

    /// `mu(x, y)` for `x` and `y` in one fibre.
    pub fn mu(&self, x: Elem, y: Elem) -> Elem {
        self.mu
            .apply(self.eq.index_of(x, y).expect("x and y lie in one fibre"))
    }
}

/// `mu(x, y) = k(q(x)) + y` on `Eq(f)`.
pub fn point_to_internal_monoid(p: &SchreierPoint) -> Result<InternalMonoid, DirectionError> {
    let eq = kernel_pair(p.f());
    let b = p.carrier();
    let map = eq
        .pairs()
        .map(|(x, y)| b.op(p.k().apply(p.q(x)), y))
        .collect();
    let mu = Hom::new(eq.monoid(), b, map)?;
    InternalMonoid::new(p.f().clone(), p.s().clone(), mu)
}

/// The point `(k, f, s)` of an internal monoid on `B`, checking that its
/// multiplication is the one forced by the point.
pub fn internal_monoid_to_point(
    k: &Hom,
    im: &InternalMonoid,
) -> Result<SchreierPoint, DirectionError> {
    let p = SchreierPoint::new(k.clone(), im.f.clone(), im.s.clone())?;
    let b = p.carrier();
    for a in k.dom().elements() {
        for c in k.dom().elements() {
            let (x, y) = (k.apply(a), k.apply(c));
            if im.mu(x, y) != b.op(x, y) {
                return Err(DirectionError::OmegaNotForced { x, y });
            }
        }
    }
    for (x, y) in im.eq.pairs() {
        if im.mu(x, y) != b.op(k.apply(p.q(x)), y) {
            return Err(DirectionError::OmegaNotForced { x, y });
        }
    }
    Ok(p)
}
