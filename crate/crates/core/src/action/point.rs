use super::{ActionError, Semimodule};
use crate::extension::Extension;
use crate::finmon::{Elem, FiniteMonoid, Hom};

/// A split extension `k: K -> B`, `f: B -> M`, `s: M -> B` with its unique
/// retraction `q`, `b = k(q(b)) + s(f(b))`.
#[derive(Clone, PartialEq, Eq)]
pub struct SchreierPoint {
    k: Hom,
    f: Hom,
    s: Hom,
    q: Vec<Elem>,
}

impl SchreierPoint {
    pub fn new(k: Hom, f: Hom, s: Hom) -> Result<Self, ActionError> {
        if s.dom() != f.cod() || s.cod() != f.dom() {
            return Err(ActionError::Mismatch);
        }
        if f.cod().elements().any(|m| f.apply(s.apply(m)) != m) {
            return Err(ActionError::NotSplit);
        }
        Extension::new(k.clone(), f.clone())?;
        let b = f.dom();
        let mut q = vec![usize::MAX; b.order()];
        for x in b.elements() {
            let sfx = s.apply(f.apply(x));
            let mut found = None;
            for a in k.dom().elements() {
                if b.op(k.apply(a), sfx) == x {
                    if found.is_some() {
                        return Err(ActionError::RetractionNotUnique { b: x });
                    }
                    found = Some(a);
                }
            }
            q[x] = found.ok_or(ActionError::NoRetraction { b: x })?;
        }
        Ok(SchreierPoint { k, f, s, q })
    }

    pub fn kernel(&self) -> &FiniteMonoid {
        self.k.dom()
    }

    pub fn carrier(&self) -> &FiniteMonoid {
        self.f.dom()
    }

    pub fn base(&self) -> &FiniteMonoid {
        self.f.cod()
    }

    pub fn k(&self) -> &Hom {
        &self.k
    }

    pub fn f(&self) -> &Hom {
        &self.f
    }

    pub fn s(&self) -> &Hom {
        &self.s
    }

    #[inline]
    pub fn q(&self, b: Elem) -> Elem {
        self.q[b]
    }

    pub fn q_table(&self) -> &[Elem] {
        &self.q
    }

    /// The underlying extension `(k, f)`.
    pub fn extension(&self) -> Extension {
        Extension::new_unchecked(self.k.clone(), self.f.clone())
    }
}

impl std::fmt::Debug for SchreierPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SchreierPoint({} -> {} <-> {}; s={:?}, q={:?})",
            self.kernel().order(),
            self.carrier().order(),
            self.base().order(),
            self.s.map(),
            self.q
        )
    }
}

/// The action `m . a = q(s(m) + k(a))`.
pub fn point_action(p: &SchreierPoint) -> Result<Semimodule, ActionError> {
    let b = p.carrier();
    let act = p
        .base()
        .elements()
        .flat_map(|m| p.kernel().elements().map(move |a| (m, a)))
        .map(|(m, a)| p.q(b.op(p.s.apply(m), p.k.apply(a))))
        .collect();
    Semimodule::new(p.base(), p.kernel(), act)
}

/// The point on `K x M` with `(a, m) + (b, n) = (a + m.b, mn)`; the pair
/// `(a, m)` is encoded as `a * |M| + m`.
pub fn semidirect(s: &Semimodule) -> Result<SchreierPoint, ActionError> {
    let (m, k) = (s.monoid(), s.module());
    let (nm, nk) = (m.order(), k.order());
    let n = nm * nk;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, mx) = (x / nm, x % nm);
        for y in 0..n {
            let (b, my) = (y / nm, y % nm);
            table.push(k.op(a, s.act(mx, b)) * nm + m.op(mx, my));
        }
    }
    let carrier = FiniteMonoid::from_flat(n, table)?;
    let kk = Hom::new_unchecked(k, &carrier, k.elements().map(|a| a * nm).collect());
    let f = Hom::new_unchecked(&carrier, m, (0..n).map(|x| x % nm).collect());
    let sec = Hom::new_unchecked(m, &carrier, m.elements().collect());
    SchreierPoint::new(kk, f, sec)
}

/// A morphism of points over the same `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMorphism {
    src: SchreierPoint,
    dst: SchreierPoint,
    alpha1: Hom,
    alpha: Hom,
}

impl PointMorphism {
    pub fn new(
        src: &SchreierPoint,
        dst: &SchreierPoint,
        alpha1: Hom,
        alpha: Hom,
    ) -> Result<Self, ActionError> {
        if src.base() != dst.base()
            || alpha1.dom() != src.kernel()
            || alpha1.cod() != dst.kernel()
            || alpha.dom() != src.carrier()
            || alpha.cod() != dst.carrier()
        {
            return Err(ActionError::Mismatch);
        }
        if src
            .kernel()
            .elements()
            .any(|a| alpha.apply(src.k.apply(a)) != dst.k.apply(alpha1.apply(a)))
        {
            return Err(ActionError::PointMorphismFails("kernel square"));
        }
        if src
            .carrier()
            .elements()
            .any(|x| dst.f.apply(alpha.apply(x)) != src.f.apply(x))
        {
            return Err(ActionError::PointMorphismFails("projection square"));
        }
        if src
            .base()
            .elements()
            .any(|m| alpha.apply(src.s.apply(m)) != dst.s.apply(m))
        {
            return Err(ActionError::PointMorphismFails("section square"));
        }
        Ok(PointMorphism {
            src: src.clone(),
            dst: dst.clone(),
            alpha1,
            alpha,
        })
    }

    pub fn src(&self) -> &SchreierPoint {
        &self.src
    }

    pub fn dst(&self) -> &SchreierPoint {
        &self.dst
    }

    pub fn alpha1(&self) -> &Hom {
        &self.alpha1
    }

    pub fn alpha(&self) -> &Hom {
        &self.alpha
    }

    pub fn is_iso(&self) -> bool {
        self.alpha1.is_bijective() && self.alpha.is_bijective()
    }
}

/// The isomorphism `phi(a, m) = k(a) + s(m)` from the semidirect product of
/// the point's own action onto the point.
pub fn point_iso_semidirect(p: &SchreierPoint) -> Result<PointMorphism, ActionError> {
    let d = semidirect(&point_action(p)?)?;
    let nm = p.base().order();
    let b = p.carrier();
    let phi = (0..d.carrier().order())
        .map(|x| b.op(p.k.apply(x / nm), p.s.apply(x % nm)))
        .collect();
    let phi = Hom::new(d.carrier(), b, phi)?;
    if !phi.is_bijective() {
        return Err(ActionError::PointMorphismFails("phi is not bijective"));
    }
    PointMorphism::new(&d, p, Hom::identity(p.kernel()), phi)
}
