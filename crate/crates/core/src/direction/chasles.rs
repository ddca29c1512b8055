use super::{DirectionError, RelationRE};
use crate::action::{connector, s_reflexive_check, Connector, SchreierPoint};
use crate::finmon::{Elem, Hom, Relation, TupleMonoid};

/// The connector of `R_E` with itself, `p(x, k(a) + x, k(b) + k(a) + x) = k(b) + x`.
pub fn self_connector(re: &RelationRE) -> Result<Connector, DirectionError> {
    let r = re.relation();
    let c = connector(r, &s_reflexive_check(r)?)?;
    let e = re.extension();
    for t in c.composite().tuples() {
        let w = r.index_of(t[1], t[2]).expect("(y, z) in R_E");
        if c.apply(t[0], t[1], t[2]) != Some(e.add(e.k().apply(re.witness(w)), t[0])) {
            return Err(DirectionError::IdentityFails("p(x, y, z) = k(b) + x"));
        }
    }
    Ok(c)
}

/// `P_E = {(x, k(a) + x, k(b) + k(a) + x)}` with its legs onto `R_E`, the
/// Chasles relation `<pi1, p2>` and the Chasles point `(kappa1, pi1, sigma0)`.
#[derive(Clone, Debug)]
pub struct Chasles {
    re: RelationRE,
    connector: Connector,
    pi1: Hom,
    p2: Hom,
    p1: Hom,
    pi2: Hom,
    sigma0: Hom,
    s0: Hom,
    relation: Relation,
    point: SchreierPoint,
}

impl Chasles {
    /// Needs a cancellative kernel so that `R_E` carries its point.
    pub fn new(re: &RelationRE) -> Result<Self, DirectionError> {
        if re.point().is_none() {
            return Err(DirectionError::NotCancellative);
        }
        let connector = self_connector(re)?;
        let pe = connector.composite().clone();
        let r = re.relation();
        let rm = r.monoid();
        let leg = |f: &dyn Fn(&[Elem]) -> (Elem, Elem)| -> Result<Hom, DirectionError> {
            let map = pe
                .tuples()
                .iter()
                .map(|t| {
                    let (a, b) = f(t);
                    r.index_of(a, b)
                        .ok_or(DirectionError::NotWellDefined("leg of P_E"))
                })
                .collect::<Result<_, _>>()?;
            Ok(Hom::new(pe.monoid(), rm, map)?)
        };
        let p = |t: &[Elem]| connector.apply(t[0], t[1], t[2]).expect("t in P_E");
        let pi1 = leg(&|t| (t[0], p(t)))?;
        let p2 = leg(&|t| (t[1], t[2]))?;
        let p1 = leg(&|t| (t[0], t[1]))?;
        let pi2 = leg(&|t| (p(t), t[2]))?;
        let section = |f: &dyn Fn(Elem, Elem) -> [Elem; 3]| -> Result<Hom, DirectionError> {
            let map = r
                .pairs()
                .map(|(x, w)| {
                    pe.index_of(&f(x, w))
                        .ok_or(DirectionError::NotWellDefined("section into P_E"))
                })
                .collect::<Result<_, _>>()?;
            Ok(Hom::new(rm, pe.monoid(), map)?)
        };
        let sigma0 = section(&|x, w| [x, x, w])?;
        let s0 = section(&|x, w| [x, w, w])?;

        let e = re.extension();
        let kk = e.kernel();
        let kappa1 = kk
            .elements()
            .map(|a| {
                let ka = e.k().apply(a);
                pe.index_of(&[0, ka, ka]).expect("(0, k(a), k(a)) in P_E")
            })
            .collect();
        let kappa1 = Hom::new(kk, pe.monoid(), kappa1)?;
        let point = SchreierPoint::new(kappa1, pi1.clone(), sigma0.clone())?;
        for (w, t) in pe.tuples().iter().enumerate() {
            let a = re.witness(r.index_of(t[0], t[1]).expect("(x, y) in R_E"));
            if point.q(w) != a {
                return Err(DirectionError::IdentityFails("q1(x, k(a) + x, z) = a"));
            }
        }
        let relation =
            Relation::from_pairs(rm, (0..pe.len()).map(|w| (pi1.apply(w), p2.apply(w))))?;
        Ok(Chasles {
            re: re.clone(),
            connector,
            pi1,
            p2,
            p1,
            pi2,
            sigma0,
            s0,
            relation,
            point,
        })
    }

    pub fn re(&self) -> &RelationRE {
        &self.re
    }

    pub fn pe(&self) -> &TupleMonoid {
        self.connector.composite()
    }

    pub fn connector(&self) -> &Connector {
        &self.connector
    }

    pub fn pi1(&self) -> &Hom {
        &self.pi1
    }

    pub fn p2(&self) -> &Hom {
        &self.p2
    }

    pub fn p1(&self) -> &Hom {
        &self.p1
    }

    pub fn pi2(&self) -> &Hom {
        &self.pi2
    }

    pub fn sigma0(&self) -> &Hom {
        &self.sigma0
    }

    pub fn s0(&self) -> &Hom {
        &self.s0
    }

    /// The relation `<pi1, p2>` on `R_E`.
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn point(&self) -> &SchreierPoint {
        &self.point
    }

    /// The sections split their legs and the double diagram commutes.
    pub fn diagram_commutes(&self) -> bool {
        let r = self.re.relation();
        let (r1, r2) = (r.r1(), r.r2());
        let id = |h: &Hom, s: &Hom| (0..r.len()).all(|w| h.apply(s.apply(w)) == w);
        let eq = |a: &Hom, ra: &Hom, b: &Hom, rb: &Hom| {
            (0..self.pe().len()).all(|w| ra.apply(a.apply(w)) == rb.apply(b.apply(w)))
        };
        id(&self.pi1, &self.sigma0)
            && id(&self.p2, &self.sigma0)
            && id(&self.p1, &self.s0)
            && id(&self.pi2, &self.s0)
            && eq(&self.pi1, &r1, &self.p1, &r1)
            && eq(&self.pi1, &r2, &self.pi2, &r1)
            && eq(&self.p1, &r2, &self.p2, &r1)
            && eq(&self.p2, &r2, &self.pi2, &r2)
    }

    /// `(x, k(a) + x) Ch (y, k(b) + y)` exactly when `x R_E y` and `a = b`.
    pub fn membership_check(&self) -> bool {
        let r = self.re.relation();
        (0..r.len()).all(|v| {
            (0..r.len()).all(|w| {
                let expected = r.contains(r.pair(v).0, r.pair(w).0)
                    && self.re.witness(v) == self.re.witness(w);
                self.relation.contains(v, w) == expected
            })
        })
    }

    /// `Ch` is symmetric exactly when the kernel is a group.
    pub fn symmetry_check(&self) -> bool {
        self.relation.is_symmetric() == self.re.extension().kernel().is_group()
    }
}
