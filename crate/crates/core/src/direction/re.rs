use super::DirectionError;
use crate::action::SchreierPoint;
use crate::extension::{ExtMorphism, Extension};
use crate::finmon::{congruence_closure, kernel_pair, product, Congruence, Elem, Hom, Relation};

/// `R_E = {(x, k(a) + x)}` together with the witnesses `a` of each pair.
#[derive(Clone, Debug)]
pub struct RelationRE {
    ext: Extension,
    relation: Relation,
    witnesses: Vec<Vec<Elem>>,
    point: Option<SchreierPoint>,
}

/// Builds `R_E` for a Schreier extension with commutative kernel. The point
/// `(k1, r1, delta)` is attached when the kernel is cancellative.
pub fn build_re(e: &Extension) -> Result<RelationRE, DirectionError> {
    if !e.kernel().is_commutative() {
        return Err(DirectionError::NotCommutative);
    }
    e.schreier()?;
    let (x, k, kk) = (e.carrier(), e.k(), e.kernel());
    let pairs = x
        .elements()
        .flat_map(|y| kk.elements().map(move |a| (y, x.op(k.apply(a), y))));
    let relation = Relation::from_pairs(x, pairs)?;
    let witnesses = relation
        .pairs()
        .map(|(y, z)| {
            kk.elements()
                .filter(|&a| x.op(k.apply(a), y) == z)
                .collect()
        })
        .collect();
    let mut re = RelationRE {
        ext: e.clone(),
        relation,
        witnesses,
        point: None,
    };
    if e.is_cc() {
        let k1 = kk.elements().map(|a| re.index(0, a)).collect();
        let k1 = Hom::new(kk, re.relation.monoid(), k1)?;
        let delta = re.relation.delta().expect("R_E is reflexive");
        let point = SchreierPoint::new(k1, re.relation.r1(), delta)?;
        if (0..re.len()).any(|w| point.q(w) != re.witnesses[w][0]) {
            return Err(DirectionError::IdentityFails("q1(x, k(a) + x) = a"));
        }
        re.point = Some(point);
    }
    Ok(re)
}

impl RelationRE {
    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn len(&self) -> usize {
        self.relation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relation.is_empty()
    }

    /// The point `K -> R_E <-> X`, present for cancellative kernels.
    pub fn point(&self) -> Option<&SchreierPoint> {
        self.point.as_ref()
    }

    /// Index of `(x, k(a) + x)`.
    pub fn index(&self, x: Elem, a: Elem) -> Elem {
        let e = &self.ext;
        self.relation
            .index_of(x, e.add(e.k().apply(a), x))
            .expect("(x, k(a) + x) lies in R_E")
    }

    /// All `a` with `k(a) + x = y` for the pair at index `w`.
    pub fn witnesses(&self, w: Elem) -> &[Elem] {
        &self.witnesses[w]
    }

    /// The least witness of the pair at index `w`.
    pub fn witness(&self, w: Elem) -> Elem {
        self.witnesses[w][0]
    }

    /// The inclusion `j: R_E -> Eq(f)`.
    pub fn inclusion(&self) -> (Relation, Hom) {
        let eq = kernel_pair(self.ext.f());
        let map = self
            .relation
            .pairs()
            .map(|(x, y)| eq.index_of(x, y).expect("R_E lies in Eq(f)"))
            .collect();
        let j =
            Hom::new(self.relation.monoid(), eq.monoid(), map).expect("inclusion of submonoids");
        (eq, j)
    }

    /// Whether the congruence generated by `R_E` is the kernel of `f`.
    pub fn coequalizer_check(&self) -> bool {
        let c = congruence_closure(self.relation.base(), self.relation.pairs());
        let ker = Congruence::kernel_of(self.ext.f());
        c.is_finer_than(&ker) && ker.is_finer_than(&c)
    }

    /// Whether every `(x, y)` in `Eq(f)` equals `k2(q(x)) + j(u_m, kq(y) + u_m)`.
    pub fn joint_epi_check(&self) -> bool {
        let e = &self.ext;
        let (eq, _) = self.inclusion();
        let ok = eq.pairs().all(|(x, y)| {
            let u = e.u(e.f().apply(x));
            let v = e.add(e.k().apply(e.q(y)), u);
            self.relation.contains(u, v) && (e.add(e.k().apply(e.q(x)), u), v) == (x, y)
        });
        ok
    }

    /// Whether symmetry of `R_E`, `j` being onto, `k2` factoring through
    /// `j` and `K` being a group all agree, and `(k(a), 0)` lies in `R_E`
    /// exactly for units `a` while `(0, k(a))` always does.
    pub fn symmetry_check(&self) -> bool {
        let e = &self.ext;
        let (kk, k) = (e.kernel(), e.k());
        let group = kk.is_group();
        let (eq, _) = self.inclusion();
        let k2_factors = kk.elements().all(|a| self.relation.contains(k.apply(a), 0));
        self.relation.is_symmetric() == group
            && (self.len() == eq.len()) == group
            && k2_factors == group
            && kk
                .elements()
                .all(|a| self.relation.contains(k.apply(a), 0) == kk.is_unit(a))
            && kk.elements().all(|a| self.relation.contains(0, k.apply(a)))
    }

    /// Whether every pair has exactly one witness.
    pub fn unique_witness_check(&self) -> bool {
        self.witnesses.iter().all(|w| w.len() == 1)
    }

    /// The extension `K x K -> R_E -> M` with the two morphisms
    /// `(p1, r1)` and `(+, r2)` onto `E`.
    pub fn relation_on_extension(&self) -> Result<RelationOnExtension, DirectionError> {
        let e = &self.ext;
        let (kk, k, x) = (e.kernel(), e.k(), e.carrier());
        let kxk = product(kk, kk);
        let rm = self.relation.monoid();
        let khat = kxk
            .tuples()
            .iter()
            .map(|t| {
                self.relation
                    .index_of(k.apply(t[0]), x.op(k.apply(t[1]), k.apply(t[0])))
                    .expect("pair in R_E")
            })
            .collect();
        let khat = Hom::new(kxk.monoid(), rm, khat)?;
        let fhat = self.relation.r1().then(e.f())?;
        let upper = Extension::new(khat, fhat)?;
        for m in e.base().elements() {
            let u = e.u(m);
            let w = self.relation.index_of(u, u).expect("R_E is reflexive");
            if !upper.is_representative(w) {
                return Err(DirectionError::IdentityFails(
                    "(u_m, u_m) is a representative",
                ));
            }
        }
        let sum = Hom::new(
            kxk.monoid(),
            kk,
            kxk.tuples().iter().map(|t| kk.op(t[0], t[1])).collect(),
        )?;
        let first = ExtMorphism::new(&upper, e, kxk.projection(0), self.relation.r1())?;
        let second = ExtMorphism::new(&upper, e, sum, self.relation.r2())?;
        Ok(RelationOnExtension {
            upper,
            first,
            second,
        })
    }
}

/// `R_E` as an extension of `M` by `K x K`.
#[derive(Clone, Debug)]
pub struct RelationOnExtension {
    pub upper: Extension,
    pub first: ExtMorphism,
    pub second: ExtMorphism,
}
