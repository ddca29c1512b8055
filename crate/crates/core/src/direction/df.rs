use super::{
    build_re, point_to_internal_monoid, Chasles, DirectionError, InternalMonoid, RelationRE,
};
use crate::action::{point_action, semidirect, to_semimodule, PointMorphism, SchreierPoint};
use crate::extension::Extension;
use crate::finmon::{congruence_closure, quotient_by, Congruence, Elem, FiniteMonoid, Hom};

/// `R_E`, the Chasles data, the quotient `gamma: R_E -> d(E)` by the
/// Chasles relation and the point `(kappa, f, s)` on `d(E)`.
#[derive(Clone, Debug)]
pub struct DirectionBundle {
    re: RelationRE,
    chasles: Chasles,
    congruence: Congruence,
    gamma: Hom,
    point: SchreierPoint,
}

/// The direction as the coequalizer of `pi1` and `p2`.
pub fn df_by_coequalizer(e: &Extension) -> Result<DirectionBundle, DirectionError> {
    let re = build_re(e)?;
    let chasles = Chasles::new(&re)?;
    let rm = re.relation().monoid();
    let congruence = congruence_closure(rm, chasles.relation().pairs());
    let (df, gamma) = quotient_by(rm, &congruence)?;

    let x = e.carrier();
    let kappa = e
        .kernel()
        .elements()
        .map(|a| gamma.apply(re.index(0, a)))
        .collect();
    let kappa = Hom::new(e.kernel(), &df, kappa)?;
    let mut fbar = vec![usize::MAX; df.order()];
    for (w, (y, _)) in re.relation().pairs().enumerate() {
        let c = gamma.apply(w);
        let m = e.f().apply(y);
        if fbar[c] != usize::MAX && fbar[c] != m {
            return Err(DirectionError::NotWellDefined("f on d(E)"));
        }
        fbar[c] = m;
    }
    let fbar = Hom::new(&df, e.base(), fbar)?;
    let mut sbar = vec![usize::MAX; e.base().order()];
    for y in x.elements() {
        let m = e.f().apply(y);
        let c = gamma.apply(re.index(y, 0));
        if sbar[m] != usize::MAX && sbar[m] != c {
            return Err(DirectionError::NotWellDefined("s on d(E)"));
        }
        sbar[m] = c;
    }
    let sbar = Hom::new(e.base(), &df, sbar)?;
    let point = SchreierPoint::new(kappa, fbar, sbar)?;
    for w in 0..re.len() {
        if point.q(gamma.apply(w)) != re.witness(w) {
            return Err(DirectionError::IdentityFails("q(gamma(x, k(a) + x)) = a"));
        }
    }
    Ok(DirectionBundle {
        re,
        chasles,
        congruence,
        gamma,
        point,
    })
}

/// The direction as the semidirect product of the induced action.
pub fn df_by_semidirect(e: &Extension) -> Result<SchreierPoint, DirectionError> {
    Ok(semidirect(&to_semimodule(e)?)?)
}

impl DirectionBundle {
    pub fn extension(&self) -> &Extension {
        self.re.extension()
    }

    pub fn re(&self) -> &RelationRE {
        &self.re
    }

    pub fn chasles(&self) -> &Chasles {
        &self.chasles
    }

    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    pub fn gamma(&self) -> &Hom {
        &self.gamma
    }

    pub fn df(&self) -> &FiniteMonoid {
        self.point.carrier()
    }

    pub fn point(&self) -> &SchreierPoint {
        &self.point
    }

    /// `gamma(x, k(a) + x)`.
    pub fn gamma_at(&self, x: Elem, a: Elem) -> Elem {
        self.gamma.apply(self.re.index(x, a))
    }

    /// `gamma(v) = gamma(w)` exactly when the witnesses agree and the first
    /// components lie in one fibre.
    pub fn kernel_pair_is_tau(&self) -> bool {
        let (r, f) = (self.re.relation(), self.extension().f());
        (0..r.len()).all(|v| {
            (0..r.len()).all(|w| {
                let tau = self.re.witness(v) == self.re.witness(w)
                    && f.apply(r.pair(v).0) == f.apply(r.pair(w).0);
                (self.gamma.apply(v) == self.gamma.apply(w)) == tau
            })
        })
    }

    /// The three consequences of the kernel pair description of `gamma`.
    pub fn gamma_consequences(&self) -> [bool; 3] {
        let e = self.extension();
        let (x, kk, f) = (e.carrier(), e.kernel(), e.f());
        let same_fibre = |y: Elem, z: Elem| f.apply(y) == f.apply(z);
        let mut out = [true; 3];
        for y in x.elements() {
            for z in x.elements() {
                for a in kk.elements() {
                    for b in kk.elements() {
                        let lhs = self.gamma_at(y, a) == self.gamma_at(z, b);
                        out[0] &= lhs == (a == b && same_fibre(y, z));
                    }
                    if same_fibre(y, z) {
                        out[1] &= self.gamma_at(y, a) == self.gamma_at(z, a);
                    }
                }
            }
            for a in kk.elements() {
                for b in kk.elements() {
                    out[2] &= (self.gamma_at(y, a) == self.gamma_at(y, b)) == (a == b);
                }
            }
        }
        out
    }

    /// The action of the point on `d(E)` equals the induced action.
    pub fn action_coincides(&self) -> Result<bool, DirectionError> {
        Ok(point_action(&self.point)? == to_semimodule(self.extension())?)
    }

    /// The isomorphism `phi(a, m) = kappa(a) + s(m)` from the semidirect
    /// product with `alpha1 = id`, checked against `gamma(x, k(a) + x)`.
    pub fn iso_from_semidirect(&self) -> Result<PointMorphism, DirectionError> {
        let e = self.extension();
        let d = df_by_semidirect(e)?;
        let nm = e.base().order();
        let df = self.df();
        let phi: Vec<Elem> = (0..d.carrier().order())
            .map(|c| df.op(self.point.k().apply(c / nm), self.point.s().apply(c % nm)))
            .collect();
        for y in e.carrier().elements() {
            for a in e.kernel().elements() {
                if phi[a * nm + e.f().apply(y)] != self.gamma_at(y, a) {
                    return Err(DirectionError::IdentityFails(
                        "kappa(a) + s(m) = gamma(x, k(a) + x)",
                    ));
                }
            }
        }
        let phi = Hom::new(d.carrier(), df, phi)?;
        if !phi.is_bijective() {
            return Err(DirectionError::IdentityFails("phi is bijective"));
        }
        Ok(PointMorphism::new(
            &d,
            &self.point,
            Hom::identity(e.kernel()),
            phi,
        )?)
    }

    /// The internal monoid on `d(E)` with
    /// `mu(gamma(x, k(a) + x), gamma(y, k(b) + y)) = gamma(x, k(a) + k(b) + x)`.
    pub fn internal_monoid(&self) -> Result<InternalMonoid, DirectionError> {
        let im = point_to_internal_monoid(&self.point)?;
        let e = self.extension();
        let (x, kk) = (e.carrier(), e.kernel());
        for y in x.elements() {
            for z in e.fibre(e.f().apply(y)) {
                for a in kk.elements() {
                    for b in kk.elements() {
                        let got = im.mu(self.gamma_at(y, a), self.gamma_at(z, b));
                        if got != self.gamma_at(y, kk.op(a, b)) {
                            return Err(DirectionError::IdentityFails("mu on d(E)"));
                        }
                    }
                }
            }
        }
        Ok(im)
    }

    /// `gamma(x, x) = s(f(x))` and `gamma(x, y) . gamma(y, z) = gamma(x, z)`.
    pub fn chasles_identities(&self) -> Result<bool, DirectionError> {
        let im = self.internal_monoid()?;
        let e = self.extension();
        let r = self.re.relation();
        let unit = e
            .carrier()
            .elements()
            .all(|y| self.gamma_at(y, 0) == self.point.s().apply(e.f().apply(y)));
        let chain = r.pairs().all(|(y, z)| {
            r.pairs().filter(|&(z2, _)| z2 == z).all(|(_, w)| {
                let g = |a: Elem, b: Elem| self.gamma.apply(r.index_of(a, b).expect("pair in R_E"));
                r.contains(y, w) && im.mu(g(y, z), g(z, w)) == g(y, w)
            })
        });
        Ok(unit && chain)
    }
}
