use super::CofibError;
use crate::action::{to_semimodule, Semimodule};
use crate::extension::{enumerate_ext_morphisms, fibre_product, ExtMorphism, Extension};
use crate::finmon::{
    congruence_closure, product, quotient_by, Congruence, Elem, FiniteMonoid, Hom,
};

/// `E' = (K' x_psi X) / rho` with the cocartesian morphism `(alpha1, alpha)`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub source: Extension,
    pub target: Extension,
    pub cocart: ExtMorphism,
    /// `K' x_psi X`, the pair `(a', x)` encoded as `a' * |X| + x`.
    pub semidirect: FiniteMonoid,
    pub rho: Congruence,
}

/// Pushes `e` forward along the equivariant map `alpha1: K -> K'` into the
/// semimodule `target`.
pub fn pushforward(
    e: &Extension,
    alpha1: &Hom,
    target: &Semimodule,
) -> Result<Pushforward, CofibError> {
    let s = to_semimodule(e)?;
    if !s.is_equivariant(alpha1, target) {
        return Err(CofibError::NotActionPreserving);
    }
    let (x, f, k) = (e.carrier(), e.f(), e.k());
    let kp = target.module();
    let nx = x.order();
    let n = kp.order() * nx;
    let mut table = Vec::with_capacity(n * n);
    for u in 0..n {
        let (a, xu) = (u / nx, u % nx);
        for v in 0..n {
            let (b, xv) = (v / nx, v % nx);
            table.push(kp.op(a, target.act(f.apply(xu), b)) * nx + x.op(xu, xv));
        }
    }
    let y = FiniteMonoid::from_flat(n, table)?;

    let key = |u: Elem| (f.apply(u % nx), kp.op(u / nx, alpha1.apply(e.q(u % nx))));
    let mut keys: Vec<(Elem, Elem)> = (0..n).map(key).collect();
    keys.sort_unstable();
    keys.dedup();
    let labels: Vec<usize> = (0..n)
        .map(|u| keys.binary_search(&key(u)).expect("key present"))
        .collect();
    let rho = Congruence::from_labels(&y, &labels)?;
    let generated = congruence_closure(
        &y,
        e.kernel()
            .elements()
            .map(|a| (alpha1.apply(a) * nx, k.apply(a))),
    );
    if !(rho.is_finer_than(&generated) && generated.is_finer_than(&rho)) {
        return Err(CofibError::NotWellDefined(
            "rho differs from the generated congruence",
        ));
    }
    let (carrier, proj) = quotient_by(&y, &rho)?;
    let kk = Hom::new(
        kp,
        &carrier,
        kp.elements().map(|a| proj.apply(a * nx)).collect(),
    )?;
    let mut fp = vec![0; carrier.order()];
    for u in 0..n {
        fp[proj.apply(u)] = f.apply(u % nx);
    }
    let fp = Hom::new(&carrier, e.base(), fp)?;
    let target_ext = Extension::new(kk, fp)?;
    let alpha = Hom::new(x, &carrier, x.elements().map(|u| proj.apply(u)).collect())?;
    let cocart = ExtMorphism::new(e, &target_ext, alpha1.clone(), alpha)?;
    if &to_semimodule(&target_ext)? != target {
        return Err(CofibError::NotWellDefined("action of the pushforward"));
    }
    Ok(Pushforward {
        source: e.clone(),
        target: target_ext,
        cocart,
        semidirect: y,
        rho,
    })
}

impl Pushforward {
    fn class_of(&self, a: Elem, x: Elem) -> Elem {
        let nx = self.source.carrier().order();
        self.rho.class_of(a * nx + x)
    }
}

/// The unique `beta: E' -> F` with `beta . alpha = lambda` and kernel part
/// `beta1`, given by `beta(a', x) = l(beta1(a')) + lambda(x)`.
pub fn cocartesian_factorize(
    pf: &Pushforward,
    lambda: &ExtMorphism,
    beta1: &Hom,
) -> Result<ExtMorphism, CofibError> {
    let (e, ep) = (&pf.source, &pf.target);
    let fext = lambda.dst();
    if lambda.src() != e || beta1.dom() != ep.kernel() || beta1.cod() != fext.kernel() {
        return Err(CofibError::Mismatch);
    }
    if pf.cocart.alpha1().then(beta1)? != *lambda.alpha1() {
        return Err(CofibError::FactorizationHypothesisFails);
    }
    let fs = to_semimodule(fext)?;
    if !to_semimodule(ep)?.is_equivariant(beta1, &fs) {
        return Err(CofibError::NotActionPreserving);
    }
    let mut map = vec![usize::MAX; ep.carrier().order()];
    for a in ep.kernel().elements() {
        for x in e.carrier().elements() {
            let c = pf.class_of(a, x);
            let v = fext.add(fext.k().apply(beta1.apply(a)), lambda.alpha2().apply(x));
            if map[c] != usize::MAX && map[c] != v {
                return Err(CofibError::NotWellDefined("beta on the pushforward"));
            }
            map[c] = v;
        }
    }
    let beta = Hom::new(ep.carrier(), fext.carrier(), map)?;
    let m = ExtMorphism::new(ep, fext, beta1.clone(), beta)?;
    if pf.cocart.alpha2().then(m.alpha2())? != *lambda.alpha2() {
        return Err(CofibError::NotWellDefined("beta after alpha"));
    }
    Ok(m)
}

/// The number of morphisms `E' -> F` with kernel part `beta1` whose
/// composite with the cocartesian morphism is `lambda`.
pub fn count_factorizations(
    pf: &Pushforward,
    lambda: &ExtMorphism,
    beta1: &Hom,
) -> Result<usize, CofibError> {
    let all = enumerate_ext_morphisms(&pf.target, lambda.dst())?;
    let alpha = pf.cocart.alpha2();
    let mut count = 0;
    for m in all {
        if m.alpha1() == beta1 && alpha.then(m.alpha2())? == *lambda.alpha2() {
            count += 1;
        }
    }
    Ok(count)
}

/// `K x K' -> X x_M X' -> M`.
pub fn product_ext(e1: &Extension, e2: &Extension) -> Result<Extension, CofibError> {
    Ok(fibre_product(e1, e2)?)
}

/// The pushforward of `E x E'` along kernel addition.
pub fn baer_sum(e1: &Extension, e2: &Extension) -> Result<Extension, CofibError> {
    let s = to_semimodule(e1)?;
    if to_semimodule(e2)? != s {
        return Err(CofibError::FibreMismatch);
    }
    let p = fibre_product(e1, e2)?;
    let k = s.module();
    let kk = product(k, k);
    let plus = Hom::new(
        kk.monoid(),
        k,
        kk.tuples().iter().map(|t| k.op(t[0], t[1])).collect(),
    )?;
    Ok(pushforward(&p, &plus, &s)?.target)
}
