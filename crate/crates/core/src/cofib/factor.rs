use super::{CofibError, FactorSystemFault};
use crate::action::{to_semimodule, Semimodule};
use crate::extension::Extension;
use crate::finmon::{Elem, FiniteMonoid, Hom};

/// A normalized factor system `g: M x M -> K` for a semimodule `(K, eta, M)`,
/// stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactorSystem {
    s: Semimodule,
    g: Vec<Elem>,
}

impl FactorSystem {
    pub fn new(s: &Semimodule, g: Vec<Elem>) -> Result<Self, CofibError> {
        let fs = FactorSystem { s: s.clone(), g };
        fs.validate()?;
        Ok(fs)
    }

    pub fn from_rows(s: &Semimodule, rows: &[Vec<Elem>]) -> Result<Self, CofibError> {
        Self::new(s, rows.concat())
    }

    /// The zero factor system, whose crossed product is the semidirect product.
    pub fn zero(s: &Semimodule) -> Self {
        let n = s.monoid().order();
        FactorSystem {
            s: s.clone(),
            g: vec![0; n * n],
        }
    }

    fn validate(&self) -> Result<(), CofibError> {
        let (m, k) = (self.s.monoid(), self.s.module());
        let fault = |f| Err(CofibError::InvalidFactorSystem(f));
        if self.g.len() != m.order() * m.order() || self.g.iter().any(|&v| v >= k.order()) {
            return fault(FactorSystemFault::Shape);
        }
        if let Some(x) = m
            .elements()
            .find(|&x| self.g(0, x) != 0 || self.g(x, 0) != 0)
        {
            return fault(FactorSystemFault::Normalization { m: x });
        }
        for x in m.elements() {
            for y in m.elements() {
                for z in m.elements() {
                    if !self.cocycle_holds(x, y, z) {
                        return fault(FactorSystemFault::Cocycle { m: x, n: y, p: z });
                    }
                }
            }
        }
        for x in m.elements() {
            for y in m.elements() {
                let g = self.g(x, y);
                for b in k.elements() {
                    if k.op(g, self.s.act(m.op(x, y), b))
                        != k.op(self.s.act(x, self.s.act(y, b)), g)
                    {
                        return fault(FactorSystemFault::Compatibility { m: x, n: y, b });
                    }
                }
            }
        }
        Ok(())
    }

    /// `eta(m)(g(n, p)) + g(m, np) = g(m, n) + g(mn, p)`.
    pub(crate) fn cocycle_holds(&self, x: Elem, y: Elem, z: Elem) -> bool {
        let (m, k) = (self.s.monoid(), self.s.module());
        k.op(self.s.act(x, self.g(y, z)), self.g(x, m.op(y, z)))
            == k.op(self.g(x, y), self.g(m.op(x, y), z))
    }

    pub(crate) fn g_mut(&mut self) -> &mut Vec<Elem> {
        &mut self.g
    }

    pub fn semimodule(&self) -> &Semimodule {
        &self.s
    }

    #[inline]
    pub fn g(&self, m: Elem, n: Elem) -> Elem {
        self.g[m * self.s.monoid().order() + n]
    }

    pub fn table(&self) -> &[Elem] {
        &self.g
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.g
            .chunks(self.s.monoid().order())
            .map(<[Elem]>::to_vec)
            .collect()
    }

    /// The pointwise sum `g + g'`.
    pub fn add(&self, other: &FactorSystem) -> Result<FactorSystem, CofibError> {
        if self.s != other.s {
            return Err(CofibError::FibreMismatch);
        }
        let k = self.s.module();
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(&a, &b)| k.op(a, b))
            .collect();
        FactorSystem::new(&self.s, g)
    }

    /// The factor system of the crossed product after moving each base
    /// representative `(0, m)` to `(delta(m), m)`:
    /// `g'(m, n) = g(m, n) + delta(mn) - delta(m) - eta(m)(delta(n))`.
    /// Every `delta(m)` must be a unit and `delta(1) = 0`.
    pub fn shift(&self, delta: &[Elem]) -> FactorSystem {
        let (m, k) = (self.s.monoid(), self.s.module());
        let neg = |a: Elem| k.inverse(a).expect("shift by a unit");
        let mut g = Vec::with_capacity(self.g.len());
        for x in m.elements() {
            for y in m.elements() {
                let v = k.op_all([
                    self.g(x, y),
                    delta[m.op(x, y)],
                    neg(delta[x]),
                    neg(self.s.act(x, delta[y])),
                ]);
                g.push(v);
            }
        }
        FactorSystem {
            s: self.s.clone(),
            g,
        }
    }
}

impl std::fmt::Debug for FactorSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FactorSystem({:?}, g={:?})", self.s, self.rows())
    }
}

/// The crossed product on `K x M`, `(a, m) + (b, n) = (a + m.b + g(m, n), mn)`,
/// with `(a, m)` encoded as `a * |M| + m`, `k(a) = (a, 1)` and base
/// representatives `(0, m)`.
pub fn crossed_product(fs: &FactorSystem) -> Result<Extension, CofibError> {
    let s = fs.semimodule();
    let (m, k) = (s.monoid(), s.module());
    let (nm, nk) = (m.order(), k.order());
    let n = nm * nk;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, mx) = (x / nm, x % nm);
        for y in 0..n {
            let (b, my) = (y / nm, y % nm);
            table.push(k.op_all([a, s.act(mx, b), fs.g(mx, my)]) * nm + m.op(mx, my));
        }
    }
    let carrier = FiniteMonoid::from_flat(n, table)
        .map_err(|_| CofibError::InvalidFactorSystem(FactorSystemFault::NotAssociative))?;
    let kk = Hom::new(k, &carrier, k.elements().map(|a| a * nm).collect())?;
    let f = Hom::new(&carrier, m, (0..n).map(|x| x % nm).collect())?;
    let e = Extension::new(kk, f)?;
    if e.schreier()?.base_reps() != m.elements().collect::<Vec<_>>() {
        return Err(CofibError::NotWellDefined("base representatives (0, m)"));
    }
    if &to_semimodule(&e)? != s {
        return Err(CofibError::NotWellDefined(
            "induced action of the crossed product",
        ));
    }
    Ok(e)
}

/// `g(m, n) = q(u_m + u_n)` from the base representatives.
pub fn extract_factor_system(e: &Extension) -> Result<FactorSystem, CofibError> {
    let s = to_semimodule(e)?;
    let data = e.schreier()?;
    let m = e.base();
    let g = m
        .elements()
        .flat_map(|x| m.elements().map(move |y| (x, y)))
        .map(|(x, y)| data.q(e.add(data.base_rep(x), data.base_rep(y))))
        .collect();
    FactorSystem::new(&s, g)
}

/// The isomorphism `x -> (q(x), f(x))` onto the crossed product of the
/// extracted factor system, with `alpha1 = id`.
pub fn normal_form(
    e: &Extension,
) -> Result<(FactorSystem, crate::extension::ExtMorphism), CofibError> {
    let fs = extract_factor_system(e)?;
    let cp = crossed_product(&fs)?;
    let nm = e.base().order();
    let map = e
        .carrier()
        .elements()
        .map(|x| e.q(x) * nm + e.f().apply(x))
        .collect();
    let alpha = Hom::new(e.carrier(), cp.carrier(), map)?;
    let iso = crate::extension::ExtMorphism::new(e, &cp, Hom::identity(e.kernel()), alpha)?;
    Ok((fs, iso))
}
