use super::{ActionError, Semimodule};
use crate::extension::Extension;
use crate::finmon::Elem;

/// The table `m * a = q(u_m + k(a))`, audited against every representative
/// of each fibre.
pub fn induced_pre_action(e: &Extension) -> Result<Vec<Elem>, ActionError> {
    if !e.kernel().is_commutative() {
        return Err(ActionError::NotCommutative);
    }
    let s = e.schreier()?;
    let (k, x) = (e.k(), e.carrier());
    let nk = e.kernel().order();
    let mut table = Vec::with_capacity(e.base().order() * nk);
    for m in e.base().elements() {
        for a in e.kernel().elements() {
            table.push(s.q(x.op(s.base_rep(m), k.apply(a))));
        }
    }
    for m in e.base().elements() {
        for &v in s.reps(m) {
            for a in e.kernel().elements() {
                let lhs = x.op(v, k.apply(a));
                let b = table[m * nk + a];
                if x.op(k.apply(b), v) != lhs {
                    return Err(ActionError::NotWellDefined { m, a });
                }
            }
        }
    }
    Ok(table)
}

/// The induced action as a semimodule; fails exactly when an axiom fails.
pub fn to_semimodule(e: &Extension) -> Result<Semimodule, ActionError> {
    let table = induced_pre_action(e)?;
    Semimodule::new(e.base(), e.kernel(), table)
}

/// Whether `x + k(a) = k(f(x) * a) + x` for all `x` and `a`.
pub fn patrick_check(e: &Extension) -> Result<bool, ActionError> {
    let table = induced_pre_action(e)?;
    let (k, f, x) = (e.k(), e.f(), e.carrier());
    let nk = e.kernel().order();
    Ok(x.elements().all(|y| {
        e.kernel()
            .elements()
            .all(|a| x.op(y, k.apply(a)) == x.op(k.apply(table[f.apply(y) * nk + a]), y))
    }))
}
