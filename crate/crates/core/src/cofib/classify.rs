use std::collections::HashMap;

use rayon::prelude::*;

use super::{crossed_product, extract_factor_system, CofibError, FactorSystem};
use crate::action::{induced_pre_action, to_semimodule, ActionError, Semimodule};
use crate::extension::{fibre_isomorphism, Extension};
use crate::finmon::{Elem, FiniteMonoid, Hom, TableCompletion, UnionFind};

/// Largest `|K| * |M|` for the brute-force table search.
pub const BRUTE_FORCE_BOUND: usize = 8;
/// Largest `|K| * |M|` for the factor-system search.
pub const FACTOR_SYSTEM_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifyMode {
    FactorSystem,
    BruteForce,
}

/// Fibre classes of a semimodule, each given by the lexicographically least
/// factor system among its members, together with the number of normalized
/// factor systems in the class. Class 0 is the split class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub semimodule: Semimodule,
    pub classes: Vec<FactorSystem>,
    pub sizes: Vec<usize>,
}

impl Classification {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn extensions(&self) -> Result<Vec<Extension>, CofibError> {
        self.classes.iter().map(crossed_product).collect()
    }
}

fn check_bound(s: &Semimodule, bound: usize) -> Result<(), CofibError> {
    let size = s.monoid().order() * s.module().order();
    if size > bound {
        return Err(CofibError::BoundExceeded { size, bound });
    }
    Ok(())
}

pub fn fiber_classify(s: &Semimodule, mode: ClassifyMode) -> Result<Classification, CofibError> {
    match mode {
        ClassifyMode::FactorSystem => classify_by_factor_systems(s, FACTOR_SYSTEM_BOUND),
        ClassifyMode::BruteForce => classify_by_tables(s, BRUTE_FORCE_BOUND),
    }
}

/// Cocycle search: the free cells are `g(m, n)` with `m, n != 1`, and each
/// cocycle triple is checked once its last cell is assigned.
struct CocycleSearch<'a> {
    s: &'a Semimodule,
    cells: Vec<(Elem, Elem)>,
    checks: Vec<Vec<(Elem, Elem, Elem)>>,
}

impl<'a> CocycleSearch<'a> {
    fn new(s: &'a Semimodule) -> Self {
        let m = s.monoid();
        let n = m.order();
        let cells: Vec<(Elem, Elem)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
        let slot = |x: Elem, y: Elem| {
            if x == 0 || y == 0 {
                None
            } else {
                Some((x - 1) * (n - 1) + y - 1)
            }
        };
        let mut checks = vec![Vec::new(); cells.len()];
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    let last = [
                        slot(y, z),
                        slot(x, m.op(y, z)),
                        slot(x, y),
                        slot(m.op(x, y), z),
                    ]
                    .into_iter()
                    .flatten()
                    .max();
                    if let Some(i) = last {
                        checks[i].push((x, y, z));
                    }
                }
            }
        }
        CocycleSearch { s, cells, checks }
    }

    fn run(&self, g: &mut FactorSystem, depth: usize, out: &mut Vec<FactorSystem>) {
        if depth == self.cells.len() {
            if let Ok(fs) = FactorSystem::new(self.s, g.table().to_vec()) {
                out.push(fs);
            }
            return;
        }
        let (x, y) = self.cells[depth];
        let n = self.s.monoid().order();
        for v in self.s.module().elements() {
            g.g_mut()[x * n + y] = v;
            if self.checks[depth]
                .iter()
                .all(|&(a, b, c)| g.cocycle_holds(a, b, c))
            {
                self.run(g, depth + 1, out);
            }
        }
        g.g_mut()[x * n + y] = 0;
    }
}

/// All normalized factor systems of `s`, in lexicographic order.
pub fn enumerate_factor_systems(s: &Semimodule) -> Vec<FactorSystem> {
    let search = CocycleSearch::new(s);
    if search.cells.is_empty() {
        return vec![FactorSystem::zero(s)];
    }
    let n = s.monoid().order();
    let (x, y) = search.cells[0];
    let shards: Vec<Vec<FactorSystem>> = s
        .module()
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|v| {
            let mut g = FactorSystem::zero(s);
            g.g_mut()[x * n + y] = v;
            let mut out = Vec::new();
            if search.checks[0]
                .iter()
                .all(|&(a, b, c)| g.cocycle_holds(a, b, c))
            {
                search.run(&mut g, 1, &mut out);
            }
            out
        })
        .collect();
    shards.concat()
}

/// All shifts `delta: M -> U(K)` with `delta(1) = 0`.
pub fn unit_shifts(s: &Semimodule) -> Vec<Vec<Elem>> {
    let units = s.module().units();
    let n = s.monoid().order();
    let mut out = vec![vec![0]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|d| {
                units.iter().map(move |&u| {
                    let mut d = d.clone();
                    d.push(u);
                    d
                })
            })
            .collect();
    }
    out
}

pub fn classify_by_factor_systems(
    s: &Semimodule,
    bound: usize,
) -> Result<Classification, CofibError> {
    check_bound(s, bound)?;
    let systems = enumerate_factor_systems(s);
    let index: HashMap<&[Elem], usize> = systems
        .iter()
        .enumerate()
        .map(|(i, g)| (g.table(), i))
        .collect();
    let mut uf = UnionFind::new(systems.len());
    let shifts = unit_shifts(s);
    for (i, g) in systems.iter().enumerate() {
        for d in &shifts {
            let h = g.shift(d);
            let j = *index
                .get(h.table())
                .ok_or(CofibError::NotWellDefined("shift of a factor system"))?;
            uf.union(i, j);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..systems.len() {
        let c = *slot.entry(uf.find(i)).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[c].push(i);
    }
    Ok(Classification {
        semimodule: s.clone(),
        classes: groups.iter().map(|g| systems[g[0]].clone()).collect(),
        sizes: groups.iter().map(Vec::len).collect(),
    })
}

/// Candidate lists for tables on `K x M` (element `(a, m)` at `a * |M| + m`)
/// with `k(a) = (a, 1)`, `f(a, m) = m` and `k(a) + (0, m) = (a, m)`.
fn normal_form_candidates(k: &FiniteMonoid, m: &FiniteMonoid) -> Vec<Vec<Elem>> {
    let (nm, nk) = (m.order(), k.order());
    let n = nm * nk;
    let mut cands = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, mx) = (x / nm, x % nm);
        for y in 0..n {
            let (b, my) = (y / nm, y % nm);
            cands.push(if x == 0 {
                vec![y]
            } else if y == 0 {
                vec![x]
            } else if mx == 0 {
                vec![k.op(a, b) * nm + my]
            } else {
                k.elements().map(|c| c * nm + m.op(mx, my)).collect()
            });
        }
    }
    cands
}

/// Every Schreier extension on `K x M` in normal form, from the associative
/// completions of [`normal_form_candidates`]. The induced action is not
/// constrained.
pub fn schreier_tables(k: &FiniteMonoid, m: &FiniteMonoid) -> Vec<Extension> {
    let (nm, nk) = (m.order(), k.order());
    let n = nm * nk;
    let search = TableCompletion::new(n, normal_form_candidates(k, m));
    let kk = |c: &FiniteMonoid| Hom::new(k, c, k.elements().map(|a| a * nm).collect());
    search
        .collect()
        .into_iter()
        .filter_map(|table| {
            let carrier = FiniteMonoid::from_flat(n, table).ok()?;
            let f = Hom::new(&carrier, m, (0..n).map(|x| x % nm).collect()).ok()?;
            let e = Extension::new(kk(&carrier).ok()?, f).ok()?;
            e.is_schreier().then_some(e)
        })
        .collect()
}

pub fn classify_by_tables(s: &Semimodule, bound: usize) -> Result<Classification, CofibError> {
    check_bound(s, bound)?;
    let mut reps: Vec<Extension> = Vec::new();
    let mut members: Vec<Vec<FactorSystem>> = Vec::new();
    for e in schreier_tables(s.module(), s.monoid()) {
        if to_semimodule(&e).ok().as_ref() != Some(s) {
            continue;
        }
        let g = extract_factor_system(&e)?;
        match reps.iter().position(|r| fibre_isomorphism(r, &e).is_some()) {
            Some(i) => members[i].push(g),
            None => {
                reps.push(e);
                members.push(vec![g]);
            }
        }
    }
    let mut classes: Vec<(FactorSystem, usize)> = members
        .into_iter()
        .map(|mut gs| {
            gs.sort_by(|a, b| a.table().cmp(b.table()));
            let size = gs.len();
            (gs.swap_remove(0), size)
        })
        .collect();
    classes.sort_by(|a, b| a.0.table().cmp(b.0.table()));
    Ok(Classification {
        semimodule: s.clone(),
        classes: classes.iter().map(|c| c.0.clone()).collect(),
        sizes: classes.iter().map(|c| c.1).collect(),
    })
}

/// Outcome of searching normal-form Schreier tables for an induced
/// pre-action that violates A4.
#[derive(Clone, Debug, Default)]
pub struct A4Probe {
    pub tables: usize,
    pub failures: Vec<(Extension, ActionError)>,
}

/// Runs the search over every pair `(K, M)` from the given lists with `K`
/// commutative and `|K| * |M| <= bound`.
pub fn a4_probe(kernels: &[FiniteMonoid], bases: &[FiniteMonoid], bound: usize) -> A4Probe {
    let mut probe = A4Probe::default();
    for k in kernels.iter().filter(|k| k.is_commutative()) {
        for m in bases.iter().filter(|m| m.order() * k.order() <= bound) {
            for e in schreier_tables(k, m) {
                probe.tables += 1;
                let Ok(table) = induced_pre_action(&e) else {
                    continue;
                };
                if let Err(err) = Semimodule::new(e.base(), e.kernel(), table) {
                    probe.failures.push((e, err));
                }
            }
        }
    }
    probe
}
