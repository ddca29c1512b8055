use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{Elem, FiniteMonoid, MonoidError};

pub const DEFAULT_ENUMERATION_BOUND: usize = 6;

const UNSET: usize = usize::MAX;

/// Search for associative completions of a partially prescribed table.
///
/// Each cell has a candidate list; singleton lists act as prescriptions.
/// Cells are assigned in a configurable order, and after each assignment
/// every associativity triple whose cells are all known is checked, so a
/// completed table is associative.
#[derive(Clone, Debug)]
pub struct TableCompletion {
    n: usize,
    candidates: Vec<Vec<Elem>>,
    order: Vec<usize>,
}

impl TableCompletion {
    /// All tables on `0..n` with 0 as identity, searched in row-major order.
    pub fn monoids(n: usize) -> Self {
        let mut candidates = vec![(0..n).collect::<Vec<_>>(); n * n];
        for a in 0..n {
            candidates[a] = vec![a];
            candidates[a * n] = vec![a];
        }
        Self::new(n, candidates)
    }

    /// Completion search with the given candidate lists and row-major order.
    pub fn new(n: usize, candidates: Vec<Vec<Elem>>) -> Self {
        assert_eq!(candidates.len(), n * n);
        TableCompletion {
            n,
            candidates,
            order: (0..n * n).collect(),
        }
    }

    /// Sets the order in which cells are assigned; it must be a permutation
    /// of all cell indices.
    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        let mut seen = vec![false; self.n * self.n];
        for &c in &order {
            assert!(
                !std::mem::replace(&mut seen[c], true),
                "cell {c} listed twice"
            );
        }
        assert!(seen.iter().all(|&s| s), "order must cover every cell");
        self.order = order;
        self
    }

    /// One sub-search per candidate of the first undetermined cell.
    pub fn branches(&self) -> Vec<TableCompletion> {
        match self.order.iter().find(|&&c| self.candidates[c].len() > 1) {
            None => vec![self.clone()],
            Some(&cell) => self.candidates[cell]
                .iter()
                .map(|&v| {
                    let mut b = self.clone();
                    b.candidates[cell] = vec![v];
                    b
                })
                .collect(),
        }
    }

    pub fn for_each(&self, mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>) {
        let mut table = vec![UNSET; self.n * self.n];
        let _ = self.descend(0, &mut table, &mut visit);
    }

    pub fn count(&self) -> usize {
        let mut c = 0;
        self.for_each(|_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    pub fn collect(&self) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        self.for_each(|t| {
            out.push(t.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    fn descend(
        &self,
        depth: usize,
        table: &mut [Elem],
        visit: &mut impl FnMut(&[Elem]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            return visit(table);
        }
        let cell = self.order[depth];
        for &v in &self.candidates[cell] {
            table[cell] = v;
            if consistent_at(self.n, table, cell) {
                self.descend(depth + 1, table, visit)?;
            }
        }
        table[cell] = UNSET;
        ControlFlow::Continue(())
    }
}

/// Checks every associativity triple in which the cell plays a role and
/// whose other cells are known.
fn consistent_at(n: usize, t: &[Elem], cell: usize) -> bool {
    let (x, y) = (cell / n, cell % n);
    let v = t[cell];
    let get = |a: Elem, b: Elem| {
        if a == UNSET || b == UNSET {
            UNSET
        } else {
            t[a * n + b]
        }
    };
    // (x y) z = x (y z)
    for z in 0..n {
        let l = get(v, z);
        if l == UNSET {
            continue;
        }
        let r = get(x, get(y, z));
        if r != UNSET && l != r {
            return false;
        }
    }
    // (a x) y = a v
    for a in 0..n {
        let l = get(get(a, x), y);
        if l == UNSET {
            continue;
        }
        let r = get(a, v);
        if r != UNSET && l != r {
            return false;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            // x = a b: v = (a b) y = a (b y)
            if ab == x {
                let r = get(a, get(b, y));
                if r != UNSET && r != v {
                    return false;
                }
            }
            // y = a b: v = x (a b) = (x a) b
            if ab == y {
                let l = get(get(x, a), b);
                if l != UNSET && l != v {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations_fixing_zero(n: usize, mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>) {
    fn rec(
        perm: &mut Vec<Elem>,
        used: &mut [bool],
        n: usize,
        visit: &mut impl FnMut(&[Elem]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if perm.len() == n {
            return visit(perm);
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                let flow = rec(perm, used, n, visit);
                perm.pop();
                used[v] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
    let mut used = vec![false; n];
    used[0] = true;
    let _ = rec(&mut vec![0], &mut used, n, &mut visit);
}

/// Compares the table relabeled by `inv` (new label `i` is old element
/// `inv[i]`) against `best`, row by row.
fn relabeled_cmp(
    n: usize,
    table: &[Elem],
    inv: &[Elem],
    pos: &[Elem],
    best: &[Elem],
) -> std::cmp::Ordering {
    for i in 0..n {
        for j in 0..n {
            let v = pos[table[inv[i] * n + inv[j]]];
            match v.cmp(&best[i * n + j]) {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

fn inverse_perm(inv: &[Elem]) -> Vec<Elem> {
    let mut pos = vec![0; inv.len()];
    for (i, &x) in inv.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// Whether no relabeling fixing 0 gives a lexicographically smaller table.
pub fn is_canonical(n: usize, table: &[Elem]) -> bool {
    let mut canonical = true;
    permutations_fixing_zero(n, |inv| {
        let pos = inverse_perm(inv);
        if relabeled_cmp(n, table, inv, &pos, table) == std::cmp::Ordering::Less {
            canonical = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    canonical
}

/// The lexicographically least table among all relabelings fixing 0.
pub fn canonical_table(m: &FiniteMonoid) -> Vec<Elem> {
    let n = m.order();
    let mut best = m.table().to_vec();
    let table = m.table().to_vec();
    permutations_fixing_zero(n, |inv| {
        let pos = inverse_perm(inv);
        if relabeled_cmp(n, &table, inv, &pos, &best) == std::cmp::Ordering::Less {
            for i in 0..n {
                for j in 0..n {
                    best[i * n + j] = pos[table[inv[i] * n + inv[j]]];
                }
            }
        }
        ControlFlow::Continue(())
    });
    best
}

fn canonical_leaves(search: &TableCompletion, n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    search.for_each(|t| {
        if is_canonical(n, t) {
            out.push(t.to_vec());
        }
        ControlFlow::Continue(())
    });
    out
}

/// One canonical representative per isomorphism class of monoids of order
/// `n`, sorted by table. Fails above [`DEFAULT_ENUMERATION_BOUND`].
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>, MonoidError> {
    enumerate_monoids_with_bound(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_monoids_with_bound(
    n: usize,
    bound: usize,
) -> Result<Vec<FiniteMonoid>, MonoidError> {
    if n > bound {
        return Err(MonoidError::BoundExceeded { order: n, bound });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let search = TableCompletion::monoids(n);
    // branches are in ascending order of the first free cell, so
    // concatenating them keeps the output sorted
    let tables: Vec<Vec<Elem>> = if n >= 5 {
        search
            .branches()
            .par_iter()
            .map(|b| canonical_leaves(b, n))
            .collect::<Vec<_>>()
            .concat()
    } else {
        canonical_leaves(&search, n)
    };
    Ok(tables
        .into_iter()
        .map(|t| FiniteMonoid::from_flat_unchecked(n, t))
        .collect())
}
