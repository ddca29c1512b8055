//! Finite monoids given by multiplication tables.
//!
//! Elements of a monoid of order `n` are the indices `0..n`, and element `0`
//! is always the identity.

mod congruence;
mod enumerate;
mod hom;
mod iso;
mod relation;

use std::fmt;
use std::sync::Arc;

pub use congruence::{congruence_closure, quotient_by, Congruence, UnionFind};
pub use enumerate::{
    canonical_table, enumerate_monoids, enumerate_monoids_with_bound, is_canonical,
    TableCompletion, DEFAULT_ENUMERATION_BOUND,
};
pub use hom::{enumerate_homs, Hom, HomSearch};
pub use iso::{element_invariants, is_isomorphic, ElementInvariant};
pub use relation::{
    generated_submonoid, kernel_objects, kernel_pair, product, pullback, submonoid, KernelObjects,
    Relation, TupleMonoid,
};

/// Element index inside a [`FiniteMonoid`].
pub type Elem = usize;

/// Errors raised while validating tables and maps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry ({a},{b}) = {value} is outside 0..{order}")]
    OutOfRange {
        a: Elem,
        b: Elem,
        value: Elem,
        order: usize,
    },
    #[error("element 0 is not a two-sided identity: 0*{a} or {a}*0 differs from {a}")]
    NoIdentityAtZero { a: Elem },
    #[error("not associative at ({a},{b},{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("map has length {len}, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("map sends {x} to {value}, outside the codomain of order {order}")]
    MapOutOfRange { x: Elem, value: Elem, order: usize },
    #[error("map does not send the identity to the identity")]
    IdentityNotPreserved,
    #[error("map is not multiplicative at ({a},{b})")]
    NotMultiplicative { a: Elem, b: Elem },
    #[error("pairs do not form a submonoid: {detail}")]
    NotSubmonoid { detail: String },
    #[error("order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("maps have mismatched domains or codomains")]
    Mismatch,
}

#[derive(PartialEq, Eq, Hash)]
struct MonoidData {
    order: usize,
    table: Vec<Elem>,
    commutative: bool,
    cancellative: bool,
    group: bool,
}

/// A finite monoid with identity at element 0.
///
/// Cloning is cheap: the table is shared.
#[derive(Clone)]
pub struct FiniteMonoid {
    data: Arc<MonoidData>,
    name: Option<Arc<str>>,
}

impl FiniteMonoid {
    /// Validates a square table and computes the structural flags.
    pub fn from_table(rows: &[Vec<Elem>]) -> Result<Self, MonoidError> {
        let order = rows.len();
        if order == 0 {
            return Err(MonoidError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(MonoidError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            table.extend_from_slice(entries);
        }
        Self::from_flat(order, table)
    }

    /// Same as [`FiniteMonoid::from_table`] for a row-major flat table.
    pub fn from_flat(order: usize, table: Vec<Elem>) -> Result<Self, MonoidError> {
        if order == 0 {
            return Err(MonoidError::Empty);
        }
        if table.len() != order * order {
            return Err(MonoidError::NotSquare {
                row: 0,
                len: table.len(),
                order: order * order,
            });
        }
        for (i, &value) in table.iter().enumerate() {
            if value >= order {
                return Err(MonoidError::OutOfRange {
                    a: i / order,
                    b: i % order,
                    value,
                    order,
                });
            }
        }
        for a in 0..order {
            if table[a] != a || table[a * order] != a {
                return Err(MonoidError::NoIdentityAtZero { a });
            }
        }
        if let Some((a, b, c)) = find_non_associative(order, &table) {
            return Err(MonoidError::NotAssociative { a, b, c });
        }
        Ok(Self::from_flat_unchecked(order, table))
    }

    /// Builds a monoid from a table known to be associative with identity 0.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!((0..order).all(|a| table[a] == a && table[a * order] == a));
        let commutative = (0..order)
            .all(|a| (a + 1..order).all(|b| table[a * order + b] == table[b * order + a]));
        let cancellative = rows_and_columns_injective(order, &table);
        let group = has_all_inverses(order, &table);
        FiniteMonoid {
            data: Arc::new(MonoidData {
                order,
                table,
                commutative,
                cancellative,
                group,
            }),
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl AsRef<str>) -> Self {
        self.name = Some(Arc::from(name.as_ref()));
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.data.table[a * self.data.order + b]
    }

    /// Product of a sequence of elements, left to right.
    pub fn op_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(0, |acc, x| self.op(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn table(&self) -> &[Elem] {
        &self.data.table
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.data
            .table
            .chunks(self.order())
            .map(<[Elem]>::to_vec)
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.data.commutative
    }

    pub fn is_cancellative(&self) -> bool {
        self.data.cancellative
    }

    pub fn is_group(&self) -> bool {
        self.data.group
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Two-sided inverse of `a`, if any.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| self.op(a, b) == 0 && self.op(b, a) == 0)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// The group of units, in ascending element order.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.op(a, a) == a).collect()
    }

    /// Whether `a` commutes with every element.
    pub fn is_central(&self, a: Elem) -> bool {
        self.elements().all(|b| self.op(a, b) == self.op(b, a))
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0]).with_name("1")
    }

    /// The cyclic group of order `n`, written additively mod `n`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat_unchecked(n, table).with_name(format!("C{n}"))
    }

    /// `{1, z}` with `z` absorbing; element 1 is `z`.
    pub fn two_element_semilattice() -> Self {
        Self::from_flat_unchecked(2, vec![0, 1, 1, 1]).with_name("M2")
    }

    /// The Klein four-group `C2 x C2` as bit-vectors under xor.
    pub fn klein_four() -> Self {
        let table = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        Self::from_flat_unchecked(4, table).with_name("V4")
    }

    /// The symmetric group on three letters.
    ///
    /// Elements are `r^i t^j` encoded as `3*j + i`, where `r` is the 3-cycle
    /// and `t` a transposition; so `0..3` is the rotation subgroup.
    pub fn symmetric_group3() -> Self {
        // (r^i t^j)(r^k t^l) = r^(i + (-1)^j k) t^(j+l)
        let mut table = vec![0; 36];
        for x in 0..6 {
            for y in 0..6 {
                let (i, j) = (x % 3, x / 3);
                let (k, l) = (y % 3, y / 3);
                let rot = if j == 0 { (i + k) % 3 } else { (i + 3 - k) % 3 };
                table[x * 6 + y] = 3 * ((j + l) % 2) + rot;
            }
        }
        Self::from_flat_unchecked(6, table).with_name("S3")
    }

    /// A copy of this monoid with element labels permuted by `perm`, which
    /// must fix 0: old element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n);
        assert_eq!(perm[0], 0, "relabeling must fix the identity");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        Self::from_flat_unchecked(n, table)
    }
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl Eq for FiniteMonoid {}

impl std::hash::Hash for FiniteMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.table.hash(state);
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("FiniteMonoid");
        if let Some(name) = self.name() {
            s.field("name", &name);
        }
        s.field("order", &self.order())
            .field("table", &self.rows())
            .finish()
    }
}

fn find_non_associative(n: usize, t: &[Elem]) -> Option<(Elem, Elem, Elem)> {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            for c in 0..n {
                if t[ab * n + c] != t[a * n + t[b * n + c]] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn rows_and_columns_injective(n: usize, t: &[Elem]) -> bool {
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for x in 0..n {
            let v = t[a * n + x];
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        for x in 0..n {
            let v = t[x * n + a];
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    true
}

fn has_all_inverses(n: usize, t: &[Elem]) -> bool {
    (0..n).all(|a| (0..n).any(|b| t[a * n + b] == 0 && t[b * n + a] == 0))
}
