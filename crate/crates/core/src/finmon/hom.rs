use std::ops::ControlFlow;

use super::{Elem, FiniteMonoid, MonoidError};

/// A monoid homomorphism stored as its element table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    dom: FiniteMonoid,
    cod: FiniteMonoid,
    map: Vec<Elem>,
}

impl Hom {
    /// Validates that `map` preserves the identity and the operation.
    pub fn new(
        dom: &FiniteMonoid,
        cod: &FiniteMonoid,
        map: Vec<Elem>,
    ) -> Result<Self, MonoidError> {
        if map.len() != dom.order() {
            return Err(MonoidError::MapLength {
                len: map.len(),
                expected: dom.order(),
            });
        }
        if let Some((x, &value)) = map.iter().enumerate().find(|(_, &v)| v >= cod.order()) {
            return Err(MonoidError::MapOutOfRange {
                x,
                value,
                order: cod.order(),
            });
        }
        if map[0] != 0 {
            return Err(MonoidError::IdentityNotPreserved);
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if map[dom.op(a, b)] != cod.op(map[a], map[b]) {
                    return Err(MonoidError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(Self::new_unchecked(dom, cod, map))
    }

    pub(crate) fn new_unchecked(dom: &FiniteMonoid, cod: &FiniteMonoid, map: Vec<Elem>) -> Self {
        debug_assert_eq!(map.len(), dom.order());
        Hom {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        }
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        Self::new_unchecked(m, m, m.elements().collect())
    }

    /// The constant map onto the identity.
    pub fn zero(dom: &FiniteMonoid, cod: &FiniteMonoid) -> Self {
        Self::new_unchecked(dom, cod, vec![0; dom.order()])
    }

    pub fn dom(&self) -> &FiniteMonoid {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteMonoid {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &Hom) -> Result<Hom, MonoidError> {
        if self.cod != g.dom {
            return Err(MonoidError::Mismatch);
        }
        Ok(Self::new_unchecked(
            &self.dom,
            &g.cod,
            self.map.iter().map(|&x| g.map[x]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.order()];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<Elem> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// All `x` with `self(x) = y`.
    pub fn preimage(&self, y: Elem) -> Vec<Elem> {
        self.dom.elements().filter(|&x| self.map[x] == y).collect()
    }

    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(&self.cod, &self.dom, inv))
    }
}

impl std::fmt::Debug for Hom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Hom({} -> {}: {:?})",
            self.dom.order(),
            self.cod.order(),
            self.map
        )
    }
}

/// Backtracking search for homomorphisms with per-element candidate sets.
///
/// Elements of the domain are assigned in ascending order and candidates are
/// tried in ascending order, so solutions come out in lexicographic order of
/// their tables. A product `a*b` is checked as soon as `a`, `b` and `a*b`
/// are all assigned.
#[derive(Clone)]
pub struct HomSearch {
    dom: FiniteMonoid,
    cod: FiniteMonoid,
    candidates: Vec<Vec<Elem>>,
    injective: bool,
    surjective: bool,
}

impl HomSearch {
    pub fn new(dom: &FiniteMonoid, cod: &FiniteMonoid) -> Self {
        let mut candidates = vec![cod.elements().collect::<Vec<_>>(); dom.order()];
        candidates[0] = vec![0];
        HomSearch {
            dom: dom.clone(),
            cod: cod.clone(),
            candidates,
            injective: false,
            surjective: false,
        }
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn surjective(mut self, yes: bool) -> Self {
        self.surjective = yes;
        self
    }

    /// Intersects the candidates for `x` with `allowed`.
    pub fn restrict(mut self, x: Elem, allowed: &[Elem]) -> Self {
        self.candidates[x].retain(|v| allowed.contains(v));
        self
    }

    pub fn fix(self, x: Elem, value: Elem) -> Self {
        self.restrict(x, &[value])
    }

    /// Calls `visit` on every solution until it returns `Break`.
    pub fn for_each(&self, mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>) {
        let n = self.dom.order();
        if n == 0 || self.candidates.iter().any(Vec::is_empty) {
            return;
        }
        if self.surjective && self.cod.order() > n {
            return;
        }
        // checks[x]: the pairs (a, b) whose latest element among a, b, ab is x
        let mut checks = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                let ab = self.dom.op(a, b);
                checks[a.max(b).max(ab)].push((a, b, ab));
            }
        }
        let mut state = SearchState {
            map: vec![usize::MAX; n],
            used: vec![0; self.cod.order()],
            uncovered: self.cod.order(),
        };
        let _ = self.descend(0, &checks, &mut state, &mut visit);
    }

    fn descend(
        &self,
        x: Elem,
        checks: &[Vec<(Elem, Elem, Elem)>],
        st: &mut SearchState,
        visit: &mut impl FnMut(&[Elem]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.dom.order();
        if x == n {
            return visit(&st.map);
        }
        for &v in &self.candidates[x] {
            if self.injective && st.used[v] > 0 {
                continue;
            }
            st.map[x] = v;
            if st.used[v] == 0 {
                st.uncovered -= 1;
            }
            st.used[v] += 1;
            let ok = (!self.surjective || st.uncovered < n - x)
                && checks[x]
                    .iter()
                    .all(|&(a, b, ab)| st.map[ab] == self.cod.op(st.map[a], st.map[b]));
            let flow = if ok {
                self.descend(x + 1, checks, st, visit)
            } else {
                ControlFlow::Continue(())
            };
            st.used[v] -= 1;
            if st.used[v] == 0 {
                st.uncovered += 1;
            }
            flow?;
        }
        st.map[x] = usize::MAX;
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<Hom> {
        let mut found = None;
        self.for_each(|m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found.map(|m| Hom::new_unchecked(&self.dom, &self.cod, m))
    }

    pub fn all(&self) -> Vec<Hom> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(Hom::new_unchecked(&self.dom, &self.cod, m.to_vec()));
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

struct SearchState {
    map: Vec<Elem>,
    used: Vec<usize>,
    uncovered: usize,
}

/// All homomorphisms `m -> n` (optionally only the surjective ones), in
/// lexicographic order of their tables.
pub fn enumerate_homs(m: &FiniteMonoid, n: &FiniteMonoid, surjective_only: bool) -> Vec<Hom> {
    HomSearch::new(m, n).surjective(surjective_only).all()
}
