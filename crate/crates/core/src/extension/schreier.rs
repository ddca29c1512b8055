use super::{Extension, ExtensionError};
use crate::finmon::Elem;

/// Representatives, base representatives and the retraction `q` of a
/// Schreier extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierData {
    reps: Vec<Vec<Elem>>,
    base: Vec<Elem>,
    q: Vec<Elem>,
}

impl SchreierData {
    /// Base representative of each fibre is the least element of `B_m`,
    /// except over the identity where it is 0.
    pub(crate) fn compute(e: &Extension) -> Result<Self, ExtensionError> {
        let (k, x) = (e.k(), e.carrier());
        let mut reps = Vec::with_capacity(e.base().order());
        let mut base = Vec::with_capacity(e.base().order());
        for m in e.base().elements() {
            let b = e.representatives(m);
            if b.is_empty() {
                return Err(ExtensionError::NotSchreier { m });
            }
            base.push(if m == 0 { 0 } else { b[0] });
            reps.push(b);
        }
        let mut q = vec![usize::MAX; x.order()];
        for &u in &base {
            for a in e.kernel().elements() {
                q[x.op(k.apply(a), u)] = a;
            }
        }
        debug_assert!(q.iter().all(|&a| a != usize::MAX));
        Ok(SchreierData { reps, base, q })
    }

    /// Unvalidated data, as read from a stored document.
    pub fn from_parts(reps: Vec<Vec<Elem>>, base: Vec<Elem>, q: Vec<Elem>) -> Self {
        SchreierData { reps, base, q }
    }

    pub fn reps(&self, m: Elem) -> &[Elem] {
        &self.reps[m]
    }

    pub fn all_reps(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    pub fn base_rep(&self, m: Elem) -> Elem {
        self.base[m]
    }

    pub fn base_reps(&self) -> &[Elem] {
        &self.base
    }

    #[inline]
    pub fn q(&self, x: Elem) -> Elem {
        self.q[x]
    }

    pub fn q_table(&self) -> &[Elem] {
        &self.q
    }

    /// The union `B(E)` of all representative sets, sorted.
    pub fn all_representatives(&self) -> Vec<Elem> {
        let mut all: Vec<Elem> = self.reps.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}
