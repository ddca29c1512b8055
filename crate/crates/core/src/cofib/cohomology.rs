use std::collections::HashMap;

use super::{
    baer_sum, extract_factor_system, fiber_classify, unit_shifts, Classification, ClassifyMode,
    CofibError, FactorSystem,
};
use crate::action::Semimodule;
use crate::extension::Extension;
use crate::finmon::{Elem, FiniteMonoid};

/// The least factor system in the shift orbit of `g`.
pub fn orbit_minimum(g: &FactorSystem) -> FactorSystem {
    unit_shifts(g.semimodule())
        .iter()
        .map(|d| g.shift(d))
        .min_by(|a, b| a.table().cmp(b.table()))
        .expect("the zero shift is always present")
}

/// The class of an extension in a classification, via its factor system.
pub fn class_of(c: &Classification, e: &Extension) -> Result<Option<usize>, CofibError> {
    let g = orbit_minimum(&extract_factor_system(e)?);
    Ok(c.classes.iter().position(|r| r == &g))
}

/// Fibre classes under Baer sum.
#[derive(Clone, Debug)]
pub struct CohomologyMonoid {
    pub classification: Classification,
    pub extensions: Vec<Extension>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

pub fn cohomology_monoid(
    s: &Semimodule,
    mode: ClassifyMode,
) -> Result<CohomologyMonoid, CofibError> {
    let classification = fiber_classify(s, mode)?;
    let extensions = classification.extensions()?;
    let index: HashMap<&[Elem], usize> = classification
        .classes
        .iter()
        .enumerate()
        .map(|(i, g)| (g.table(), i))
        .collect();
    let n = extensions.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let sum = baer_sum(&extensions[i], &extensions[j])?;
            let g = orbit_minimum(&extract_factor_system(&sum)?);
            table[i][j] = *index
                .get(g.table())
                .ok_or(CofibError::NotWellDefined("class of a Baer sum"))?;
        }
    }
    let unit = *index
        .get(FactorSystem::zero(s).table())
        .ok_or(CofibError::NotWellDefined("split class"))?;
    let cm = CohomologyMonoid {
        classification,
        extensions,
        table,
        unit,
    };
    cm.check_laws()?;
    Ok(cm)
}

impl CohomologyMonoid {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn check_laws(&self) -> Result<(), CofibError> {
        let n = self.len();
        let t = &self.table;
        for i in 0..n {
            if t[self.unit][i] != i {
                return Err(CofibError::NotWellDefined("unit law of the Baer sum"));
            }
            for j in 0..n {
                if t[i][j] != t[j][i] {
                    return Err(CofibError::NotWellDefined("commutativity of the Baer sum"));
                }
                for k in 0..n {
                    if t[t[i][j]][k] != t[i][t[j][k]] {
                        return Err(CofibError::NotWellDefined("associativity of the Baer sum"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The table as a monoid; the split class is class 0.
    pub fn as_monoid(&self) -> Result<FiniteMonoid, CofibError> {
        Ok(FiniteMonoid::from_flat(self.len(), self.table.concat())?)
    }
}
