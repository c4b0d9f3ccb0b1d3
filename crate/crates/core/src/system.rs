//! Linear systems whose equations are the coefficients of algebra-valued residuals.
//!
//! A residual function takes a choice of unknowns and returns a list of
//! [`AlgElem`]s that must all vanish. The function must be affine in the
//! unknowns; its matrix is recovered by evaluating at zero and at each unit
//! vector. Each monomial coefficient of each residual becomes one row.

use std::collections::BTreeMap;

use crate::linalg::{Echelon, SparseRow};
use crate::qalgebra::AlgElem;
use crate::scalar::QField;

/// Row key: residual index and monomial.
type RowKey = (usize, i64, i64);

#[derive(Debug, Clone)]
pub struct ResidualSystem<F> {
    unknowns: usize,
    rows: BTreeMap<RowKey, SparseRow<F>>,
    constant: BTreeMap<RowKey, F>,
}

fn accumulate<F: QField>(
    rows: &mut BTreeMap<RowKey, SparseRow<F>>,
    residuals: &[AlgElem<F>],
    base: &[AlgElem<F>],
    col: usize,
) {
    for (idx, r) in residuals.iter().enumerate() {
        let diff = match base.get(idx) {
            Some(b) => r - b,
            None => r.clone(),
        };
        for (&(p, t), c) in diff.terms() {
            rows.entry((idx, p, t)).or_default().insert(col, c.clone());
        }
    }
}

impl<F: QField> ResidualSystem<F> {
    /// `eval(None)` is the residual at the zero vector, `eval(Some(i))` at the
    /// `i`-th unit vector.
    pub fn assemble(unknowns: usize, eval: impl Fn(Option<usize>) -> Vec<AlgElem<F>>) -> Self {
        let base = eval(None);
        let mut rows = BTreeMap::new();
        for col in 0..unknowns {
            accumulate(&mut rows, &eval(Some(col)), &base, col);
        }
        let mut constant = BTreeMap::new();
        for (idx, r) in base.iter().enumerate() {
            for (&(p, t), c) in r.terms() {
                constant.insert((idx, p, t), c.clone());
            }
        }
        ResidualSystem {
            unknowns,
            rows,
            constant,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows
            .keys()
            .chain(self.constant.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    }

    /// Echelon form of the homogeneous part.
    pub fn echelon(&self) -> Echelon<F> {
        Echelon::reduce(self.rows.values().cloned().collect(), self.unknowns)
    }

    /// Basis of the solutions of the homogeneous part.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.echelon().nullspace()
    }

    /// A solution of the affine system (free unknowns zero), or `None`.
    pub fn particular(&self) -> Option<Vec<F>> {
        let mut all: BTreeMap<RowKey, SparseRow<F>> = self.rows.clone();
        for (k, c) in &self.constant {
            all.entry(*k).or_default().insert(self.unknowns, c.clone());
        }
        Echelon::reduce(all.into_values().collect(), self.unknowns + 1).particular(self.unknowns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, RatFunc};

    type G = AlgElem<RatFunc>;

    #[test]
    fn affine_system() {
        // unknowns u0, u1 with residual (u0 + u1 - 1) x + (u0 - u1) y
        let sys = ResidualSystem::assemble(2, |u| {
            let (a, b) = match u {
                None => (0, 0),
                Some(0) => (1, 0),
                Some(_) => (0, 1),
            };
            let cx = RatFunc::from_int(a + b - 1);
            let cy = RatFunc::from_int(a - b);
            vec![&G::monomial(1, 0, cx) + &G::monomial(0, 1, cy)]
        });
        assert!(sys.nullspace().is_empty());
        let half = RatFunc::from_int(1)
            .checked_div(&RatFunc::from_int(2))
            .unwrap();
        assert_eq!(sys.particular().unwrap(), vec![half.clone(), half]);
    }

    #[test]
    fn inconsistent() {
        let sys = ResidualSystem::<RatFunc>::assemble(1, |u| match u {
            None => vec![G::one(), G::x()],
            Some(_) => vec![&G::one() + &G::one(), G::x()],
        });
        assert!(sys.particular().is_none());
    }
}
