//! Sparse exact linear algebra over a field.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::FieldScalar;

/// Sparse vector: index -> nonzero coefficient.
pub type SparseVec<F> = BTreeMap<usize, F>;

pub(crate) fn axpy<F: FieldScalar>(y: &mut SparseVec<F>, a: &F, x: &SparseVec<F>) {
    for (&i, v) in x {
        let sum = y.get(&i).cloned().unwrap_or_else(F::zero) + a.clone() * v.clone();
        if sum.is_zero() {
            y.remove(&i);
        } else {
            y.insert(i, sum);
        }
    }
}

/// Incremental row echelon basis; pivots are the first nonzero index.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: FieldScalar> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            pivots: HashMap::new(),
        }
    }
}

impl<F: FieldScalar> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0;
        while let Some((&p, c)) = v.range(cursor..).next() {
            match self.pivots.get(&p) {
                Some(row) => {
                    let factor = F::zero() - c.clone();
                    axpy(&mut v, &factor, row);
                }
                None => cursor = p + 1,
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.inv();
        let row = v.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        self.pivots.insert(p, row);
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank<F: FieldScalar>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::default();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Ratio<i64>> {
        entries
            .iter()
            .map(|&(i, x)| (i, Ratio::from_integer(x)))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            v(&[(0, 1), (1, 2)]),
            v(&[(0, 2), (1, 4)]),
            v(&[(1, 1), (2, 3)]),
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::default();
        e.insert(v(&[(0, 1), (2, 1)]));
        e.insert(v(&[(1, 1)]));
        assert!(e.contains(v(&[(0, 3), (1, -2), (2, 3)])));
        assert!(!e.contains(v(&[(2, 1)])));
    }
}
