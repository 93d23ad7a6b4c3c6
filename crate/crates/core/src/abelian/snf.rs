//! Smith normal form with unimodular transforms.

use super::intmat::IntMat;
use crate::scalar::IntegerScalar;

/// Result of [`smith_normal_form`]: `u * m * v == diag(factors)` (padded to the shape of `m`).
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    /// Diagonal entries d_1 | d_2 | ... | d_r, r = min(rows, cols); zeros come last.
    pub factors: Vec<T>,
    pub u: IntMat<T>,
    pub v: IntMat<T>,
    pub v_inv: IntMat<T>,
}

impl<T: IntegerScalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the shape of the input.
    pub fn diagonal(&self) -> IntMat<T> {
        let mut d = IntMat::zeros(self.u.rows(), self.v.rows());
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

pub fn smith_normal_form<T: IntegerScalar>(m: &IntMat<T>) -> SmithForm<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);
    let r = rows.min(cols);

    for t in 0..r {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;

            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let k = -q;
                a.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let k = -q.clone();
                a.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                v_inv.add_row_multiple(t, j, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Row and column are clear; enforce divisibility of the rest.
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let factors = (0..r).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        factors,
        u,
        v,
        v_inv,
    }
}

fn min_abs_entry<T: IntegerScalar>(a: &IntMat<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
