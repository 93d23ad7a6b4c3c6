//! Row-style Hermite normal form and integer lattice helpers.

use super::intmat::IntMat;
use crate::scalar::IntegerScalar;

/// `h == u * m`, `u` unimodular, `h` in row echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteForm<T> {
    pub h: IntMat<T>,
    pub u: IntMat<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form<T: IntegerScalar>(m: &IntMat<T>) -> HermiteForm<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down column c among rows r.. until one nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Canonical basis of the lattice spanned by `rows` (nonzero HNF rows).
pub fn lattice_basis<T: IntegerScalar>(rows: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    let m = IntMat::from_rows(rows.to_vec(), dim);
    let hf = hermite_normal_form(&m);
    (0..hf.rank).map(|i| hf.h.row(i).to_vec()).collect()
}

/// Basis of `{x : x * m == 0}` (row vectors of length `m.rows()`).
pub fn left_kernel<T: IntegerScalar>(m: &IntMat<T>) -> Vec<Vec<T>> {
    let hf = hermite_normal_form(m);
    (hf.rank..m.rows()).map(|i| hf.u.row(i).to_vec()).collect()
}

/// Whether `v` lies in the lattice with HNF basis `basis` (as returned by [`lattice_basis`]).
pub fn lattice_contains<T: IntegerScalar>(basis: &[Vec<T>], v: &[T]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[c].is_zero() {
            continue;
        }
        let (q, rem) = w[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        for (wj, rj) in w.iter_mut().zip(row) {
            *wj = wj.clone() - q.clone() * rj.clone();
        }
    }
    w.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_transform_certifies() {
        let m = IntMat::<i64>::from_i64_rows(&[vec![2, 3, 6], vec![4, 1, 2], vec![6, 4, 8]], 3);
        let hf = hermite_normal_form(&m);
        assert_eq!(hf.u.mul(&m), hf.h);
        assert_eq!(hf.u.determinant().abs(), 1);
        assert_eq!(hf.rank, 2);
    }

    #[test]
    fn kernel_and_membership() {
        let m = IntMat::<i64>::from_i64_rows(&[vec![1, 2], vec![2, 4], vec![0, 3]], 2);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let km = IntMat::from_rows(k.clone(), 3).mul(&m);
        assert!(km.is_zero());

        let basis = lattice_basis(&[vec![2i64, 0], vec![0, 3]], 2);
        assert!(lattice_contains(&basis, &[4, -9]));
        assert!(!lattice_contains(&basis, &[1, 0]));
    }

    #[test]
    fn basis_is_canonical() {
        let a = lattice_basis(&[vec![2i64, 4], vec![0, 6]], 2);
        let b = lattice_basis(&[vec![2i64, 10], vec![2, 4], vec![0, 12]], 2);
        assert_eq!(a, b);
    }
}
