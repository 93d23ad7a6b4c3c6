//! Square matrices over a [`FiniteRing`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{Elem, FiniteRing};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RMatrix {
    ring: Arc<FiniteRing>,
    n: usize,
    entries: Vec<Elem>,
}

// Equality, hashing and ordering look at (n, entries) only; callers keep
// matrices over one ring apart.
impl PartialEq for RMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for RMatrix {}

impl Hash for RMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl PartialOrd for RMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.entries).cmp(&(other.n, &other.entries))
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl RMatrix {
    pub fn new(ring: Arc<FiniteRing>, n: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(&e) = entries.iter().find(|&&e| e as usize >= ring.order()) {
            return Err(Error::BadInput(format!(
                "entry {e} is not an element of `{}`",
                ring.name()
            )));
        }
        Ok(RMatrix { ring, n, entries })
    }

    pub fn from_rows(ring: Arc<FiniteRing>, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix rows must form a square".into()));
        }
        Self::new(ring, n, rows.concat())
    }

    pub fn zero(ring: Arc<FiniteRing>, n: usize) -> Self {
        let z = ring.zero();
        RMatrix {
            ring,
            n,
            entries: vec![z; n * n],
        }
    }

    pub fn identity(ring: Arc<FiniteRing>, n: usize) -> Result<Self> {
        let one = ring.require_one()?;
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = one;
        }
        Ok(m)
    }

    /// `1 + a e_ij` (0-based, `i != j`).
    pub fn elementary(
        ring: Arc<FiniteRing>,
        n: usize,
        i: usize,
        j: usize,
        a: Elem,
    ) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::Dimension(format!(
                "elementary position ({i}, {j}) in size {n}"
            )));
        }
        let mut m = Self::identity(ring, n)?;
        m.entries[i * n + j] = a;
        Ok(m)
    }

    /// Identity with `u` at diagonal position `i`.
    pub fn diag_unit(ring: Arc<FiniteRing>, n: usize, i: usize, u: Elem) -> Result<Self> {
        let mut m = Self::identity(ring, n)?;
        m.entries[i * n + i] = u;
        Ok(m)
    }

    /// The matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(ring: Arc<FiniteRing>, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let one = ring.require_one()?;
        let mut seen = vec![false; n];
        let mut m = Self::zero(ring, n);
        for (j, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::BadInput(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
            m.entries[p * n + j] = one;
        }
        Ok(m)
    }

    /// `[[a, b], [c, d]]` from four `n x n` blocks.
    pub fn from_blocks(a: &RMatrix, b: &RMatrix, c: &RMatrix, d: &RMatrix) -> Result<Self> {
        let n = a.n;
        for m in [b, c, d] {
            a.check_compatible(m)?;
        }
        let mut out = Self::zero(a.ring.clone(), 2 * n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j));
                out.set(i, n + j, b.get(i, j));
                out.set(n + i, j, c.get(i, j));
                out.set(n + i, n + j, d.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|c| c.to_vec())
            .take(self.n)
            .collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    /// The top-left `k x k` block (`k <= n`).
    pub fn block(&self, row: usize, col: usize, k: usize) -> RMatrix {
        let mut out = Self::zero(self.ring.clone(), k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(row + i, col + j));
            }
        }
        out
    }

    fn check_compatible(&self, other: &RMatrix) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch(
                self.ring.name().into(),
                other.ring.name().into(),
            ));
        }
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &RMatrix) -> Result<RMatrix> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_add(&self, other: &RMatrix) -> Result<RMatrix> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |r, x, y| r.add(x, y)))
    }

    /// Panics on a ring or size mismatch; see [`RMatrix::checked_mul`].
    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        self.checked_mul(other)
            .expect("matrix product of incompatible operands")
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        self.checked_add(other)
            .expect("matrix sum of incompatible operands")
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        self.check_compatible(other)
            .expect("matrix difference of incompatible operands");
        self.zip_with(other, |r, x, y| r.sub(x, y))
    }

    pub fn neg(&self) -> RMatrix {
        let r = &self.ring;
        RMatrix {
            ring: r.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&x| r.neg(x)).collect(),
        }
    }

    fn zip_with(&self, other: &RMatrix, f: impl Fn(&FiniteRing, Elem, Elem) -> Elem) -> RMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| f(&self.ring, x, y))
            .collect();
        RMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &RMatrix) -> RMatrix {
        let n = self.n;
        let r = &*self.ring;
        let mut entries = vec![r.zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a == r.zero() {
                    continue;
                }
                for j in 0..n {
                    let e = &mut entries[i * n + j];
                    *e = r.add(*e, r.mul(a, other.entries[l * n + j]));
                }
            }
        }
        RMatrix {
            ring: self.ring.clone(),
            n,
            entries,
        }
    }

    /// Entrywise image under a carrier map into `target`.
    pub fn map_entries(&self, target: Arc<FiniteRing>, f: &[Elem]) -> RMatrix {
        let entries = self.entries.iter().map(|&x| f[x as usize]).collect();
        RMatrix {
            ring: target,
            n: self.n,
            entries,
        }
    }

    pub fn transpose(&self) -> RMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == self.ring.zero())
    }

    pub fn is_identity(&self) -> bool {
        let Some(one) = self.ring.one() else {
            return false;
        };
        let n = self.n;
        (0..n)
            .all(|i| (0..n).all(|j| self.get(i, j) == if i == j { one } else { self.ring.zero() }))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul_unchecked(self) == *self
    }

    /// Whether the matrix is `1 + a e_ij` for some `i != j` (the identity counts, with `a = 0`).
    pub fn is_elementary(&self) -> bool {
        let Some(one) = self.ring.one() else {
            return false;
        };
        let n = self.n;
        let z = self.ring.zero();
        let mut off = 0;
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if i == j {
                    if v != one {
                        return false;
                    }
                } else if v != z {
                    off += 1;
                }
            }
        }
        off <= 1
    }

    /// `g v` for a column vector `v`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let n = self.n;
        let r = &*self.ring;
        (0..n)
            .map(|i| {
                (0..n).fold(r.zero(), |acc, l| {
                    r.add(acc, r.mul(self.entries[i * n + l], v[l]))
                })
            })
            .collect()
    }

    /// Invertibility by bijectivity of `v -> g v` on all column vectors.
    ///
    /// The map is additive, so it is a bijection exactly when its kernel is trivial.
    pub fn is_invertible(&self) -> Result<bool> {
        self.ring.require_one()?;
        let n = self.n;
        let q = self.ring.order();
        let z = self.ring.zero();
        let mut v = vec![z; n];
        let mut digits = vec![0usize; n];
        loop {
            for (slot, &d) in v.iter_mut().zip(&digits) {
                *slot = d as Elem;
            }
            if v.iter().any(|&x| x != z) && self.apply(&v).iter().all(|&x| x == z) {
                return Ok(false);
            }
            let mut k = 0;
            while k < n {
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == n {
                return Ok(true);
            }
        }
    }

    /// The two-sided inverse, or `None` when `v -> g v` is not bijective.
    pub fn inverse(&self) -> Result<Option<RMatrix>> {
        let one = self.ring.require_one()?;
        let n = self.n;
        let q = self.ring.order();
        let total = q.checked_pow(n as u32).ok_or(Error::BudgetExceeded {
            estimated: u128::MAX,
            budget: 0,
        })?;
        let z = self.ring.zero();
        let mut preimage: Vec<Option<usize>> = vec![None; total];
        let encode = |w: &[Elem]| w.iter().rev().fold(0usize, |acc, &x| acc * q + x as usize);
        let decode = |mut c: usize| -> Vec<Elem> {
            (0..n)
                .map(|_| {
                    let d = (c % q) as Elem;
                    c /= q;
                    d
                })
                .collect()
        };
        for c in 0..total {
            let img = encode(&self.apply(&decode(c)));
            if preimage[img].is_some() {
                return Ok(None);
            }
            preimage[img] = Some(c);
        }
        let mut inv = Self::zero(self.ring.clone(), n);
        for j in 0..n {
            let mut e = vec![z; n];
            e[j] = one;
            let col = decode(preimage[encode(&e)].expect("bijection"));
            for (i, &x) in col.iter().enumerate() {
                inv.set(i, j, x);
            }
        }
        Ok(Some(inv))
    }

    pub fn inverse_or_err(&self) -> Result<RMatrix> {
        self.inverse()?.ok_or(Error::NotInvertible)
    }

    /// `diag(self, 0)` of size `m >= n`.
    pub fn pad(&self, m: usize) -> RMatrix {
        assert!(m >= self.n);
        let mut out = Self::zero(self.ring.clone(), m);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// `diag(self, 1, ..., 1)` of size `m >= n`.
    pub fn pad_identity(&self, m: usize) -> Result<RMatrix> {
        let one = self.ring.require_one()?;
        let mut out = self.pad(m);
        for i in self.n..m {
            out.set(i, i, one);
        }
        Ok(out)
    }

    /// Block sum `diag(a, b)`.
    pub fn block_diag(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
        if !same_ring(&a.ring, &b.ring) {
            return Err(Error::RingMismatch(
                a.ring.name().into(),
                b.ring.name().into(),
            ));
        }
        let (p, q) = (a.n, b.n);
        let mut out = Self::zero(a.ring.clone(), p + q);
        for i in 0..p {
            for j in 0..p {
                out.set(i, j, a.get(i, j));
            }
        }
        for i in 0..q {
            for j in 0..q {
                out.set(p + i, p + j, b.get(i, j));
            }
        }
        Ok(out)
    }

    /// The interleaved direct sum: after padding both to size `m = max(n_a, n_b)`,
    /// row/column order is `a_1, b_1, a_2, b_2, ...`.
    pub fn direct_sum(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
        Self::interleaved_sum(a, b, |k| 2 * k, |k| 2 * k + 1)
    }

    /// Direct sum along an arbitrary split of `0..2m` into the images of two
    /// injections `left` and `right`.
    pub fn interleaved_sum(
        a: &RMatrix,
        b: &RMatrix,
        left: impl Fn(usize) -> usize,
        right: impl Fn(usize) -> usize,
    ) -> Result<RMatrix> {
        if !same_ring(&a.ring, &b.ring) {
            return Err(Error::RingMismatch(
                a.ring.name().into(),
                b.ring.name().into(),
            ));
        }
        let m = a.n.max(b.n);
        let (a, b) = (a.pad(m), b.pad(m));
        let mut out = Self::zero(a.ring.clone(), 2 * m);
        for i in 0..m {
            for j in 0..m {
                out.set(left(i), left(j), a.get(i, j));
                out.set(right(i), right(j), b.get(i, j));
            }
        }
        Ok(out)
    }

    /// Big-endian base-|R| code of the entries; numeric order equals
    /// lexicographic order of the row-major entries.
    pub fn code(&self) -> u64 {
        let q = self.ring.order() as u64;
        self.entries.iter().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    pub fn from_code(ring: Arc<FiniteRing>, n: usize, mut code: u64) -> RMatrix {
        let q = ring.order() as u64;
        let mut entries = vec![0; n * n];
        for e in entries.iter_mut().rev() {
            *e = (code % q) as Elem;
            code /= q;
        }
        RMatrix { ring, n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(4).unwrap())
    }

    fn m(r: &Arc<FiniteRing>, rows: &[[Elem; 2]]) -> RMatrix {
        RMatrix::from_rows(
            r.clone(),
            &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn invertibility_over_z4() {
        let r = z4();
        let id = RMatrix::identity(r.clone(), 2).unwrap();
        assert_eq!(id.inverse().unwrap(), Some(id.clone()));
        assert!(!m(&r, &[[2, 0], [0, 1]]).is_invertible().unwrap());
        let u = m(&r, &[[1, 1], [0, 1]]);
        assert_eq!(u.inverse().unwrap(), Some(m(&r, &[[1, 3], [0, 1]])));
    }

    #[test]
    fn nonunital_ring_is_rejected() {
        let r = Arc::new(FiniteRing::square_zero(2).unwrap());
        let x = RMatrix::zero(r, 2);
        assert!(matches!(x.is_invertible(), Err(Error::NotUnital(_))));
    }

    #[test]
    fn invertibility_matches_search() {
        // Oracle: a two-sided inverse found by exhaustive search over all 2x2 matrices.
        for ring in [
            FiniteRing::zmod(2),
            FiniteRing::zmod(4),
            FiniteRing::gf(2, 2, &[1, 1, 1]),
            FiniteRing::zmod(3),
        ] {
            let r = Arc::new(ring.unwrap());
            let q = r.order() as u64;
            let all: Vec<RMatrix> = (0..q.pow(4))
                .map(|c| RMatrix::from_code(r.clone(), 2, c))
                .collect();
            let id = RMatrix::identity(r.clone(), 2).unwrap();
            for g in &all {
                let found = all.iter().find(|h| g.mul(h) == id && h.mul(g) == id);
                assert_eq!(g.is_invertible().unwrap(), found.is_some(), "{g:?}");
                assert_eq!(g.inverse().unwrap().as_ref(), found, "{g:?}");
            }
        }
    }

    #[test]
    fn direct_sum_shuffle() {
        let f2 = Arc::new(FiniteRing::zmod(2).unwrap());
        let one = RMatrix::identity(f2.clone(), 1).unwrap();
        let zero = RMatrix::zero(f2.clone(), 1);
        let s = RMatrix::direct_sum(&one, &zero).unwrap();
        assert_eq!(s.rows(), vec![vec![1, 0], vec![0, 0]]);
        assert!(RMatrix::direct_sum(&zero, &zero).unwrap().is_zero());
        assert!(RMatrix::direct_sum(&one, &one).unwrap().is_identity());

        let a = m(&f2, &[[1, 1], [0, 0]]);
        let s = RMatrix::direct_sum(&a, &one).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.get(0, 2), 1);
        assert_eq!(s.get(1, 1), 1);
        assert_eq!(s.get(3, 3), 0);
    }

    #[test]
    fn codes_roundtrip_and_order() {
        let r = z4();
        let a = m(&r, &[[0, 3], [1, 2]]);
        let b = m(&r, &[[1, 0], [0, 0]]);
        assert_eq!(RMatrix::from_code(r.clone(), 2, a.code()), a);
        assert_eq!(a.cmp(&b), a.code().cmp(&b.code()));
    }

    #[test]
    fn elementary_detection() {
        let r = z4();
        assert!(RMatrix::elementary(r.clone(), 3, 0, 2, 3)
            .unwrap()
            .is_elementary());
        assert!(!m(&r, &[[1, 1], [1, 1]]).is_elementary());
        assert!(!RMatrix::diag_unit(r.clone(), 2, 0, 3)
            .unwrap()
            .is_elementary());
        assert!(RMatrix::elementary(r, 2, 1, 1, 1).is_err());
    }
}
