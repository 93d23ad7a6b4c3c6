//! Lazy `N x N` matrices over a finite ring: the cone-ring generators, finite
//! matrices, `phi^infinity`, and sums, products and transposes of these.
//! Indices are one-based; every entry query is exact.

mod index;
mod sums;

pub use index::IndexMap;
pub use sums::{
    alternative_split_check, box_plus, cone_suite, phi_operator_series, sum_ring_identities, Split,
    SumRingGenerators,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RMatrix};

/// Positions that may hold nonzero entries in one row or column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Finite(Vec<usize>),
    Infinite,
}

impl Support {
    fn union(self, other: Support) -> Support {
        match (self, other) {
            (Support::Finite(mut a), Support::Finite(b)) => {
                a.extend(b);
                a.sort_unstable();
                a.dedup();
                Support::Finite(a)
            }
            _ => Support::Infinite,
        }
    }

    fn contains(&self, q: usize) -> bool {
        match self {
            Support::Finite(v) => v.binary_search(&q).is_ok(),
            Support::Infinite => true,
        }
    }
}

/// Nonzeros per row (or column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountBound {
    Uniform(usize),
    LocallyFinite,
    Unbounded,
}

impl CountBound {
    fn plus(self, other: CountBound) -> CountBound {
        use CountBound::*;
        match (self, other) {
            (Uniform(a), Uniform(b)) => Uniform(a + b),
            (Unbounded, _) | (_, Unbounded) => Unbounded,
            _ => LocallyFinite,
        }
    }

    fn times(self, other: CountBound) -> CountBound {
        use CountBound::*;
        match (self, other) {
            (Uniform(a), Uniform(b)) => Uniform(a * b),
            (Unbounded, _) | (_, Unbounded) => Unbounded,
            _ => LocallyFinite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// Finitely many distinct entries and a uniform bound on nonzeros per row and column.
    Gamma,
    /// Finitely many nonzeros in each row and column.
    GammaEll,
    Unknown,
}

/// Compositional certificate for cone-ring membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub entry_values: Vec<Elem>,
    pub rows: CountBound,
    pub cols: CountBound,
}

impl Certificate {
    pub fn membership(&self) -> Membership {
        match (self.rows, self.cols) {
            (CountBound::Uniform(_), CountBound::Uniform(_)) => Membership::Gamma,
            (CountBound::Unbounded, _) | (_, CountBound::Unbounded) => Membership::Unknown,
            _ => Membership::GammaEll,
        }
    }
}

#[derive(Debug)]
enum Node {
    Identity,
    Zero,
    /// Matrix of `e_i -> e_f(i)`: a one at `(f(i), i)`.
    Isometry(IndexMap),
    /// Transpose of an isometry: a one at `(i, f(i))`.
    CoIsometry(IndexMap),
    /// Finite matrix placed in the top-left corner.
    Finite(RMatrix),
    Phi(RMatrix),
    /// All-ones diagonal blocks of sizes 1, 2, 3, ...
    GrowingBlocks,
    /// Ones along the whole first row.
    FirstRow,
    Sum(LazyMatrix, LazyMatrix),
    Product(LazyMatrix, LazyMatrix),
    Scale(Elem, LazyMatrix),
    Neg(LazyMatrix),
    Transpose(LazyMatrix),
    Cached(LazyMatrix, RwLock<HashMap<(usize, usize), Elem>>),
}

#[derive(Clone)]
pub struct LazyMatrix {
    ring: Arc<FiniteRing>,
    node: Arc<Node>,
}

impl fmt::Debug for LazyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Row index of `phi^infinity` block `k`, entry `i`: the index of
/// `beta_1^k beta_0 e_i`, namely `2^k (2i - 1) + 1`.
pub fn phi_index(k: u32, i: usize) -> usize {
    (1usize << k) * (2 * i - 1) + 1
}

/// The closed form `2^(k+1) i + 2^k - 1` as printed alongside the operator series.
pub fn printed_phi_index(k: u32, i: usize) -> usize {
    (1usize << (k + 1)) * i + (1usize << k) - 1
}

/// Inverse of [`phi_index`].
fn phi_decode(p: usize) -> Option<(u32, usize)> {
    if p < 2 {
        return None;
    }
    let x = p - 1;
    let k = x.trailing_zeros();
    Some((k, (x >> k).div_ceil(2)))
}

fn block_of(p: usize) -> (usize, usize) {
    let mut b = 1;
    let mut start = 1;
    while start + b <= p {
        start += b;
        b += 1;
    }
    (start, start + b - 1)
}

impl LazyMatrix {
    fn wrap(ring: &Arc<FiniteRing>, node: Node) -> Self {
        LazyMatrix {
            ring: ring.clone(),
            node: Arc::new(node),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Result<Self> {
        ring.require_one()?;
        Ok(Self::wrap(ring, Node::Identity))
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::wrap(ring, Node::Zero)
    }

    pub fn isometry(ring: &Arc<FiniteRing>, f: IndexMap) -> Result<Self> {
        ring.require_one()?;
        Ok(Self::wrap(ring, Node::Isometry(f)))
    }

    pub fn co_isometry(ring: &Arc<FiniteRing>, f: IndexMap) -> Result<Self> {
        ring.require_one()?;
        Ok(Self::wrap(ring, Node::CoIsometry(f)))
    }

    pub fn finite(m: &RMatrix) -> Self {
        Self::wrap(m.ring(), Node::Finite(m.clone()))
    }

    /// Matrix unit `e_{p,q}` (one-based) scaled by `a`.
    pub fn unit(ring: &Arc<FiniteRing>, p: usize, q: usize, a: Elem) -> Result<Self> {
        let n = p.max(q);
        let mut m = RMatrix::zero(ring.clone(), n);
        m.set(p - 1, q - 1, a);
        Ok(Self::finite(&m))
    }

    /// `sum_k beta_1^k beta_0 a alpha_0 alpha_1^k`, evaluated through its index family.
    pub fn phi_infinity(a: &LazyMatrix) -> Result<Self> {
        match &*a.node {
            Node::Finite(m) => Ok(Self::wrap(&a.ring, Node::Phi(m.clone()))),
            Node::Zero => Ok(a.clone()),
            _ => Err(Error::NotFiniteSupport),
        }
    }

    pub fn growing_blocks(ring: &Arc<FiniteRing>) -> Result<Self> {
        ring.require_one()?;
        Ok(Self::wrap(ring, Node::GrowingBlocks))
    }

    pub fn first_row(ring: &Arc<FiniteRing>) -> Result<Self> {
        ring.require_one()?;
        Ok(Self::wrap(ring, Node::FirstRow))
    }

    fn same_ring(&self, other: &LazyMatrix) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name().into(),
                other.ring.name().into(),
            ))
        }
    }

    pub fn add(&self, other: &LazyMatrix) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::wrap(
            &self.ring,
            Node::Sum(self.clone(), other.clone()),
        ))
    }

    pub fn sub(&self, other: &LazyMatrix) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LazyMatrix) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::wrap(
            &self.ring,
            Node::Product(self.clone(), other.clone()),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::wrap(&self.ring, Node::Neg(self.clone()))
    }

    pub fn scale(&self, a: Elem) -> Self {
        Self::wrap(&self.ring, Node::Scale(a, self.clone()))
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(&self.ring, Node::Transpose(self.clone()))
    }

    /// Same matrix, with entry queries memoized.
    pub fn cached(&self) -> Self {
        Self::wrap(
            &self.ring,
            Node::Cached(self.clone(), RwLock::new(HashMap::new())),
        )
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut out = Self::identity(&self.ring)?;
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Product of a nonempty list.
    pub fn product(factors: &[LazyMatrix]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::BadInput("empty product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.mul(f))
    }

    pub fn entry(&self, p: usize, q: usize) -> Result<Elem> {
        let r = &*self.ring;
        let one = || r.one().expect("generators need a unital ring");
        Ok(match &*self.node {
            Node::Identity => {
                if p == q {
                    one()
                } else {
                    r.zero()
                }
            }
            Node::Zero => r.zero(),
            Node::Isometry(f) => {
                if f.apply(q) == p {
                    one()
                } else {
                    r.zero()
                }
            }
            Node::CoIsometry(f) => {
                if f.apply(p) == q {
                    one()
                } else {
                    r.zero()
                }
            }
            Node::Finite(m) => {
                if p <= m.n() && q <= m.n() {
                    m.get(p - 1, q - 1)
                } else {
                    r.zero()
                }
            }
            Node::Phi(m) => match (phi_decode(p), phi_decode(q)) {
                (Some((k, i)), Some((l, j))) if k == l && i <= m.n() && j <= m.n() => {
                    m.get(i - 1, j - 1)
                }
                _ => r.zero(),
            },
            Node::GrowingBlocks => {
                if block_of(p) == block_of(q) {
                    one()
                } else {
                    r.zero()
                }
            }
            Node::FirstRow => {
                if p == 1 {
                    one()
                } else {
                    r.zero()
                }
            }
            Node::Sum(a, b) => r.add(a.entry(p, q)?, b.entry(p, q)?),
            Node::Neg(a) => r.neg(a.entry(p, q)?),
            Node::Scale(c, a) => r.mul(*c, a.entry(p, q)?),
            Node::Transpose(a) => a.entry(q, p)?,
            Node::Cached(a, cache) => {
                if let Some(&x) = cache.read().expect("cache lock").get(&(p, q)) {
                    return Ok(x);
                }
                let x = a.entry(p, q)?;
                cache.write().expect("cache lock").insert((p, q), x);
                x
            }
            Node::Product(a, b) => {
                let ks = match a.row_support(p) {
                    Support::Finite(ks) => ks,
                    Support::Infinite => match b.col_support(q) {
                        Support::Finite(ks) => ks,
                        Support::Infinite => return Err(Error::NotFiniteSupport),
                    },
                };
                let mut acc = r.zero();
                for k in ks {
                    let x = a.entry(p, k)?;
                    if x == r.zero() {
                        continue;
                    }
                    acc = r.add(acc, r.mul(x, b.entry(k, q)?));
                }
                acc
            }
        })
    }

    /// Columns that may be nonzero in row `p`.
    pub fn row_support(&self, p: usize) -> Support {
        match &*self.node {
            Node::Identity => Support::Finite(vec![p]),
            Node::Zero => Support::Finite(vec![]),
            Node::Isometry(f) => Support::Finite(f.preimage(p).into_iter().collect()),
            Node::CoIsometry(f) => Support::Finite(vec![f.apply(p)]),
            Node::Finite(m) => Support::Finite(if p <= m.n() {
                (1..=m.n()).collect()
            } else {
                vec![]
            }),
            Node::Phi(m) => Support::Finite(match phi_decode(p) {
                Some((k, i)) if i <= m.n() => (1..=m.n()).map(|j| phi_index(k, j)).collect(),
                _ => vec![],
            }),
            Node::GrowingBlocks => {
                let (s, e) = block_of(p);
                Support::Finite((s..=e).collect())
            }
            Node::FirstRow => {
                if p == 1 {
                    Support::Infinite
                } else {
                    Support::Finite(vec![])
                }
            }
            Node::Sum(a, b) => a.row_support(p).union(b.row_support(p)),
            Node::Neg(a) | Node::Scale(_, a) | Node::Cached(a, _) => a.row_support(p),
            Node::Transpose(a) => a.col_support(p),
            Node::Product(a, b) => match a.row_support(p) {
                Support::Finite(ks) => ks.into_iter().fold(Support::Finite(vec![]), |acc, k| {
                    acc.union(b.row_support(k))
                }),
                Support::Infinite => Support::Infinite,
            },
        }
    }

    /// Rows that may be nonzero in column `q`.
    pub fn col_support(&self, q: usize) -> Support {
        match &*self.node {
            Node::Identity => Support::Finite(vec![q]),
            Node::Zero => Support::Finite(vec![]),
            Node::Isometry(f) => Support::Finite(vec![f.apply(q)]),
            Node::CoIsometry(f) => Support::Finite(f.preimage(q).into_iter().collect()),
            // These supports are symmetric patterns.
            Node::Finite(_) | Node::Phi(_) | Node::GrowingBlocks => self.row_support(q),
            Node::FirstRow => Support::Finite(vec![1]),
            Node::Sum(a, b) => a.col_support(q).union(b.col_support(q)),
            Node::Neg(a) | Node::Scale(_, a) | Node::Cached(a, _) => a.col_support(q),
            Node::Transpose(a) => a.row_support(q),
            Node::Product(a, b) => match b.col_support(q) {
                Support::Finite(ks) => ks.into_iter().fold(Support::Finite(vec![]), |acc, k| {
                    acc.union(a.col_support(k))
                }),
                Support::Infinite => Support::Infinite,
            },
        }
    }

    pub fn certificate(&self) -> Certificate {
        let r = &*self.ring;
        let units = |values: Vec<Elem>| {
            let mut s: Vec<Elem> = values;
            s.push(r.zero());
            s.sort_unstable();
            s.dedup();
            s
        };
        let one = || r.one().expect("generators need a unital ring");
        match &*self.node {
            Node::Identity | Node::Isometry(_) | Node::CoIsometry(_) => Certificate {
                entry_values: units(vec![one()]),
                rows: CountBound::Uniform(1),
                cols: CountBound::Uniform(1),
            },
            Node::Zero => Certificate {
                entry_values: units(vec![]),
                rows: CountBound::Uniform(0),
                cols: CountBound::Uniform(0),
            },
            Node::Finite(m) | Node::Phi(m) => Certificate {
                entry_values: units(m.entries().to_vec()),
                rows: CountBound::Uniform(m.n()),
                cols: CountBound::Uniform(m.n()),
            },
            Node::GrowingBlocks => Certificate {
                entry_values: units(vec![one()]),
                rows: CountBound::LocallyFinite,
                cols: CountBound::LocallyFinite,
            },
            Node::FirstRow => Certificate {
                entry_values: units(vec![one()]),
                rows: CountBound::Unbounded,
                cols: CountBound::Uniform(1),
            },
            Node::Sum(a, b) => {
                let (ca, cb) = (a.certificate(), b.certificate());
                let values = ca
                    .entry_values
                    .iter()
                    .flat_map(|&x| cb.entry_values.iter().map(move |&y| r.add(x, y)));
                Certificate {
                    entry_values: units(values.collect()),
                    rows: ca.rows.plus(cb.rows),
                    cols: ca.cols.plus(cb.cols),
                }
            }
            Node::Neg(a) => {
                let c = a.certificate();
                Certificate {
                    entry_values: units(c.entry_values.iter().map(|&x| r.neg(x)).collect()),
                    ..c
                }
            }
            Node::Scale(s, a) => {
                let c = a.certificate();
                Certificate {
                    entry_values: units(c.entry_values.iter().map(|&x| r.mul(*s, x)).collect()),
                    ..c
                }
            }
            Node::Cached(a, _) => a.certificate(),
            Node::Transpose(a) => {
                let c = a.certificate();
                Certificate {
                    rows: c.cols,
                    cols: c.rows,
                    ..c
                }
            }
            Node::Product(a, b) => {
                let (ca, cb) = (a.certificate(), b.certificate());
                let products: BTreeSet<Elem> = ca
                    .entry_values
                    .iter()
                    .flat_map(|&x| cb.entry_values.iter().map(move |&y| r.mul(x, y)))
                    .collect();
                let terms = match ca.rows {
                    CountBound::Uniform(n) => n,
                    _ => r.order(),
                };
                let mut values: BTreeSet<Elem> = [r.zero()].into();
                for _ in 0..terms.min(r.order()) {
                    let next: BTreeSet<Elem> = values
                        .iter()
                        .flat_map(|&v| products.iter().map(move |&p| r.add(v, p)))
                        .collect();
                    let grown = next.len() > values.len();
                    values.extend(next);
                    if !grown {
                        break;
                    }
                }
                Certificate {
                    entry_values: values.into_iter().collect(),
                    rows: ca.rows.times(cb.rows),
                    cols: ca.cols.times(cb.cols),
                }
            }
        }
    }

    pub fn membership(&self) -> Membership {
        self.certificate().membership()
    }

    /// Exact top-left `n x n` corner.
    pub fn window(&self, n: usize) -> Result<RMatrix> {
        let rows: Vec<Vec<Elem>> = (1..=n)
            .into_par_iter()
            .map(|p| (1..=n).map(|q| self.entry(p, q)).collect())
            .collect::<Result<_>>()?;
        RMatrix::from_rows(self.ring.clone(), &rows)
    }

    /// Largest `m` such that rows `1..=m` only reach columns `<= n`.
    pub fn certified_rows(&self, n: usize) -> usize {
        (1..=n)
            .find(|&p| match self.row_support(p) {
                Support::Finite(v) => v.last().is_some_and(|&q| q > n),
                Support::Infinite => true,
            })
            .map_or(n, |p| p - 1)
    }

    /// Randomly probes entries outside the declared supports; returns a nonzero found there.
    pub fn probe_supports(
        &self,
        probes: usize,
        limit: usize,
        seed: u64,
    ) -> Result<Option<(usize, usize)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..probes {
            let p = rng.gen_range(1..=limit);
            let q = rng.gen_range(1..=limit);
            let outside = !self.row_support(p).contains(q) || !self.col_support(q).contains(p);
            if outside && self.entry(p, q)? != self.ring.zero() {
                return Ok(Some((p, q)));
            }
        }
        Ok(None)
    }

    pub fn describe(&self) -> String {
        match &*self.node {
            Node::Identity => "1".into(),
            Node::Zero => "0".into(),
            Node::Isometry(f) => format!("iso[{f}]"),
            Node::CoIsometry(f) => format!("iso[{f}]^t"),
            Node::Finite(m) => format!("finite{:?}", m.rows()),
            Node::Phi(m) => format!("phi_inf(finite{:?})", m.rows()),
            Node::GrowingBlocks => "growing_blocks".into(),
            Node::FirstRow => "first_row".into(),
            Node::Sum(a, b) => format!("({} + {})", a.describe(), b.describe()),
            Node::Product(a, b) => format!("{} {}", a.describe(), b.describe()),
            Node::Scale(c, a) => format!("{c}*({})", a.describe()),
            Node::Neg(a) => format!("-({})", a.describe()),
            Node::Transpose(a) => format!("({})^t", a.describe()),
            Node::Cached(a, _) => a.describe(),
        }
    }
}

/// First entry in the `n`-window where `a` and `b` differ, as `(p, q, a_pq, b_pq)`.
pub fn window_mismatch(
    a: &LazyMatrix,
    b: &LazyMatrix,
    n: usize,
) -> Result<Option<(usize, usize, Elem, Elem)>> {
    let (wa, wb) = (a.window(n)?, b.window(n)?);
    for p in 0..n {
        for q in 0..n {
            if wa.get(p, q) != wb.get(p, q) {
                return Ok(Some((p + 1, q + 1, wa.get(p, q), wb.get(p, q))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(2).unwrap())
    }

    #[test]
    fn identity_window() {
        let r = f2();
        assert!(LazyMatrix::identity(&r)
            .unwrap()
            .window(3)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn alpha0_window() {
        let r = f2();
        let alpha0 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, 0)).unwrap();
        let w = alpha0.window(4).unwrap();
        let ones: Vec<(usize, usize)> = (0..4)
            .flat_map(|p| (0..4).map(move |q| (p, q)))
            .filter(|&(p, q)| w.get(p, q) == 1)
            .collect();
        assert_eq!(ones, vec![(0, 1), (1, 3)]);
    }

    #[test]
    fn beta0_alpha0_projects_onto_even_rows() {
        let r = f2();
        let alpha0 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, 0)).unwrap();
        let beta0 = alpha0.transpose();
        let w = beta0.mul(&alpha0).unwrap().window(8).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                let expected = u32::from(p == q && (p + 1) % 2 == 0);
                assert_eq!(w.get(p, q), expected);
            }
        }
    }

    #[test]
    fn phi_indices_are_injective() {
        let mut seen = BTreeSet::new();
        for k in 0..8 {
            for i in 1..40 {
                assert!(seen.insert(phi_index(k, i)));
                assert_eq!(phi_decode(phi_index(k, i)), Some((k, i)));
            }
        }
        let mut printed = BTreeSet::new();
        for k in 0..8 {
            for i in 1..40 {
                assert!(printed.insert(printed_phi_index(k, i)));
            }
        }
    }

    #[test]
    fn phi_of_corner_unit() {
        let r = f2();
        let e11 = LazyMatrix::unit(&r, 1, 1, 1).unwrap();
        let phi = LazyMatrix::phi_infinity(&e11).unwrap();
        let w = phi.window(64).unwrap();
        let diag: Vec<usize> = (0..64)
            .filter(|&p| w.get(p, p) == 1)
            .map(|p| p + 1)
            .collect();
        assert_eq!(diag, vec![2, 3, 5, 9, 17, 33]);
        let printed: Vec<usize> = (0..5).map(|k| printed_phi_index(k, 1)).collect();
        assert_eq!(printed, vec![2, 5, 11, 23, 47]);
    }

    #[test]
    fn membership_certificates() {
        let r = f2();
        let alpha0 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, 0)).unwrap();
        assert_eq!(alpha0.membership(), Membership::Gamma);
        let e11 = LazyMatrix::unit(&r, 1, 1, 1).unwrap();
        let phi = LazyMatrix::phi_infinity(&e11).unwrap();
        let cert = phi.certificate();
        assert_eq!(cert.entry_values, vec![0, 1]);
        assert_eq!(cert.rows, CountBound::Uniform(1));
        assert_eq!(cert.membership(), Membership::Gamma);
        assert_eq!(e11.membership(), Membership::Gamma);
        assert_eq!(alpha0.mul(&phi).unwrap().membership(), Membership::Gamma);
        let blocks = LazyMatrix::growing_blocks(&r).unwrap();
        assert_eq!(blocks.membership(), Membership::GammaEll);
        assert_eq!(
            blocks.mul(&alpha0).unwrap().membership(),
            Membership::GammaEll
        );
        assert_eq!(
            LazyMatrix::first_row(&r).unwrap().membership(),
            Membership::Unknown
        );
    }

    #[test]
    fn supports_are_sound() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        let alpha1 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, -1)).unwrap();
        let e12 = LazyMatrix::unit(&r, 1, 2, 3).unwrap();
        let phi = LazyMatrix::phi_infinity(&e12).unwrap();
        let blocks = LazyMatrix::growing_blocks(&r).unwrap();
        for m in [
            alpha1.clone(),
            phi.clone(),
            blocks.clone(),
            alpha1.mul(&phi).unwrap().add(&blocks).unwrap(),
        ] {
            assert_eq!(m.probe_supports(1000, 80, 11).unwrap(), None, "{m:?}");
        }
    }

    #[test]
    fn infinite_product_rejected() {
        let r = f2();
        let row = LazyMatrix::first_row(&r).unwrap();
        let p = row.mul(&row.transpose()).unwrap();
        assert_eq!(p.entry(1, 1), Err(Error::NotFiniteSupport));
        assert!(LazyMatrix::phi_infinity(&row).is_err());
    }

    #[test]
    fn cached_matches_uncached() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        let alpha1 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, -1)).unwrap();
        let m = LazyMatrix::phi_infinity(&LazyMatrix::unit(&r, 2, 1, 3).unwrap())
            .unwrap()
            .mul(&alpha1.transpose())
            .unwrap();
        let c = m.cached();
        assert_eq!(c.window(20).unwrap(), m.window(20).unwrap());
        assert_eq!(c.window(20).unwrap(), m.window(20).unwrap());
    }

    #[test]
    fn certified_rows_of_shift() {
        let r = f2();
        let alpha0 = LazyMatrix::co_isometry(&r, IndexMap::affine(2, 0)).unwrap();
        assert_eq!(alpha0.certified_rows(16), 8);
    }
}
