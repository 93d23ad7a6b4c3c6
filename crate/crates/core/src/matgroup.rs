//! Finite groups of invertible matrices, stored as sorted matrix codes.
//!
//! A matrix over a ring of order `q` is identified with the big-endian
//! base-`q` number formed by its row-major entries (see [`RMatrix::code`]).

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::Context;
use crate::error::{check_budget, Error, Result};
use crate::ring::{Elem, FiniteRing, RMatrix};

pub const CACHE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Test every matrix for invertibility.
    Brute,
    /// Multiplicative closure of elementary, unit-diagonal and permutation generators.
    Generated,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Brute => "brute",
            Strategy::Generated => "generated",
        }
    }
}

/// Encodes, decodes and multiplies `n x n` matrices as integer codes.
#[derive(Clone, Debug)]
pub struct Codec {
    ring: Arc<FiniteRing>,
    n: usize,
}

impl Codec {
    pub fn new(ring: Arc<FiniteRing>, n: usize) -> Self {
        Codec { ring, n }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn decode_into(&self, mut code: u64, out: &mut [Elem]) {
        let q = self.ring.order() as u64;
        for e in out.iter_mut().rev() {
            *e = (code % q) as Elem;
            code /= q;
        }
    }

    fn encode(&self, entries: &[Elem]) -> u64 {
        let q = self.ring.order() as u64;
        entries.iter().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    pub fn matrix(&self, code: u64) -> RMatrix {
        RMatrix::from_code(self.ring.clone(), self.n, code)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let n = self.n;
        let r = &*self.ring;
        let mut x = [0 as Elem; 16];
        let mut y = [0 as Elem; 16];
        if n * n > 16 {
            return self.matrix(a).mul(&self.matrix(b)).code();
        }
        let (x, y) = (&mut x[..n * n], &mut y[..n * n]);
        self.decode_into(a, x);
        self.decode_into(b, y);
        let mut z = [r.zero(); 16];
        for i in 0..n {
            for l in 0..n {
                let xa = x[i * n + l];
                if xa == r.zero() {
                    continue;
                }
                for j in 0..n {
                    z[i * n + j] = r.add(z[i * n + j], r.mul(xa, y[l * n + j]));
                }
            }
        }
        self.encode(&z[..n * n])
    }
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    codec: Codec,
    elements: Vec<u64>,
    generators: Vec<RMatrix>,
    complete: bool,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    version: String,
    ring: String,
    n: usize,
    complete: bool,
    elements: Vec<u64>,
}

impl MatrixGroup {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.codec.ring()
    }

    pub fn n(&self) -> usize {
        self.codec.n
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sorted element codes.
    pub fn codes(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> &[RMatrix] {
        &self.generators
    }

    /// True for a brute-force enumeration of the full general linear group.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.elements.binary_search(&code).ok()
    }

    pub fn contains(&self, g: &RMatrix) -> bool {
        g.n() == self.n() && self.index_of(g.code()).is_some()
    }

    pub fn element(&self, i: usize) -> RMatrix {
        self.codec.matrix(self.elements[i])
    }

    pub fn matrices(&self) -> impl Iterator<Item = RMatrix> + '_ {
        self.elements.iter().map(|&c| self.codec.matrix(c))
    }

    /// Closure under products and inverses on `samples` random pairs.
    pub fn check_closed(&self, samples: usize, seed: u64) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let a = self.elements[rng.gen_range(0..self.len())];
            let b = self.elements[rng.gen_range(0..self.len())];
            let inv = self.codec.matrix(a).inverse().ok().flatten();
            self.index_of(self.codec.mul(a, b)).is_some() && inv.is_some_and(|h| self.contains(&h))
        })
    }

    fn to_stored(&self) -> Stored {
        Stored {
            version: CACHE_VERSION.into(),
            ring: self.ring().digest(),
            n: self.n(),
            complete: self.complete,
            elements: self.elements.clone(),
        }
    }
}

pub(crate) fn cache_load<T: DeserializeOwned>(ctx: &Context, key: &str) -> Option<T> {
    let cache = ctx.cache.as_ref()?;
    let bytes = cache.load(key)?;
    match serde_json::from_slice(&bytes) {
        Ok(v) => Some(v),
        Err(_) => {
            cache.evict(key);
            None
        }
    }
}

pub(crate) fn cache_store<T: Serialize>(ctx: &Context, key: &str, value: &T) {
    if let Some(cache) = &ctx.cache {
        if let Ok(bytes) = serde_json::to_vec(value) {
            cache.store(key, &bytes);
        }
    }
}

fn load_group(
    ctx: &Context,
    key: &str,
    codec: &Codec,
    generators: &[RMatrix],
) -> Option<MatrixGroup> {
    let stored: Stored = cache_load(ctx, key)?;
    let valid = stored.version == CACHE_VERSION
        && stored.ring == codec.ring.digest()
        && stored.n == codec.n
        && stored.elements.windows(2).all(|w| w[0] < w[1]);
    if !valid {
        if let Some(c) = &ctx.cache {
            c.evict(key);
        }
        return None;
    }
    Some(MatrixGroup {
        codec: codec.clone(),
        elements: stored.elements,
        generators: generators.to_vec(),
        complete: stored.complete,
    })
}

fn cache_key(kind: &str, ring: &FiniteRing, n: usize, strategy: Strategy) -> String {
    format!(
        "{kind}-{}-n{n}-{}-v{CACHE_VERSION}",
        &ring.digest()[..16],
        strategy.as_str()
    )
}

/// `1 + a e_ij` for all `i != j` and nonzero `a`.
pub fn elementary_generators(ring: &Arc<FiniteRing>, n: usize) -> Result<Vec<RMatrix>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for a in ring.elements().filter(|&a| a != ring.zero()) {
                out.push(RMatrix::elementary(ring.clone(), n, i, j, a)?);
            }
        }
    }
    Ok(out)
}

/// Elementary matrices, `diag(u, 1, ..., 1)` for units `u != 1`, and adjacent transpositions.
pub fn gl_generators(ring: &Arc<FiniteRing>, n: usize) -> Result<Vec<RMatrix>> {
    let one = ring.require_one()?;
    let mut out = elementary_generators(ring, n)?;
    if n >= 1 {
        for u in ring.units().into_iter().filter(|&u| u != one) {
            out.push(RMatrix::diag_unit(ring.clone(), n, 0, u)?);
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        out.push(RMatrix::permutation(ring.clone(), &perm)?);
    }
    Ok(out)
}

/// Right-multiplicative closure of `seed` under `gens`, sorted.
pub fn closure(codec: &Codec, seed: &[u64], gens: &[u64], limit: u128) -> Result<Vec<u64>> {
    let mut seen: HashSet<u64> = seed.iter().copied().collect();
    let mut frontier: Vec<u64> = seen.iter().copied().collect();
    while !frontier.is_empty() {
        let next: Vec<u64> = frontier
            .par_iter()
            .flat_map_iter(|&x| gens.iter().map(move |&g| codec.mul(x, g)))
            .collect();
        frontier = next.into_iter().filter(|&y| seen.insert(y)).collect();
        if seen.len() as u128 > limit {
            return Err(Error::BudgetExceeded {
                estimated: seen.len() as u128,
                budget: limit,
            });
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

pub fn enumerate_gl(
    ring: &Arc<FiniteRing>,
    n: usize,
    strategy: Strategy,
    ctx: &Context,
) -> Result<MatrixGroup> {
    ring.require_one()?;
    if n == 0 {
        return Err(Error::Dimension("GL_0".into()));
    }
    let codec = Codec::new(ring.clone(), n);
    let generators = gl_generators(ring, n)?;
    let key = cache_key("gl", ring, n, strategy);
    if let Some(g) = load_group(ctx, &key, &codec, &generators) {
        return Ok(g);
    }
    let group = match strategy {
        Strategy::Brute => {
            let total = check_budget(ring.order(), n * n, ctx.budget.gl_candidates)?;
            let elements: Vec<u64> = (0..total as u64)
                .into_par_iter()
                .filter(|&c| codec.matrix(c).is_invertible().unwrap_or(false))
                .collect();
            MatrixGroup {
                codec,
                elements,
                generators,
                complete: true,
            }
        }
        Strategy::Generated => {
            let id = RMatrix::identity(ring.clone(), n)?.code();
            let gens: Vec<u64> = generators.iter().map(RMatrix::code).collect();
            let elements = closure(&codec, &[id], &gens, ctx.budget.gl_candidates)?;
            MatrixGroup {
                codec,
                elements,
                generators,
                complete: false,
            }
        }
    };
    cache_store(ctx, &key, &group.to_stored());
    Ok(group)
}

/// Labels every element of `group` by its left coset `g H`; returns the labels
/// and the smallest element of each coset, in order of first appearance.
pub fn coset_labels(group: &MatrixGroup, sub: &[u64]) -> (Vec<u32>, Vec<u64>) {
    const NONE: u32 = u32::MAX;
    let mut labels = vec![NONE; group.len()];
    let mut reps = Vec::new();
    for i in 0..group.len() {
        if labels[i] != NONE {
            continue;
        }
        let g = group.elements[i];
        let label = reps.len() as u32;
        reps.push(g);
        let members: Vec<usize> = sub
            .par_iter()
            .map(|&h| {
                group
                    .index_of(group.codec.mul(g, h))
                    .expect("subgroup lies inside the group")
            })
            .collect();
        for m in members {
            labels[m] = label;
        }
    }
    (labels, reps)
}

/// Normal closure inside `inside` of the subgroup generated by the elementary matrices.
///
/// The subgroup `H` generated by the current generator list is enlarged by
/// conjugates `r t r^-1` (with `r` running over coset representatives of `H`)
/// until no new conjugate falls outside `H`.
pub fn elementary_closure(inside: &MatrixGroup, ctx: &Context) -> Result<MatrixGroup> {
    let ring = inside.ring().clone();
    let n = inside.n();
    let codec = inside.codec.clone();
    let generators = elementary_generators(&ring, n)?;
    let strategy = if inside.complete {
        Strategy::Brute
    } else {
        Strategy::Generated
    };
    let key = cache_key("enormal", &ring, n, strategy);
    if let Some(g) = load_group(ctx, &key, &codec, &generators) {
        return Ok(g);
    }
    let id = RMatrix::identity(ring.clone(), n)?.code();
    let mut gens: Vec<u64> = generators.iter().map(RMatrix::code).collect();
    let elements = loop {
        let h = closure(&codec, &[id], &gens, inside.len() as u128)?;
        let (_, reps) = coset_labels(inside, &h);
        let mut fresh = Vec::new();
        for &r in reps.iter().skip(1) {
            let r_inv = codec.matrix(r).inverse_or_err()?.code();
            for &t in &gens {
                let c = codec.mul(codec.mul(r, t), r_inv);
                if h.binary_search(&c).is_err() && !fresh.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            break h;
        }
        gens.extend(fresh);
    };
    let group = MatrixGroup {
        codec,
        elements,
        generators,
        complete: false,
    };
    cache_store(ctx, &key, &group.to_stored());
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(r: Result<FiniteRing>) -> Arc<FiniteRing> {
        Arc::new(r.unwrap())
    }

    #[test]
    fn gl_orders() {
        let ctx = Context::default();
        let f2 = ring(FiniteRing::zmod(2));
        assert_eq!(
            enumerate_gl(&f2, 2, Strategy::Brute, &ctx).unwrap().len(),
            6
        );
        let z4 = ring(FiniteRing::zmod(4));
        assert_eq!(
            enumerate_gl(&z4, 2, Strategy::Brute, &ctx).unwrap().len(),
            96
        );
        let f5 = ring(FiniteRing::zmod(5));
        let gl1 = enumerate_gl(&f5, 1, Strategy::Brute, &ctx).unwrap();
        assert_eq!(gl1.codes(), &[1, 2, 3, 4]);
        // |GL_2(F_3)| = 48
        let f3 = ring(FiniteRing::zmod(3));
        assert_eq!(
            enumerate_gl(&f3, 2, Strategy::Brute, &ctx).unwrap().len(),
            48
        );
    }

    #[test]
    fn generated_matches_brute_on_small_rings() {
        let ctx = Context::default();
        for r in [
            FiniteRing::zmod(2),
            FiniteRing::zmod(4),
            FiniteRing::zmod(6),
            FiniteRing::gf(2, 2, &[1, 1, 1]),
        ] {
            let r = ring(r);
            let b = enumerate_gl(&r, 2, Strategy::Brute, &ctx).unwrap();
            let g = enumerate_gl(&r, 2, Strategy::Generated, &ctx).unwrap();
            assert_eq!(b.codes(), g.codes(), "{}", r.name());
            assert!(b.complete() && !g.complete());
            assert!(b.check_closed(100, 7));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = Context::with_budget(crate::config::Budget {
            gl_candidates: 100,
            tensor_dim: 10,
        });
        let z4 = ring(FiniteRing::zmod(4));
        assert!(matches!(
            enumerate_gl(&z4, 2, Strategy::Brute, &ctx),
            Err(Error::BudgetExceeded {
                estimated: 256,
                budget: 100
            })
        ));
    }

    #[test]
    fn elementary_closures() {
        let ctx = Context::default();
        let f2 = ring(FiniteRing::zmod(2));
        let gl = enumerate_gl(&f2, 2, Strategy::Brute, &ctx).unwrap();
        assert_eq!(elementary_closure(&gl, &ctx).unwrap().len(), 6);

        let z4 = ring(FiniteRing::zmod(4));
        let gl = enumerate_gl(&z4, 2, Strategy::Brute, &ctx).unwrap();
        let e = elementary_closure(&gl, &ctx).unwrap();
        assert_eq!(gl.len() / e.len(), 2);

        let f3 = ring(FiniteRing::zmod(3));
        let gl = enumerate_gl(&f3, 2, Strategy::Brute, &ctx).unwrap();
        let e = elementary_closure(&gl, &ctx).unwrap();
        assert_eq!(e.len(), 24);
        // SL_2(F_3): every element has determinant 1.
        for g in e.matrices() {
            let det = f3.sub(
                f3.mul(g.get(0, 0), g.get(1, 1)),
                f3.mul(g.get(0, 1), g.get(1, 0)),
            );
            assert_eq!(det, 1);
        }
    }

    #[test]
    fn closure_is_normal() {
        let ctx = Context::default();
        let z4 = ring(FiniteRing::zmod(4));
        let gl = enumerate_gl(&z4, 2, Strategy::Brute, &ctx).unwrap();
        let e = elementary_closure(&gl, &ctx).unwrap();
        for g in gl.generators() {
            let gi = g.inverse_or_err().unwrap();
            for t in e.matrices() {
                assert!(e.contains(&g.mul(&t).mul(&gi)));
            }
        }
    }
}
