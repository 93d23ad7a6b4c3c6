//! K_0 of a finite unital ring: idempotent matrices up to conjugation,
//! the direct-sum monoid, and its group completion.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelian::{group_from_presentation, Coords, IntMatrix, PresentedAbelianGroup};
use crate::config::Context;
use crate::error::{check_budget, Error, Result};
use crate::matgroup::{cache_load, cache_store, gl_generators, Codec, CACHE_VERSION};
use crate::ring::{Elem, FiniteRing, RMatrix};

#[derive(Clone, Debug)]
pub struct IdempotentClass {
    /// Lexicographically least member among those of minimal size.
    pub representative: RMatrix,
    pub level: usize,
    pub orbit_size_at_level: usize,
}

#[derive(Clone, Debug)]
pub struct DirectSumMonoid {
    pub classes: Vec<IdempotentClass>,
    /// `(i, j) -> k` with `class(e_i + e_j) = k`, recorded when `level_i + level_j <= n_max`
    /// and whenever one side is the zero class.
    pub sum_table: BTreeMap<(usize, usize), usize>,
    pub zero_class: usize,
    pub certified_to: usize,
    pub stabilized: bool,
}

#[derive(Clone, Debug)]
pub struct K0Report {
    pub ring: Arc<FiniteRing>,
    pub n_max: usize,
    pub monoid: DirectSumMonoid,
    /// Presented on the classes, in order.
    pub k0: PresentedAbelianGroup,
    pub rank_map_iso: bool,
    /// Class index of every idempotent at level `n_max`, by code.
    lookup: HashMap<u64, usize>,
}

/// All idempotents of `M_n(r)` in lexicographic order.
pub fn enumerate_idempotents(r: &Arc<FiniteRing>, n: usize, ctx: &Context) -> Result<Vec<RMatrix>> {
    Ok(idempotent_codes(r, n, ctx)?
        .into_iter()
        .map(|c| RMatrix::from_code(r.clone(), n, c))
        .collect())
}

fn idempotent_codes(r: &Arc<FiniteRing>, n: usize, ctx: &Context) -> Result<Vec<u64>> {
    r.require_one()?;
    let total = check_budget(r.order(), n * n, ctx.budget.gl_candidates)?;
    let codec = Codec::new(r.clone(), n);
    Ok((0..total as u64)
        .into_par_iter()
        .filter(|&c| codec.mul(c, c) == c)
        .collect())
}

/// Partition of `idems` into orbits under conjugation by the standard
/// generators of `GL_n` and their inverses. Orbits are sorted internally and
/// listed by their least member.
pub fn conjugation_orbits(
    idems: &[RMatrix],
    r: &Arc<FiniteRing>,
    n: usize,
) -> Result<Vec<Vec<RMatrix>>> {
    let codes: Vec<u64> = idems.iter().map(RMatrix::code).collect();
    Ok(orbit_codes(&codes, r, n)?
        .into_iter()
        .map(|o| {
            o.into_iter()
                .map(|c| RMatrix::from_code(r.clone(), n, c))
                .collect()
        })
        .collect())
}

fn orbit_codes(idems: &[u64], r: &Arc<FiniteRing>, n: usize) -> Result<Vec<Vec<u64>>> {
    let codec = Codec::new(r.clone(), n);
    let mut conj = Vec::new();
    for g in gl_generators(r, n)? {
        let gi = g.inverse_or_err()?;
        conj.push((g.code(), gi.code()));
        conj.push((gi.code(), g.code()));
    }
    let mut sorted = idems.to_vec();
    sorted.sort_unstable();
    let mut orbit_of: HashMap<u64, usize> = HashMap::with_capacity(sorted.len());
    let mut orbits = Vec::new();
    for &start in &sorted {
        if orbit_of.contains_key(&start) {
            continue;
        }
        let id = orbits.len();
        orbit_of.insert(start, id);
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &(g, gi) in &conj {
                let y = codec.mul(codec.mul(g, x), gi);
                if let std::collections::hash_map::Entry::Vacant(v) = orbit_of.entry(y) {
                    v.insert(id);
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(orbits)
}

fn cached_orbits(r: &Arc<FiniteRing>, n: usize, ctx: &Context) -> Result<Vec<Vec<u64>>> {
    #[derive(Serialize, Deserialize)]
    struct Stored {
        version: String,
        ring: String,
        n: usize,
        orbits: Vec<Vec<u64>>,
    }
    let key = format!("orbits-{}-n{n}-v{CACHE_VERSION}", &r.digest()[..16]);
    if let Some(s) = cache_load::<Stored>(ctx, &key) {
        if s.version == CACHE_VERSION && s.ring == r.digest() && s.n == n {
            return Ok(s.orbits);
        }
        if let Some(c) = &ctx.cache {
            c.evict(&key);
        }
    }
    let idems = idempotent_codes(r, n, ctx)?;
    let orbits = orbit_codes(&idems, r, n)?;
    cache_store(
        ctx,
        &key,
        &Stored {
            version: CACHE_VERSION.into(),
            ring: r.digest(),
            n,
            orbits: orbits.clone(),
        },
    );
    Ok(orbits)
}

/// Smallest `l` such that `e` is `diag(e', 0)` with `e'` of size `l`.
fn effective_size(e: &RMatrix) -> usize {
    let z = e.ring().zero();
    let n = e.n();
    (0..=n)
        .rev()
        .find(|&l| l == 0 || (0..n).any(|k| e.get(l - 1, k) != z || e.get(k, l - 1) != z))
        .unwrap_or(0)
}

pub fn k0_report(r: &Arc<FiniteRing>, n_max: usize, ctx: &Context) -> Result<K0Report> {
    r.require_one()?;
    if n_max == 0 {
        return Err(Error::Dimension("n_max must be at least 1".into()));
    }
    check_budget(r.order(), n_max * n_max, ctx.budget.gl_candidates)?;
    let levels: Vec<Vec<Vec<u64>>> = (1..=n_max)
        .map(|l| cached_orbits(r, l, ctx))
        .collect::<Result<_>>()?;
    let top = &levels[n_max - 1];

    let mut classes = Vec::with_capacity(top.len());
    for orbit in top {
        let mats: Vec<RMatrix> = orbit
            .iter()
            .map(|&c| RMatrix::from_code(r.clone(), n_max, c))
            .collect();
        let level = mats.iter().map(effective_size).min().unwrap_or(0).max(1);
        let rep = mats
            .iter()
            .filter(|m| effective_size(m) <= level)
            .map(|m| m.block(0, 0, level))
            .min()
            .expect("orbit is nonempty");
        let code = rep.code();
        let orbit_size_at_level = levels[level - 1]
            .iter()
            .find(|o| o.binary_search(&code).is_ok())
            .map_or(0, Vec::len);
        classes.push((
            IdempotentClass {
                representative: rep,
                level,
                orbit_size_at_level,
            },
            orbit,
        ));
    }
    classes.sort_by(|a, b| (a.0.level, &a.0.representative).cmp(&(b.0.level, &b.0.representative)));
    let mut lookup = HashMap::new();
    for (i, (_, orbit)) in classes.iter().enumerate() {
        for &c in orbit.iter() {
            lookup.insert(c, i);
        }
    }
    let classes: Vec<IdempotentClass> = classes.into_iter().map(|(c, _)| c).collect();
    let class_of = |e: &RMatrix| lookup[&e.pad(n_max).code()];

    let zero_class = class_of(&RMatrix::zero(r.clone(), 1));
    let mut sum_table = BTreeMap::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i == zero_class {
                sum_table.insert((i, j), j);
            } else if j == zero_class {
                sum_table.insert((i, j), i);
            } else if a.level + b.level <= n_max {
                let s = RMatrix::block_diag(&a.representative, &b.representative)?;
                sum_table.insert((i, j), class_of(&s));
            }
        }
    }

    let m = classes.len();
    let rows: Vec<Vec<BigInt>> = sum_table
        .iter()
        .map(|(&(i, j), &k)| {
            let mut row = vec![BigInt::from(0); m];
            row[i] += 1;
            row[j] += 1;
            row[k] -= 1;
            row
        })
        .collect();
    let k0 = group_from_presentation(m, &IntMatrix::from_rows(rows, m));

    let stabilized = n_max >= 2
        && (0..m).filter(|&c| classes[c].level == n_max).all(|c| {
            sum_table.iter().any(|(&(i, j), &k)| {
                k == c
                    && i != zero_class
                    && j != zero_class
                    && classes[i].level < n_max
                    && classes[j].level < n_max
            })
        });

    let p1 = class_of(&RMatrix::identity(r.clone(), 1)?);
    let g = k0.generator(p1);
    let rank_map_iso = k0.free_rank == 1 && k0.torsion.is_empty() && g[0].abs().is_one();

    let monoid = DirectSumMonoid {
        classes,
        sum_table,
        zero_class,
        certified_to: n_max,
        stabilized,
    };
    Ok(K0Report {
        ring: r.clone(),
        n_max,
        monoid,
        k0,
        rank_map_iso,
        lookup,
    })
}

/// Largest `n <= 3` whose idempotent enumeration fits the budget (at least 1).
pub fn default_n_max(r: &FiniteRing, ctx: &Context) -> usize {
    (1..=3)
        .rev()
        .find(|&n| check_budget(r.order(), n * n, ctx.budget.gl_candidates).is_ok())
        .unwrap_or(1)
}

impl K0Report {
    /// Class index of an idempotent of size at most `n_max`.
    pub fn class_index(&self, e: &RMatrix) -> Result<usize> {
        if e.n() > self.n_max {
            return Err(Error::Dimension(format!(
                "idempotent of size {} beyond level {}",
                e.n(),
                self.n_max
            )));
        }
        if !e.is_idempotent() {
            return Err(Error::BadInput(format!("{e:?} is not idempotent")));
        }
        Ok(self.lookup[&e.pad(self.n_max).code()])
    }

    /// Coordinates of `[e]` in the K_0 group.
    pub fn class_of(&self, e: &RMatrix) -> Result<Coords> {
        Ok(self.k0.generator(self.class_index(e)?))
    }

    /// Images in `target` of the classes under the entrywise ring map `f`.
    pub fn induced_images(&self, target: &K0Report, f: &[Elem]) -> Result<Vec<Coords>> {
        self.monoid
            .classes
            .iter()
            .map(|c| target.class_of(&c.representative.map_entries(target.ring.clone(), f)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .monoid
            .classes
            .iter()
            .map(|c| json!({"level": c.level, "rep": c.representative, "orbit_size": c.orbit_size_at_level}))
            .collect();
        json!({
            "ring": self.ring.name(),
            "n_max": self.n_max,
            "classes": classes,
            "k0": self.k0,
            "stabilized": self.monoid.stabilized,
            "rank_map_iso": self.rank_map_iso,
            "finite_truncation": self.ring.finite_truncation(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{enumerate_gl, Strategy};

    fn ring(r: Result<FiniteRing>) -> Arc<FiniteRing> {
        Arc::new(r.unwrap())
    }

    #[test]
    fn idempotent_counts() {
        let ctx = Context::default();
        let f2 = ring(FiniteRing::zmod(2));
        assert_eq!(enumerate_idempotents(&f2, 1, &ctx).unwrap().len(), 2);
        assert_eq!(enumerate_idempotents(&f2, 2, &ctx).unwrap().len(), 8);
        let z6 = ring(FiniteRing::zmod(6));
        let e: Vec<Elem> = enumerate_idempotents(&z6, 1, &ctx)
            .unwrap()
            .iter()
            .map(|m| m.get(0, 0))
            .collect();
        assert_eq!(e, vec![0, 1, 3, 4]);
    }

    #[test]
    fn orbit_sizes() {
        let ctx = Context::default();
        let f2 = ring(FiniteRing::zmod(2));
        let idems = enumerate_idempotents(&f2, 2, &ctx).unwrap();
        let mut sizes: Vec<usize> = conjugation_orbits(&idems, &f2, 2)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 6]);
        let z6 = ring(FiniteRing::zmod(6));
        let idems = enumerate_idempotents(&z6, 1, &ctx).unwrap();
        assert_eq!(conjugation_orbits(&idems, &z6, 1).unwrap().len(), 4);
    }

    #[test]
    fn generator_orbits_match_full_gl_orbits() {
        let ctx = Context::default();
        for r in [
            FiniteRing::zmod(2),
            FiniteRing::zmod(4),
            FiniteRing::zmod(6),
            FiniteRing::gf(2, 2, &[1, 1, 1]),
        ] {
            let r = ring(r);
            let idems = enumerate_idempotents(&r, 2, &ctx).unwrap();
            let gl = enumerate_gl(&r, 2, Strategy::Brute, &ctx).unwrap();
            let orbits = conjugation_orbits(&idems, &r, 2).unwrap();
            for orbit in &orbits {
                let e = &orbit[0];
                let mut full: Vec<RMatrix> = gl
                    .matrices()
                    .map(|g| g.mul(e).mul(&g.inverse_or_err().unwrap()))
                    .collect();
                full.sort();
                full.dedup();
                assert_eq!(&full, orbit, "{}", r.name());
            }
        }
    }

    #[test]
    fn k0_of_f2() {
        let f2 = ring(FiniteRing::zmod(2));
        let rep = k0_report(&f2, 3, &Context::default()).unwrap();
        assert_eq!(rep.k0, PresentedAbelianGroup::from_invariants_i64(1, &[]));
        assert!(rep.rank_map_iso);
        assert!(rep.monoid.stabilized);
        assert_eq!(rep.monoid.classes.len(), 4);
        assert_eq!(
            rep.monoid
                .classes
                .iter()
                .map(|c| c.level)
                .collect::<Vec<_>>(),
            vec![1, 1, 2, 3]
        );
    }

    #[test]
    fn k0_products_and_local_rings() {
        let ctx = Context::default();
        let z4 = ring(FiniteRing::zmod(4));
        let rep = k0_report(&z4, 2, &ctx).unwrap();
        assert_eq!(rep.k0.describe(), "Z");
        let f2 = FiniteRing::zmod(2).unwrap();
        let f2xf2 = ring(FiniteRing::product(&f2, &f2));
        let rep = k0_report(&f2xf2, 2, &ctx).unwrap();
        assert_eq!(rep.k0.describe(), "Z^2");
        assert!(!rep.rank_map_iso);
    }

    #[test]
    fn level_one_is_not_stabilized() {
        let f3 = ring(FiniteRing::zmod(3));
        let rep = k0_report(&f3, 1, &Context::default()).unwrap();
        assert!(!rep.monoid.stabilized);
        assert_eq!(rep.k0.describe(), "Z");
    }
}
