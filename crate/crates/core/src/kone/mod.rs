//! K_1 of a finite unital ring at finite matrix levels: `GL_n` modulo the
//! normal closure of the elementary subgroup, then abelianized.

mod structural;
mod whitehead;

pub use structural::structural_identities_check;
pub use whitehead::{whitehead_factorization, whitehead_suite, WhiteheadFactorization};

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::abelian::{
    group_from_presentation, AbelianHom, Coords, IntMatrix, PresentedAbelianGroup,
};
use crate::config::Context;
use crate::error::{check_budget, Error, Result};
use crate::matgroup::{coset_labels, elementary_closure, enumerate_gl, MatrixGroup, Strategy};
use crate::ring::{Elem, FiniteRing, RMatrix};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
}

impl TableGroup {
    pub fn new(order: usize, table: Vec<u32>, identity: u32) -> Self {
        assert_eq!(table.len(), order * order);
        TableGroup {
            order,
            table,
            identity,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        (0..self.order as u32)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("group element has an inverse")
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Greedy generating set: each element not yet generated is added.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order as u32 {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup(&gens);
            }
        }
        gens
    }

    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let n = self.order as u32;
        let inv: Vec<u32> = (0..n).map(|a| self.inverse(a)).collect();
        let mut comms: Vec<u32> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(inv[a as usize], inv[b as usize])))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.subgroup(&comms)
    }

    /// The abelianization, presented on the group elements with relations
    /// `[a] + [s] = [a s]` for `s` in a generating set and `[1] = 0`.
    pub fn abelianization(&self) -> PresentedAbelianGroup {
        let k = self.order;
        let gens = self.generating_set();
        let mut rows = Vec::with_capacity(k * gens.len() + 1);
        let mut unit = vec![BigInt::from(0); k];
        unit[self.identity as usize] = BigInt::from(1);
        rows.push(unit);
        for a in 0..k as u32 {
            for &s in &gens {
                let mut row = vec![BigInt::from(0); k];
                row[a as usize] += 1;
                row[s as usize] += 1;
                row[self.mul(a, s) as usize] -= 1;
                rows.push(row);
            }
        }
        group_from_presentation(k, &IntMatrix::from_rows(rows, k))
    }
}

/// One finite level of K_1.
#[derive(Clone, Debug)]
pub struct K1Level {
    pub n: usize,
    pub gl: MatrixGroup,
    pub e: MatrixGroup,
    labels: Vec<u32>,
    /// Least element of each coset of `e`, by label.
    pub coset_reps: Vec<u64>,
    pub quotient: TableGroup,
    /// Whether `GL_n / E` is abelian before abelianizing.
    pub quotient_abelian: bool,
    /// Presented on the cosets, by label.
    pub k1: PresentedAbelianGroup,
}

impl K1Level {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.gl.ring()
    }

    /// Coset label of an invertible matrix of size `n`.
    pub fn label_of(&self, g: &RMatrix) -> Result<usize> {
        if g.n() != self.n {
            return Err(Error::Dimension(format!(
                "matrix of size {} at level {}",
                g.n(),
                self.n
            )));
        }
        let i = self.gl.index_of(g.code()).ok_or(Error::NotInvertible)?;
        Ok(self.labels[i] as usize)
    }

    /// Coordinates of `[g]` in K_1; smaller matrices are padded by `diag(g, 1)`.
    pub fn class_of(&self, g: &RMatrix) -> Result<Coords> {
        let g = if g.n() < self.n {
            g.pad_identity(self.n)?
        } else {
            g.clone()
        };
        Ok(self.k1.generator(self.label_of(&g)?))
    }

    pub fn coset_rep(&self, label: usize) -> RMatrix {
        self.gl.codec().matrix(self.coset_reps[label])
    }
}

pub fn k1_level(
    r: &Arc<FiniteRing>,
    n: usize,
    strategy: Strategy,
    ctx: &Context,
) -> Result<K1Level> {
    let gl = enumerate_gl(r, n, strategy, ctx)?;
    let e = elementary_closure(&gl, ctx)?;
    let (labels, coset_reps) = coset_labels(&gl, e.codes());
    let k = coset_reps.len();
    let codec = gl.codec();
    let mut table = Vec::with_capacity(k * k);
    for &a in &coset_reps {
        for &b in &coset_reps {
            let i = gl.index_of(codec.mul(a, b)).expect("GL is closed");
            table.push(labels[i]);
        }
    }
    let identity = labels[gl
        .index_of(RMatrix::identity(r.clone(), n)?.code())
        .expect("identity is invertible")];
    let quotient = TableGroup::new(k, table, identity);
    let quotient_abelian = quotient.commutator_subgroup().len() == 1;
    let k1 = quotient.abelianization();
    Ok(K1Level {
        n,
        gl,
        e,
        labels,
        coset_reps,
        quotient,
        quotient_abelian,
        k1,
    })
}

#[derive(Clone, Debug)]
pub struct K1Report {
    pub ring: Arc<FiniteRing>,
    pub levels: Vec<K1Level>,
    /// `diag(g, 1)` induces an isomorphism from level 2 to level 3 (both computed).
    pub stable: bool,
    pub units_map_injective: bool,
    /// Order of the image of `R^* -> K_1` at the top level.
    pub units_image_order: Option<BigInt>,
}

/// Levels `{2, 3}` when `GL_3` fits the budget, else `{2}`, else `{1}`.
pub fn default_levels(r: &FiniteRing, ctx: &Context) -> Vec<usize> {
    let fits = |n: usize| check_budget(r.order(), n * n, ctx.budget.gl_candidates).is_ok();
    if fits(3) {
        vec![2, 3]
    } else if fits(2) {
        vec![2]
    } else {
        vec![1]
    }
}

/// The unit group of `r` as a table group, with the units listed in carrier order.
pub fn unit_group(r: &FiniteRing) -> Result<(TableGroup, Vec<Elem>)> {
    let one = r.require_one()?;
    let units = r.units();
    let pos = |x: Elem| units.binary_search(&x).expect("units are closed") as u32;
    let table = units
        .iter()
        .flat_map(|&a| units.iter().map(move |&b| (a, b)))
        .map(|(a, b)| pos(r.mul(a, b)))
        .collect();
    Ok((TableGroup::new(units.len(), table, pos(one)), units))
}

pub fn k1_report(r: &Arc<FiniteRing>, levels: &[usize], ctx: &Context) -> Result<K1Report> {
    if levels.is_empty() {
        return Err(Error::BadInput("no K_1 levels requested".into()));
    }
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let computed: Vec<K1Level> = sorted
        .iter()
        .map(|&n| k1_level(r, n, Strategy::Brute, ctx))
        .collect::<Result<_>>()?;

    let at = |n: usize| computed.iter().find(|l| l.n == n);
    let stable = match (at(2), at(3)) {
        (Some(l2), Some(l3)) => level_map(l2, l3)?.is_isomorphism(),
        _ => false,
    };

    let top = computed.last().expect("at least one level");
    let (units, elems) = unit_group(r)?;
    let source = units.abelianization();
    let images: Vec<Coords> = elems
        .iter()
        .map(|&u| top.class_of(&RMatrix::diag_unit(r.clone(), 1, 0, u)?))
        .collect::<Result<_>>()?;
    let units_map = AbelianHom::from_generator_images(source, top.k1.clone(), &images);
    let units_map_injective = units_map.is_injective();
    let units_image_order =
        crate::abelian::subgroup_order(&top.k1, &units_map.image_generators()).1;

    Ok(K1Report {
        ring: r.clone(),
        levels: computed,
        stable,
        units_map_injective,
        units_image_order,
    })
}

/// The map `K_1` at level `a.n` to level `b.n` induced by `g -> diag(g, 1)`.
pub fn level_map(a: &K1Level, b: &K1Level) -> Result<AbelianHom> {
    let images: Vec<Coords> = (0..a.coset_reps.len())
        .map(|c| b.class_of(&a.coset_rep(c)))
        .collect::<Result<_>>()?;
    Ok(AbelianHom::from_generator_images(
        a.k1.clone(),
        b.k1.clone(),
        &images,
    ))
}

impl K1Report {
    pub fn top(&self) -> &K1Level {
        self.levels.last().expect("at least one level")
    }

    pub fn k1(&self) -> &PresentedAbelianGroup {
        &self.top().k1
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|l| {
                json!({
                    "n": l.n,
                    "k1": l.k1,
                    "gl_order": l.gl.len(),
                    "e_order": l.e.len(),
                    "quotient_order": l.quotient.order(),
                    "quotient_abelian": l.quotient_abelian,
                })
            })
            .collect();
        json!({
            "ring": self.ring.name(),
            "levels": levels,
            "k1": self.k1(),
            "stable": self.stable,
            "units_map_injective": self.units_map_injective,
            "units_image_order": self.units_image_order.as_ref().map(crate::abelian::group::int_json),
            "finite_truncation": self.ring.finite_truncation(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(r: Result<FiniteRing>) -> Arc<FiniteRing> {
        Arc::new(r.unwrap())
    }

    #[test]
    fn k1_of_small_fields() {
        let ctx = Context::default();
        let f4 = ring(FiniteRing::gf(2, 2, &[1, 1, 1]));
        let rep = k1_report(&f4, &[2, 3], &ctx).unwrap();
        assert_eq!(rep.k1().describe(), "Z/3");
        assert!(rep.stable);
        assert!(rep.units_map_injective);
        let f3 = ring(FiniteRing::zmod(3));
        let rep = k1_report(&f3, &[2], &ctx).unwrap();
        assert_eq!(rep.k1().describe(), "Z/2");
        assert!(!rep.stable);
    }

    #[test]
    fn dual_numbers_and_matrix_ring() {
        let ctx = Context::default();
        let f3 = FiniteRing::zmod(3).unwrap();
        let eps = ring(FiniteRing::dual_numbers(&f3));
        let rep = k1_report(&eps, &[2], &ctx).unwrap();
        assert_eq!(rep.k1().describe(), "Z/6");
        assert!(rep.units_map_injective);
        let f2 = FiniteRing::zmod(2).unwrap();
        let m2 = ring(FiniteRing::matrix_ring(&f2, 2));
        let rep = k1_report(&m2, &[2], &ctx).unwrap();
        assert!(rep.k1().is_trivial());
        assert_eq!(rep.top().gl.len(), 20160);
    }

    #[test]
    fn level_three_quotient_is_abelian() {
        let z4 = ring(FiniteRing::zmod(4));
        let ctx = Context::with_budget(crate::config::Budget {
            gl_candidates: 1 << 18,
            ..Default::default()
        });
        let rep = k1_report(&z4, &[2, 3], &ctx).unwrap();
        assert!(rep.levels.iter().all(|l| l.quotient_abelian));
        assert!(rep.stable);
        assert_eq!(rep.k1().describe(), "Z/2");
    }

    #[test]
    fn level_one_is_unit_group() {
        let f5 = ring(FiniteRing::zmod(5));
        let l = k1_level(&f5, 1, Strategy::Brute, &Context::default()).unwrap();
        assert_eq!(l.k1.describe(), "Z/4");
        assert_eq!(l.e.len(), 1);
    }

    #[test]
    fn z4_quotient_has_index_two() {
        let z4 = ring(FiniteRing::zmod(4));
        let l = k1_level(&z4, 2, Strategy::Brute, &Context::default()).unwrap();
        assert_eq!(l.gl.len(), 96);
        assert_eq!(l.quotient.order(), 2);
        assert_eq!(l.k1.describe(), "Z/2");
    }

    #[test]
    fn abelianization_of_s3() {
        // GL_2(F_2) = S_3 has abelianization Z/2 and commutator subgroup of order 3.
        let f2 = ring(FiniteRing::zmod(2));
        let gl = enumerate_gl(&f2, 2, Strategy::Brute, &Context::default()).unwrap();
        let codes = gl.codes();
        let table = codes
            .iter()
            .flat_map(|&a| codes.iter().map(move |&b| (a, b)))
            .map(|(a, b)| gl.index_of(gl.codec().mul(a, b)).unwrap() as u32)
            .collect();
        let id = gl
            .index_of(RMatrix::identity(f2.clone(), 2).unwrap().code())
            .unwrap() as u32;
        let g = TableGroup::new(6, table, id);
        assert_eq!(g.commutator_subgroup().len(), 3);
        assert_eq!(g.abelianization().describe(), "Z/2");
    }

    #[test]
    fn trivial_quotient_gives_trivial_group() {
        let g = TableGroup::new(1, vec![0], 0);
        assert!(g.abelianization().is_trivial());
    }
}
