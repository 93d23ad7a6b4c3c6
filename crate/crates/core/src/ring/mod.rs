//! Table-driven finite rings.
//!
//! Every element is a carrier index in `0..order`. Addition and
//! multiplication are full `order x order` lookup tables, validated
//! exhaustively when a ring is built.

mod catalog;
mod iso;
mod matrix;

pub use catalog::{Catalog, RingEntry, RingRef, RingSpec};
pub use iso::{find_isomorphism, is_ring_homomorphism};
pub use matrix::RMatrix;

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Carrier index of a ring element.
pub type Elem = u32;

#[derive(Clone, Debug)]
pub struct FiniteRing {
    name: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Option<Elem>,
    char_exponent: u64,
    inverse: Vec<Option<Elem>>,
    finite_truncation: bool,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Builds a ring from explicit tables, checking every axiom exhaustively.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Option<Elem>,
    ) -> Result<Self> {
        let name = name.into();
        let m2 = add.len();
        let order = (m2 as f64).sqrt().round() as usize;
        if order == 0 || order * order != m2 || mul.len() != m2 {
            return Err(Error::BadInput(format!(
                "ring `{name}`: tables must be square and equal-sized"
            )));
        }
        if let Some((i, &v)) = add
            .iter()
            .chain(mul.iter())
            .enumerate()
            .find(|(_, &v)| v as usize >= order)
        {
            return Err(Error::BadInput(format!(
                "ring `{name}`: table entry #{i} = {v} out of range"
            )));
        }
        if zero as usize >= order || one.is_some_and(|o| o as usize >= order) {
            return Err(Error::BadInput(format!(
                "ring `{name}`: distinguished element out of range"
            )));
        }
        let mut ring = FiniteRing {
            name,
            order,
            add,
            mul,
            neg: vec![0; order],
            zero,
            one,
            char_exponent: 1,
            inverse: vec![],
            finite_truncation: false,
        };
        ring.validate()?;
        ring.char_exponent = (0..order as Elem)
            .map(|x| ring.additive_order(x))
            .fold(1, |a, b| a.lcm(&b));
        ring.inverse = ring.compute_inverses();
        Ok(ring)
    }

    fn validate(&mut self) -> Result<()> {
        let m = self.order as Elem;
        let fail = |axiom: &str, w: Vec<Elem>| {
            Err(Error::AxiomViolation {
                axiom: axiom.into(),
                witness: w,
            })
        };

        for x in 0..m {
            if self.add(self.zero, x) != x {
                return fail("additive identity", vec![x]);
            }
            for y in 0..m {
                if self.add(x, y) != self.add(y, x) {
                    return fail("additive commutativity", vec![x, y]);
                }
            }
            match (0..m).find(|&y| self.add(x, y) == self.zero) {
                Some(y) => self.neg[x as usize] = y,
                None => return fail("additive inverse", vec![x]),
            }
        }
        if let Some(o) = self.one {
            for x in 0..m {
                if self.mul(o, x) != x || self.mul(x, o) != x {
                    return fail("multiplicative identity", vec![x]);
                }
            }
        }

        let ring = &*self;
        let bad = (0..m).into_par_iter().find_map_first(|x| {
            for y in 0..m {
                let xy_add = ring.add(x, y);
                let xy_mul = ring.mul(x, y);
                for z in 0..m {
                    if ring.add(xy_add, z) != ring.add(x, ring.add(y, z)) {
                        return Some(("additive associativity", vec![x, y, z]));
                    }
                    if ring.mul(xy_mul, z) != ring.mul(x, ring.mul(y, z)) {
                        return Some(("multiplicative associativity", vec![x, y, z]));
                    }
                    if ring.mul(x, ring.add(y, z)) != ring.add(xy_mul, ring.mul(x, z)) {
                        return Some(("left distributivity", vec![x, y, z]));
                    }
                    if ring.mul(xy_add, z) != ring.add(ring.mul(x, z), ring.mul(y, z)) {
                        return Some(("right distributivity", vec![x, y, z]));
                    }
                }
            }
            None
        });
        match bad {
            Some((axiom, w)) => fail(axiom, w),
            None => Ok(()),
        }
    }

    fn additive_order(&self, x: Elem) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    fn compute_inverses(&self) -> Vec<Option<Elem>> {
        let Some(one) = self.one else {
            return vec![None; self.order];
        };
        let m = self.order as Elem;
        (0..m)
            .map(|x| (0..m).find(|&y| self.mul(x, y) == one && self.mul(y, x) == one))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn is_unital(&self) -> bool {
        self.one.is_some()
    }

    pub fn require_one(&self) -> Result<Elem> {
        self.one.ok_or_else(|| Error::NotUnital(self.name.clone()))
    }

    /// Additive exponent: least N with N x = 0 for all x.
    pub fn char_exponent(&self) -> u64 {
        self.char_exponent
    }

    /// Set on rings produced by unitalizing over Z/N instead of Z.
    pub fn finite_truncation(&self) -> bool {
        self.finite_truncation
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// `k * x` by repeated addition.
    pub fn smul(&self, k: i64, x: Elem) -> Elem {
        let n = k.rem_euclid(self.char_exponent as i64);
        let mut acc = self.zero;
        for _ in 0..n {
            acc = self.add(acc, x);
        }
        acc
    }

    /// The image of the integer `k` (requires a unit).
    pub fn from_int(&self, k: i64) -> Result<Elem> {
        Ok(self.smul(k, self.require_one()?))
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.inverse.get(x as usize).copied().flatten()
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse(x).is_some()
    }

    /// Units in increasing carrier order.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// Content hash of the tables; identifies the ring up to carrier labels.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        h.update(self.zero.to_le_bytes());
        h.update(self.one.map_or(u32::MAX, |o| o).to_le_bytes());
        for v in self.add.iter().chain(&self.mul) {
            h.update(v.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Whether `elements` is a two-sided ideal.
    pub fn is_ideal(&self, elements: &[Elem]) -> bool {
        let mut member = vec![false; self.order];
        for &e in elements {
            member[e as usize] = true;
        }
        member[self.zero as usize]
            && elements.iter().all(|&a| {
                member[self.neg(a) as usize]
                    && elements.iter().all(|&b| member[self.add(a, b) as usize])
                    && self
                        .elements()
                        .all(|r| member[self.mul(r, a) as usize] && member[self.mul(a, r) as usize])
            })
    }

    /// The ideal on `elements` as a (generally nonunital) ring, together with
    /// the embedding of its carrier into `self`.
    pub fn ideal_ring(&self, elements: &[Elem], name: &str) -> Result<(FiniteRing, Vec<Elem>)> {
        let mut embed: Vec<Elem> = elements.to_vec();
        embed.sort_unstable();
        embed.dedup();
        if !self.is_ideal(&embed) {
            return Err(Error::BadInput(format!(
                "{:?} is not a two-sided ideal of `{}`",
                elements, self.name
            )));
        }
        let mut pos = vec![u32::MAX; self.order];
        for (i, &e) in embed.iter().enumerate() {
            pos[e as usize] = i as Elem;
        }
        let k = embed.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                add.push(pos[self.add(a, b) as usize]);
                mul.push(pos[self.mul(a, b) as usize]);
            }
        }
        let one = self
            .one
            .and_then(|o| (pos[o as usize] != u32::MAX).then(|| pos[o as usize]));
        let ring = FiniteRing::from_tables(name, add, mul, pos[self.zero as usize], one)?;
        Ok((ring, embed))
    }

    // ---- constructions -------------------------------------------------

    pub fn zmod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("zmod(0) is infinite".into()));
        }
        let m = n as usize;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..n {
            for y in 0..n {
                add.push(((x + y) % n) as Elem);
                mul.push(((x * y) % n) as Elem);
            }
        }
        FiniteRing::from_tables(format!("Z/{n}"), add, mul, 0, Some((1 % n) as Elem))
    }

    /// `F_p[x]/(poly)` with `poly` monic of degree `k`, coefficients low to high.
    /// Element `sum c_i x^i` has carrier index `sum c_i p^i`.
    pub fn gf(p: u64, k: usize, poly: &[u64]) -> Result<Self> {
        let not_irreducible = || Error::NotIrreducible {
            p,
            poly: poly.to_vec(),
        };
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::BadInput(format!("gf: {p} is not prime")));
        }
        if k == 0 || poly.len() != k + 1 || poly[k] % p != 1 {
            return Err(not_irreducible());
        }
        let q = (p as usize).pow(k as u32);
        let decode = |mut v: usize| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let c = (v % p as usize) as u64;
                    v /= p as usize;
                    c
                })
                .collect()
        };
        let encode = |c: &[u64]| -> Elem {
            c.iter()
                .rev()
                .fold(0usize, |acc, &x| acc * p as usize + x as usize) as Elem
        };
        let polys: Vec<Vec<u64>> = (0..q).map(decode).collect();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for a in &polys {
            for b in &polys {
                let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                add.push(encode(&s));
                let mut prod = vec![0u64; 2 * k];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (k..2 * k).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    for (t, &pc) in poly.iter().enumerate().take(k) {
                        let idx = d - k + t;
                        prod[idx] = (prod[idx] + (p - c) * (pc % p)) % p;
                    }
                    prod[d] = 0;
                }
                mul.push(encode(&prod[..k]));
            }
        }
        let ring = FiniteRing::from_tables(format!("GF({p}^{k})"), add, mul, 0, Some(1))?;
        if (1..q as Elem).any(|x| !ring.is_unit(x)) {
            return Err(not_irreducible());
        }
        Ok(ring)
    }

    /// `M_n(base)`; carrier index is the row-major base-|base| expansion of the entries.
    pub fn matrix_ring(base: &FiniteRing, n: usize) -> Result<Self> {
        let q = base.order;
        let size = q
            .checked_pow((n * n) as u32)
            .filter(|&s| s <= 1 << 12)
            .ok_or_else(|| {
                Error::BadInput(format!("M_{n}({}) has more than 4096 elements", base.name))
            })?;
        let decode = |mut v: usize| -> Vec<Elem> {
            (0..n * n)
                .map(|_| {
                    let c = (v % q) as Elem;
                    v /= q;
                    c
                })
                .collect()
        };
        let encode = |c: &[Elem]| -> Elem {
            c.iter().rev().fold(0usize, |acc, &x| acc * q + x as usize) as Elem
        };
        let mats: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &mats {
            for b in &mats {
                let s: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| base.add(x, y)).collect();
                add.push(encode(&s));
                let mut prod = vec![base.zero; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = base.zero;
                        for l in 0..n {
                            acc = base.add(acc, base.mul(a[i * n + l], b[l * n + j]));
                        }
                        prod[i * n + j] = acc;
                    }
                }
                mul.push(encode(&prod));
            }
        }
        let zero = encode(&vec![base.zero; n * n]);
        let one = base.one.map(|o| {
            let mut id = vec![base.zero; n * n];
            for i in 0..n {
                id[i * n + i] = o;
            }
            encode(&id)
        });
        FiniteRing::from_tables(format!("M{n}({})", base.name), add, mul, zero, one)
    }

    /// Carrier index of the matrix with the given row-major entries in [`FiniteRing::matrix_ring`].
    pub fn matrix_ring_index(base: &FiniteRing, entries: &[Elem]) -> Elem {
        entries
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * base.order + x as usize) as Elem
    }

    /// Upper triangular 2x2 matrices `[[a, b], [0, c]]`, index `a + q b + q^2 c`.
    pub fn triangular2(base: &FiniteRing) -> Result<Self> {
        let q = base.order;
        let m = q * q * q;
        let dec = |v: usize| {
            (
                (v % q) as Elem,
                ((v / q) % q) as Elem,
                (v / (q * q)) as Elem,
            )
        };
        let enc =
            |a: Elem, b: Elem, c: Elem| (a as usize + q * b as usize + q * q * c as usize) as Elem;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..m {
            let (a, b, c) = dec(x);
            for y in 0..m {
                let (d, e, f) = dec(y);
                add.push(enc(base.add(a, d), base.add(b, e), base.add(c, f)));
                mul.push(enc(
                    base.mul(a, d),
                    base.add(base.mul(a, e), base.mul(b, f)),
                    base.mul(c, f),
                ));
            }
        }
        let z = base.zero;
        let one = base.one.map(|o| enc(o, z, o));
        FiniteRing::from_tables(format!("T2({})", base.name), add, mul, enc(z, z, z), one)
    }

    pub fn triangular2_index(base: &FiniteRing, a: Elem, b: Elem, c: Elem) -> Elem {
        let q = base.order;
        (a as usize + q * b as usize + q * q * c as usize) as Elem
    }

    /// `base[eps]/(eps^2)`, index `a + q b` for `a + b eps`.
    pub fn dual_numbers(base: &FiniteRing) -> Result<Self> {
        let q = base.order;
        let m = q * q;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..m {
            let (a, b) = ((x % q) as Elem, (x / q) as Elem);
            for y in 0..m {
                let (c, d) = ((y % q) as Elem, (y / q) as Elem);
                add.push((base.add(a, c) as usize + q * base.add(b, d) as usize) as Elem);
                let lin = base.add(base.mul(a, d), base.mul(b, c));
                mul.push((base.mul(a, c) as usize + q * lin as usize) as Elem);
            }
        }
        let z = base.zero as usize;
        let one = base.one.map(|o| (o as usize + q * z) as Elem);
        FiniteRing::from_tables(
            format!("{}[eps]", base.name),
            add,
            mul,
            (z + q * z) as Elem,
            one,
        )
    }

    /// The group Z/n with the zero product.
    pub fn square_zero(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("square_zero(0)".into()));
        }
        let m = n as usize;
        let add = (0..m * m).map(|i| ((i / m + i % m) % m) as Elem).collect();
        let mul = vec![0; m * m];
        let one = (n == 1).then_some(0);
        FiniteRing::from_tables(format!("SZ({n})"), add, mul, 0, one)
    }

    /// `left x right`, index `i + |left| j`.
    pub fn product(left: &FiniteRing, right: &FiniteRing) -> Result<Self> {
        let (p, q) = (left.order, right.order);
        let m = p * q;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..m {
            let (a, b) = ((x % p) as Elem, (x / p) as Elem);
            for y in 0..m {
                let (c, d) = ((y % p) as Elem, (y / p) as Elem);
                add.push((left.add(a, c) as usize + p * right.add(b, d) as usize) as Elem);
                mul.push((left.mul(a, c) as usize + p * right.mul(b, d) as usize) as Elem);
            }
        }
        let one = match (left.one, right.one) {
            (Some(a), Some(b)) => Some((a as usize + p * b as usize) as Elem),
            _ => None,
        };
        let zero = (left.zero as usize + p * right.zero as usize) as Elem;
        FiniteRing::from_tables(format!("{}x{}", left.name, right.name), add, mul, zero, one)
    }

    pub fn product_index(left: &FiniteRing, a: Elem, b: Elem) -> Elem {
        (a as usize + left.order * b as usize) as Elem
    }
}

/// `A + Z/N` with `(a, n)(b, m) = (ab + n b + m a, nm)`, where N is the additive exponent of `A`.
#[derive(Clone, Debug)]
pub struct Unitalization {
    pub ring: Arc<FiniteRing>,
    /// Carrier map `A -> A~`.
    pub embedding: Vec<Elem>,
    /// Carrier map `A~ -> Z/N`.
    pub augmentation: Vec<Elem>,
    pub scalars: Arc<FiniteRing>,
    pub modulus: u64,
}

impl Unitalization {
    /// Carrier index of `(a, k)`.
    pub fn pair(&self, a: Elem, k: u64) -> Elem {
        let m = self.embedding.len() as u64;
        (a as u64 + m * (k % self.modulus)) as Elem
    }

    /// Splits an element into its ideal part and scalar part.
    pub fn split(&self, x: Elem) -> (Elem, u64) {
        let m = self.embedding.len() as u64;
        ((x as u64 % m) as Elem, x as u64 / m)
    }
}

pub fn unitalize_finite(a: &FiniteRing) -> Result<Unitalization> {
    unitalize_with_modulus(a, a.char_exponent())
}

/// `A + Z/n` for any multiple `n` of the additive exponent of `A`.
///
/// Choosing `n` as the additive exponent of an ambient unital ring `B`
/// makes `(a, k) -> a + k 1_B` a ring homomorphism.
pub fn unitalize_with_modulus(a: &FiniteRing, n: u64) -> Result<Unitalization> {
    if n == 0 || !n.is_multiple_of(a.char_exponent()) {
        return Err(Error::BadInput(format!(
            "modulus {n} is not a multiple of the additive exponent {} of `{}`",
            a.char_exponent(),
            a.name()
        )));
    }
    let m = a.order();
    let total = m * n as usize;
    let pair = |x: Elem, k: u64| (x as u64 + m as u64 * (k % n)) as Elem;
    let split = |v: usize| ((v % m) as Elem, (v / m) as u64);
    let mut add = Vec::with_capacity(total * total);
    let mut mul = Vec::with_capacity(total * total);
    for u in 0..total {
        let (x, k) = split(u);
        for v in 0..total {
            let (y, l) = split(v);
            add.push(pair(a.add(x, y), k + l));
            let prod = a.add(a.add(a.mul(x, y), a.smul(k as i64, y)), a.smul(l as i64, x));
            mul.push(pair(prod, k * l));
        }
    }
    let mut ring = FiniteRing::from_tables(
        format!("{}~", a.name()),
        add,
        mul,
        pair(a.zero(), 0),
        Some(pair(a.zero(), 1)),
    )?;
    ring.finite_truncation = true;
    let embedding = a.elements().map(|x| pair(x, 0)).collect();
    let augmentation = (0..total).map(|v| split(v).1 as Elem).collect();
    Ok(Unitalization {
        ring: Arc::new(ring),
        embedding,
        augmentation,
        scalars: Arc::new(FiniteRing::zmod(n)?),
        modulus: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod4() {
        let r = FiniteRing::zmod(4).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.one(), Some(1));
        assert_eq!(r.char_exponent(), 4);
        assert_eq!(r.units(), vec![1, 3]);
    }

    #[test]
    fn square_zero_three() {
        let r = FiniteRing::square_zero(3).unwrap();
        assert_eq!(r.order(), 3);
        assert!(r.one().is_none());
        assert!(r.elements().all(|x| r.elements().all(|y| r.mul(x, y) == 0)));
    }

    #[test]
    fn triangular_over_f3() {
        let f3 = FiniteRing::gf(3, 1, &[1, 1]).unwrap();
        let t = FiniteRing::triangular2(&f3).unwrap();
        assert_eq!(t.order(), 27);
        assert!(t.is_unital());
        assert!(!t.is_commutative());
        // units: nonzero diagonal, any corner
        assert_eq!(t.units().len(), 2 * 2 * 3);
    }

    #[test]
    fn gf4_is_field() {
        let f4 = FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.units().len(), 3);
        assert_eq!(f4.char_exponent(), 2);
    }

    #[test]
    fn gf_rejects_reducible() {
        // x^2 + 1 = (x + 1)^2 over F2
        assert!(matches!(
            FiniteRing::gf(2, 2, &[1, 0, 1]),
            Err(Error::NotIrreducible { .. })
        ));
        // x^2 + 1 over F3 is irreducible, x^2 + 2 = (x+1)(x+2) is not
        assert!(FiniteRing::gf(3, 2, &[1, 0, 1]).is_ok());
        assert!(FiniteRing::gf(3, 2, &[2, 0, 1]).is_err());
    }

    #[test]
    fn bad_tables_give_witness() {
        // Z/2 addition with a non-associative multiplication: 1*1 = 1 except redefine mul to be constant 1
        let add = vec![0, 1, 1, 0];
        let mul = vec![1, 1, 1, 1];
        match FiniteRing::from_tables("bad", add, mul, 0, None) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert!(axiom.contains("distributivity"), "{axiom}");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn ideal_extraction() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert!(z4.is_ideal(&[0, 2]));
        assert!(!z4.is_ideal(&[0, 1]));
        let (a, emb) = z4.ideal_ring(&[0, 2], "2Z/4").unwrap();
        assert_eq!(a.order(), 2);
        assert_eq!(emb, vec![0, 2]);
        assert!(a.one().is_none());
        assert_eq!(a.mul(1, 1), 0);
    }

    #[test]
    fn unitalization_orders() {
        let u = unitalize_finite(&FiniteRing::square_zero(2).unwrap()).unwrap();
        assert_eq!(u.ring.order(), 4);
        assert!(u.ring.finite_truncation());
        let u = unitalize_finite(&FiniteRing::zmod(3).unwrap()).unwrap();
        assert_eq!(u.ring.order(), 9);
        assert_eq!(u.modulus, 3);
    }

    #[test]
    fn matrix_ring_m2f2() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let m = FiniteRing::matrix_ring(&f2, 2).unwrap();
        assert_eq!(m.order(), 16);
        assert_eq!(m.units().len(), 6);
        assert!(!m.is_commutative());
    }
}
