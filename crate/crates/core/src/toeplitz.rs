//! The algebraic Toeplitz ring: the free unital ring on `alpha`, `alpha*`
//! subject to `alpha alpha* = 1`, with coefficients in a finite ring.
//! Elements are kept in the normal-form basis `alpha*^p alpha^q`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::IdentityCheck;
use crate::cone::{window_mismatch, IndexMap, LazyMatrix};
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Alpha,
    AlphaStar,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ToeplitzElement {
    ring: Arc<FiniteRing>,
    /// `(p, q) -> c` for the term `c alpha*^p alpha^q`; no zero coefficients.
    terms: BTreeMap<(u32, u32), Elem>,
}

impl fmt::Debug for ToeplitzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ToeplitzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, q), c)| format!("{c}*a*^{p}a^{q}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(alpha*^p alpha^q)(alpha*^r alpha^s)` in normal form.
fn monomial_product((p, q): (u32, u32), (r, s): (u32, u32)) -> (u32, u32) {
    (p + r.saturating_sub(q), s + q.saturating_sub(r))
}

impl ToeplitzElement {
    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        ToeplitzElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: &Arc<FiniteRing>, p: u32, q: u32, c: Elem) -> Self {
        let mut out = Self::zero(ring);
        out.accumulate((p, q), c);
        out
    }

    pub fn scalar(ring: &Arc<FiniteRing>, c: Elem) -> Self {
        Self::monomial(ring, 0, 0, c)
    }

    pub fn one(ring: &Arc<FiniteRing>) -> Result<Self> {
        Ok(Self::scalar(ring, ring.require_one()?))
    }

    pub fn alpha(ring: &Arc<FiniteRing>) -> Result<Self> {
        Ok(Self::monomial(ring, 0, 1, ring.require_one()?))
    }

    pub fn alpha_star(ring: &Arc<FiniteRing>) -> Result<Self> {
        Ok(Self::monomial(ring, 1, 0, ring.require_one()?))
    }

    /// Matrix unit `e_{p,q} = alpha*^(p-1) alpha^(q-1) - alpha*^p alpha^q`, one-based.
    pub fn matrix_unit(ring: &Arc<FiniteRing>, p: u32, q: u32) -> Result<Self> {
        let one = ring.require_one()?;
        let mut out = Self::monomial(ring, p - 1, q - 1, one);
        out.accumulate((p, q), ring.neg(one));
        Ok(out)
    }

    /// Normal form of a word, reducing every `alpha alpha*` to `1`.
    pub fn from_word(ring: &Arc<FiniteRing>, word: &[Letter]) -> Result<Self> {
        let (p, q) = reduce_word(word, None);
        Ok(Self::monomial(ring, p, q, ring.require_one()?))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: (u32, u32), c: Elem) {
        let r = &self.ring;
        let v = r.add(self.terms.get(&key).copied().unwrap_or(r.zero()), c);
        if v == r.zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name().into(),
                other.ring.name().into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.accumulate(k, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (&k, &c) in &self.terms {
            out.accumulate(k, self.ring.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, a: Elem) -> Self {
        let mut out = Self::zero(&self.ring);
        for (&k, &c) in &self.terms {
            out.accumulate(k, self.ring.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let r = &self.ring;
        let mut out = Self::zero(r);
        for (&x, &c) in &self.terms {
            for (&y, &d) in &other.terms {
                out.accumulate(monomial_product(x, y), r.mul(c, d));
            }
        }
        Ok(out)
    }

    /// Image under `alpha -> sum e_{i,i+1}`, `alpha* -> sum e_{i+1,i}`.
    pub fn embed(&self) -> Result<LazyMatrix> {
        let r = &self.ring;
        let alpha = LazyMatrix::co_isometry(r, IndexMap::shift(1))?;
        let alpha_star = alpha.transpose();
        let mut out = LazyMatrix::zero(r);
        for (&(p, q), &c) in &self.terms {
            let term = alpha_star.pow(p as usize)?.mul(&alpha.pow(q as usize)?)?;
            out = out.add(&term.scale(c))?;
        }
        Ok(out)
    }

    /// The `n x n` corner of the band matrix `sum c_{p,q} sum_i e_{i+p,i+q}`, expanded directly.
    pub fn band_window(&self, n: usize) -> Result<RMatrix> {
        let r = &self.ring;
        let mut m = RMatrix::zero(r.clone(), n);
        for (&(p, q), &c) in &self.terms {
            let (p, q) = (p as usize, q as usize);
            for i in 1..=n {
                let (row, col) = (i + p, i + q);
                if row <= n && col <= n {
                    m.set(row - 1, col - 1, r.add(m.get(row - 1, col - 1), c));
                }
            }
        }
        Ok(m)
    }
}

/// Rewrites `alpha alpha* -> 1` until no rule applies, returning `(p, q)` of
/// the normal form `alpha*^p alpha^q`. With an rng, the redex is chosen at random.
pub fn reduce_word(word: &[Letter], mut rng: Option<&mut ChaCha8Rng>) -> (u32, u32) {
    let mut w = word.to_vec();
    loop {
        let redexes: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] == Letter::Alpha && w[i + 1] == Letter::AlphaStar)
            .collect();
        let Some(&first) = redexes.first() else { break };
        let i = match rng.as_deref_mut() {
            Some(rng) => *redexes.choose(rng).expect("nonempty"),
            None => first,
        };
        w.drain(i..i + 2);
    }
    let p = w.iter().take_while(|&&l| l == Letter::AlphaStar).count();
    debug_assert!(w[p..].iter().all(|&l| l == Letter::Alpha));
    (p as u32, (w.len() - p) as u32)
}

/// 2 x 2 matrices over the Toeplitz ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzMatrix2(pub [[ToeplitzElement; 2]; 2]);

impl ToeplitzMatrix2 {
    pub fn diag(a: ToeplitzElement, b: ToeplitzElement) -> Self {
        let z = ToeplitzElement::zero(a.ring());
        ToeplitzMatrix2([[a, z.clone()], [z, b]])
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Result<Self> {
        Ok(Self::diag(
            ToeplitzElement::one(ring)?,
            ToeplitzElement::one(ring)?,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = (&self.0, &other.0);
        let entry = |i: usize, j: usize| -> Result<ToeplitzElement> {
            a[i][0].mul(&b[0][j])?.add(&a[i][1].mul(&b[1][j])?)
        };
        Ok(ToeplitzMatrix2([
            [entry(0, 0)?, entry(0, 1)?],
            [entry(1, 0)?, entry(1, 1)?],
        ]))
    }
}

/// `Q = [[1 - alpha* alpha, alpha*], [alpha, 0]]`.
pub fn q_matrix(ring: &Arc<FiniteRing>) -> Result<ToeplitzMatrix2> {
    let e11 = ToeplitzElement::matrix_unit(ring, 1, 1)?;
    Ok(ToeplitzMatrix2([
        [e11, ToeplitzElement::alpha_star(ring)?],
        [ToeplitzElement::alpha(ring)?, ToeplitzElement::zero(ring)],
    ]))
}

/// `Q^2 = 1` and `Q diag(a e_11, a) Q = diag(a, 0)` for every coefficient `a`.
pub fn q_involution_check(ring: &Arc<FiniteRing>) -> Result<Vec<IdentityCheck>> {
    let q = q_matrix(ring)?;
    let q2 = q.mul(&q)?;
    let mut checks = vec![IdentityCheck::new(
        "Q^2 = 1",
        (q2 != ToeplitzMatrix2::identity(ring)?).then(|| format!("{q2:?}")),
    )];
    let e11 = ToeplitzElement::matrix_unit(ring, 1, 1)?;
    let zero = ToeplitzElement::zero(ring);
    let one = ToeplitzElement::one(ring)?;
    let failures: Vec<String> = ring
        .elements()
        .filter_map(|a| {
            let d = ToeplitzMatrix2::diag(e11.scale(a), one.scale(a));
            let lhs = q.mul(&d).and_then(|qd| qd.mul(&q)).expect("same ring");
            let rhs = ToeplitzMatrix2::diag(one.scale(a), zero.clone());
            (lhs != rhs).then(|| format!("a = {a}: got {lhs:?}"))
        })
        .collect();
    checks.push(IdentityCheck::new(
        "Q diag(j(a), j_inf(a)) Q = diag(j_inf(a), 0)",
        failures.into_iter().next(),
    ));
    Ok(checks)
}

fn random_element(ring: &Arc<FiniteRing>, rng: &mut ChaCha8Rng) -> ToeplitzElement {
    let mut out = ToeplitzElement::zero(ring);
    for _ in 0..rng.gen_range(1..=4) {
        let c = rng.gen_range(0..ring.order() as Elem);
        out.accumulate((rng.gen_range(0..=3), rng.gen_range(0..=3)), c);
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Letter::Alpha
            } else {
                Letter::AlphaStar
            }
        })
        .collect()
}

/// Matrix-unit law, rewriting confluence, the band embedding, and the `Q` identities.
pub fn toeplitz_suite(ring: &Arc<FiniteRing>, window: usize) -> Result<Vec<IdentityCheck>> {
    let mut checks = Vec::new();
    let one = ToeplitzElement::one(ring)?;
    let alpha = ToeplitzElement::alpha(ring)?;
    let alpha_star = ToeplitzElement::alpha_star(ring)?;
    checks.push(IdentityCheck::new(
        "alpha alpha* = 1",
        (alpha.mul(&alpha_star)? != one).then(|| "not 1".into()),
    ));
    let aa = alpha_star.mul(&alpha)?;
    checks.push(IdentityCheck::new(
        "alpha* alpha != 1",
        (aa == one).then(|| "reduced to 1".into()),
    ));

    let units: BTreeMap<(u32, u32), ToeplitzElement> = (1..=6)
        .flat_map(|p| (1..=6).map(move |q| (p, q)))
        .map(|(p, q)| Ok(((p, q), ToeplitzElement::matrix_unit(ring, p, q)?)))
        .collect::<Result<_>>()?;
    let zero = ToeplitzElement::zero(ring);
    let mut failure = None;
    'law: for (&(p, q), x) in &units {
        for (&(r, s), y) in &units {
            let expected = if q == r { &units[&(p, s)] } else { &zero };
            if x.mul(y)? != *expected {
                failure = Some(format!("e_{p},{q} e_{r},{s}"));
                break 'law;
            }
        }
    }
    checks.push(IdentityCheck::new(
        "e_pq e_rs = delta_qr e_ps for p, q, r, s <= 6",
        failure,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(0x7031);
    let mut failure = None;
    for _ in 0..200 {
        let w = random_word(&mut rng, 10);
        let a = reduce_word(&w, Some(&mut rng));
        let b = reduce_word(&w, Some(&mut rng));
        let direct = w.iter().try_fold(one.clone(), |acc, l| {
            acc.mul(&if *l == Letter::Alpha {
                alpha.clone()
            } else {
                alpha_star.clone()
            })
        })?;
        if a != b || ToeplitzElement::monomial(ring, a.0, a.1, ring.require_one()?) != direct {
            failure = Some(format!("{w:?}: {a:?} vs {b:?}"));
            break;
        }
    }
    checks.push(IdentityCheck::new(
        "alpha alpha* -> 1 is confluent",
        failure,
    ));

    let n = window;
    let identity = LazyMatrix::identity(ring)?;
    checks.push(IdentityCheck::new(
        "embed(1) = 1",
        window_mismatch(&one.embed()?, &identity, n)?.map(|w| format!("{w:?}")),
    ));
    let mut failure = None;
    'units: for p in 1..=n as u32 {
        for q in 1..=n as u32 {
            let w = ToeplitzElement::matrix_unit(ring, p, q)?
                .embed()?
                .window(n)?;
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    w.get(i, j)
                        == if (i + 1, j + 1) == (p as usize, q as usize) {
                            ring.require_one().unwrap()
                        } else {
                            ring.zero()
                        }
                })
            });
            if !ok {
                failure = Some(format!("e_{p},{q}"));
                break 'units;
            }
        }
    }
    checks.push(IdentityCheck::new(
        format!("embed(e_pq) is the matrix unit on the {n}-window"),
        failure,
    ));

    let mut band_failure = None;
    let mut mult_failure = None;
    for t in 0..100 {
        let x = random_element(ring, &mut rng);
        let y = random_element(ring, &mut rng);
        let (ex, ey, exy) = (x.embed()?, y.embed()?, x.mul(&y)?.embed()?);
        if band_failure.is_none() && ex.window(n)? != x.band_window(n)? {
            band_failure = Some(format!("sample {t}: {x}"));
        }
        let rows = ex.certified_rows(n);
        let (wx, wy, wxy) = (ex.window(n)?, ey.window(n)?, exy.window(n)?);
        let prod = wx.mul(&wy);
        let bad = (0..rows)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| prod.get(i, j) != wxy.get(i, j));
        if let (None, Some((i, j))) = (&mult_failure, bad) {
            mult_failure = Some(format!("sample {t}: entry ({}, {})", i + 1, j + 1));
        }
    }
    checks.push(IdentityCheck::new(
        "embed agrees with the band expansion",
        band_failure,
    ));
    checks.push(IdentityCheck::new(
        "embed is multiplicative on the certified sub-window",
        mult_failure,
    ));

    checks.extend(q_involution_check(ring)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n).unwrap())
    }

    #[test]
    fn alpha_alpha_star_is_one() {
        let r = ring(3);
        let w = ToeplitzElement::from_word(&r, &[Letter::Alpha, Letter::AlphaStar]).unwrap();
        assert_eq!(w, ToeplitzElement::one(&r).unwrap());
    }

    #[test]
    fn alpha_star_alpha_is_irreducible() {
        let r = ring(3);
        let w = ToeplitzElement::from_word(&r, &[Letter::AlphaStar, Letter::Alpha]).unwrap();
        assert_eq!(w.terms().keys().copied().collect::<Vec<_>>(), vec![(1, 1)]);
        assert_ne!(w, ToeplitzElement::one(&r).unwrap());
    }

    #[test]
    fn monomial_rule() {
        assert_eq!(monomial_product((1, 3), (2, 0)), (1, 1));
        assert_eq!(monomial_product((0, 1), (4, 2)), (3, 2));
    }

    #[test]
    fn e11_embeds_as_corner_unit() {
        let r = ring(2);
        let w = ToeplitzElement::matrix_unit(&r, 1, 1)
            .unwrap()
            .embed()
            .unwrap()
            .window(5)
            .unwrap();
        let ones: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| w.get(i, j) == 1)
            .collect();
        assert_eq!(ones, vec![(0, 0)]);
    }

    #[test]
    fn q_over_f3_and_z4() {
        for n in [3, 4] {
            let checks = q_involution_check(&ring(n)).unwrap();
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
    }

    #[test]
    fn suites_pass() {
        for n in [3, 4] {
            for c in toeplitz_suite(&ring(n), 16).unwrap() {
                assert!(c.pass, "{} failed: {:?}", c.identity, c.witness);
            }
        }
    }

    #[test]
    fn random_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let w = random_word(&mut rng, 10);
            assert_eq!(reduce_word(&w, Some(&mut rng)), reduce_word(&w, None));
        }
    }
}
