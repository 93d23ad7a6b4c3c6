use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::IdentityCheck;
use crate::error::Result;
use crate::ring::{FiniteRing, RMatrix};

const J2: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
const J3: [[i64; 4]; 4] = [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]];

/// Pairs beyond this count are sampled instead of enumerated.
const EXHAUSTIVE_PAIRS: usize = 1 << 16;
const SAMPLED_PAIRS: usize = 2_000;

fn int_matrix(r: &Arc<FiniteRing>, m: &[[i64; 4]; 4]) -> Result<RMatrix> {
    let rows: Vec<Vec<_>> = m
        .iter()
        .map(|row| row.iter().map(|&x| r.from_int(x)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    RMatrix::from_rows(r.clone(), &rows)
}

fn corner(r: &Arc<FiniteRing>, a: u32, pos: usize) -> RMatrix {
    let mut m = RMatrix::zero(r.clone(), 4);
    m.set(pos, pos, a);
    m
}

fn power(m: &RMatrix, k: usize) -> RMatrix {
    (1..k).fold(m.clone(), |acc, _| acc.mul(m))
}

fn conjugation_checks(r: &Arc<FiniteRing>) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for (i, table) in [(2usize, &J2), (3, &J3)] {
        let j = int_matrix(r, table)?;
        let inv = j.inverse()?;
        out.push(IdentityCheck::new(
            format!("J{i} invertible"),
            inv.is_none().then(|| format!("{j:?}")),
        ));
        let Some(inv) = inv else { continue };
        let p = power(&j, i);
        out.push(IdentityCheck::new(
            format!("J{i}^{i} = 1"),
            (!p.is_identity()).then(|| format!("{p:?}")),
        ));
        let lower_power = (1..i).find(|&k| power(&j, k).is_identity());
        out.push(IdentityCheck::new(
            format!("sigma{i} has order {i}"),
            lower_power.map(|k| format!("J{i}^{k} = 1")),
        ));
        let bad = r
            .elements()
            .find(|&a| j.mul(&corner(r, a, 0)).mul(&inv) != corner(r, a, 1));
        out.push(IdentityCheck::new(
            format!("sigma{i} j0 = j1"),
            bad.map(|a| format!("a = {a}")),
        ));
    }
    Ok(out)
}

/// Partial isometry of size `big` with `V W` the projection onto the first `k` coordinates.
fn isometry(r: &Arc<FiniteRing>, k: usize, shape: Shape) -> Result<RMatrix> {
    let one = r.require_one()?;
    let big = shape.size(k);
    let mut v = RMatrix::zero(r.clone(), big);
    for i in 0..k {
        v.set(i, shape.target(i), one);
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    /// `e_i -> e_{2i}` (one-based).
    Even,
    /// `e_i -> e_{i+1}`.
    Shift,
}

impl Shape {
    fn size(self, k: usize) -> usize {
        match self {
            Shape::Even => 2 * k,
            Shape::Shift => k + 1,
        }
    }

    fn target(self, i: usize) -> usize {
        match self {
            Shape::Even => 2 * i + 1,
            Shape::Shift => i + 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Shape::Even => "even",
            Shape::Shift => "shift",
        }
    }
}

fn window_matrix(r: &Arc<FiniteRing>, k: usize, big: usize, mut code: u64) -> RMatrix {
    let q = r.order() as u64;
    let mut m = RMatrix::zero(r.clone(), big);
    for idx in (0..k * k).rev() {
        m.set(idx / k, idx % k, (code % q) as u32);
        code /= q;
    }
    m
}

fn phi_checks(r: &Arc<FiniteRing>, window: usize) -> Result<Vec<IdentityCheck>> {
    let q = r.order() as u64;
    let mut out = Vec::new();
    for k in 1..=window {
        let count = q.checked_pow((k * k) as u32).unwrap_or(u64::MAX);
        let pairs: Vec<(u64, u64)> = if count.saturating_mul(count) <= EXHAUSTIVE_PAIRS as u64 {
            (0..count)
                .flat_map(|a| (0..count).map(move |b| (a, b)))
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            (0..SAMPLED_PAIRS)
                .map(|_| (rng.gen_range(0..count), rng.gen_range(0..count)))
                .collect()
        };
        for shape in [Shape::Even, Shape::Shift] {
            let big = shape.size(k);
            let v = isometry(r, k, shape)?;
            let w = v.transpose();
            let vw = v.mul(&w);
            let phi = |a: &RMatrix| w.mul(a).mul(&v);
            let mut hyp = None;
            let mut hom = None;
            for &(x, y) in &pairs {
                let a = window_matrix(r, k, big, x);
                let b = window_matrix(r, k, big, y);
                let ab = a.mul(&b);
                if hyp.is_none() && a.mul(&vw).mul(&b) != ab {
                    hyp = Some(format!("a = {a:?}, a' = {b:?}"));
                }
                if hom.is_none() && phi(&a).mul(&phi(&b)) != phi(&ab) {
                    hom = Some(format!("a = {a:?}, a' = {b:?}"));
                }
                if hyp.is_some() && hom.is_some() {
                    break;
                }
            }
            out.push(IdentityCheck::new(
                format!("a VW a' = a a' ({} isometry, {k}x{k} window)", shape.name()),
                hyp,
            ));
            out.push(IdentityCheck::new(
                format!(
                    "phi^(V,W) multiplicative ({} isometry, {k}x{k} window)",
                    shape.name()
                ),
                hom,
            ));
        }
    }
    Ok(out)
}

/// Conjugation identities for the corner embeddings into `M_4(r)` and the
/// multiplicativity of `a -> W a V` on `k x k` windows, `k <= window`.
pub fn structural_identities_check(
    r: &Arc<FiniteRing>,
    window: usize,
) -> Result<Vec<IdentityCheck>> {
    r.require_one()?;
    let mut out = conjugation_checks(r)?;
    out.extend(phi_checks(r, window)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_over_f2_and_z4() {
        for r in [FiniteRing::zmod(2).unwrap(), FiniteRing::zmod(4).unwrap()] {
            let checks = structural_identities_check(&Arc::new(r), 2).unwrap();
            assert!(checks.len() >= 16);
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
    }

    #[test]
    fn phi_on_one_by_one_window_is_corner_move() {
        let r = Arc::new(FiniteRing::zmod(3).unwrap());
        let v = isometry(&r, 1, Shape::Even).unwrap();
        let a = window_matrix(&r, 1, 2, 2);
        let image = v.transpose().mul(&a).mul(&v);
        assert_eq!(image.rows(), vec![vec![0, 0], vec![0, 2]]);
    }

    #[test]
    fn non_isometry_breaks_hypothesis() {
        // V W = 0 kills the product a a'.
        let r = Arc::new(FiniteRing::zmod(2).unwrap());
        let v = RMatrix::zero(r.clone(), 2);
        let a = window_matrix(&r, 1, 2, 1);
        assert_ne!(a.mul(&v).mul(&v.transpose()).mul(&a), a.mul(&a));
    }
}
