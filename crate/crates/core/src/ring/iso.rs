//! Exhaustive ring isomorphism search for small rings.

use super::{Elem, FiniteRing};

/// Whether the carrier map `f: a -> b` preserves addition and multiplication.
pub fn is_ring_homomorphism(a: &FiniteRing, b: &FiniteRing, f: &[Elem]) -> bool {
    f.len() == a.order()
        && a.elements().all(|x| {
            a.elements().all(|y| {
                f[a.add(x, y) as usize] == b.add(f[x as usize], f[y as usize])
                    && f[a.mul(x, y) as usize] == b.mul(f[x as usize], f[y as usize])
            })
        })
}

/// An isomorphism `a -> b` (matching units when both have one), if any.
///
/// Additive generators of `a` are chosen greedily; each candidate assignment
/// of their images is extended additively and then checked.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<Elem>> {
    if a.order() != b.order()
        || a.is_unital() != b.is_unital()
        || a.char_exponent() != b.char_exponent()
    {
        return None;
    }
    let order_a = |x: Elem| additive_order(a, x);
    let order_b = |x: Elem| additive_order(b, x);

    let mut gens = Vec::new();
    let mut span = vec![a.zero()];
    for x in a.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = close(a, &gens);
        }
    }
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| b.elements().filter(|&y| order_b(y) == order_a(g)).collect())
        .collect();

    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(f) = extend(a, b, &gens, &images) {
            let unit_ok = match (a.one(), b.one()) {
                (Some(x), Some(y)) => f[x as usize] == y,
                _ => true,
            };
            if unit_ok && is_ring_homomorphism(a, b, &f) {
                return Some(f);
            }
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn additive_order(r: &FiniteRing, x: Elem) -> u64 {
    let mut acc = x;
    let mut k = 1;
    while acc != r.zero() {
        acc = r.add(acc, x);
        k += 1;
    }
    k
}

fn close(r: &FiniteRing, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; r.order()];
    let mut out = vec![r.zero()];
    seen[r.zero() as usize] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = r.add(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Additive extension of `gens -> images`; `None` if inconsistent or not bijective.
fn extend(a: &FiniteRing, b: &FiniteRing, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    const UNSET: Elem = Elem::MAX;
    let mut f = vec![UNSET; a.order()];
    f[a.zero() as usize] = b.zero();
    let mut queue = vec![a.zero()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.add(x, g);
            let v = b.add(f[x as usize], h);
            match f[y as usize] {
                UNSET => {
                    f[y as usize] = v;
                    queue.push(y);
                }
                w if w != v => return None,
                _ => {}
            }
        }
        i += 1;
    }
    let mut hit = vec![false; b.order()];
    for &v in &f {
        if v == UNSET || std::mem::replace(&mut hit[v as usize], true) {
            return None;
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::unitalize_finite;

    #[test]
    fn unitalized_square_zero_is_dual_numbers() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let u = unitalize_finite(&FiniteRing::square_zero(2).unwrap()).unwrap();
        let dual = FiniteRing::dual_numbers(&f2).unwrap();
        assert!(find_isomorphism(&u.ring, &dual).is_some());
        assert!(find_isomorphism(&u.ring, &FiniteRing::zmod(4).unwrap()).is_none());
        assert!(find_isomorphism(&u.ring, &FiniteRing::product(&f2, &f2).unwrap()).is_none());

        let f3 = FiniteRing::zmod(3).unwrap();
        let u = unitalize_finite(&FiniteRing::square_zero(3).unwrap()).unwrap();
        assert!(find_isomorphism(&u.ring, &FiniteRing::dual_numbers(&f3).unwrap()).is_some());
    }

    #[test]
    fn unital_input_splits_off_scalars() {
        // For unital R: R + Z/N is R x Z/N via (a, n) -> (a + n 1, n).
        for n in [2, 3, 4] {
            let r = FiniteRing::zmod(n).unwrap();
            let u = unitalize_finite(&r).unwrap();
            let prod =
                FiniteRing::product(&r, &FiniteRing::zmod(r.char_exponent()).unwrap()).unwrap();
            let one = r.one().unwrap();
            let explicit: Vec<Elem> = u
                .ring
                .elements()
                .map(|x| {
                    let (a, k) = u.split(x);
                    FiniteRing::product_index(&r, r.add(a, r.smul(k as i64, one)), k as Elem)
                })
                .collect();
            assert!(is_ring_homomorphism(&u.ring, &prod, &explicit));
            assert!(find_isomorphism(&u.ring, &prod).is_some());
        }
    }

    #[test]
    fn gf4_automorphisms_exist_but_not_to_z4() {
        let f4 = FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap();
        assert!(find_isomorphism(&f4, &f4).is_some());
        assert!(find_isomorphism(&f4, &FiniteRing::zmod(4).unwrap()).is_none());
    }
}
