use std::sync::Arc;

use serde_json::{json, Value};

use crate::abelian::{subgroup_group, AbelianHom, Coords, PresentedAbelianGroup};
use crate::check::IdentityCheck;
use crate::config::Context;
use crate::error::{check_budget, Error, Result};
use crate::kone::k1_level;
use crate::matgroup::Strategy;
use crate::ring::{Elem, FiniteRing};

use super::{nonunital_k1, Extension};

#[derive(Clone, Debug)]
pub struct SwanReport {
    pub field: String,
    /// Matrix level of the relative computation.
    pub level: usize,
    /// `ker(K_1 T -> K_1(k x k))` for upper triangular `T` and its strict upper ideal `I`.
    pub relative_k1: PresentedAbelianGroup,
    /// `K_1(I)`, computed for `eps k` inside `k[eps]`.
    pub ideal_k1: PresentedAbelianGroup,
    pub mu: Elem,
    pub witness_checks: Vec<IdentityCheck>,
}

impl SwanReport {
    /// `K_1(I)` and `K_1(T:I)` differ, so `K_1` is not split exact.
    pub fn split_exactness_fails(&self) -> bool {
        self.relative_k1 != self.ideal_k1
    }

    pub fn witnesses_hold(&self) -> bool {
        self.witness_checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "level": self.level,
            "relative_k1": self.relative_k1,
            "ideal_k1": self.ideal_k1,
            "mu": self.mu,
            "witness_checks": self.witness_checks,
            "split_exactness_fails": self.split_exactness_fails(),
        })
    }
}

fn is_field(k: &FiniteRing) -> bool {
    k.is_unital()
        && k.is_commutative()
        && k.elements()
            .filter(|&x| x != k.zero())
            .all(|x| k.is_unit(x))
}

/// Checks `1 + λε = [diag(μ, 1), 1 + (λ/(μ-1)) ε]` in the units of `T`, for every `λ`.
fn commutator_witnesses(k: &FiniteRing, t: &FiniteRing, mu: Elem) -> Result<Vec<IdentityCheck>> {
    let one = k.require_one()?;
    let z = k.zero();
    let idx = |a, b, c| FiniteRing::triangular2_index(k, a, b, c);
    let inv = |x: Elem| t.inverse(x).ok_or(Error::NotInvertible);
    let denom = k.inverse(k.sub(mu, one)).ok_or(Error::NotInvertible)?;
    let x = idx(mu, z, one);
    let x_inv = inv(x)?;
    k.elements()
        .map(|lambda| {
            let y = idx(one, k.mul(lambda, denom), one);
            let comm = t.mul(t.mul(x, y), t.mul(x_inv, inv(y)?));
            let expected = idx(one, lambda, one);
            let failure = (comm != expected)
                .then(|| format!("lambda = {lambda}: got {comm}, expected {expected}"));
            Ok(IdentityCheck::new(
                format!("1 + {lambda} eps = [diag(mu, 1), 1 + {lambda}/(mu - 1) eps]"),
                failure,
            ))
        })
        .collect()
}

pub fn swan_check(k: &Arc<FiniteRing>, ctx: &Context) -> Result<SwanReport> {
    if k.order() == 2 {
        return Err(Error::FieldTooSmall(2));
    }
    if !is_field(k) {
        return Err(Error::BadInput(format!("`{}` is not a field", k.name())));
    }
    let t = Arc::new(FiniteRing::triangular2(k)?);
    let kk = Arc::new(FiniteRing::product(k, k)?);
    let q = k.order() as Elem;
    let level = if check_budget(t.order(), 4, ctx.budget.gl_candidates).is_ok() {
        2
    } else {
        1
    };

    let (lt, lkk) = rayon::join(
        || k1_level(&t, level, Strategy::Brute, ctx),
        || k1_level(&kk, level, Strategy::Brute, ctx),
    );
    let (lt, lkk) = (lt?, lkk?);
    let proj: Vec<Elem> = (0..t.order() as Elem)
        .map(|x| FiniteRing::product_index(k, x % q, x / (q * q)))
        .collect();
    let images: Vec<Coords> = (0..lt.coset_reps.len())
        .map(|l| lkk.class_of(&lt.coset_rep(l).map_entries(kk.clone(), &proj)))
        .collect::<Result<_>>()?;
    let map = AbelianHom::from_generator_images(lt.k1.clone(), lkk.k1.clone(), &images);
    let relative_k1 = subgroup_group(&lt.k1, &map.kernel_generators());

    let dual = Arc::new(FiniteRing::dual_numbers(k)?);
    let eps_ideal: Vec<Elem> = (0..q).map(|b| b * q).collect();
    let ext = Extension::new(
        dual.clone(),
        eps_ideal,
        k.clone(),
        (0..q * q).map(|x| x % q).collect(),
        None,
    )?;
    let ideal_k1 = nonunital_k1(ext.a(), dual.char_exponent(), 1, ctx)?.group;

    let one = k.require_one()?;
    let mu = k
        .elements()
        .find(|&x| x != k.zero() && x != one)
        .expect("field has at least 3 elements");
    let witness_checks = commutator_witnesses(k, &t, mu)?;
    Ok(SwanReport {
        field: k.name().to_string(),
        level,
        relative_k1,
        ideal_k1,
        mu,
        witness_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swan_over_f3() {
        let k = Arc::new(FiniteRing::zmod(3).unwrap());
        let r = swan_check(&k, &Context::default()).unwrap();
        assert_eq!(r.level, 2);
        assert!(r.relative_k1.is_trivial());
        assert_eq!(r.ideal_k1.describe(), "Z/3");
        assert_eq!(r.mu, 2);
        assert_eq!(r.witness_checks.len(), 3);
        assert!(r.witnesses_hold());
        assert!(r.split_exactness_fails());
    }

    #[test]
    fn f2_is_too_small() {
        let k = Arc::new(FiniteRing::zmod(2).unwrap());
        assert_eq!(
            swan_check(&k, &Context::default()).unwrap_err(),
            Error::FieldTooSmall(2)
        );
    }

    #[test]
    fn non_field_rejected() {
        let k = Arc::new(FiniteRing::zmod(4).unwrap());
        assert!(matches!(
            swan_check(&k, &Context::default()),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn zero_lambda_witness_is_trivial() {
        let k = FiniteRing::zmod(5).unwrap();
        let t = FiniteRing::triangular2(&k).unwrap();
        let checks = commutator_witnesses(&k, &t, 3).unwrap();
        assert!(checks.iter().all(|c| c.pass));
    }
}
