use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RMatrix};

use super::{window_mismatch, IndexMap, LazyMatrix, Membership};

/// A decomposition `N = N_0 ⊔ N_1` through the injections `psi_0`, `psi_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub psi0: IndexMap,
    pub psi1: IndexMap,
}

impl Split {
    pub const EVEN_ODD: Split = Split {
        psi0: IndexMap::affine(2, 0),
        psi1: IndexMap::affine(2, -1),
    };
    pub const MOD_THREE: Split = Split {
        psi0: IndexMap::affine(3, 0),
        psi1: IndexMap::SkipMultiples { m: 3 },
    };
}

/// `alpha_i = sum e_{n, psi_i(n)}` and `beta_i` its transpose.
#[derive(Clone, Debug)]
pub struct SumRingGenerators {
    pub alpha0: LazyMatrix,
    pub beta0: LazyMatrix,
    pub alpha1: LazyMatrix,
    pub beta1: LazyMatrix,
}

impl SumRingGenerators {
    pub fn new(ring: &Arc<FiniteRing>, split: Split) -> Result<Self> {
        Ok(SumRingGenerators {
            alpha0: LazyMatrix::co_isometry(ring, split.psi0)?,
            beta0: LazyMatrix::isometry(ring, split.psi0)?,
            alpha1: LazyMatrix::co_isometry(ring, split.psi1)?,
            beta1: LazyMatrix::isometry(ring, split.psi1)?,
        })
    }

    pub fn standard(ring: &Arc<FiniteRing>) -> Result<Self> {
        Self::new(ring, Split::EVEN_ODD)
    }

    /// `beta_0 a alpha_0 + beta_1 b alpha_1`.
    pub fn box_plus(&self, a: &LazyMatrix, b: &LazyMatrix) -> Result<LazyMatrix> {
        let left = LazyMatrix::product(&[self.beta0.clone(), a.clone(), self.alpha0.clone()])?;
        let right = LazyMatrix::product(&[self.beta1.clone(), b.clone(), self.alpha1.clone()])?;
        left.add(&right)
    }

    /// Permutation `pi` with `pi psi_i = psi'_i`, as `sum beta'_i alpha_i`.
    pub fn permutation_to(&self, other: &SumRingGenerators) -> Result<LazyMatrix> {
        other
            .beta0
            .mul(&self.alpha0)?
            .add(&other.beta1.mul(&self.alpha1)?)
    }
}

/// `a ⊞ b` for the even/odd split.
pub fn box_plus(a: &LazyMatrix, b: &LazyMatrix) -> Result<LazyMatrix> {
    SumRingGenerators::standard(a.ring())?.box_plus(a, b)
}

/// `sum_{k < terms} beta_1^k beta_0 a alpha_0 alpha_1^k`.
pub fn phi_operator_series(a: &LazyMatrix, terms: u32) -> Result<LazyMatrix> {
    let g = SumRingGenerators::standard(a.ring())?;
    let mut acc = LazyMatrix::zero(a.ring());
    for k in 0..terms as usize {
        let term = LazyMatrix::product(&[
            g.beta1.pow(k)?,
            g.beta0.clone(),
            a.clone(),
            g.alpha0.clone(),
            g.alpha1.pow(k)?,
        ])?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

fn compare(
    name: impl Into<String>,
    lhs: &LazyMatrix,
    rhs: &LazyMatrix,
    n: usize,
) -> Result<IdentityCheck> {
    let failure = window_mismatch(lhs, rhs, n)?
        .map(|(p, q, x, y)| format!("entry ({p}, {q}): left {x}, right {y}"));
    Ok(IdentityCheck::new(name, failure))
}

fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

fn random_matrix(ring: &Arc<FiniteRing>, n: usize, rng: &mut ChaCha8Rng) -> Result<RMatrix> {
    let rows: Vec<Vec<Elem>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_range(0..ring.order() as Elem))
                .collect()
        })
        .collect();
    RMatrix::from_rows(ring.clone(), &rows)
}

fn random_finite(ring: &Arc<FiniteRing>, n: usize, rng: &mut ChaCha8Rng) -> Result<LazyMatrix> {
    Ok(LazyMatrix::finite(&random_matrix(ring, n, rng)?))
}

/// Sum-ring, `⊞` and `phi^infinity` identities on exact `n x n` windows.
pub fn sum_ring_identities(ring: &Arc<FiniteRing>, n: usize) -> Result<Vec<IdentityCheck>> {
    if n < 4 {
        return Err(Error::BadInput(format!("window {n} is smaller than 4")));
    }
    let one = ring.require_one()?;
    let g = SumRingGenerators::standard(ring)?;
    let id = LazyMatrix::identity(ring)?;
    let zero = LazyMatrix::zero(ring);
    let mut checks = vec![
        compare("alpha0 beta0 = 1", &g.alpha0.mul(&g.beta0)?, &id, n)?,
        compare("alpha1 beta1 = 1", &g.alpha1.mul(&g.beta1)?, &id, n)?,
        compare(
            "beta0 alpha0 + beta1 alpha1 = 1",
            &g.beta0.mul(&g.alpha0)?.add(&g.beta1.mul(&g.alpha1)?)?,
            &id,
            n,
        )?,
        compare("alpha1 beta0 = 0", &g.alpha1.mul(&g.beta0)?, &zero, n)?,
        compare("alpha0 beta1 = 0", &g.alpha0.mul(&g.beta1)?, &zero, n)?,
    ];

    let top = floor_log2(n) as usize;
    for i in 0..=top {
        for j in 0..=top {
            let lhs = LazyMatrix::product(&[
                g.alpha0.clone(),
                g.alpha1.pow(i)?,
                g.beta1.pow(j)?,
                g.beta0.clone(),
            ])?;
            let rhs = if i == j { &id } else { &zero };
            checks.push(compare(
                format!("alpha0 alpha1^{i} beta1^{j} beta0 = delta"),
                &lhs,
                rhs,
                n,
            )?);
        }
    }

    checks.push(compare("1 ⊞ 1 = 1", &g.box_plus(&id, &id)?, &id, n)?);
    checks.push(compare("0 ⊞ 0 = 0", &g.box_plus(&zero, &zero)?, &zero, n)?);

    let e11 = LazyMatrix::unit(ring, 1, 1, one)?;
    let e12 = LazyMatrix::unit(ring, 1, 2, one)?;
    let e22 = LazyMatrix::unit(ring, 2, 2, one)?;
    checks.push(compare(
        "e11 ⊞ e11 = e22 + e11",
        &g.box_plus(&e11, &e11)?,
        &e22.add(&e11)?,
        n,
    )?);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in 0..4 {
        let [a, b, c, d] = [0; 4].map(|_| random_finite(ring, 2, &mut rng));
        let (a, b, c, d) = (a?, b?, c?, d?);
        let lhs = g.box_plus(&a, &b)?.mul(&g.box_plus(&c, &d)?)?;
        let rhs = g.box_plus(&a.mul(&c)?, &b.mul(&d)?)?;
        checks.push(compare(
            format!("(a ⊞ b)(c ⊞ d) = ac ⊞ bd, sample {t}"),
            &lhs,
            &rhs,
            n,
        )?);
    }

    for (label, a) in [("e11", &e11), ("e12", &e12)] {
        let phi = LazyMatrix::phi_infinity(a)?;
        checks.push(compare(
            format!("{label} ⊞ phi_inf({label}) = phi_inf({label})"),
            &g.box_plus(a, &phi)?,
            &phi,
            n,
        )?);
        let series = phi_operator_series(a, floor_log2(n) + 1)?;
        checks.push(compare(
            format!("phi_inf({label}) = operator series"),
            &phi,
            &series,
            n,
        )?);
    }

    for t in 0..4 {
        let a = random_matrix(ring, 3, &mut rng)?;
        let b = random_matrix(ring, 3, &mut rng)?;
        let lhs = LazyMatrix::phi_infinity(&LazyMatrix::finite(&a.mul(&b)))?;
        let rhs = LazyMatrix::phi_infinity(&LazyMatrix::finite(&a))?
            .mul(&LazyMatrix::phi_infinity(&LazyMatrix::finite(&b))?)?;
        checks.push(compare(
            format!("phi_inf(ab) = phi_inf(a) phi_inf(b), sample {t}"),
            &lhs,
            &rhs,
            n,
        )?);
    }
    Ok(checks)
}

/// `⊞` from the even/odd and mod-3 splits agree after conjugating by the induced permutation.
pub fn alternative_split_check(ring: &Arc<FiniteRing>, n: usize) -> Result<Vec<IdentityCheck>> {
    let one = ring.require_one()?;
    let even = SumRingGenerators::new(ring, Split::EVEN_ODD)?;
    let three = SumRingGenerators::new(ring, Split::MOD_THREE)?;
    let pi = even.permutation_to(&three)?;
    let pi_t = pi.transpose();
    let id = LazyMatrix::identity(ring)?;
    let mut checks = vec![
        compare("pi pi^t = 1", &pi.mul(&pi_t)?, &id, n)?,
        compare("pi^t pi = 1", &pi_t.mul(&pi)?, &id, n)?,
        compare(
            "mod-3 sum ring: beta0 alpha0 + beta1 alpha1 = 1",
            &three
                .beta0
                .mul(&three.alpha0)?
                .add(&three.beta1.mul(&three.alpha1)?)?,
            &id,
            n,
        )?,
    ];
    let e11 = LazyMatrix::unit(ring, 1, 1, one)?;
    let e12 = LazyMatrix::unit(ring, 1, 2, one)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x3117);
    let samples = [
        (e11.clone(), e12.clone()),
        (e12, e11),
        (
            random_finite(ring, 2, &mut rng)?,
            random_finite(ring, 3, &mut rng)?,
        ),
    ];
    for (t, (a, b)) in samples.iter().enumerate() {
        let lhs = three.box_plus(a, b)?;
        let rhs = LazyMatrix::product(&[pi.clone(), even.box_plus(a, b)?, pi_t.clone()])?;
        checks.push(compare(
            format!("a ⊞' b = pi (a ⊞ b) pi^t, sample {t}"),
            &lhs,
            &rhs,
            n,
        )?);
    }
    Ok(checks)
}

/// Every cone-ring check: sum-ring identities, alternative splits, membership and support soundness.
pub fn cone_suite(ring: &Arc<FiniteRing>, n: usize) -> Result<Vec<IdentityCheck>> {
    let mut checks = sum_ring_identities(ring, n)?;
    checks.extend(alternative_split_check(ring, n)?);

    let one = ring.require_one()?;
    let g = SumRingGenerators::standard(ring)?;
    let phi = LazyMatrix::phi_infinity(&LazyMatrix::unit(ring, 1, 2, one)?)?;
    let samples = [
        ("alpha0", g.alpha0.clone()),
        ("beta1", g.beta1.clone()),
        ("phi_inf(e12)", phi.clone()),
        (
            "alpha0 phi_inf(e12) beta1",
            LazyMatrix::product(&[g.alpha0.clone(), phi, g.beta1.clone()])?,
        ),
    ];
    for (label, m) in &samples {
        let membership = m.membership();
        checks.push(IdentityCheck::new(
            format!("{label} in gamma"),
            (membership != Membership::Gamma).then(|| format!("{membership:?}")),
        ));
        let probe = m.probe_supports(1000, 4 * n, 7)?;
        checks.push(IdentityCheck::new(
            format!("{label} supports sound"),
            probe.map(|(p, q)| format!("nonzero entry ({p}, {q}) outside the declared support")),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::super::printed_phi_index;
    use super::*;

    fn assert_all(checks: &[IdentityCheck]) {
        for c in checks {
            assert!(c.pass, "{} failed: {:?}", c.identity, c.witness);
        }
    }

    #[test]
    fn f2_window_64() {
        let r = Arc::new(FiniteRing::zmod(2).unwrap());
        assert_all(&sum_ring_identities(&r, 64).unwrap());
    }

    #[test]
    fn z4_window_64() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        assert_all(&cone_suite(&r, 64).unwrap());
    }

    #[test]
    fn delta_at_zero_is_first_identity() {
        let r = Arc::new(FiniteRing::zmod(2).unwrap());
        let checks = sum_ring_identities(&r, 8).unwrap();
        assert!(checks
            .iter()
            .any(|c| c.identity == "alpha0 alpha1^0 beta1^0 beta0 = delta" && c.pass));
    }

    #[test]
    fn small_window_rejected() {
        let r = Arc::new(FiniteRing::zmod(2).unwrap());
        assert!(sum_ring_identities(&r, 3).is_err());
    }

    #[test]
    fn printed_index_family_is_not_absorbing() {
        // a ⊞ a^inf sends index i of a to 2i and index p of a^inf to 2p - 1.
        let printed: Vec<usize> = (0..6).map(|k| printed_phi_index(k, 1)).collect();
        let mut absorbed: Vec<usize> = std::iter::once(2)
            .chain(printed.iter().map(|p| 2 * p - 1))
            .collect();
        absorbed.truncate(printed.len());
        assert_ne!(absorbed, printed);
        let operator: Vec<usize> = (0..6).map(|k| super::super::phi_index(k, 1)).collect();
        let mut absorbed: Vec<usize> = std::iter::once(2)
            .chain(operator.iter().map(|p| 2 * p - 1))
            .collect();
        absorbed.truncate(operator.len());
        assert_eq!(absorbed, operator);
    }

    #[test]
    fn mod_three_permutation() {
        let r = Arc::new(FiniteRing::zmod(2).unwrap());
        let even = SumRingGenerators::new(&r, Split::EVEN_ODD).unwrap();
        let three = SumRingGenerators::new(&r, Split::MOD_THREE).unwrap();
        let pi = even.permutation_to(&three).unwrap();
        let image: Vec<usize> = (1..=6)
            .map(|q| (1..=12).find(|&p| pi.entry(p, q).unwrap() == 1).unwrap())
            .collect();
        assert_eq!(image, vec![1, 3, 2, 6, 4, 9]);
        assert_all(&alternative_split_check(&r, 32).unwrap());
    }
}
