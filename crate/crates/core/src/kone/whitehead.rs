use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RMatrix};

/// `diag(α, α⁻¹)` written as four block factors of size `2n`, each also
/// split into elementary matrices.
#[derive(Clone, Debug)]
pub struct WhiteheadFactorization {
    pub alpha: RMatrix,
    pub alpha_inv: RMatrix,
    /// `[[1,α],[0,1]]`, `[[1,0],[-α⁻¹,1]]`, `[[1,α],[0,1]]`, `[[0,-1],[1,0]]`.
    pub blocks: Vec<RMatrix>,
    pub elementary: Vec<Vec<RMatrix>>,
}

impl WhiteheadFactorization {
    pub fn factors(&self) -> impl Iterator<Item = &RMatrix> {
        self.elementary.iter().flatten()
    }

    pub fn product(&self) -> RMatrix {
        let n2 = 2 * self.alpha.n();
        let id = RMatrix::identity(self.alpha.ring().clone(), n2).expect("unital ring");
        self.factors().fold(id, |acc, f| acc.mul(f))
    }

    pub fn target(&self) -> RMatrix {
        RMatrix::block_diag(&self.alpha, &self.alpha_inv).expect("same ring")
    }

    /// Product equals `diag(α, α⁻¹)`, every factor is elementary, and each
    /// block is the product of its own factors.
    pub fn verify(&self) -> bool {
        let r = self.alpha.ring().clone();
        let n2 = 2 * self.alpha.n();
        let Ok(id) = RMatrix::identity(r, n2) else {
            return false;
        };
        let blocks_ok = self
            .blocks
            .iter()
            .zip(&self.elementary)
            .all(|(b, fs)| fs.iter().fold(id.clone(), |acc, f| acc.mul(f)) == *b);
        let block_product = self.blocks.iter().fold(id, |acc, b| acc.mul(b));
        blocks_ok
            && block_product == self.target()
            && self.product() == self.target()
            && self.factors().all(RMatrix::is_elementary)
    }
}

fn upper(r: &Arc<FiniteRing>, x: &RMatrix, sign: bool) -> Result<(RMatrix, Vec<RMatrix>)> {
    split_unitriangular(r, x, sign, true)
}

fn lower(r: &Arc<FiniteRing>, y: &RMatrix, sign: bool) -> Result<(RMatrix, Vec<RMatrix>)> {
    split_unitriangular(r, y, sign, false)
}

/// `[[1,±X],[0,1]]` (or its lower transpose shape) and its entrywise
/// elementary decomposition; the factors commute.
fn split_unitriangular(
    r: &Arc<FiniteRing>,
    x: &RMatrix,
    negate: bool,
    upper: bool,
) -> Result<(RMatrix, Vec<RMatrix>)> {
    let n = x.n();
    let x = if negate { x.neg() } else { x.clone() };
    let id = RMatrix::identity(r.clone(), n)?;
    let zero = RMatrix::zero(r.clone(), n);
    let block = if upper {
        RMatrix::from_blocks(&id, &x, &zero, &id)?
    } else {
        RMatrix::from_blocks(&id, &zero, &x, &id)?
    };
    let mut factors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = x.get(i, j);
            if a == r.zero() {
                continue;
            }
            let (row, col) = if upper { (i, n + j) } else { (n + i, j) };
            factors.push(RMatrix::elementary(r.clone(), 2 * n, row, col, a)?);
        }
    }
    Ok((block, factors))
}

pub fn whitehead_factorization(alpha: &RMatrix) -> Result<WhiteheadFactorization> {
    let r = alpha.ring().clone();
    let one = r.require_one()?;
    let n = alpha.n();
    let alpha_inv = alpha.inverse()?.ok_or(Error::NotInvertible)?;

    let (b1, f1) = upper(&r, alpha, false)?;
    let (b2, f2) = lower(&r, &alpha_inv, true)?;
    let (b3, f3) = upper(&r, alpha, false)?;

    let id = RMatrix::identity(r.clone(), n)?;
    let zero = RMatrix::zero(r.clone(), n);
    let b4 = RMatrix::from_blocks(&zero, &id.neg(), &id, &zero)?;
    let minus_one = r.neg(one);
    let mut f4 = Vec::with_capacity(3 * n);
    for k in 0..n {
        f4.push(RMatrix::elementary(r.clone(), 2 * n, k, n + k, minus_one)?);
        f4.push(RMatrix::elementary(r.clone(), 2 * n, n + k, k, one)?);
        f4.push(RMatrix::elementary(r.clone(), 2 * n, k, n + k, minus_one)?);
    }

    Ok(WhiteheadFactorization {
        alpha: alpha.clone(),
        alpha_inv,
        blocks: vec![b1, b2, b3, b4],
        elementary: vec![f1, f2, f3, f4],
    })
}

/// Factors `samples` seeded random elements of `GL_2(r)` and checks each factorization.
pub fn whitehead_suite(
    r: &Arc<FiniteRing>,
    samples: usize,
    seed: u64,
) -> Result<Vec<IdentityCheck>> {
    r.require_one()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut product_failure = None;
    let mut elementary_failure = None;
    let mut done = 0;
    let mut tries = 0;
    while done < samples {
        tries += 1;
        if tries > 1000 * samples.max(1) {
            return Err(Error::BadInput(format!(
                "`{}` has too few invertible 2 x 2 matrices to sample",
                r.name()
            )));
        }
        let entries: Vec<Elem> = (0..4)
            .map(|_| rng.gen_range(0..r.order() as Elem))
            .collect();
        let a = RMatrix::new(r.clone(), 2, entries)?;
        if !a.is_invertible()? {
            continue;
        }
        let w = whitehead_factorization(&a)?;
        if product_failure.is_none() && w.product() != w.target() {
            product_failure = Some(format!("alpha = {:?}", a.rows()));
        }
        if elementary_failure.is_none() && !w.factors().all(RMatrix::is_elementary) {
            elementary_failure = Some(format!("alpha = {:?}", a.rows()));
        }
        done += 1;
    }
    Ok(vec![
        IdentityCheck::new(
            format!("product of factors = diag(alpha, alpha^-1), {samples} samples"),
            product_failure,
        ),
        IdentityCheck::new(
            format!("every factor is elementary, {samples} samples"),
            elementary_failure,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_of_z5() {
        let r = Arc::new(FiniteRing::zmod(5).unwrap());
        let a = RMatrix::from_rows(r.clone(), &[vec![2]]).unwrap();
        let w = whitehead_factorization(&a).unwrap();
        assert!(w.verify());
        assert_eq!(w.product().rows(), vec![vec![2, 0], vec![0, 3]]);
    }

    #[test]
    fn identity_gives_identity() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        let id = RMatrix::identity(r.clone(), 2).unwrap();
        let w = whitehead_factorization(&id).unwrap();
        assert!(w.verify());
        assert!(w.product().is_identity());
    }

    #[test]
    fn random_gl2_over_f4() {
        let r = Arc::new(FiniteRing::gf(2, 2, &[1, 1, 1]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 50 {
            let entries: Vec<u32> = (0..4).map(|_| rng.gen_range(0..4)).collect();
            let a = RMatrix::new(r.clone(), 2, entries).unwrap();
            if !a.is_invertible().unwrap() {
                continue;
            }
            let w = whitehead_factorization(&a).unwrap();
            assert!(w.verify(), "{a:?}");
            done += 1;
        }
    }

    #[test]
    fn suite_over_z5() {
        let r = Arc::new(FiniteRing::zmod(5).unwrap());
        assert!(whitehead_suite(&r, 100, 3).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn singular_rejected() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        let a = RMatrix::from_rows(r, &[vec![2]]).unwrap();
        assert!(matches!(
            whitehead_factorization(&a),
            Err(Error::NotInvertible)
        ));
    }
}
