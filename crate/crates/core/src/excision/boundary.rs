use std::sync::Arc;

use crate::abelian::Coords;
use crate::error::{Error, Result};
use crate::ring::{Elem, RMatrix};

use super::{Extension, NonunitalK0};

/// An invertible `g` over `C` with entrywise lifts `ĝ` of `g` and `ĝ*` of `g⁻¹` to `B`.
#[derive(Clone, Debug)]
pub struct BoundaryInput {
    pub g: RMatrix,
    pub g_hat: RMatrix,
    pub g_hat_star: RMatrix,
}

fn least_lift(ext: &Extension, m: &RMatrix) -> RMatrix {
    let entries = m.entries().iter().map(|&y| ext.least_lift(y)).collect();
    RMatrix::new(ext.b.clone(), m.n(), entries).expect("same shape")
}

fn check_lift(ext: &Extension, lift: &RMatrix, target: &RMatrix) -> Result<()> {
    if lift.n() != target.n() || !Arc::ptr_eq(lift.ring(), &ext.b) && **lift.ring() != *ext.b {
        return Err(Error::Dimension(
            "lift must be a matrix over B of the same size".into(),
        ));
    }
    for i in 0..target.n() {
        for j in 0..target.n() {
            if ext.proj[lift.get(i, j) as usize] != target.get(i, j) {
                return Err(Error::LiftMismatch { row: i, col: j });
            }
        }
    }
    Ok(())
}

impl BoundaryInput {
    /// Missing lifts default to the entrywise least preimage.
    pub fn new(
        ext: &Extension,
        g: RMatrix,
        g_hat: Option<RMatrix>,
        g_hat_star: Option<RMatrix>,
    ) -> Result<Self> {
        let g_inv = g.inverse()?.ok_or(Error::NotInvertible)?;
        let g_hat = g_hat.unwrap_or_else(|| least_lift(ext, &g));
        let g_hat_star = g_hat_star.unwrap_or_else(|| least_lift(ext, &g_inv));
        check_lift(ext, &g_hat, &g)?;
        check_lift(ext, &g_hat_star, &g_inv)?;
        Ok(BoundaryInput {
            g,
            g_hat,
            g_hat_star,
        })
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryValue {
    pub h: RMatrix,
    /// `h p_n h⁻¹`.
    pub conjugate: RMatrix,
    /// `[h p_n h⁻¹] - [p_n]` in `K_0(A)`.
    pub class: Coords,
}

fn corner_projection(ext: &Extension, n: usize) -> Result<RMatrix> {
    let id = RMatrix::identity(ext.b.clone(), n)?;
    let zero = RMatrix::zero(ext.b.clone(), n);
    RMatrix::block_diag(&id, &zero)
}

pub fn boundary_class(
    ext: &Extension,
    input: &BoundaryInput,
    k0_a: &NonunitalK0,
) -> Result<BoundaryValue> {
    let b = &ext.b;
    let n = input.g.n();
    let id = RMatrix::identity(b.clone(), n)?;
    let zero = RMatrix::zero(b.clone(), n);
    let upper = RMatrix::from_blocks(&id, &input.g_hat, &zero, &id)?;
    let lower = RMatrix::from_blocks(&id, &zero, &input.g_hat_star.neg(), &id)?;
    let rotation = RMatrix::from_blocks(&zero, &id.neg(), &id, &zero)?;
    let h = upper.mul(&lower).mul(&upper).mul(&rotation);

    let g_inv = input.g.inverse()?.ok_or(Error::NotInvertible)?;
    let expected = RMatrix::block_diag(&input.g, &g_inv)?;
    let reduced = h.map_entries(ext.c.clone(), &ext.proj);
    if reduced != expected {
        return Err(Error::IdentityFailed {
            which: "h reduces to diag(g, g^-1)".into(),
            witness: format!("{reduced:?}"),
        });
    }

    let p = corner_projection(ext, n)?;
    let h_inv = h.inverse()?.ok_or(Error::NotInvertible)?;
    let conjugate = h.mul(&p).mul(&h_inv);
    let diff = conjugate.sub(&p);

    let u = &k0_a.unitalization;
    let one_b = b.one().expect("B is unital");
    let size = 2 * n;
    let mut entries: Vec<Elem> = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let a = ext
                .ideal_position(diff.get(i, j))
                .ok_or(Error::NotInIdeal { row: i, col: j })?;
            let k = u64::from(p.get(i, j) == one_b);
            entries.push(u.pair(a, k));
        }
    }
    let lifted = RMatrix::new(u.ring.clone(), size, entries)?;
    let zero_a = ext.a().zero();
    let scalars: Vec<Elem> = b
        .elements()
        .map(|x| u.pair(zero_a, u64::from(x == one_b)))
        .collect();
    let p_tilde = p.map_entries(u.ring.clone(), &scalars);

    let report = &k0_a.report;
    let x = report.k0.add(
        &report.class_of(&lifted)?,
        &report.k0.neg(&report.class_of(&p_tilde)?),
    );
    let class = k0_a.coords_of(&x).ok_or_else(|| Error::IdentityFailed {
        which: "boundary lands in K_0(A)".into(),
        witness: format!("{x:?}"),
    })?;
    Ok(BoundaryValue {
        h,
        conjugate,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Context;
    use crate::excision::nonunital_k0;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_zero_boundary() {
        let ext = Extension::builtin("Z4_2Z4").unwrap();
        let k0 = nonunital_k0(ext.a(), 4, 2, &Context::default()).unwrap();
        let g = RMatrix::identity(ext.c.clone(), 1).unwrap();
        let input = BoundaryInput::new(&ext, g, None, None).unwrap();
        let v = boundary_class(&ext, &input, &k0).unwrap();
        assert!(k0.group.is_zero_element(&v.class));
    }

    #[test]
    fn lift_independence_over_z4() {
        let ext = Extension::builtin("Z4_2Z4").unwrap();
        let k0 = nonunital_k0(ext.a(), 4, 2, &Context::default()).unwrap();
        let g = RMatrix::identity(ext.c.clone(), 1).unwrap();
        let lifts = ext.lifts(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut classes = Vec::new();
        for _ in 0..20 {
            let gh =
                RMatrix::new(ext.b.clone(), 1, vec![*lifts.choose(&mut rng).unwrap()]).unwrap();
            let gs =
                RMatrix::new(ext.b.clone(), 1, vec![*lifts.choose(&mut rng).unwrap()]).unwrap();
            let input = BoundaryInput::new(&ext, g.clone(), Some(gh), Some(gs)).unwrap();
            classes.push(boundary_class(&ext, &input, &k0).unwrap().class);
        }
        assert!(classes.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn wrong_lift_rejected() {
        let ext = Extension::builtin("Z4_2Z4").unwrap();
        let g = RMatrix::identity(ext.c.clone(), 1).unwrap();
        let bad = RMatrix::new(ext.b.clone(), 1, vec![2]).unwrap();
        let err = BoundaryInput::new(&ext, g, Some(bad), None).unwrap_err();
        assert_eq!(err, Error::LiftMismatch { row: 0, col: 0 });
    }

    #[test]
    fn conjugate_differs_from_corner_inside_ideal() {
        let ext = Extension::builtin("F3eps_eps").unwrap();
        let k0 = nonunital_k0(ext.a(), 3, 2, &Context::default()).unwrap();
        for u in [1, 2] {
            let g = RMatrix::new(ext.c.clone(), 1, vec![u]).unwrap();
            let gh = RMatrix::new(ext.b.clone(), 1, vec![u + 3]).unwrap();
            let input = BoundaryInput::new(&ext, g, Some(gh), None).unwrap();
            let v = boundary_class(&ext, &input, &k0).unwrap();
            assert!(v.conjugate.is_idempotent());
            assert!(k0.group.is_zero_element(&v.class));
        }
    }
}
