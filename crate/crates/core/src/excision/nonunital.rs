use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{
    subgroup_coefficients, subgroup_group, AbelianHom, Coords, PresentedAbelianGroup,
};
use crate::config::Context;
use crate::error::Result;
use crate::kone::{k1_level, K1Level, TableGroup};
use crate::kzero::{k0_report, K0Report};
use crate::matgroup::Strategy;
use crate::ring::{unitalize_with_modulus, FiniteRing, RMatrix, Unitalization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KIndex {
    K0,
    K1,
}

/// `K_0(A) = ker(K_0(A~) -> K_0(Z/N))`.
#[derive(Clone, Debug)]
pub struct NonunitalK0 {
    pub unitalization: Unitalization,
    pub report: K0Report,
    pub augmentation: AbelianHom,
    /// Generators of the kernel, in the coordinates of `K_0(A~)`.
    pub kernel_gens: Vec<Coords>,
    /// Presented on `kernel_gens`.
    pub group: PresentedAbelianGroup,
}

impl NonunitalK0 {
    /// Coordinates in `group` of an element of `K_0(A~)` lying in the kernel.
    pub fn coords_of(&self, x: &[BigInt]) -> Option<Coords> {
        if self.kernel_gens.is_empty() {
            return self.report.k0.is_zero_element(x).then(Vec::new);
        }
        let c = subgroup_coefficients(&self.report.k0, &self.kernel_gens, x)?;
        Some(
            self.group
                .from_generator_coeffs(&c[..self.kernel_gens.len()]),
        )
    }

    /// The element of `K_0(A~)` with coordinates `c` in `group`.
    pub fn ambient_of(&self, c: &[BigInt]) -> Coords {
        let ambient = &self.report.k0;
        let mut out = ambient.zero();
        for (ci, pre) in c.iter().zip(self.group.basis_preimages.to_rows()) {
            for (k, g) in pre.iter().zip(&self.kernel_gens) {
                let coeff = ci * k;
                if coeff.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(g) {
                    *o += &coeff * x;
                }
            }
        }
        ambient.normalize(out)
    }
}

pub fn nonunital_k0(
    a: &FiniteRing,
    modulus: u64,
    n_max: usize,
    ctx: &Context,
) -> Result<NonunitalK0> {
    let u = unitalize_with_modulus(a, modulus)?;
    let report = k0_report(&u.ring, n_max, ctx)?;
    let scalars = k0_report(&u.scalars, n_max, ctx)?;
    let images = report.induced_images(&scalars, &u.augmentation)?;
    let augmentation =
        AbelianHom::from_generator_images(report.k0.clone(), scalars.k0.clone(), &images);
    let kernel_gens = augmentation.kernel_generators();
    let group = subgroup_group(&report.k0, &kernel_gens);
    Ok(NonunitalK0 {
        unitalization: u,
        report,
        augmentation,
        kernel_gens,
        group,
    })
}

/// `GL_n(A) / (E_n(A~) ∩ GL_n(A))` at one level, abelianized.
#[derive(Clone, Debug)]
pub struct NonunitalK1 {
    pub unitalization: Unitalization,
    pub level: K1Level,
    /// Coset labels of `GL_n(A~) / E_n(A~)` met by `GL_n(A)`, sorted.
    pub labels: Vec<usize>,
    pub image: TableGroup,
    /// Whether the image of `GL_n(A)` is abelian before abelianizing.
    pub quotient_abelian: bool,
    /// Presented on `labels`.
    pub group: PresentedAbelianGroup,
}

impl NonunitalK1 {
    /// Representative over `A~` of the coset with the given position in `labels`.
    pub fn representative(&self, i: usize) -> RMatrix {
        self.level.coset_rep(self.labels[i])
    }
}

pub fn nonunital_k1(a: &FiniteRing, modulus: u64, n: usize, ctx: &Context) -> Result<NonunitalK1> {
    let u = unitalize_with_modulus(a, modulus)?;
    let level = k1_level(&u.ring, n, Strategy::Brute, ctx)?;
    let one = u.scalars.one().expect("Z/N is unital");
    let zero = u.scalars.zero();
    let mut labels: Vec<usize> = level
        .gl
        .matrices()
        .filter(|g| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    u.augmentation[g.get(i, j) as usize] == if i == j { one } else { zero }
                })
            })
        })
        .map(|g| level.label_of(&g))
        .collect::<Result<_>>()?;
    labels.sort_unstable();
    labels.dedup();
    let pos = |l: u32| {
        labels
            .binary_search(&(l as usize))
            .expect("image of GL(A) is a subgroup") as u32
    };
    let identity = pos(level.quotient.identity());
    let table = labels
        .iter()
        .flat_map(|&x| labels.iter().map(move |&y| (x, y)))
        .map(|(x, y)| pos(level.quotient.mul(x as u32, y as u32)))
        .collect();
    let image = TableGroup::new(labels.len(), table, identity);
    let quotient_abelian = image.commutator_subgroup().len() == 1;
    let group = image.abelianization();
    Ok(NonunitalK1 {
        unitalization: u,
        level,
        labels,
        image,
        quotient_abelian,
        group,
    })
}

/// `K_0(A)` at `n_max` or `K_1(A)` at level `n`, unitalizing over `Z/N` for the
/// additive exponent `N` of `A`.
pub fn nonunital_k(
    a: &FiniteRing,
    which: KIndex,
    n: usize,
    ctx: &Context,
) -> Result<PresentedAbelianGroup> {
    let modulus = a.char_exponent();
    Ok(match which {
        KIndex::K0 => nonunital_k0(a, modulus, n, ctx)?.group,
        KIndex::K1 => nonunital_k1(a, modulus, n, ctx)?.group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excision::Extension;

    #[test]
    fn square_zero_ideal_of_z4() {
        let e = Extension::builtin("Z4_2Z4").unwrap();
        let ctx = Context::default();
        let k1 = nonunital_k1(e.a(), 4, 1, &ctx).unwrap();
        assert_eq!(k1.group.describe(), "Z/2");
        let k1 = nonunital_k1(e.a(), 4, 2, &ctx).unwrap();
        assert_eq!(k1.group.describe(), "Z/2");
        let k0 = nonunital_k0(e.a(), 4, 2, &ctx).unwrap();
        assert!(k0.group.is_trivial());
    }

    #[test]
    fn eps_ideal_over_f3() {
        let e = Extension::builtin("F3eps_eps").unwrap();
        let g = nonunital_k(e.a(), KIndex::K1, 1, &Context::default()).unwrap();
        assert_eq!(g.describe(), "Z/3");
    }

    #[test]
    fn unital_ideal_k0_is_its_own_k0() {
        let e = Extension::builtin("F3xF3_F3x0").unwrap();
        let k0 = nonunital_k0(e.a(), 3, 2, &Context::default()).unwrap();
        assert_eq!(k0.group.describe(), "Z");
        let x = k0.ambient_of(&k0.group.generator(0));
        assert_eq!(k0.coords_of(&x).unwrap(), k0.group.generator(0));
    }
}
