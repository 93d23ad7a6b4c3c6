use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::group::int_json;
use crate::abelian::{same_subgroup, subgroup_order, AbelianHom, Coords, PresentedAbelianGroup};
use crate::config::Context;
use crate::error::Result;
use crate::kone::{k1_level, K1Level};
use crate::kzero::{k0_report, K0Report};
use crate::matgroup::Strategy;

use super::{
    boundary_class, nonunital_k0, nonunital_k1, BoundaryInput, Extension, NonunitalK0, NonunitalK1,
};

#[derive(Clone, Debug, Serialize)]
pub struct NodeVerdict {
    pub at: &'static str,
    #[serde(serialize_with = "opt_int")]
    pub image_order: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub kernel_order: Option<BigInt>,
    pub exact: bool,
}

fn opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(int_json).serialize(s)
}

/// `K_1A -> K_1B -> K_1C -> K_0A -> K_0B -> K_0C` with exactness at the four interior nodes.
#[derive(Clone, Debug)]
pub struct SixTermReport {
    pub level: usize,
    pub n_max: usize,
    pub k1_a: NonunitalK1,
    pub k1_b: K1Level,
    pub k1_c: K1Level,
    pub k0_a: NonunitalK0,
    pub k0_b: K0Report,
    pub k0_c: K0Report,
    pub k1_ab: AbelianHom,
    pub k1_bc: AbelianHom,
    pub boundary: AbelianHom,
    pub k0_ab: AbelianHom,
    pub k0_bc: AbelianHom,
    /// `∂(xy) = ∂x + ∂y` on every pair of `K_1C` cosets.
    pub boundary_additive: bool,
    pub nodes: Vec<NodeVerdict>,
}

fn node(
    at: &'static str,
    ambient: &PresentedAbelianGroup,
    incoming: &AbelianHom,
    outgoing: &AbelianHom,
) -> NodeVerdict {
    let image = incoming.image_generators();
    let kernel = outgoing.kernel_generators();
    NodeVerdict {
        at,
        image_order: subgroup_order(ambient, &image).1,
        kernel_order: subgroup_order(ambient, &kernel).1,
        exact: same_subgroup(ambient, &image, &kernel),
    }
}

/// Runs at K_1 level `level`; K_0 groups are computed up to size `2 level`,
/// which the boundary needs.
pub fn six_term_check(ext: &Extension, level: usize, ctx: &Context) -> Result<SixTermReport> {
    let n_max = 2 * level;
    let modulus = ext.b.char_exponent();
    let (a_side, (k1_side, k0_side)) = rayon::join(
        || -> Result<_> {
            Ok((
                nonunital_k1(ext.a(), modulus, level, ctx)?,
                nonunital_k0(ext.a(), modulus, n_max, ctx)?,
            ))
        },
        || {
            rayon::join(
                || -> Result<_> {
                    Ok((
                        k1_level(&ext.b, level, Strategy::Brute, ctx)?,
                        k1_level(&ext.c, level, Strategy::Brute, ctx)?,
                    ))
                },
                || -> Result<_> {
                    Ok((
                        k0_report(&ext.b, n_max, ctx)?,
                        k0_report(&ext.c, n_max, ctx)?,
                    ))
                },
            )
        },
    );
    let (k1_a, k0_a) = a_side?;
    let (k1_b, k1_c) = k1_side?;
    let (k0_b, k0_c) = k0_side?;

    let u = &k1_a.unitalization;
    let to_b = ext.unitalized_to_b(u);
    let images: Vec<Coords> = (0..k1_a.labels.len())
        .map(|i| k1_b.class_of(&k1_a.representative(i).map_entries(ext.b.clone(), &to_b)))
        .collect::<Result<_>>()?;
    let k1_ab = AbelianHom::from_generator_images(k1_a.group.clone(), k1_b.k1.clone(), &images);

    let images: Vec<Coords> = (0..k1_b.coset_reps.len())
        .map(|l| k1_c.class_of(&k1_b.coset_rep(l).map_entries(ext.c.clone(), &ext.proj)))
        .collect::<Result<_>>()?;
    let k1_bc = AbelianHom::from_generator_images(k1_b.k1.clone(), k1_c.k1.clone(), &images);

    let values: Vec<Coords> = (0..k1_c.coset_reps.len())
        .map(|l| {
            let input = BoundaryInput::new(ext, k1_c.coset_rep(l), None, None)?;
            Ok(boundary_class(ext, &input, &k0_a)?.class)
        })
        .collect::<Result<_>>()?;
    let q = &k1_c.quotient;
    let boundary_additive = (0..q.order() as u32).all(|x| {
        (0..q.order() as u32).all(|y| {
            let xy = q.mul(x, y) as usize;
            k0_a.group.add(&values[x as usize], &values[y as usize]) == values[xy]
        })
    });
    let boundary = AbelianHom::from_generator_images(k1_c.k1.clone(), k0_a.group.clone(), &values);

    let to_b0 = ext.unitalized_to_b(&k0_a.unitalization);
    let class_images = k0_a.report.induced_images(&k0_b, &to_b0)?;
    let ambient =
        AbelianHom::from_generator_images(k0_a.report.k0.clone(), k0_b.k0.clone(), &class_images);
    let images: Vec<Coords> = k0_a.kernel_gens.iter().map(|g| ambient.apply(g)).collect();
    let k0_ab = AbelianHom::from_generator_images(k0_a.group.clone(), k0_b.k0.clone(), &images);

    let images = k0_b.induced_images(&k0_c, &ext.proj)?;
    let k0_bc = AbelianHom::from_generator_images(k0_b.k0.clone(), k0_c.k0.clone(), &images);

    let nodes = vec![
        node("K1B", &k1_b.k1, &k1_ab, &k1_bc),
        node("K1C", &k1_c.k1, &k1_bc, &boundary),
        node("K0A", &k0_a.group, &boundary, &k0_ab),
        node("K0B", &k0_b.k0, &k0_ab, &k0_bc),
    ];
    Ok(SixTermReport {
        level,
        n_max,
        k1_a,
        k1_b,
        k1_c,
        k0_a,
        k0_b,
        k0_c,
        k1_ab,
        k1_bc,
        boundary,
        k0_ab,
        k0_bc,
        boundary_additive,
        nodes,
    })
}

impl SixTermReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "n_max": self.n_max,
            "groups": {
                "K1A": self.k1_a.group,
                "K1B": self.k1_b.k1,
                "K1C": self.k1_c.k1,
                "K0A": self.k0_a.group,
                "K0B": self.k0_b.k0,
                "K0C": self.k0_c.k0,
            },
            "maps": {
                "K1A->K1B": {"injective": self.k1_ab.is_injective(), "surjective": self.k1_ab.is_surjective()},
                "K1B->K1C": {"injective": self.k1_bc.is_injective(), "surjective": self.k1_bc.is_surjective()},
                "K0A->K0B": {"injective": self.k0_ab.is_injective(), "surjective": self.k0_ab.is_surjective()},
                "K0B->K0C": {"injective": self.k0_bc.is_injective(), "surjective": self.k0_bc.is_surjective()},
            },
            "boundary_additive": self.boundary_additive,
            "nodes": self.nodes,
            "exact": self.exact(),
            "finite_truncation": true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str) -> SixTermReport {
        six_term_check(&Extension::builtin(name).unwrap(), 1, &Context::default()).unwrap()
    }

    #[test]
    fn z4_over_f2() {
        let r = run("Z4_2Z4");
        assert!(r.exact(), "{:?}", r.nodes);
        assert_eq!(r.k1_a.group.describe(), "Z/2");
        assert_eq!(r.k1_b.k1.describe(), "Z/2");
        assert!(r.k1_c.k1.is_trivial());
        assert!(r.k0_a.group.is_trivial());
        assert!(r.k1_ab.is_surjective());
        assert!(r.k0_bc.is_injective());
        assert!(r.boundary_additive);
    }

    #[test]
    fn split_extension_is_k0_injective() {
        let r = run("F3xF3_F3x0");
        assert!(r.exact());
        assert!(r.k0_ab.is_injective());
        assert_eq!(r.k0_b.k0.describe(), "Z^2");
    }

    #[test]
    fn dual_numbers_over_f3() {
        let r = run("F3eps_eps");
        assert!(r.exact());
        assert!(r.k1_bc.is_surjective());
        let ker = r.k1_bc.kernel_generators();
        assert_eq!(subgroup_order(&r.k1_b.k1, &ker).1, Some(BigInt::from(3)));
        assert!(r
            .boundary
            .image_generators()
            .iter()
            .all(|v| r.k0_a.group.is_zero_element(v)));
    }

    #[test]
    fn verdict_json_shape() {
        let v = run("Z4_2Z4").to_json();
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 4);
        assert_eq!(nodes[0]["at"], "K1B");
        assert_eq!(nodes[3]["image_order"], 1);
        assert_eq!(nodes[3]["exact"], true);
    }
}
