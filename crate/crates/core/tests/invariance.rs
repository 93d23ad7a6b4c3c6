use klow::homology::{cyclic_homology, RationalAlgebra};
use klow::kone::{default_levels, k1_report};
use klow::kzero::{default_n_max, k0_report};
use klow::{Catalog, Context};

fn k0(name: &str) -> String {
    let ctx = Context::default();
    let r = Catalog::builtin().get(name).unwrap();
    k0_report(&r, default_n_max(&r, &ctx), &ctx)
        .unwrap()
        .k0
        .describe()
}

fn k1(name: &str) -> String {
    let ctx = Context::default();
    let r = Catalog::builtin().get(name).unwrap();
    k1_report(&r, &default_levels(&r, &ctx), &ctx)
        .unwrap()
        .k1()
        .describe()
}

#[test]
fn k0_is_additive_on_products() {
    assert_eq!(k0("F2"), "Z");
    assert_eq!(k0("F2xF2"), "Z^2");
}

#[test]
fn k0_is_morita_invariant() {
    assert_eq!(k0("M2F2"), k0("F2"));
}

#[test]
fn k1_of_field_is_unit_group() {
    for (name, q) in [("F3", 3), ("F4", 4), ("F5", 5)] {
        let expected = format!("Z/{}", q - 1);
        assert_eq!(k1(name), expected);
    }
}

#[test]
fn hc0_is_morita_invariant() {
    let ctx = Context::default();
    let q = RationalAlgebra::builtin("Q").unwrap();
    let m2 = RationalAlgebra::builtin("M2Q").unwrap();
    assert_eq!(
        cyclic_homology(&q, 0, &ctx).unwrap(),
        cyclic_homology(&m2, 0, &ctx).unwrap()
    );
}
