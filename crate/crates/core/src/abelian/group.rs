//! Finitely generated abelian groups in invariant-factor form, their
//! elements, subgroups and homomorphisms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::hnf::{lattice_basis, left_kernel};
use super::intmat::IntMat;
use super::snf::smith_normal_form;

pub type IntMatrix = IntMat<BigInt>;

/// Normalized coordinates: torsion coordinates first (reduced mod their
/// invariant factor), then free coordinates.
pub type Coords = Vec<BigInt>;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, `d_i >= 2`.
///
/// `generator_images` has one row per presentation generator, giving its
/// normalized coordinates (before reduction).
#[derive(Clone, Debug)]
pub struct PresentedAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub generator_images: IntMatrix,
    /// Row `i`: integer combination of presentation generators equal to the
    /// i-th normalized generator.
    pub basis_preimages: IntMatrix,
}

impl PartialEq for PresentedAbelianGroup {
    /// Isomorphism type only.
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl Eq for PresentedAbelianGroup {}

impl Serialize for PresentedAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PresentedAbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let torsion: Vec<serde_json::Value> = self.torsion.iter().map(int_json).collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

pub fn int_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

/// Cokernel of `relations` (one relation per row, `gens` columns).
pub fn group_from_presentation(gens: usize, relations: &IntMatrix) -> PresentedAbelianGroup {
    assert_eq!(
        relations.cols(),
        gens,
        "relation matrix must have one column per generator"
    );
    let snf = smith_normal_form(relations);
    let mut torsion_cols = Vec::new();
    let mut torsion = Vec::new();
    let mut free_cols = Vec::new();
    for j in 0..gens {
        let d = snf.factors.get(j).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_cols.push(j);
        } else if !d.is_one() {
            torsion_cols.push(j);
            torsion.push(d);
        }
    }
    let kept: Vec<usize> = torsion_cols
        .iter()
        .chain(free_cols.iter())
        .copied()
        .collect();
    let mut images = IntMatrix::zeros(gens, kept.len());
    let mut preimages = IntMatrix::zeros(kept.len(), gens);
    for g in 0..gens {
        for (c, &j) in kept.iter().enumerate() {
            images[(g, c)] = snf.v[(g, j)].clone();
            preimages[(c, g)] = snf.v_inv[(j, g)].clone();
        }
    }
    PresentedAbelianGroup {
        free_rank: free_cols.len(),
        torsion,
        generator_images: images,
        basis_preimages: preimages,
    }
}

impl PresentedAbelianGroup {
    pub fn trivial() -> Self {
        PresentedAbelianGroup {
            free_rank: 0,
            torsion: vec![],
            generator_images: IntMatrix::zeros(0, 0),
            basis_preimages: IntMatrix::zeros(0, 0),
        }
    }

    /// A group with the given invariants, presented on its own normalized generators.
    pub fn from_invariants(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let n = torsion.len() + free_rank;
        PresentedAbelianGroup {
            free_rank,
            torsion,
            generator_images: IntMatrix::identity(n),
            basis_preimages: IntMatrix::identity(n),
        }
    }

    pub fn from_invariants_i64(free_rank: usize, torsion: &[i64]) -> Self {
        Self::from_invariants(
            free_rank,
            torsion.iter().map(|&d| BigInt::from(d)).collect(),
        )
    }

    /// Number of normalized coordinates.
    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn num_generators(&self) -> usize {
        self.generator_images.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    pub fn zero(&self) -> Coords {
        vec![BigInt::zero(); self.dim()]
    }

    pub fn normalize(&self, mut v: Coords) -> Coords {
        for (x, d) in v.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
        v
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Coords {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> Coords {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Coords {
        self.normalize(a.iter().map(|x| k * x).collect())
    }

    pub fn is_zero_element(&self, a: &[BigInt]) -> bool {
        self.normalize(a.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Coordinates of presentation generator `g`.
    pub fn generator(&self, g: usize) -> Coords {
        self.normalize(self.generator_images.row(g).to_vec())
    }

    /// Coordinates of `sum_g coeffs[g] * generator_g`.
    pub fn from_generator_coeffs(&self, coeffs: &[BigInt]) -> Coords {
        assert_eq!(coeffs.len(), self.num_generators());
        let mut out = self.zero();
        for (g, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.generator_images.row(g)) {
                *o += c * x;
            }
        }
        self.normalize(out)
    }

    /// Rows `d_i e_i` spanning the relation lattice inside `Z^dim`.
    pub fn relation_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = d.clone();
                r
            })
            .collect()
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<Coords>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|prefix: Coords| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// Invariant string such as `Z^2 + Z/2 + Z/6` (or `0`).
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Canonical lattice `H + D` for the subgroup `H = <gens>` of `ambient`.
fn lifted_lattice(ambient: &PresentedAbelianGroup, gens: &[Coords]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    rows.extend(ambient.relation_rows());
    lattice_basis(&rows, ambient.dim())
}

/// Whether two generating sets span the same subgroup.
pub fn same_subgroup(ambient: &PresentedAbelianGroup, a: &[Coords], b: &[Coords]) -> bool {
    lifted_lattice(ambient, a) == lifted_lattice(ambient, b)
}

/// Whether `x` lies in `<gens>`.
pub fn subgroup_contains(ambient: &PresentedAbelianGroup, gens: &[Coords], x: &[BigInt]) -> bool {
    let basis = lifted_lattice(ambient, gens);
    super::hnf::lattice_contains(&basis, x)
}

/// The subgroup `<gens>` as an abstract group, presented on `gens`.
pub fn subgroup_group(ambient: &PresentedAbelianGroup, gens: &[Coords]) -> PresentedAbelianGroup {
    let m = gens.len();
    if m == 0 {
        return PresentedAbelianGroup::trivial();
    }
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    rows.extend(ambient.relation_rows());
    let stacked = IntMatrix::from_rows(rows, ambient.dim());
    let kernel: Vec<Vec<BigInt>> = left_kernel(&stacked)
        .into_iter()
        .map(|k| k[..m].to_vec())
        .collect();
    let rel = IntMatrix::from_rows(kernel, m);
    group_from_presentation(m, &rel)
}

/// Coefficients `c` with `sum_k c[k] gens[k] == x` in `ambient`, if `x` lies in `<gens>`.
pub fn subgroup_coefficients(
    ambient: &PresentedAbelianGroup,
    gens: &[Coords],
    x: &[BigInt],
) -> Option<Vec<BigInt>> {
    let m = gens.len();
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    rows.extend(ambient.relation_rows());
    if rows.is_empty() {
        return x.iter().all(|v| v.is_zero()).then(Vec::new);
    }
    let stacked = IntMatrix::from_rows(rows, ambient.dim());
    let hf = super::hnf::hermite_normal_form(&stacked);
    let mut w = x.to_vec();
    let mut coeff = vec![BigInt::zero(); stacked.rows()];
    for (r, &c) in hf.pivots.iter().enumerate() {
        if w[c].is_zero() {
            continue;
        }
        let (q, rem) = w[c].div_rem(&hf.h[(r, c)]);
        if !rem.is_zero() {
            return None;
        }
        for (wj, hj) in w.iter_mut().zip(hf.h.row(r)) {
            *wj -= &q * hj;
        }
        coeff[r] = q;
    }
    if w.iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut out = vec![BigInt::zero(); m];
    for (r, c) in coeff.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, u) in out.iter_mut().zip(hf.u.row(r)) {
            *o += c * u;
        }
    }
    Some(out)
}

/// A homomorphism given by the images of the source's normalized generators.
#[derive(Clone, Debug)]
pub struct AbelianHom {
    pub source: PresentedAbelianGroup,
    pub target: PresentedAbelianGroup,
    /// `images[i]` = image of the i-th normalized coordinate generator of `source`.
    pub images: Vec<Coords>,
}

impl AbelianHom {
    /// Builds the homomorphism from images of the source's presentation generators.
    pub fn from_generator_images(
        source: PresentedAbelianGroup,
        target: PresentedAbelianGroup,
        gen_images: &[Coords],
    ) -> Self {
        assert_eq!(gen_images.len(), source.num_generators());
        let images = (0..source.dim())
            .map(|i| {
                let mut out = target.zero();
                for (c, img) in source.basis_preimages.row(i).iter().zip(gen_images) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, y) in out.iter_mut().zip(img) {
                        *o += c * y;
                    }
                }
                target.normalize(out)
            })
            .collect();
        AbelianHom {
            source,
            target,
            images,
        }
    }

    pub fn apply(&self, x: &[BigInt]) -> Coords {
        let mut out = self.target.zero();
        for (c, img) in x.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(img) {
                *o += c * y;
            }
        }
        self.target.normalize(out)
    }

    /// Torsion generators must map to elements killed by their order.
    pub fn is_well_defined(&self) -> bool {
        self.source
            .torsion
            .iter()
            .zip(&self.images)
            .all(|(d, img)| self.target.is_zero_element(&self.target.scale(d, img)))
    }

    pub fn image_generators(&self) -> Vec<Coords> {
        self.images
            .iter()
            .map(|v| self.target.normalize(v.clone()))
            .collect()
    }

    /// Generators of the kernel, in source coordinates.
    pub fn kernel_generators(&self) -> Vec<Coords> {
        let s = self.source.dim();
        let mut rows: Vec<Vec<BigInt>> = self.images.clone();
        rows.extend(self.target.relation_rows());
        if rows.is_empty() {
            return vec![];
        }
        let stacked = IntMatrix::from_rows(rows, self.target.dim());
        left_kernel(&stacked)
            .into_iter()
            .map(|k| self.source.normalize(k[..s].to_vec()))
            .filter(|k| k.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let ker = self.kernel_generators();
        same_subgroup(&self.source, &ker, &[])
    }

    pub fn is_surjective(&self) -> bool {
        let all: Vec<Coords> = (0..self.target.dim())
            .map(|i| {
                let mut e = self.target.zero();
                e[i] = BigInt::one();
                e
            })
            .collect();
        same_subgroup(&self.target, &self.image_generators(), &all)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Order of a subgroup, `None` when infinite; also returns its free rank.
pub fn subgroup_order(ambient: &PresentedAbelianGroup, gens: &[Coords]) -> (usize, Option<BigInt>) {
    let g = subgroup_group(ambient, gens);
    (g.free_rank, g.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Coords {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn presentations() {
        let g = group_from_presentation(1, &IntMatrix::zeros(0, 1));
        assert_eq!(g, PresentedAbelianGroup::from_invariants_i64(1, &[]));

        let g = group_from_presentation(1, &IntMatrix::from_i64_rows(&[vec![2]], 1));
        assert_eq!(g, PresentedAbelianGroup::from_invariants_i64(0, &[2]));

        let g = group_from_presentation(2, &IntMatrix::from_i64_rows(&[vec![1, -1]], 2));
        assert_eq!(g, PresentedAbelianGroup::from_invariants_i64(1, &[]));
        // both generators map to the same element
        assert_eq!(g.generator(0), g.generator(1));
    }

    #[test]
    fn klein_vs_cyclic() {
        let g = group_from_presentation(2, &IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(g.torsion, big(&[6]));
        assert_eq!(g.order(), Some(BigInt::from(6)));
        assert_eq!(g.elements().unwrap().len(), 6);
        let g = group_from_presentation(2, &IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]], 2));
        assert_eq!(g.describe(), "Z/2 + Z/2");
    }

    #[test]
    fn hom_kernel_image() {
        // Z -> Z/6, 1 -> 2 : kernel 3Z, image of order 3
        let src = PresentedAbelianGroup::from_invariants_i64(1, &[]);
        let tgt = PresentedAbelianGroup::from_invariants_i64(0, &[6]);
        let f = AbelianHom {
            source: src.clone(),
            target: tgt.clone(),
            images: vec![big(&[2])],
        };
        assert!(f.is_well_defined());
        let ker = f.kernel_generators();
        assert!(same_subgroup(&src, &ker, &[big(&[3])]));
        assert_eq!(
            subgroup_order(&tgt, &f.image_generators()),
            (0, Some(BigInt::from(3)))
        );
        assert!(!f.is_injective());
        assert!(!f.is_surjective());

        // Z/2 -> Z/4 by 1 -> 2 is injective
        let f = AbelianHom {
            source: PresentedAbelianGroup::from_invariants_i64(0, &[2]),
            target: PresentedAbelianGroup::from_invariants_i64(0, &[4]),
            images: vec![big(&[2])],
        };
        assert!(f.is_well_defined());
        assert!(f.is_injective());
        // Z/2 -> Z/4 by 1 -> 1 is not a homomorphism
        let g = AbelianHom {
            images: vec![big(&[1])],
            ..f
        };
        assert!(!g.is_well_defined());
    }

    #[test]
    fn preimages_recover_basis() {
        let rel = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let g = group_from_presentation(3, &rel);
        for i in 0..g.dim() {
            let mut e = g.zero();
            e[i] = BigInt::one();
            assert_eq!(
                g.from_generator_coeffs(g.basis_preimages.row(i)),
                g.normalize(e)
            );
        }
    }

    #[test]
    fn hom_from_presentation_generators() {
        // Z/6 presented on generators a, b with a = 3b - 2b... use 2a = 0, 3b = 0 and map into Z/6.
        let src =
            group_from_presentation(2, &IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]], 2));
        let tgt = PresentedAbelianGroup::from_invariants_i64(0, &[6]);
        let f = AbelianHom::from_generator_images(src.clone(), tgt, &[big(&[3]), big(&[2])]);
        assert!(f.is_well_defined());
        assert!(f.is_isomorphism());
        assert_eq!(f.apply(&src.generator(0)), big(&[3]));
        assert_eq!(f.apply(&src.generator(1)), big(&[2]));
    }

    #[test]
    fn coefficients_in_subgroup() {
        let amb = PresentedAbelianGroup::from_invariants_i64(1, &[4]);
        let gens = [big(&[2, 0]), big(&[0, 3])];
        let c = subgroup_coefficients(&amb, &gens, &big(&[2, 6])).unwrap();
        let mut sum = amb.zero();
        for (k, g) in c.iter().zip(&gens) {
            sum = amb.add(&sum, &amb.scale(k, g));
        }
        assert_eq!(sum, amb.normalize(big(&[2, 6])));
        assert!(subgroup_coefficients(&amb, &gens, &big(&[1, 0])).is_none());
        assert!(subgroup_coefficients(&amb, &gens, &big(&[0, 1])).is_none());
    }

    #[test]
    fn subgroup_as_group() {
        let amb = PresentedAbelianGroup::from_invariants_i64(1, &[4]);
        let h = subgroup_group(&amb, &[big(&[2, 0]), big(&[0, 3])]);
        assert_eq!(h, PresentedAbelianGroup::from_invariants_i64(1, &[2]));
    }
}
