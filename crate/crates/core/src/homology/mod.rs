//! Cyclic homology (Connes' complex) and bar homology of finite-dimensional
//! rational algebras, and the bar-homology obstruction to K-excision.

mod algebra;
mod complex;
pub mod linalg;

pub use algebra::{Algebra, AlgebraSpec, RationalAlgebra, BUILTIN_ALGEBRAS};
pub use complex::{ChainComplex, ComplexKind};

use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::PresentedAbelianGroup;
use crate::check::IdentityCheck;
use crate::config::Context;
use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

/// Homology dimensions as free abelian groups.
pub fn homology_ranks<F: FieldScalar>(c: &ChainComplex<F>) -> Vec<PresentedAbelianGroup> {
    c.homology_dims()
        .into_iter()
        .map(|d| PresentedAbelianGroup::from_invariants(d, vec![]))
        .collect()
}

fn verified<F: FieldScalar>(c: ChainComplex<F>) -> Result<ChainComplex<F>> {
    c.square_zero_check().into_result()?;
    Ok(c)
}

pub fn build_connes_complex<F: FieldScalar>(
    a: &Algebra<F>,
    n_max: usize,
    ctx: &Context,
) -> Result<ChainComplex<F>> {
    verified(ChainComplex::connes(a, n_max, ctx.budget.tensor_dim)?)
}

pub fn build_bar_complex<F: FieldScalar>(
    a: &Algebra<F>,
    n_max: usize,
    ctx: &Context,
) -> Result<ChainComplex<F>> {
    verified(ChainComplex::bar(a, n_max, ctx.budget.tensor_dim)?)
}

/// `dim HC_n` for `n = 0..=n`; builds one degree beyond.
pub fn cyclic_homology<F: FieldScalar>(
    a: &Algebra<F>,
    n: usize,
    ctx: &Context,
) -> Result<Vec<usize>> {
    let mut dims = build_connes_complex(a, n + 1, ctx)?.homology_dims();
    dims.truncate(n + 1);
    Ok(dims)
}

/// `dim H^bar_n(A/Q)` for `n = 0..=n`; builds one degree beyond.
pub fn bar_homology<F: FieldScalar>(a: &Algebra<F>, n: usize, ctx: &Context) -> Result<Vec<usize>> {
    let mut dims = build_bar_complex(a, n + 1, ctx)?.homology_dims();
    dims.truncate(n + 1);
    Ok(dims)
}

/// Largest `n <= 4` whose homology fits the tensor budget.
pub fn default_n_max(dim: usize, ctx: &Context) -> usize {
    (0..=4usize)
        .rev()
        .find(|&n| (dim as u128).saturating_pow(n as u32 + 2) <= ctx.budget.tensor_dim as u128)
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExcisionVerdict {
    /// `H^bar_degree(A/Q)` is nonzero, so `A` is not K-excisive.
    Obstructed { degree: usize, dim: usize },
    /// Bar homology vanishes through `degree`; this does not prove excisiveness.
    ClearUpTo { degree: usize },
}

/// Bar-homology verdict for an algebra given without unit.
pub fn excisiveness_verdict<F: FieldScalar>(
    a: &Algebra<F>,
    n_check: usize,
    ctx: &Context,
) -> Result<ExcisionVerdict> {
    if a.is_unital() {
        return Err(Error::UnitalInput(a.name.clone()));
    }
    let dims = bar_homology(a, n_check, ctx)?;
    Ok(match dims.iter().position(|&d| d != 0) {
        Some(degree) => ExcisionVerdict::Obstructed {
            degree,
            dim: dims[degree],
        },
        None => ExcisionVerdict::ClearUpTo { degree: n_check },
    })
}

/// For unital algebras: `H^bar_n = 0` for `n <= n_check`.
pub fn unital_bar_check<F: FieldScalar>(
    a: &Algebra<F>,
    n_check: usize,
    ctx: &Context,
) -> Result<IdentityCheck> {
    let dims = bar_homology(a, n_check, ctx)?;
    let failure = dims
        .iter()
        .position(|&d| d != 0)
        .map(|n| format!("H^bar_{n} has dimension {}", dims[n]));
    Ok(IdentityCheck::new(
        format!("H^bar_n({}) = 0 for n <= {n_check}", a.name),
        failure,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub algebra: String,
    pub dim: usize,
    pub unital: bool,
    pub n_max: usize,
    pub hc: Vec<usize>,
    pub hbar: Vec<usize>,
    pub hc0_oracle: usize,
    pub checks: Vec<IdentityCheck>,
    pub verdict: Value,
}

impl HomologyReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn homology_report<F: FieldScalar>(
    a: &Algebra<F>,
    n_max: usize,
    ctx: &Context,
) -> Result<HomologyReport> {
    let connes = build_connes_complex(a, n_max + 1, ctx)?;
    let bar = build_bar_complex(a, n_max + 1, ctx)?;
    let mut hc = connes.homology_dims();
    let mut hbar = bar.homology_dims();
    hc.truncate(n_max + 1);
    hbar.truncate(n_max + 1);
    let hc0_oracle = a.hc0_oracle();
    let checks = vec![
        connes.square_zero_check(),
        bar.square_zero_check(),
        IdentityCheck::new(
            "dim HC_0 = dim A/[A,A]",
            (hc[0] != hc0_oracle).then(|| format!("HC_0 = {}, oracle {hc0_oracle}", hc[0])),
        ),
    ];
    let verdict = match hbar.iter().position(|&d| d != 0) {
        _ if a.is_unital() => {
            json!({"status": "unital", "hbar_vanishes": hbar.iter().all(|&d| d == 0)})
        }
        Some(degree) => json!(ExcisionVerdict::Obstructed {
            degree,
            dim: hbar[degree]
        }),
        None => json!(ExcisionVerdict::ClearUpTo { degree: n_max }),
    };
    Ok(HomologyReport {
        algebra: a.name.clone(),
        dim: a.dim(),
        unital: a.is_unital(),
        n_max,
        hc,
        hbar,
        hc0_oracle,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> RationalAlgebra {
        RationalAlgebra::builtin(name).unwrap()
    }

    #[test]
    fn hc_of_q() {
        assert_eq!(
            cyclic_homology(&alg("Q"), 4, &Context::default()).unwrap(),
            vec![1, 0, 1, 0, 1]
        );
    }

    #[test]
    fn hc0_matches_oracle() {
        let ctx = Context::default();
        for name in BUILTIN_ALGEBRAS {
            let a = alg(name);
            assert_eq!(
                cyclic_homology(&a, 0, &ctx).unwrap()[0],
                a.hc0_oracle(),
                "{name}"
            );
        }
    }

    #[test]
    fn morita_probe() {
        let ctx = Context::default();
        assert_eq!(
            cyclic_homology(&alg("M2Q"), 2, &ctx).unwrap(),
            vec![1, 0, 1]
        );
    }

    #[test]
    fn unital_bar_vanishes() {
        let ctx = Context::default();
        for name in ["Q", "QxQ", "M2Q", "Qeps", "T2Q"] {
            assert!(
                unital_bar_check(&alg(name), 3, &ctx).unwrap().pass,
                "{name}"
            );
        }
    }

    #[test]
    fn square_zero_is_obstructed() {
        let ctx = Context::default();
        let v = excisiveness_verdict(&alg("sqzero1"), 3, &ctx).unwrap();
        assert_eq!(v, ExcisionVerdict::Obstructed { degree: 0, dim: 1 });
        assert_eq!(
            bar_homology(&alg("sqzero1"), 3, &ctx).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn augmentation_ideal_is_clear() {
        let v = excisiveness_verdict(&alg("augZ2"), 3, &Context::default()).unwrap();
        assert_eq!(v, ExcisionVerdict::ClearUpTo { degree: 3 });
    }

    #[test]
    fn unital_input_rerouted() {
        let ctx = Context::default();
        assert_eq!(
            excisiveness_verdict(&alg("Q"), 3, &ctx).unwrap_err(),
            Error::UnitalInput("Q".into())
        );
        assert_eq!(
            excisiveness_verdict(&alg("Q").forget_unit(), 3, &ctx).unwrap(),
            ExcisionVerdict::ClearUpTo { degree: 3 }
        );
    }

    #[test]
    fn report_shape() {
        let r = homology_report(&alg("sqzero1"), 3, &Context::default()).unwrap();
        assert!(r.checks.iter().all(|c| c.pass));
        let v = r.to_json();
        assert_eq!(v["verdict"]["status"], "obstructed");
        assert_eq!(v["hc"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn default_degree_fits_budget() {
        let ctx = Context::default();
        assert_eq!(default_n_max(1, &ctx), 4);
        assert_eq!(default_n_max(4, &ctx), 3);
    }
}
