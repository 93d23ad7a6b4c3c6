use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_ratio, FieldScalar};
use crate::Rational;

use super::linalg::{rank, SparseVec};

/// Finite-dimensional associative algebra given by structure constants
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F> {
    pub name: String,
    dim: usize,
    constants: Vec<F>,
    unit: Option<Vec<F>>,
}

/// JSON form: constants flattened in `(i, j, k)` order as `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub constants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

impl<F: FieldScalar> Algebra<F> {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        constants: Vec<F>,
        unit: Option<Vec<F>>,
    ) -> Result<Self> {
        let name = name.into();
        if constants.len() != dim * dim * dim {
            return Err(Error::Dimension(format!(
                "{} structure constants for dimension {dim}",
                constants.len()
            )));
        }
        if unit.as_ref().is_some_and(|u| u.len() != dim) {
            return Err(Error::Dimension("unit vector length".into()));
        }
        let a = Algebra {
            name,
            dim,
            constants,
            unit,
        };
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[F]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i e_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec<F> {
        (0..self.dim)
            .filter_map(|k| {
                let c = self.constant(i, j, k);
                (!c.is_zero()).then(|| (k, c.clone()))
            })
            .collect()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + xi.clone() * yj.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<F> {
        (0..self.dim)
            .map(|k| if k == i { F::one() } else { F::zero() })
            .collect()
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let eij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let left = self.mul(&eij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return Err(Error::AxiomViolation {
                            axiom: "associativity".into(),
                            witness: vec![i as u32, j as u32, k as u32],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(u, &e) != e || self.mul(&e, u) != e {
                return Err(Error::AxiomViolation {
                    axiom: "unit".into(),
                    witness: vec![i as u32],
                });
            }
        }
        Ok(())
    }

    /// Same multiplication with the unit forgotten.
    pub fn forget_unit(&self) -> Self {
        Algebra {
            unit: None,
            ..self.clone()
        }
    }

    /// `dim A - dim [A, A]`.
    pub fn hc0_oracle(&self) -> usize {
        let d = self.dim;
        let commutators = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut v = self.basis_product(i, j);
                super::linalg::axpy(&mut v, &(F::zero() - F::one()), &self.basis_product(j, i));
                v
            });
        d - rank(commutators)
    }
}

fn int<F: FieldScalar>(v: i64) -> F {
    F::from_i64(v)
}

impl<F: FieldScalar> Algebra<F> {
    fn from_table(
        name: &str,
        dim: usize,
        table: &[(usize, usize, usize, i64)],
        unit: Option<Vec<i64>>,
    ) -> Self {
        let mut constants = vec![F::zero(); dim * dim * dim];
        for &(i, j, k, c) in table {
            constants[(i * dim + j) * dim + k] = int(c);
        }
        Algebra::new(
            name,
            dim,
            constants,
            unit.map(|u| u.into_iter().map(int).collect()),
        )
        .expect("catalog algebra is valid")
    }

    /// `M_n(Q)` with basis `e_{ij}` in row-major order.
    pub fn matrix_algebra(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let mut table = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    table.push((idx(i, j), idx(j, k), idx(i, k), 1));
                }
            }
        }
        let unit = (0..n * n).map(|x| i64::from(x / n == x % n)).collect();
        Self::from_table(&format!("M{n}Q"), n * n, &table, Some(unit))
    }

    pub fn builtin(name: &str) -> Result<Self> {
        Ok(match name {
            "Q" => Self::from_table("Q", 1, &[(0, 0, 0, 1)], Some(vec![1])),
            "QxQ" => Self::from_table("QxQ", 2, &[(0, 0, 0, 1), (1, 1, 1, 1)], Some(vec![1, 1])),
            "M2Q" => Self::matrix_algebra(2),
            // basis 1, eps
            "Qeps" => Self::from_table(
                "Qeps",
                2,
                &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
                Some(vec![1, 0]),
            ),
            // basis e11, e12, e22
            "T2Q" => Self::from_table(
                "T2Q",
                3,
                &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
                Some(vec![1, 0, 1]),
            ),
            "sqzero1" => Self::from_table("sqzero1", 1, &[], None),
            "sqzero2" => Self::from_table("sqzero2", 2, &[], None),
            // u = t - 1 in Q[t]/(t^2 - 1): u^2 = -2u
            "augZ2" => Self::from_table("augZ2", 1, &[(0, 0, 0, -2)], None),
            other => return Err(Error::BadInput(format!("unknown algebra `{other}`"))),
        })
    }
}

pub const BUILTIN_ALGEBRAS: [&str; 8] = [
    "Q", "QxQ", "M2Q", "Qeps", "T2Q", "sqzero1", "sqzero2", "augZ2",
];

/// Exact rational algebras, the case every report uses.
pub type RationalAlgebra = Algebra<Rational>;

impl RationalAlgebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let parse = |s: &String| {
            parse_ratio(s).ok_or_else(|| Error::BadInput(format!("bad rational `{s}`")))
        };
        let constants = spec.constants.iter().map(parse).collect::<Result<_>>()?;
        let unit = spec
            .unit
            .as_ref()
            .map(|u| u.iter().map(parse).collect::<Result<_>>())
            .transpose()?;
        Algebra::new(spec.name.clone(), spec.dim, constants, unit)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| Error::BadInput(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: self.name.clone(),
            dim: self.dim,
            constants: self.constants.iter().map(|c| c.to_string()).collect(),
            unit: self
                .unit
                .as_ref()
                .map(|u| u.iter().map(|c| c.to_string()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_associative() {
        for name in BUILTIN_ALGEBRAS {
            RationalAlgebra::builtin(name).unwrap();
        }
    }

    #[test]
    fn rejects_non_associative() {
        // e0 e0 = e1, e1 e0 = e0, everything else 0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0.
        let mut c = vec![Rational::from_integer(0.into()); 8];
        c[1] = Rational::from_integer(1.into());
        c[4] = Rational::from_integer(1.into());
        assert!(matches!(
            RationalAlgebra::new("bad", 2, c, None),
            Err(Error::AxiomViolation { .. })
        ));
    }

    #[test]
    fn rejects_wrong_unit() {
        let a = RationalAlgebra::builtin("QxQ").unwrap();
        let mut spec = a.to_spec();
        spec.unit = Some(vec!["1".into(), "0".into()]);
        assert!(RationalAlgebra::from_spec(&spec).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = RationalAlgebra::builtin("T2Q").unwrap();
        let text = serde_json::to_string(&a.to_spec()).unwrap();
        assert_eq!(RationalAlgebra::from_json(&text).unwrap(), a);
    }

    #[test]
    fn hc0_oracle_values() {
        let hc0 = |n| RationalAlgebra::builtin(n).unwrap().hc0_oracle();
        assert_eq!(hc0("M2Q"), 1);
        assert_eq!(hc0("QxQ"), 2);
        assert_eq!(hc0("Qeps"), 2);
        assert_eq!(hc0("T2Q"), 2);
    }
}
