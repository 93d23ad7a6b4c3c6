//! Ideal extensions `0 -> A -> B -> C -> 0` of finite rings: nonunital
//! K-groups, the boundary map and the six-term sequence.

mod boundary;
mod nonunital;
mod sequence;
mod swan;

pub use boundary::{boundary_class, BoundaryInput, BoundaryValue};
pub use nonunital::{nonunital_k, nonunital_k0, nonunital_k1, KIndex, NonunitalK0, NonunitalK1};
pub use sequence::{six_term_check, NodeVerdict, SixTermReport};
pub use swan::{swan_check, SwanReport};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{
    is_ring_homomorphism, unitalize_with_modulus, Catalog, Elem, FiniteRing, RingRef, Unitalization,
};

/// JSON form: `{"B", "ideal", "C", "proj", "section"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExtensionSpec {
    #[serde(rename = "B")]
    pub b: RingRef,
    pub ideal: Vec<Elem>,
    #[serde(rename = "C")]
    pub c: RingRef,
    pub proj: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<Elem>>,
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub b: Arc<FiniteRing>,
    /// Sorted carrier indices of `A` inside `B`.
    pub ideal: Vec<Elem>,
    pub c: Arc<FiniteRing>,
    pub proj: Vec<Elem>,
    pub section: Option<Vec<Elem>>,
    a: Arc<FiniteRing>,
    /// Least preimage of each element of `C`.
    least_lift: Vec<Elem>,
}

pub const BUILTIN_EXTENSIONS: [&str; 4] = ["Z4_2Z4", "F3eps_eps", "F3xF3_F3x0", "T2F3_strict"];

impl Extension {
    pub fn new(
        b: Arc<FiniteRing>,
        ideal: Vec<Elem>,
        c: Arc<FiniteRing>,
        proj: Vec<Elem>,
        section: Option<Vec<Elem>>,
    ) -> Result<Self> {
        let one_b = b.require_one()?;
        let one_c = c.require_one()?;
        let (a, ideal) = b.ideal_ring(&ideal, &format!("ideal of {}", b.name()))?;
        if !is_ring_homomorphism(&b, &c, &proj) || proj[one_b as usize] != one_c {
            return Err(Error::BadInput(
                "projection is not a unital ring homomorphism".into(),
            ));
        }
        let mut least_lift = vec![Elem::MAX; c.order()];
        for x in (0..b.order() as Elem).rev() {
            least_lift[proj[x as usize] as usize] = x;
        }
        if least_lift.contains(&Elem::MAX) {
            return Err(Error::BadInput("projection is not surjective".into()));
        }
        let kernel: Vec<Elem> = b
            .elements()
            .filter(|&x| proj[x as usize] == c.zero())
            .collect();
        if kernel != ideal {
            return Err(Error::BadInput(
                "kernel of the projection differs from the ideal".into(),
            ));
        }
        if let Some(s) = &section {
            let ok = is_ring_homomorphism(&c, &b, s)
                && s[one_c as usize] == one_b
                && c.elements().all(|y| proj[s[y as usize] as usize] == y);
            if !ok {
                return Err(Error::BadInput(
                    "section is not a unital splitting homomorphism".into(),
                ));
            }
        }
        Ok(Extension {
            b,
            ideal,
            c,
            proj,
            section,
            a: Arc::new(a),
            least_lift,
        })
    }

    pub fn from_spec(spec: &ExtensionSpec, catalog: &Catalog) -> Result<Self> {
        let b = catalog.build_ref(&spec.b)?;
        let c = catalog.build_ref(&spec.c)?;
        Self::new(
            b,
            spec.ideal.clone(),
            c,
            spec.proj.clone(),
            spec.section.clone(),
        )
    }

    pub fn from_json(text: &str, catalog: &Catalog) -> Result<Self> {
        let spec: ExtensionSpec =
            serde_json::from_str(text).map_err(|e| Error::BadInput(e.to_string()))?;
        Self::from_spec(&spec, catalog)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let f3 = FiniteRing::zmod(3)?;
        match name {
            "Z4_2Z4" => {
                let b = Arc::new(FiniteRing::zmod(4)?);
                let c = Arc::new(FiniteRing::zmod(2)?);
                Self::new(b, vec![0, 2], c, (0..4).map(|x| x % 2).collect(), None)
            }
            "F3eps_eps" => {
                let b = Arc::new(FiniteRing::dual_numbers(&f3)?);
                let proj = (0..9).map(|x| x % 3).collect();
                Self::new(b, vec![0, 3, 6], Arc::new(f3), proj, Some(vec![0, 1, 2]))
            }
            "F3xF3_F3x0" => {
                let b = Arc::new(FiniteRing::product(&f3, &f3)?);
                let proj = (0..9).map(|x| x / 3).collect();
                let section = (0..3)
                    .map(|x| FiniteRing::product_index(&f3, x, x))
                    .collect();
                Self::new(b, vec![0, 1, 2], Arc::new(f3), proj, Some(section))
            }
            "T2F3_strict" => {
                let b = Arc::new(FiniteRing::triangular2(&f3)?);
                let c = Arc::new(FiniteRing::product(&f3, &f3)?);
                let ideal = (0..3)
                    .map(|x| FiniteRing::triangular2_index(&f3, 0, x, 0))
                    .collect();
                let proj = (0..27)
                    .map(|x| FiniteRing::product_index(&f3, x % 3, x / 9))
                    .collect();
                let section = (0..9)
                    .map(|x| FiniteRing::triangular2_index(&f3, x % 3, 0, x / 3))
                    .collect();
                Self::new(b, ideal, c, proj, Some(section))
            }
            other => Err(Error::BadInput(format!("unknown extension `{other}`"))),
        }
    }

    /// The ideal as a ring in its own right (usually nonunital).
    pub fn a(&self) -> &Arc<FiniteRing> {
        &self.a
    }

    /// `A + Z/N` with `N` the additive exponent of `B`.
    pub fn unitalization(&self) -> Result<Unitalization> {
        unitalize_with_modulus(&self.a, self.b.char_exponent())
    }

    /// Carrier map `(a, k) -> a + k 1_B`.
    pub fn unitalized_to_b(&self, u: &Unitalization) -> Vec<Elem> {
        let one = self.b.one().expect("B is unital");
        (0..u.ring.order() as Elem)
            .map(|x| {
                let (a, k) = u.split(x);
                self.b
                    .add(self.ideal[a as usize], self.b.smul(k as i64, one))
            })
            .collect()
    }

    /// Position of a `B`-element inside `A`, if it lies in the ideal.
    pub fn ideal_position(&self, x: Elem) -> Option<Elem> {
        self.ideal.binary_search(&x).ok().map(|i| i as Elem)
    }

    pub fn least_lift(&self, y: Elem) -> Elem {
        self.least_lift[y as usize]
    }

    /// Every preimage of `y`, in increasing order.
    pub fn lifts(&self, y: Elem) -> Vec<Elem> {
        let base = self.least_lift(y);
        let mut out: Vec<Elem> = self.ideal.iter().map(|&i| self.b.add(base, i)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_split(&self) -> bool {
        self.section.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_EXTENSIONS {
            let e = Extension::builtin(name).unwrap();
            assert_eq!(e.b.order(), e.a().order() * e.c.order(), "{name}");
        }
    }

    #[test]
    fn rejects_non_kernel() {
        let b = Arc::new(FiniteRing::zmod(4).unwrap());
        let c = Arc::new(FiniteRing::zmod(2).unwrap());
        let err = Extension::new(b, vec![0], c, vec![0, 1, 0, 1], None).unwrap_err();
        assert!(matches!(err, Error::BadInput(_)));
    }

    #[test]
    fn unitalized_map_is_a_homomorphism() {
        for name in BUILTIN_EXTENSIONS {
            let e = Extension::builtin(name).unwrap();
            let u = e.unitalization().unwrap();
            let f = e.unitalized_to_b(&u);
            assert!(is_ring_homomorphism(&u.ring, &e.b, &f), "{name}");
        }
    }

    #[test]
    fn lifts_cover_fibres() {
        let e = Extension::builtin("Z4_2Z4").unwrap();
        assert_eq!(e.lifts(1), vec![1, 3]);
        assert_eq!(e.least_lift(0), 0);
    }

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"B": "Z4", "ideal": [0, 2], "C": "Z2", "proj": [0, 1, 0, 1]}"#;
        let e = Extension::from_json(text, &Catalog::builtin()).unwrap();
        assert_eq!(e.a().order(), 2);
        assert!(!e.is_split());
    }
}
