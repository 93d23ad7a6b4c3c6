//! JSON ring catalog: `[{"name", "kind", "params"}]`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteRing};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/rings.json");

/// A ring referenced by catalog name or given inline.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RingRef {
    Name(String),
    Inline(Box<RingSpec>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum RingSpec {
    Zmod {
        n: u64,
    },
    Gf {
        p: u64,
        k: usize,
        poly: Vec<u64>,
    },
    Matrix {
        base: RingRef,
        n: usize,
    },
    Triangular2 {
        base: RingRef,
    },
    Dual {
        base: RingRef,
    },
    SquareZero {
        n: u64,
    },
    Product {
        left: RingRef,
        right: RingRef,
    },
    Table {
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        #[serde(default)]
        zero: Elem,
        #[serde(default)]
        one: Option<Elem>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RingEntry {
    pub name: String,
    #[serde(flatten)]
    pub spec: RingSpec,
}

/// Named ring specifications with memoized construction.
#[derive(Debug, Default)]
pub struct Catalog {
    entries: Vec<RingEntry>,
    built: Mutex<HashMap<String, Arc<FiniteRing>>>,
}

impl Clone for Catalog {
    fn clone(&self) -> Self {
        Catalog {
            entries: self.entries.clone(),
            built: Mutex::new(self.built.lock().unwrap().clone()),
        }
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("builtin catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<RingEntry> = serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("ring catalog: {e}")))?;
        Ok(Catalog {
            entries,
            built: Mutex::new(HashMap::new()),
        })
    }

    /// Adds (or replaces) the entries of `other`.
    pub fn extend(&mut self, other: Catalog) {
        for e in other.entries {
            self.entries.retain(|x| x.name != e.name);
            self.entries.push(e);
        }
        self.built.lock().unwrap().clear();
    }

    pub fn entries(&self) -> &[RingEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn spec(&self, name: &str) -> Option<&RingSpec> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.spec)
    }

    pub fn get(&self, name: &str) -> Result<Arc<FiniteRing>> {
        self.resolve(name, 0)
    }

    fn resolve(&self, name: &str, depth: usize) -> Result<Arc<FiniteRing>> {
        if let Some(r) = self.built.lock().unwrap().get(name) {
            return Ok(r.clone());
        }
        if depth > 16 {
            return Err(Error::BadInput(format!("ring `{name}`: reference cycle")));
        }
        let spec = self
            .spec(name)
            .ok_or_else(|| Error::BadInput(format!("unknown ring `{name}`")))?;
        let ring = Arc::new(self.build_spec(spec, depth + 1)?.with_name(name));
        self.built
            .lock()
            .unwrap()
            .insert(name.to_string(), ring.clone());
        Ok(ring)
    }

    fn resolve_ref(&self, r: &RingRef, depth: usize) -> Result<Arc<FiniteRing>> {
        match r {
            RingRef::Name(n) => self.resolve(n, depth),
            RingRef::Inline(spec) => Ok(Arc::new(self.build_spec(spec, depth + 1)?)),
        }
    }

    pub fn build(&self, spec: &RingSpec) -> Result<FiniteRing> {
        self.build_spec(spec, 0)
    }

    pub fn build_ref(&self, r: &RingRef) -> Result<Arc<FiniteRing>> {
        self.resolve_ref(r, 0)
    }

    fn build_spec(&self, spec: &RingSpec, depth: usize) -> Result<FiniteRing> {
        match spec {
            RingSpec::Zmod { n } => FiniteRing::zmod(*n),
            RingSpec::Gf { p, k, poly } => FiniteRing::gf(*p, *k, poly),
            RingSpec::Matrix { base, n } => {
                FiniteRing::matrix_ring(&*self.resolve_ref(base, depth)?, *n)
            }
            RingSpec::Triangular2 { base } => {
                FiniteRing::triangular2(&*self.resolve_ref(base, depth)?)
            }
            RingSpec::Dual { base } => FiniteRing::dual_numbers(&*self.resolve_ref(base, depth)?),
            RingSpec::SquareZero { n } => FiniteRing::square_zero(*n),
            RingSpec::Product { left, right } => FiniteRing::product(
                &*self.resolve_ref(left, depth)?,
                &*self.resolve_ref(right, depth)?,
            ),
            RingSpec::Table {
                add,
                mul,
                zero,
                one,
            } => {
                let m = add.len();
                if mul.len() != m || add.iter().chain(mul).any(|r| r.len() != m) {
                    return Err(Error::BadInput("table ring: tables must be m x m".into()));
                }
                FiniteRing::from_tables("table", add.concat(), mul.concat(), *zero, *one)
            }
        }
    }
}
