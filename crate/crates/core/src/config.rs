//! Computation budgets and the optional persistent cache hook.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Largest `|R|^(n^2)` for brute-force matrix enumeration.
    pub gl_candidates: u128,
    /// Largest tensor basis per degree in the homology complexes.
    pub tensor_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            gl_candidates: 2_000_000,
            tensor_dim: 2_000,
        }
    }
}

/// Byte store keyed by strings; implementations decide persistence.
pub trait Cache: Send + Sync {
    fn load(&self, key: &str) -> Option<Vec<u8>>;
    fn store(&self, key: &str, data: &[u8]);
    /// Called when a loaded entry fails to decode.
    fn evict(&self, key: &str);
}

#[derive(Clone, Default)]
pub struct Context {
    pub budget: Budget,
    pub cache: Option<Arc<dyn Cache>>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("budget", &self.budget)
            .field("cache", &self.cache.is_some())
            .finish()
    }
}

impl Context {
    pub fn with_budget(budget: Budget) -> Self {
        Context {
            budget,
            cache: None,
        }
    }
}
