//! Pass/fail records for machine-verified identities.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, failure: Option<String>) -> Self {
        IdentityCheck {
            identity: identity.into(),
            pass: failure.is_none(),
            witness: failure,
        }
    }

    pub fn pass(identity: impl Into<String>) -> Self {
        Self::new(identity, None)
    }

    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::IdentityFailed {
                which: self.identity,
                witness: w,
            }),
        }
    }
}

/// Fails with the first failing check, if any.
pub fn all_pass(checks: &[IdentityCheck]) -> Result<()> {
    checks
        .iter()
        .find(|c| !c.pass)
        .cloned()
        .map_or(Ok(()), IdentityCheck::into_result)
}
