use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Flags {
    /// Results come from finite matrix levels or windows.
    pub finite_truncation: bool,
    /// A stabilization check did not confirm the reported level.
    pub stabilization_caveat: bool,
}

/// What a subcommand hands back before it is wrapped in a [`RunReport`].
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    /// Content descriptions of every resolved input, hashed into the digest.
    pub inputs: Vec<String>,
    pub flags: Flags,
    /// A verification suite reported a violated identity.
    pub failed: bool,
}

impl Outcome {
    pub fn new(results: Value, inputs: Vec<String>) -> Self {
        Outcome {
            results,
            inputs,
            flags: Flags::default(),
            failed: false,
        }
    }

    /// Sets the truncation flag from the payload's own `finite_truncation`, defaulting to true.
    pub fn truncated(mut self) -> Self {
        self.flags.finite_truncation = self
            .results
            .get("finite_truncation")
            .and_then(|v| v.as_bool())
            .unwrap_or(true);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// One JSON object per invocation. Everything except `timing` is byte-stable.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub inputs_digest: String,
    pub flags: Flags,
    pub results: Value,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: Vec<String>, outcome: &Outcome, elapsed_ms: u128) -> Self {
        let mut h = Sha256::new();
        for part in command.iter().chain(&outcome.inputs) {
            h.update(part.as_bytes());
            h.update([0]);
        }
        RunReport {
            command,
            version: env!("CARGO_PKG_VERSION"),
            inputs_digest: hex::encode(h.finalize()),
            flags: outcome.flags,
            results: outcome.results.clone(),
            timing: Timing { elapsed_ms },
        }
    }
}
