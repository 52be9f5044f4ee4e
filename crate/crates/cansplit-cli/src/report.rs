use std::time::Duration;

use cansplit::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit status for a failed run: 2 for user errors, 3 for resource guards and
/// 4 for failed internal identities.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(err) => code_of(err),
        None => 2,
    }
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Identity(_) => 4,
        Error::Stage { source, .. } => code_of(source),
        _ => 2,
    }
}

/// SHA-256 over the command line and the input texts.
pub fn digest(command: &str, args: &[String], inputs: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for a in args {
        h.update([0]);
        h.update(a.as_bytes());
    }
    for t in inputs {
        h.update([1]);
        h.update(t.as_bytes());
    }
    let bytes = h.finalize();
    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub results: Value,
    pub timing: Option<Duration>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut v = json!({
            "command": self.command,
            "inputs": { "digest": self.digest },
            "results": self.results,
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(t) = self.timing {
            v["timing_ms"] = json!(t.as_millis() as u64);
        }
        let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
        s.push('\n');
        s
    }
}
