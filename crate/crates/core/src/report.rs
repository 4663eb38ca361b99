//! The JSON envelope every command prints.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub inputs: Vec<InputDigest>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub millis: f64,
}

/// Output of one command. Without timing the rendering depends only on the
/// command line and the input bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub schema: u32,
    pub command: Vec<String>,
    pub output: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl ResultDocument {
    pub fn new(command: Vec<String>, output: Value) -> Self {
        ResultDocument {
            schema: SCHEMA_VERSION,
            command,
            output,
            provenance: Provenance {
                tool: "mlab".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                inputs: Vec::new(),
            },
            timing: None,
        }
    }

    pub fn with_input(mut self, name: impl Into<String>, bytes: &[u8]) -> Self {
        self.provenance.inputs.push(InputDigest {
            name: name.into(),
            sha256: sha256_hex(bytes),
        });
        self
    }

    pub fn with_timing(mut self, elapsed: std::time::Duration) -> Self {
        self.timing = Some(Timing {
            millis: elapsed.as_secs_f64() * 1000.0,
        });
        self
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn stable_without_timing() {
        let make = || ResultDocument::new(vec!["index".into()], json!({"b": 1, "a": [2]})).with_input("x", b"text");
        assert_eq!(make().render(), make().render());
        let v: Value = serde_json::from_str(&make().render()).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v.get("timing").is_none());
        let t: Value = serde_json::from_str(&make().with_timing(std::time::Duration::from_millis(3)).render()).unwrap();
        assert!(t["timing"]["millis"].as_f64().unwrap() >= 3.0);
    }
}
