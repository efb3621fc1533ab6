//! The machine-readable document: header, body, footer.

use std::collections::BTreeMap;
use std::path::Path;

use hallfrat::{Error, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub flags: BTreeMap<String, String>,
}

#[derive(Debug, Default, Serialize)]
pub struct Footer {
    pub records: usize,
    pub violations: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize)]
pub struct Document {
    pub header: Header,
    pub body: Vec<Value>,
    pub footer: Footer,
}

impl Document {
    pub fn new(command: &str, flags: &[(&str, String)]) -> Self {
        Document {
            header: Header {
                tool: "hallfrat",
                version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
                flags: flags.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            },
            body: Vec::new(),
            footer: Footer::default(),
        }
    }

    pub fn push(&mut self, record: impl Serialize) {
        self.body.push(to_value(record));
        self.footer.records = self.body.len();
    }

    pub fn summary(&mut self, key: &str, value: impl Serialize) {
        self.footer.summary.insert(key.to_string(), to_value(value));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("records serialize")
}
