use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::formats::Digest;

/// Self-describing record of one command run.
///
/// Everything except `wall_time_secs` is a function of the inputs, the
/// parameters and the tool version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    pub inputs: Vec<Digest>,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            params: BTreeMap::new(),
            result: Value::Null,
            exit_code: 0,
            seed: None,
            wall_time_secs: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(value).expect("serializable param"));
        self
    }

    /// The report without timing, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.wall_time_secs = None;
        if let Value::Object(m) = &mut r.result {
            m.remove("wall_time_secs");
        }
        r
    }
}
