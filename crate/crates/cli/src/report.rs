//! The report-v1 JSON envelope. Identical configurations produce
//! byte-identical documents: keys are emitted in sorted order and every
//! value is derived deterministically from the config (seeds included).

use serde_json::json;

use crate::run::RunConfig;

pub const SCHEMA: &str = "report-v1";

pub fn envelope(config: &RunConfig, result: &serde_json::Value) -> String {
    let doc = json!({
        "schema": SCHEMA,
        "config": serde_json::to_value(config).expect("config serializes"),
        "result": result,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}
