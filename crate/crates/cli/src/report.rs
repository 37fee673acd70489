//! Run reports: identical inputs produce identical payloads; timing is
//! carried separately so it never breaks determinism comparisons.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct RunReport {
    pub subcommand: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub timing_ms: f64,
}

impl RunReport {
    pub fn new(subcommand: &'static str, inputs: Value, result: Value, t0: Instant) -> Self {
        RunReport {
            subcommand,
            inputs,
            result,
            timing_ms: t0.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// JSON mode prints the whole report; text mode runs the printer on the
    /// result payload.
    pub fn emit(&self, json: bool, text: impl FnOnce(&Value)) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("serializable"));
        } else {
            text(&self.result);
        }
    }
}
