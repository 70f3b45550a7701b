//! The output envelope every subcommand emits: a stable JSON object or a
//! flat text rendering of the same payload.

use sepkit_core::dyadic::Round;
use sepkit_core::interval::DyInterval;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    /// The command already wrote its own output (e.g. CSV to stdout).
    Silent,
}

pub struct Envelope {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    pub precision_used: u64,
}

impl Envelope {
    pub fn new(
        command: &str,
        inputs: serde_json::Value,
        result: serde_json::Value,
        precision_used: u64,
    ) -> Self {
        Envelope { command: command.to_string(), inputs, result, precision_used }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "precision_used": self.precision_used,
            "version": env!("CARGO_PKG_VERSION"),
            "value_encoding": {
                "lower_rounding": "down",
                "upper_rounding": "up",
                "significant_digits": 30,
            },
        })
    }

    pub fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(&self.to_json()).expect("serializes"));
            }
            OutputFormat::Text => {
                println!("command: {}", self.command);
                print_value("input", &self.inputs);
                print_value("result", &self.result);
                println!("precision_used: {}", self.precision_used);
            }
            OutputFormat::Silent => {}
        }
    }
}

fn print_value(prefix: &str, v: &serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                print_value(&format!("{prefix}.{k}"), val);
            }
        }
        serde_json::Value::Array(items) => {
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let flat: Vec<String> = items.iter().map(render_scalar).collect();
                println!("{prefix}: [{}]", flat.join(", "));
            } else {
                for (i, item) in items.iter().enumerate() {
                    print_value(&format!("{prefix}[{i}]"), item);
                }
            }
        }
        other => println!("{prefix}: {}", render_scalar(other)),
    }
}

fn render_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Enclosures as `{lower, upper}` decimal strings, rounded outward.
pub fn enclosure_json(iv: &DyInterval) -> serde_json::Value {
    serde_json::json!({
        "lower": iv.lo().to_decimal(30, Round::Down),
        "upper": iv.hi().to_decimal(30, Round::Up),
    })
}
