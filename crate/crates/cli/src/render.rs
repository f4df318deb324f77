use serde_json::{json, Value};
use sturmian_core::config::{OutputFormat, RunConfig};
use sturmian_core::TOOL_VERSION;

/// What a subcommand produced, in every output format.
pub struct Outcome {
    pub results: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// Set when an invariant failed; holds the first counterexample.
    pub failure: Option<Value>,
}

impl Outcome {
    pub fn new(results: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>, text: String) -> Self {
        Self {
            results,
            header,
            rows,
            text,
            failure: None,
        }
    }

    pub fn failing_with(mut self, failure: Option<Value>) -> Self {
        self.failure = failure;
        self
    }
}

pub fn render(command: &str, config: &RunConfig, outcome: &Outcome) -> Result<String, String> {
    match config.format {
        OutputFormat::Json => {
            let report = json!({
                "tool_version": TOOL_VERSION,
                "command": command,
                "config": config,
                "results": outcome.results,
            });
            serde_json::to_string_pretty(&report)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string())
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.header).map_err(|e| e.to_string())?;
            for row in &outcome.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        OutputFormat::Text => Ok(format!("{}\n", outcome.text.trim_end())),
    }
}
