use std::time::Duration;

use serde_json::{Map, Value};
use thiserror::Error;

pub const SCHEMA: &str = "logdiv/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] logdiv::Error),
}

impl CliError {
    /// 2 for usage and parse errors, 3 for input the engine does not handle.
    pub fn exit_code(&self) -> u8 {
        use logdiv::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(
                E::Parse { .. } | E::InvalidArgument(_) | E::DimensionMismatch(..) | E::RankMismatch(..),
            ) => 2,
            CliError::Core(_) => 3,
        }
    }
}

/// Output of one command: JSON fields (keys sorted on output) plus human-readable lines.
#[derive(Debug)]
pub struct Report {
    command: String,
    fields: Vec<(String, Value)>,
    lines: Vec<String>,
    elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            fields: Vec::new(),
            lines: Vec::new(),
            elapsed: None,
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.lines.push(text.into());
        self
    }

    pub fn push_line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.elapsed = Some(elapsed);
        self
    }

    /// Timing stays out of the JSON so that identical runs print identical bytes.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        serde_json::to_string_pretty(&Value::Object(m)).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(t) = self.elapsed {
            out.push_str(&format!("time: {:.3} s\n", t.as_secs_f64()));
        }
        out
    }
}
