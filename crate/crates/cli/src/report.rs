use std::fmt::Write as _;

use clap::ValueEnum;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

/// Result of one command: verdict facts in insertion order plus an optional
/// witness transcript.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub digest: Option<String>,
    pub facts: Vec<(String, String)>,
    pub witness: Vec<(String, String)>,
    pub body: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn with_input(mut self, path: &str, bytes: &[u8]) -> Report {
        self.input = Some(path.to_string());
        self.digest = Some(format!("sha256:{}", hex::encode(Sha256::digest(bytes))));
        self
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }

    pub fn witness(&mut self, key: &str, value: impl ToString) {
        self.witness.push((key.to_string(), value.to_string()));
    }

    /// Text output of a command with a body is the body alone, so it can be
    /// redirected to a file.
    pub fn render(&self, format: Format) -> String {
        if let (Format::Text, Some(b)) = (format, &self.body) {
            return b.clone();
        }
        let mut s = String::new();
        match format {
            Format::Kv => {
                writeln!(s, "command={}", self.command).unwrap();
                if let Some(i) = &self.input {
                    writeln!(s, "input={i}").unwrap();
                }
                if let Some(d) = &self.digest {
                    writeln!(s, "input.digest={d}").unwrap();
                }
                for (k, v) in &self.facts {
                    writeln!(s, "{k}={v}").unwrap();
                }
                for (k, v) in &self.witness {
                    writeln!(s, "witness.{k}={v}").unwrap();
                }
            }
            Format::Text => {
                match &self.input {
                    Some(i) => writeln!(s, "{} {i}", self.command).unwrap(),
                    None => writeln!(s, "{}", self.command).unwrap(),
                }
                for (k, v) in &self.facts {
                    writeln!(s, "  {k}: {v}").unwrap();
                }
                if !self.witness.is_empty() {
                    s.push_str("  witness:\n");
                    for (k, v) in &self.witness {
                        writeln!(s, "    {k}: {v}").unwrap();
                    }
                }
            }
        }
        if let Some(b) = &self.body {
            for (i, l) in b.lines().enumerate() {
                writeln!(s, "output.{i}={l}").unwrap();
            }
        }
        s
    }
}
