//! Output plumbing shared by every subcommand: a sweep prints a header,
//! streams one row per index as it is computed, and closes with a summary
//! block. Three renderings of the same stream: human-readable text, JSON
//! lines, and CSV (whose summary goes to stderr so stdout stays parseable).

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// How one row went. `Fail` rows carry a witness and flip the exit status;
/// `Info` rows are pure data (tables, reports).
pub enum Outcome {
    Pass,
    Fail(String),
    Info,
}

pub struct Sweep {
    format: Format,
    columns: Vec<&'static str>,
    rows: u64,
    failures: u64,
    findings: u64,
    first_witness: Option<String>,
}

impl Sweep {
    pub fn begin(format: Format, title: &str, columns: &[&'static str]) -> Sweep {
        match format {
            Format::Text => println!("# {title}"),
            Format::Csv => println!("{}", columns.join(",")),
            Format::Json => {}
        }
        Sweep {
            format,
            columns: columns.to_vec(),
            rows: 0,
            failures: 0,
            findings: 0,
            first_witness: None,
        }
    }

    /// Emit one row; `fields` must follow the declared column order.
    pub fn row(&mut self, fields: &[(&'static str, Value)], outcome: Outcome) {
        debug_assert!(
            fields.iter().map(|(k, _)| *k).eq(self.columns.iter().copied()),
            "row fields must match the declared columns"
        );
        self.rows += 1;
        if let Outcome::Fail(witness) = &outcome {
            self.failures += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(witness.clone());
            }
        }
        match self.format {
            Format::Text => {
                let marker = match &outcome {
                    Outcome::Pass => "ok  ",
                    Outcome::Fail(_) => "FAIL",
                    Outcome::Info => "    ",
                };
                let body = fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", plain(v)))
                    .collect::<Vec<_>>()
                    .join("  ");
                println!("{marker} {body}");
                if let Outcome::Fail(witness) = &outcome {
                    println!("     witness: {witness}");
                }
            }
            Format::Json => {
                let mut object = Map::new();
                for (k, v) in fields {
                    object.insert((*k).to_string(), v.clone());
                }
                if let Outcome::Fail(witness) = &outcome {
                    object.insert("witness".into(), Value::String(witness.clone()));
                }
                println!("{}", Value::Object(object));
            }
            Format::Csv => {
                let line = fields
                    .iter()
                    .map(|(_, v)| csv_field(&plain(v)))
                    .collect::<Vec<_>>()
                    .join(",");
                println!("{line}");
            }
        }
    }

    /// A side remark attached to the stream; never affects the exit status.
    pub fn note(&mut self, text: &str) {
        match self.format {
            Format::Text => println!("# note: {text}"),
            Format::Json => println!("{}", serde_json::json!({ "note": text })),
            Format::Csv => eprintln!("note: {text}"),
        }
    }

    /// A conjecture-level finding: reported and counted, exit untouched.
    pub fn finding(&mut self, text: &str) {
        self.findings += 1;
        match self.format {
            Format::Text => println!("# finding: {text}"),
            Format::Json => println!("{}", serde_json::json!({ "finding": text })),
            Format::Csv => eprintln!("finding: {text}"),
        }
    }

    /// Close the stream with a summary; `true` means no hard failures.
    pub fn finish(self) -> bool {
        let all_pass = self.failures == 0;
        match self.format {
            Format::Text => {
                println!(
                    "# summary: {} rows, {} failures, {} findings",
                    self.rows, self.failures, self.findings
                );
                if let Some(witness) = &self.first_witness {
                    println!("# first witness: {witness}");
                }
            }
            Format::Json => {
                let mut summary = Map::new();
                summary.insert("rows".into(), Value::from(self.rows));
                summary.insert("failures".into(), Value::from(self.failures));
                summary.insert("findings".into(), Value::from(self.findings));
                if let Some(witness) = &self.first_witness {
                    summary.insert("first_witness".into(), Value::String(witness.clone()));
                }
                println!("{}", Value::Object(
                    std::iter::once(("summary".to_string(), Value::Object(summary))).collect()
                ));
            }
            Format::Csv => {
                eprintln!(
                    "summary: {} rows, {} failures, {} findings",
                    self.rows, self.failures, self.findings
                );
                if let Some(witness) = &self.first_witness {
                    eprintln!("first witness: {witness}");
                }
            }
        }
        all_pass
    }
}

/// Cell rendering for text and CSV: strings verbatim, everything else in
/// its JSON form.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
