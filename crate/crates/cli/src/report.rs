use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Read directly off the input.
    Input,
    ClosedForm,
    /// Small-degree lookup data.
    Table,
    Oracle,
}

impl Source {
    fn tag(self) -> &'static str {
        match self {
            Source::Input => "input",
            Source::ClosedForm => "closed-form",
            Source::Table => "table",
            Source::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
    pub source: Source,
}

/// Output of a single command. Timing goes to standard error so that
/// standard output stays identical across runs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Field>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            members: None,
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(name.to_string(), value.to_string());
        self
    }

    pub fn field(
        &mut self,
        name: impl Into<String>,
        value: impl Into<Value>,
        source: Source,
    ) -> &mut Self {
        self.outputs.push(Field {
            name: name.into(),
            value: value.into(),
            source,
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.outputs
            .iter()
            .find(|f| f.name == name)
            .map(|f| &f.value)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["name", "value", "source"])?;
                for f in &self.outputs {
                    w.write_record([f.name.as_str(), &plain(&f.value), f.source.tag()])?;
                }
                for m in self.members.iter().flatten() {
                    w.write_record(["member", m.as_str(), "closed-form"])?;
                }
                w.flush()?;
            }
            Format::Text => {
                let width = self.outputs.iter().map(|f| f.name.len()).max().unwrap_or(0);
                for f in &self.outputs {
                    writeln!(
                        out,
                        "{:width$}  {}  [{}]",
                        f.name,
                        plain(&f.value),
                        f.source.tag()
                    )?;
                }
                if let Some(members) = &self.members {
                    writeln!(out, "members ({}):", members.len())?;
                    for m in members {
                        writeln!(out, "  {m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A JSON value as bare text: strings unquoted, `null` as the empty string.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
