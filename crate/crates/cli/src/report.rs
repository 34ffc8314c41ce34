//! Command reports in a human layout and a `key=value` layout.

use std::fmt::Display;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Kv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            status: Status::Ok,
            entries: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fail(&mut self, status: Status) -> &mut Self {
        if self.status == Status::Ok || status == Status::Error {
            self.status = status;
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: ReportFormat) -> String {
        let mut out = String::new();
        match format {
            ReportFormat::Text => {
                out.push_str(&format!("{}: {}\n", self.command, self.status.as_str()));
                for (k, v) in &self.entries {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
            }
            ReportFormat::Kv => {
                out.push_str(&format!(
                    "command={}\nstatus={}\n",
                    self.command,
                    self.status.as_str()
                ));
                for (k, v) in &self.entries {
                    // values never span lines in the kv layout
                    out.push_str(&format!("{k}={}\n", v.replace('\n', " ")));
                }
            }
        }
        out
    }
}

/// Parses the `key=value` layout back into ordered pairs.
pub fn parse_kv(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|line| line.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut r = Report::new("verify");
        r.set("rank", 2).set("note", "degenerate (constant) pair");
        r.fail(Status::Violation);
        let text = r.render(ReportFormat::Kv);
        let kv = parse_kv(&text);
        assert_eq!(kv[0], ("command".into(), "verify".into()));
        assert_eq!(kv[1], ("status".into(), "violation".into()));
        assert_eq!(kv[3], ("note".into(), "degenerate (constant) pair".into()));
        assert!(r
            .render(ReportFormat::Text)
            .starts_with("verify: violation\n  rank: 2\n"));
    }

    #[test]
    fn error_overrides_violation() {
        let mut r = Report::new("x");
        r.fail(Status::Violation)
            .fail(Status::Error)
            .fail(Status::Violation);
        assert_eq!(r.status, Status::Error);
    }
}
