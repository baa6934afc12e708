//! A small pass/fail report shared by all the checking operations.
//!
//! Reports render deterministically (insertion order, no hash-map iteration anywhere),
//! so CLI output built from them is byte-stable across runs.

use std::fmt;

/// One labelled check, optionally carrying a witness rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub label: String,
    pub pass: bool,
    pub detail: Option<String>,
}

/// An ordered list of labelled checks under a title.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), lines: Vec::new() }
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.lines.push(ReportLine { label: label.into(), pass: true, detail: None });
    }

    pub fn pass_with(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(ReportLine { label: label.into(), pass: true, detail: Some(detail.into()) });
    }

    pub fn fail(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(ReportLine { label: label.into(), pass: false, detail: Some(detail.into()) });
    }

    /// True when every line passed.
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.lines.iter().filter(|l| l.pass).count()
    }

    /// Appends another report's lines under this title, prefixing their labels.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut line in other.lines {
            line.label = format!("{prefix}{}", line.label);
            self.lines.push(line);
        }
    }

    /// The first failing line, if any.
    pub fn first_failure(&self) -> Option<&ReportLine> {
        self.lines.iter().find(|l| !l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for line in &self.lines {
            let mark = if line.pass { "PASS" } else { "FAIL" };
            match &line.detail {
                Some(d) => writeln!(f, "{mark} {}: {}", line.label, d)?,
                None => writeln!(f, "{mark} {}", line.label)?,
            }
        }
        write!(f, "-- {}/{} checks passed", self.pass_count(), self.lines.len())
    }
}
