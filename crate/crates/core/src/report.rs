//! Line-oriented check reports: `TAG subject... PASS|FAIL detail...`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub tag: String,
    pub subject: Vec<String>,
    /// `None` for informational lines.
    pub outcome: Option<bool>,
    pub detail: Vec<String>,
}

impl ReportLine {
    pub fn check(tag: impl Into<String>, subject: &[&str], ok: bool) -> Self {
        ReportLine {
            tag: tag.into(),
            subject: subject.iter().map(|s| s.to_string()).collect(),
            outcome: Some(ok),
            detail: Vec::new(),
        }
    }

    pub fn info(tag: impl Into<String>, subject: Vec<String>) -> Self {
        ReportLine {
            tag: tag.into(),
            subject,
            outcome: None,
            detail: Vec::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail.push(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome != Some(false)
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        for s in &self.subject {
            write!(f, " {s}")?;
        }
        match self.outcome {
            Some(true) => write!(f, " PASS")?,
            Some(false) => write!(f, " FAIL")?,
            None => {}
        }
        for d in &self.detail {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, line: ReportLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(ReportLine::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
