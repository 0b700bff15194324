use charp_diffalg::geometry::SearchMethod;
use charp_diffalg::{Report, ReportLine, SolutionSet};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Lines,
    Json,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    tag: &'a str,
    subject: &'a [String],
    outcome: Option<&'static str>,
    detail: &'a [String],
    text: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    passed: bool,
    lines: Vec<JsonLine<'a>>,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Lines => report.to_string(),
        Format::Json => {
            let lines = report
                .lines
                .iter()
                .map(|l: &ReportLine| JsonLine {
                    tag: &l.tag,
                    subject: &l.subject,
                    outcome: l.outcome.map(|ok| if ok { "PASS" } else { "FAIL" }),
                    detail: &l.detail,
                    text: l.to_string(),
                })
                .collect();
            let doc = JsonReport {
                passed: report.passed(),
                lines,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Plain informational line built from words.
pub fn info(tag: &str, words: impl IntoIterator<Item = String>) -> ReportLine {
    ReportLine::info(tag, words.into_iter().collect())
}

#[derive(Serialize)]
struct JsonSolutions {
    precision: u32,
    method: &'static str,
    count: usize,
    /// Per point, per coordinate, coefficients in canonical index order.
    points: Vec<Vec<Vec<u32>>>,
    lines: Vec<String>,
}

pub fn render_solutions(s: &SolutionSet, format: Format) -> String {
    let lines = s.lines();
    match format {
        Format::Lines => lines.iter().map(|l| format!("{l}\n")).collect(),
        Format::Json => {
            let doc = JsonSolutions {
                precision: s.precision,
                method: match s.method {
                    SearchMethod::Enumeration => "enumeration",
                    SearchMethod::Recurrence => "recurrence",
                },
                count: s.points.len(),
                points: s
                    .points
                    .iter()
                    .map(|x| x.coords().iter().map(|c| c.to_dense()).collect())
                    .collect(),
                lines,
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("solutions serialize");
            out.push('\n');
            out
        }
    }
}
