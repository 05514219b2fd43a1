//! Plain-text reports with a fixed layout, so identical input gives
//! byte-identical output.

use std::fmt::{self, Write as _};

use admgrad::admissible::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

/// A titled list of sections ending in one result line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// The `name` of the problem file, when given.
    pub case: Option<String>,
    pub header: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, case: Option<String>) -> Self {
        Report { command: command.into(), case, header: Vec::new(), sections: Vec::new(), status: Status::Pass }
    }

    pub fn field(&mut self, key: &str, value: impl Into<String>) {
        self.header.push((key.into(), value.into()));
    }

    pub fn section(&mut self, title: &str, lines: Vec<String>) {
        self.sections.push(Section { title: title.into(), lines });
    }

    /// Marks the report failed unless `ok`.
    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "admgrad {}", self.command).unwrap();
        if let Some(c) = &self.case {
            writeln!(out, "case: {c}").unwrap();
        }
        for (k, v) in &self.header {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for s in &self.sections {
            writeln!(out, "\n[{}]", s.title).unwrap();
            for l in &s.lines {
                writeln!(out, "  {l}").unwrap();
            }
        }
        writeln!(out, "\nresult: {}", self.status).unwrap();
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Right-aligned columns.
pub fn table(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}

/// One line per condition plus the two side checks.
pub fn verdict_lines(r: &CheckReport) -> Vec<String> {
    let mut out = vec![format!("dim m = {}, dim n = {}, dim g = {}, dim g^e = {}", r.dim_m, r.dim_n, r.dim_g, r.dim_ge)];
    for v in &r.verdicts {
        let tag = if v.pass { "pass" } else { "FAIL" };
        out.push(format!("{:<10} {tag}  {}", v.condition.to_string(), v.detail));
    }
    out.push(format!("dim m + dim n even: {}", yes_no(r.parity)));
    out.push(format!("m^perp in g_<=a-1: {}", yes_no(r.perp_bounded)));
    out
}
