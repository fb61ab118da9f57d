use std::fmt;
use std::io::IsTerminal;

use basecat_core::constructions::LegStatus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

impl From<LegStatus> for Status {
    fn from(s: LegStatus) -> Self {
        match s {
            LegStatus::Pass => Status::Pass,
            LegStatus::Fail => Status::Fail,
            LegStatus::Skip => Status::Skip,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

/// Per-claim results of one command. The exit code is 0 iff nothing failed.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, claim: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.entries.push(Entry { claim: claim.into(), status, detail: detail.into() });
    }

    pub fn check(&mut self, claim: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(claim, status, detail);
    }

    pub fn pass(&mut self, claim: impl Into<String>, detail: impl Into<String>) {
        self.push(claim, Status::Pass, detail);
    }

    pub fn fail(&mut self, claim: impl Into<String>, detail: impl Into<String>) {
        self.push(claim, Status::Fail, detail);
    }

    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Pass/fail/skip counts per claim group, the part of a claim id before
    /// the first `/`, in order of first appearance.
    pub fn summary(&self) -> Vec<(String, [usize; 3])> {
        let mut out: Vec<(String, [usize; 3])> = Vec::new();
        for e in &self.entries {
            let group = e.claim.split('/').next().unwrap_or_default().to_string();
            let i = match out.iter().position(|(g, _)| *g == group) {
                Some(i) => i,
                None => {
                    out.push((group, [0; 3]));
                    out.len() - 1
                }
            };
            out[i].1[e.status as usize] += 1;
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => self.machine(),
            Format::Human => self.human(std::io::stdout().is_terminal()),
        }
    }

    /// One tab-separated `claim status detail` line per entry.
    pub fn machine(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for e in &self.entries {
            out += &format!("{}\t{}\t{}\n", e.claim, e.status, e.detail.replace(['\n', '\t'], " "));
        }
        for (group, [p, f, s]) in self.summary() {
            out += &format!("# summary {group} pass={p} fail={f} skip={s}\n");
        }
        out += &format!("# exit {}\n", self.exit_code());
        out
    }

    pub fn human(&self, color: bool) -> String {
        let paint = |s: Status| {
            let tag = match s {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            if !color {
                return tag.to_string();
            }
            let code = match s {
                Status::Pass => 32,
                Status::Fail => 31,
                Status::Skip => 33,
            };
            format!("\x1b[{code}m{tag}\x1b[0m")
        };
        let width = self.entries.iter().map(|e| e.claim.len()).max().unwrap_or(0);
        let mut out = format!("basecat {}\n", self.command);
        for e in &self.entries {
            let mut lines = e.detail.lines();
            out += &format!("  {} {:width$}  {}\n", paint(e.status), e.claim, lines.next().unwrap_or(""));
            for l in lines {
                out += &format!("       {:width$}  {l}\n", "");
            }
        }
        let groups = self.summary();
        if groups.len() > 1 || self.entries.len() > 1 {
            for (group, [p, f, s]) in groups {
                out += &format!("  {group}: {p} passed, {f} failed, {s} skipped\n");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_and_summary() {
        let mut r = Report::new("verify prop2");
        r.pass("prop2/F", "ok");
        r.push("prop2/G", Status::Skip, "");
        assert_eq!(r.exit_code(), 0);
        r.fail("prop3/H", "no lift");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.summary(), vec![("prop2".to_string(), [1, 0, 1]), ("prop3".to_string(), [0, 1, 0])]);
    }

    #[test]
    fn machine_lines_are_tab_separated() {
        let mut r = Report::new("check fibration X");
        r.fail("fibration", "no cartesian lift\nof f");
        let text = r.machine();
        assert!(text.contains("fibration\tfail\tno cartesian lift of f\n"));
        assert!(text.ends_with("# exit 1\n"));
    }
}
