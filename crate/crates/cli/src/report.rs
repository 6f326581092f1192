use std::fmt::Write as _;

use qsgame::Verdict;

/// Line-oriented command output. Any `FAILS` line makes the exit code 1.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    text: String,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn info(&mut self, what: &str, detail: impl AsRef<str>) {
        let _ = writeln!(self.text, "INFO {what} {}", detail.as_ref());
    }

    pub fn holds(&mut self, name: &str) {
        let _ = writeln!(self.text, "PROPERTY {name} HOLDS");
    }

    pub fn fails(&mut self, name: &str, witness: impl AsRef<str>) {
        self.failed = true;
        let w = witness.as_ref();
        if w.is_empty() {
            let _ = writeln!(self.text, "PROPERTY {name} FAILS");
        } else {
            let _ = writeln!(self.text, "PROPERTY {name} FAILS {w}");
        }
    }

    pub fn flag(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.holds(name);
        } else {
            self.fails(name, witness());
        }
    }

    pub fn verdict<W>(&mut self, name: &str, v: &Verdict<W>, render: impl FnOnce(&W) -> String) {
        match v {
            Verdict::Holds => self.holds(name),
            Verdict::Fails(w) => self.fails(name, render(w)),
        }
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn into_text(self) -> String {
        self.text
    }
}
