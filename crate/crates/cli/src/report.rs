use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned columns for reading.
    Text,
    /// One `key = value` pair per line.
    Kv,
}

/// An ordered list of key/value rows rendered in either format.
#[derive(Default)]
pub struct Report {
    rows: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    /// Appends the `key = value` lines of an existing display.
    pub fn lines(&mut self, prefix: &str, text: &str) -> &mut Self {
        for line in text.lines() {
            if let Some((k, v)) = line.split_once(" = ") {
                self.row(format!("{prefix}{}", k.trim()), v.trim());
            }
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Kv => {
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            Format::Text => {
                let w = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k:<w$}  {v}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats() {
        let mut r = Report::new();
        r.row("p", 53).row("total", 3593);
        assert_eq!(r.render(Format::Kv), "p = 53\ntotal = 3593\n");
        assert_eq!(r.render(Format::Text), "p      53\ntotal  3593\n");
    }

    #[test]
    fn lines_are_split_on_equals() {
        let mut r = Report::new();
        r.lines("ledger.", "s1 = 6\nno pair here\ns2 = 1462");
        assert_eq!(r.render(Format::Kv), "ledger.s1 = 6\nledger.s2 = 1462\n");
    }
}
