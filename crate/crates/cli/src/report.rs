use std::fmt::Display;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Plain lines for people.
    #[default]
    Text,
    /// `key=value` lines in a fixed order.
    Kv,
}

struct Field {
    key: String,
    value: String,
    /// Text output shows the value alone.
    bare: bool,
}

/// What a command prints, and whether its checks held.
pub struct Report {
    fields: Vec<Field>,
    pub ok: bool,
}

impl Report {
    pub fn new() -> Self {
        Report { fields: Vec::new(), ok: true }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push(Field { key: key.into(), value: value.to_string(), bare: false });
        self
    }

    pub fn line(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push(Field { key: key.into(), value: value.to_string(), bare: true });
        self
    }

    /// A PASS/FAIL line that also feeds the exit status.
    pub fn check(mut self, key: &str, passed: bool, detail: impl Display) -> Self {
        let tag = if passed { "PASS" } else { "FAIL" };
        self.ok &= passed;
        self.fields.push(Field { key: key.into(), value: format!("{tag} {detail}"), bare: true });
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for f in &self.fields {
            let value = f.value.trim_end();
            match format {
                Format::Text if f.bare || self.fields.len() == 1 => out.push_str(value),
                Format::Text => out.push_str(&format!("{}: {value}", f.key)),
                Format::Kv => out.push_str(&format!("{}={}", f.key, value.replace('\n', "; "))),
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let r = Report::new().field("class", "{(0,0)}");
        assert_eq!(r.render(Format::Text), "{(0,0)}\n");
        assert_eq!(r.render(Format::Kv), "class={(0,0)}\n");
        let r = Report::new().field("a", 1).check("b", false, "x\ny");
        assert!(!r.ok);
        assert_eq!(r.render(Format::Text), "a: 1\nFAIL x\ny\n");
        assert_eq!(r.render(Format::Kv), "a=1\nb=FAIL x; y\n");
    }
}
