//! Rendering of record lists as aligned text, CSV or key=value lines.

use crate::args::Format;

/// One output row with fields in a fixed order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, String)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &'static str, value: impl ToString) -> Self {
        self.0.push((key, value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(k, _)| *k)
    }

    pub fn values(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(_, v)| v.as_str())
    }
}

pub fn fmt_value(v: f64) -> String {
    format!("{v:.10}")
}

pub fn fmt_small(v: f64) -> String {
    format!("{v:.3e}")
}

/// Renders `records`, which must share one key order. `preamble` lines are
/// emitted first, as `# ` comments in the machine formats.
pub fn render(records: &[Record], format: Format, preamble: &[String]) -> String {
    let mut out = String::new();
    let comment = if format == Format::Plain { "" } else { "# " };
    for line in preamble {
        out.push_str(comment);
        out.push_str(line);
        out.push('\n');
    }
    let Some(first) = records.first() else {
        return out;
    };
    let keys: Vec<&str> = first.keys().collect();
    match format {
        Format::Plain => {
            let mut widths: Vec<usize> = keys.iter().map(|k| k.len()).collect();
            for r in records {
                for (w, v) in widths.iter_mut().zip(r.values()) {
                    *w = (*w).max(v.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(keys.clone()));
            for r in records {
                out.push_str(&line(r.values().collect()));
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&keys).expect("in-memory write");
            for r in records {
                w.write_record(r.values()).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
        }
        Format::Records => {
            for r in records {
                let fields: Vec<String> = r
                    .0
                    .iter()
                    .map(|(k, v)| format!("{k}={}", v.replace(char::is_whitespace, "_")))
                    .collect();
                out.push_str(&fields.join(" "));
                out.push('\n');
            }
        }
    }
    out
}
