use std::fmt::{self, Display, Write as _};

use antipodal_core::Fraction;

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

/// Ordered `key=value` lines; rendered either as-is or padded for reading.
#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    /// Exact value followed by a `<key>_decimal` line.
    pub fn fraction(&mut self, key: &str, value: Fraction) -> &mut Self {
        self.put(key, value);
        self.put(&format!("{key}_decimal"), format!("{:.6}", to_f64(value)))
    }

    pub fn optional_fraction(&mut self, key: &str, value: Option<Fraction>) -> &mut Self {
        match value {
            Some(v) => self.fraction(key, v),
            None => self.put(key, "undefined"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Kv => {
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k}={v}");
                }
            }
            Format::Text => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
            }
        }
        out
    }
}

pub fn to_f64(value: Fraction) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

pub struct CommaList<'a, T>(pub &'a [T]);

impl<T: Display> Display for CommaList<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
