use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Output format shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned two-column table for reading.
    Table,
    /// One `key=value` line per entry; exact values as reduced `p/q`.
    Machine,
}

#[derive(Debug, Clone)]
pub enum Field {
    Exact(BigRational),
    Float(f64),
    Text(String),
}

impl From<BigRational> for Field {
    fn from(x: BigRational) -> Self {
        Field::Exact(x)
    }
}

impl From<&BigRational> for Field {
    fn from(x: &BigRational) -> Self {
        Field::Exact(x.clone())
    }
}

impl From<BigInt> for Field {
    fn from(x: BigInt) -> Self {
        Field::Exact(BigRational::from_integer(x))
    }
}

impl From<&BigInt> for Field {
    fn from(x: &BigInt) -> Self {
        Field::Exact(BigRational::from_integer(x.clone()))
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Exact(BigRational::from_integer(x.into()))
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::Exact(BigRational::from_integer(x.into()))
    }
}

impl From<i64> for Field {
    fn from(x: i64) -> Self {
        Field::Exact(BigRational::from_integer(x.into()))
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Float(x)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Text(x.to_string())
    }
}

impl From<String> for Field {
    fn from(x: String) -> Self {
        Field::Text(x)
    }
}

/// Exact values joined by single spaces, for vector and matrix rows.
pub fn join<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> Field {
    Field::Text(
        values
            .into_iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    )
}

/// Ordered key-value document. Keys appear in insertion order.
#[derive(Debug, Default)]
pub struct Document {
    entries: Vec<(String, Field)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Field>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn render(&self, format: Format, decimal: bool) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                for (k, v) in &self.entries {
                    let v = match v {
                        Field::Exact(x) => x.to_string(),
                        Field::Float(x) => format!("{x:.6}"),
                        Field::Text(s) => s.clone(),
                    };
                    writeln!(out, "{k}={v}").unwrap();
                }
            }
            Format::Table => {
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    let v = match v {
                        Field::Exact(x) if decimal && !x.is_integer() => {
                            format!("{x}  ~ {:.6}", x.to_f64().unwrap_or(f64::NAN))
                        }
                        Field::Exact(x) => x.to_string(),
                        Field::Float(x) => format!("{x:.6}"),
                        Field::Text(s) => s.clone(),
                    };
                    writeln!(out, "{k:<width$}  {v}").unwrap();
                }
            }
        }
        out
    }
}
