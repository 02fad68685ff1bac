use std::fmt;

use num_rational::BigRational;

use crate::linalg::RationalMatrix;

/// One side of a checked relation, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(BigRational),
    Vector(Vec<BigRational>),
    Matrix(RationalMatrix),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(x) => write!(f, "{x}"),
            Value::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Value::Matrix(m) => write!(f, "{m:?}"),
        }
    }
}

impl From<BigRational> for Value {
    fn from(x: BigRational) -> Self {
        Value::Scalar(x)
    }
}

impl From<Vec<BigRational>> for Value {
    fn from(v: Vec<BigRational>) -> Self {
        Value::Vector(v)
    }
}

impl From<RationalMatrix> for Value {
    fn from(m: RationalMatrix) -> Self {
        Value::Matrix(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
    Lt,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub lhs: Value,
    pub rhs: Value,
    pub holds: bool,
}

/// Pass/fail rows for a family of identities and inequalities, plus free-form
/// informational entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub info: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs = rhs`, compared exactly.
    pub fn equal(&mut self, name: impl Into<String>, lhs: impl Into<Value>, rhs: impl Into<Value>) {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = lhs == rhs;
        self.checks.push(Check {
            name: name.into(),
            relation: Relation::Eq,
            lhs,
            rhs,
            holds,
        });
    }

    /// Records a scalar inequality `lhs <relation> rhs`.
    pub fn compare(
        &mut self,
        name: impl Into<String>,
        lhs: BigRational,
        relation: Relation,
        rhs: BigRational,
    ) {
        let holds = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Gt => lhs > rhs,
        };
        self.checks.push(Check {
            name: name.into(),
            relation,
            lhs: Value::Scalar(lhs),
            rhs: Value::Scalar(rhs),
            holds,
        });
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.info.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.info.extend(other.info);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn info_value(&self, key: &str) -> Option<&str> {
        self.info
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {} {} {}",
                if c.holds { "PASS" } else { "FAIL" },
                c.name,
                c.lhs,
                c.relation.symbol(),
                c.rhs
            )?;
        }
        Ok(())
    }
}
