//! Named graph families and their closed-form tree and two-forest counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::graph::{house, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete,
    Cycle,
    Wheel,
    Torus,
    House,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Complete,
        Family::Cycle,
        Family::Wheel,
        Family::Torus,
        Family::House,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Wheel => "wheel",
            Family::Torus => "torus",
            Family::House => "house",
        }
    }

    /// Smallest size the generator accepts.
    pub fn min_size(self) -> usize {
        match self {
            Family::Complete | Family::House => 1,
            Family::Cycle | Family::Wheel => 3,
            Family::Torus => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A family tag with its size parameter. For `House` the size is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let spec = FamilySpec { family, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn complete(n: usize) -> Self {
        FamilySpec { family: Family::Complete, n }
    }

    pub fn cycle(n: usize) -> Self {
        FamilySpec { family: Family::Cycle, n }
    }

    pub fn wheel(n: usize) -> Self {
        FamilySpec { family: Family::Wheel, n }
    }

    pub fn torus(n: usize) -> Self {
        FamilySpec { family: Family::Torus, n }
    }

    pub fn house() -> Self {
        FamilySpec { family: Family::House, n: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.family.min_size();
        if self.n < min {
            return Err(Error::InvalidFamily {
                family: self.family.tag(),
                n: self.n,
                min,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::House => write!(f, "house"),
            Family::Torus => write!(f, "torus({0}x{0})", self.n),
            fam => write!(f, "{fam}({})", self.n),
        }
    }
}

/// Builds the family member. Wheels put the hub last; tori number vertices
/// row-major, and for `n = 2` the wraparound doubles every edge.
pub fn build(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    match spec.family {
        Family::Complete => complete_graph(n),
        Family::Cycle => cycle_graph(n),
        Family::Wheel => {
            let rim = (0..n).map(|i| (i, (i + 1) % n));
            let spokes = (0..n).map(|i| (i, n));
            Graph::new(n + 1, rim.chain(spokes))
        }
        Family::Torus => torus_grid(&[n, n]),
        Family::House => Ok(house()),
    }
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::new(n, pairs)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Nearest-neighbour graph on the discrete torus with the given side lengths,
/// vertices numbered row-major (last coordinate fastest). Every side must be
/// at least 2; a side of 2 yields doubled edges.
pub fn torus_grid(sides: &[usize]) -> Result<Graph> {
    if let Some(&bad) = sides.iter().find(|&&s| s < 2) {
        return Err(Error::InvalidFamily {
            family: "torus",
            n: bad,
            min: 2,
        });
    }
    let total: usize = sides.iter().product();
    let mut strides = vec![1; sides.len()];
    for k in (0..sides.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * sides[k + 1];
    }
    let mut pairs = Vec::with_capacity(total * sides.len());
    for v in 0..total {
        for (&side, &stride) in sides.iter().zip(&strides) {
            let coord = (v / stride) % side;
            let w = v - coord * stride + ((coord + 1) % side) * stride;
            pairs.push((v, w));
        }
    }
    Graph::new(total, pairs)
}

/// Fibonacci and Lucas numbers `(F_k, L_k)` by integer recurrence.
pub fn fibonacci_lucas(k: usize) -> (BigInt, BigInt) {
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    for _ in 0..k {
        let f2 = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, f2);
        let l2 = &l0 + &l1;
        l0 = std::mem::replace(&mut l1, l2);
    }
    (f0, l0)
}

/// `(κ, κ₂)` from the family's closed forms. Valid for every `n ≥ 1` for
/// complete graphs and wheels (the wheel formulas also cover `n = 1, 2`,
/// which the generator does not build); tori have no closed form here.
pub fn closed_form(spec: FamilySpec) -> Result<(BigInt, BigInt)> {
    let n = spec.n;
    match spec.family {
        Family::Torus => Err(Error::NoClosedForm("torus")),
        Family::House => Ok((BigInt::from(11), BigInt::from(19))),
        Family::Cycle => {
            spec.validate()?;
            Ok((BigInt::from(n), BigInt::from(n * (n - 1) / 2)))
        }
        Family::Complete => {
            spec.validate()?;
            let nb = BigInt::from(n);
            // n^{n-2} and ½(n−1)(n+6)n^{n−4}, kept rational for n < 4.
            let power = |e: i64| -> BigRational {
                if e >= 0 {
                    BigRational::from_integer(Pow::pow(&nb, e as u64))
                } else {
                    BigRational::new(BigInt::one(), Pow::pow(&nb, (-e) as u64))
                }
            };
            let kappa = power(n as i64 - 2);
            let kappa2 = BigRational::from_integer(BigInt::from((n - 1) * (n + 6)))
                * power(n as i64 - 4)
                / BigRational::from_integer(BigInt::from(2));
            debug_assert!(kappa.is_integer() && kappa2.is_integer());
            Ok((kappa.to_integer(), kappa2.to_integer()))
        }
        Family::Wheel => {
            if n == 0 {
                return Err(Error::InvalidFamily {
                    family: "wheel",
                    n,
                    min: 1,
                });
            }
            let (_, lucas) = fibonacci_lucas(2 * n);
            let (fib, _) = fibonacci_lucas(2 * n - 1);
            Ok((lucas - 2, fib * BigInt::from(n)))
        }
    }
}

/// `κ₂(Kₙ)/κ(Kₙ) = ½(1 − 1/n)(1 + 6/n)`.
pub fn complete_ratio(n: usize) -> BigRational {
    let n = BigInt::from(n);
    let one = BigRational::one();
    let inv = BigRational::new(BigInt::one(), n);
    (&one - &inv) * (&one + &inv * BigInt::from(6)) / BigInt::from(2)
}
