use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::rational::{self, format_rational, Rational};

/// Sparsity parameters `(a, b)`: every subgraph `H` with at least one edge
/// must satisfy `e(H) <= a * v(H) + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparsityParams {
    #[serde(with = "rational::serde_rational")]
    a: Rational,
    #[serde(with = "rational::serde_rational")]
    b: Rational,
}

impl SparsityParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a <= Rational::from_integer(0) {
            return Err(Error::Domain(format!(
                "a must be positive, got {}",
                format_rational(&a)
            )));
        }
        Ok(SparsityParams { a, b })
    }

    pub fn integral(a: i64, b: i64) -> Result<Self> {
        Self::new(Rational::from_integer(a), Rational::from_integer(b))
    }

    /// `(m, 1 - 2m)`, the parameters whose sparsity is equivalent to `m2(G) <= m`.
    pub fn two_density(m: Rational) -> Result<Self> {
        Self::new(m, Rational::one() - m * 2)
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    /// Integral part of `a`.
    pub fn k(&self) -> i64 {
        rational::floor(&self.a)
    }

    /// Fractional part of `a`.
    pub fn eps(&self) -> Rational {
        self.a - Rational::from_integer(self.k())
    }

    pub fn is_pathological(&self) -> bool {
        self.a * 2 + self.b < Rational::one()
    }

    pub fn ensure_regular(&self) -> Result<()> {
        if self.is_pathological() {
            return Err(Error::Pathological {
                a: format_rational(&self.a),
                b: format_rational(&self.b),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Sparse,
    NotSparse,
}

/// Outcome of a sparsity check together with an extremal vertex set.
///
/// `witness` maximizes `e(G[U]) - a|U|` over vertex sets spanning at least
/// one edge. For an edgeless graph there is nothing to check: the witness is
/// empty and both numeric fields are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityCertificate {
    pub verdict: Verdict,
    #[serde(with = "rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "rational::serde_rational")]
    pub b: Rational,
    pub witness: VertexSet,
    /// `e(G[U]) - a|U| - b` for the witness `U`.
    #[serde(with = "rational::serde_opt_rational")]
    pub max_violation: Option<Rational>,
    /// `a|U| - e(G[U])` for the witness, the smallest potential of any subgraph.
    #[serde(with = "rational::serde_opt_rational")]
    pub min_potential: Option<Rational>,
}

impl SparsityCertificate {
    pub fn is_sparse(&self) -> bool {
        self.verdict == Verdict::Sparse
    }

    pub fn params(&self) -> SparsityParams {
        SparsityParams {
            a: self.a,
            b: self.b,
        }
    }
}
