//! Exact linear algebra on Z/2-graded spaces over the rationals and their
//! quadratic extensions.

mod field;
mod module;
mod operator;
mod solve;
mod sparse;

pub use field::Scalar;
pub use module::SuperModule;
pub use operator::GradedOperator;
pub use solve::{
    algebra_closure, commutant, joint_kernel, joint_kernel_on, kernel_of_rows, rank, span_dim, span_equal,
    weight_decompose, Commutant,
};
pub use sparse::{Echelon, SparseVec};

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

/// Exact scalar of the linear algebra layer.
pub type Q = Scalar;

/// Exact rational number.
pub type Rational = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn q(n: i64) -> Q {
    Scalar::from_int(n)
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Z/2 grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    /// `(-1)^{p(a) p(b)}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_count(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
