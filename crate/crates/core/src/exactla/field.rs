use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact element `re + ir·√d` of a quadratic field `Q(√d)`.
///
/// The radicand travels with the value: rationals carry `d = 0`, and
/// arithmetic between two irrational values requires the same `d`. This lets
/// the whole linear-algebra layer work over whichever quadratic extension a
/// computation needs without a global setting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    ir: BigRational,
    d: i64,
}

fn merge(a: i64, b: i64) -> i64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("arithmetic mixes Q(sqrt {x}) and Q(sqrt {y})"),
    }
}

impl Scalar {
    fn norm(re: BigRational, ir: BigRational, d: i64) -> Self {
        if ir.is_zero() {
            Self {
                re,
                ir,
                d: 0,
            }
        } else {
            Self { re, ir, d }
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            ir: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `√n`, simplified: square factors are pulled out, perfect squares
    /// give rationals.
    pub fn sqrt(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let mut s = 1i64;
        let mut d = n;
        let mut f = 2i64;
        while f * f <= d.abs() {
            while d % (f * f) == 0 {
                d /= f * f;
                s *= f;
            }
            f += 1;
        }
        if d == 1 {
            return Self::from_int(s);
        }
        Self::norm(BigRational::zero(), BigRational::from_integer(BigInt::from(s)), d)
    }

    /// Squarefree radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn rational(&self) -> Option<&BigRational> {
        self.ir.is_zero().then_some(&self.re)
    }

    pub fn is_integer(&self) -> bool {
        self.ir.is_zero() && self.re.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.re.to_integer())
    }

    pub fn conj(&self) -> Self {
        Self::norm(self.re.clone(), -&self.ir, self.d)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.ir.is_zero() {
            return Self::from_rational(self.re.recip());
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let n = &self.re * &self.re - &self.ir * &self.ir * dd;
        Self::norm(&self.re / &n, -&self.ir / &n, self.d)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ir.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_one(&self) -> bool {
        self.ir.is_zero() && self.re.is_one()
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ir.is_zero() {
            return write!(f, "{}", self.re);
        }
        let rad = if self.ir.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.ir).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.ir, self.d)
        };
        if self.re.is_zero() {
            f.write_str(&rad)
        } else if self.ir.is_negative() {
            write!(f, "{}{rad}", self.re)
        } else {
            write!(f, "{}+{rad}", self.re)
        }
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if b.ir.is_zero() && a.ir.is_zero() {
        return Scalar::from_rational(&a.re + &b.re);
    }
    Scalar::norm(&a.re + &b.re, &a.ir + &b.ir, merge(a.d, b.d))
}

fn sub_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if b.ir.is_zero() && a.ir.is_zero() {
        return Scalar::from_rational(&a.re - &b.re);
    }
    Scalar::norm(&a.re - &b.re, &a.ir - &b.ir, merge(a.d, b.d))
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.ir.is_zero() && b.ir.is_zero() {
        return Scalar::from_rational(&a.re * &b.re);
    }
    let d = merge(a.d, b.d);
    let dd = BigRational::from_integer(BigInt::from(d));
    let re = &a.re * &b.re + &a.ir * &b.ir * dd;
    let ir = &a.re * &b.ir + &a.ir * &b.re;
    Scalar::norm(re, ir, d)
}

fn div_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.ir.is_zero() && b.ir.is_zero() {
        return Scalar::from_rational(&a.re / &b.re);
    }
    mul_ref(a, &b.inv())
}

macro_rules! binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

macro_rules! assignop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&Scalar> for Scalar {
            fn $method(&mut self, rhs: &Scalar) {
                *self = $f(self, rhs);
            }
        }
        impl $tr<Scalar> for Scalar {
            fn $method(&mut self, rhs: Scalar) {
                *self = $f(self, &rhs);
            }
        }
    };
}

assignop!(AddAssign, add_assign, add_ref);
assignop!(SubAssign, sub_assign, sub_ref);
assignop!(MulAssign, mul_assign, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::norm(-self.re, -self.ir, self.d)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::norm(-&self.re, -&self.ir, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_simplifies() {
        assert_eq!(Scalar::sqrt(4), Scalar::from_int(2));
        assert_eq!(Scalar::sqrt(-8), Scalar::sqrt(-2) * Scalar::from_int(2));
        assert_eq!(Scalar::sqrt(-8).radicand(), Some(-2));
    }

    #[test]
    fn field_operations() {
        let r = Scalar::sqrt(-2);
        assert_eq!(&r * &r, Scalar::from_int(-2));
        let x = Scalar::from_int(3) + &r;
        assert_eq!(&x * x.inv(), Scalar::one());
        assert_eq!(&x * x.conj(), Scalar::from_int(11));
        assert_eq!((&x - &r).radicand(), None);
        assert_eq!(x.to_string(), "3+sqrt(-2)");
        assert_eq!((-x).to_string(), "-3-sqrt(-2)");
    }

    #[test]
    #[should_panic(expected = "mixes")]
    fn mixing_fields_panics() {
        let _ = Scalar::sqrt(2) + Scalar::sqrt(3);
    }
}
