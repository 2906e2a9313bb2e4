//! Rationals with a machine-word fast path. Values that fit in i64 are kept
//! inline and only promoted to big integers when an operation overflows.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// A reduced fraction. Canonical: `Small` whenever numerator and denominator
/// fit, so derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    /// numerator, denominator > 0, coprime, numerator ≠ i64::MIN
    Small(i64, i64),
    Big(BigRational),
}

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(0, 1)
    }

    pub fn one() -> Q {
        Q::Small(1, 1)
    }

    pub fn from_integer(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }

    /// n/d, reduced. Panics on d = 0.
    pub fn new(n: BigInt, d: BigInt) -> Q {
        Q::from_big(BigRational::new(n, d))
    }

    fn from_i128(n: i128, d: i128) -> Q {
        assert!(d != 0, "zero denominator");
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Q::Small(n as i64, d as i64)
        } else {
            Q::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(r) => r.denom().clone(),
        }
    }

    fn add_ref(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Q::from_i128(a + c, b)
                } else {
                    Q::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }

    fn div_ref(&self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Q::from_big(self.to_big() / o.to_big()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_i128(n as i128, 1)
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denom();
        if d.is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), d)
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(r) => Q::from_big(-r.clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl Sub<&Q> for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self.add_ref(&-o)
    }
}

macro_rules! forward {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $f(self, o)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $f(&self, &o)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $f(&self, o)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $f(self, &o)
            }
        }
    };
}

forward!(Add, add, Q::add_ref);
forward!(Mul, mul, Q::mul_ref);
forward!(Div, div, Q::div_ref);

impl Sub<Q> for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        &self - &o
    }
}

impl Sub<&Q> for Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        &self - o
    }
}

impl Sub<Q> for &Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        self - &o
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = self.add_ref(o);
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, o: Q) {
        *self = self.add_ref(&o);
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}

impl SubAssign<Q> for Q {
    fn sub_assign(&mut self, o: Q) {
        *self = &*self - &o;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        *self = self.mul_ref(o);
    }
}
