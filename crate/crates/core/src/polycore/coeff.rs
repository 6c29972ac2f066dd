//! Integer coefficients with an `i64` fast path.
//!
//! Values that fit in 64 bits are stored inline; anything larger spills to a
//! boxed [`BigInt`]. Every arithmetic step is checked, so overflow promotes
//! instead of wrapping. A value is only ever stored as `Big` when it does not
//! fit in `i64`, which keeps the derived equality canonical.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(Box<BigInt>),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(b) => (**b).clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(_) => None,
        }
    }

    fn normalize(value: BigInt) -> Coeff {
        match value.to_i64() {
            Some(v) => Coeff::Small(v),
            None => Coeff::Big(Box::new(value)),
        }
    }

    pub fn add_assign(&mut self, other: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coeff::Small(s);
                return;
            }
        }
        let sum = self.to_bigint() + other.to_bigint();
        *self = Coeff::normalize(sum);
    }

    pub fn mul_small(&self, factor: i64) -> Coeff {
        match self {
            Coeff::Small(v) => match v.checked_mul(factor) {
                Some(p) => Coeff::Small(p),
                None => Coeff::normalize(BigInt::from(*v) * factor),
            },
            Coeff::Big(b) => Coeff::normalize(&**b * factor),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (_, Coeff::Small(f)) => self.mul_small(*f),
            (Coeff::Small(f), _) => other.mul_small(*f),
            (Coeff::Big(a), Coeff::Big(b)) => Coeff::normalize(&**a * &**b),
        }
    }

    pub fn neg(&self) -> Coeff {
        self.mul_small(-1)
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::ZERO
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigInt> for Coeff {
    fn from(v: BigInt) -> Self {
        Coeff::normalize(v)
    }
}

impl From<&Coeff> for BigInt {
    fn from(c: &Coeff) -> Self {
        c.to_bigint()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Coeff {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigInt::from_str(s).map(Coeff::normalize)
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::ZERO
    }

    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}

impl std::ops::Add for Coeff {
    type Output = Coeff;

    fn add(mut self, rhs: Coeff) -> Coeff {
        self.add_assign(&rhs);
        self
    }
}
