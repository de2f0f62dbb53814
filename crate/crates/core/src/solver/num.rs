//! Rational numbers for the simplex inner loop.
//!
//! Tableau entries are almost always small fractions, where `BigRational`
//! spends most of its time allocating and running gcds on heap digits. `Q`
//! keeps a reduced `i64/i64` form and moves to `BigRational` only when a
//! result does not fit, so every operation stays exact.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub(crate) enum Q {
    /// Reduced, denominator positive, both strictly inside the `i64` range.
    Small(i64, i64),
    Big(Box<Rational>),
}

const LIMIT: i128 = i64::MAX as i128;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn zero() -> Self {
        Q::Small(0, 1)
    }

    /// Reduces `n/d` (d ≠ 0) and picks the representation.
    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Q::zero();
        }
        let g = gcd(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        if n.abs() <= LIMIT && d <= LIMIT {
            Q::Small(n as i64, d as i64)
        } else {
            Q::Big(Box::new(Rational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(r: Rational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Q::Small(n, d),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            Q::Small(n, d) => Rational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(n, _) => *n == 0,
            Q::Big(r) => r.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Q::Small(n, _) => *n > 0,
            Q::Big(r) => r.is_positive(),
        }
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    fn big_op(&self, other: &Q, f: impl Fn(&Rational, &Rational) -> Rational) -> Q {
        Q::from_big(f(&self.to_rational(), &other.to_rational()))
    }
}

impl From<&Rational> for Q {
    fn from(r: &Rational) -> Self {
        Q::from_big(r.clone())
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, other: &Q) -> Q {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if b == d {
                    Q::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Q::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => self.big_op(other, |x, y| x + y),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(r) => Q::Big(Box::new(-(**r).clone())),
        }
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, other: &Q) -> Q {
        self + &(-other)
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, other: &Q) -> Q {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => self.big_op(other, |x, y| x * y),
        }
    }
}

impl Div for &Q {
    type Output = Q;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, other: &Q) -> Q {
        self * &other.recip()
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}
