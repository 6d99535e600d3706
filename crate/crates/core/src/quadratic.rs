//! Maximal orders of imaginary quadratic fields and their elements.
//!
//! The order of discriminant `D` has the integral basis `{1, w}` where
//! `w = sqrt(D/4)` when `D = 0 mod 4` and `w = (1 + sqrt(D))/2` when
//! `D = 1 mod 4`. In both cases `w^2 = t*w - n` with `t = D mod 2` and
//! `n = (t - D)/4`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadOrder {
    disc: i64,
}

/// An element `x + y*w` of the quadratic field, with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub x: Rational,
    pub y: Rational,
}

impl QuadNumber {
    pub fn new(x: Rational, y: Rational) -> Self {
        QuadNumber { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        QuadNumber {
            x: Rational::from_integer(x),
            y: Rational::from_integer(y),
        }
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    pub fn one() -> Self {
        Self::int(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> i128 {
        self.x.denom().lcm(self.y.denom())
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadNumber::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadNumber::new(self.x - other.x, self.y - other.y)
    }

    pub fn neg(&self) -> Self {
        QuadNumber::new(-self.x, -self.y)
    }

    pub fn scale(&self, r: Rational) -> Self {
        QuadNumber::new(self.x * r, self.y * r)
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else if self.x.is_zero() {
            write!(f, "{}w", self.y)
        } else if self.y.is_negative() {
            write!(f, "{}-{}w", self.x, -self.y)
        } else {
            write!(f, "{}+{}w", self.x, self.y)
        }
    }
}

impl QuadOrder {
    /// The maximal order of discriminant `disc`; rejects non-fundamental or
    /// non-negative discriminants.
    /// For discriminants already known to be valid.
    pub(crate) fn new_unchecked(disc: i64) -> Self {
        QuadOrder { disc }
    }

    pub fn new(disc: i64) -> Result<Self> {
        if disc >= 0 {
            return Err(Error::Discriminant {
                disc,
                reason: "only negative discriminants are supported",
            });
        }
        if !is_fundamental(disc) {
            return Err(Error::Discriminant {
                disc,
                reason: "not a fundamental discriminant",
            });
        }
        Ok(QuadOrder { disc })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Trace of `w`.
    pub fn trace_w(&self) -> i128 {
        self.disc.rem_euclid(2) as i128
    }

    /// Norm of `w`.
    pub fn norm_w(&self) -> i128 {
        (self.trace_w() - self.disc as i128) / 4
    }

    pub fn mul(&self, a: &QuadNumber, b: &QuadNumber) -> QuadNumber {
        let t = Rational::from_integer(self.trace_w());
        let n = Rational::from_integer(self.norm_w());
        let yy = a.y * b.y;
        QuadNumber::new(a.x * b.x - yy * n, a.x * b.y + a.y * b.x + yy * t)
    }

    pub fn conj(&self, a: &QuadNumber) -> QuadNumber {
        let t = Rational::from_integer(self.trace_w());
        QuadNumber::new(a.x + a.y * t, -a.y)
    }

    pub fn norm(&self, a: &QuadNumber) -> Rational {
        let t = Rational::from_integer(self.trace_w());
        let n = Rational::from_integer(self.norm_w());
        a.x * a.x + t * a.x * a.y + n * a.y * a.y
    }

    pub fn trace(&self, a: &QuadNumber) -> Rational {
        a.x * Rational::from_integer(2) + a.y * Rational::from_integer(self.trace_w())
    }

    pub fn inv(&self, a: &QuadNumber) -> Option<QuadNumber> {
        let n = self.norm(a);
        if n.is_zero() {
            return None;
        }
        Some(self.conj(a).scale(n.recip()))
    }

    pub fn pow(&self, a: &QuadNumber, k: u32) -> QuadNumber {
        (0..k).fold(QuadNumber::one(), |acc, _| self.mul(&acc, a))
    }

    /// Monic minimal polynomial of `w` as `(t, n)` in `X^2 - tX + n`.
    pub fn min_poly(&self) -> (i128, i128) {
        (self.trace_w(), self.norm_w())
    }

    pub fn is_unit(&self, a: &QuadNumber) -> bool {
        a.is_integral() && self.norm(a) == Rational::one()
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.disc)
    }
}

/// `D` squarefree with `D = 1 mod 4`, or `D = 4m` with `m` squarefree and
/// `m = 2, 3 mod 4`.
pub fn is_fundamental(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}
