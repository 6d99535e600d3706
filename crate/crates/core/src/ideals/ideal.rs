//! Fractional ideals of a maximal imaginary quadratic order in Hermite
//! normal form.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::hnf::row_hnf;
use crate::quadratic::{QuadNumber, QuadOrder, Rational};

/// `scale * (aZ + (b + w)Z)` with `a > 0`, `0 <= b < a`, `a | N(b + w)` and
/// `scale > 0` rational. Every nonzero fractional ideal has exactly one such
/// representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    order: QuadOrder,
    a: i128,
    b: i128,
    scale: Rational,
}

impl FractionalIdeal {
    /// The ideal `O*g_1 + ... + O*g_m`.
    pub fn from_generators(order: QuadOrder, gens: &[QuadNumber]) -> Result<Self> {
        let w = QuadNumber::int(0, 1);
        let zgens: Vec<QuadNumber> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .flat_map(|g| [g.clone(), order.mul(g, &w)])
            .collect();
        if zgens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let den = zgens.iter().fold(1i128, |acc, g| acc.lcm(&g.denominator()));
        let d = Rational::from_integer(den);
        // coordinates ordered (y, x) so the pivot of the first row is the w-part
        let rows: Vec<Vec<i128>> = zgens
            .iter()
            .map(|g| vec![(g.y * d).to_integer(), (g.x * d).to_integer()])
            .collect();
        let h = row_hnf(&rows);
        let (c, bb, aa) = (h[0][0], h[0][1], h[1][1]);
        debug_assert!(h.len() == 2 && h[1][0] == 0);
        assert!(aa % c == 0 && bb % c == 0, "lattice is not an O-module");
        let a = aa / c;
        let b = (bb / c).rem_euclid(a);
        let ideal = FractionalIdeal { order, a, b, scale: Rational::new(c, den) };
        debug_assert!(ideal.check_invariants());
        Ok(ideal)
    }

    /// `aZ + (b + w)Z`, validated.
    pub fn primitive(order: QuadOrder, a: i128, b: i128) -> Result<Self> {
        Self::new(order, a, b, Rational::one())
    }

    pub fn new(order: QuadOrder, a: i128, b: i128, scale: Rational) -> Result<Self> {
        if a <= 0 || !scale.is_positive() {
            return Err(Error::Parse(format!("ideal({a}, {b}): a and the scale must be positive")));
        }
        let ideal = FractionalIdeal { order, a, b: b.rem_euclid(a), scale };
        if !ideal.check_invariants() {
            return Err(Error::Parse(format!(
                "ideal({a}, {b}) is not an ideal of {order}: {a} does not divide N({b}+w)"
            )));
        }
        Ok(ideal)
    }

    fn check_invariants(&self) -> bool {
        let nb = self.order.norm(&QuadNumber::int(self.b, 1)).to_integer();
        self.a > 0 && (0..self.a).contains(&self.b) && nb % self.a == 0 && self.scale.is_positive()
    }

    pub fn unit(order: QuadOrder) -> Self {
        FractionalIdeal { order, a: 1, b: 0, scale: Rational::one() }
    }

    pub fn principal(order: QuadOrder, x: &QuadNumber) -> Result<Self> {
        Self::from_generators(order, std::slice::from_ref(x))
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn scale(&self) -> Rational {
        self.scale
    }

    pub fn denominator(&self) -> i128 {
        *self.scale.denom()
    }

    /// The same ideal with scale 1.
    pub fn primitive_part(&self) -> Self {
        FractionalIdeal { scale: Rational::one(), ..self.clone() }
    }

    /// Z-basis `[scale*a, scale*(b + w)]`.
    pub fn basis(&self) -> [QuadNumber; 2] {
        [
            QuadNumber::int(self.a, 0).scale(self.scale),
            QuadNumber::int(self.b, 1).scale(self.scale),
        ]
    }

    pub fn norm(&self) -> Rational {
        self.scale * self.scale * Rational::from_integer(self.a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "ideals of different orders");
        let gens: Vec<QuadNumber> = self
            .basis()
            .iter()
            .flat_map(|x| other.basis().map(|y| self.order.mul(x, &y)))
            .collect();
        Self::from_generators(self.order, &gens).expect("product of nonzero ideals")
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::unit(self.order), |acc, _| acc.mul(self))
    }

    pub fn conj(&self) -> Self {
        let gens = self.basis().map(|x| self.order.conj(&x));
        Self::from_generators(self.order, &gens).expect("nonzero")
    }

    /// `conj(I) / N(I)`; every nonzero ideal of a maximal order is invertible.
    pub fn inv(&self) -> Self {
        let s = self.norm().recip();
        let gens = self.basis().map(|x| self.order.conj(&x).scale(s));
        Self::from_generators(self.order, &gens).expect("nonzero")
    }

    pub fn contains(&self, x: &QuadNumber) -> bool {
        let v = x.y / self.scale;
        if !v.is_integer() {
            return false;
        }
        let u = (x.x / self.scale - v * Rational::from_integer(self.b)) / Rational::from_integer(self.a);
        u.is_integer()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.basis().iter().all(|x| other.contains(x))
    }

    pub fn is_integral(&self) -> bool {
        self.is_subset(&Self::unit(self.order))
    }

    pub fn is_unit_ideal(&self) -> bool {
        *self == Self::unit(self.order)
    }

    /// Smallest positive rational number in the ideal.
    pub fn min_positive_rational(&self) -> Rational {
        self.scale * Rational::from_integer(self.a)
    }

    /// A generator `x` with `I = Ox`, if the ideal is principal.
    ///
    /// Searches `ua + v(b + w)` of norm `a`: the norm form divided by `a` is
    /// a positive definite form `(A, B, C)` of discriminant `D`, and
    /// `4A*f(u, v) = (2Au + Bv)^2 + |D|v^2` bounds both coordinates.
    pub fn generator(&self) -> Option<QuadNumber> {
        let big_a = self.a;
        let big_b = 2 * self.b + self.order.trace_w();
        let abs_d = -(self.order.disc() as i128);
        let vmax = isqrt((4 * big_a / abs_d) as u128) as i128;
        for v in -vmax..=vmax {
            let s = 4 * big_a - abs_d * v * v;
            if s < 0 {
                continue;
            }
            let r = isqrt(s as u128) as i128;
            if r * r != s {
                continue;
            }
            for root in [r, -r] {
                let num = root - big_b * v;
                if num % (2 * big_a) == 0 {
                    let u = num / (2 * big_a);
                    let beta = QuadNumber::int(u * self.a + v * self.b, v);
                    return Some(beta.scale(self.scale));
                }
            }
        }
        None
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.scale.numer(), *self.scale.denom());
        if n != 1 {
            write!(f, "{n}*")?;
        }
        write!(f, "ideal({}, {})", self.a, self.b)?;
        if d != 1 {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

/// Parses `ideal(a, b)`, `ideal(a, b)/den`, `k*ideal(a, b)` or
/// `k*ideal(a, b)/den`.
pub fn parse_ideal(order: QuadOrder, text: &str) -> Result<FractionalIdeal> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("bad ideal literal `{text}`"));
    let (num, rest) = match s.split_once("*ideal(") {
        Some((k, rest)) => (k.parse::<i128>().map_err(|_| err())?, rest),
        None => (1, s.strip_prefix("ideal(").ok_or_else(err)?),
    };
    let (args, tail) = rest.split_once(')').ok_or_else(err)?;
    let den = match tail {
        "" => 1,
        t => t.strip_prefix('/').and_then(|d| d.parse::<i128>().ok()).ok_or_else(err)?,
    };
    let (a, b) = args.split_once(',').ok_or_else(err)?;
    let a: i128 = a.parse().map_err(|_| err())?;
    let b: i128 = b.parse().map_err(|_| err())?;
    if num <= 0 || den <= 0 {
        return Err(err());
    }
    FractionalIdeal::new(order, a, b, Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(d: i64) -> QuadOrder {
        QuadOrder::new(d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p2 = FractionalIdeal::from_generators(o(-20), &[QuadNumber::int(2, 0), QuadNumber::int(1, 1)])
            .unwrap();
        assert_eq!((p2.a(), p2.b(), p2.denominator()), (2, 1, 1));
        let unit = FractionalIdeal::from_generators(o(-20), &[QuadNumber::one()]).unwrap();
        assert!(unit.is_unit_ideal());
        let i = FractionalIdeal::from_generators(o(-4), &[QuadNumber::int(0, 1)]).unwrap();
        assert_eq!((i.a(), i.b(), i.denominator()), (1, 0, 1));
        assert_eq!(FractionalIdeal::from_generators(o(-4), &[QuadNumber::zero()]), Err(Error::ZeroIdeal));
    }

    #[test]
    fn ramified_prime_squares_to_two() {
        let order = o(-20);
        let p2 = FractionalIdeal::primitive(order, 2, 1).unwrap();
        let two = FractionalIdeal::principal(order, &QuadNumber::int(2, 0)).unwrap();
        assert_eq!(p2.mul(&p2), two);
        assert_eq!(p2.mul(&FractionalIdeal::unit(order)), p2);
        assert!(p2.mul(&p2.inv()).is_unit_ideal());
        assert_eq!(two.to_string(), "2*ideal(1, 0)");
        assert_eq!(p2.inv().to_string(), "ideal(2, 1)/2");
    }

    #[test]
    fn membership() {
        let order = o(-20);
        let p2 = FractionalIdeal::primitive(order, 2, 1).unwrap();
        assert!(p2.contains(&QuadNumber::int(1, 1)));
        assert!(p2.contains(&QuadNumber::int(2, 0)));
        assert!(!p2.contains(&QuadNumber::int(1, 0)));
        assert!(!p2.contains(&QuadNumber::int(0, 1)));
        assert!(p2.is_integral());
        assert!(!p2.inv().is_integral());
    }

    #[test]
    fn principal_generators() {
        let order = o(-20);
        let two = FractionalIdeal::principal(order, &QuadNumber::int(2, 0)).unwrap();
        let g = two.generator().unwrap();
        assert_eq!(order.norm(&g), Rational::from_integer(4));
        assert_eq!(FractionalIdeal::principal(order, &g).unwrap(), two);
        let p2 = FractionalIdeal::primitive(order, 2, 1).unwrap();
        assert_eq!(p2.generator(), None);
        let g = p2.mul(&p2).generator().unwrap();
        assert_eq!(FractionalIdeal::principal(order, &g).unwrap(), two);
        let x = QuadNumber::int(3, -2);
        let px = FractionalIdeal::principal(order, &x).unwrap();
        let g = px.generator().unwrap();
        assert!(order.is_unit(&order.mul(&g, &order.inv(&x).unwrap())));
    }

    #[test]
    fn literals() {
        let order = o(-20);
        assert_eq!(parse_ideal(order, "ideal(2, 1)").unwrap(), FractionalIdeal::primitive(order, 2, 1).unwrap());
        let half = parse_ideal(order, "ideal(2,1)/2").unwrap();
        assert_eq!(half, FractionalIdeal::primitive(order, 2, 1).unwrap().inv());
        assert_eq!(parse_ideal(order, &half.to_string()).unwrap(), half);
        assert!(parse_ideal(order, "ideal(2, 0)").is_err());
        assert!(parse_ideal(order, "ideal(0, 0)").is_err());
        assert!(parse_ideal(order, "foo").is_err());
    }
}
