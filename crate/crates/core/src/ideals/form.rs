//! Positive definite binary quadratic forms as ideal-class labels.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::quadratic::{QuadNumber, QuadOrder};

/// `ax^2 + bxy + cy^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// An ideal class, labelled by its reduced form.
pub type IdealClass = QuadForm;

thread_local! {
    static COMPOSE_CACHE: RefCell<HashMap<(QuadForm, QuadForm), QuadForm>> = RefCell::new(HashMap::new());
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        QuadForm { a, b, c }
    }

    /// Validated form literal for discriminant `disc`.
    pub fn checked(a: i128, b: i128, c: i128, disc: i64) -> Result<Self> {
        let f = QuadForm { a, b, c };
        if f.disc() != disc as i128 || a <= 0 || !f.is_primitive() {
            return Err(Error::Parse(format!(
                "{f} is not a primitive positive definite form of discriminant {disc}"
            )));
        }
        Ok(f)
    }

    /// `x^2 + txy + ny^2`, the norm form of the order.
    pub fn principal(order: QuadOrder) -> Self {
        let (t, n) = order.min_poly();
        QuadForm { a: 1, b: t, c: n }
    }

    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Gauss reduction; also returns the number of normalize/swap rounds.
    pub fn reduce_counting(&self) -> (QuadForm, u32) {
        let d = self.disc();
        let (mut a, mut b) = (self.a, self.b);
        let mut steps = 0;
        let c = loop {
            steps += 1;
            // translate b into (-a, a]
            let k = Integer::div_floor(&(a - b), &(2 * a));
            b += 2 * k * a;
            let c = (b * b - d) / (4 * a);
            if a > c {
                (a, b) = (c, -b);
            } else {
                break c;
            }
        };
        if a == c && b < 0 {
            b = -b;
        }
        (QuadForm { a, b, c }, steps)
    }

    pub fn reduce(&self) -> QuadForm {
        self.reduce_counting().0
    }

    /// The ideal `aZ + ((-b + sqrt(D))/2)Z`.
    pub fn to_ideal(&self, order: QuadOrder) -> FractionalIdeal {
        let t = order.trace_w();
        FractionalIdeal::primitive(order, self.a, (-self.b - t) / 2)
            .expect("form discriminant matches the order")
    }

    /// The form `N(xa + y(b + w)) / N(I)` up to orientation, for the primitive
    /// part of `I`. Inverse to [`QuadForm::to_ideal`].
    pub fn from_ideal(ideal: &FractionalIdeal) -> QuadForm {
        let order = ideal.order();
        let t = order.trace_w();
        let (a, b) = (ideal.a(), ideal.b());
        let nb = order.norm(&QuadNumber::int(b, 1)).to_integer();
        QuadForm { a, b: -(2 * b + t), c: nb / a }
    }

    fn order(&self) -> QuadOrder {
        QuadOrder::new_unchecked(self.disc() as i64)
    }

    /// Class composition through ideal multiplication.
    pub fn compose(&self, other: &QuadForm) -> QuadForm {
        if self.is_principal_form() {
            return other.reduce();
        }
        if other.is_principal_form() {
            return self.reduce();
        }
        let key = (self.reduce(), other.reduce());
        if let Some(f) = COMPOSE_CACHE.with(|c| c.borrow().get(&key).copied()) {
            return f;
        }
        let order = self.order();
        let f = QuadForm::from_ideal(&key.0.to_ideal(order).mul(&key.1.to_ideal(order))).reduce();
        COMPOSE_CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() > 1 << 16 {
                c.clear();
            }
            c.insert(key, f);
        });
        f
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm { b: -self.b, ..*self }.reduce()
    }

    pub fn identity(&self) -> QuadForm {
        QuadForm::principal(self.order())
    }

    /// `(1, b, c)` with `b` in `{0, 1}`, the reduced principal form.
    fn is_principal_form(&self) -> bool {
        self.a == 1 && (self.b == 0 || self.b == 1)
    }

    pub fn is_identity(&self) -> bool {
        self.reduce() == self.identity()
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> QuadForm {
        let base = if k < 0 { self.inverse() } else { self.reduce() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for QuadForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a as i64, self.b as i64, self.c as i64].serialize(s)
    }
}

/// Parses `form(a,b,c)`.
pub fn parse_form(text: &str) -> Result<QuadForm> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("bad form literal `{text}`"));
    let inner = s
        .strip_prefix("form(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(err)?;
    let v = inner
        .split(',')
        .map(|x| x.parse::<i128>().map_err(|_| err()))
        .collect::<Result<Vec<_>>>()?;
    match v.as_slice() {
        [a, b, c] => Ok(QuadForm::new(*a, *b, *c)),
        _ => Err(err()),
    }
}

/// Every reduced primitive form of discriminant `disc`, by increasing `a`;
/// the principal form comes first.
pub fn reduced_forms(disc: i64) -> Vec<QuadForm> {
    let d = disc as i128;
    let amax = crate::arith::isqrt((-d / 3) as u128) as i128;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in (-a + 1)..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, (b * b - d) / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        // (5, -2, c) of discriminant -4: c = (4 + 4)/20 is not integral, so
        // take the nearest valid form (5, -4, 1): 16 - 20 = -4
        assert_eq!(QuadForm::new(5, -4, 1).reduce(), QuadForm::new(1, 0, 1));
        assert_eq!(QuadForm::new(2, -2, 3).reduce(), QuadForm::new(2, 2, 3));
        assert_eq!(QuadForm::new(3, 2, 2).reduce(), QuadForm::new(2, -2, 3).reduce());
        assert!(QuadForm::new(2, 1, 3).is_reduced());
        assert!(!QuadForm::new(2, -2, 3).is_reduced());
    }

    #[test]
    fn reduction_preserves_discriminant_and_is_idempotent() {
        for d in [-3i64, -4, -20, -23, -47, -71, -84] {
            for f in reduced_forms(d) {
                for (p, q) in [(1i128, 0i128), (2, 1), (3, -5), (7, 4)] {
                    // act by a unimodular-ish translation and swap
                    let g = QuadForm::new(f.a, f.b + 2 * p * f.a, 0);
                    let g = QuadForm { c: (g.b * g.b - d as i128) / (4 * g.a), ..g };
                    let h = QuadForm::new(g.c, -g.b + 2 * q * g.c, 0);
                    let h = QuadForm { c: (h.b * h.b - d as i128) / (4 * h.a), ..h };
                    let r = h.reduce();
                    assert_eq!(r.disc(), d as i128);
                    assert!(r.is_reduced());
                    assert_eq!(r.reduce(), r);
                }
            }
        }
    }

    #[test]
    fn ideal_form_correspondence() {
        let order = QuadOrder::new(-20).unwrap();
        let unit = FractionalIdeal::unit(order);
        assert_eq!(QuadForm::from_ideal(&unit).reduce(), QuadForm::new(1, 0, 5));
        let p2 = FractionalIdeal::primitive(order, 2, 1).unwrap();
        assert_eq!(QuadForm::from_ideal(&p2).reduce(), QuadForm::new(2, 2, 3));
        for f in reduced_forms(-20) {
            assert_eq!(QuadForm::from_ideal(&f.to_ideal(order)).reduce(), f);
        }
    }

    #[test]
    fn composition_in_order_three() {
        let g = QuadForm::new(2, 1, 3);
        assert_eq!(g.compose(&g), QuadForm::new(2, -1, 3));
        assert!(g.pow(3).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.inverse(), QuadForm::new(2, -1, 3));
    }

    #[test]
    fn literal() {
        assert_eq!(parse_form(" form(2, 2, 3)").unwrap(), QuadForm::new(2, 2, 3));
        assert!(parse_form("form(1,2)").is_err());
        assert!(QuadForm::checked(2, 2, 3, -20).is_ok());
        assert!(QuadForm::checked(2, 2, 3, -23).is_err());
    }
}
