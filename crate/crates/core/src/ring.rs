//! The two supported ring families and their element arithmetic.
//!
//! A finite ring is kept as a product of local factors `Z/p^k`, sorted by
//! `(p, k)`, so `Z/12` and `Z/4 x Z/3` are the same value. Quadratic rings
//! are maximal imaginary quadratic orders, optionally localized at the
//! finitely many primes lying over a set of rational primes.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::quadratic::{QuadNumber, QuadOrder, Rational};

/// The local ring `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalFactor {
    pub prime: u64,
    pub exponent: u32,
}

impl LocalFactor {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if exponent == 0 {
            return Err(Error::Parse(format!("exponent of {prime} must be positive")));
        }
        Ok(LocalFactor { prime, exponent })
    }

    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    pub fn is_field(&self) -> bool {
        self.exponent == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConcreteRing {
    /// Product of local rings; the empty product is the zero ring.
    FiniteProduct(Vec<LocalFactor>),
    QuadOrder(QuadOrder),
    /// The order localized at the complement of the union of its primes
    /// above `primes`.
    SemilocalQuadOrder { order: QuadOrder, primes: BTreeSet<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Residues(Vec<u64>),
    Quadratic(QuadNumber),
}

impl ConcreteRing {
    pub fn finite(mut factors: Vec<LocalFactor>) -> Self {
        factors.sort();
        ConcreteRing::FiniteProduct(factors)
    }

    /// `Z/n` split into its local factors.
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parse(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(Self::finite(
            factorize(n)
                .into_iter()
                .map(|(prime, exponent)| LocalFactor { prime, exponent })
                .collect(),
        ))
    }

    pub fn zero_ring() -> Self {
        ConcreteRing::FiniteProduct(Vec::new())
    }

    pub fn quadratic(disc: i64) -> Result<Self> {
        Ok(ConcreteRing::QuadOrder(QuadOrder::new(disc)?))
    }

    pub fn semilocal(disc: i64, primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let order = QuadOrder::new(disc)?;
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(Error::Parse("localization needs at least one prime".into()));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(ConcreteRing::SemilocalQuadOrder { order, primes })
    }

    pub fn factors(&self) -> Option<&[LocalFactor]> {
        match self {
            ConcreteRing::FiniteProduct(f) => Some(f),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<QuadOrder> {
        match self {
            ConcreteRing::FiniteProduct(_) => None,
            ConcreteRing::QuadOrder(o) | ConcreteRing::SemilocalQuadOrder { order: o, .. } => {
                Some(*o)
            }
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        matches!(self, ConcreteRing::FiniteProduct(f) if f.is_empty())
    }

    /// Number of connected components of the spectrum.
    pub fn num_components(&self) -> usize {
        match self {
            ConcreteRing::FiniteProduct(f) => f.len(),
            _ => 1,
        }
    }

    /// Cardinality of a finite ring.
    pub fn size(&self) -> Option<u64> {
        self.factors()
            .map(|f| f.iter().map(LocalFactor::modulus).product())
    }

    /// True when the local factors have pairwise distinct primes, so the
    /// ring is `Z/n` for `n` the product of the moduli.
    pub fn is_cyclic(&self) -> bool {
        match self.factors() {
            Some(f) => f.windows(2).all(|w| w[0].prime != w[1].prime),
            None => false,
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            ConcreteRing::FiniteProduct(f) => RingElement::Residues(vec![0; f.len()]),
            _ => RingElement::Quadratic(QuadNumber::zero()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, n: i64) -> RingElement {
        match self {
            ConcreteRing::FiniteProduct(f) => RingElement::Residues(
                f.iter()
                    .map(|lf| n.rem_euclid(lf.modulus() as i64) as u64)
                    .collect(),
            ),
            _ => RingElement::Quadratic(QuadNumber::int(n as i128, 0)),
        }
    }

    pub fn residues(&self, residues: Vec<u64>) -> Result<RingElement> {
        let x = RingElement::Residues(residues);
        self.check(&x)?;
        Ok(x)
    }

    pub fn quad(&self, q: QuadNumber) -> Result<RingElement> {
        let x = RingElement::Quadratic(q);
        self.check(&x)?;
        Ok(x)
    }

    pub fn is_valid(&self, x: &RingElement) -> bool {
        match (self, x) {
            (ConcreteRing::FiniteProduct(f), RingElement::Residues(r)) => {
                f.len() == r.len() && f.iter().zip(r).all(|(lf, &v)| v < lf.modulus())
            }
            (ConcreteRing::QuadOrder(_), RingElement::Quadratic(q)) => q.is_integral(),
            // Membership in the localization only depends on the rational
            // primes dividing the coordinate denominators: an element z/d
            // with z integral lies in every local ring at primes over p iff
            // p^v_p(d) divides z.
            (ConcreteRing::SemilocalQuadOrder { primes, .. }, RingElement::Quadratic(q)) => {
                let den = q.denominator();
                primes.iter().all(|&p| den % p as i128 != 0)
            }
            _ => false,
        }
    }

    fn check(&self, x: &RingElement) -> Result<()> {
        if self.is_valid(x) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: self.render_element(x),
                ring: self.to_string(),
            })
        }
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (self, x, y) {
            (ConcreteRing::FiniteProduct(f), RingElement::Residues(a), RingElement::Residues(b)) => {
                RingElement::Residues(
                    f.iter()
                        .zip(a.iter().zip(b))
                        .map(|(lf, (&u, &v))| (u + v) % lf.modulus())
                        .collect(),
                )
            }
            (_, RingElement::Quadratic(a), RingElement::Quadratic(b)) => {
                RingElement::Quadratic(a.add(b))
            }
            _ => unreachable!("validated above"),
        })
    }

    pub fn neg(&self, x: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        Ok(match (self, x) {
            (ConcreteRing::FiniteProduct(f), RingElement::Residues(a)) => RingElement::Residues(
                f.iter()
                    .zip(a)
                    .map(|(lf, &u)| (lf.modulus() - u) % lf.modulus())
                    .collect(),
            ),
            (_, RingElement::Quadratic(a)) => RingElement::Quadratic(a.neg()),
            _ => unreachable!("validated above"),
        })
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.add(x, &self.neg(y)?)
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (self, x, y) {
            (ConcreteRing::FiniteProduct(f), RingElement::Residues(a), RingElement::Residues(b)) => {
                RingElement::Residues(
                    f.iter()
                        .zip(a.iter().zip(b))
                        .map(|(lf, (&u, &v))| {
                            ((u as u128 * v as u128) % lf.modulus() as u128) as u64
                        })
                        .collect(),
                )
            }
            (_, RingElement::Quadratic(a), RingElement::Quadratic(b)) => {
                let order = self.order().expect("quadratic ring");
                RingElement::Quadratic(order.mul(a, b))
            }
            _ => unreachable!("validated above"),
        })
    }

    pub fn is_idempotent(&self, e: &RingElement) -> bool {
        self.is_valid(e) && self.mul(e, e).ok().as_ref() == Some(e)
    }

    /// All solutions of `e^2 = e`.
    ///
    /// Over a finite product an idempotent is 0 or 1 in each local factor, so
    /// there are exactly `2^c` of them, listed by the bitmask of components
    /// where `e = 1`. A quadratic order is a domain: only 0 and 1.
    pub fn idempotents(&self) -> Vec<RingElement> {
        match self {
            ConcreteRing::FiniteProduct(f) => (0..1u64 << f.len())
                .map(|mask| {
                    RingElement::Residues((0..f.len()).map(|i| (mask >> i) & 1).collect())
                })
                .collect(),
            _ => vec![self.zero(), self.one()],
        }
    }

    /// Every element of a finite ring, in mixed-radix order.
    pub fn elements(&self) -> Option<Vec<RingElement>> {
        let f = self.factors()?;
        let mut out = vec![Vec::new()];
        for lf in f {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..lf.modulus()).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(RingElement::Residues).collect())
    }

    /// The integer in `[0, n)` represented by `x`, when the ring is `Z/n`.
    pub fn to_integer(&self, x: &RingElement) -> Option<u64> {
        if !self.is_cyclic() {
            return None;
        }
        let (f, RingElement::Residues(r)) = (self.factors()?, x) else {
            return None;
        };
        let mut acc: i128 = 0;
        let mut modulus: i128 = 1;
        for (lf, &v) in f.iter().zip(r) {
            let m = lf.modulus() as i128;
            // acc + modulus * k = v (mod m)
            let k = ((v as i128 - acc) * mod_inverse(modulus, m)?).rem_euclid(m);
            acc += modulus * k;
            modulus *= m;
        }
        Some(acc as u64)
    }

    pub fn render_element(&self, x: &RingElement) -> String {
        match x {
            RingElement::Residues(r) => match self.to_integer(x) {
                Some(n) if r.len() == 1 || self.is_cyclic() => n.to_string(),
                _ => format!(
                    "({})",
                    r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                ),
            },
            RingElement::Quadratic(q) => q.to_string(),
        }
    }

    /// Parses an element literal: an integer, a residue tuple `(a,b,...)`,
    /// or `x+yw` for quadratic rings.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse(format!("bad element literal `{text}`"));
        let x = match self {
            ConcreteRing::FiniteProduct(_) => {
                if let Some(inner) = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                    let r = inner
                        .split(',')
                        .map(|v| v.parse::<u64>().map_err(|_| err()))
                        .collect::<Result<Vec<_>>>()?;
                    RingElement::Residues(r)
                } else {
                    self.from_int(s.parse::<i64>().map_err(|_| err())?)
                }
            }
            _ => RingElement::Quadratic(parse_quad_number(&s).ok_or_else(err)?),
        };
        self.check(&x)?;
        Ok(x)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i128, i128) = (n.parse().ok()?, d.parse().ok()?);
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `x`, `yw`, `x+yw`, `x-yw`, `w`, `-w` with rational `x` and `y`.
pub(crate) fn parse_quad_number(s: &str) -> Option<QuadNumber> {
    let Some(body) = s.strip_suffix('w') else {
        return Some(QuadNumber::new(parse_rational(s)?, Rational::zero()));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (xs, ys) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let ys = ys.strip_prefix('+').unwrap_or(ys);
    let y = match ys {
        "" => Rational::from_integer(1),
        "-" => Rational::from_integer(-1),
        _ => parse_rational(ys)?,
    };
    Some(QuadNumber::new(parse_rational(xs)?, y))
}

/// Parses `Z/n`, `Z/n x Z/m x ...`, `O(D)` or `O(D) loc {p,q,...}`.
pub fn parse_ring(text: &str) -> Result<ConcreteRing> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse(format!("`{text}`: {msg}"));
    if s == "0" {
        return Ok(ConcreteRing::zero_ring());
    }
    if let Some(rest) = s.strip_prefix("O(") {
        let (disc, tail) = rest.split_once(')').ok_or_else(|| err("missing `)`"))?;
        let disc: i64 = disc.parse().map_err(|_| err("discriminant is not an integer"))?;
        if tail.is_empty() {
            return ConcreteRing::quadratic(disc);
        }
        let set = tail
            .strip_prefix("loc{")
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| err("expected `loc {p,...}`"))?;
        let primes = set
            .split(',')
            .map(|p| p.parse::<u64>().map_err(|_| err("bad prime in localization set")))
            .collect::<Result<Vec<_>>>()?;
        return ConcreteRing::semilocal(disc, primes);
    }
    let mut factors = Vec::new();
    for part in s.split('x') {
        let n = part
            .strip_prefix("Z/")
            .ok_or_else(|| err("expected `Z/n`"))?
            .parse::<u64>()
            .map_err(|_| err("modulus is not a positive integer"))?;
        match ConcreteRing::integers_mod(n)? {
            ConcreteRing::FiniteProduct(f) => factors.extend(f),
            _ => unreachable!(),
        }
    }
    Ok(ConcreteRing::finite(factors))
}

impl fmt::Display for ConcreteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcreteRing::FiniteProduct(fs) if fs.is_empty() => write!(f, "0"),
            ConcreteRing::FiniteProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|lf| format!("Z/{}", lf.modulus())).collect();
                write!(f, "{}", parts.join(" x "))
            }
            ConcreteRing::QuadOrder(o) => write!(f, "{o}"),
            ConcreteRing::SemilocalQuadOrder { order, primes } => {
                let ps: Vec<String> = primes.iter().map(u64::to_string).collect();
                write!(f, "{order} loc {{{}}}", ps.join(","))
            }
        }
    }
}

/// A unital ring map between finite products of local rings.
///
/// Such a map sends every target factor `Z/q^j` through exactly one source
/// factor `Z/q^k` with `j <= k` (the images of the primitive idempotents are
/// orthogonal idempotents of a local ring). `assignment[j]` is that source
/// factor. Quotients, projections, diagonals and CRT isomorphisms are all of
/// this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMorphism {
    source: ConcreteRing,
    target: ConcreteRing,
    assignment: Vec<usize>,
}

impl RingMorphism {
    pub fn new(source: ConcreteRing, target: ConcreteRing, assignment: Vec<usize>) -> Result<Self> {
        let (Some(sf), Some(tf)) = (source.factors(), target.factors()) else {
            return Err(Error::Morphism("only maps between finite rings are supported".into()));
        };
        if assignment.len() != tf.len() {
            return Err(Error::LengthMismatch { expected: tf.len(), got: assignment.len() });
        }
        for (j, &i) in assignment.iter().enumerate() {
            let s = sf
                .get(i)
                .ok_or_else(|| Error::Morphism(format!("source factor {i} does not exist")))?;
            let t = &tf[j];
            if s.prime != t.prime || t.exponent > s.exponent {
                return Err(Error::Morphism(format!(
                    "no ring map Z/{} -> Z/{}",
                    s.modulus(),
                    t.modulus()
                )));
            }
        }
        Ok(RingMorphism { source, target, assignment })
    }

    pub fn identity(ring: &ConcreteRing) -> Result<Self> {
        let n = ring.num_components();
        Self::new(ring.clone(), ring.clone(), (0..n).collect())
    }

    /// `R -> R/I` with `I` given per local factor by the modulus `q^j` of the
    /// quotient factor; `1` kills the factor.
    pub fn quotient(ring: &ConcreteRing, moduli: &[u64]) -> Result<Self> {
        let f = ring
            .factors()
            .ok_or_else(|| Error::Morphism("quotients need a finite ring".into()))?;
        if moduli.len() != f.len() {
            return Err(Error::LengthMismatch { expected: f.len(), got: moduli.len() });
        }
        let mut target = Vec::new();
        let mut assignment = Vec::new();
        for (i, (lf, &m)) in f.iter().zip(moduli).enumerate() {
            if m == 1 {
                continue;
            }
            let fac = factorize(m);
            if fac.len() != 1 || fac[0].0 != lf.prime || lf.modulus() % m != 0 {
                return Err(Error::Morphism(format!("{m} does not divide {}", lf.modulus())));
            }
            target.push(LocalFactor { prime: lf.prime, exponent: fac[0].1 });
            assignment.push(i);
        }
        // factors stay sorted because the source was sorted
        Self::new(ring.clone(), ConcreteRing::FiniteProduct(target), assignment)
    }

    /// `R -> R^copies`, `x -> (x, ..., x)`.
    pub fn diagonal(ring: &ConcreteRing, copies: usize) -> Result<Self> {
        let f = ring
            .factors()
            .ok_or_else(|| Error::Morphism("diagonals need a finite ring".into()))?;
        let mut pairs: Vec<(LocalFactor, usize)> = (0..copies)
            .flat_map(|_| f.iter().copied().enumerate().map(|(i, lf)| (lf, i)))
            .collect();
        pairs.sort();
        let (target, assignment): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Self::new(ring.clone(), ConcreteRing::FiniteProduct(target), assignment)
    }

    /// The CRT isomorphism between two presentations of the same ring.
    pub fn crt_iso(source: &ConcreteRing, target: &ConcreteRing) -> Result<Self> {
        if source != target {
            return Err(Error::Morphism(format!("{source} and {target} are not isomorphic")));
        }
        Self::identity(source)
    }

    /// Projection onto the listed local factors.
    pub fn projection(ring: &ConcreteRing, keep: &[usize]) -> Result<Self> {
        let f = ring
            .factors()
            .ok_or_else(|| Error::Morphism("projections need a finite ring".into()))?;
        let target: Vec<LocalFactor> = keep
            .iter()
            .map(|&i| f.get(i).copied().ok_or_else(|| Error::Morphism(format!("no factor {i}"))))
            .collect::<Result<_>>()?;
        if target.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Morphism("projection indices must follow factor order".into()));
        }
        Self::new(ring.clone(), ConcreteRing::FiniteProduct(target), keep.to_vec())
    }

    /// The unique assignment compatible with the factor primes, if there is
    /// exactly one.
    pub fn infer(source: &ConcreteRing, target: &ConcreteRing) -> Result<Self> {
        let (Some(sf), Some(tf)) = (source.factors(), target.factors()) else {
            return Err(Error::Morphism("only maps between finite rings are supported".into()));
        };
        let mut assignment = Vec::with_capacity(tf.len());
        for t in tf {
            let candidates: Vec<usize> = sf
                .iter()
                .enumerate()
                .filter(|(_, s)| s.prime == t.prime && s.exponent >= t.exponent)
                .map(|(i, _)| i)
                .collect();
            match candidates.as_slice() {
                [i] => assignment.push(*i),
                [] => {
                    return Err(Error::Morphism(format!(
                        "no source factor maps onto Z/{}",
                        t.modulus()
                    )))
                }
                _ => {
                    return Err(Error::Morphism(format!(
                        "ambiguous image for Z/{}; give an explicit assignment",
                        t.modulus()
                    )))
                }
            }
        }
        Self::new(source.clone(), target.clone(), assignment)
    }

    pub fn source(&self) -> &ConcreteRing {
        &self.source
    }

    pub fn target(&self) -> &ConcreteRing {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        if !self.source.is_valid(x) {
            return Err(Error::InvalidElement {
                element: self.source.render_element(x),
                ring: self.source.to_string(),
            });
        }
        let RingElement::Residues(r) = x else { unreachable!() };
        let tf = self.target.factors().expect("finite target");
        Ok(RingElement::Residues(
            self.assignment
                .iter()
                .zip(tf)
                .map(|(&i, lf)| r[i] % lf.modulus())
                .collect(),
        ))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingMorphism) -> Result<RingMorphism> {
        if self.target != next.source {
            return Err(Error::Morphism(format!(
                "cannot compose: {} != {}",
                self.target, next.source
            )));
        }
        let assignment = next.assignment.iter().map(|&j| self.assignment[j]).collect();
        Self::new(self.source.clone(), next.target.clone(), assignment)
    }

    /// Exhaustively checks additivity, multiplicativity and units. Returns
    /// the first failing pair.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let elems = self.source.elements().ok_or("infinite source")?;
        let (s, t) = (&self.source, &self.target);
        let im = |x: &RingElement| self.apply(x).map_err(|e| e.to_string());
        if im(&s.zero())? != t.zero() || im(&s.one())? != t.one() {
            return Err("0 or 1 not preserved".into());
        }
        let images: Vec<RingElement> = elems.iter().map(im).collect::<std::result::Result<_, _>>()?;
        for (x, fx) in elems.iter().zip(&images) {
            for (y, fy) in elems.iter().zip(&images) {
                let sum_ok = im(&s.add(x, y).unwrap())? == t.add(fx, fy).unwrap();
                let prod_ok = im(&s.mul(x, y).unwrap())? == t.mul(fx, fy).unwrap();
                if !sum_ok || !prod_ok {
                    return Err(format!(
                        "x = {}, y = {}",
                        s.render_element(x),
                        s.render_element(y)
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.assignment)
    }
}

/// Parses `kind: SRC -> TGT` where `kind` is one of `id`, `crt`, `quot`,
/// `proj`, `diag` (assignment inferred from the factor primes) or
/// `assign[i,j,...]` (explicit source factor per target factor).
pub fn parse_morphism(text: &str) -> Result<RingMorphism> {
    let err = |msg: &str| Error::Parse(format!("`{text}`: {msg}"));
    let (kind, maps) = text.split_once(':').ok_or_else(|| err("expected `kind: SRC -> TGT`"))?;
    let (src, tgt) = maps.split_once("->").ok_or_else(|| err("missing `->`"))?;
    let source = parse_ring(src)?;
    let target = parse_ring(tgt)?;
    let kind: String = kind.chars().filter(|c| !c.is_whitespace()).collect();
    match kind.as_str() {
        "id" | "crt" => RingMorphism::crt_iso(&source, &target),
        "quot" | "proj" | "diag" | "map" => {
            let f = RingMorphism::infer(&source, &target)?;
            if kind == "diag" && f.assignment.len() % source.num_components().max(1) != 0 {
                return Err(err("target is not a power of the source"));
            }
            Ok(f)
        }
        _ => {
            let inner = kind
                .strip_prefix("assign[")
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| err("unknown morphism kind"))?;
            let assignment = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|v| v.parse::<usize>().map_err(|_| err("bad index")))
                    .collect::<Result<Vec<_>>>()?
            };
            RingMorphism::new(source, target, assignment)
        }
    }
}
