//! Grothendieck completion of commutative monoids and semirings.
//!
//! Two modes decide when `[p, q] = [p', q']`. Finite monoids search for a
//! witness `s` with `p + q' + s = p' + q + s`; cancellative monoids compare
//! `p + q'` and `p' + q` directly.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Deserialize;

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::ring::{ConcreteRing, RingElement};

pub trait CommMonoid {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Whether `a + c = b + c` implies `a = b`.
    fn is_cancellative(&self) -> bool;
    /// All elements, in a fixed order, when the monoid is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
}

pub trait CommSemiring: CommMonoid {
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// A formal difference `[p, q] = p - q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair<E> {
    pub p: E,
    pub q: E,
}

impl<E> Pair<E> {
    pub fn new(p: E, q: E) -> Self {
        Pair { p, q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Finite,
    Cancellative,
}

/// The Grothendieck group (ring, when `S` is a semiring) of `S`.
#[derive(Debug, Clone)]
pub struct Completion<'a, S: CommMonoid> {
    s: &'a S,
    mode: Mode,
    elements: Vec<S::Elem>,
}

impl<'a, S: CommMonoid> Completion<'a, S> {
    /// Cancellative monoids use direct equality; otherwise `S` must be finite.
    pub fn new(s: &'a S) -> Result<Self> {
        if s.is_cancellative() {
            return Ok(Completion { s, mode: Mode::Cancellative, elements: s.elements().unwrap_or_default() });
        }
        let elements = s
            .elements()
            .ok_or_else(|| Error::Unsupported("infinite monoid that is not cancellative".into()))?;
        Ok(Completion { s, mode: Mode::Finite, elements })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn monoid(&self) -> &S {
        self.s
    }

    /// `gamma(a) = [a, 0]`.
    pub fn gamma(&self, a: &S::Elem) -> Pair<S::Elem> {
        Pair::new(a.clone(), self.s.zero())
    }

    pub fn zero(&self) -> Pair<S::Elem> {
        self.gamma(&self.s.zero())
    }

    pub fn add(&self, x: &Pair<S::Elem>, y: &Pair<S::Elem>) -> Pair<S::Elem> {
        Pair::new(self.s.add(&x.p, &y.p), self.s.add(&x.q, &y.q))
    }

    pub fn neg(&self, x: &Pair<S::Elem>) -> Pair<S::Elem> {
        Pair::new(x.q.clone(), x.p.clone())
    }

    pub fn sub(&self, x: &Pair<S::Elem>, y: &Pair<S::Elem>) -> Pair<S::Elem> {
        self.add(x, &self.neg(y))
    }

    pub fn equivalent(&self, x: &Pair<S::Elem>, y: &Pair<S::Elem>) -> bool {
        let l = self.s.add(&x.p, &y.q);
        let r = self.s.add(&y.p, &x.q);
        match self.mode {
            Mode::Cancellative => l == r,
            Mode::Finite => self.elements.iter().any(|s| self.s.add(&l, s) == self.s.add(&r, s)),
        }
    }

    /// For finite `S`, the lexicographically least equivalent pair in the
    /// element order of `S`; otherwise the pair unchanged.
    pub fn normal_form(&self, x: &Pair<S::Elem>) -> Pair<S::Elem> {
        match self.elements.is_empty() {
            true => x.clone(),
            false => {
                for p in &self.elements {
                    for q in &self.elements {
                        let y = Pair::new(p.clone(), q.clone());
                        if self.equivalent(x, &y) {
                            return y;
                        }
                    }
                }
                unreachable!("x is equivalent to itself")
            }
        }
    }

    /// Distinct classes of a finite completion, as normal forms.
    pub fn classes(&self) -> Option<Vec<Pair<S::Elem>>> {
        if self.elements.is_empty() {
            return None;
        }
        let mut out: Vec<Pair<S::Elem>> = Vec::new();
        for p in &self.elements {
            for q in &self.elements {
                let n = self.normal_form(&Pair::new(p.clone(), q.clone()));
                if !out.contains(&n) {
                    out.push(n);
                }
            }
        }
        Some(out)
    }

    /// The additive group of a finite completion.
    pub fn group(&self) -> Option<(Vec<Pair<S::Elem>>, FiniteAbelianGroup)> {
        let classes = self.classes()?;
        let index = |x: &Pair<S::Elem>| classes.iter().position(|c| self.equivalent(c, x)).expect("closed");
        let table = classes
            .iter()
            .map(|a| classes.iter().map(|b| index(&self.add(a, b))).collect())
            .collect();
        let zero = index(&self.zero());
        let g = FiniteAbelianGroup::from_table(table, zero).expect("completion is a group");
        Some((classes, g))
    }
}

impl<S: CommSemiring> Completion<'_, S> {
    pub fn one(&self) -> Pair<S::Elem> {
        self.gamma(&self.s.one())
    }

    /// `[a, b][c, d] = [ac + bd, ad + bc]`.
    pub fn mul(&self, x: &Pair<S::Elem>, y: &Pair<S::Elem>) -> Pair<S::Elem> {
        let s = self.s;
        Pair::new(
            s.add(&s.mul(&x.p, &y.p), &s.mul(&x.q, &y.q)),
            s.add(&s.mul(&x.p, &y.q), &s.mul(&x.q, &y.p)),
        )
    }

    /// Whether the completion is the zero ring, i.e. `[1, 0] = [0, 0]`.
    pub fn is_zero_ring(&self) -> bool {
        self.equivalent(&self.one(), &self.zero())
    }
}

/// The Grothendieck ring of a semiring.
pub fn groth_ring<S: CommSemiring>(s: &S) -> Result<Completion<'_, S>> {
    Completion::new(s)
}

/// A finite commutative monoid or semiring given by tables of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    names: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Option<Vec<Vec<usize>>>,
    zero: usize,
    one: Option<usize>,
    cancellative: bool,
}

/// On-disk form of a finite monoid or semiring.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringFile {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    #[serde(default)]
    pub mul: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub cancellative: bool,
}

impl FiniteSemiring {
    /// Validates the tables; failures name the offending elements.
    pub fn new(
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Option<Vec<Vec<usize>>>,
        cancellative: bool,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Parse("a monoid needs at least one element".into()));
        }
        for (what, t) in std::iter::once(("add", &add)).chain(mul.as_ref().map(|m| ("mul", m))) {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("`{what}` must be a {n}x{n} table")));
            }
            if let Some(v) = t.iter().flatten().find(|&&v| v >= n) {
                return Err(Error::Parse(format!("`{what}` entry {v} is out of range")));
            }
        }
        let name = |i: usize| names[i].clone();
        let triple = |a: usize, b: usize, c: usize| format!("({}, {}, {})", name(a), name(b), name(c));
        check_commutative_monoid(&add, "+", &triple, &name)?;
        let zero = identity_of(&add).expect("checked");
        let mut one = None;
        if let Some(m) = &mul {
            check_commutative_monoid(m, "*", &triple, &name)?;
            one = identity_of(m);
            for a in 0..n {
                if m[a][zero] != zero {
                    return Err(Error::Axiom { law: "x * 0 = 0", witness: name(a) });
                }
                for b in 0..n {
                    for c in 0..n {
                        if m[a][add[b][c]] != add[m[a][b]][m[a][c]] {
                            return Err(Error::Axiom { law: "distributivity", witness: triple(a, b, c) });
                        }
                    }
                }
            }
        }
        if cancellative {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && add[a][c] == add[b][c] {
                            return Err(Error::Axiom { law: "cancellativity", witness: triple(a, b, c) });
                        }
                    }
                }
            }
        }
        Ok(FiniteSemiring { names, add, mul, zero, one, cancellative })
    }

    pub fn from_file(f: SemiringFile) -> Result<Self> {
        Self::new(f.elements, f.add, f.mul, f.cancellative)
    }

    /// Parses JSON, or TOML when `toml` is set.
    pub fn parse(text: &str, toml: bool) -> Result<Self> {
        let f: SemiringFile = if toml {
            ::toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
        };
        Self::from_file(f)
    }

    /// `(Z/m, +, *)`.
    pub fn integers_mod(m: usize) -> Self {
        let names = (0..m).map(|i| i.to_string()).collect();
        let add = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let mul = (0..m).map(|a| (0..m).map(|b| (a * b) % m).collect()).collect();
        Self::new(names, add, Some(mul), true).expect("Z/m is a ring")
    }

    /// `{0, 1}` with `1 + 1 = 1`.
    pub fn boolean() -> Self {
        Self::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            Some(vec![vec![0, 0], vec![0, 1]]),
            false,
        )
        .expect("Boolean semiring")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn has_mul(&self) -> bool {
        self.mul.is_some() && self.one.is_some()
    }
}

fn identity_of(t: &[Vec<usize>]) -> Option<usize> {
    (0..t.len()).find(|&e| (0..t.len()).all(|a| t[e][a] == a))
}

fn check_commutative_monoid(
    t: &[Vec<usize>],
    op: &'static str,
    triple: &dyn Fn(usize, usize, usize) -> String,
    name: &dyn Fn(usize) -> String,
) -> Result<()> {
    let n = t.len();
    let (comm, assoc, ident) = match op {
        "+" => ("commutativity of +", "associativity of +", "identity for +"),
        _ => ("commutativity of *", "associativity of *", "identity for *"),
    };
    for a in 0..n {
        for b in 0..n {
            if t[a][b] != t[b][a] {
                return Err(Error::Axiom { law: comm, witness: format!("({}, {})", name(a), name(b)) });
            }
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Err(Error::Axiom { law: assoc, witness: triple(a, b, c) });
                }
            }
        }
    }
    if identity_of(t).is_none() {
        return Err(Error::Axiom { law: ident, witness: "no element".into() });
    }
    Ok(())
}

impl CommMonoid for FiniteSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn is_cancellative(&self) -> bool {
        self.cancellative
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }
}

impl CommSemiring for FiniteSemiring {
    fn one(&self) -> usize {
        self.one.expect("semiring without multiplication")
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul.as_ref().expect("semiring without multiplication")[*a][*b]
    }
}

/// `(N, +, *)`, infinite and cancellative.
#[derive(Debug, Clone, Copy, Default)]
pub struct Naturals;

impl CommMonoid for Naturals {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }

    fn is_cancellative(&self) -> bool {
        true
    }

    fn elements(&self) -> Option<Vec<u64>> {
        None
    }
}

impl CommSemiring for Naturals {
    fn one(&self) -> u64 {
        1
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b
    }
}

/// A commutative ring with decidable equality, used as the target of the
/// universal property.
pub trait CommRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }

    fn one(&self) -> i128 {
        1
    }

    fn add(&self, a: &i128, b: &i128) -> i128 {
        a + b
    }

    fn neg(&self, a: &i128) -> i128 {
        -a
    }

    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a * b
    }
}

/// Finite products `Z/n`, including the zero ring.
impl CommRing for ConcreteRing {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        ConcreteRing::zero(self)
    }

    fn one(&self) -> RingElement {
        ConcreteRing::one(self)
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        ConcreteRing::add(self, a, b).expect("elements of this ring")
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        ConcreteRing::neg(self, a).expect("element of this ring")
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        ConcreteRing::mul(self, a, b).expect("elements of this ring")
    }
}

/// Checks that `phi` is a semiring morphism on `sample`; `sample` should be
/// all of `S` when `S` is finite.
pub fn check_semiring_morphism<S, T>(
    s: &S,
    target: &T,
    phi: &dyn Fn(&S::Elem) -> T::Elem,
    sample: &[S::Elem],
) -> Result<()>
where
    S: CommSemiring,
    T: CommRing,
{
    if phi(&s.zero()) != target.zero() {
        return Err(Error::Axiom { law: "phi(0) = 0", witness: format!("{:?}", phi(&s.zero())) });
    }
    if phi(&s.one()) != target.one() {
        return Err(Error::Axiom { law: "phi(1) = 1", witness: format!("{:?}", phi(&s.one())) });
    }
    for a in sample {
        for b in sample {
            if phi(&s.add(a, b)) != target.add(&phi(a), &phi(b)) {
                return Err(Error::Axiom { law: "phi(a + b) = phi(a) + phi(b)", witness: format!("({a:?}, {b:?})") });
            }
            if phi(&s.mul(a, b)) != target.mul(&phi(a), &phi(b)) {
                return Err(Error::Axiom { law: "phi(ab) = phi(a) phi(b)", witness: format!("({a:?}, {b:?})") });
            }
        }
    }
    Ok(())
}

/// The ring morphism `theta([a, b]) = phi(a) - phi(b)` with `theta . gamma = phi`.
///
/// Fails if `phi` is not a semiring morphism on `sample`, or if `theta`
/// does not restrict to `phi` there.
pub fn universal_extend<'a, S, T>(
    s: &'a S,
    target: &'a T,
    phi: &'a dyn Fn(&S::Elem) -> T::Elem,
    sample: &[S::Elem],
) -> Result<impl Fn(&Pair<S::Elem>) -> T::Elem + 'a>
where
    S: CommSemiring,
    T: CommRing,
{
    check_semiring_morphism(s, target, phi, sample)?;
    let theta = move |x: &Pair<S::Elem>| target.sub(&phi(&x.p), &phi(&x.q));
    for a in sample {
        let g = Pair::new(a.clone(), s.zero());
        if theta(&g) != phi(a) {
            return Err(Error::Axiom { law: "theta(gamma(a)) = phi(a)", witness: format!("{a:?}") });
        }
    }
    Ok(theta)
}

/// All semiring morphisms from a finite semiring into a finite ring, found
/// by backtracking. Refuses searches with more than `limit` leaves.
pub fn semiring_morphisms(
    s: &FiniteSemiring,
    target: &ConcreteRing,
    limit: u128,
) -> Result<Vec<Vec<RingElement>>> {
    if !s.has_mul() {
        return Err(Error::Unsupported("morphisms need a multiplication table".into()));
    }
    let elems = target
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{target} is not finite")))?;
    let n = s.len();
    if (elems.len() as u128).checked_pow(n as u32).is_none_or(|v| v > limit) {
        return Err(Error::Unsupported(format!("search space {}^{n} is too large", elems.len())));
    }
    let mut out = Vec::new();
    let mut current: Vec<Option<usize>> = vec![None; n];
    search(s, target, &elems, 0, &mut current, &mut out);
    Ok(out
        .into_iter()
        .map(|assign| assign.iter().map(|&i| elems[i].clone()).collect())
        .collect())
}

fn search(
    s: &FiniteSemiring,
    target: &ConcreteRing,
    elems: &[RingElement],
    k: usize,
    current: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    let consistent = |cur: &[Option<usize>]| {
        let v = |i: usize| cur[i].map(|j| &elems[j]);
        if v(s.zero).is_some_and(|z| *z != CommRing::zero(target))
            || v(CommSemiring::one(s)).is_some_and(|o| *o != CommRing::one(target))
        {
            return false;
        }
        for a in 0..s.len() {
            for b in 0..s.len() {
                if let (Some(x), Some(y)) = (v(a), v(b)) {
                    if v(CommMonoid::add(s, &a, &b)).is_some_and(|z| *z != CommRing::add(target, x, y))
                        || v(CommSemiring::mul(s, &a, &b)).is_some_and(|z| *z != CommRing::mul(target, x, y))
                    {
                        return false;
                    }
                }
            }
        }
        true
    };
    if k == s.len() {
        out.push(current.iter().map(|v| v.expect("assigned")).collect());
        return;
    }
    for j in 0..elems.len() {
        current[k] = Some(j);
        if consistent(current) {
            search(s, target, elems, k + 1, current, out);
        }
    }
    current[k] = None;
}

/// Order and invariant factors of the additive group of a finite completion,
/// together with each class rendered by element names.
pub fn describe_finite(s: &FiniteSemiring) -> Result<BTreeMap<&'static str, String>> {
    let c = Completion::new(s)?;
    let (classes, g) = c.group().expect("finite");
    let mut m = BTreeMap::new();
    m.insert("order", g.order().to_string());
    m.insert("structure", crate::abelian::describe(&g.invariant_factors()));
    m.insert(
        "classes",
        classes
            .iter()
            .map(|x| format!("[{}, {}]", s.name(x.p), s.name(x.q)))
            .collect::<Vec<_>>()
            .join(" "),
    );
    Ok(m)
}
