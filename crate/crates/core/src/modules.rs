//! Isomorphism classes of finitely generated projective modules.
//!
//! Over a finite product of local rings a projective module is free on each
//! factor, so it is classified by its rank vector. Over a maximal quadratic
//! order (a Dedekind domain) it is `O^(n-1) + I`, classified by the rank `n`
//! and the class of `I`.

use std::fmt;

use serde::Serialize;

use crate::abelian::FiniteAbelianGroup;
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::ideals::{class_group, QuadForm};
use crate::ring::{ConcreteRing, RingElement};
use crate::spectrum::{component_decomposition, idempotent_from_mask, support, H0Element};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjModule {
    Ranks(Vec<u64>),
    /// Rank and determinant class; rank 0 carries the trivial class.
    Steinitz { rank: u64, class: QuadForm },
}

impl ProjModule {
    /// `rank`, with the class reduced and forced trivial on the zero module.
    pub fn steinitz(rank: u64, class: QuadForm) -> Self {
        let class = if rank == 0 { class.identity() } else { class.reduce() };
        ProjModule::Steinitz { rank, class }
    }

    pub fn free(ring: &ConcreteRing, n: u64) -> Self {
        match ring {
            ConcreteRing::FiniteProduct(f) => ProjModule::Ranks(vec![n; f.len()]),
            _ => {
                let order = ring.order().expect("quadratic ring");
                ProjModule::steinitz(n, QuadForm::principal(order))
            }
        }
    }

    pub fn zero(ring: &ConcreteRing) -> Self {
        Self::free(ring, 0)
    }

    /// The module `Re` for an idempotent `e`.
    pub fn principal_summand(ring: &ConcreteRing, e: &RingElement) -> Result<Self> {
        if !ring.is_idempotent(e) {
            return Err(Error::NotIdempotent(ring.render_element(e)));
        }
        Ok(match ring {
            ConcreteRing::FiniteProduct(_) => {
                ProjModule::Ranks(support(ring, e).0.iter().map(|&v| v as u64).collect())
            }
            _ => Self::free(ring, u64::from(*e == ring.one())),
        })
    }

    /// Whether this is a module over `ring`.
    pub fn is_over(&self, ring: &ConcreteRing) -> bool {
        match (self, ring) {
            (ProjModule::Ranks(r), ConcreteRing::FiniteProduct(f)) => r.len() == f.len(),
            (ProjModule::Steinitz { class, .. }, ConcreteRing::QuadOrder(o)) => {
                class.disc() == o.disc() as i128
            }
            // the Picard group of a semilocal ring is trivial
            (ProjModule::Steinitz { class, .. }, ConcreteRing::SemilocalQuadOrder { order, .. }) => {
                class.disc() == order.disc() as i128 && class.is_identity()
            }
            _ => false,
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        let ok = match (self, other) {
            (ProjModule::Ranks(a), ProjModule::Ranks(b)) => a.len() == b.len(),
            (ProjModule::Steinitz { class: c1, .. }, ProjModule::Steinitz { class: c2, .. }) => {
                c1.disc() == c2.disc()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BaseMismatch(format!("{self} and {other}")))
        }
    }

    pub fn rank_map(&self) -> H0Element {
        match self {
            ProjModule::Ranks(r) => H0Element(r.iter().map(|&v| v as i64).collect()),
            ProjModule::Steinitz { rank, .. } => H0Element(vec![*rank as i64]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank_map().is_zero()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(match (self, other) {
            (ProjModule::Ranks(a), ProjModule::Ranks(b)) => {
                ProjModule::Ranks(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (
                ProjModule::Steinitz { rank: n1, class: c1 },
                ProjModule::Steinitz { rank: n2, class: c2 },
            ) => ProjModule::steinitz(n1 + n2, c1.compose(c2)),
            _ => unreachable!(),
        })
    }

    /// `det(M (x) N) = det(M)^rk(N) * det(N)^rk(M)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(match (self, other) {
            (ProjModule::Ranks(a), ProjModule::Ranks(b)) => {
                ProjModule::Ranks(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            (
                ProjModule::Steinitz { rank: n1, class: c1 },
                ProjModule::Steinitz { rank: n2, class: c2 },
            ) => {
                let class = c1.pow(*n2 as i64).compose(&c2.pow(*n1 as i64));
                ProjModule::steinitz(n1 * n2, class)
            }
            _ => unreachable!(),
        })
    }

    pub fn dual(&self) -> Self {
        match self {
            ProjModule::Ranks(r) => ProjModule::Ranks(r.clone()),
            ProjModule::Steinitz { rank, class } => ProjModule::steinitz(*rank, class.inverse()),
        }
    }

    /// `End(M) = M (x) M*`.
    pub fn end_module(&self) -> Self {
        self.tensor(&self.dual()).expect("same base")
    }

    /// `k`-th exterior power. Over a quadratic order only `k = 0`, `k = 1`,
    /// the top power and `k > rank` are available.
    pub fn exterior_power(&self, k: u64) -> Result<Self> {
        match self {
            ProjModule::Ranks(r) => Ok(ProjModule::Ranks(r.iter().map(|&n| binomial(n, k)).collect())),
            ProjModule::Steinitz { rank, class } => {
                let n = *rank;
                if k == 0 {
                    Ok(ProjModule::steinitz(1, class.identity()))
                } else if k > n {
                    Ok(ProjModule::steinitz(0, *class))
                } else if k == n {
                    Ok(ProjModule::steinitz(1, *class))
                } else if k == 1 {
                    Ok(self.clone())
                } else {
                    Err(Error::Unsupported(format!(
                        "exterior power {k} of a rank {n} module over a quadratic order"
                    )))
                }
            }
        }
    }

    /// Constant rank 1 iff `M (x) M*` is the class of the ring.
    pub fn is_invertible(&self) -> bool {
        let end = self.end_module();
        match &end {
            ProjModule::Ranks(r) => r.iter().all(|&v| v == 1),
            ProjModule::Steinitz { rank, class } => *rank == 1 && class.is_identity(),
        }
    }
}

impl fmt::Display for ProjModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjModule::Ranks(r) => {
                let parts: Vec<String> = r.iter().map(u64::to_string).collect();
                write!(f, "ranks({})", parts.join(","))
            }
            ProjModule::Steinitz { rank, class } => write!(f, "steinitz({rank}; {class})"),
        }
    }
}

impl Serialize for ProjModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `ranks(2,0,1)` or `steinitz(3; form(a,b,c))` and checks that the
/// module lives over `ring`.
pub fn parse_module(ring: &ConcreteRing, text: &str) -> Result<ProjModule> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("bad module literal `{text}`"));
    let m = if let Some(inner) = s.strip_prefix("ranks(").and_then(|s| s.strip_suffix(')')) {
        let r = inner
            .split(',')
            .map(|v| v.parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        ProjModule::Ranks(r)
    } else if let Some(inner) = s.strip_prefix("steinitz(").and_then(|s| s.strip_suffix(')')) {
        let (n, form) = inner.split_once(';').ok_or_else(err)?;
        let n: u64 = n.parse().map_err(|_| err())?;
        let form = crate::ideals::parse_form(form)?;
        let disc = ring.order().map(|o| o.disc()).ok_or_else(err)?;
        ProjModule::steinitz(n, QuadForm::checked(form.a, form.b, form.c, disc)?)
    } else {
        return Err(err());
    };
    if !m.is_over(ring) {
        return Err(Error::BaseMismatch(format!("{m} is not a projective module over {ring}")));
    }
    Ok(m)
}

/// The idempotent `e` with `tr(M) = Re`; `Ann(M) = R(1 - e)`.
pub fn trace_ideal(ring: &ConcreteRing, m: &ProjModule) -> Result<RingElement> {
    match (ring, m) {
        (ConcreteRing::FiniteProduct(_), ProjModule::Ranks(r)) if m.is_over(ring) => {
            let mask: Vec<bool> = r.iter().map(|&v| v > 0).collect();
            Ok(idempotent_from_mask(ring, &mask))
        }
        (ConcreteRing::FiniteProduct(_), _) => Err(Error::BaseMismatch(format!("{m} over {ring}"))),
        _ => Err(Error::Unsupported(format!("trace ideals over {ring}"))),
    }
}

/// Idempotents `e_0, ..., e_n` with `D(e_k)` the locus where `M` has rank
/// `k`, plus the annihilator idempotents of `Lambda^k(M)` for
/// `k = 0..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalDecomposition {
    pub idems: Vec<RingElement>,
    pub annihilators: Vec<RingElement>,
}

pub fn orthogonal_decomposition(ring: &ConcreteRing, m: &ProjModule) -> Result<OrthogonalDecomposition> {
    let ProjModule::Ranks(r) = m else {
        return Err(Error::Unsupported(format!("orthogonal decomposition over {ring}")));
    };
    if ring.factors().is_none() || !m.is_over(ring) {
        return Err(Error::BaseMismatch(format!("{m} over {ring}")));
    }
    let n = r.iter().copied().max().unwrap_or(0);
    let comps = component_decomposition(ring).components;
    let idems = (0..=n)
        .map(|k| {
            comps
                .iter()
                .zip(r)
                .filter(|(_, &rank)| rank == k)
                .fold(ring.zero(), |acc, (e, _)| ring.add(&acc, e).expect("valid"))
        })
        .collect();
    let annihilators = (0..=n + 1)
        .map(|k| {
            let tr = trace_ideal(ring, &m.exterior_power(k)?)?;
            ring.sub(&ring.one(), &tr)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrthogonalDecomposition { idems, annihilators })
}

impl OrthogonalDecomposition {
    /// Checks `sum e_k = 1`, orthogonality, and `Ann(Lambda^k M) = R(e_0 + ... + e_{k-1})`
    /// with the chain ascending from 0 to 1.
    pub fn check(&self, ring: &ConcreteRing) -> std::result::Result<(), String> {
        let sum = self.idems.iter().fold(ring.zero(), |acc, e| ring.add(&acc, e).unwrap());
        if sum != ring.one() {
            return Err(format!("sum of e_k is {}", ring.render_element(&sum)));
        }
        for (i, a) in self.idems.iter().enumerate() {
            for (j, b) in self.idems.iter().enumerate().skip(i + 1) {
                if ring.mul(a, b).unwrap() != ring.zero() {
                    return Err(format!("e_{i} e_{j} != 0"));
                }
            }
        }
        let mut partial = ring.zero();
        for (k, ann) in self.annihilators.iter().enumerate() {
            if *ann != partial {
                return Err(format!(
                    "Ann(Lambda^{k}) = {} but e_0 + ... + e_{} = {}",
                    ring.render_element(ann),
                    k as i64 - 1,
                    ring.render_element(&partial)
                ));
            }
            if k > 0 {
                // ascending: I_{k-1} = I_{k-1} * I_k
                let prev = &self.annihilators[k - 1];
                if ring.mul(prev, ann).unwrap() != *prev {
                    return Err(format!("I_{} is not contained in I_{k}", k - 1));
                }
            }
            if let Some(e) = self.idems.get(k) {
                partial = ring.add(&partial, e).unwrap();
            }
        }
        let last = self.annihilators.last().expect("nonempty chain");
        if self.annihilators[0] != ring.zero() || *last != ring.one() {
            return Err("chain does not run from 0 to R".into());
        }
        Ok(())
    }
}

/// `Pic(R)` as the group of invertible modules under tensor product.
#[derive(Debug, Clone)]
pub struct PicardGroup {
    pub elements: Vec<ProjModule>,
    pub group: FiniteAbelianGroup,
}

impl PicardGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.group.invariant_factors()
    }

    pub fn index_of(&self, m: &ProjModule) -> Option<usize> {
        self.elements.iter().position(|x| x == m)
    }
}

/// Finite rings and semilocal orders are semilocal, so their Picard group
/// is trivial; for a maximal order it is the class group.
pub fn pic_group(ring: &ConcreteRing) -> Result<PicardGroup> {
    let elements: Vec<ProjModule> = match ring {
        ConcreteRing::QuadOrder(o) => class_group(o.disc())?
            .forms()
            .iter()
            .map(|f| ProjModule::steinitz(1, *f))
            .collect(),
        _ => vec![ProjModule::free(ring, 1)],
    };
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let t = a.tensor(b).expect("same base");
                    elements.iter().position(|x| *x == t).expect("closed under tensor")
                })
                .collect()
        })
        .collect();
    let group = FiniteAbelianGroup::from_table(table, 0).map_err(|e| Error::Axiom {
        law: "Picard group",
        witness: e,
    })?;
    Ok(PicardGroup { elements, group })
}
