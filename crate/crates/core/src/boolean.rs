//! The Boolean ring `B(R)` of idempotents with `e (+) f = e + f - 2ef`.

use crate::error::{Error, Result};
use crate::ring::{ConcreteRing, RingElement};
use crate::spectrum::{h0_units, phi_e, support, H0Element};

#[derive(Debug, Clone)]
pub struct BooleanRing {
    pub ring: ConcreteRing,
    pub elements: Vec<RingElement>,
    /// `add[i][j]` is the index of `elements[i] (+) elements[j]`.
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// `e + f - 2ef`.
pub fn boolean_sum(ring: &ConcreteRing, e: &RingElement, f: &RingElement) -> Result<RingElement> {
    let ef = ring.mul(e, f)?;
    let two_ef = ring.add(&ef, &ef)?;
    ring.sub(&ring.add(e, f)?, &two_ef)
}

pub fn boolean_ring_of(ring: &ConcreteRing) -> BooleanRing {
    let elements = ring.idempotents();
    let index = |x: &RingElement| {
        elements
            .iter()
            .position(|e| e == x)
            .expect("idempotents are closed under the Boolean operations")
    };
    let table = |op: &dyn Fn(&RingElement, &RingElement) -> RingElement| -> Vec<Vec<usize>> {
        elements
            .iter()
            .map(|e| elements.iter().map(|f| index(&op(e, f))).collect())
            .collect()
    };
    let add = table(&|e, f| boolean_sum(ring, e, f).expect("valid idempotents"));
    let mul = table(&|e, f| ring.mul(e, f).expect("valid idempotents"));
    BooleanRing { ring: ring.clone(), elements, add, mul }
}

impl BooleanRing {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &RingElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn zero_index(&self) -> usize {
        self.index_of(&self.ring.zero()).expect("0 is idempotent")
    }

    /// Checks the Boolean ring axioms on the tables; returns a witness on
    /// failure.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.len();
        let z = self.zero_index();
        for a in 0..n {
            if self.add[a][z] != a || self.add[a][a] != z || self.mul[a][a] != a {
                return Err(format!("identity, involution or idempotence at {a}"));
            }
            for b in 0..n {
                if self.add[a][b] != self.add[b][a] || self.mul[a][b] != self.mul[b][a] {
                    return Err(format!("commutativity at ({a},{b})"));
                }
                for c in 0..n {
                    let assoc = self.add[self.add[a][b]][c] == self.add[a][self.add[b][c]]
                        && self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]];
                    let distrib = self.mul[a][self.add[b][c]]
                        == self.add[self.mul[a][b]][self.mul[a][c]];
                    if !assoc || !distrib {
                        return Err(format!("associativity/distributivity at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The map `e -> phi_e` from `B(R)` to `H0(R)*` with its verified inverse.
#[derive(Debug, Clone)]
pub struct BooleanUnitIso {
    pub pairs: Vec<(RingElement, H0Element)>,
}

impl BooleanUnitIso {
    pub fn forward(&self, e: &RingElement) -> Option<&H0Element> {
        self.pairs.iter().find(|(x, _)| x == e).map(|(_, u)| u)
    }

    pub fn inverse(&self, u: &H0Element) -> Option<&RingElement> {
        self.pairs.iter().find(|(_, v)| v == u).map(|(e, _)| e)
    }
}

/// Builds `e -> phi_e` and verifies it is a bijection onto the units of
/// `H0(R)` carrying `(+)` to pointwise multiplication. A failure here is an
/// implementation bug, hence the panics.
pub fn b_iso_h0units(ring: &ConcreteRing) -> BooleanUnitIso {
    let b = boolean_ring_of(ring);
    let pairs: Vec<(RingElement, H0Element)> = b
        .elements
        .iter()
        .map(|e| (e.clone(), phi_e(ring, e).expect("idempotent")))
        .collect();
    let mut images: Vec<&H0Element> = pairs.iter().map(|(_, u)| u).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), pairs.len(), "phi is not injective on {ring}");
    let mut units = h0_units(ring);
    units.sort();
    assert_eq!(images.into_iter().cloned().collect::<Vec<_>>(), units, "phi is not onto H0*");
    for (i, (_, ui)) in pairs.iter().enumerate() {
        for (j, (_, uj)) in pairs.iter().enumerate() {
            let sum = &pairs[b.add[i][j]].1;
            assert_eq!(*sum, ui.mul(uj).unwrap(), "phi is not additive on {ring}");
        }
    }
    BooleanUnitIso { pairs }
}

/// Rank vectors of both sides of
/// `Re + Re' = Re/Re(1-e') + Re'/Re'(1-e) + R(e + e' - 2ee')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentFormulaReport {
    pub lhs: H0Element,
    pub rhs: H0Element,
    /// `[Re/Re(1-e'), Re'/Re'(1-e), R(e (+) e')]`
    pub rhs_terms: [H0Element; 3],
}

impl IdempotentFormulaReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Over a product of local rings a projective module is determined by its
/// rank vector, so comparing ranks decides the isomorphism. `Re/Re(1-e')`
/// is `R(ee')`, free of rank 1 exactly where both `e` and `e'` are nonzero.
pub fn idempotent_formula_check(
    ring: &ConcreteRing,
    e: &RingElement,
    e2: &RingElement,
) -> Result<IdempotentFormulaReport> {
    if ring.factors().is_none() {
        return Err(Error::Unsupported("the formula check runs over finite products".into()));
    }
    for x in [e, e2] {
        if !ring.is_idempotent(x) {
            return Err(Error::NotIdempotent(ring.render_element(x)));
        }
    }
    let lhs = support(ring, e).add(&support(ring, e2))?;
    let quotient = |a: &RingElement, b: &RingElement| -> Result<H0Element> {
        // Ra / Ra(1-b) = R(a - a(1-b))
        let one_minus_b = ring.sub(&ring.one(), b)?;
        let kernel = ring.mul(a, &one_minus_b)?;
        Ok(support(ring, &ring.sub(a, &kernel)?))
    };
    let t1 = quotient(e, e2)?;
    let t2 = quotient(e2, e)?;
    let t3 = support(ring, &boolean_sum(ring, e, e2)?);
    let rhs = t1.add(&t2)?.add(&t3)?;
    Ok(IdempotentFormulaReport { lhs, rhs, rhs_terms: [t1, t2, t3] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    #[test]
    fn z12_boolean_sum() {
        let r = parse_ring("Z/12").unwrap();
        let s = boolean_sum(&r, &r.from_int(4), &r.from_int(9)).unwrap();
        assert_eq!(s, r.from_int(1));
        for e in r.idempotents() {
            assert_eq!(boolean_sum(&r, &e, &e).unwrap(), r.zero());
            assert_eq!(boolean_sum(&r, &e, &r.zero()).unwrap(), e);
        }
    }

    #[test]
    fn axioms_hold() {
        for name in ["Z/12", "Z/30", "Z/2310", "Z/8 x Z/2", "O(-20)", "Z/2"] {
            let b = boolean_ring_of(&parse_ring(name).unwrap());
            assert_eq!(b.check_axioms(), Ok(()), "{name}");
        }
    }

    #[test]
    fn iso_to_h0_units() {
        let r = parse_ring("Z/12").unwrap();
        assert_eq!(b_iso_h0units(&r).pairs.len(), 4);
        for name in ["O(-20)", "Z/2"] {
            let r = parse_ring(name).unwrap();
            let iso = b_iso_h0units(&r);
            assert_eq!(iso.forward(&r.zero()), Some(&H0Element(vec![1])));
            assert_eq!(iso.forward(&r.one()), Some(&H0Element(vec![-1])));
            assert_eq!(iso.inverse(&H0Element(vec![-1])), Some(&r.one()));
        }
    }

    #[test]
    fn one_minus_two_e_squares_to_one() {
        let r = parse_ring("Z/360").unwrap();
        for e in r.idempotents() {
            let u = r.sub(&r.one(), &r.add(&e, &e).unwrap()).unwrap();
            assert_eq!(r.mul(&u, &u).unwrap(), r.one());
        }
    }

    #[test]
    fn formula_examples() {
        let r = parse_ring("Z/12").unwrap();
        let rep = idempotent_formula_check(&r, &r.from_int(9), &r.from_int(4)).unwrap();
        assert_eq!(rep.lhs, H0Element(vec![1, 1]));
        assert_eq!(rep.rhs_terms[0], H0Element(vec![0, 0]));
        assert_eq!(rep.rhs_terms[1], H0Element(vec![0, 0]));
        assert_eq!(rep.rhs_terms[2], H0Element(vec![1, 1]));
        for e in r.idempotents() {
            let same = idempotent_formula_check(&r, &e, &e).unwrap();
            let two = support(&r, &e).add(&support(&r, &e)).unwrap();
            assert_eq!((same.lhs.clone(), same.rhs.clone()), (two.clone(), two));
            let with_one = idempotent_formula_check(&r, &e, &r.one()).unwrap();
            assert!(with_one.holds());
        }
        assert!(idempotent_formula_check(&r, &r.from_int(2), &r.one()).is_err());
        let q = parse_ring("O(-20)").unwrap();
        assert!(idempotent_formula_check(&q, &q.one(), &q.one()).is_err());
    }
}
