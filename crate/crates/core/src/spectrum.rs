//! Connected components of `Spec(R)` and the ring `H0(R)` of locally
//! constant integer-valued functions on it.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{ConcreteRing, RingElement};

/// Primitive idempotents `e_1, ..., e_c`, pairwise orthogonal, summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<RingElement>,
}

/// A function `Spec(R) -> Z`, one value per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct H0Element(pub Vec<i64>);

impl H0Element {
    pub fn constant(c: usize, n: i64) -> Self {
        H0Element(vec![n; c])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&v| v == 1 || v == -1)
    }

    fn zip(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(H0Element(self.0.iter().zip(&other.0).map(|(&a, &b)| op(a, b)).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        H0Element(self.0.iter().map(|v| -v).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for H0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Primitive idempotents in local-factor order. A quadratic order is a
/// domain, so its spectrum is connected.
pub fn component_decomposition(ring: &ConcreteRing) -> ComponentDecomposition {
    let components = match ring {
        ConcreteRing::FiniteProduct(f) => (0..f.len())
            .map(|i| RingElement::Residues((0..f.len()).map(|j| u64::from(i == j)).collect()))
            .collect(),
        _ => vec![ring.one()],
    };
    ComponentDecomposition { components }
}

/// Whether `e` is nonzero on component `i`, i.e. `e * e_i != 0`.
pub fn is_nonzero_on(ring: &ConcreteRing, e: &RingElement, i: usize) -> bool {
    let d = component_decomposition(ring);
    ring.mul(e, &d.components[i]).map(|p| p != ring.zero()).unwrap_or(false)
}

/// The indicator of `D(e)`: 1 where `e` does not vanish, 0 elsewhere.
pub fn support(ring: &ConcreteRing, e: &RingElement) -> H0Element {
    H0Element(
        (0..ring.num_components())
            .map(|i| i64::from(is_nonzero_on(ring, e, i)))
            .collect(),
    )
}

/// The unique idempotent equal to 1 exactly on the components where
/// `mask[i]` holds.
pub fn idempotent_from_mask(ring: &ConcreteRing, mask: &[bool]) -> RingElement {
    match ring {
        ConcreteRing::FiniteProduct(_) => {
            RingElement::Residues(mask.iter().map(|&b| u64::from(b)).collect())
        }
        _ => {
            if mask.first().copied().unwrap_or(false) {
                ring.one()
            } else {
                ring.zero()
            }
        }
    }
}

pub fn h0_units(ring: &ConcreteRing) -> Vec<H0Element> {
    let c = ring.num_components();
    (0..1u64 << c)
        .map(|mask| H0Element((0..c).map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 }).collect()))
        .collect()
}

/// `phi_e(p) = 1` if `e` lies in `p`, `-1` otherwise.
pub fn phi_e(ring: &ConcreteRing, e: &RingElement) -> Result<H0Element> {
    if !ring.is_idempotent(e) {
        return Err(Error::NotIdempotent(ring.render_element(e)));
    }
    Ok(H0Element(
        (0..ring.num_components())
            .map(|i| if is_nonzero_on(ring, e, i) { -1 } else { 1 })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    #[test]
    fn decomposition_of_z12() {
        let r = parse_ring("Z/12").unwrap();
        let d = component_decomposition(&r);
        let ints: Vec<u64> = d.components.iter().map(|e| r.to_integer(e).unwrap()).collect();
        assert_eq!(ints, vec![9, 4]);
        let sum = d.components.iter().fold(r.zero(), |acc, e| r.add(&acc, e).unwrap());
        assert_eq!(sum, r.one());
        assert_eq!(r.mul(&d.components[0], &d.components[1]).unwrap(), r.zero());
        let q = parse_ring("O(-20)").unwrap();
        assert_eq!(component_decomposition(&q).components, vec![q.one()]);
    }

    #[test]
    fn primitive_components_do_not_split() {
        // brute force: no component is a sum of two nonzero orthogonal idempotents
        let r = parse_ring("Z/30").unwrap();
        let idem = r.idempotents();
        for e in component_decomposition(&r).components {
            for a in &idem {
                for b in &idem {
                    let split = *a != r.zero()
                        && *b != r.zero()
                        && r.mul(a, b).unwrap() == r.zero()
                        && r.add(a, b).unwrap() == e;
                    assert!(!split);
                }
            }
        }
    }

    #[test]
    fn h0_arithmetic() {
        let f = H0Element(vec![2, -1]);
        let g = H0Element(vec![1, 1]);
        assert_eq!(f.add(&g).unwrap(), H0Element(vec![3, 0]));
        assert_eq!(f.mul(&g).unwrap(), H0Element(vec![2, -1]));
        assert_eq!(H0Element(vec![0, 5]).neg(), H0Element(vec![0, -5]));
        assert!(f.add(&H0Element(vec![1])).is_err());
    }

    #[test]
    fn unit_counts() {
        assert_eq!(h0_units(&parse_ring("Z/12").unwrap()).len(), 4);
        assert_eq!(h0_units(&parse_ring("O(-20)").unwrap()).len(), 2);
        assert_eq!(h0_units(&parse_ring("Z/30").unwrap()).len(), 8);
    }

    #[test]
    fn phi_values() {
        let r = parse_ring("Z/12").unwrap();
        assert_eq!(phi_e(&r, &r.from_int(0)).unwrap(), H0Element(vec![1, 1]));
        assert_eq!(phi_e(&r, &r.from_int(9)).unwrap(), H0Element(vec![-1, 1]));
        assert_eq!(phi_e(&r, &r.from_int(1)).unwrap(), H0Element(vec![-1, -1]));
        assert!(phi_e(&r, &r.from_int(2)).is_err());
        for e in r.idempotents() {
            let c = r.sub(&r.one(), &e).unwrap();
            assert_eq!(phi_e(&r, &e).unwrap(), phi_e(&r, &c).unwrap().neg());
        }
    }

    #[test]
    fn integers_embed_in_h0() {
        let c = 3;
        for n in -10..=10i64 {
            for m in -10..=10i64 {
                assert_eq!(H0Element::constant(c, n) == H0Element::constant(c, m), n == m);
            }
        }
    }
}
