//! Prime ideals, valuations and principal generators in the localization
//! of a quadratic order at the primes above a finite set of rational primes.

use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::quadratic::{QuadNumber, QuadOrder};
use crate::ring::ConcreteRing;

/// The prime ideals of `order` above the rational prime `p`.
pub fn primes_above(order: QuadOrder, p: u64) -> Vec<FractionalIdeal> {
    let (t, n) = order.min_poly();
    let p = p as i128;
    let roots: Vec<i128> = (0..p).filter(|r| (r * r - t * r + n).rem_euclid(p) == 0).collect();
    if roots.is_empty() {
        // inert
        return vec![FractionalIdeal::principal(order, &QuadNumber::int(p, 0)).expect("p != 0")];
    }
    roots
        .iter()
        .map(|&r| {
            FractionalIdeal::from_generators(order, &[QuadNumber::int(p, 0), QuadNumber::int(-r, 1)])
                .expect("nonzero")
        })
        .collect()
}

/// `v_P(I)` for a nonzero fractional ideal `I` and a prime `P`.
pub fn valuation(ideal: &FractionalIdeal, prime: &FractionalIdeal) -> i64 {
    let order = ideal.order();
    let d = QuadNumber::int(ideal.denominator(), 0);
    let integral = ideal.mul(&FractionalIdeal::principal(order, &d).expect("nonzero"));
    let den_ideal = FractionalIdeal::principal(order, &d).expect("nonzero");
    integral_valuation(&integral, prime) - integral_valuation(&den_ideal, prime)
}

fn integral_valuation(ideal: &FractionalIdeal, prime: &FractionalIdeal) -> i64 {
    debug_assert!(ideal.is_integral());
    let mut k = 0;
    let mut power = prime.clone();
    while ideal.is_subset(&power) {
        k += 1;
        power = power.mul(prime);
    }
    k
}

/// The maximal ideals of the semilocal ring, as primes of the global order.
pub fn maximal_ideals(ring: &ConcreteRing) -> Result<Vec<FractionalIdeal>> {
    match ring {
        ConcreteRing::SemilocalQuadOrder { order, primes } => {
            Ok(primes.iter().flat_map(|&p| primes_above(*order, p)).collect())
        }
        _ => Err(Error::Unsupported(format!("{ring} is not a semilocal order"))),
    }
}

/// Valuations of `I` at each maximal ideal of the semilocal ring.
pub fn local_valuations(ring: &ConcreteRing, ideal: &FractionalIdeal) -> Result<Vec<i64>> {
    Ok(maximal_ideals(ring)?.iter().map(|p| valuation(ideal, p)).collect())
}

/// Equality of `I` and `J` after extension to the semilocal ring.
pub fn locally_equal(ring: &ConcreteRing, i: &FractionalIdeal, j: &FractionalIdeal) -> Result<bool> {
    Ok(local_valuations(ring, i)? == local_valuations(ring, j)?)
}

/// Result of the principalization: the generator `x` together with the
/// intermediate element `y` of `I^-1` with `Iy` equal to the whole ring.
#[derive(Debug, Clone)]
pub struct Principalization {
    pub generator: QuadNumber,
    pub y: QuadNumber,
}

/// A generator of `I` in the semilocal ring.
///
/// For each maximal ideal `M_k` pick `x_k` in `I` and `y_k` in `I^-1` with
/// `x_k y_k` outside `M_k`, and `a_k` in every other `M_i` but not in `M_k`.
/// Then `y = sum a_k y_k` satisfies `Iy = R`, so `I = R y^-1`.
pub fn principalize_semilocal(ring: &ConcreteRing, ideal: &FractionalIdeal) -> Result<Principalization> {
    let order = ring
        .order()
        .filter(|_| matches!(ring, ConcreteRing::SemilocalQuadOrder { .. }))
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not a semilocal order")))?;
    if ideal.order() != order {
        return Err(Error::BaseMismatch(format!("{ideal} is not an ideal of {order}")));
    }
    let maximal = maximal_ideals(ring)?;
    let inverse = ideal.inv();
    let mut y = QuadNumber::zero();
    for (k, m_k) in maximal.iter().enumerate() {
        let y_k = ideal
            .basis()
            .iter()
            .flat_map(|x| inverse.basis().map(|yy| (order.mul(x, &yy), yy)))
            .find(|(xy, _)| !m_k.contains(xy))
            .map(|(_, yy)| yy)
            .expect("I * I^-1 = O is not contained in a prime");
        let others = maximal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .fold(FractionalIdeal::unit(order), |acc, (_, m)| acc.mul(m));
        let [b1, b2] = others.basis();
        let a_k = [b1.clone(), b2.clone(), b1.add(&b2)]
            .into_iter()
            .find(|a| !m_k.contains(a))
            .expect("distinct maximal ideals are coprime");
        y = y.add(&order.mul(&a_k, &y_k));
    }
    let generator = order.inv(&y).ok_or(Error::ZeroIdeal)?;
    Ok(Principalization { generator, y })
}
