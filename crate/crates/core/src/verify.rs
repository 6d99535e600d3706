//! Property suites run by `verify`, one per structural result.

use serde::Serialize;

use crate::boolean::{boolean_ring_of, idempotent_formula_check};
use crate::error::{Error, Result};
use crate::grothendieck::k0::{b_of_k0_check, char_zero_check, k0_of_ring, k0red_check, maps_fgh};
use crate::grothendieck::lifting::{functoriality_check, k0_surjectivity_check, lifts_idempotents};
use crate::ideals::{class_group, locally_equal, maximal_ideals, principalize_semilocal, FractionalIdeal};
use crate::modules::{orthogonal_decomposition, pic_group, ProjModule};
use crate::report::Check;
use crate::ring::{ConcreteRing, RingMorphism};
use crate::spectrum::{h0_units, phi_e};

pub const SUITE_IDS: [&str; 10] = [
    "b-h0-units",
    "idem-formula",
    "proj-decomp",
    "cl-pic-exact",
    "principalize",
    "k0red-h0",
    "b-k0",
    "units-split",
    "lift",
    "char-zero",
];

/// What a suite runs on.
#[derive(Debug, Clone)]
pub enum Subject {
    Ring(ConcreteRing),
    Morphism(RingMorphism),
}

impl Subject {
    fn ring(&self, id: &str) -> Result<&ConcreteRing> {
        match self {
            Subject::Ring(r) => Ok(r),
            Subject::Morphism(_) => Err(Error::Unsupported(format!("{id} runs on a ring, not a morphism"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub id: String,
    /// Set when the pairing of suite and subject is not supported.
    pub skipped: Option<String>,
    pub checks: Vec<Check>,
}

/// Runs one suite; `all` runs every suite and skips unsupported pairings.
pub fn verify(id: &str, subject: &Subject) -> Result<Vec<SuiteResult>> {
    if id == "all" {
        return Ok(SUITE_IDS
            .iter()
            .map(|&id| match run(id, subject) {
                Ok(checks) => SuiteResult { id: id.into(), skipped: None, checks },
                Err(e) => SuiteResult { id: id.into(), skipped: Some(e.to_string()), checks: Vec::new() },
            })
            .collect());
    }
    if !SUITE_IDS.contains(&id) {
        return Err(Error::Parse(format!("unknown suite id `{id}`; expected one of {} or all", SUITE_IDS.join(", "))));
    }
    Ok(vec![SuiteResult { id: id.into(), skipped: None, checks: run(id, subject)? }])
}

fn run(id: &str, subject: &Subject) -> Result<Vec<Check>> {
    match id {
        "b-h0-units" => b_h0_units(subject.ring(id)?),
        "idem-formula" => idem_formula(subject.ring(id)?),
        "proj-decomp" => proj_decomp(subject.ring(id)?, &rank_vectors(subject.ring(id)?)),
        "cl-pic-exact" => Ok(crate::ideals::cl_pic_exact_check(subject.ring(id)?)?.checks),
        "principalize" => principalize(subject.ring(id)?),
        "k0red-h0" => Ok(k0red_check(&k0_of_ring(subject.ring(id)?)?)),
        "b-k0" => b_of_k0_check(&k0_of_ring(subject.ring(id)?)?),
        "units-split" => {
            let r = maps_fgh(&k0_of_ring(subject.ring(id)?)?)?;
            let mut checks = r.checks;
            checks.push(Check::pass(
                "K0* = Pic (+) B",
                format!("|K0*| = {} = {} * {}, K0* = {}", r.units, r.pic_order, r.b_order, r.structure),
            ));
            Ok(checks)
        }
        "lift" => match subject {
            Subject::Morphism(f) => lift(f),
            Subject::Ring(r) => {
                let mut checks = Vec::new();
                for f in registered_morphisms(r)? {
                    for mut c in lift(&f)? {
                        c.name = format!("{f}: {}", c.name);
                        checks.push(c);
                    }
                }
                checks.extend(nilpotent_quotients(r)?);
                Ok(checks)
            }
        },
        "char-zero" => Ok(char_zero_check(&k0_of_ring(subject.ring(id)?)?)),
        _ => unreachable!("id validated"),
    }
}

/// `|B(R)| = |H0(R)*| = 2^c` and `e -> phi_e` is a group isomorphism
/// `(B, (+)) -> H0*`, checked exhaustively.
pub fn b_h0_units(ring: &ConcreteRing) -> Result<Vec<Check>> {
    let b = boolean_ring_of(ring);
    let c = ring.num_components();
    let units = h0_units(ring);
    let mut checks = vec![Check::from_result("B(R) is a Boolean ring", b.check_axioms())];
    if let Some(all) = ring.elements() {
        let found = all.iter().filter(|x| ring.is_idempotent(x)).count();
        checks.push(Check::new(
            "exhaustive idempotent search agrees",
            found == b.len(),
            format!("{found} found, {} listed", b.len()),
        ));
    }
    checks.push(Check::new(
        "|B(R)| = |H0(R)*| = 2^c",
        b.len() == units.len() && b.len() == 1 << c,
        format!("|B| = {}, |H0*| = {}, c = {c}", b.len(), units.len()),
    ));
    let phis = b.elements.iter().map(|e| phi_e(ring, e)).collect::<Result<Vec<_>>>()?;
    let mut sorted = phis.clone();
    sorted.sort();
    sorted.dedup();
    let mut target = units.clone();
    target.sort();
    checks.push(Check::new("phi is a bijection onto H0*", sorted == target, ""));
    let mut hom = Ok(());
    'outer: for i in 0..b.len() {
        for j in 0..b.len() {
            if phis[b.add[i][j]] != phis[i].mul(&phis[j])? {
                hom = Err(format!("{}, {}", ring.render_element(&b.elements[i]), ring.render_element(&b.elements[j])));
                break 'outer;
            }
        }
    }
    checks.push(Check::from_result("phi(e (+) f) = phi(e) phi(f)", hom));
    Ok(checks)
}

/// Rank equality of both sides of the idempotent formula for every pair.
pub fn idem_formula(ring: &ConcreteRing) -> Result<Vec<Check>> {
    let idem = ring.idempotents();
    let mut failure = None;
    let mut count = 0;
    for e in &idem {
        for f in &idem {
            count += 1;
            let rep = idempotent_formula_check(ring, e, f)?;
            if !rep.holds() && failure.is_none() {
                failure = Some(format!(
                    "e = {}, e' = {}: {} vs {}",
                    ring.render_element(e),
                    ring.render_element(f),
                    rep.lhs,
                    rep.rhs
                ));
            }
        }
    }
    Ok(vec![Check::new(
        "Re + Re' = Re/Re(1-e') + Re'/Re'(1-e) + R(e (+) e')",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{count} pairs")),
    )])
}

/// Deterministic rank vectors with entries in `0..=3`: every vector when
/// there are at most 4 components, otherwise a fixed spread of 200.
pub fn rank_vectors(ring: &ConcreteRing) -> Vec<Vec<u64>> {
    let c = ring.num_components();
    if c <= 4 {
        (0..4u64.pow(c as u32))
            .map(|k| (0..c).map(|i| (k / 4u64.pow(i as u32)) % 4).collect())
            .collect()
    } else {
        (0..200u64)
            .map(|k| (0..c as u64).map(|i| (k * (2 * i + 3) + k / (i + 1) + i) % 4).collect())
            .collect()
    }
}

/// Orthogonal decomposition by rank together with the annihilator chain of
/// the exterior powers, for each rank vector.
pub fn proj_decomp(ring: &ConcreteRing, vectors: &[Vec<u64>]) -> Result<Vec<Check>> {
    if ring.factors().is_none() {
        return Err(Error::Unsupported(format!("rank decompositions over {ring}")));
    }
    let mut failure = None;
    for v in vectors {
        let m = ProjModule::Ranks(v.clone());
        if let Err(w) = orthogonal_decomposition(ring, &m)?.check(ring) {
            failure = Some(format!("{m}: {w}"));
            break;
        }
    }
    Ok(vec![Check::new(
        "sum e_k = 1, e_i e_j = 0, Ann(Lambda^k M) = R(e_0 + ... + e_{k-1})",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{} modules", vectors.len())),
    )])
}

/// Every class representative, the primes over `S` and the unit ideal are
/// principal in the semilocal ring, with a generator from the constructive
/// algorithm.
pub fn principalize(ring: &ConcreteRing) -> Result<Vec<Check>> {
    let ConcreteRing::SemilocalQuadOrder { order, .. } = ring else {
        return Err(Error::Unsupported(format!("principalization needs a semilocal order, got {ring}")));
    };
    let mut ideals = class_group(order.disc())?.representatives();
    ideals.extend(maximal_ideals(ring)?);
    ideals.push(FractionalIdeal::unit(*order));
    let mut checks = Vec::new();
    for i in ideals {
        let p = principalize_semilocal(ring, &i)?;
        let gen = FractionalIdeal::principal(*order, &p.generator)?;
        checks.push(Check::new(
            format!("{i} = ({})", p.generator),
            locally_equal(ring, &i, &gen)?,
            format!("generator {}", p.generator),
        ));
    }
    checks.push(Check::new("Pic is trivial", pic_group(ring)?.order() == 1, ""));
    Ok(checks)
}

/// Lifting at ring and `K0` level, surjectivity, and functoriality against
/// the identity of the target.
pub fn lift(f: &RingMorphism) -> Result<Vec<Check>> {
    let report = lifts_idempotents(f)?;
    let mut checks = vec![Check::pass(
        "lifts idempotents",
        format!(
            "ring: {}, K0: {}{}",
            report.ring_level,
            report.k0_level,
            report.ring_witness.as_ref().map(|w| format!(" (no preimage of {w})")).unwrap_or_default()
        ),
    )];
    checks.extend(k0_surjectivity_check(f)?.checks);
    checks.extend(functoriality_check(f, &RingMorphism::identity(f.target())?)?);
    Ok(checks)
}

/// Identity, reduction of each factor to its residue field, projections
/// onto single factors, and the diagonal into two copies.
pub fn registered_morphisms(ring: &ConcreteRing) -> Result<Vec<RingMorphism>> {
    let f = ring
        .factors()
        .ok_or_else(|| Error::Unsupported(format!("lifting is checked on finite rings, got {ring}")))?;
    let mut out = vec![RingMorphism::identity(ring)?];
    let primes: Vec<u64> = f.iter().map(|lf| lf.prime).collect();
    out.push(RingMorphism::quotient(ring, &primes)?);
    for i in 0..f.len() {
        out.push(RingMorphism::projection(ring, &[i])?);
    }
    if !f.is_empty() {
        out.push(RingMorphism::diagonal(ring, 2)?);
    }
    Ok(out)
}

/// `R -> R/N` for the nilradical `N`: Pic and `K0` agree on both sides.
fn nilpotent_quotients(ring: &ConcreteRing) -> Result<Vec<Check>> {
    let f = ring.factors().expect("finite ring");
    let primes: Vec<u64> = f.iter().map(|lf| lf.prime).collect();
    let q = RingMorphism::quotient(ring, &primes)?;
    let (k_src, k_tgt) = (k0_of_ring(ring)?, k0_of_ring(q.target())?);
    let pics = (pic_group(ring)?.order(), pic_group(q.target())?.order());
    let s = k0_surjectivity_check(&q)?;
    let injective = {
        let mut a = q.assignment().to_vec();
        a.sort_unstable();
        a.dedup();
        a.len() == ring.num_components()
    };
    Ok(vec![Check::new(
        format!("{q}: Pic and K0 unchanged modulo the nilradical"),
        pics == (1, 1) && s.surjective && injective && k_src.shape_name() == k_tgt.shape_name(),
        format!("K0 = {}", k_src.shape_name()),
    )])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;
    use crate::ring::{parse_morphism, parse_ring};

    #[test]
    fn all_suites_on_standard_rings() {
        for name in ["Z/12", "Z/30", "Z/7", "O(-4)", "O(-20)", "O(-23)", "O(-20) loc {2,3}"] {
            let subject = Subject::Ring(parse_ring(name).unwrap());
            for s in verify("all", &subject).unwrap() {
                assert!(all_passed(&s.checks), "{name} {}: {:?}", s.id, s.checks);
            }
        }
    }

    #[test]
    fn skipped_pairings() {
        let s = verify("all", &Subject::Ring(parse_ring("O(-20)").unwrap())).unwrap();
        let skipped: Vec<&str> = s.iter().filter(|r| r.skipped.is_some()).map(|r| r.id.as_str()).collect();
        assert_eq!(skipped, vec!["idem-formula", "proj-decomp", "principalize", "lift"]);
        assert!(verify("principalize", &Subject::Ring(parse_ring("Z/12").unwrap())).is_err());
        assert!(verify("nope", &Subject::Ring(parse_ring("Z/12").unwrap())).is_err());
    }

    #[test]
    fn diagonal_fails_to_lift_consistently() {
        let f = parse_morphism("diag: Z/2 -> Z/2 x Z/2").unwrap();
        let s = verify("lift", &Subject::Morphism(f)).unwrap();
        assert!(all_passed(&s[0].checks));
        assert!(s[0].checks[0].witness.starts_with("ring: false, K0: false"));
    }
}
