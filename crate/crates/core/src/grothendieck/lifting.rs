//! Lifting idempotents along ring maps, at the ring level and on `K0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grothendieck::k0::{k0_of_ring, K0Element, K0Ring};
use crate::modules::ProjModule;
use crate::report::Check;
use crate::ring::RingMorphism;

/// `K0(f)`, induced by base change `M -> M (x) R'`: the rank of the base
/// change on a target component is the rank of `M` on the source component
/// it comes from.
pub fn k0_map(f: &RingMorphism, x: &K0Element) -> K0Element {
    K0Element { rank: f.assignment().iter().map(|&i| x.rank[i]).collect(), class: 0 }
}

/// Base change of a projective module along `f`.
pub fn base_change(f: &RingMorphism, m: &ProjModule) -> Result<ProjModule> {
    match m {
        ProjModule::Ranks(r) if m.is_over(f.source()) => {
            Ok(ProjModule::Ranks(f.assignment().iter().map(|&i| r[i]).collect()))
        }
        _ => Err(Error::BaseMismatch(format!("{m} over {}", f.source()))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub ring_level: bool,
    pub k0_level: bool,
    /// A target idempotent without an idempotent preimage, if any.
    pub ring_witness: Option<String>,
    pub k0_witness: Option<String>,
}

impl LiftReport {
    pub fn consistent(&self) -> bool {
        self.ring_level == self.k0_level
    }
}

pub fn lifts_idempotents(f: &RingMorphism) -> Result<LiftReport> {
    let (src, tgt) = (f.source(), f.target());
    let src_idem = src.idempotents();
    let mut ring_witness = None;
    for t in tgt.idempotents() {
        let mut found = false;
        for e in &src_idem {
            if f.apply(e)? == t {
                found = true;
                break;
            }
        }
        if !found {
            ring_witness = Some(tgt.render_element(&t));
            break;
        }
    }
    let (k_src, k_tgt) = (k0_of_ring(src)?, k0_of_ring(tgt)?);
    let src_k0_idem = k_src.idempotents();
    let k0_witness = k_tgt
        .idempotents()
        .into_iter()
        .find(|t| !src_k0_idem.iter().any(|e| k0_map(f, e) == *t))
        .map(|t| k_tgt.render(&t));
    Ok(LiftReport {
        ring_level: ring_witness.is_none(),
        k0_level: k0_witness.is_none(),
        ring_witness,
        k0_witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SurjectivityReport {
    pub lifts: bool,
    pub surjective: bool,
    pub image: String,
    pub checks: Vec<Check>,
}

/// The image of `K0(f)` consists of the rank vectors constant on each fiber
/// of the component assignment.
fn in_image(f: &RingMorphism, w: &[i64]) -> bool {
    let a = f.assignment();
    (0..a.len()).all(|j| (0..a.len()).all(|k| a[j] != a[k] || w[j] == w[k]))
}

pub fn k0_surjectivity_check(f: &RingMorphism) -> Result<SurjectivityReport> {
    let lift = lifts_idempotents(f)?;
    let c = f.target().num_components();
    let unit = |j: usize| (0..c).map(|k| i64::from(k == j)).collect::<Vec<_>>();
    let missing: Vec<usize> = (0..c).filter(|&j| !in_image(f, &unit(j))).collect();
    let surjective = missing.is_empty();
    let a = f.assignment();
    let mut constraints = Vec::new();
    for j in 0..a.len() {
        for k in j + 1..a.len() {
            if a[j] == a[k] {
                constraints.push(format!("w{j} = w{k}"));
            }
        }
    }
    let image = if constraints.is_empty() {
        format!("Z^{c}")
    } else {
        format!("{{w in Z^{c} : {}}}", constraints.join(", "))
    };
    let mut checks = vec![Check::new(
        "ring and K0 lifting agree",
        lift.consistent(),
        format!("ring: {}, K0: {}", lift.ring_level, lift.k0_level),
    )];
    if lift.ring_level {
        // the target K0 is Z^c, which is reduced
        checks.push(Check::new(
            "K0(f) is surjective",
            surjective,
            format!("image {image}"),
        ));
    } else {
        checks.push(Check::pass(
            "surjectivity not claimed",
            format!("f does not lift idempotents; image {image}"),
        ));
    }
    Ok(SurjectivityReport { lifts: lift.ring_level, surjective, image, checks })
}

/// `K0(id) = id` and `K0(g . f) = K0(g) . K0(f)` on a sample of `K0(source)`.
pub fn functoriality_check(f: &RingMorphism, g: &RingMorphism) -> Result<Vec<Check>> {
    let gf = f.then(g)?;
    let k: K0Ring = k0_of_ring(f.source())?;
    let sample = k.sample();
    let id = RingMorphism::identity(f.source())?;
    let bad_id = sample.iter().find(|x| k0_map(&id, x) != **x);
    let bad_comp = sample.iter().find(|x| k0_map(&gf, x) != k0_map(g, &k0_map(f, x)));
    Ok(vec![
        Check::new("K0(id) = id", bad_id.is_none(), bad_id.map(|x| k.render(x)).unwrap_or_default()),
        Check::new(
            "K0(g . f) = K0(g) . K0(f)",
            bad_comp.is_none(),
            bad_comp.map(|x| k.render(x)).unwrap_or_default(),
        ),
    ])
}
