//! The semiring of isomorphism classes of projective modules under direct
//! sum and tensor product, fed to the generic completion and compared with
//! the closed form of `K0`.

use crate::error::Result;
use crate::grothendieck::engine::{groth_ring, CommMonoid, CommSemiring, Pair};
use crate::grothendieck::k0::{k0_of_ring, K0Element};
use crate::ideals::class_group;
use crate::modules::ProjModule;
use crate::report::Check;
use crate::ring::ConcreteRing;

/// Projective classes over `ring`; cancellative, so completed by direct
/// comparison.
#[derive(Debug, Clone)]
pub struct ProjSemiring {
    ring: ConcreteRing,
}

impl ProjSemiring {
    pub fn new(ring: &ConcreteRing) -> Self {
        ProjSemiring { ring: ring.clone() }
    }

    /// Every class of rank at most `max_rank` on each component.
    pub fn modules_up_to(&self, max_rank: u64) -> Result<Vec<ProjModule>> {
        Ok(match &self.ring {
            ConcreteRing::FiniteProduct(f) => {
                let mut out = vec![Vec::new()];
                for _ in f {
                    out = out
                        .into_iter()
                        .flat_map(|p: Vec<u64>| {
                            (0..=max_rank).map(move |v| {
                                let mut q = p.clone();
                                q.push(v);
                                q
                            })
                        })
                        .collect();
                }
                out.into_iter().map(ProjModule::Ranks).collect()
            }
            ConcreteRing::QuadOrder(o) => {
                let cl = class_group(o.disc())?;
                let mut out = vec![ProjModule::zero(&self.ring)];
                for n in 1..=max_rank {
                    out.extend(cl.forms().iter().map(|c| ProjModule::steinitz(n, *c)));
                }
                out
            }
            ConcreteRing::SemilocalQuadOrder { .. } => {
                (0..=max_rank).map(|n| ProjModule::free(&self.ring, n)).collect()
            }
        })
    }
}

impl CommMonoid for ProjSemiring {
    type Elem = ProjModule;

    fn zero(&self) -> ProjModule {
        ProjModule::zero(&self.ring)
    }

    fn add(&self, a: &ProjModule, b: &ProjModule) -> ProjModule {
        a.direct_sum(b).expect("modules over the same ring")
    }

    fn is_cancellative(&self) -> bool {
        true
    }

    fn elements(&self) -> Option<Vec<ProjModule>> {
        None
    }
}

impl CommSemiring for ProjSemiring {
    fn one(&self) -> ProjModule {
        ProjModule::free(&self.ring, 1)
    }

    fn mul(&self, a: &ProjModule, b: &ProjModule) -> ProjModule {
        a.tensor(b).expect("modules over the same ring")
    }
}

/// Checks that `[M, N] -> [M] - [N]` is a ring isomorphism from the
/// completion of the projective-class semiring onto the closed form, on all
/// pairs of classes of rank at most 3.
pub fn oracle_check(ring: &ConcreteRing) -> Result<Vec<Check>> {
    let k0 = k0_of_ring(ring)?;
    let s = ProjSemiring::new(ring);
    let g = groth_ring(&s)?;
    let mods = s.modules_up_to(3)?;
    let pairs: Vec<Pair<ProjModule>> = mods
        .iter()
        .flat_map(|p| mods.iter().map(move |q| Pair::new(p.clone(), q.clone())))
        .collect();
    let psi = |x: &Pair<ProjModule>| k0.difference(&x.p, &x.q);
    let images: Vec<K0Element> = pairs.iter().map(psi).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut well = Ok(());
    let mut hom = Ok(());
    'outer: for (i, x) in pairs.iter().enumerate() {
        for (j, y) in pairs.iter().enumerate() {
            if g.equivalent(x, y) != (images[i] == images[j]) {
                well = Err(format!("[{}, {}] vs [{}, {}]", x.p, x.q, y.p, y.q));
                break 'outer;
            }
            if psi(&g.add(x, y))? != k0.add(&images[i], &images[j])
                || psi(&g.mul(x, y))? != k0.mul(&images[i], &images[j])
            {
                hom = Err(format!("[{}, {}], [{}, {}]", x.p, x.q, y.p, y.q));
                break 'outer;
            }
        }
    }
    if hom.is_ok() && psi(&g.one())? != k0.one() {
        hom = Err("1 is not sent to 1".into());
    }
    checks.push(Check::from_result("completion -> K0 is well defined and injective", well));
    checks.push(Check::from_result("completion -> K0 is a ring map", hom));
    let missing = k0
        .sample()
        .into_iter()
        .filter(|x| x.rank.iter().all(|r| r.abs() <= 2))
        .find(|x| !images.contains(x));
    checks.push(Check::new(
        "completion -> K0 is surjective",
        missing.is_none(),
        missing.map(|x| k0.render(&x)).unwrap_or_default(),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;
    use crate::ring::parse_ring;

    #[test]
    fn generic_completion_matches_closed_form() {
        for name in ["Z/12", "O(-20)", "O(-23)", "O(-20) loc {2}"] {
            let checks = oracle_check(&parse_ring(name).unwrap()).unwrap();
            assert!(all_passed(&checks), "{name}: {checks:?}");
        }
    }
}
