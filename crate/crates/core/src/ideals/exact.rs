//! The sequence `0 -> Cl(R) -> Pic(R) -> Pic(T(R))` on the supported rings.

use serde::Serialize;

use crate::abelian::describe;
use crate::error::Result;
use crate::ideals::{class_group, principalize_semilocal, locally_equal, FractionalIdeal, QuadForm};
use crate::modules::{pic_group, ProjModule};
use crate::quadratic::QuadNumber;
use crate::report::Check;
use crate::ring::ConcreteRing;

/// A generator of `I` if `I` is principal.
pub fn is_principal(ideal: &FractionalIdeal) -> Option<QuadNumber> {
    ideal.generator()
}

#[derive(Debug, Clone, Serialize)]
pub struct ClPicReport {
    pub cl_order: usize,
    pub pic_order: usize,
    pub structure: String,
    pub checks: Vec<Check>,
}

/// The invertible module attached to an invertible ideal.
fn line_of(ideal: &FractionalIdeal) -> ProjModule {
    ProjModule::steinitz(1, QuadForm::from_ideal(ideal))
}

pub fn cl_pic_exact_check(ring: &ConcreteRing) -> Result<ClPicReport> {
    let pic = pic_group(ring)?;
    let mut checks = Vec::new();
    let cl_order = match ring {
        ConcreteRing::QuadOrder(o) => {
            let cl = class_group(o.disc())?;
            let reps = cl.representatives();
            let images: Vec<ProjModule> = reps.iter().map(line_of).collect();
            let mut hom = Ok(());
            'outer: for (i, a) in reps.iter().enumerate() {
                for (j, b) in reps.iter().enumerate() {
                    let lhs = line_of(&a.mul(b));
                    let rhs = images[i].tensor(&images[j])?;
                    if lhs != rhs {
                        hom = Err(format!("[{a}][{b}] maps to {lhs}, tensor gives {rhs}"));
                        break 'outer;
                    }
                }
            }
            checks.push(Check::from_result("Cl -> Pic is a homomorphism", hom));
            let mut hit: Vec<usize> = images.iter().filter_map(|m| pic.index_of(m)).collect();
            let all_valid = hit.len() == images.len();
            hit.sort_unstable();
            hit.dedup();
            checks.push(Check::new(
                "Cl -> Pic is injective",
                all_valid && hit.len() == reps.len(),
                format!("{} classes, {} distinct images", reps.len(), hit.len()),
            ));
            checks.push(Check::new(
                "Cl -> Pic is surjective",
                hit.len() == pic.order(),
                format!("image {} of {}", hit.len(), pic.order()),
            ));
            // T(R) is the fraction field, so every invertible module becomes free
            checks.push(Check::pass(
                "Pic -> Pic(T(R)) is trivial, kernel = image of Cl",
                "T(R) is a field",
            ));
            let principal = reps
                .iter()
                .enumerate()
                .all(|(i, r)| is_principal(r).is_some() == (cl.forms()[i].is_identity()));
            checks.push(Check::new(
                "principal ideals are exactly the trivial class",
                principal,
                "",
            ));
            cl.class_number()
        }
        ConcreteRing::SemilocalQuadOrder { order, .. } => {
            // every global class representative becomes principal after localizing
            let cl = class_group(order.disc())?;
            let mut failure = Ok(());
            for rep in cl.representatives() {
                let p = principalize_semilocal(ring, &rep)?;
                let gen = FractionalIdeal::principal(*order, &p.generator)?;
                if !locally_equal(ring, &rep, &gen)? {
                    failure = Err(format!("{rep} is not generated by {}", p.generator));
                    break;
                }
            }
            checks.push(Check::from_result("Cl of the semilocal ring is trivial", failure));
            1
        }
        ConcreteRing::FiniteProduct(factors) => {
            // T(R) = R. Ideals of Z/p^e are (p^j), with (p^j)(p^k) = (p^min(j+k, e)),
            // so only j = 0 has an inverse and the only invertible ideal is R.
            let invertible = factors.iter().all(|f| {
                let e = f.exponent;
                (0..=e).filter(|&j| (0..=e).any(|k| (j + k).min(e) == 0)).count() == 1
            });
            checks.push(Check::new("Cl is trivial", invertible, "only R is invertible"));
            1
        }
    };
    checks.push(Check::new(
        "|Cl| = |Pic|",
        cl_order == pic.order(),
        format!("|Cl| = {cl_order}, |Pic| = {}", pic.order()),
    ));
    Ok(ClPicReport {
        cl_order,
        pic_order: pic.order(),
        structure: describe(&pic.invariant_factors()),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;
    use crate::ring::parse_ring;

    #[test]
    fn exact_on_standard_rings() {
        for (name, h, s) in [
            ("O(-4)", 1, "0"),
            ("O(-20)", 2, "Z/2"),
            ("O(-23)", 3, "Z/3"),
            ("Z/12", 1, "0"),
            ("O(-20) loc {2,3}", 1, "0"),
        ] {
            let r = cl_pic_exact_check(&parse_ring(name).unwrap()).unwrap();
            assert!(all_passed(&r.checks), "{name}: {:?}", r.checks);
            assert_eq!((r.cl_order, r.pic_order, r.structure.as_str()), (h, h, s), "{name}");
        }
    }
}
