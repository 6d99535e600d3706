//! Closed forms for `K0(R)` and the maps around it.
//!
//! A finite product of `c` local rings has `K0 = Z^c` (rank vectors). A
//! maximal quadratic order has `K0 = Z (+) Cl` with
//! `(r1, c1)(r2, c2) = (r1 r2, r1 c2 + r2 c1)`, the class written additively.
//! A semilocal order has `K0 = Z`.

use std::fmt;

use serde::Serialize;

use crate::abelian::{describe, FiniteAbelianGroup};
use crate::boolean::{b_iso_h0units, boolean_sum};
use crate::error::Result;
use crate::ideals::{class_group, ClassGroup};
use crate::modules::{pic_group, ProjModule};
use crate::report::Check;
use crate::ring::{ConcreteRing, RingElement};
use crate::spectrum::{h0_units, idempotent_from_mask, H0Element};

#[derive(Debug, Clone)]
pub enum K0Shape {
    FreeAbelian(usize),
    ZPlusCl(ClassGroup),
}

/// `rank` has one entry per component; `class` indexes the class group
/// (always 0 for the free shape).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K0Element {
    pub rank: Vec<i64>,
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct K0Ring {
    base: ConcreteRing,
    shape: K0Shape,
}

pub fn k0_of_ring(ring: &ConcreteRing) -> Result<K0Ring> {
    let shape = match ring {
        ConcreteRing::FiniteProduct(f) => K0Shape::FreeAbelian(f.len()),
        ConcreteRing::QuadOrder(o) => K0Shape::ZPlusCl(class_group(o.disc())?),
        ConcreteRing::SemilocalQuadOrder { .. } => K0Shape::FreeAbelian(1),
    };
    Ok(K0Ring { base: ring.clone(), shape })
}

impl K0Ring {
    pub fn base(&self) -> &ConcreteRing {
        &self.base
    }

    pub fn shape(&self) -> &K0Shape {
        &self.shape
    }

    pub fn shape_name(&self) -> String {
        match &self.shape {
            K0Shape::FreeAbelian(c) => format!("FreeAbelian({c})"),
            K0Shape::ZPlusCl(cl) => format!("ZPlusCl({})", cl.disc()),
        }
    }

    fn width(&self) -> usize {
        match &self.shape {
            K0Shape::FreeAbelian(c) => *c,
            K0Shape::ZPlusCl(_) => 1,
        }
    }

    fn classes(&self) -> usize {
        match &self.shape {
            K0Shape::FreeAbelian(_) => 1,
            K0Shape::ZPlusCl(cl) => cl.class_number(),
        }
    }

    pub fn element(&self, rank: Vec<i64>, class: usize) -> K0Element {
        assert_eq!(rank.len(), self.width(), "rank vector length");
        assert!(class < self.classes(), "class index");
        K0Element { rank, class }
    }

    pub fn zero(&self) -> K0Element {
        self.constant(0)
    }

    pub fn one(&self) -> K0Element {
        self.constant(1)
    }

    /// `n [R, 0]`.
    pub fn constant(&self, n: i64) -> K0Element {
        K0Element { rank: vec![n; self.width()], class: 0 }
    }

    pub fn add(&self, x: &K0Element, y: &K0Element) -> K0Element {
        let rank = x.rank.iter().zip(&y.rank).map(|(a, b)| a + b).collect();
        let class = match &self.shape {
            K0Shape::FreeAbelian(_) => 0,
            K0Shape::ZPlusCl(cl) => cl.compose(x.class, y.class),
        };
        K0Element { rank, class }
    }

    pub fn neg(&self, x: &K0Element) -> K0Element {
        let class = match &self.shape {
            K0Shape::FreeAbelian(_) => 0,
            K0Shape::ZPlusCl(cl) => cl.inverse(x.class),
        };
        K0Element { rank: x.rank.iter().map(|a| -a).collect(), class }
    }

    pub fn sub(&self, x: &K0Element, y: &K0Element) -> K0Element {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &K0Element, y: &K0Element) -> K0Element {
        let rank = x.rank.iter().zip(&y.rank).map(|(a, b)| a * b).collect();
        let class = match &self.shape {
            K0Shape::FreeAbelian(_) => 0,
            K0Shape::ZPlusCl(cl) => cl.compose(cl.pow(y.class, x.rank[0]), cl.pow(x.class, y.rank[0])),
        };
        K0Element { rank, class }
    }

    pub fn pow(&self, x: &K0Element, k: u32) -> K0Element {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn scale(&self, n: i64, x: &K0Element) -> K0Element {
        self.mul(&self.constant(n), x)
    }

    /// The class `[M, 0]`.
    pub fn from_module(&self, m: &ProjModule) -> Result<K0Element> {
        if !m.is_over(&self.base) {
            return Err(crate::Error::BaseMismatch(format!("{m} over {}", self.base)));
        }
        Ok(match (m, &self.shape) {
            (ProjModule::Ranks(r), _) => K0Element { rank: r.iter().map(|&v| v as i64).collect(), class: 0 },
            (ProjModule::Steinitz { rank, .. }, K0Shape::FreeAbelian(_)) => K0Element { rank: vec![*rank as i64], class: 0 },
            (ProjModule::Steinitz { rank, class }, K0Shape::ZPlusCl(cl)) => K0Element {
                rank: vec![*rank as i64],
                class: cl.index_of(class).expect("reduced form of this discriminant"),
            },
        })
    }

    /// `[M, N]`.
    pub fn difference(&self, m: &ProjModule, n: &ProjModule) -> Result<K0Element> {
        Ok(self.sub(&self.from_module(m)?, &self.from_module(n)?))
    }

    /// `[M, N] -> r_M - r_N`.
    pub fn to_h0(&self, x: &K0Element) -> H0Element {
        H0Element(x.rank.clone())
    }

    /// `sum_n n [Re_n, 0]`, a section of `to_h0`.
    pub fn h0_section(&self, v: &H0Element) -> K0Element {
        self.element(v.0.clone(), 0)
    }

    pub fn is_unit(&self, x: &K0Element) -> bool {
        x.rank.iter().all(|r| r.abs() == 1)
    }

    /// `{+-1}^c`, or `{(+-1, c)}`; listed sign mask first, then class.
    pub fn units(&self) -> Vec<K0Element> {
        let w = self.width();
        let mut out = Vec::new();
        for mask in 0..1u64 << w {
            let rank: Vec<i64> = (0..w).map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 }).collect();
            for class in 0..self.classes() {
                out.push(K0Element { rank: rank.clone(), class });
            }
        }
        out
    }

    /// Solutions of `x^2 = x`: ranks are forced into `{0, 1}`, the class
    /// part is then solved by enumeration.
    pub fn idempotents(&self) -> Vec<K0Element> {
        let w = self.width();
        (0..1u64 << w)
            .flat_map(|mask| {
                let rank: Vec<i64> = (0..w).map(|i| ((mask >> i) & 1) as i64).collect();
                (0..self.classes()).map(move |class| K0Element { rank: rank.clone(), class })
            })
            .filter(|x| self.mul(x, x) == *x)
            .collect()
    }

    /// The kernel of `to_h0`: `{0}`, or `{0} x Cl`.
    pub fn nilradical(&self) -> Vec<K0Element> {
        (0..self.classes()).map(|class| K0Element { rank: vec![0; self.width()], class }).collect()
    }

    pub fn is_nilpotent(&self, x: &K0Element) -> bool {
        // a nilpotent of index k has x^(2^j) = 0 once 2^j >= k; the class
        // part is killed by one squaring, the rank part only by being zero
        (1..=4).any(|k| self.pow(x, k) == self.zero())
    }

    /// Elements with small ranks and every class; the full box when the
    /// rank vector is short, otherwise combinations of basis vectors.
    pub fn sample(&self) -> Vec<K0Element> {
        let w = self.width();
        let mut ranks: Vec<Vec<i64>> = Vec::new();
        if w <= 3 {
            ranks.push(Vec::new());
            for _ in 0..w {
                ranks = ranks
                    .into_iter()
                    .flat_map(|p| {
                        (-2..=2).map(move |v| {
                            let mut q = p.clone();
                            q.push(v);
                            q
                        })
                    })
                    .collect();
            }
        } else {
            ranks.push(vec![0; w]);
            ranks.push(vec![1; w]);
            ranks.push(vec![-1; w]);
            for i in 0..w {
                for (a, b) in [(1, 0), (-1, 0), (2, 0), (1, 1), (1, -1), (2, -1)] {
                    for j in 0..w {
                        if b != 0 && i == j {
                            continue;
                        }
                        let mut v = vec![0; w];
                        v[i] += a;
                        v[j] += b;
                        if !ranks.contains(&v) {
                            ranks.push(v);
                        }
                    }
                }
            }
        }
        ranks
            .into_iter()
            .flat_map(|r| (0..self.classes()).map(move |class| K0Element { rank: r.clone(), class }))
            .collect()
    }

    pub fn render(&self, x: &K0Element) -> String {
        match &self.shape {
            K0Shape::FreeAbelian(_) => H0Element(x.rank.clone()).to_string(),
            K0Shape::ZPlusCl(cl) => format!("({}, {})", x.rank[0], cl.forms()[x.class]),
        }
    }

    /// The multiplicative group of units as a finite abelian group.
    pub fn unit_group(&self) -> (Vec<K0Element>, FiniteAbelianGroup) {
        let units = self.units();
        let table = units
            .iter()
            .map(|a| {
                units
                    .iter()
                    .map(|b| units.iter().position(|u| *u == self.mul(a, b)).expect("units are closed"))
                    .collect()
            })
            .collect();
        let one = units.iter().position(|u| *u == self.one()).expect("1 is a unit");
        let g = FiniteAbelianGroup::from_table(table, one).expect("unit group");
        (units, g)
    }
}

impl fmt::Display for K0Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0({}) = {}", self.base, self.shape_name())
    }
}

/// Checks that the nilradical is the kernel of `to_h0` and that the induced
/// map `K0_red -> H0` is a ring isomorphism.
pub fn k0red_check(k0: &K0Ring) -> Vec<Check> {
    let sample = k0.sample();
    let nil = k0.nilradical();
    let mut checks = Vec::new();
    let bad = nil.iter().find(|x| k0.mul(x, x) != k0.zero() || !k0.to_h0(x).is_zero());
    checks.push(Check::new(
        "kernel of K0 -> H0 squares to zero",
        bad.is_none(),
        bad.map(|x| k0.render(x)).unwrap_or_default(),
    ));
    let stray = sample.iter().find(|x| k0.is_nilpotent(x) != nil.contains(x));
    checks.push(Check::new(
        "nilpotents = kernel of K0 -> H0",
        stray.is_none(),
        stray.map(|x| k0.render(x)).unwrap_or_else(|| format!("|nil| = {}", nil.len())),
    ));
    let mut hom = Ok(());
    'outer: for x in &sample {
        for y in &sample {
            let (hx, hy) = (k0.to_h0(x), k0.to_h0(y));
            if k0.to_h0(&k0.add(x, y)) != hx.add(&hy).expect("same length")
                || k0.to_h0(&k0.mul(x, y)) != hx.mul(&hy).expect("same length")
            {
                hom = Err(format!("{}, {}", k0.render(x), k0.render(y)));
                break 'outer;
            }
            if hx == hy && !nil.contains(&k0.sub(x, y)) {
                hom = Err(format!("{} and {} agree in H0 but differ by a non-nilpotent", k0.render(x), k0.render(y)));
                break 'outer;
            }
        }
    }
    if hom.is_ok() && k0.to_h0(&k0.one()) != H0Element::constant(k0.width(), 1) {
        hom = Err("1 is not sent to 1".into());
    }
    checks.push(Check::from_result("K0_red -> H0 is an injective ring map", hom));
    let section = sample.iter().map(|x| k0.to_h0(x)).find(|v| k0.to_h0(&k0.h0_section(v)) != *v);
    checks.push(Check::new(
        "K0_red -> H0 is surjective",
        section.is_none(),
        section.map(|v| v.to_string()).unwrap_or_default(),
    ));
    // units of K0 surject onto units of H0, and units of K0_red match B(R)
    let mut images: Vec<H0Element> = k0.units().iter().map(|u| k0.to_h0(u)).collect();
    images.sort();
    images.dedup();
    let mut target = h0_units(k0.base());
    target.sort();
    checks.push(Check::new(
        "K0* -> H0* is surjective",
        images == target,
        format!("{} of {} units hit", images.len(), target.len()),
    ));
    let iso = b_iso_h0units(k0.base());
    let matches = images.iter().all(|u| iso.inverse(u).is_some()) && iso.pairs.len() == images.len();
    checks.push(Check::new(
        "units of K0_red correspond to B(R)",
        matches,
        format!("|B| = {}, |K0_red*| = {}", iso.pairs.len(), images.len()),
    ));
    checks
}

/// The embeddings `f: Pic -> K0*`, `h: B -> K0*` and the retraction
/// `g: K0* -> B`.
#[derive(Debug, Clone, Serialize)]
pub struct UnitsReport {
    pub units: usize,
    pub structure: String,
    pub pic_order: usize,
    pub b_order: usize,
    pub checks: Vec<Check>,
}

pub fn map_f(k0: &K0Ring, line: &ProjModule) -> Result<K0Element> {
    k0.from_module(line)
}

/// `h(e) = [R, Re (+) Re] = 1 - 2[Re]`.
pub fn map_h(k0: &K0Ring, e: &RingElement) -> Result<K0Element> {
    let re = ProjModule::principal_summand(k0.base(), e)?;
    let free = ProjModule::free(k0.base(), 1);
    k0.difference(&free, &re.direct_sum(&re)?)
}

/// The idempotent `e` with `V(e)` the locus where the rank of `u` is `1`.
pub fn map_g(k0: &K0Ring, u: &K0Element) -> RingElement {
    let mask: Vec<bool> = k0.to_h0(u).0.iter().map(|&r| r == -1).collect();
    idempotent_from_mask(k0.base(), &mask)
}

pub fn maps_fgh(k0: &K0Ring) -> Result<UnitsReport> {
    let ring = k0.base();
    let pic = pic_group(ring)?;
    let bs = ring.idempotents();
    let fs: Vec<K0Element> = pic.elements.iter().map(|m| map_f(k0, m)).collect::<Result<_>>()?;
    let hs: Vec<K0Element> = bs.iter().map(|e| map_h(k0, e)).collect::<Result<_>>()?;
    let units = k0.units();
    let mut checks = Vec::new();
    let distinct = |v: &[K0Element]| {
        let mut w = v.to_vec();
        w.sort();
        w.dedup();
        w.len() == v.len()
    };
    checks.push(Check::new(
        "f lands in the units",
        fs.iter().all(|x| k0.is_unit(x)) && hs.iter().all(|x| k0.is_unit(x)),
        "",
    ));
    checks.push(Check::new("f is injective", distinct(&fs), format!("|Pic| = {}", fs.len())));
    checks.push(Check::new("h is injective", distinct(&hs), format!("|B| = {}", hs.len())));
    let gh = bs.iter().zip(&hs).find(|(e, h)| map_g(k0, h) != **e);
    checks.push(Check::new(
        "g . h = id",
        gh.is_none(),
        gh.map(|(e, _)| ring.render_element(e)).unwrap_or_default(),
    ));
    let gf = fs.iter().find(|x| map_g(k0, x) != ring.zero());
    checks.push(Check::new("g . f = 0", gf.is_none(), gf.map(|x| k0.render(x)).unwrap_or_default()));
    let mut gs: Vec<RingElement> = units.iter().map(|u| map_g(k0, u)).collect();
    gs.sort_by_key(|e| ring.render_element(e));
    gs.dedup();
    checks.push(Check::new("g is surjective", gs.len() == bs.len(), format!("{} of {}", gs.len(), bs.len())));
    let mut kernel: Vec<K0Element> = units.iter().filter(|u| map_g(k0, u) == ring.zero()).cloned().collect();
    let mut image = fs.clone();
    kernel.sort();
    image.sort();
    checks.push(Check::new("ker g = im f", kernel == image, format!("|ker g| = {}", kernel.len())));
    // (p, e) -> f(p) h(e) is an isomorphism Pic (+) B -> K0*
    let mut split = Ok(());
    let mut products = Vec::new();
    'outer: for (i, fp) in fs.iter().enumerate() {
        for (a, ha) in hs.iter().enumerate() {
            let x = k0.mul(fp, ha);
            products.push(x.clone());
            for (j, fq) in fs.iter().enumerate() {
                for (b, hb) in hs.iter().enumerate() {
                    let eb = boolean_sum(ring, &bs[a], &bs[b])?;
                    let ab = bs.iter().position(|e| *e == eb).expect("idempotent");
                    let lhs = k0.mul(&fs[pic.group.op(i, j)], &hs[ab]);
                    let rhs = k0.mul(&x, &k0.mul(fq, hb));
                    if lhs != rhs {
                        split = Err(format!("({i}, {a}) * ({j}, {b})"));
                        break 'outer;
                    }
                }
            }
        }
    }
    checks.push(Check::from_result("Pic (+) B -> K0* is a homomorphism", split));
    checks.push(Check::new(
        "Pic (+) B -> K0* is bijective",
        distinct(&products) && products.len() == units.len(),
        format!("|Pic| * |B| = {}, |K0*| = {}", products.len(), units.len()),
    ));
    let (_, g) = k0.unit_group();
    Ok(UnitsReport {
        units: units.len(),
        structure: describe(&g.invariant_factors()),
        pic_order: pic.order(),
        b_order: bs.len(),
        checks,
    })
}

/// `e -> [Re, 0]` from `B(R)` onto the idempotents of `K0(R)`.
pub fn b_of_k0(k0: &K0Ring) -> Result<Vec<(RingElement, K0Element)>> {
    k0.base()
        .idempotents()
        .into_iter()
        .map(|e| {
            let m = ProjModule::principal_summand(k0.base(), &e)?;
            Ok((e, k0.from_module(&m)?))
        })
        .collect()
}

pub fn b_of_k0_check(k0: &K0Ring) -> Result<Vec<Check>> {
    let ring = k0.base();
    let pairs = b_of_k0(k0)?;
    let mut images: Vec<K0Element> = pairs.iter().map(|(_, x)| x.clone()).collect();
    images.sort();
    let mut idems = k0.idempotents();
    idems.sort();
    let mut checks = vec![Check::new(
        "e -> [Re, 0] is a bijection onto idempotents of K0",
        images == idems && {
            let mut d = images.clone();
            d.dedup();
            d.len() == images.len()
        },
        format!("|B| = {}, idempotents of K0: {}", pairs.len(), idems.len()),
    )];
    let bsum = |x: &K0Element, y: &K0Element| k0.sub(&k0.add(x, y), &k0.scale(2, &k0.mul(x, y)));
    let lookup = |e: &RingElement| pairs.iter().find(|(f, _)| f == e).map(|(_, x)| x.clone()).expect("listed");
    let mut bad = None;
    'outer: for (e, x) in &pairs {
        for (f, y) in &pairs {
            let sum = boolean_sum(ring, e, f)?;
            let prod = ring.mul(e, f)?;
            if lookup(&sum) != bsum(x, y) || lookup(&prod) != k0.mul(x, y) {
                bad = Some(format!("{}, {}", ring.render_element(e), ring.render_element(f)));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("e -> [Re, 0] is a map of Boolean rings", bad.is_none(), bad.unwrap_or_default()));
    Ok(checks)
}

/// `Z -> K0(R)` is injective for nonzero `R`, and `K0(R) = 0` exactly for
/// the zero ring.
pub fn char_zero_check(k0: &K0Ring) -> Vec<Check> {
    let consts: Vec<K0Element> = (-20..=20).map(|n| k0.constant(n)).collect();
    let mut d = consts.clone();
    d.sort();
    d.dedup();
    let zero_ring = k0.base().is_zero_ring();
    let trivial = k0.one() == k0.zero();
    vec![
        Check::new(
            "n [R, 0] pairwise distinct for |n| <= 20",
            zero_ring || d.len() == consts.len(),
            format!("{} distinct", d.len()),
        ),
        Check::new("K0(R) = 0 iff R = 0", trivial == zero_ring, format!("R zero: {zero_ring}, K0 zero: {trivial}")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;
    use crate::ring::parse_ring;

    fn k0(name: &str) -> K0Ring {
        k0_of_ring(&parse_ring(name).unwrap()).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(k0("Z/12").shape_name(), "FreeAbelian(2)");
        assert_eq!(k0("O(-4)").shape_name(), "ZPlusCl(-4)");
        assert_eq!(k0("O(-20) loc {2,3}").shape_name(), "FreeAbelian(1)");
        assert_eq!(k0("0").shape_name(), "FreeAbelian(0)");
    }

    #[test]
    fn class_part_multiplication() {
        let k = k0("O(-20)");
        let c = k.element(vec![0], 1);
        assert_eq!(k.mul(&c, &c), k.zero());
        let x = k.element(vec![3], 1);
        let y = k.element(vec![2], 0);
        // (3, c)(2, 0) = (6, 2c) = (6, 0)
        assert_eq!(k.mul(&x, &y), k.element(vec![6], 0));
        let k = k0("O(-23)");
        let g = k.element(vec![1], 1);
        let g2 = k.mul(&g, &g);
        assert_eq!(g2.rank, vec![1]);
        assert_eq!(g2.class, k.add(&k.element(vec![0], 1), &k.element(vec![0], 1)).class);
    }

    #[test]
    fn units_and_idempotents() {
        let k = k0("O(-20)");
        assert_eq!(k.units().len(), 4);
        assert_eq!(k.idempotents(), vec![k.zero(), k.one()]);
        assert_eq!(k.nilradical().len(), 2);
        let (_, g) = k.unit_group();
        assert_eq!(g.invariant_factors(), vec![2, 2]);
        let k = k0("Z/30");
        assert_eq!(k.units().len(), 8);
        assert_eq!(k.idempotents().len(), 8);
        assert_eq!(k.nilradical().len(), 1);
    }

    #[test]
    fn section_and_h0() {
        let k = k0("Z/12");
        let v = H0Element(vec![2, 5]);
        assert_eq!(k.to_h0(&k.h0_section(&v)), v);
        let k = k0("O(-20)");
        assert_eq!(k.to_h0(&k.element(vec![3], 1)), H0Element(vec![3]));
    }

    #[test]
    fn suites_pass_on_standard_rings() {
        for name in ["Z/12", "Z/30", "Z/7", "O(-4)", "O(-20)", "O(-23)", "O(-20) loc {2,3}", "Z/2310"] {
            let k = k0(name);
            assert!(all_passed(&k0red_check(&k)), "{name}: {:?}", k0red_check(&k));
            let r = maps_fgh(&k).unwrap();
            assert!(all_passed(&r.checks), "{name}: {:?}", r.checks);
            assert_eq!(r.units, r.pic_order * r.b_order, "{name}");
            let b = b_of_k0_check(&k).unwrap();
            assert!(all_passed(&b), "{name}: {b:?}");
            assert!(all_passed(&char_zero_check(&k)), "{name}");
        }
        assert!(all_passed(&char_zero_check(&k0("0"))));
    }

    #[test]
    fn map_h_values() {
        let k = k0("Z/12");
        let r = k.base().clone();
        assert_eq!(map_h(&k, &r.zero()).unwrap(), k.one());
        assert_eq!(map_g(&k, &k.one()), r.zero());
        let e = r.residues(vec![1, 0]).unwrap();
        assert_eq!(map_h(&k, &e).unwrap().rank, vec![-1, 1]);
    }
}
