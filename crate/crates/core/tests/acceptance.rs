//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kzero::grothendieck::engine::{
    groth_ring, universal_extend, Completion, FiniteSemiring, Integers, Naturals, Pair,
};
use kzero::grothendieck::k0::{b_of_k0_check, k0_of_ring, k0red_check, maps_fgh, K0Element, K0Ring};
use kzero::grothendieck::lifting::lifts_idempotents;
use kzero::grothendieck::oracle::oracle_check;
use kzero::ideals::{class_group, cl_pic_exact_check, principalize_semilocal, FractionalIdeal};
use kzero::modules::{orthogonal_decomposition, ProjModule};
use kzero::report::Check;
use kzero::verify::{b_h0_units, idem_formula, registered_morphisms};
use kzero::{parse_morphism, parse_ring, ConcreteRing, RingElement};

const CLASS_NUMBER_LIMIT: Duration = Duration::from_secs(1);
const B_H0_LIMIT: Duration = Duration::from_secs(1);
const IDEM_FORMULA_LIMIT: Duration = Duration::from_secs(5);
const PRINCIPALIZE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(5);
const RANK_VECTORS: usize = 200;
const RANK_SEED: u64 = 0x6b30;
const STANDARD_RINGS: [&str; 7] = ["Z/12", "Z/30", "Z/7", "O(-4)", "O(-20)", "O(-23)", "O(-20) loc {2,3}"];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ensure_checks(what: &str, checks: &[Check]) -> Result<(), String> {
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} [{}]", c.name, c.witness)),
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let out = f();
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok((out, t))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reduced primitive forms by a direct scan over `a <= sqrt(|D|/3)`.
fn class_number_oracle(d: i64) -> usize {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

fn c01_class_numbers() -> Outcome {
    let mut out = Vec::new();
    for (d, expected) in [(-3, 1), (-4, 1), (-20, 2), (-23, 3), (-47, 5)] {
        let (cl, t) = timed(CLASS_NUMBER_LIMIT, &format!("h({d})"), || class_group(d).expect("fundamental"))?;
        let oracle = class_number_oracle(d);
        ensure(
            cl.class_number() == expected && oracle == expected,
            format!("h({d}): library {}, scan {oracle}, expected {expected}", cl.class_number()),
        )?;
        out.push(format!("h({d})={expected} in {:.1}ms", t.as_secs_f64() * 1e3));
    }
    Ok(out.join(", "))
}

/// Number of distinct prime factors of `n`.
fn omega(mut n: u64) -> u32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            k += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    k + u32::from(n > 1)
}

fn c02_boolean_units() -> Outcome {
    let mut out = Vec::new();
    for name in ["Z/12", "Z/30", "Z/2310", "O(-20)"] {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let (checks, _) = timed(B_H0_LIMIT, name, || b_h0_units(&ring).expect("supported"))?;
        ensure_checks(name, &checks)?;
        let expected = 1usize << ring.num_components();
        ensure(ring.idempotents().len() == expected, format!("{name}: |B| != 2^c"))?;
        if let Some(n) = name.strip_prefix("Z/").and_then(|n| n.parse::<u64>().ok()) {
            let brute = (0..n).filter(|e| (e * e) % n == *e).count();
            ensure(brute == 1 << omega(n), format!("{name}: {brute} idempotents by scan"))?;
            ensure(brute == expected, format!("{name}: scan {brute}, library {expected}"))?;
        }
        out.push(format!("{name}: {expected}"));
    }
    Ok(out.join(", "))
}

/// Indicator of `e != 0 mod p` for each prime `p | n`, `n` squarefree.
fn support_mod(n: u64, e: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            primes.push(p);
            m /= p;
        }
        p += 1;
    }
    primes.iter().map(|p| u64::from(e % p != 0)).collect()
}

fn formula_oracle(n: u64) -> usize {
    let idem: Vec<u64> = (0..n).filter(|e| (e * e) % n == *e).collect();
    let mut ok = 0;
    for &e in &idem {
        for &f in &idem {
            let lhs: Vec<u64> = support_mod(n, e).iter().zip(support_mod(n, f)).map(|(a, b)| a + b).collect();
            let ef = (e * f) % n;
            let xor = (e + f + 2 * (n - ef)) % n;
            let rhs: Vec<u64> = support_mod(n, ef)
                .iter()
                .zip(support_mod(n, xor))
                .map(|(a, b)| 2 * a + b)
                .collect();
            ok += usize::from(lhs == rhs);
        }
    }
    ok
}

fn c03_idempotent_formula() -> Outcome {
    let mut out = Vec::new();
    for (name, n, pairs) in [("Z/30", 30u64, 64usize), ("Z/2310", 2310, 1024)] {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let (checks, t) = timed(IDEM_FORMULA_LIMIT, name, || idem_formula(&ring).expect("finite ring"))?;
        ensure_checks(name, &checks)?;
        ensure(checks[0].witness == format!("{pairs} pairs"), format!("{name}: {}", checks[0].witness))?;
        ensure(formula_oracle(n) == pairs, format!("{name}: integer oracle disagrees"))?;
        out.push(format!("{name}: {pairs} pairs in {:.0}ms", t.as_secs_f64() * 1e3));
    }
    Ok(out.join(", "))
}

/// The idempotent of `Z/n` (squarefree `n`) that is 1 mod `p_i` exactly
/// when `mask[i]`.
fn crt_idempotent(n: u64, mask: &[bool]) -> u64 {
    (0..n)
        .find(|&x| support_mod(n, x).iter().zip(mask).all(|(&s, &m)| (s == 1) == m) && (x * x) % n == x)
        .expect("CRT")
}

fn c04_rank_decomposition() -> Outcome {
    let ring = parse_ring("Z/2310").map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(RANK_SEED);
    for _ in 0..RANK_VECTORS {
        let v: Vec<u64> = (0..5).map(|_| rng.gen_range(0..=4)).collect();
        let m = ProjModule::Ranks(v.clone());
        let d = orthogonal_decomposition(&ring, &m).map_err(|e| e.to_string())?;
        d.check(&ring).map_err(|w| format!("{m}: {w}"))?;
        let n = *v.iter().max().unwrap_or(&0);
        for k in 0..=n {
            let mask: Vec<bool> = v.iter().map(|&r| r == k).collect();
            let e = ring.to_integer(&d.idems[k as usize]);
            ensure(e == Some(crt_idempotent(2310, &mask)), format!("{m}: e_{k}"))?;
        }
        for k in 0..=n + 1 {
            // Lambda^k vanishes exactly where the rank is below k
            let mask: Vec<bool> = v.iter().map(|&r| r < k).collect();
            let ann = ring.to_integer(&d.annihilators[k as usize]);
            ensure(ann == Some(crt_idempotent(2310, &mask)), format!("{m}: annihilator {k}"))?;
        }
    }
    Ok(format!("{RANK_VECTORS} rank vectors over Z/2310, seed {RANK_SEED:#x}"))
}

fn c05_cl_pic() -> Outcome {
    let mut out = Vec::new();
    for (name, h) in [("O(-4)", 1usize), ("O(-20)", 2), ("O(-23)", 3), ("Z/12", 1)] {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let r = cl_pic_exact_check(&ring).map_err(|e| e.to_string())?;
        ensure_checks(name, &r.checks)?;
        if let Some(o) = ring.order() {
            ensure(class_number_oracle(o.disc()) == h, format!("{name}: oracle"))?;
        }
        ensure(r.cl_order == h && r.pic_order == h, format!("{name}: |Cl| = {}, |Pic| = {}", r.cl_order, r.pic_order))?;
        out.push(format!("{name}: {}", r.structure));
    }
    Ok(out.join(", "))
}

/// `(x) I^-1` has no prime factor over 2 or 3 iff, written as
/// `(u/d) (a, b + w)` with `u/d` reduced, `u^2 a d` is prime to 6.
fn unit_at_six(j: &FractionalIdeal) -> bool {
    let s = j.scale();
    let (u, d) = (*s.numer(), *s.denom());
    let v = u * u * j.a() * d;
    v % 2 != 0 && v % 3 != 0
}

fn c06_principalize() -> Outcome {
    let mut count = 0;
    let mut worst = Duration::ZERO;
    for d in [-20i64, -23] {
        let ring = ConcreteRing::semilocal(d, [2, 3]).map_err(|e| e.to_string())?;
        let order = ring.order().expect("quadratic");
        for rep in class_group(d).map_err(|e| e.to_string())?.representatives() {
            let (p, t) = timed(PRINCIPALIZE_LIMIT, &format!("{rep} in O({d})"), || {
                principalize_semilocal(&ring, &rep).expect("invertible ideal")
            })?;
            worst = worst.max(t);
            let gen = FractionalIdeal::principal(order, &p.generator).map_err(|e| e.to_string())?;
            let lib = kzero::ideals::locally_equal(&ring, &rep, &gen).map_err(|e| e.to_string())?;
            ensure(lib && unit_at_six(&gen.mul(&rep.inv())), format!("O({d}): {rep} vs ({})", p.generator))?;
            count += 1;
        }
    }
    Ok(format!("{count} representatives, slowest {:.1}ms", worst.as_secs_f64() * 1e3))
}

/// Elements with `|r| <= bound` on each component and every class.
fn k0_box(k: &K0Ring, bound: i64) -> Vec<K0Element> {
    let w = k.one().rank.len();
    let h = k.nilradical().len();
    let mut ranks = vec![Vec::new()];
    for _ in 0..w {
        ranks = ranks
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    ranks
        .into_iter()
        .flat_map(|r| (0..h).map(move |c| K0Element { rank: r.clone(), class: c }))
        .collect()
}

fn c07_k0_reduced() -> Outcome {
    for name in STANDARD_RINGS {
        let k = k0_of_ring(&parse_ring(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure_checks(name, &k0red_check(&k))?;
    }
    let k = k0_of_ring(&parse_ring("O(-20)").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let nil: Vec<K0Element> = k0_box(&k, 5).into_iter().filter(|x| k.mul(x, x) == k.zero()).collect();
    ensure(nil.len() == 2 && k.nilradical().len() == 2, format!("nilradical of K0(O(-20)): {}", nil.len()))?;
    Ok(format!("{} rings; |nil K0(O(-20))| = 2", STANDARD_RINGS.len()))
}

fn brute_units(k: &K0Ring, bound: i64) -> Vec<K0Element> {
    let b = k0_box(k, bound);
    b.iter().filter(|x| b.iter().any(|y| k.mul(x, y) == k.one())).cloned().collect()
}

fn c08_units_split() -> Outcome {
    let mut out = Vec::new();
    for (name, units, structure) in [("O(-20)", 4usize, "Z/2 x Z/2"), ("Z/30", 8, "Z/2 x Z/2 x Z/2")] {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let k = k0_of_ring(&ring).map_err(|e| e.to_string())?;
        let r = maps_fgh(&k).map_err(|e| e.to_string())?;
        ensure_checks(name, &r.checks)?;
        let brute = brute_units(&k, 2);
        ensure(brute.len() == units && r.units == units, format!("{name}: {} units by search", brute.len()))?;
        ensure(brute.iter().all(|u| k.mul(u, u) == k.one()), format!("{name}: a unit of order > 2"))?;
        ensure(r.structure == structure, format!("{name}: K0* = {}", r.structure))?;
        ensure(r.pic_order * r.b_order == units, format!("{name}: |Pic||B| != |K0*|"))?;
        out.push(format!("{name}: K0* = {structure}"));
    }
    Ok(out.join(", "))
}

fn c09_boolean_k0() -> Outcome {
    for name in STANDARD_RINGS {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let k = k0_of_ring(&ring).map_err(|e| e.to_string())?;
        ensure_checks(name, &b_of_k0_check(&k).map_err(|e| e.to_string())?)?;
        let brute = k0_box(&k, 2).into_iter().filter(|x| k.mul(x, x) == *x).count();
        ensure(brute == ring.idempotents().len(), format!("{name}: {brute} idempotents of K0 by search"))?;
    }
    Ok(format!("{} rings", STANDARD_RINGS.len()))
}

fn c10_lifting() -> Outcome {
    let q = lifts_idempotents(&parse_morphism("quot: Z/4 -> Z/2").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(q.ring_level && q.k0_level, "Z/4 -> Z/2 should lift")?;
    // idempotents of Z/4 are 0, 1 and reduce onto both idempotents of Z/2
    let z4: Vec<u64> = (0..4).filter(|e| e * e % 4 == *e).map(|e| e % 2).collect();
    ensure(z4 == vec![0, 1], "scan of Z/4")?;
    let d = lifts_idempotents(&parse_morphism("diag: Z/2 -> Z/2 x Z/2").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(!d.ring_level && !d.k0_level, "diagonal should fail to lift")?;
    let mut count = 2;
    for name in ["Z/12", "Z/30", "Z/7", "Z/8 x Z/9", "Z/4 x Z/2"] {
        for f in registered_morphisms(&parse_ring(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? {
            let r = lifts_idempotents(&f).map_err(|e| e.to_string())?;
            ensure(r.consistent(), format!("{f}: ring {} vs K0 {}", r.ring_level, r.k0_level))?;
            count += 1;
        }
    }
    Ok(format!("{count} morphisms agree at ring and K0 level"))
}

fn c11_engine() -> Outcome {
    let g = groth_ring(&Naturals).map_err(|e| e.to_string())?;
    let phi = |n: &u64| *n as i128;
    let sample: Vec<u64> = (0..=50).collect();
    let to_z = universal_extend(&Naturals, &Integers, &phi, &sample).map_err(|e| e.to_string())?;
    let of_z = |n: i64| if n >= 0 { Pair::new(n as u64, 0) } else { Pair::new(0, n.unsigned_abs()) };
    for m in -50i64..=50 {
        ensure(to_z(&of_z(m)) == m as i128, format!("round trip at {m}"))?;
        for n in -50i64..=50 {
            let (x, y) = (of_z(m), of_z(n));
            ensure(g.equivalent(&x, &y) == (m == n), format!("injectivity at {m}, {n}"))?;
            ensure(to_z(&g.add(&x, &y)) == (m + n) as i128, format!("sum at {m}, {n}"))?;
            ensure(to_z(&g.mul(&x, &y)) == (m * n) as i128, format!("product at {m}, {n}"))?;
        }
    }
    let b = FiniteSemiring::boolean();
    let bc = Completion::new(&b).map_err(|e| e.to_string())?;
    ensure(bc.is_zero_ring() && bc.classes().map(|c| c.len()) == Some(1), "Boolean completion")?;
    let z5 = ConcreteRing::integers_mod(5).map_err(|e| e.to_string())?;
    let phi5 = |n: &u64| z5.from_int(*n as i64);
    let sample: Vec<u64> = (0..=20).collect();
    let theta = universal_extend(&Naturals, &z5, &phi5, &sample).map_err(|e| e.to_string())?;
    for m in 0..=20u64 {
        for n in 0..=20u64 {
            let expected = RingElement::Residues(vec![((m as i64 - n as i64).rem_euclid(5)) as u64]);
            ensure(theta(&Pair::new(m, n)) == expected, format!("theta[{m}, {n}]"))?;
        }
    }
    Ok("N -> Z on |n| <= 50, Boolean -> 0, [m,n] -> m-n in Z/5 for m,n <= 20".into())
}

fn c12_oracle() -> Outcome {
    let mut out = Vec::new();
    for name in ["Z/12", "O(-20)"] {
        let ring = parse_ring(name).map_err(|e| e.to_string())?;
        let (checks, t) = timed(ORACLE_LIMIT, name, || oracle_check(&ring).expect("supported ring"))?;
        ensure_checks(name, &checks)?;
        out.push(format!("{name} in {:.0}ms", t.as_secs_f64() * 1e3));
    }
    Ok(out.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("class numbers by reduced forms", c01_class_numbers),
        ("B(R) = H0(R)* by e -> phi_e", c02_boolean_units),
        ("idempotent direct-sum formula", c03_idempotent_formula),
        ("orthogonal decomposition by rank", c04_rank_decomposition),
        ("Cl -> Pic isomorphism", c05_cl_pic),
        ("semilocal principalization", c06_principalize),
        ("K0_red = H0", c07_k0_reduced),
        ("K0* = Pic + B", c08_units_split),
        ("B(R) = B(K0(R))", c09_boolean_k0),
        ("lifting idempotents at ring and K0 level", c10_lifting),
        ("Grothendieck completion engine", c11_engine),
        ("generic completion = closed-form K0", c12_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
