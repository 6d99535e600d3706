use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use kzero::abelian::describe;
use kzero::boolean::boolean_ring_of;
use kzero::grothendieck::engine::{describe_finite, semiring_morphisms, Completion, FiniteSemiring};
use kzero::grothendieck::k0::{k0_of_ring, maps_fgh};
use kzero::ideals::{
    class_group, cl_pic_exact_check, is_principal, local_valuations, locally_equal, parse_form,
    parse_ideal, principalize_semilocal, ClassGroup, FractionalIdeal, QuadForm,
};
use kzero::modules::{orthogonal_decomposition, parse_module, trace_ideal};
use kzero::quadratic::{is_fundamental, QuadOrder};
use kzero::report::{all_passed, Check};
use kzero::spectrum::{component_decomposition, h0_units};
use kzero::verify::{verify, Subject};
use kzero::{parse_morphism, parse_ring, ConcreteRing, Error};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "kzero", version, about = "Projective modules, class groups and K0 of small commutative rings")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a ring: components, idempotents, B(R) and H0(R).
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Class group of a fundamental discriminant, or a table over a range.
    #[command(allow_negative_numbers = true)]
    Classgroup {
        disc: Option<i64>,
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"], conflicts_with = "disc")]
        range: Option<Vec<i64>>,
    },
    /// Fractional ideal arithmetic in a maximal quadratic order.
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Projective module operations.
    Module(ModuleArgs),
    /// The ring K0(R): shape, nilradical and unit group.
    K0 { ring: String },
    /// Run a verification suite (`all` runs every suite).
    Verify {
        suite: String,
        ring: Option<String>,
        #[arg(long, conflicts_with = "ring")]
        morphism: Option<String>,
    },
    /// Grothendieck completion of a finite monoid or semiring file (JSON or TOML).
    Groth {
        file: PathBuf,
        /// Finite ring for the universal property, e.g. `Z/5`.
        #[arg(long)]
        target: Option<String>,
    },
    /// Generator of an ideal in a semilocal order.
    Principalize { ring: String, ideal: String },
}

#[derive(Subcommand)]
enum RingAction {
    Info { ring: String },
}

#[derive(Subcommand)]
enum IdealAction {
    Mul { a: String, b: String, #[command(flatten)] ring: RingArg },
    Inv { a: String, #[command(flatten)] ring: RingArg },
    /// Reduced form of an ideal or of a form literal.
    Reduce { a: String, #[command(flatten)] ring: RingArg },
    Class { a: String, #[command(flatten)] ring: RingArg },
    Principal { a: String, #[command(flatten)] ring: RingArg },
}

#[derive(Args)]
struct RingArg {
    #[arg(long)]
    ring: String,
}

#[derive(Args)]
struct ModuleArgs {
    /// One of sum, tensor, dual, end, ext, rank, trace, decomp.
    op: String,
    module: String,
    /// Second module for sum and tensor; the degree for ext.
    other: Option<String>,
    #[arg(long)]
    ring: String,
}

/// The document printed for every invocation.
#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    result: Value,
    checks: Vec<Check>,
    passed: bool,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Report {
    fn new(command: String) -> Self {
        Report { schema_version: SCHEMA_VERSION, command, result: json!({}), checks: Vec::new(), passed: true, lines: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(self).expect("serializable"));
            return;
        }
        for l in &self.lines {
            println!("{l}");
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.witness.is_empty() {
                println!("{status} {}", c.name);
            } else {
                println!("{status} {} [{}]", c.name, c.witness);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut report = Report::new(command.join(" "));
    match run(cli.command, &mut report) {
        Ok(()) => {
            report.passed = all_passed(&report.checks);
            report.print(cli.json);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let doc = json!({ "schema_version": SCHEMA_VERSION, "command": report.command, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}

fn quad_ring(name: &str) -> kzero::Result<(ConcreteRing, QuadOrder)> {
    let ring = parse_ring(name)?;
    let order = ring
        .order()
        .ok_or_else(|| Error::Unsupported(format!("{ring} is not a quadratic order")))?;
    Ok((ring, order))
}

/// Class groups built during one invocation.
#[derive(Default)]
struct ClassGroups(HashMap<i64, ClassGroup>);

impl ClassGroups {
    fn get(&mut self, disc: i64) -> kzero::Result<&ClassGroup> {
        if !self.0.contains_key(&disc) {
            self.0.insert(disc, class_group(disc)?);
        }
        Ok(&self.0[&disc])
    }
}

fn run(command: Command, r: &mut Report) -> kzero::Result<()> {
    let mut groups = ClassGroups::default();
    match command {
        Command::Ring { action: RingAction::Info { ring } } => ring_info(&parse_ring(&ring)?, &mut groups, r),
        Command::Classgroup { disc, range } => match (disc, range) {
            (Some(d), _) => {
                let cl = groups.get(d)?;
                let forms: Vec<String> = cl.forms().iter().map(QuadForm::to_string).collect();
                let structure = describe(&cl.invariant_factors());
                r.line(format!("D = {d}"));
                r.line(format!("h = {}", cl.class_number()));
                r.line(format!("Cl = {structure}"));
                r.line(format!("reduced forms: {}", forms.join(" ")));
                r.result = json!({
                    "disc": d, "class_number": cl.class_number(), "structure": structure,
                    "invariant_factors": cl.invariant_factors(), "forms": cl.forms(),
                });
                Ok(())
            }
            (None, Some(range)) => {
                let (lo, hi) = (range[0].min(range[1]), range[0].max(range[1]));
                let mut rows = Vec::new();
                let mut skipped = 0;
                r.line(format!("{:>8}  {:>4}  structure", "D", "h"));
                for d in (lo..=hi).rev() {
                    if d >= 0 || !is_fundamental(d) {
                        skipped += 1;
                        continue;
                    }
                    let cl = groups.get(d)?;
                    let structure = describe(&cl.invariant_factors());
                    r.line(format!("{d:>8}  {:>4}  {structure}", cl.class_number()));
                    rows.push(json!({ "disc": d, "class_number": cl.class_number(), "structure": structure }));
                }
                if rows.is_empty() {
                    return Err(Error::Parse(format!("no fundamental discriminant in [{lo}, {hi}]")));
                }
                r.line(format!("({skipped} values skipped: not negative fundamental discriminants)"));
                r.result = json!({ "rows": rows, "skipped": skipped });
                Ok(())
            }
            (None, None) => Err(Error::Parse("give a discriminant or --range FROM TO".into())),
        },
        Command::Ideal { action } => ideal(action, &mut groups, r),
        Command::Module(args) => module(args, r),
        Command::K0 { ring } => k0(&parse_ring(&ring)?, r),
        Command::Verify { suite, ring, morphism } => {
            let subject = match (ring, morphism) {
                (Some(s), None) => Subject::Ring(parse_ring(&s)?),
                (None, Some(m)) => Subject::Morphism(parse_morphism(&m)?),
                _ => return Err(Error::Parse("give a ring or --morphism".into())),
            };
            let suites = verify(&suite, &subject)?;
            for s in &suites {
                if let Some(why) = &s.skipped {
                    r.line(format!("SKIP {}: {why}", s.id));
                }
                for c in &s.checks {
                    let mut c = c.clone();
                    c.name = format!("{}: {}", s.id, c.name);
                    r.checks.push(c);
                }
            }
            r.result = serde_json::to_value(&suites).expect("serializable");
            Ok(())
        }
        Command::Groth { file, target } => groth(&file, target.as_deref(), r),
        Command::Principalize { ring, ideal } => {
            let (ring, order) = quad_ring(&ring)?;
            let i = parse_ideal(order, &ideal)?;
            let p = principalize_semilocal(&ring, &i)?;
            let g = FractionalIdeal::principal(order, &p.generator)?;
            let vals = local_valuations(&ring, &i)?;
            r.line(format!("ideal: {i}"));
            r.line(format!("generator: {}", p.generator));
            r.line(format!("y: {}", p.y));
            r.line(format!("valuations at primes over S: {vals:?}"));
            r.checks.push(Check::new("I = (x) in the semilocal ring", locally_equal(&ring, &i, &g)?, ""));
            r.result = json!({ "ideal": i.to_string(), "generator": p.generator.to_string(), "y": p.y.to_string(), "valuations": vals });
            Ok(())
        }
    }
}

fn ring_info(ring: &ConcreteRing, groups: &mut ClassGroups, r: &mut Report) -> kzero::Result<()> {
    let c = ring.num_components();
    let b = boolean_ring_of(ring);
    let idem: Vec<String> = b.elements.iter().map(|e| ring.render_element(e)).collect();
    let prim: Vec<String> = component_decomposition(ring).components.iter().map(|e| ring.render_element(e)).collect();
    r.line(format!("ring: {ring}"));
    let mut result = json!({ "ring": ring.to_string(), "components": c });
    match ring {
        ConcreteRing::FiniteProduct(f) => {
            let fs: Vec<String> = f.iter().map(|lf| format!("Z/{}", lf.modulus())).collect();
            r.line(format!("local factors: {}", if fs.is_empty() { "none (zero ring)".into() } else { fs.join(", ") }));
            if f.len() == 1 && f[0].is_field() {
                r.line("field");
            }
            result["factors"] = json!(fs);
        }
        _ => {
            let order = ring.order().expect("quadratic");
            let cl = groups.get(order.disc())?;
            r.line(format!("discriminant: {}", order.disc()));
            r.line(format!("class number: {}", cl.class_number()));
            result["disc"] = json!(order.disc());
        }
    }
    r.line(format!("components: {c}{}", if c == 1 { " (connected)" } else { "" }));
    r.line(format!("idempotents ({}): {}", idem.len(), idem.join(" ")));
    r.line(format!("primitive idempotents: {}", prim.join(" ")));
    r.line("B(R) addition (e + f - 2ef):");
    for row in &b.add {
        r.line(format!("  {}", row.iter().map(|&i| idem[i].clone()).collect::<Vec<_>>().join(" ")));
    }
    r.line("B(R) multiplication:");
    for row in &b.mul {
        r.line(format!("  {}", row.iter().map(|&i| idem[i].clone()).collect::<Vec<_>>().join(" ")));
    }
    r.line(format!("H0(R) = Z^{c}, |H0(R)*| = {}", h0_units(ring).len()));
    r.checks.push(Check::from_result("B(R) is a Boolean ring", b.check_axioms()));
    result["idempotents"] = json!(idem);
    result["primitive_idempotents"] = json!(prim);
    result["boolean_add"] = json!(b.add);
    result["boolean_mul"] = json!(b.mul);
    result["h0_rank"] = json!(c);
    result["h0_units"] = json!(h0_units(ring).len());
    r.result = result;
    Ok(())
}

fn ideal(action: IdealAction, groups: &mut ClassGroups, r: &mut Report) -> kzero::Result<()> {
    let (ring, a) = match &action {
        IdealAction::Mul { ring, a, .. }
        | IdealAction::Inv { ring, a }
        | IdealAction::Reduce { ring, a }
        | IdealAction::Class { ring, a }
        | IdealAction::Principal { ring, a } => (ring.ring.clone(), a.clone()),
    };
    let (_, order) = quad_ring(&ring)?;
    if let IdealAction::Reduce { .. } = action {
        if a.trim_start().starts_with("form") {
            let f = parse_form(&a)?;
            let f = QuadForm::checked(f.a, f.b, f.c, order.disc())?;
            let (red, steps) = f.reduce_counting();
            r.line(format!("{f} -> {red} in {steps} steps"));
            r.result = json!({ "input": f, "reduced": red, "steps": steps });
            return Ok(());
        }
    }
    let i = parse_ideal(order, &a)?;
    match action {
        IdealAction::Mul { b, .. } => {
            let j = parse_ideal(order, &b)?;
            let p = i.mul(&j);
            r.line(format!("{i} * {j} = {p}"));
            r.line(format!("norm: {}", p.norm()));
            r.checks.push(Check::new("N(IJ) = N(I) N(J)", p.norm() == i.norm() * j.norm(), ""));
            r.result = json!({ "product": p.to_string(), "norm": p.norm().to_string() });
        }
        IdealAction::Inv { .. } => {
            let v = i.inv();
            r.line(format!("{i}^-1 = {v}"));
            r.checks.push(Check::new("I I^-1 = R", i.mul(&v).is_unit_ideal(), ""));
            r.result = json!({ "inverse": v.to_string() });
        }
        IdealAction::Reduce { .. } => {
            let f = QuadForm::from_ideal(&i);
            let (red, steps) = f.reduce_counting();
            r.line(format!("{i} -> {f} -> {red} in {steps} steps"));
            r.result = json!({ "form": f, "reduced": red, "steps": steps });
        }
        IdealAction::Class { .. } => {
            let cl = groups.get(order.disc())?;
            let k = cl.class_of(&i);
            let form = cl.forms()[k];
            let ord = cl.group().element_order(k);
            r.line(format!("class of {i}: {form} (order {ord} in Cl = {})", describe(&cl.invariant_factors())));
            r.result = json!({ "class": form, "index": k, "order": ord });
        }
        IdealAction::Principal { .. } => match is_principal(&i) {
            Some(g) => {
                r.line(format!("{i} = ({g})"));
                let back = FractionalIdeal::principal(order, &g)?;
                r.checks.push(Check::new("generator regenerates I", back == i, ""));
                r.result = json!({ "principal": true, "generator": g.to_string() });
            }
            None => {
                r.line(format!("{i} is not principal"));
                r.result = json!({ "principal": false });
            }
        },
    }
    Ok(())
}

fn module(args: ModuleArgs, r: &mut Report) -> kzero::Result<()> {
    let ring = parse_ring(&args.ring)?;
    let m = parse_module(&ring, &args.module)?;
    let other = || -> kzero::Result<_> {
        let o = args.other.as_deref().ok_or_else(|| Error::Parse(format!("`{}` needs a second argument", args.op)))?;
        Ok(o.to_string())
    };
    let out = match args.op.as_str() {
        "sum" => m.direct_sum(&parse_module(&ring, &other()?)?)?.to_string(),
        "tensor" => m.tensor(&parse_module(&ring, &other()?)?)?.to_string(),
        "dual" => m.dual().to_string(),
        "end" => m.end_module().to_string(),
        "ext" => {
            let k: u64 = other()?.parse().map_err(|_| Error::Parse("degree must be a natural number".into()))?;
            m.exterior_power(k)?.to_string()
        }
        "rank" => m.rank_map().to_string(),
        "trace" => ring.render_element(&trace_ideal(&ring, &m)?),
        "decomp" => {
            let d = orthogonal_decomposition(&ring, &m)?;
            let idems: Vec<String> = d.idems.iter().map(|e| ring.render_element(e)).collect();
            let ann: Vec<String> = d.annihilators.iter().map(|e| ring.render_element(e)).collect();
            r.checks.push(Check::from_result("orthogonal decomposition", d.check(&ring)));
            r.line(format!("annihilators of exterior powers: {}", ann.join(" ")));
            idems.join(" ")
        }
        op => return Err(Error::Parse(format!("unknown module operation `{op}`"))),
    };
    r.lines.insert(0, format!("{}: {out}", args.op));
    r.result = json!({ "op": args.op, "result": out });
    Ok(())
}

fn k0(ring: &ConcreteRing, r: &mut Report) -> kzero::Result<()> {
    let k = k0_of_ring(ring)?;
    let units = maps_fgh(&k)?;
    let nil = k.nilradical();
    let idem: Vec<String> = k.idempotents().iter().map(|x| k.render(x)).collect();
    let pic = cl_pic_exact_check(ring)?;
    r.line(k.to_string());
    r.line(format!("nilradical order: {}", nil.len()));
    r.line(format!("reduced: {}", nil.len() == 1));
    r.line(format!("Pic = {}", pic.structure));
    r.line(format!("units: {} elements, K0* = {}", units.units, units.structure));
    r.line(format!("idempotents: {}", idem.join(" ")));
    r.checks.extend(units.checks.iter().cloned());
    r.result = json!({
        "ring": ring.to_string(), "shape": k.shape_name(), "nilradical_order": nil.len(),
        "pic": pic.structure, "units": units.units, "unit_structure": units.structure, "idempotents": idem,
    });
    Ok(())
}

fn groth(file: &PathBuf, target: Option<&str>, r: &mut Report) -> kzero::Result<()> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let is_toml = file.extension().is_some_and(|e| e == "toml");
    let s = FiniteSemiring::parse(&text, is_toml)?;
    let d = describe_finite(&s)?;
    let c = Completion::new(&s)?;
    let mode = format!("{:?}", c.mode()).to_lowercase();
    r.line(format!("elements: {}, mode: {mode}", s.len()));
    r.line(format!("completion: order {}, {}", d["order"], d["structure"]));
    r.line(format!("classes: {}", d["classes"]));
    let gens: Vec<String> = (0..s.len())
        .map(|i| {
            let n = c.normal_form(&c.gamma(&i));
            format!("{} -> [{}, {}]", s.name(i), s.name(n.p), s.name(n.q))
        })
        .collect();
    r.line(format!("normal forms of generators: {}", gens.join(", ")));
    let mut result = json!({
        "elements": s.len(), "mode": mode, "order": d["order"].parse::<usize>().expect("number"),
        "structure": d["structure"], "classes": d["classes"], "generators": gens,
    });
    if s.has_mul() {
        let zero = c.is_zero_ring();
        if zero {
            r.line("completion is the zero ring");
        }
        result["zero_ring"] = json!(zero);
    }
    if let Some(t) = target {
        let tr = parse_ring(t)?;
        let morphisms = semiring_morphisms(&s, &tr, 1 << 22)?;
        r.line(format!("semiring maps to {tr}: {}", morphisms.len()));
        let mut maps = Vec::new();
        for phi in &morphisms {
            // theta[a, b] = phi(a) - phi(b) on every class
            let classes = c.classes().expect("finite");
            let theta: Vec<String> = classes
                .iter()
                .map(|x| {
                    let v = tr.sub(&phi[x.p], &phi[x.q]).expect("elements of the target");
                    format!("[{}, {}] -> {}", s.name(x.p), s.name(x.q), tr.render_element(&v))
                })
                .collect();
            r.line(format!("  theta: {}", theta.join(", ")));
            let restricts = (0..s.len()).all(|a| {
                let g = c.gamma(&a);
                tr.sub(&phi[g.p], &phi[g.q]).ok().as_ref() == Some(&phi[a])
            });
            r.checks.push(Check::new("theta . gamma = phi", restricts, ""));
            maps.push(theta);
        }
        result["target"] = json!(tr.to_string());
        result["theta"] = json!(maps);
    }
    r.result = result;
    Ok(())
}
