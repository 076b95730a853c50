//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orthomod::bilogic::{AttributeClass, AttributeKind, BilogicObject, Scenario, ScenarioOptions};
use orthomod::formula::{parse, pretty_print};
use orthomod::laws::{
    check_distributivity, distributivity_sides, excluded_middle_demo, find_distributivity_counterexample,
    random_modular_trials, random_orthomodular_trials,
};
use orthomod::sampling::{derive_seed, random_subspace, rng_from_seed, seed_for_name, Field};
use orthomod::{Formula, NumericPolicy, Subspace, Vector};
use rand::Rng;

/// Projector Frobenius distance at which two subspaces count as equal.
const EQ_TOL: f64 = 1e-8;
const MEMBERSHIP_TOL: f64 = 1e-8;
const RANK_CUTOFF_REL: f64 = 1e-10;
const LAW_TRIALS: usize = 1000;
const LAW_DIMS: std::ops::RangeInclusive<usize> = 2..=8;
const LAW_TIME_LIMIT: Duration = Duration::from_secs(30);
const COUNTEREXAMPLE_SEEDS: u64 = 100;
const COUNTEREXAMPLE_MIN_FOUND: usize = 95;
const EXCLUDED_MIDDLE_SAMPLES: u64 = 500;
const BILOGIC_SCENARIOS: u64 = 200;
const PARSER_ASTS: usize = 10_000;
const PARSER_MAX_DEPTH: usize = 8;
const DEMO_TIME_LIMIT: Duration = Duration::from_secs(10);
const SEED: u64 = 20240917;

fn policy() -> NumericPolicy {
    NumericPolicy::new(RANK_CUTOFF_REL, EQ_TOL, MEMBERSHIP_TOL).unwrap()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn orthomodular() -> Outcome {
    let p = policy();
    let start = Instant::now();
    for n in LAW_DIMS {
        for field in [Field::Real, Field::Complex] {
            let seed = derive_seed(SEED, n as u64);
            let r = random_orthomodular_trials(n, LAW_TRIALS, seed, field, &p).map_err(err)?;
            ensure(r.instances == LAW_TRIALS && r.holds, || {
                let d = r.witness.as_ref().map_or(0.0, |w| w.distance);
                format!("n={n} {field:?}: {}/{} hold, distance {d:e}", r.passed, r.instances)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LAW_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{LAW_TRIALS} pairs per n in 2..=8, real and complex, in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn modular() -> Outcome {
    let p = policy();
    let start = Instant::now();
    for n in LAW_DIMS {
        for field in [Field::Real, Field::Complex] {
            let seed = derive_seed(SEED ^ 0xA5A5, n as u64);
            let r = random_modular_trials(n, LAW_TRIALS, seed, field, &p).map_err(err)?;
            ensure(r.instances == LAW_TRIALS && r.holds, || {
                format!("n={n} {field:?}: {}/{} hold", r.passed, r.instances)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LAW_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{LAW_TRIALS} triples per n in 2..=8, real and complex, in {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn line(v: &[f64]) -> Subspace {
    Subspace::span(v.len(), &[Vector::from_real(v).unwrap()], &policy()).unwrap()
}

fn distributivity() -> Outcome {
    let p = policy();
    let (x, y, z) = (line(&[1.0, 0.0]), line(&[0.0, 1.0]), line(&[1.0, 1.0]));
    let r = check_distributivity(&x, &y, &z, &p).map_err(err)?;
    let w = r.witness.ok_or("fixed triple satisfied distributivity")?;
    ensure((w.lhs.dim(), w.rhs.dim()) == (1, 0), || {
        format!("fixed witness dims {} vs {}", w.lhs.dim(), w.rhs.dim())
    })?;
    let mut found = [0usize; 2];
    for seed in 0..COUNTEREXAMPLE_SEEDS {
        for (slot, field) in [Field::Real, Field::Complex].into_iter().enumerate() {
            if let Some(w) = find_distributivity_counterexample(2, 100, seed, field, &p).map_err(err)? {
                let z = w.z.as_ref().expect("distributivity witnesses carry z");
                ensure(!check_distributivity(&w.x, &w.y, z, &p).map_err(err)?.holds, || {
                    format!("seed {seed}: returned witness satisfies the law")
                })?;
                found[slot] += 1;
            }
        }
    }
    ensure(found.iter().all(|&f| f >= COUNTEREXAMPLE_MIN_FOUND), || {
        format!("witnesses found for {found:?} of {COUNTEREXAMPLE_SEEDS} seeds (real, complex)")
    })?;
    Ok(format!(
        "fixed witness dims 1 vs 0; search found witnesses for {}/{COUNTEREXAMPLE_SEEDS} (real) and {}/{COUNTEREXAMPLE_SEEDS} (complex) seeds",
        found[0], found[1]
    ))
}

fn excluded_middle() -> Outcome {
    let p = policy();
    let s = line(&[1.0, 0.0]);
    let v = Vector::from_real(&[1.0, 1.0]).unwrap();
    let em = excluded_middle_demo(&s, &v, &p).map_err(err)?;
    ensure(!em.in_s && !em.in_complement && em.in_join, || format!("{em:?}"))?;
    for i in 0..EXCLUDED_MIDDLE_SAMPLES {
        let mut rng = rng_from_seed(derive_seed(SEED, i));
        let n = rng.random_range(1..=8);
        let k = rng.random_range(0..=n);
        let field = if i % 2 == 0 { Field::Real } else { Field::Complex };
        let s = random_subspace(n, k, field, derive_seed(SEED ^ 1, i), &p).map_err(err)?;
        let j = s.join(&s.complement(&p), &p).map_err(err)?;
        ensure(j.is_full() && j.equals(&Subspace::full(n), &p).map_err(err)?, || {
            format!("sample {i}: join of S (n={n}, k={k}) and S' has dim {}", j.dim())
        })?;
    }
    Ok(format!(
        "v in neither p nor p' but in p | p'; S | S' full for {EXCLUDED_MIDDLE_SAMPLES} random S"
    ))
}

fn coord(mask: u8) -> Subspace {
    Subspace::coordinate(4, (0..4).filter(|i| mask & (1 << i) != 0))
}

fn coordinate_oracle() -> Outcome {
    let p = policy();
    let subs: Vec<Subspace> = (0u8..16).map(coord).collect();
    let same = |s: &Subspace, mask: u8| -> Result<bool, String> {
        Ok(s.dim() == mask.count_ones() as usize && s.equals(&subs[mask as usize], &p).map_err(err)?)
    };
    for a in 0u8..16 {
        let c = subs[a as usize].complement(&p);
        ensure(same(&c, !a & 0xF)?, || format!("complement of {a:04b}"))?;
        for b in 0u8..16 {
            let (sa, sb) = (&subs[a as usize], &subs[b as usize]);
            ensure(same(&sa.meet(sb, &p).map_err(err)?, a & b)?, || format!("meet {a:04b} {b:04b}"))?;
            ensure(same(&sa.join(sb, &p).map_err(err)?, a | b)?, || format!("join {a:04b} {b:04b}"))?;
        }
    }
    for a in 0u8..16 {
        for b in 0u8..16 {
            for c in 0u8..16 {
                let (lhs, rhs) =
                    distributivity_sides(&subs[a as usize], &subs[b as usize], &subs[c as usize], &p).map_err(err)?;
                ensure(same(&lhs, a & (b | c))?, || format!("lhs {a:04b} {b:04b} {c:04b}"))?;
                ensure(same(&rhs, (a & b) | (a & c))?, || format!("rhs {a:04b} {b:04b} {c:04b}"))?;
            }
        }
    }
    Ok("16 complements, 256 pairs, 4096 triples agree with index sets".into())
}

fn mask_name(mask: u8) -> String {
    format!("s{mask:04b}")
}

fn bilogic_identities() -> Outcome {
    // Three objects with the same attribute set, listed in different orders.
    let sets = [["s0011", "s0110", "s1010"], ["s1010", "s0011", "s0110"], ["s0110", "s1010", "s0011"]];
    let objects: Vec<BilogicObject> = sets
        .iter()
        .enumerate()
        .map(|(i, attrs)| BilogicObject::new(format!("p{}", i + 1), *attrs))
        .collect();
    let attributes = (0u8..16)
        .map(|m| AttributeClass::new(mask_name(m), AttributeKind::Regular, coord(m)))
        .collect();
    let options = ScenarioOptions {
        allow_unequal_dims: true,
        ..Default::default()
    };
    let scenario = Scenario::new(4, attributes, objects, options).map_err(err)?;
    let classes = scenario.symmetric_classes(scenario.objects()).map_err(err)?;
    ensure(classes == vec![vec!["p1", "p2", "p3"]], || format!("classes {classes:?}"))?;

    // Every combination of one to four distinct coordinate attributes.
    let (mut full, mut proper) = (0, 0);
    let mut combos = 0;
    for bits in 1u32..(1 << 16) {
        if bits.count_ones() > 4 {
            continue;
        }
        combos += 1;
        let masks: Vec<u8> = (0u8..16).filter(|m| bits & (1 << m) != 0).collect();
        let obj = BilogicObject::new("o", masks.iter().map(|&m| mask_name(m)));
        let check = scenario.negation_identity_check(&obj).map_err(err)?;
        let join_mask = masks.iter().fold(0, |acc, m| acc | m);
        let join_is_full = join_mask == 0xF;
        ensure(check.generalized_equal, || format!("{masks:?}: generalize(p) != generalize(!p)"))?;
        ensure(check.complement_contained == join_is_full, || {
            format!("{masks:?}: containment {} but join full {join_is_full}", check.complement_contained)
        })?;
        ensure(scenario.generalize(&obj).map_err(err)?.is_full() == join_is_full, || {
            format!("{masks:?}: generalization disagrees with index-set union")
        })?;
        if join_is_full {
            full += 1;
        } else {
            proper += 1;
        }
    }
    ensure(full > 0 && proper > 0, || "one iff direction never exercised".into())?;
    Ok(format!(
        "one class {{p1, p2, p3}}; iff verified on {combos} attribute sets ({full} full, {proper} proper)"
    ))
}

fn random_bilogic_scenario(index: u64) -> Result<Scenario, String> {
    let seed = derive_seed(SEED, 7000 + index);
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(3..=6);
    let k = rng.random_range(1..n);
    let field = if rng.random_bool(0.5) { Field::Real } else { Field::Complex };
    let p = policy();
    let names = ["u", "v", "w", "x", "y"];
    let attributes = names
        .iter()
        .map(|name| {
            random_subspace(n, k, field, seed_for_name(seed, name), &p)
                .map(|s| AttributeClass::new(*name, AttributeKind::Regular, s))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let objects = vec![
        BilogicObject::new("a", ["u", "v"]),
        BilogicObject::new("b", ["w", "x", "y"]),
        BilogicObject::new("c", ["x"]),
    ];
    let options = ScenarioOptions {
        field,
        policy: p,
        seed,
        allow_unequal_dims: false,
    };
    Scenario::new(n, attributes, objects, options).map_err(err)
}

fn condensation_displacement() -> Outcome {
    let p = policy();
    for i in 0..BILOGIC_SCENARIOS {
        let s = random_bilogic_scenario(i)?;
        let n = s.ambient_dim();
        let fail = |what: &str| format!("scenario {i} (n={n}): {what}");
        for a in s.objects() {
            let ra = s.asymmetric_repr(a).map_err(err)?;
            ensure(s.condense(a, a).map_err(err)?.equals(&ra, &p).map_err(err)?, || {
                fail(&format!("condense({0},{0}) != repr({0})", a.name))
            })?;
            for b in s.objects() {
                let ab = s.condense(a, b).map_err(err)?;
                ensure(ra.is_contained_in(&ab, &p).map_err(err)?, || {
                    fail(&format!("repr({}) not inside condense({},{})", a.name, a.name, b.name))
                })?;
                let empty = s.displace(a, b, &[]).map_err(err)?;
                ensure(empty.equals(&ra, &p).map_err(err)?, || {
                    fail(&format!("empty displacement {} <- {}", a.name, b.name))
                })?;
                let all: Vec<&str> = b.attributes.iter().map(String::as_str).collect();
                let whole = s.displace(a, b, &all).map_err(err)?;
                ensure(whole.equals(&ab, &p).map_err(err)?, || {
                    fail(&format!("full displacement {} <- {}", a.name, b.name))
                })?;
            }
        }
    }
    Ok(format!("{BILOGIC_SCENARIOS} random scenarios in dims 3..=6"))
}

fn random_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    const VARS: [&str; 6] = ["x1", "x2", "x3", "p", "q", "long_name_9"];
    let leaf = depth == 0 || rng.random_bool(0.2);
    if leaf {
        return match rng.random_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::var(VARS[rng.random_range(0..VARS.len())]),
        };
    }
    match rng.random_range(0..3) {
        0 => Formula::negate(random_formula(rng, depth - 1)),
        1 => Formula::and(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => Formula::or(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
    }
}

fn parser() -> Outcome {
    let mut rng = rng_from_seed(SEED);
    let mut deepest = 0;
    for i in 0..PARSER_ASTS {
        let f = random_formula(&mut rng, PARSER_MAX_DEPTH);
        deepest = deepest.max(f.depth());
        let printed = pretty_print(&f);
        let once = parse(&printed).map_err(|e| format!("ast {i}: `{printed}`: {e}"))?;
        ensure(once == f, || format!("ast {i}: `{printed}` parsed to {}", once.to_ast_string()))?;
        let again = parse(&pretty_print(&once)).map_err(err)?;
        ensure(again == once && pretty_print(&again) == printed, || format!("ast {i}: unstable"))?;
    }
    ensure(deepest == PARSER_MAX_DEPTH, || format!("deepest generated AST {deepest}"))?;
    let shapes = [
        ("x1 & x2 & x3", "And(And(Var(x1), Var(x2)), Var(x3))"),
        ("x1 | x2 | x3", "Or(Or(Var(x1), Var(x2)), Var(x3))"),
        ("(x1 & x2) | (x3 & x4)", "Or(And(Var(x1), Var(x2)), And(Var(x3), Var(x4)))"),
    ];
    for (text, shape) in shapes {
        let got = parse(text).map_err(err)?.to_ast_string();
        ensure(got == shape, || format!("`{text}` parsed to {got}"))?;
    }
    Ok(format!("{PARSER_ASTS} ASTs of depth <= {PARSER_MAX_DEPTH} round-trip; 3 reference shapes match"))
}

fn demo_json() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orthomod"))
        .args(["--json", "--seed", "7", "demo"])
        .output()
        .map_err(err)?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    Ok(out.stdout)
}

fn cli_determinism() -> Outcome {
    let start = Instant::now();
    let first = demo_json()?;
    let second = demo_json()?;
    let elapsed = start.elapsed();
    ensure(first == second, || "demo JSON differs between runs".into())?;
    let value: serde_json::Value = serde_json::from_slice(&first).map_err(err)?;
    let scenarios = value["result"]["scenarios"].as_array().map_or(0, Vec::len);
    ensure(scenarios == 5, || format!("{scenarios} demo scenarios in report"))?;
    ensure(elapsed < DEMO_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} identical bytes over 2 runs, {:.2} s total",
        first.len(),
        elapsed.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("orthomodular law", orthomodular),
        ("modular law", modular),
        ("distributivity failure", distributivity),
        ("excluded middle", excluded_middle),
        ("coordinate-subspace oracle", coordinate_oracle),
        ("bi-logic identities", bilogic_identities),
        ("condensation and displacement", condensation_displacement),
        ("parser round trip", parser),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
