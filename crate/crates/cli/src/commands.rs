use std::path::Path;

use orthomod::bilogic::{BilogicError, Scenario};
use orthomod::formula::{eval_subspace, parse};
use orthomod::laws::{
    check_distributivity, check_modular, check_orthomodular, find_distributivity_counterexample,
    random_modular_trials, random_orthomodular_trials, Law, LawError, LawReport, LawWitness,
};
use orthomod::sampling::Field;
use orthomod::{Formula, NumericPolicy, Subspace};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cli::{BilogicCommand, FieldArg, GlobalOpts};
use crate::report::{fmt_sig, subspace_json, subspace_text, Report};
use crate::scenario_file::{load_scenario, LoadOptions, LoadedScenario};

/// Failures that map to exit status 1.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct DomainError(pub String);

impl DomainError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for DomainError {
            fn from(e: $t) -> Self {
                DomainError(e.to_string())
            }
        })*
    };
}

domain_from!(
    crate::scenario_file::ScenarioError,
    orthomod::ParseError,
    orthomod::EvalError,
    orthomod::SubspaceError,
    BilogicError,
    LawError
);

type Result<T> = std::result::Result<T, DomainError>;

fn load(path: &Path, g: &GlobalOpts) -> Result<LoadedScenario> {
    let loaded = load_scenario(
        path,
        LoadOptions {
            seed: g.seed,
            eq_tol: g.policy_eq_tol,
            allow_unequal_dims: g.allow_unequal_dims,
        },
    )?;
    for w in loaded.scenario.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(loaded)
}

fn scenario_report(command: &str, args: Value, s: &Scenario, result: Value, text: String) -> Report {
    Report::new(command, args, Some(s.policy()), Some(s.seed()), result, text)
}

pub fn cmd_parse(text: &str) -> Result<Report> {
    let f = parse(text)?;
    let variables: Vec<&str> = f.variables().into_iter().collect();
    let result = json!({
        "ast": f.to_ast_string(),
        "formula": f.to_string(),
        "depth": f.depth(),
        "variables": variables,
    });
    let out = format!("{}\n", f.to_ast_string());
    Ok(Report::new("parse", json!({ "formula": text }), None, None, result, out))
}

/// A formula argument is a name from the scenario's `formulas` map or,
/// failing that, formula text.
fn resolve_formula(loaded: &LoadedScenario, arg: &str) -> Result<(String, Formula)> {
    let text = loaded.formulas.get(arg).cloned().unwrap_or_else(|| arg.to_owned());
    let f = parse(&text)?;
    Ok((text, f))
}

pub fn cmd_eval(path: &Path, formula: &str, g: &GlobalOpts) -> Result<Report> {
    let loaded = load(path, g)?;
    let s = &loaded.scenario;
    let (text, f) = resolve_formula(&loaded, formula)?;
    let result = eval_subspace(&f, &s.assignment(), s.policy())?;
    let out = format!("{}\n{}", f, subspace_text(&result, s.field()));
    Ok(scenario_report(
        "eval",
        json!({ "scenario": path.display().to_string(), "formula": formula }),
        s,
        json!({ "formula": text, "subspace": subspace_json(&result, s.field()) }),
        out,
    ))
}

pub fn cmd_member(path: &Path, state: &str, formulas: &[String], g: &GlobalOpts) -> Result<Report> {
    let loaded = load(path, g)?;
    let s = &loaded.scenario;
    let v = loaded
        .state_vectors
        .get(state)
        .ok_or_else(|| DomainError::new(format!("unknown state vector `{state}`")))?;
    if v.is_zero() {
        return Err(DomainError::new(format!(
            "state vector `{state}` is the zero vector; it belongs to every subspace, so membership tells nothing"
        )));
    }
    let assignment = s.assignment();
    let mut rows = Vec::new();
    let mut out = String::new();
    for arg in formulas {
        let (text, f) = resolve_formula(&loaded, arg)?;
        let sub = eval_subspace(&f, &assignment, s.policy())?;
        let member = sub.contains_vector(v, s.policy())?;
        let residual = sub.residual(v)?;
        out.push_str(&format!("{f}: {member} (residual {})\n", fmt_sig(residual)));
        rows.push(json!({ "formula": text, "member": member, "residual": residual, "dim": sub.dim() }));
    }
    Ok(scenario_report(
        "member",
        json!({ "scenario": path.display().to_string(), "state": state, "formulas": formulas }),
        s,
        json!({ "memberships": rows }),
        out,
    ))
}

fn projector_rows(s: &Subspace) -> Value {
    let p = s.projector();
    Value::Array(
        (0..p.nrows())
            .map(|i| Value::Array((0..p.ncols()).map(|j| json!([p[(i, j)].re, p[(i, j)].im])).collect()))
            .collect(),
    )
}

fn witness_json(w: &LawWitness, field: Field, names: Option<[&str; 3]>) -> Value {
    json!({
        "names": names.map(|n| if w.z.is_some() { n.to_vec() } else { n[..2].to_vec() }),
        "x": subspace_json(&w.x, field),
        "y": subspace_json(&w.y, field),
        "z": w.z.as_ref().map(|z| subspace_json(z, field)),
        "lhs": subspace_json(&w.lhs, field),
        "rhs": subspace_json(&w.rhs, field),
        "lhs_projector": projector_rows(&w.lhs),
        "rhs_projector": projector_rows(&w.rhs),
        "distance": w.distance,
    })
}

fn law_json(r: &LawReport, field: Field, names: Option<[&str; 3]>) -> Value {
    json!({
        "law": r.law.name(),
        "instances": r.instances,
        "passed": r.passed,
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|w| witness_json(w, field, names)),
    })
}

fn law_line(r: &LawReport) -> String {
    let verdict = if r.holds { "holds" } else { "fails" };
    let mut line = format!("{}: {verdict} {}/{}", r.law, r.passed, r.instances);
    if let Some(w) = &r.witness {
        line.push_str(&format!(
            " (witness: lhs dim {}, rhs dim {}, distance {})",
            w.lhs.dim(),
            w.rhs.dim(),
            fmt_sig(w.distance)
        ));
    }
    line.push('\n');
    line
}

/// Runs every law on every applicable tuple of the scenario's attributes.
/// Pairs and triples violating `x ⊆ y` are skipped for the two laws that
/// require it.
pub fn cmd_laws_scenario(path: &Path, g: &GlobalOpts) -> Result<Report> {
    let loaded = load(path, g)?;
    let s = &loaded.scenario;
    let p = s.policy();
    let attrs = s.attributes();
    let mut ortho = LawReport::empty(Law::Orthomodular);
    let mut modular = LawReport::empty(Law::Modular);
    let mut distributive = LawReport::empty(Law::Distributivity);
    let mut names: [Option<[&str; 3]>; 3] = [None; 3];
    for x in attrs {
        for y in attrs {
            let nested = x.subspace.is_contained_in(&y.subspace, p)?;
            if nested {
                let r = check_orthomodular(&x.subspace, &y.subspace, p)?;
                if !r.holds && names[0].is_none() {
                    names[0] = Some([&x.name, &y.name, ""]);
                }
                ortho.absorb(r);
            }
            for z in attrs {
                if nested {
                    let r = check_modular(&x.subspace, &y.subspace, &z.subspace, p)?;
                    if !r.holds && names[1].is_none() {
                        names[1] = Some([&x.name, &y.name, &z.name]);
                    }
                    modular.absorb(r);
                }
                let r = check_distributivity(&x.subspace, &y.subspace, &z.subspace, p)?;
                if !r.holds && names[2].is_none() {
                    names[2] = Some([&x.name, &y.name, &z.name]);
                }
                distributive.absorb(r);
            }
        }
    }
    let reports = [ortho, modular, distributive];
    let out: String = reports.iter().map(law_line).collect();
    let laws: Vec<Value> = reports
        .iter()
        .zip(names)
        .map(|(r, n)| law_json(r, s.field(), n))
        .collect();
    Ok(scenario_report(
        "laws",
        json!({ "scenario": path.display().to_string() }),
        s,
        json!({ "laws": laws }),
        out,
    ))
}

pub fn cmd_laws_random(n: u64, trials: u64, seed: u64, field: FieldArg, g: &GlobalOpts) -> Result<Report> {
    let field = match field {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    };
    if n == 0 {
        return Err(DomainError::new("dimension must be at least 1"));
    }
    let policy = match g.policy_eq_tol {
        Some(tol) => NumericPolicy::default()
            .with_eq_tol(tol)
            .map_err(|e| DomainError::new(e.to_string()))?,
        None => NumericPolicy::default(),
    };
    let (n, trials) = (n as usize, trials as usize);
    let args = json!({ "n": n, "trials": trials, "seed": seed, "field": format!("{field:?}").to_lowercase() });
    if trials == 0 {
        return Ok(Report::new("laws", args, Some(&policy), Some(seed), json!({ "laws": [] }), "no trials\n".into()));
    }
    let ortho = random_orthomodular_trials(n, trials, seed, field, &policy)?;
    let modular = random_modular_trials(n, trials, seed, field, &policy)?;
    let found = find_distributivity_counterexample(n, trials, seed, field, &policy)?;
    let mut out = law_line(&ortho) + &law_line(&modular);
    let distributivity = match &found {
        Some(w) => {
            out.push_str(&format!(
                "distributivity: fails with witness (lhs dim {}, rhs dim {}, distance {})\n",
                w.lhs.dim(),
                w.rhs.dim(),
                fmt_sig(w.distance)
            ));
            json!({ "law": "distributivity", "searched": trials, "holds": false, "witness": witness_json(w, field, None) })
        }
        None => {
            out.push_str(&format!("distributivity: no counterexample in {trials} trials\n"));
            json!({ "law": "distributivity", "searched": trials, "holds": true, "witness": null })
        }
    };
    let laws = vec![law_json(&ortho, field, None), law_json(&modular, field, None), distributivity];
    Ok(Report::new("laws", args, Some(&policy), Some(seed), json!({ "laws": laws }), out))
}

/// Runs one Bi-logic operation on an already loaded scenario and returns the
/// result value with its text rendering.
pub fn bilogic_op(loaded: &LoadedScenario, op: &BilogicCommand) -> Result<(Value, String)> {
    let s = &loaded.scenario;
    let p = s.policy();
    let field = s.field();
    Ok(match op {
        BilogicCommand::Repr { object, .. } => {
            let obj = s.object(object)?;
            let r = s.asymmetric_repr(obj)?;
            let mut out = format!("repr({object}) = {}: ", obj.attributes.join(" & "));
            out.push_str(&subspace_text(&r, field));
            if r.is_zero() {
                out.push_str("unrealizable object: the attributes share only the zero vector\n");
            }
            (json!({ "object": object, "realizable": !r.is_zero(), "subspace": subspace_json(&r, field) }), out)
        }
        BilogicCommand::Generalize { object, .. } => {
            let obj = s.object(object)?;
            let r = s.generalize(obj)?;
            let out = format!("generalize({object}) = {}: {}", obj.attributes.join(" | "), subspace_text(&r, field));
            (
                json!({ "object": object, "whole_space": r.is_full(), "subspace": subspace_json(&r, field) }),
                out,
            )
        }
        BilogicCommand::Symmetry { objects, .. } => {
            let selected = if objects.is_empty() {
                s.objects().to_vec()
            } else {
                objects
                    .iter()
                    .map(|name| s.object(name).cloned())
                    .collect::<std::result::Result<Vec<_>, _>>()?
            };
            let classes = s.symmetric_classes(&selected)?;
            let out: String = classes
                .iter()
                .enumerate()
                .map(|(i, c)| format!("class {}: {{{}}}\n", i + 1, c.join(", ")))
                .collect();
            (json!({ "classes": classes }), out)
        }
        BilogicCommand::Negation { object, .. } => {
            let obj = s.object(object)?;
            let r = s.negation_identity_check(obj)?;
            let whole = s.generalize(obj)?.is_full();
            let out = format!(
                "generalize({object}) = generalize(¬{object}): {}\ncomplement of repr({object}) inside generalize({object}): {}\ngeneralization is the whole space: {whole}\n",
                r.generalized_equal, r.complement_contained
            );
            (
                json!({
                    "object": object,
                    "generalized_equal": r.generalized_equal,
                    "complement_contained": r.complement_contained,
                    "generalization_is_whole_space": whole,
                }),
                out,
            )
        }
        BilogicCommand::Condense { a, b, .. } => {
            let oa = s.object(a)?;
            let ob = s.object(b)?;
            let r = s.condense(oa, ob)?;
            let ra = s.asymmetric_repr(oa)?;
            let rb = s.asymmetric_repr(ob)?;
            let out = format!(
                "condense({a}, {b}) = repr({a}) | repr({b}): {}repr dims: {a} {}, {b} {}\n",
                subspace_text(&r, field),
                ra.dim(),
                rb.dim()
            );
            (
                json!({
                    "a": a,
                    "b": b,
                    "repr_dims": [ra.dim(), rb.dim()],
                    "subspace": subspace_json(&r, field),
                }),
                out,
            )
        }
        BilogicCommand::Displace { target, source, transfer, .. } => {
            let t = s.object(target)?;
            let src = s.object(source)?;
            let transferred: Vec<&str> = transfer.iter().map(String::as_str).collect();
            let r = s.displace(t, src, &transferred)?;
            let repr = s.asymmetric_repr(t)?;
            let equals_condense = r.equals(&s.condense(t, src)?, p)?;
            let mut contains = serde_json::Map::new();
            let mut out = format!(
                "displace({target} <- {source}, [{}]): {}",
                transfer.join(", "),
                subspace_text(&r, field)
            );
            out.push_str(&format!(
                "contains repr({target}): {}\n",
                repr.is_contained_in(&r, p)?
            ));
            for name in &src.attributes {
                let attr = &s.attribute(name).expect("validated object").subspace;
                let inside = attr.is_contained_in(&r, p)?;
                out.push_str(&format!("contains {name}: {inside}\n"));
                contains.insert(name.clone(), json!(inside));
            }
            out.push_str(&format!("equals condense({target}, {source}): {equals_condense}\n"));
            (
                json!({
                    "target": target,
                    "source": source,
                    "transfer": transfer,
                    "subspace": subspace_json(&r, field),
                    "contains_target_repr": repr.is_contained_in(&r, p)?,
                    "contains_source_attribute": contains,
                    "equals_condense": equals_condense,
                }),
                out,
            )
        }
        BilogicCommand::Kinds { .. } => {
            let entries = s.attribute_kinds_report();
            let mut out = String::new();
            if entries.is_empty() {
                out.push_str("no temporal or reality attributes\n");
            }
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    out.push_str(&format!(
                        "{}: temporal [{}], reality [{}]\n",
                        e.object,
                        e.temporal.join(", "),
                        e.reality.join(", ")
                    ));
                    json!({ "object": e.object, "temporal": e.temporal, "reality": e.reality })
                })
                .collect();
            (json!({ "objects": rows }), out)
        }
    })
}

fn bilogic_name_and_path(op: &BilogicCommand) -> (&'static str, &Path) {
    match op {
        BilogicCommand::Repr { scenario, .. } => ("repr", scenario),
        BilogicCommand::Generalize { scenario, .. } => ("generalize", scenario),
        BilogicCommand::Symmetry { scenario, .. } => ("symmetry", scenario),
        BilogicCommand::Negation { scenario, .. } => ("negation", scenario),
        BilogicCommand::Condense { scenario, .. } => ("condense", scenario),
        BilogicCommand::Displace { scenario, .. } => ("displace", scenario),
        BilogicCommand::Kinds { scenario } => ("kinds", scenario),
    }
}

pub fn cmd_bilogic(op: &BilogicCommand, g: &GlobalOpts) -> Result<Report> {
    let (name, path) = bilogic_name_and_path(op);
    let loaded = load(path, g)?;
    let (result, out) = bilogic_op(&loaded, op)?;
    Ok(scenario_report(
        &format!("bilogic {name}"),
        json!({ "scenario": path.display().to_string() }),
        &loaded.scenario,
        result,
        out,
    ))
}
