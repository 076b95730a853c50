//! The bundled demo: five small scenarios, each run through a fixed list of
//! Bi-logic operations.

use std::path::PathBuf;

use serde_json::{json, Value};

use crate::cli::BilogicCommand;
use crate::commands::{bilogic_op, DomainError};
use crate::report::{fmt_sig, Report};
use crate::scenario_file::{parse_scenario, LoadOptions};

struct DemoScenario {
    name: &'static str,
    source: &'static str,
}

const SCENARIOS: [DemoScenario; 5] = [
    DemoScenario {
        name: "absence_of_contradiction",
        source: include_str!("../../../scenarios/demos/absence_of_contradiction.scenario"),
    },
    DemoScenario {
        name: "displacement",
        source: include_str!("../../../scenarios/demos/displacement.scenario"),
    },
    DemoScenario {
        name: "condensation",
        source: include_str!("../../../scenarios/demos/condensation.scenario"),
    },
    DemoScenario {
        name: "timelessness",
        source: include_str!("../../../scenarios/demos/timelessness.scenario"),
    },
    DemoScenario {
        name: "psychic_reality",
        source: include_str!("../../../scenarios/demos/psychic_reality.scenario"),
    },
];

fn steps(name: &str) -> Vec<BilogicCommand> {
    let scenario = PathBuf::from(format!("demos/{name}.scenario"));
    let s = || scenario.clone();
    let list = |items: &[&str]| items.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match name {
        "absence_of_contradiction" => vec![
            BilogicCommand::Repr { scenario: s(), object: "p".into() },
            BilogicCommand::Negation { scenario: s(), object: "p".into() },
        ],
        "displacement" => vec![BilogicCommand::Displace {
            scenario: s(),
            target: "f".into(),
            source: "h".into(),
            transfer: list(&["blue_eyes"]),
        }],
        "condensation" => vec![BilogicCommand::Condense { scenario: s(), a: "q".into(), b: "r".into() }],
        "timelessness" => vec![
            BilogicCommand::Symmetry { scenario: s(), objects: vec![] },
            BilogicCommand::Kinds { scenario: s() },
        ],
        "psychic_reality" => vec![
            BilogicCommand::Displace {
                scenario: s(),
                target: "memory".into(),
                source: "fantasy".into(),
                transfer: list(&["imaginary"]),
            },
            BilogicCommand::Kinds { scenario: s() },
        ],
        _ => unreachable!("unknown demo scenario"),
    }
}

fn op_name(op: &BilogicCommand) -> &'static str {
    match op {
        BilogicCommand::Repr { .. } => "repr",
        BilogicCommand::Generalize { .. } => "generalize",
        BilogicCommand::Symmetry { .. } => "symmetry",
        BilogicCommand::Negation { .. } => "negation",
        BilogicCommand::Condense { .. } => "condense",
        BilogicCommand::Displace { .. } => "displace",
        BilogicCommand::Kinds { .. } => "kinds",
    }
}

/// Runs every demo scenario. Output is fully determined by the embedded
/// scenario files.
pub fn run_demo() -> Result<Report, DomainError> {
    let mut sections = Vec::new();
    let mut text = String::new();
    for demo in &SCENARIOS {
        let loaded = parse_scenario(demo.source, LoadOptions::default())
            .map_err(|e| DomainError::new(format!("demo scenario {}: {e}", demo.name)))?;
        text.push_str(&format!("== {} ==\n", demo.name));
        let mut results = Vec::new();
        for op in steps(demo.name) {
            let (result, out) = bilogic_op(&loaded, &op)?;
            text.push_str(&out);
            results.push(json!({ "op": op_name(&op), "result": result }));
        }
        let s = &loaded.scenario;
        // Membership of each named state in every object's representation and
        // in the condensation of all objects.
        let mut states = Vec::new();
        for (state, v) in &loaded.state_vectors {
            let all: Vec<_> = s.objects().to_vec();
            let mut rows = serde_json::Map::new();
            for obj in &all {
                let repr = s.asymmetric_repr(obj)?;
                let inside = repr.contains_vector(v, s.policy())?;
                text.push_str(&format!("{state} in repr({}): {inside}\n", obj.name));
                rows.insert(format!("repr({})", obj.name), json!(inside));
            }
            if let [a, b] = all.as_slice() {
                let c = s.condense(a, b)?;
                let inside = c.contains_vector(v, s.policy())?;
                let residual = c.residual(v)?;
                text.push_str(&format!(
                    "{state} in condense({}, {}): {inside} (residual {})\n",
                    a.name,
                    b.name,
                    fmt_sig(residual)
                ));
                rows.insert(format!("condense({}, {})", a.name, b.name), json!(inside));
            }
            states.push(json!({ "state": state, "memberships": Value::Object(rows) }));
        }
        text.push('\n');
        sections.push(json!({
            "scenario": demo.name,
            "steps": results,
            "states": states,
        }));
    }
    text.pop();
    Ok(Report::new(
        "demo",
        json!({}),
        Some(&orthomod::NumericPolicy::default()),
        None,
        json!({ "scenarios": sections }),
        text,
    ))
}
