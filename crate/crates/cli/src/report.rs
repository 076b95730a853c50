//! Report rendering. JSON carries full precision with sorted keys so runs
//! diff cleanly; text output rounds to six significant digits.

use orthomod::sampling::Field;
use orthomod::{NumericPolicy, Subspace, C64};
use serde_json::{json, Value};

/// One command's outcome: a JSON report and its human-readable rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(command: &str, args: Value, policy: Option<&NumericPolicy>, seed: Option<u64>, result: Value, text: String) -> Self {
        let json = json!({
            "command": command,
            "args": args,
            "policy": policy.map(policy_json),
            "seed": seed,
            "result": result,
        });
        Self { json, text }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

pub fn policy_json(p: &NumericPolicy) -> Value {
    json!({
        "rank_cutoff_rel": p.rank_cutoff_rel(),
        "eq_tol": p.eq_tol(),
        "membership_tol": p.membership_tol(),
    })
}

fn entry_json(z: C64, field: Field) -> Value {
    match field {
        Field::Real => json!(z.re),
        Field::Complex => json!([z.re, z.im]),
    }
}

/// Basis vectors rephased so the first entry of largest modulus is real and
/// positive. Only affects presentation; the span is unchanged.
fn display_basis(s: &Subspace) -> Vec<Vec<C64>> {
    s.basis_vectors()
        .iter()
        .map(|v| {
            let comps: Vec<C64> = v.components().iter().copied().collect();
            let max = comps.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let pivot = comps
                .iter()
                .find(|z| z.norm() >= max - 1e-12)
                .copied()
                .unwrap_or(C64::new(1.0, 0.0));
            let phase = pivot.conj() / pivot.norm();
            comps.into_iter().map(|z| z * phase).collect()
        })
        .collect()
}

/// `{dim, basis}` with one basis vector per row.
pub fn subspace_json(s: &Subspace, field: Field) -> Value {
    let basis: Vec<Value> = display_basis(s)
        .into_iter()
        .map(|v| Value::Array(v.into_iter().map(|z| entry_json(z, field)).collect()))
        .collect();
    json!({ "dim": s.dim(), "basis": basis })
}

/// Six significant digits; magnitudes below 1e-12 print as 0.
pub fn fmt_sig(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".to_owned();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=9).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    };
    if s == "-0" {
        "0".to_owned()
    } else {
        s
    }
}

fn fmt_entry(z: C64, field: Field) -> String {
    match field {
        Field::Real => fmt_sig(z.re),
        Field::Complex => {
            if z.im.abs() < 1e-12 {
                fmt_sig(z.re)
            } else if z.re.abs() < 1e-12 {
                format!("{}i", fmt_sig(z.im))
            } else if z.im < 0.0 {
                format!("{}-{}i", fmt_sig(z.re), fmt_sig(-z.im))
            } else {
                format!("{}+{}i", fmt_sig(z.re), fmt_sig(z.im))
            }
        }
    }
}

/// Indented basis listing, one vector per line.
pub fn subspace_text(s: &Subspace, field: Field) -> String {
    let mut out = format!("dim {}\n", s.dim());
    for v in display_basis(s) {
        let parts: Vec<String> = v.into_iter().map(|z| fmt_entry(z, field)).collect();
        out.push_str(&format!("  ({})\n", parts.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-1.0), "-1");
        assert_eq!(fmt_sig(std::f64::consts::FRAC_1_SQRT_2), "0.707107");
        assert_eq!(fmt_sig(123.456789), "123.457");
        assert_eq!(fmt_sig(1e-17), "0");
        assert_eq!(fmt_sig(-1e-13), "0");
        assert_eq!(fmt_sig(0.000123456789), "0.000123457");
        assert_eq!(fmt_sig(1.5e12), "1.50000e12");
    }

    #[test]
    fn complex_entries() {
        assert_eq!(fmt_entry(C64::new(0.5, -0.25), Field::Complex), "0.5-0.25i");
        assert_eq!(fmt_entry(C64::new(0.0, 1.0), Field::Complex), "1i");
        assert_eq!(fmt_entry(C64::new(2.0, 1e-16), Field::Complex), "2");
        assert_eq!(fmt_entry(C64::new(2.0, 3.0), Field::Real), "2");
    }

    #[test]
    fn basis_is_rephased_for_display() {
        let v = orthomod::Vector::from_real(&[0.0, -2.0, 1.0]).unwrap();
        let s = Subspace::span(3, &[v], &NumericPolicy::default()).unwrap();
        let text = subspace_text(&s, Field::Real);
        assert_eq!(text, "dim 1\n  (0, 0.894427, -0.447214)\n");
    }

    #[test]
    fn subspace_rendering() {
        let s = Subspace::coordinate(2, [1]);
        assert_eq!(subspace_text(&s, Field::Real), "dim 1\n  (0, 1)\n");
        assert_eq!(subspace_json(&s, Field::Real), json!({"dim": 1, "basis": [[0.0, 1.0]]}));
        assert_eq!(
            subspace_json(&Subspace::zero(3), Field::Complex),
            json!({"dim": 0, "basis": []})
        );
    }
}
