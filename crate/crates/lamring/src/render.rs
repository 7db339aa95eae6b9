//! Text and JSON renderings of results.

use lamring_core::algebra::Report;
use lamring_core::cohomology::{render_cohomology, CohomologyGroup};
use lamring_core::ktheory::{ExtClassification, StableRow};
use serde_json::{json, Value};

/// A finished command: exit code and both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Rendered {
    pub fn ok(text: String, json: Value) -> Self {
        Rendered { code: 0, text, json }
    }
}

pub fn report_text(title: &str, r: &Report) -> String {
    let mut out = if r.is_ok() {
        format!("{title}: ok ({} checks)\n", r.checks)
    } else {
        format!("{title}: FAILED ({} of {} checks)\n", r.violations.len(), r.checks)
    };
    for v in &r.violations {
        out += &format!("violation [{}]: {}\n", v.condition, v.detail);
    }
    for n in &r.notes {
        out += &format!("note: {n}\n");
    }
    out
}

pub fn report_json(title: &str, r: &Report) -> Value {
    json!({
        "format": "report",
        "title": title,
        "ok": r.is_ok(),
        "checks": r.checks,
        "violations": r.violations.iter().map(|v| json!({"condition": v.condition, "detail": v.detail})).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

/// A verification result; exit code 1 when something fails.
pub fn report(title: &str, r: &Report) -> Rendered {
    Rendered { code: if r.is_ok() { 0 } else { 1 }, text: report_text(title, r), json: report_json(title, r) }
}

pub fn group_json(n: usize, g: &CohomologyGroup) -> Value {
    match g {
        CohomologyGroup::Integral(a) => json!({
            "degree": n,
            "group": g.to_string(),
            "free_rank": a.free_rank,
            "torsion": a.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        }),
        CohomologyGroup::Rational(d) => json!({"degree": n, "group": g.to_string(), "dimension": d}),
    }
}

pub fn cohomology(label: &str, groups: &[CohomologyGroup], notes: &[String]) -> Rendered {
    let mut text = render_cohomology(groups, label);
    for n in notes {
        text += &format!("note: {n}\n");
    }
    let json = json!({
        "format": "cohomology",
        "label": label,
        "groups": groups.iter().enumerate().map(|(n, g)| group_json(n, g)).collect::<Vec<_>>(),
        "notes": notes,
    });
    Rendered::ok(text, json)
}

pub fn polynomial(name: &str, p: &impl std::fmt::Display) -> Rendered {
    let s = p.to_string();
    Rendered::ok(format!("{s}\n"), json!({"format": "polynomial", "name": name, "polynomial": s}))
}

pub fn ext(label: &str, c: &ExtClassification) -> Rendered {
    let group = c.to_string();
    let abstract_group = c.abstract_group().map(|g| g.to_string());
    let modulus = c.torsion_modulus.as_ref().map(|g| g.to_string());
    let mut text = format!("{label}(K~(S^{}), K(S^{})) = {group}\n", 2 * c.n2, 2 * c.n);
    if let Some(g) = &modulus {
        text += &format!("G_{{{},{}}} = {g}\n", c.n, c.n2);
    }
    if let Some(a) = &abstract_group {
        text += &format!("abstract group: {a}\n");
    }
    if c.hopf_even_forced() {
        text += "every Hopf invariant is even\n";
    }
    let json = json!({
        "format": "ext",
        "kind": label,
        "n": c.n,
        "n2": c.n2,
        "group": group,
        "abstract_group": abstract_group,
        "torsion_modulus": modulus,
        "prime_indexed": c.prime_indexed,
        "hopf_even_forced": c.hopf_even_forced(),
    });
    Rendered::ok(text, json)
}

pub fn stable_rows_json(rows: &[StableRow]) -> Value {
    json!({
        "format": "stable-table",
        "rows": rows
            .iter()
            .map(|r| json!({
                "k": r.k,
                "n": r.n,
                "homotopy_reference": r.homotopy_reference,
                "ext": r.ext.to_string(),
                "torsion_modulus": r.ext.torsion_modulus.as_ref().map(|g| g.to_string()),
            }))
            .collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
