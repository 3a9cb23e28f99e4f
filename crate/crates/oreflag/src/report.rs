//! JSON and plain-text renderings of results, each paired with the
//! mathematical outcome that decides the exit code.

use std::fmt::Write as _;

use oreflag_core::extract::{Extraction, IdealChain};
use oreflag_core::lab::{
    CharacterComponent, CharacterFamily, ConditionReport, HypothesisReport, OrbitReport, Overall, Pattern, Verdict,
    Witness,
};
use oreflag_core::ore::{to_dsl, ConsistencyReport, OrePresentation};
use oreflag_core::rep::RelationReport;
use oreflag_core::triangularize::{
    describe_reason, Character, FailureCertificate, FailureReason, LoewySeries, Nilpotency, Triangularization,
};
use serde_json::{json, Value};

use crate::format::{character_json, matrix_json, presentation_summary, scalar_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    Undecided,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
            Outcome::Undecided => 3,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Failure
        }
    }
}

pub struct Report {
    pub outcome: Outcome,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(outcome: Outcome, json: Value, text: String) -> Self {
        Report { outcome, json, text }
    }
}

fn show_character(c: &Character, names: &[String]) -> String {
    c.display_with(names).to_string()
}

pub fn consistency(p: &OrePresentation, r: &ConsistencyReport) -> Report {
    let names = p.names();
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "word": f.word.iter().map(|&g| names[g].clone()).collect::<Vec<_>>(),
                "bracketing": f.bracketing,
                "left": f.left.display_with(names).to_string(),
                "right": f.right.display_with(names).to_string(),
            })
        })
        .collect();
    let datum: Vec<Value> = r
        .datum_failures
        .iter()
        .map(|d| {
            json!({
                "lo": names[d.lo], "hi": names[d.hi],
                "via_right": d.via_right.display_with(names).to_string(),
                "via_left": d.via_left.display_with(names).to_string(),
            })
        })
        .collect();
    let mut text = format!(
        "field {}, generators {}, left datum {}\noverlaps checked: {}\n",
        p.field(),
        names.join(" "),
        if p.has_left_datum() { "present" } else { "absent" },
        r.overlaps_checked
    );
    for f in &r.failures {
        let _ = writeln!(
            text,
            "ambiguity on {}: {} gives {}, the other bracketing gives {}",
            f.word.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join("·"),
            f.bracketing,
            f.left.display_with(names),
            f.right.display_with(names)
        );
    }
    for d in &r.datum_failures {
        let _ = writeln!(
            text,
            "left and right data disagree on {}·{}: {} vs {}",
            names[d.lo],
            names[d.hi],
            d.via_right.display_with(names),
            d.via_left.display_with(names)
        );
    }
    text.push_str(if r.passed() { "consistent\n" } else { "inconsistent\n" });
    let json = json!({
        "presentation": presentation_summary(p),
        "overlaps_checked": r.overlaps_checked,
        "consistent": r.passed(),
        "failures": failures,
        "datum_failures": datum,
    });
    Report::new(Outcome::from_bool(r.passed()), json, text)
}

pub fn relations(r: &RelationReport) -> Report {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({"relation": f.relation, "lhs": matrix_json(&f.lhs), "rhs": matrix_json(&f.rhs)}))
        .collect();
    let mut text = format!("relations checked: {}\n", r.checked);
    for f in &r.failures {
        let _ = writeln!(text, "violated: {}", f.relation);
    }
    text.push_str(if r.passed() { "all relations hold\n" } else { "module check failed\n" });
    Report::new(
        Outcome::from_bool(r.passed()),
        json!({"checked": r.checked, "passed": r.passed(), "failures": failures}),
        text,
    )
}

fn reason_json(reason: &FailureReason, names: &[String]) -> Value {
    match reason {
        FailureReason::NoEigenvalueInField { generator, remainder } => json!({
            "tag": reason.tag(),
            "generator": names[*generator],
            "remainder": remainder.to_string(),
        }),
        FailureReason::NoCommonEigenvector { tuples_explored } => {
            json!({"tag": reason.tag(), "tuples_explored": tuples_explored})
        }
        FailureReason::NonzeroCharacterRequired { character } => {
            json!({"tag": reason.tag(), "character": character_json(character, names)})
        }
    }
}

pub fn certificate_json(c: &FailureCertificate, names: &[String]) -> Value {
    json!({
        "stage": c.stage,
        "reason": reason_json(&c.reason, names),
        "witness_dim": c.witness_dim(),
        "witness_quotient": c.witness_quotient.iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn triangularization(t: &Triangularization, names: &[String]) -> Report {
    match t {
        Triangularization::Success(r) => {
            let chars: Vec<String> = r.layer_characters.iter().map(|c| show_character(c, names)).collect();
            let text = format!(
                "flag found{}\nlayer characters: {}\n",
                if r.strict { " (strict)" } else { "" },
                chars.join(", ")
            );
            let json = json!({
                "status": "success",
                "strict": r.strict,
                "transform": matrix_json(&r.transform),
                "layer_characters": r.layer_characters.iter().map(|c| character_json(c, names)).collect::<Vec<_>>(),
            });
            Report::new(Outcome::Success, json, text)
        }
        Triangularization::Failure(c) => {
            let text = format!(
                "no flag: {} after {} layer(s); stuck quotient has dimension {}\n",
                describe_reason(&c.reason, names),
                c.stage,
                c.witness_dim()
            );
            let mut json = certificate_json(c, names);
            json["status"] = json!("failure");
            Report::new(Outcome::Failure, json, text)
        }
    }
}

pub fn loewy(s: &LoewySeries) -> Report {
    let text = format!(
        "socle layers: {:?}\n{}\n",
        s.layers,
        if s.p_semiartinian {
            "every layer is a sum of 1-dimensional modules"
        } else {
            "stuck on a quotient with no 1-dimensional submodule"
        }
    );
    Report::new(
        Outcome::from_bool(s.p_semiartinian),
        json!({"layers": s.layers, "p_semiartinian": s.p_semiartinian}),
        text,
    )
}

pub fn nilpotency(n: &Nilpotency, bound: usize) -> Report {
    match n {
        Nilpotency::Nilpotent(k) => Report::new(
            Outcome::Success,
            json!({"nilpotent": true, "index": k, "bound": bound}),
            format!("nilpotent: every product of {k} generators vanishes\n"),
        ),
        Nilpotency::NotWithinBound => Report::new(
            Outcome::Failure,
            json!({"nilpotent": false, "bound": bound}),
            format!("products of {bound} generators do not all vanish\n"),
        ),
    }
}

fn pattern_json(p: &Pattern) -> Value {
    match p {
        Pattern::Zero => json!("zero"),
        Pattern::Free => json!("free"),
        Pattern::Fixed(c) => json!({"fixed": scalar_json(c)}),
    }
}

fn component_text(c: &CharacterComponent, names: &[String]) -> String {
    let parts: Vec<String> = c
        .patterns
        .iter()
        .zip(names)
        .map(|(p, n)| match p {
            Pattern::Zero => format!("{n}:0"),
            Pattern::Free => format!("{n}:free"),
            Pattern::Fixed(v) => format!("{n}:{v}"),
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub fn characters(fam: &CharacterFamily, names: &[String]) -> Report {
    let names = &names[..fam.level];
    let mut text = format!("characters on {} generator(s): {} component(s)\n", fam.level, fam.components.len());
    for c in &fam.components {
        let _ = writeln!(text, "  {}", component_text(c, names));
    }
    let comps: Vec<Value> = fam
        .components
        .iter()
        .map(|c| {
            let map: serde_json::Map<String, Value> =
                names.iter().zip(&c.patterns).map(|(n, p)| (n.clone(), pattern_json(p))).collect();
            Value::Object(map)
        })
        .collect();
    let mut json = json!({"level": fam.level, "components": comps});
    if let Some(all) = &fam.explicit {
        json["count"] = json!(all.len());
        let _ = writeln!(text, "{} character(s) in total", all.len());
    }
    Report::new(Outcome::Success, json, text)
}

pub fn orbit_json(o: &OrbitReport) -> Value {
    match o {
        OrbitReport::Trivial => json!({"kind": "Trivial"}),
        OrbitReport::Cycle(n) => json!({"kind": "Cycle", "length": n}),
        OrbitReport::Infinite(why) => json!({"kind": "Infinite", "proof": why}),
        OrbitReport::EventuallyPeriodic { preperiod, period } => {
            json!({"kind": "EventuallyPeriodic", "preperiod": preperiod, "period": period})
        }
        OrbitReport::ExceedsBound(b) => json!({"kind": "ExceedsBound", "bound": b}),
    }
}

pub fn orbit_text(o: &OrbitReport) -> String {
    match o {
        OrbitReport::Trivial => "Trivial".into(),
        OrbitReport::Cycle(n) => format!("Cycle({n})"),
        OrbitReport::Infinite(why) => format!("Infinite ({why})"),
        OrbitReport::EventuallyPeriodic { preperiod, period } => {
            format!("EventuallyPeriodic(preperiod {preperiod}, period {period})")
        }
        OrbitReport::ExceedsBound(b) => format!("ExceedsBound({b})"),
    }
}

pub fn orbit(o: &OrbitReport) -> Report {
    let outcome = match o {
        OrbitReport::Trivial | OrbitReport::Infinite(_) => Outcome::Success,
        OrbitReport::ExceedsBound(_) => Outcome::Undecided,
        _ => Outcome::Failure,
    };
    Report::new(outcome, orbit_json(o), format!("orbit: {}\n", orbit_text(o)))
}

fn witness_json(w: &Witness, names: &[String]) -> Value {
    match w {
        Witness::Character { level, character, image } => json!({
            "kind": "character",
            "level": names[*level],
            "character": character_json(character, names),
            "image": character_json(image, names),
        }),
        Witness::Orbit { level, character, orbit } => json!({
            "kind": "orbit",
            "level": names[*level],
            "character": character_json(character, names),
            "orbit": orbit_json(orbit),
        }),
        Witness::Ext { level, power, twisted, base, dim } => json!({
            "kind": "ext",
            "level": names[*level],
            "power": power,
            "twisted": character_json(twisted, names),
            "base": character_json(base, names),
            "dim": dim,
        }),
        Witness::Operator { label, matrix } => json!({
            "kind": "operator",
            "label": label,
            "matrix": matrix_json(matrix),
        }),
    }
}

fn witness_text(w: &Witness, names: &[String]) -> String {
    match w {
        Witness::Character { level, character, image } => format!(
            "twist of {} moves {} to {}",
            names[*level],
            show_character(character, names),
            show_character(image, names)
        ),
        Witness::Orbit { level, character, orbit } => format!(
            "orbit of {} under the twist of {}: {}",
            show_character(character, names),
            names[*level],
            orbit_text(orbit)
        ),
        Witness::Ext { level, power, twisted, base, dim } => format!(
            "at {}, power {power}: Ext1({}, {}) has dimension {dim}",
            names[*level],
            show_character(twisted, names),
            show_character(base, names)
        ),
        Witness::Operator { label, .. } => format!("{label} is not nilpotent"),
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail(_) => "fail",
        Verdict::Undecided(_) => "undecided",
    }
}

fn overall_name(o: Overall) -> &'static str {
    match o {
        Overall::Pass => "pass",
        Overall::Fail => "fail",
        Overall::Undecided => "undecided",
    }
}

fn condition_json(c: &ConditionReport, names: &[String]) -> Value {
    let mut v = json!({
        "name": c.name,
        "statement": c.statement,
        "verdict": verdict_name(&c.verdict),
        "notes": c.notes,
    });
    match &c.verdict {
        Verdict::Fail(w) => v["witness"] = witness_json(w, names),
        Verdict::Undecided(why) => v["reason"] = json!(why),
        Verdict::Pass => {}
    }
    v
}

pub fn hypotheses(r: &HypothesisReport, names: &[String]) -> Report {
    let mut text = format!("theorem {}: {}\nnote: {}\n", r.theorem.tag(), overall_name(r.overall), r.header);
    let mut witnesses = Vec::new();
    for c in &r.conditions {
        let _ = write!(text, "  ({}) {}: {}", c.name, c.statement, verdict_name(&c.verdict));
        match &c.verdict {
            Verdict::Fail(w) => {
                let _ = write!(text, " - {}", witness_text(w, names));
                witnesses.push(witness_json(w, names));
            }
            Verdict::Undecided(why) => {
                let _ = write!(text, " - {why}");
            }
            Verdict::Pass => {}
        }
        text.push('\n');
        for note in &c.notes {
            let _ = writeln!(text, "      {note}");
        }
    }
    let json = json!({
        "theorem": r.theorem.tag(),
        "header": r.header,
        "conditions": r.conditions.iter().map(|c| condition_json(c, names)).collect::<Vec<_>>(),
        "witnesses": witnesses,
        "overall": overall_name(r.overall),
    });
    let outcome = match r.overall {
        Overall::Pass => Outcome::Success,
        Overall::Fail => Outcome::Failure,
        Overall::Undecided => Outcome::Undecided,
    };
    Report::new(outcome, json, text)
}

pub fn chain_failure(c: &FailureCertificate) -> Report {
    let text = format!(
        "not pointed: the algebra has a bimodule layer of dimension {} with no 1-dimensional sub-bimodule ({})\n",
        c.witness_dim(),
        c.reason.tag()
    );
    let mut json = json!({
        "status": "not_pointed",
        "stage": c.stage,
        "reason": c.reason.tag(),
        "witness_dim": c.witness_dim(),
    });
    if let FailureReason::NoCommonEigenvector { tuples_explored } = c.reason {
        json["tuples_explored"] = json!(tuples_explored);
    }
    Report::new(Outcome::Failure, json, text)
}

pub fn extraction(chain: &IdealChain, x: &Extraction) -> Report {
    let p = &x.presentation;
    let dsl = to_dsl(p);
    let text = format!(
        "algebra dimension {}, ideal chain of length {}, {}\n{} generator(s); relations hold on the source matrices: {}\n{}",
        chain.algebra_basis.len(),
        chain.len(),
        if chain.is_local() { "local" } else { "not local" },
        p.ngens(),
        if x.module.is_verified() { "yes" } else { "no" },
        dsl
    );
    let json = json!({
        "status": "success",
        "algebra_dim": chain.algebra_basis.len(),
        "chain_dims": chain.chain.iter().map(|s| s.dim()).collect::<Vec<_>>(),
        "local": chain.is_local(),
        "presentation": dsl,
        "generators": p.names().iter().zip(&x.generators).map(|(n, m)| json!({"name": n, "matrix": matrix_json(m)})).collect::<Vec<_>>(),
        "relations_hold": x.module.is_verified(),
    });
    Report::new(Outcome::from_bool(x.module.is_verified()), json, text)
}
