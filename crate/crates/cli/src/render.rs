//! JSON and plain-text renderings of reports. All JSON objects use sorted
//! keys, so identical inputs give byte-identical output.

use serde_json::{json, Value};
use shuffle_core::{BiPoly, EPoint, FieldSpec, NumericCheck, NumericVerdict, Poly, TorsionReport, Var};

use crate::SCHEMA_VERSION;

pub fn field_json(field: &FieldSpec) -> Value {
    json!({
        "p": field.p(),
        "m": field.m(),
        "q": field.q(),
        "modulus": field.modulus(),
    })
}

/// Slots in flat order, each labelled with `(ℓ, j)`.
pub fn epoint_json(point: &EPoint) -> Value {
    point.labelled().map(|(l, j, v)| json!({ "l": l, "j": j, "value": v.to_string() })).collect()
}

pub fn report_json(report: &TorsionReport, field: &FieldSpec) -> Value {
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "field": field_json(field),
        "r": report.tuple.r(),
        "s": report.tuple.s(),
        "tuple": report.tuple.to_string(),
        "isTorsion": report.is_torsion,
        "caseTag": report.case_tag.as_str(),
        "annihilator": report.annihilator_used.to_string(),
        "filterViolations": report.filter_violations,
        "vC": epoint_json(&report.v_c),
        "rhoA_vC": epoint_json(&report.rho_a_v_c),
        "verdict": report.verdict().as_str(),
    })
}

fn epoint_text(point: &EPoint) -> String {
    let parts: Vec<String> = point.labelled().map(|(l, j, v)| format!("({l},{j})={v}")).collect();
    parts.join(" ")
}

pub fn report_text(report: &TorsionReport) -> String {
    format!(
        "tuple: {}\nisTorsion: {}\ncaseTag: {}\nannihilator: {}\nfilterViolations: {:?}\nvC: {}\nrhoA_vC: {}\nverdict: {}\n",
        report.tuple,
        report.is_torsion,
        report.case_tag.as_str(),
        report.annihilator_used,
        report.filter_violations,
        epoint_text(&report.v_c),
        epoint_text(&report.rho_a_v_c),
        report.verdict(),
    )
}

pub fn numeric_json(num: &NumericCheck) -> Value {
    let (verdict, valuation) = match num.verdict {
        NumericVerdict::VanishesToGuarantee => ("vanishes-to-guarantee", None),
        NumericVerdict::NonzeroAt(e) => ("nonzero-at", Some(e)),
    };
    json!({
        "residualValuation": valuation,
        "guarantee": num.guarantee,
        "verdict": verdict,
    })
}

pub fn numeric_text(num: &NumericCheck) -> String {
    match num.verdict {
        NumericVerdict::VanishesToGuarantee => {
            format!("residual vanishes below exponent {}\n", num.guarantee)
        }
        NumericVerdict::NonzeroAt(e) => {
            format!("residual nonzero at exponent {e} (guarantee {})\n", num.guarantee)
        }
    }
}

pub fn matrix_json(rows: &[Vec<BiPoly>]) -> Value {
    rows.iter().map(|r| r.iter().map(BiPoly::to_string).collect::<Vec<_>>()).collect()
}

pub fn matrix_text(rows: &[Vec<BiPoly>]) -> String {
    rows.iter().map(|r| format!("[{}]\n", r.iter().map(BiPoly::to_string).collect::<Vec<_>>().join(", "))).collect()
}

/// `(t^{q^h} − t)^e` with equal bases merged, in increasing `h`.
pub fn annihilator_factor_text(factors: &[(usize, u32)], field: &FieldSpec) -> Vec<String> {
    let mut merged: Vec<(usize, u64)> = Vec::new();
    for &(h, l) in factors {
        let e = (field.p() as u64).pow(l);
        match merged.iter_mut().find(|(g, _)| *g == h) {
            Some((_, acc)) => *acc += e,
            None => merged.push((h, e)),
        }
    }
    merged.sort();
    merged
        .into_iter()
        .map(|(h, e)| {
            let base = &Poly::monomial(field, Var::T, 1, (field.q() as usize).pow(h as u32)) - &Poly::x(field, Var::T);
            if e == 1 {
                format!("({base})")
            } else {
                format!("({base})^{e}")
            }
        })
        .collect()
}
