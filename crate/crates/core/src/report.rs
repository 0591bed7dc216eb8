//! CSV and JSON renderings of case reports.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::catalog::CaseOutcome;
use crate::error::{Error, Result};
use crate::pipeline::CaseReport;

pub const CSV_COLUMNS: [&str; 23] = [
    "name",
    "n_vertices",
    "valency_k",
    "group_order",
    "stabilizer_order",
    "s_size",
    "n_double_cosets",
    "locally_transitive",
    "locally_primitive",
    "lambda1",
    "lambda2",
    "sabidussi_ok",
    "eq2_ok",
    "lemma3_ok",
    "lemma4_ok",
    "cauchy_schwarz_ok",
    "chain_ok",
    "prop5_branch",
    "proof_form_ok",
    "statement_form_ok",
    "converse_ok",
    "small_case_factorial_ok",
    "seed",
];

/// Twelve significant digits in the style of C's `%.12g`.
pub fn format_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent value");
    if !(-4..12).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn b(v: bool) -> String {
    v.to_string()
}

fn csv_record(r: &CaseReport) -> Vec<String> {
    vec![
        r.name.clone(),
        r.n_vertices.to_string(),
        r.valency_k.to_string(),
        r.group_order.to_string(),
        r.stabilizer_order.to_string(),
        r.s_size.to_string(),
        r.n_double_cosets.to_string(),
        b(r.locally_transitive),
        b(r.locally_primitive),
        format_g12(r.lambda1),
        format_g12(r.lambda2),
        b(r.sabidussi_ok),
        b(r.eq2_ok),
        b(r.lemma3_ok),
        b(r.lemma4_ok),
        b(r.cauchy_schwarz_ok),
        b(r.chain_ok),
        r.prop5_branch.to_string(),
        b(r.proof_form_ok),
        b(r.statement_form_ok),
        b(r.converse_ok),
        b(r.small_case_factorial_ok),
        r.seed.to_string(),
    ]
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("writing report: {e}"))
}

/// Failed cases keep their name and leave every other column empty.
pub fn write_csv<W: Write>(outcomes: &[CaseOutcome], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(io_error)?;
    for o in outcomes {
        let record = match o {
            CaseOutcome::Ok(r) => csv_record(r),
            CaseOutcome::Failed { name, .. } => {
                let mut rec = vec![String::new(); CSV_COLUMNS.len()];
                rec[0] = name.clone();
                rec
            }
        };
        w.write_record(&record).map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}

pub fn to_csv_string(outcomes: &[CaseOutcome]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(outcomes, &mut buf)?;
    String::from_utf8(buf).map_err(io_error)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            if let Some(r) = format_g12(x).parse::<f64>().ok().and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// The full report with every diagnostic, floats rounded to 12 significant
/// digits. `u128` counts are emitted as JSON integers.
pub fn to_json_value(outcomes: &[CaseOutcome]) -> Result<Value> {
    let rows = outcomes
        .iter()
        .map(|o| match o {
            CaseOutcome::Ok(r) => {
                let mut v = serde_json::to_value(r.as_ref()).map_err(io_error)?;
                round_floats(&mut v);
                Ok(v)
            }
            CaseOutcome::Failed { name, error } => {
                let mut m = Map::new();
                m.insert("name".into(), Value::String(name.clone()));
                m.insert("error".into(), Value::String(error.to_string()));
                Ok(Value::Object(m))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

pub fn to_json_string(outcomes: &[CaseOutcome]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_json_value(outcomes)?).map_err(io_error)?;
    s.push('\n');
    Ok(s)
}

/// Exit status for a finished run: 0 when every normative check held, 2 when
/// some check failed, 1 when some case could not be analyzed at all.
pub fn exit_code(outcomes: &[CaseOutcome]) -> i32 {
    if outcomes.iter().any(|o| matches!(o, CaseOutcome::Failed { .. })) {
        1
    } else if outcomes.iter().all(|o| matches!(o, CaseOutcome::Ok(r) if r.normative_ok)) {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        // Expected strings are what C printf("%.12g") produces.
        let cases = [
            (4.0, "4"),
            (36.0, "36"),
            (0.5, "0.5"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0f64.sqrt(), "1.41421356237"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (0.0, "0"),
            (999999999999.5, "1e+12"),
            (1e-300, "1e-300"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g12(x), want, "{x}");
        }
    }

    #[test]
    fn empty_report() {
        let s = to_csv_string(&[]).unwrap();
        assert_eq!(s, format!("{}\n", CSV_COLUMNS.join(",")));
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(to_json_string(&[]).unwrap(), "[]\n");
    }

    #[test]
    fn failed_rows() {
        let o = vec![CaseOutcome::Failed { name: "bad, name".into(), error: Error::ZeroValency }];
        let s = to_csv_string(&o).unwrap();
        assert!(s.lines().nth(1).unwrap().starts_with("\"bad, name\","));
        assert_eq!(exit_code(&o), 1);
        let v = to_json_value(&o).unwrap();
        assert!(v[0]["error"].as_str().unwrap().contains("valency"));
    }

    #[test]
    fn exit_code_two_on_failed_check() {
        use crate::graph::SimpleGraph;
        use crate::permgroup::PermutationGroup;
        use crate::case_doc::CaseSpec;
        use crate::pipeline::{analyze, AnalyzeOptions};

        let g = SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let spec = CaseSpec::action("K3", PermutationGroup::symmetric(3), g, 0);
        let mut r = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        let ok = vec![CaseOutcome::Ok(Box::new(r.clone()))];
        assert_eq!(exit_code(&ok), 0);
        // The statement-form column is informational only.
        r.statement_form_ok = false;
        assert_eq!(exit_code(&[CaseOutcome::Ok(Box::new(r.clone()))]), 0);
        r.normative_ok = false;
        assert_eq!(exit_code(&[CaseOutcome::Ok(Box::new(r))]), 2);
    }
}
