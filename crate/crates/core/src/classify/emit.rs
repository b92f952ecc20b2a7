//! JSON and CSV rendering. Rationals become `"num/den"` strings and
//! polynomials become coefficient arrays in ascending degree.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::survey::SurveyReport;
use super::Verdict;
use crate::admissible::{AdmissibleData, CscResult, ExtremalResult};
use crate::exactalg::{rational_to_string, Polynomial, Rational};
use crate::topology::InvariantReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn rational(q: &Rational) -> Value {
    Value::String(rational_to_string(q))
}

pub fn polynomial(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn admissible_data(data: &AdmissibleData) -> Value {
    Value::Array(
        data.entries()
            .iter()
            .map(|e| json!({ "label": e.label, "d": e.d, "s": rational(&e.s), "r": rational(&e.r) }))
            .collect(),
    )
}

pub fn csc_result(data: &AdmissibleData, res: &CscResult) -> Value {
    json!({
        "data": admissible_data(data),
        "s": res.s.as_ref().map(rational),
        "Q": res.q.as_ref().map(polynomial),
        "verdict": res.verdict,
    })
}

pub fn extremal_result(data: &AdmissibleData, res: &ExtremalResult) -> Value {
    json!({
        "data": admissible_data(data),
        "F_extr": polynomial(&res.f),
        "P": polynomial(&res.p),
        "p_c": polynomial(&res.p_c),
        "positive": res.positive,
    })
}

/// Output document of the `classify` subcommand.
pub fn classification(invariants: &InvariantReport, verdicts: &[Verdict]) -> Value {
    json!({ "invariants": invariants, "verdicts": verdicts })
}

struct ReportRef<'a>(&'a SurveyReport);

impl Serialize for ReportRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("metadata", &self.0.metadata)?;
        m.serialize_entry("entries", &self.0.entries)?;
        m.end()
    }
}

pub fn survey_json(report: &SurveyReport) -> String {
    serde_json::to_string_pretty(&ReportRef(report)).expect("survey report serializes")
}

const CSV_HEADER: [&str; 10] = [
    "K", "c1", "colinear", "euler", "p1", "spin", "h_rank", "h_torsion", "homeo_key", "verdicts",
];

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// One row per canonical K; matrix rows are separated by `;`, list items by a space.
pub fn survey_csv(report: &SurveyReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("write to memory");
    for e in &report.entries {
        let inv = &e.invariants;
        let k = e.k.rows().iter().map(|r| join(r, " ")).collect::<Vec<_>>().join(";");
        let ranks = inv.cohomology.as_ref().map(|t| join(&t.groups.iter().map(|g| g.rank).collect::<Vec<_>>(), " "));
        let torsion = inv.cohomology.as_ref().map(|t| {
            t.groups
                .iter()
                .flat_map(|g| g.torsion.iter().map(move |e| format!("H{}:{}", g.degree, e)))
                .collect::<Vec<_>>()
                .join(" ")
        });
        let key = inv.homeo_key.as_ref().map(|h| format!("{} {}", h.p1, h.euler));
        let kinds: Vec<&str> = e.verdicts.iter().map(|v| v.kind.as_str()).collect();
        let spin = match inv.spin {
            crate::topology::SpinStatus::Spin => "spin",
            crate::topology::SpinStatus::NonSpin => "non_spin",
        };
        w.write_record([
            k,
            join(&inv.c1, " "),
            inv.colinear.to_string(),
            opt(inv.euler),
            opt(inv.p1),
            spin.to_string(),
            opt(ranks),
            opt(torsion),
            opt(key),
            kinds.join(" "),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn survey(report: &SurveyReport, format: Format) -> String {
    match format {
        Format::Json => survey_json(report),
        Format::Csv => survey_csv(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&int(-1)), json!("-1/1"));
        assert_eq!(rational(&rat(6, -4)), json!("-3/2"));
    }

    #[test]
    fn polynomial_is_ascending() {
        let q = Polynomial::from_i64s(&[9, -2, 1]).scale(&rat(1, 12));
        assert_eq!(polynomial(&q), json!(["3/4", "-1/6", "1/12"]));
        assert_eq!(polynomial(&Polynomial::zero()), json!([]));
    }
}
