//! Run reports and their two renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::model::Model;
use crate::bodies::{minkowski_sum, FmpBodiesRecord, Polytope};
use crate::deficits::{BatteryItem, DeficitReport, FmpChainReport, RadiiReport};
use crate::error::{Error, Result};
use crate::lorentz::{check_cone_lorentzian, check_strict, LorentzCertificate, Verdict};
use crate::numdim::{HallRadoReport, IndexSet, KernelFaceReport};
use crate::poly::{Direction, SequenceSk};
use crate::rational::{parse_rational, to_f64};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifySection {
    pub polynomial: String,
    pub coordinates: String,
    /// Matroid models: dimension of the divisors' span in the Chow ring.
    /// Below the number of variables, strictness fails for that reason alone.
    pub intrinsic_rank: Option<usize>,
    pub verdict: Verdict,
    pub cone: LorentzCertificate,
    pub strict: Option<LorentzCertificate>,
}

/// Cone certification, then strictness when the cone check is exact.
pub fn certify(model: &Model, samples: usize) -> Result<CertifySection> {
    let plan = model.sample_plan(samples);
    let cone = check_cone_lorentzian(&model.f, &model.nef, &plan)?;
    let strict = if cone.verdict == Verdict::Lorentzian && model.f.degree() >= 2 {
        Some(check_strict(&model.f, &model.nef, &plan)?)
    } else {
        None
    };
    let verdict = strict.as_ref().map_or(cone.verdict, |s| s.verdict);
    Ok(CertifySection {
        polynomial: model.f.to_string(),
        coordinates: model.coordinates().to_string(),
        intrinsic_rank: model.divisor_rank,
        verdict,
        cone,
        strict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdEntry {
    pub class: Direction,
    pub nd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdSection {
    pub omega: Direction,
    pub classes: Vec<NdEntry>,
    /// Present when a collection was given.
    pub collection_nd: Option<usize>,
    pub maximal_index_set: Option<IndexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSection {
    pub alpha: Direction,
    pub beta: Direction,
    pub sequence: SequenceSk,
    pub log_concave: bool,
    pub flat: bool,
}

/// One command's output. Absent sections are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: u32,
    pub command: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertifySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nd: Option<NdSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hall_rado: Option<HallRadoReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_face: Option<KernelFaceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deficits: Option<DeficitReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<RadiiReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii_reverse: Option<RadiiReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub battery: Option<Vec<BatteryItem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fmp: Option<FmpChainReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fmp_bodies: Option<FmpBodiesRecord>,
}

/// `sum c_i P_i` for nonnegative `c`.
pub fn combine_bodies(bodies: &[Polytope], coeffs: &Direction) -> Result<Polytope> {
    let mut acc: Option<Polytope> = None;
    for (p, c) in bodies.iter().zip(coeffs.coords()) {
        if c < &num_traits::Zero::zero() {
            return Err(Error::domain("body combinations need nonnegative coefficients"));
        }
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let scaled = p.scale(c);
        acc = Some(match acc {
            None => scaled,
            Some(a) => minkowski_sum(&a, &scaled)?,
        });
    }
    acc.ok_or_else(|| Error::domain("zero combination of bodies"))
}

pub fn to_json(value: &impl Serialize) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn is_rational_text(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    ok(num) && parts.next().is_none_or(ok)
}

/// Six decimals, with the exact value alongside when it is not an integer.
fn decimal(s: &str) -> String {
    let q = parse_rational(s).expect("checked rational text");
    if q.is_integer() {
        format!("{:.6} (exact)", to_f64(&q))
    } else {
        format!("{:.6} (exact {s})", to_f64(&q))
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if is_rational_text(s) => Some(decimal(s)),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::String(s) if is_rational_text(s))) => {
            // An interval or a vector: decimals only, exactness shown per entry.
            let parts: Vec<String> = items
                .iter()
                .map(|i| {
                    let q = parse_rational(i.as_str().unwrap()).unwrap();
                    format!("{:.6}", to_f64(&q))
                })
                .collect();
            let exact = items.len() == 2 && items[0] == items[1];
            Some(format!("[{}]{}", parts.join(", "), if exact { " (exact)" } else { "" }))
        }
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_) | Value::Bool(_))) => Some(format!(
            "[{}]",
            items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Human rendering of any structured report: exact rationals become six
/// decimals followed by the exact value.
pub fn to_text(value: &impl Serialize) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
    let mut out = String::new();
    render(&v, 0, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        assert!(is_rational_text("-3/4"));
        assert!(!is_rational_text("rkt[k=1]"));
        assert!(!is_rational_text("1/"));
        let v = serde_json::json!({"k": ["1/4", "1/4"], "a2": "9/25", "id": "x", "n": 3});
        let t = {
            let mut s = String::new();
            render(&v, 0, &mut s);
            s
        };
        assert!(t.contains("k: [0.250000, 0.250000] (exact)"));
        assert!(t.contains("a2: 0.360000 (exact 9/25)"));
    }
}
