//! JSON forms of patterns, diagonals, proof traces and partition records.

use meshcide_core::{
    EnclosedDiagonal, Fingerprint, Mesh, MeshPattern, Permutation, ProofStep, ProofTrace,
    StepDetail,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// `{"perm":[2,3,1],"mesh":[[1,0],[3,2]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub perm: Vec<usize>,
    pub mesh: Vec<[usize; 2]>,
}

impl From<&MeshPattern> for PatternJson {
    fn from(pi: &MeshPattern) -> Self {
        PatternJson {
            perm: pi.perm().word().to_vec(),
            mesh: squares(pi.mesh()),
        }
    }
}

impl TryFrom<PatternJson> for MeshPattern {
    type Error = meshcide_core::Error;

    fn try_from(j: PatternJson) -> Result<Self, Self::Error> {
        let perm = Permutation::new(j.perm)?;
        MeshPattern::from_squares(perm, j.mesh.into_iter().map(|[a, b]| (a, b)))
    }
}

pub fn squares(m: Mesh) -> Vec<[usize; 2]> {
    m.squares().map(|s| [s.col, s.row]).collect()
}

pub fn pattern(pi: &MeshPattern) -> Value {
    serde_json::to_value(PatternJson::from(pi)).expect("plain data")
}

pub fn parse_pattern(text: &str) -> Result<MeshPattern, String> {
    let j: PatternJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    MeshPattern::try_from(j).map_err(|e| e.to_string())
}

pub fn diagonal(d: &EnclosedDiagonal) -> Value {
    json!({
        "orientation": d.orientation().tag(),
        "squares": d.squares().iter().map(|s| [s.col, s.row]).collect::<Vec<_>>(),
    })
}

pub fn step(s: &ProofStep) -> Value {
    let mut v = json!({
        "rule": s.rule.tag(),
        "from": pattern(&s.from),
        "to": pattern(&s.to),
    });
    let obj = v.as_object_mut().expect("object literal");
    match &s.detail {
        StepDetail::None => {}
        StepDetail::Move(mv) => {
            obj.insert("added".into(), json!(squares(mv.added())));
            let assignments: Vec<Value> = mv
                .assignments()
                .iter()
                .map(|a| {
                    json!({
                        "point": [a.point.0, a.point.1],
                        "shape": a.shape.kind(),
                        "dir": a.shape.tag(),
                        "squares": squares(a.squares),
                    })
                })
                .collect();
            obj.insert("assignments".into(), Value::Array(assignments));
        }
        StepDetail::Upper(upper) => {
            obj.insert("lower".into(), json!(squares(s.from.mesh())));
            obj.insert("upper".into(), json!(squares(*upper)));
        }
        StepDetail::Symmetry(sym) => {
            obj.insert("symmetry".into(), json!(sym.name()));
        }
    }
    v
}

pub fn trace(t: &ProofTrace) -> Value {
    Value::Array(t.steps().iter().map(step).collect())
}

/// Hex rows of a fingerprint, one string per length, words little end first.
pub fn fingerprint_hex(fp: &Fingerprint) -> Vec<String> {
    (1..=fp.n_max())
        .map(|n| fp.row(n).iter().map(|w| format!("{w:016x}")).collect())
        .collect()
}

pub fn parse_fingerprint_hex(rows: &[String]) -> Option<Fingerprint> {
    let rows = rows
        .iter()
        .map(|r| {
            if r.len() % 16 != 0 || !r.is_ascii() {
                return None;
            }
            (0..r.len())
                .step_by(16)
                .map(|i| u64::from_str_radix(&r[i..i + 16], 16).ok())
                .collect::<Option<Vec<u64>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Fingerprint::from_rows(rows).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use meshcide_core::fingerprint;

    #[test]
    fn pattern_form() {
        let pi: MeshPattern = "231:(1,0)(3,2)".parse().unwrap();
        assert_eq!(
            pattern(&pi).to_string(),
            r#"{"perm":[2,3,1],"mesh":[[1,0],[3,2]]}"#
        );
        assert_eq!(parse_pattern(&pattern(&pi).to_string()).unwrap(), pi);
    }

    #[test]
    fn bad_json_is_reported() {
        let err = parse_pattern(r#"{"perm":[1,2],"mesh":[[4,0]]}"#).unwrap_err();
        assert!(err.contains("(4,0)"), "{err}");
        assert!(parse_pattern(r#"{"perm":[1,1],"mesh":[]}"#).is_err());
    }

    #[test]
    fn fingerprint_hex_round_trip() {
        let pi: MeshPattern = "12:(0,0)".parse().unwrap();
        let fp = fingerprint(&pi, 5);
        let hex = fingerprint_hex(&fp);
        assert_eq!(hex.len(), 5);
        assert_eq!(parse_fingerprint_hex(&hex).unwrap(), fp);
        assert!(parse_fingerprint_hex(&["zz".into()]).is_none());
    }
}
