//! JSON schemas for forms, identities, and tool reports. Scalar values are
//! carried as grammar strings so files stay human-writable and exact.

use crate::case_analysis::{TameReport, TameVerdict, WildReport};
use crate::constructions::PhiBounds;
use crate::dependence::{DependenceReport, PowerIdentity, Side, VerifyOutcome};
use crate::exact::{parse_scalar, AlgebraicScalar, Rational};
use crate::forms::{BinaryForm, FormSet, GenForm, LinearChange};
use crate::klein::{KleinPoint, Recognition};
use crate::poly::ParamPoly;
use crate::sylvester::SylvesterReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "quadpow/1";

#[derive(Debug, Clone, thiserror::Error)]
pub enum SchemaError {
    #[error("coefficient {index}: {message}")]
    Scalar { index: usize, message: String },
    #[error("degree {degree} needs {expected} coefficients, found {found}")]
    CoeffCount {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Shape(String),
}

/// {"degree": k, "coeffs": [k+1 scalar-expression strings]}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub coeffs: Vec<String>,
}

impl FormJson {
    pub fn from_form(f: &BinaryForm) -> Self {
        FormJson {
            degree: f.degree(),
            coeffs: f.coeffs().iter().map(|c| c.canonicalize().to_string()).collect(),
        }
    }

    pub fn to_form(&self) -> Result<BinaryForm, SchemaError> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(SchemaError::CoeffCount {
                degree: self.degree,
                expected: self.degree + 1,
                found: self.coeffs.len(),
            });
        }
        let coeffs: Vec<AlgebraicScalar> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_scalar(s).map_err(|e| SchemaError::Scalar {
                    index,
                    message: e.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(GenForm::new(coeffs))
    }
}

/// {"m": [a, b, c, d]} row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearChangeJson {
    pub m: [String; 4],
}

impl LinearChangeJson {
    pub fn to_change(&self) -> Result<LinearChange, SchemaError> {
        let v: Vec<AlgebraicScalar> = self
            .m
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_scalar(s).map_err(|e| SchemaError::Scalar {
                    index,
                    message: e.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        let m = LinearChange::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
        if !m.is_invertible() {
            return Err(SchemaError::Shape("singular linear change".into()));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityTermJson {
    pub lambda: String,
    pub form: FormJson,
}

/// {"d": n, "terms": [{"lambda", "form"}]}
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityJson {
    pub d: u32,
    pub terms: Vec<IdentityTermJson>,
}

impl IdentityJson {
    pub fn from_identity(id: &PowerIdentity) -> Self {
        IdentityJson {
            d: id.exponent(),
            terms: id
                .terms()
                .iter()
                .map(|t| IdentityTermJson {
                    lambda: t.lambda.canonicalize().to_string(),
                    form: FormJson::from_form(&t.form),
                })
                .collect(),
        }
    }

    pub fn to_identity(&self) -> Result<PowerIdentity, SchemaError> {
        let terms: Vec<(AlgebraicScalar, BinaryForm)> = self
            .terms
            .iter()
            .enumerate()
            .map(|(index, t)| {
                let lambda = parse_scalar(&t.lambda).map_err(|e| SchemaError::Scalar {
                    index,
                    message: format!("lambda: {}", e),
                })?;
                let form = t.form.to_form()?;
                Ok((lambda, form))
            })
            .collect::<Result<_, SchemaError>>()?;
        PowerIdentity::new(self.d, terms).map_err(|e| SchemaError::Shape(e.to_string()))
    }
}

/// A list of forms of one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormSetJson {
    pub forms: Vec<FormJson>,
}

impl FormSetJson {
    pub fn to_form_set(&self) -> Result<FormSet, SchemaError> {
        let forms: Vec<BinaryForm> = self
            .forms
            .iter()
            .map(|f| f.to_form())
            .collect::<Result<_, _>>()?;
        FormSet::new(forms).map_err(|e| SchemaError::Shape(e.to_string()))
    }
}

fn scalar_str(s: &AlgebraicScalar) -> String {
    s.canonicalize().to_string()
}

pub fn verify_json(outcome: &VerifyOutcome) -> serde_json::Value {
    match outcome {
        VerifyOutcome::Pass => serde_json::json!({ "verdict": "pass", "residual": null }),
        VerifyOutcome::Fail { residual } => serde_json::json!({
            "verdict": "fail",
            "residual": FormJson::from_form(residual),
        }),
    }
}

pub fn identity_sides_json(id: &PowerIdentity) -> serde_json::Value {
    let sides: Vec<&str> = id
        .sides()
        .iter()
        .map(|s| match s {
            Side::Left => "left",
            Side::Right => "right",
        })
        .collect();
    serde_json::json!(sides)
}

pub fn dependence_json(rep: &DependenceReport) -> serde_json::Value {
    serde_json::json!({
        "rank": rep.rank,
        "verdict": if rep.dependent { "dependent" } else { "independent" },
        "kernel": rep.kernel.iter().map(|v| {
            v.iter().map(scalar_str).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn sylvester_json(rep: &SylvesterReport) -> serde_json::Value {
    serde_json::json!({
        "d": rep.half_degree,
        "normalized": rep.normalized.iter().map(scalar_str).collect::<Vec<_>>(),
        "matrix": rep.matrix.iter().map(|r| {
            r.iter().map(scalar_str).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "rank": rep.rank,
        "kernel": rep.kernel.iter().map(|r| {
            r.iter().map(scalar_str).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "family": rep.family,
        "decompositions": rep.decompositions.iter().map(|dec| {
            serde_json::json!({
                "provenance": dec.kind.as_str(),
                "pairs": dec.pairs.iter().map(|(mu, g)| serde_json::json!({
                    "mu": scalar_str(mu),
                    "form": FormJson::from_form(g),
                })).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

fn poly_json(p: &ParamPoly<Rational>, var: &str) -> serde_json::Value {
    serde_json::json!({
        "var": var,
        "coeffs": p.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "display": p.display_in(var),
    })
}

pub fn phi_json(b: &PhiBounds) -> serde_json::Value {
    serde_json::json!({
        "k": b.k,
        "d": b.d,
        "lower": { "value": b.lower.value, "tag": b.lower.tag },
        "upper": { "value": b.upper.value, "tag": b.upper.tag },
        "exact": b.exact,
        "lower_candidates": b.lower_candidates.iter().map(|c| {
            serde_json::json!({ "value": c.value, "tag": c.tag })
        }).collect::<Vec<_>>(),
        "upper_candidates": b.upper_candidates.iter().map(|c| {
            serde_json::json!({ "value": c.value, "tag": c.tag })
        }).collect::<Vec<_>>(),
    })
}

pub fn tame_json(rep: &TameReport) -> serde_json::Value {
    let branches: Vec<serde_json::Value> = rep
        .branches
        .iter()
        .map(|b| {
            serde_json::json!({
                "branch": match b.kind {
                    crate::case_analysis::TameBranchKind::EvenPower => "even-power",
                    crate::case_analysis::TameBranchKind::SymmetricPair => "symmetric-pair",
                },
                "minor_count": b.minors.len(),
                "minor_gcd": poly_json(&b.minor_gcd, "b"),
                "candidates": b.candidates.iter().map(|c| {
                    serde_json::json!({
                        "b": scalar_str(&c.b),
                        "b_squared": c.b_squared.as_ref().map(scalar_str),
                        "verdict": match &c.verdict {
                            TameVerdict::Realized(id) => serde_json::json!({
                                "realized": IdentityJson::from_identity(id),
                            }),
                            TameVerdict::Excluded { witness_minor } => serde_json::json!({
                                "excluded": witness_minor,
                            }),
                        },
                    })
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "d": rep.d,
        "branches": branches,
        "witnesses": rep.witnesses.as_ref().map(|w| serde_json::json!({
            "corner_minor_matches": w.corner_minor_matches,
            "minor_123": w.minor_123_at_u1.to_string(),
            "expected_minor_123": w.expected_minor_123.to_string(),
            "det3": w.det3_at_u2.to_string(),
            "expected_det3": w.expected_det3.to_string(),
        })),
    })
}

pub fn wild_json(rep: &WildReport) -> serde_json::Value {
    serde_json::json!({
        "d": rep.d,
        "a3_terms": rep.a3.num_terms(),
        "b3_terms": rep.b3.num_terms(),
        "solutions": rep.solutions.iter().map(|s| serde_json::json!({
            "lambda": scalar_str(&s.lambda),
            "alpha": scalar_str(&s.alpha),
            "beta": scalar_str(&s.beta),
            "p": FormJson::from_form(&s.p),
            "identity": IdentityJson::from_identity(&s.identity),
        })).collect::<Vec<_>>(),
        "contradiction": rep.contradiction.as_ref().map(|c| serde_json::json!({
            "reason": c.reason,
            "a7_squared": c.a7_squared.as_ref().map(scalar_str),
        })),
        "notes": rep.notes,
    })
}

pub fn klein_json(points: &[KleinPoint], label: &Recognition) -> serde_json::Value {
    serde_json::json!({
        "points": points.iter().map(|p| vec![p.x, p.y, p.z]).collect::<Vec<_>>(),
        "label": label.label(),
    })
}

pub fn klein_csv(points: &[KleinPoint]) -> String {
    let mut out = String::from("x,y,z\n");
    for p in points {
        out.push_str(&format!("{:.15},{:.15},{:.15}\n", p.x, p.y, p.z));
    }
    out
}

/// Top-level report wrapper: deterministic apart from timing.
pub fn wrap_report(
    command: &str,
    inputs_digest: &str,
    result: serde_json::Value,
    timing_ms: u128,
) -> serde_json::Value {
    serde_json::json!({
        "schema": SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs_digest": inputs_digest,
        "result": result,
        "timing_ms": timing_ms,
    })
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(bytes);
    format!("sha256:{:x}", h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog;

    #[test]
    fn identity_json_roundtrip() {
        for name in ["pythagorean", "septic26", "quintic-synch", "icosa-triads"] {
            let e = catalog(name).unwrap();
            let j = IdentityJson::from_identity(&e.identity);
            let text = serde_json::to_string(&j).unwrap();
            let back: IdentityJson = serde_json::from_str(&text).unwrap();
            let id = back.to_identity().unwrap();
            assert_eq!(id, e.identity, "roundtrip of {}", name);
        }
    }

    #[test]
    fn form_errors_are_reported() {
        let bad = FormJson {
            degree: 2,
            coeffs: vec!["1".into(), "nonsense".into(), "0".into()],
        };
        assert!(matches!(
            bad.to_form(),
            Err(SchemaError::Scalar { index: 1, .. })
        ));
        let short = FormJson {
            degree: 2,
            coeffs: vec!["1".into()],
        };
        assert!(matches!(short.to_form(), Err(SchemaError::CoeffCount { .. })));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest_bytes(b"abc"), digest_bytes(b"abc"));
        assert_ne!(digest_bytes(b"abc"), digest_bytes(b"abd"));
    }
}
