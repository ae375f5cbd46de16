//! JSON records. Exact rationals travel as `"p/q"` strings; numeric inputs
//! are read from their decimal text so nothing passes through a float.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ktweb::classify::{ClassificationReport, SingularSet};
use ktweb::invariants::Invariants;
use ktweb::rational::{format_rational, parse_rational};
use ktweb::{KTParams, MetricSignature, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorInputRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(rename = "A")]
    pub a: Value,
    #[serde(rename = "B")]
    pub b: Value,
    #[serde(rename = "C")]
    pub c: Value,
    pub alpha: Value,
    pub beta: Value,
    pub gamma: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

fn coeff(name: &str, v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => return Err(format!("{name}: expected a number or \"p/q\" string, got {other}")),
    }
    .map_err(|e| format!("{name}: {e}"))
}

impl TensorInputRecord {
    /// Exact tensor; `default_metric` applies when the record has none.
    pub fn to_params(&self, default_metric: Option<&str>) -> Result<KTParams, String> {
        let metric = self
            .metric
            .as_deref()
            .or(default_metric)
            .ok_or("no metric given (field \"metric\" or --metric)")?;
        let sig = MetricSignature::parse(metric).map_err(|e| e.to_string())?;
        let c = [
            coeff("A", &self.a)?,
            coeff("B", &self.b)?,
            coeff("C", &self.c)?,
            coeff("alpha", &self.alpha)?,
            coeff("beta", &self.beta)?,
            coeff("gamma", &self.gamma)?,
        ];
        Ok(KTParams::from_coeffs(sig, c))
    }

    pub fn from_params(k: &KTParams, id: Option<String>) -> Self {
        let s = |r: &Rational| Value::String(format_rational(r));
        TensorInputRecord {
            metric: Some(k.signature.name().to_string()),
            a: s(&k.a),
            b: s(&k.b),
            c: s(&k.c),
            alpha: s(&k.alpha),
            beta: s(&k.beta),
            gamma: s(&k.gamma),
            id,
        }
    }
}

fn opt(r: &Rational) -> Option<String> {
    Some(format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub gamma: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_plus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_minus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_cart: Option<String>,
}

impl From<&Invariants> for InvariantsRecord {
    fn from(inv: &Invariants) -> Self {
        match inv {
            Invariants::Euclidean(e) => InvariantsRecord {
                gamma: format_rational(&e.gamma),
                delta: opt(&e.delta),
                z_plus: None,
                z_minus: None,
                p_cart: None,
            },
            Invariants::Minkowski(m) => InvariantsRecord {
                gamma: format_rational(&m.gamma),
                delta: None,
                z_plus: opt(&m.z_plus),
                z_minus: opt(&m.z_minus),
                p_cart: opt(&m.p_cart),
            },
        }
    }
}

/// Singular set with its exact data: points for the Euclidean variants,
/// the two null-coordinate quadratics (constant term first) for the
/// Minkowski ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularSetRecord {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset_square: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus_factor: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_factor: Option<[String; 3]>,
}

impl From<&SingularSet> for SingularSetRecord {
    fn from(set: &SingularSet) -> Self {
        let pair = |p: &[Rational; 2]| Some(p.clone().map(|r| format_rational(&r)));
        let triple = |p: &[Rational; 3]| Some(p.clone().map(|r| format_rational(&r)));
        let mut rec = SingularSetRecord {
            variant: set.kind().to_string(),
            point: None,
            center: None,
            offset_square: None,
            plus_factor: None,
            minus_factor: None,
        };
        match set {
            SingularSet::OnePoint { point } => rec.point = pair(point),
            SingularSet::TwoPoints {
                center,
                offset_square,
            } => {
                rec.center = pair(center);
                rec.offset_square = pair(offset_square);
            }
            _ => {}
        }
        if let Some(f) = set.null_factors() {
            rec.plus_factor = triple(&f.plus);
            rec.minus_factor = triple(&f.minus);
        }
        rec
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub metric: String,
    pub class: String,
    pub web_name: String,
    pub sc_labels: Vec<String>,
    pub invariants: InvariantsRecord,
    pub rank: usize,
    pub expected_rank: usize,
    pub characteristic: bool,
    pub is_zero: bool,
    pub singular_set: SingularSetRecord,
}

impl ReportRecord {
    pub fn new(id: Option<String>, k: &KTParams, r: &ClassificationReport) -> Self {
        ReportRecord {
            id,
            metric: k.signature.name().to_string(),
            class: r.class.label().to_string(),
            web_name: r.class.web_name().to_string(),
            sc_labels: r.class.sc_labels().iter().map(|s| s.to_string()).collect(),
            invariants: InvariantsRecord::from(&r.invariants),
            rank: r.rank,
            expected_rank: r.class.expected_rank(),
            characteristic: r.class.characteristic(),
            is_zero: r.is_zero,
            singular_set: SingularSetRecord::from(&r.singular_set),
        }
    }
}
